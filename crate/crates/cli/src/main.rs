//! `lapdiam`: spectra, exhaustive verification, the extremal census and
//! the lemma suite from the command line.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use lapdiam::Mode;

use commands::{ExtremalConfig, LemmasConfig, Rendered, SpectrumConfig, VerifyConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Numeric,
    Both,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Numeric => Mode::Numeric,
            ModeArg::Both => Mode::Both,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "lapdiam", version, about = "Laplacian eigenvalue counts versus diameter")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Which spectral engines run; exact decides when present.
    #[arg(long, value_enum, default_value_t = ModeArg::Both, global = true)]
    mode: ModeArg,

    /// Worker threads (default: all cores).
    #[arg(long, env = "LAPDIAM_WORKERS", global = true, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Spectrum, integer eigenvalues and m[n-d+2, n] of one graph.
    #[command(group(ArgGroup::new("source").required(true).args(["family", "graph6"])))]
    Spectrum {
        /// Family spec, e.g. gndt:n=9,d=4,t=3.
        #[arg(long)]
        family: Option<String>,
        /// One graph6 line.
        #[arg(long)]
        graph6: Option<String>,
        /// Window for numeric eigenvalue counts.
        #[arg(long, default_value_t = lapdiam::spectra::NUMERIC_EPS)]
        eps: f64,
    },
    /// Check the bound on every connected graph of an order or a corpus.
    #[command(group(ArgGroup::new("source").required(true).args(["n", "input"])))]
    Verify {
        #[arg(long)]
        n: Option<usize>,
        /// graph6 corpus, one graph per line.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Allow order 8.
        #[arg(long)]
        allow_n8: bool,
    },
    /// Compare the equality graphs of order n and diameter d with the families.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        allow_n8: bool,
    },
    /// Run lemma checks over their parameter grids.
    Lemmas {
        /// Lemma id (2.1 ... 2.7, 4.1 ... 4.5, weyl, interlacing, complement); all when absent.
        #[arg(long)]
        id: Option<String>,
        /// Largest order in the grid (default depends on the lemma).
        #[arg(long)]
        max_n: Option<usize>,
        /// Randomized trials for weyl and interlacing.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        allow_n8: bool,
    },
}

fn execute(cli: Cli) -> Result<Rendered> {
    let mode = Mode::from(cli.mode);
    match cli.command {
        Command::Spectrum { family, graph6, eps } => commands::spectrum(SpectrumConfig {
            family,
            graph6,
            mode,
            eps,
        }),
        Command::Verify { n, input, allow_n8 } => commands::verify(VerifyConfig {
            n,
            input,
            mode,
            allow_n8,
        }),
        Command::Extremal { n, d, allow_n8 } => commands::extremal(ExtremalConfig { n, d, mode, allow_n8 }),
        Command::Lemmas {
            id,
            max_n,
            trials,
            seed,
            allow_n8,
        } => commands::lemmas(LemmasConfig {
            id,
            max_n,
            trials,
            seed,
            mode,
            allow_n8,
        }),
    }
}

fn run(cli: Cli) -> Result<bool> {
    let format = cli.format;
    let out = cli.out.clone();
    let rendered = match cli.workers {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k as usize)
            .build()
            .context("cannot start worker pool")?
            .install(|| execute(cli))?,
        None => execute(cli)?,
    };
    let text = match format {
        Format::Json => &rendered.json,
        Format::Table => &rendered.table,
    };
    match out {
        Some(path) => std::fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(rendered.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
