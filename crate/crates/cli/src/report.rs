//! The JSON report envelope and its table rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub pass: bool,
    pub counts: BTreeMap<String, usize>,
}

/// `{command, config, results[], summary{pass, counts}}`.
#[derive(Debug, Clone, Serialize)]
pub struct Report<C, R> {
    pub command: &'static str,
    pub config: C,
    pub results: Vec<R>,
    pub summary: Summary,
}

impl<C: Serialize, R: Serialize> Report<C, R> {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Left-aligned columns, two spaces apart.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let mut l = String::new();
        for (i, cell) in cells.enumerate() {
            if i > 0 {
                l.push_str("  ");
            }
            let pad = widths[i].saturating_sub(cell.chars().count());
            l.push_str(cell);
            l.extend(std::iter::repeat_n(' ', pad));
        }
        out.push_str(l.trim_end());
        out.push('\n');
    };
    line(&mut header.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}

pub fn summary_lines(summary: &Summary) -> String {
    let mut out = String::new();
    for (k, v) in &summary.counts {
        let _ = writeln!(out, "{k}: {v}");
    }
    let _ = writeln!(out, "{}", if summary.pass { "PASS" } else { "FAIL" });
    out
}
