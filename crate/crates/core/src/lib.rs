//! Laplacian eigenvalue distribution versus diameter.
//!
//! Graphs and graph6 I/O ([`graph`], [`graph6`]), exact and numeric
//! Laplacian spectra ([`spectra`], [`poly`], [`jacobi`]), the extremal
//! families ([`families`]), isomorphism and canonical forms ([`iso`]),
//! exhaustive enumeration with the extremal census ([`enumerate`]) and the
//! lemma checks ([`lab`]).

pub mod enumerate;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod iso;
pub mod jacobi;
pub mod lab;
pub mod matrix;
pub mod poly;
pub mod spectra;

pub use enumerate::{CensusMatch, CensusRecord, EnumError};
pub use families::{FamilyError, FamilyKind, FamilySpec};
pub use graph::{DistanceMatrix, Graph, GraphError};
pub use graph6::Graph6Error;
pub use iso::CanonicalForm;
pub use jacobi::Spectrum;
pub use lab::{
    BoundStatus, BoundVerdict, Check, EdgeClass, FamilyMatch, LabError, LemmaConfig, LemmaId, LemmaReport, Mode,
};
pub use matrix::IntegerSymmetricMatrix;
pub use poly::{IntegerPolynomial, Rational, RootCounter};
pub use spectra::{CountMode, IntervalCount, SpectralError};
