//! Spectral bounds for chromatic numbers of oriented hypergraphs.
//!
//! Build a hypergraph with [`RawHypergraph`] or [`io::parse`], compute spectra
//! with [`spectral`], coloring numbers with [`coloring`], and compare both
//! with [`bounds`]. [`families`] generates test instances with known spectra.

pub mod bounds;
pub mod coloring;
pub mod error;
pub mod families;
pub mod hypergraph;
pub mod matrix;
pub mod spectral;

pub use bounds::{BoundReport, SharpnessKind, SharpnessReport};
pub use coloring::{ChromaticResult, ChromaticStatus, Coloring, ColoringMode, Target};
pub use error::{Error, Result};
pub use families::FamilySpec;
pub use hypergraph::{
    io, AdjacencyMatrix, DegreeVector, Edge, IncidenceMatrix, OrientedHypergraph, RawHypergraph, Sign,
    ValidationReport, Violation,
};
pub use matrix::DenseMatrix;
pub use spectral::{Cluster, SpectralResult};
