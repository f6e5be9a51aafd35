//! Spectra, eigenfunctions and nodal counts of quantum graphs, with magnetic flux response.
//!
//! The library is generic over the scalar type via [`Real`]; `f64` aliases are
//! provided at the crate root for the common case.

pub mod error;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod magnetic;
pub mod nodal;
pub mod oracles;
pub mod scalar;
pub mod secular;
pub mod solver;

pub use error::{Error, Result};
pub use graph::{MetricGraph, VertexCondition};
pub use magnetic::FluxAssignment;
pub use scalar::{Complex, Real};
pub use solver::{find_spectrum, SolverConfig, Spectrum};

pub type MetricGraph64 = MetricGraph<f64>;
pub type MetricGraph32 = MetricGraph<f32>;
pub type Spectrum64 = Spectrum<f64>;
pub type Spectrum32 = Spectrum<f32>;
pub type FluxAssignment64 = FluxAssignment<f64>;
pub type SolverConfig64 = SolverConfig<f64>;
pub type Eigenfunction64 = nodal::Eigenfunction<f64>;
