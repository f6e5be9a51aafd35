//! Root finding for the secular function and the spectral inequalities built on it.

mod brent;
mod interlacing;
mod spectrum;

pub use brent::{brent_root, golden_min};
pub use interlacing::{check_interlacing, verify_interlacing_merge, verify_interlacing_nd, InterlacingReport};
pub use spectrum::{
    counting_function, find_spectrum, lambda0_multiplicity, lowest_k, weyl_gap, EigenvalueRef, Root, SolverConfig,
    SolverDiagnostics, Spectrum,
};
