//! Eigenfunctions rebuilt from null vectors of `I - S D(k)`, their zeros, and
//! closed-form nodal counts.

mod formulas;

pub use formulas::{dihedral_nodal_count_by_sides, dihedral_nodal_formula, students_count, students_count_unchecked};

use crate::error::{Error, Result};
use crate::graph::{MetricGraph, VertexCondition};
use crate::magnetic::FluxAssignment;
use crate::scalar::{cis, Complex, Real};
use crate::secular::SecularEngine;
use crate::solver::{SolverConfig, Spectrum};

/// Relative size of `|f|` at a vertex below which the vertex counts as a zero.
pub const VERTEX_ZERO_TOL: f64 = 1e-6;
/// Zeros closer than this to an edge end are attributed to the vertex.
pub const VERTEX_ATTRIBUTION: f64 = 1e-9;
/// Bound on the relative violation of continuity and current conservation.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// Eigenfunction in bond amplitudes: on bond `b` at distance `x` from its origin,
/// `f(x) = a_b e^{ikx} + a_{rev b} e^{ik(L - x)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenfunction<T> {
    pub k: T,
    pub coefficients: Vec<Complex<T>>,
    pub index_n: usize,
    pub is_real_normalized: bool,
}

impl<T: Real> Eigenfunction<T> {
    /// Builds an eigenfunction from a null vector, rotating the global phase so
    /// that the largest sampled value is real and positive.
    pub fn from_null_vector(graph: &MetricGraph<T>, k: T, index_n: usize, v: Vec<Complex<T>>) -> Self {
        let mut f = Self { k, coefficients: v, index_n, is_real_normalized: false };
        let samples = f.samples(graph);
        let big = samples.iter().copied().fold(Complex::new(T::zero(), T::zero()), |m, z| if z.norm() > m.norm() { z } else { m });
        if big.norm() > T::zero() {
            let rot = cis(-big.arg());
            for c in &mut f.coefficients {
                *c = *c * rot;
            }
        }
        let scale = big.norm().max(T::min_positive_value());
        f.is_real_normalized = f.samples(graph).iter().all(|z| z.im.abs() <= T::lit(1e-8) * scale);
        f
    }

    /// The constant function on the Neumann components listed in `vertices`.
    fn constant(graph: &MetricGraph<T>, vertices: &[usize], index_n: usize) -> Self {
        let half = Complex::new(T::lit(0.5), T::zero());
        let zero = Complex::new(T::zero(), T::zero());
        let coefficients =
            graph.bonds().iter().map(|b| if vertices.contains(&b.origin) { half } else { zero }).collect();
        Self { k: T::zero(), coefficients, index_n, is_real_normalized: true }
    }

    /// Value on bond `b` at distance `x` from its origin.
    pub fn value(&self, graph: &MetricGraph<T>, bond: usize, x: T) -> Complex<T> {
        let b = graph.bonds()[bond];
        let l = graph.bond_length(bond);
        self.coefficients[bond] * cis(self.k * x) + self.coefficients[b.reversal] * cis(self.k * (l - x))
    }

    /// Derivative along bond `b` at its origin, divided by `k` (the value itself when `k = 0`).
    fn outgoing_slope(&self, graph: &MetricGraph<T>, bond: usize) -> Complex<T> {
        let b = graph.bonds()[bond];
        let z = cis(self.k * graph.bond_length(bond));
        Complex::new(T::zero(), T::one()) * (self.coefficients[bond] - self.coefficients[b.reversal] * z)
    }

    /// Real form on edge `e`: `f(x) = A cos(kx) + B sin(kx)` from the edge's lower endpoint.
    pub fn edge_form(&self, graph: &MetricGraph<T>, e: usize) -> (T, T) {
        let a = self.value(graph, e, T::zero()).re;
        let b = if self.k == T::zero() { T::zero() } else { self.outgoing_slope(graph, e).re };
        (a, b)
    }

    pub fn vertex_value(&self, graph: &MetricGraph<T>, v: usize) -> Complex<T> {
        match graph.outgoing(v).first() {
            Some(&b) => self.value(graph, b, T::zero()),
            None => Complex::new(T::zero(), T::zero()),
        }
    }

    fn samples(&self, graph: &MetricGraph<T>) -> Vec<Complex<T>> {
        let mut out = Vec::new();
        for e in graph.edges() {
            for frac in [0.0, 0.25, 0.5, 0.75, 1.0] {
                out.push(self.value(graph, e.id, e.length * T::lit(frac)));
            }
        }
        out
    }

    /// `max |f|` over the graph.
    pub fn sup_norm(&self, graph: &MetricGraph<T>) -> T {
        let mut m = T::zero();
        for e in graph.edges() {
            if self.is_real_normalized {
                let (a, b) = self.edge_form(graph, e.id);
                let r = a.hypot(b);
                let theta = b.atan2(a);
                // f = R cos(kx - θ) peaks where kx - θ is a multiple of π.
                let first = theta + (-theta / T::PI()).ceil() * T::PI();
                if self.k > T::zero() && first <= self.k * e.length {
                    m = m.max(r);
                }
                m = m.max(a.abs()).max(self.value(graph, e.id, e.length).re.abs());
            } else {
                for z in self.samples(graph) {
                    m = m.max(z.norm());
                }
            }
        }
        m
    }

    /// Largest relative violation of continuity, current conservation and Dirichlet conditions.
    pub fn residual(&self, graph: &MetricGraph<T>) -> T {
        let norm = self.sup_norm(graph).max(T::min_positive_value());
        let mut worst = T::zero();
        for v in graph.vertices() {
            let out = graph.outgoing(v.id);
            let f0 = self.value(graph, out[0], T::zero());
            for &b in &out[1..] {
                worst = worst.max((self.value(graph, b, T::zero()) - f0).norm());
            }
            match v.condition {
                VertexCondition::Dirichlet => worst = worst.max(f0.norm()),
                VertexCondition::Neumann if self.k > T::zero() => {
                    let current =
                        out.iter().fold(Complex::new(T::zero(), T::zero()), |s, &b| s + self.outgoing_slope(graph, b));
                    worst = worst.max(current.norm());
                }
                VertexCondition::Neumann => {}
            }
        }
        worst / norm
    }
}

/// Zeros of a real eigenfunction.
#[derive(Debug, Clone, PartialEq)]
pub struct NodalData<T> {
    /// Number of interior zeros.
    pub phi: usize,
    /// `(edge, x)` with `x` measured from the edge's lower endpoint.
    pub zero_positions: Vec<(usize, T)>,
    /// `φ - (n - 1)`.
    pub surplus: i64,
    pub vanishes_on_vertex: bool,
    /// Zeros on each fundamental cycle.
    pub cycle_zero_counts: Vec<usize>,
    pub even_on_cycles: bool,
}

/// Null vectors of `I - S D(k)` for the `n`-th eigenvalue, turned into eigenfunctions.
pub fn reconstruct_basis<T: Real>(
    graph: &MetricGraph<T>,
    spectrum: &Spectrum<T>,
    n: usize,
    config: &SolverConfig<T>,
) -> Result<Vec<Eigenfunction<T>>> {
    let ev = spectrum.eigenvalue(n).ok_or(Error::IndexOutOfRange { n, available: spectrum.len() })?;
    if ev.root.is_none() {
        let comps: Vec<Vec<usize>> = graph
            .components()
            .into_iter()
            .filter(|c| c.iter().all(|&v| graph.condition(v) == VertexCondition::Neumann))
            .collect();
        return Ok(comps.iter().map(|c| Eigenfunction::constant(graph, c, n)).collect());
    }
    let engine = SecularEngine::new(graph, &FluxAssignment::none_for(graph))?;
    let vectors = engine.null_space(ev.k, config.null_tol)?;
    Ok(vectors.into_iter().map(|v| Eigenfunction::from_null_vector(graph, ev.k, n, v)).collect())
}

/// The eigenfunction of a simple eigenvalue, real-normalized and checked against the vertex conditions.
pub fn reconstruct<T: Real>(
    graph: &MetricGraph<T>,
    spectrum: &Spectrum<T>,
    n: usize,
    config: &SolverConfig<T>,
) -> Result<Eigenfunction<T>> {
    let ev = spectrum.eigenvalue(n).ok_or(Error::IndexOutOfRange { n, available: spectrum.len() })?;
    if ev.multiplicity > 1 {
        return Err(Error::DegenerateEigenvalue { n, multiplicity: ev.multiplicity });
    }
    let mut basis = reconstruct_basis(graph, spectrum, n, config)?;
    if basis.len() > 1 {
        return Err(Error::DegenerateEigenvalue { n, multiplicity: basis.len() });
    }
    let f = basis.pop().ok_or(Error::NoNullVector { k: ev.k.as_f64() })?;
    let residual = f.residual(graph);
    if !f.is_real_normalized || residual > T::lit(RESIDUAL_TOL) {
        return Err(Error::ResidualTooLarge { n, residual: residual.as_f64() });
    }
    Ok(f)
}

/// Interior zeros from the closed form `R cos(kx - θ)` on each edge.
pub fn count_zeros<T: Real>(graph: &MetricGraph<T>, f: &Eigenfunction<T>) -> Result<NodalData<T>> {
    let norm = f.sup_norm(graph);
    for v in graph.vertices() {
        if v.condition == VertexCondition::Neumann && f.vertex_value(graph, v.id).norm() < T::lit(VERTEX_ZERO_TOL) * norm {
            return Err(Error::VertexZero { n: f.index_n, vertex: v.id });
        }
    }
    // Vanishing on a whole edge (e.g. support on one component) means vanishing at its ends too.
    for e in graph.edges() {
        let (a, b) = f.edge_form(graph, e.id);
        if a.hypot(b) < T::lit(VERTEX_ZERO_TOL) * norm {
            return Err(Error::VertexZero { n: f.index_n, vertex: e.endpoints.0 });
        }
    }
    let eps = T::lit(VERTEX_ATTRIBUTION);
    let mut zeros = Vec::new();
    let mut per_edge = vec![0usize; graph.edge_count()];
    if f.k > T::zero() {
        let half_pi = T::FRAC_PI_2();
        for e in graph.edges() {
            let (a, b) = f.edge_form(graph, e.id);
            let theta = b.atan2(a);
            let lo = ((f.k * eps - theta - half_pi) / T::PI()).ceil();
            let hi = ((f.k * (e.length - eps) - theta - half_pi) / T::PI()).floor();
            let mut m = lo;
            while m <= hi {
                let x = (theta + half_pi + m * T::PI()) / f.k;
                if x > eps && x < e.length - eps {
                    zeros.push((e.id, x));
                    per_edge[e.id] += 1;
                }
                m += T::one();
            }
        }
    }
    let phi = zeros.len();
    let basis = graph.fundamental_cycles();
    let ne = graph.edge_count();
    let cycle_zero_counts: Vec<usize> =
        basis.cycles.iter().map(|c| c.iter().map(|&b| per_edge[b % ne]).sum()).collect();
    let even_on_cycles = cycle_zero_counts.iter().all(|c| c % 2 == 0);
    Ok(NodalData {
        phi,
        zero_positions: zeros,
        surplus: phi as i64 - (f.index_n as i64 - 1),
        vanishes_on_vertex: false,
        cycle_zero_counts,
        even_on_cycles,
    })
}

/// Why a row of the nodal profile carries no count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodalStatus {
    Valid,
    Degenerate,
    VertexZero,
    Residual,
}

impl NodalStatus {
    pub fn label(self) -> &'static str {
        match self {
            NodalStatus::Valid => "ok",
            NodalStatus::Degenerate => "degenerate",
            NodalStatus::VertexZero => "vertex-zero",
            NodalStatus::Residual => "residual",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodalRow<T> {
    pub n: usize,
    pub k: T,
    pub phi: Option<usize>,
    pub surplus: Option<i64>,
    pub even_on_cycles: Option<bool>,
    pub status: NodalStatus,
}

/// Nodal count and surplus for every eigenvalue up to `spectrum.k_max`.
pub fn nodal_profile<T: Real>(
    graph: &MetricGraph<T>,
    spectrum: &Spectrum<T>,
    config: &SolverConfig<T>,
) -> Vec<NodalRow<T>> {
    (1..=spectrum.len())
        .map(|n| {
            let ev = spectrum.eigenvalue(n).expect("index within spectrum");
            let row = |status| NodalRow { n, k: ev.k, phi: None, surplus: None, even_on_cycles: None, status };
            if ev.multiplicity > 1 {
                return row(NodalStatus::Degenerate);
            }
            match reconstruct(graph, spectrum, n, config).and_then(|f| count_zeros(graph, &f)) {
                Ok(d) => NodalRow {
                    n,
                    k: ev.k,
                    phi: Some(d.phi),
                    surplus: Some(d.surplus),
                    even_on_cycles: Some(d.even_on_cycles),
                    status: NodalStatus::Valid,
                },
                Err(Error::VertexZero { .. }) => row(NodalStatus::VertexZero),
                Err(Error::DegenerateEigenvalue { .. }) => row(NodalStatus::Degenerate),
                Err(_) => row(NodalStatus::Residual),
            }
        })
        .collect()
}

/// Solves to `k_max` and returns the nodal profile.
pub fn nodal_surplus_profile<T: Real>(
    graph: &MetricGraph<T>,
    k_max: T,
    config: &SolverConfig<T>,
) -> Result<Vec<NodalRow<T>>> {
    let spectrum = crate::solver::find_spectrum(graph, &FluxAssignment::none_for(graph), k_max, config)?;
    Ok(nodal_profile(graph, &spectrum, config))
}
