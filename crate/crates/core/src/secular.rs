//! Bond scattering matrix, phase matrix and the secular function
//! `Σ(k) = det(I - S D(k))` with its real-valued normalization `ζ(k)`.

use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::graph::{CycleBasis, MetricGraph, VertexCondition};
use crate::linalg::{rational_determinant, rational_sign, CMatrix, Svd};
use crate::magnetic::FluxAssignment;
use crate::scalar::{cis, Complex, Real};

/// One exact entry of the scattering matrix, `S[row][col] = num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScatteringEntry {
    pub row: usize,
    pub col: usize,
    pub num: i64,
    pub den: i64,
}

/// Vertex scattering in bond coordinates.
///
/// Entry `S[j'][j]` is the amplitude scattered from bond `j` into bond `j'`
/// at the vertex where `j` ends and `j'` starts: `2/d - δ(j' = rev j)` for a
/// Neumann vertex of degree `d`, and `-1` back-scattering at a Dirichlet leaf.
#[derive(Debug, Clone, PartialEq)]
pub struct BondMatrices<T> {
    /// Dense real matrix, row-major, `2|E| × 2|E|`.
    pub s: Vec<T>,
    pub dim: usize,
    /// Exact sparse entries.
    pub entries: Vec<ScatteringEntry>,
    /// `det S`, always `±1`.
    pub det_s: i32,
    /// Row/column order in terms of bond ids (identity here).
    pub bond_order: Vec<usize>,
}

impl<T: Real> BondMatrices<T> {
    pub fn get(&self, row: usize, col: usize) -> T {
        self.s[row * self.dim + col]
    }

    /// Exact `det S` by rational elimination.
    pub fn exact_det(&self) -> BigRational {
        let e: Vec<_> = self.entries.iter().map(|e| (e.row, e.col, e.num, e.den)).collect();
        rational_determinant(self.dim, &e)
    }
}

pub fn scattering_entries<T: Real>(graph: &MetricGraph<T>) -> Vec<ScatteringEntry> {
    let mut out = Vec::new();
    for bond in graph.bonds() {
        let v = bond.terminus;
        if graph.condition(v) == VertexCondition::Dirichlet {
            out.push(ScatteringEntry { row: bond.reversal, col: bond.id, num: -1, den: 1 });
            continue;
        }
        let d = graph.degree(v) as i64;
        for &next in graph.outgoing(v) {
            let (num, den) = if next == bond.reversal { (2 - d, d) } else { (2, d) };
            if num != 0 {
                out.push(ScatteringEntry { row: next, col: bond.id, num, den });
            }
        }
    }
    out
}

pub fn scattering_matrix<T: Real>(graph: &MetricGraph<T>) -> BondMatrices<T> {
    let dim = graph.bond_count();
    let entries = scattering_entries(graph);
    let mut s = vec![T::zero(); dim * dim];
    for e in &entries {
        s[e.row * dim + e.col] = T::lit(e.num as f64) / T::lit(e.den as f64);
    }
    let m = CMatrix::from_fn(dim, |r, c| Complex::new(s[r * dim + c], T::zero()));
    let det = m.determinant().re;
    let det_s = if det < T::zero() { -1 } else { 1 };
    BondMatrices { s, dim, entries, det_s, bond_order: (0..dim).collect() }
}

/// Diagonal phase matrix `D(k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseMatrix<T> {
    pub diagonal: Vec<Complex<T>>,
}

impl<T: Real> PhaseMatrix<T> {
    pub fn determinant(&self) -> Complex<T> {
        self.diagonal.iter().fold(Complex::new(T::one(), T::zero()), |a, z| a * z)
    }
}

pub fn phase_matrix<T: Real>(graph: &MetricGraph<T>, k: T, flux: &FluxAssignment<T>) -> Result<PhaseMatrix<T>> {
    let basis = graph.fundamental_cycles();
    let theta = flux.bond_phases(graph, &basis)?;
    let diagonal = graph.bonds().iter().map(|b| cis(k * graph.bond_length(b.id) + theta[b.id])).collect();
    Ok(PhaseMatrix { diagonal })
}

/// Value of the secular function at one `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecularValue<T> {
    pub sigma: Complex<T>,
    /// `Re ζ(k)`.
    pub zeta: T,
    /// `Im ζ(k)`, zero up to rounding.
    pub residual_imag: T,
}

/// Precomputed data for repeated evaluation of `I - S D(k)` on one graph and flux.
#[derive(Debug, Clone)]
pub struct SecularEngine<'g, T> {
    graph: &'g MetricGraph<T>,
    basis: CycleBasis,
    matrices: BondMatrices<T>,
    lengths: Vec<T>,
    theta: Vec<T>,
    flux: FluxAssignment<T>,
    /// Nonzero entries per column: `(row, value)`.
    columns: Vec<Vec<(usize, T)>>,
}

impl<'g, T: Real> SecularEngine<'g, T> {
    pub fn new(graph: &'g MetricGraph<T>, flux: &FluxAssignment<T>) -> Result<Self> {
        let basis = graph.fundamental_cycles();
        let theta = flux.bond_phases(graph, &basis)?;
        let matrices = scattering_matrix(graph);
        let dim = matrices.dim;
        let mut columns = vec![Vec::new(); dim];
        for e in &matrices.entries {
            columns[e.col].push((e.row, matrices.get(e.row, e.col)));
        }
        let lengths = (0..dim).map(|b| graph.bond_length(b)).collect();
        Ok(Self { graph, basis, matrices, lengths, theta, flux: flux.clone(), columns })
    }

    /// Engine with an arbitrary magnetic phase `θ_e` on every edge (forward
    /// direction), rather than the whole flux of each cycle on its chord.
    pub fn with_edge_phases(graph: &'g MetricGraph<T>, phases: &[T]) -> Result<Self> {
        let basis = graph.fundamental_cycles();
        let flux = FluxAssignment::from_edge_phases(graph, &basis, phases)?;
        let mut engine = Self::new(graph, &flux)?;
        let ne = graph.edge_count();
        engine.theta = (0..2 * ne).map(|b| if b < ne { phases[b] } else { -phases[b - ne] }).collect();
        Ok(engine)
    }

    pub fn graph(&self) -> &'g MetricGraph<T> {
        self.graph
    }
    pub fn basis(&self) -> &CycleBasis {
        &self.basis
    }
    pub fn flux(&self) -> &FluxAssignment<T> {
        &self.flux
    }
    pub fn matrices(&self) -> &BondMatrices<T> {
        &self.matrices
    }

    /// `I - S D(k)`.
    pub fn matrix(&self, k: T) -> CMatrix<T> {
        let dim = self.matrices.dim;
        let mut m = CMatrix::identity(dim);
        for (c, col) in self.columns.iter().enumerate() {
            let d = cis(k * self.lengths[c] + self.theta[c]);
            for &(r, s) in col {
                m[(r, c)] = m[(r, c)] - d * s;
            }
        }
        m
    }

    pub fn sigma(&self, k: T) -> Complex<T> {
        self.matrix(k).determinant()
    }

    /// `ζ(k) = e^{-ik𝓛} Σ(k) / √det S` with `√(-1) = i`.
    pub fn evaluate(&self, k: T) -> SecularValue<T> {
        let sigma = self.sigma(k);
        let mut z = cis(-k * self.graph.total_length()) * sigma;
        if self.matrices.det_s < 0 {
            z = Complex::new(z.im, -z.re);
        }
        SecularValue { sigma, zeta: z.re, residual_imag: z.im }
    }

    pub fn zeta(&self, k: T) -> T {
        self.evaluate(k).zeta
    }

    pub fn svd(&self, k: T) -> Svd<T> {
        self.matrix(k).svd()
    }

    pub fn null_space(&self, k: T, rel_tol: T) -> Result<Vec<Vec<Complex<T>>>> {
        let ns = self.svd(k).null_space(rel_tol);
        if ns.is_empty() {
            Err(Error::NoNullVector { k: k.as_f64() })
        } else {
            Ok(ns)
        }
    }
}

pub fn secular<T: Real>(graph: &MetricGraph<T>, k: T, flux: &FluxAssignment<T>) -> Result<SecularValue<T>> {
    Ok(SecularEngine::new(graph, flux)?.evaluate(k))
}

/// Orthonormal basis of `ker(I - S D(k))` at relative singular-value threshold `tol`.
pub fn null_space<T: Real>(
    graph: &MetricGraph<T>,
    k: T,
    flux: &FluxAssignment<T>,
    tol: T,
) -> Result<Vec<Vec<Complex<T>>>> {
    SecularEngine::new(graph, flux)?.null_space(k, tol)
}

/// Outcome of the two independent `det S` routes and the topological formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetSReport {
    pub floating: i64,
    pub exact: i64,
    /// `(-1)^{|E| - |V| + #Dirichlet}`.
    pub predicted: i64,
}

/// Checks `det S` by LU, by exact rational elimination and against the parity formula.
pub fn verify_det_s<T: Real>(graph: &MetricGraph<T>) -> Result<DetSReport> {
    let m = scattering_matrix(graph);
    let d = m.exact_det();
    // Anything other than exactly ±1 is reported as 0 so that it cannot match.
    let exact = if d.abs() == BigRational::from_integer(1.into()) { rational_sign(&d) } else { 0 };
    let parity = graph.edge_count() + graph.vertex_count() + graph.dirichlet_count();
    let predicted = if parity.is_multiple_of(2) { 1 } else { -1 };
    let report = DetSReport { floating: i64::from(m.det_s), exact, predicted };
    if report.exact != report.predicted {
        return Err(Error::DetSMismatch { computed: report.exact, expected: report.predicted });
    }
    if report.floating != report.exact {
        return Err(Error::DetSMismatch { computed: report.floating, expected: report.exact });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexCondition::{Dirichlet as D, Neumann as N};

    #[test]
    fn unit_interval_neumann_sigma() {
        let g = MetricGraph::new(&[N, N], &[(0, 1, 1.0)]).unwrap();
        let f = FluxAssignment::none_for(&g);
        let eng = SecularEngine::new(&g, &f).unwrap();
        for k in [0.3, 1.7, 2.9] {
            let z = cis(k);
            let expect = Complex::new(1.0, 0.0) - z * z;
            assert!((eng.sigma(k) - expect).norm() < 1e-14);
        }
        let zero = eng.evaluate(std::f64::consts::PI);
        assert!(zero.zeta.abs() < 1e-14);
    }

    #[test]
    fn dirichlet_leaf_back_scatters() {
        let g = MetricGraph::new(&[D, N], &[(0, 1, 2.0)]).unwrap();
        let s = scattering_matrix(&g);
        assert_eq!(s.get(0, 1), -1.0);
        assert_eq!(s.get(1, 0), 1.0);
        assert_eq!(s.det_s, 1);
        let r = verify_det_s(&g).unwrap();
        assert_eq!((r.floating, r.exact, r.predicted), (1, 1, 1));
    }

    #[test]
    fn zeta_is_real_for_star() {
        let g = MetricGraph::new(&[N, D, N, D], &[(0, 1, 1.0), (0, 2, 2f64.sqrt()), (0, 3, 0.7)]).unwrap();
        let eng = SecularEngine::new(&g, &FluxAssignment::none_for(&g)).unwrap();
        for i in 0..50 {
            let v = eng.evaluate(0.37 * f64::from(i));
            assert!(v.residual_imag.abs() <= 1e-12 * v.sigma.norm().max(1.0));
        }
    }
}
