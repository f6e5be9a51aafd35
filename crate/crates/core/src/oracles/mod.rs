//! Named example graphs and their closed-form secular functions and spectra.

mod corpus;

pub use corpus::{random_corpus, CorpusGraph};
pub use crate::secular::{verify_det_s, DetSReport};

use crate::graph::{MetricGraph, VertexCondition};
use crate::scalar::{cis, Complex, Real};

use VertexCondition::{Dirichlet as D, Neumann as N};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    Interval,
    NeumannStar,
    DirichletStar,
    Lasso,
    Mandarin3,
    Dihedral,
    DihedralTree,
    Tetrahedron,
    DihedralParent,
}

/// A named graph together with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleGraph<T> {
    pub kind: OracleKind,
    pub lengths: Vec<T>,
    pub graph: MetricGraph<T>,
}

impl<T: Real> OracleGraph<T> {
    /// Closed-form `Σ(k)` when one is known, normalized to agree with the engine exactly.
    pub fn closed_form(&self, k: T) -> Option<Complex<T>> {
        let l = &self.lengths;
        match self.kind {
            OracleKind::Interval => None,
            OracleKind::NeumannStar => Some(star_sigma_neumann(l, k)),
            OracleKind::DirichletStar => Some(star_sigma_dirichlet(l, k)),
            OracleKind::Lasso => Some(lasso_secular(l[0], l[1], k)),
            OracleKind::Mandarin3 => Some(mandarin_secular(l[0], l[1], l[2], k)),
            OracleKind::Dihedral | OracleKind::DihedralTree => Some(dihedral_secular(l[0], l[1], l[2], k, T::zero())),
            OracleKind::Tetrahedron => Some(tetrahedron_secular(l[0], l[1], k)),
            OracleKind::DihedralParent => None,
        }
    }
}

fn c<T: Real>(x: f64) -> Complex<T> {
    Complex::new(T::lit(x), T::zero())
}

pub fn interval<T: Real>(length: T, left: VertexCondition, right: VertexCondition) -> OracleGraph<T> {
    let graph = MetricGraph::new(&[left, right], &[(0, 1, length)]).expect("valid interval");
    OracleGraph { kind: OracleKind::Interval, lengths: vec![length], graph }
}

/// Star with a Neumann centre (vertex 0) and leaves `1..=N` carrying `leaf`.
pub fn star<T: Real>(lengths: &[T], leaf: VertexCondition) -> OracleGraph<T> {
    let mut conds = vec![N];
    conds.extend(std::iter::repeat_n(leaf, lengths.len()));
    let edges: Vec<_> = lengths.iter().enumerate().map(|(i, &l)| (0, i + 1, l)).collect();
    let graph = MetricGraph::new(&conds, &edges).expect("valid star");
    let kind = if leaf == N { OracleKind::NeumannStar } else { OracleKind::DirichletStar };
    OracleGraph { kind, lengths: lengths.to_vec(), graph }
}

/// Edge of length `l1` from a free end (vertex 1) to vertex 0, which carries a loop of length `l2`.
pub fn lasso<T: Real>(l1: T, l2: T) -> OracleGraph<T> {
    let graph = MetricGraph::new(&[N, N], &[(0, 1, l1), (0, 0, l2)]).expect("valid lasso");
    OracleGraph { kind: OracleKind::Lasso, lengths: vec![l1, l2], graph }
}

/// Two vertices joined by parallel edges.
pub fn mandarin<T: Real>(lengths: &[T]) -> OracleGraph<T> {
    let edges: Vec<_> = lengths.iter().map(|&l| (0, 1, l)).collect();
    let graph = MetricGraph::new(&[N, N], &edges).expect("valid mandarin");
    OracleGraph { kind: OracleKind::Mandarin3, lengths: lengths.to_vec(), graph }
}

/// Dirichlet leaf 0 –`a`– P(1) =`2b`,`2c`= Q(2) –`a`– Neumann leaf 3.
pub fn dihedral<T: Real>(a: T, b: T, c: T) -> OracleGraph<T> {
    let two = T::lit(2.0);
    let graph = MetricGraph::new(&[D, N, N, N], &[(0, 1, a), (1, 2, two * b), (1, 2, two * c), (2, 3, a)])
        .expect("valid dihedral graph");
    OracleGraph { kind: OracleKind::Dihedral, lengths: vec![a, b, c], graph }
}

/// Tree isospectral to [`dihedral`]: vertices 0 and 1 joined by `2a`; vertex 1
/// carries Neumann leaves at distance `b` and `c`, vertex 0 Dirichlet leaves at `b` and `c`.
pub fn dihedral_tree<T: Real>(a: T, b: T, c: T) -> OracleGraph<T> {
    let graph = MetricGraph::new(
        &[N, N, N, N, D, D],
        &[(0, 1, T::lit(2.0) * a), (1, 2, b), (1, 3, c), (0, 4, b), (0, 5, c)],
    )
    .expect("valid dihedral tree");
    OracleGraph { kind: OracleKind::DihedralTree, lengths: vec![a, b, c], graph }
}

/// The dihedral graph, its isospectral tree, and their common secular function.
pub fn dihedral_pair<T: Real>(a: T, b: T, c: T) -> (OracleGraph<T>, OracleGraph<T>, impl Fn(T) -> Complex<T>) {
    (dihedral(a, b, c), dihedral_tree(a, b, c), move |k| dihedral_secular(a, b, c, k, T::zero()))
}

/// Complete graph on four vertices: spokes of length `b` from vertex 0, base triangle of length `a`.
pub fn tetrahedron<T: Real>(a: T, b: T) -> OracleGraph<T> {
    let graph = MetricGraph::new(&[N, N, N, N], &[(0, 1, b), (0, 2, b), (0, 3, b), (1, 2, a), (2, 3, a), (1, 3, a)])
        .expect("valid tetrahedron");
    OracleGraph { kind: OracleKind::Tetrahedron, lengths: vec![a, b], graph }
}

/// Graph with the symmetry of the square from which both dihedral graphs are
/// quotients: eight degree-three vertices in a ring, consecutive pairs joined
/// alternately by a double edge (`2b`, `2c`) and a single edge `2a`.
pub fn dihedral_parent<T: Real>(a: T, b: T, c: T) -> OracleGraph<T> {
    let two = T::lit(2.0);
    let mut edges = Vec::new();
    for p in [0, 2, 4, 6] {
        edges.push((p, p + 1, two * b));
        edges.push((p, p + 1, two * c));
    }
    for p in [1, 3, 5, 7] {
        edges.push((p, (p + 1) % 8, two * a));
    }
    let graph = MetricGraph::new(&[N; 8], &edges).expect("valid parent graph");
    OracleGraph { kind: OracleKind::DihedralParent, lengths: vec![a, b, c], graph }
}

/// Positive `k` of an interval with the given end conditions, preceded by `0` when both ends are Neumann.
pub fn interval_spectrum<T: Real>(length: T, left: VertexCondition, right: VertexCondition, k_max: T) -> Vec<T> {
    let mut out = Vec::new();
    let mixed = left != right;
    if left == N && right == N {
        out.push(T::zero());
    }
    for n in 1.. {
        let m = if mixed { T::from_count(n) - T::lit(0.5) } else { T::from_count(n) };
        let k = T::PI() * m / length;
        if k > k_max {
            break;
        }
        out.push(k);
    }
    out
}

/// `Σ_i sin(kL_i) Π_{j≠i} cos(kL_j)`; zero exactly at the Neumann-star spectrum.
pub fn star_secular_neumann<T: Real>(lengths: &[T], k: T) -> T {
    (0..lengths.len())
        .map(|i| {
            lengths.iter().enumerate().fold(T::one(), |p, (j, &l)| p * if i == j { (k * l).sin() } else { (k * l).cos() })
        })
        .fold(T::zero(), |a, x| a + x)
}

/// `Σ_i cos(kL_i) Π_{j≠i} sin(kL_j)`; zero exactly at the Dirichlet-star spectrum.
pub fn star_secular_dirichlet<T: Real>(lengths: &[T], k: T) -> T {
    (0..lengths.len())
        .map(|i| {
            lengths.iter().enumerate().fold(T::one(), |p, (j, &l)| p * if i == j { (k * l).cos() } else { (k * l).sin() })
        })
        .fold(T::zero(), |a, x| a + x)
}

/// Secular determinant of the three-edge star with Neumann leaves.
pub fn star_sigma_neumann<T: Real>(lengths: &[T], k: T) -> Complex<T> {
    let z: Vec<Complex<T>> = lengths.iter().map(|&l| cis(T::lit(2.0) * k * l)).collect();
    let third = c::<T>(1.0 / 3.0);
    -(z[0] * z[1] * z[2]) - third * (z[0] * z[1] + z[1] * z[2] + z[2] * z[0]) + third * (z[0] + z[1] + z[2]) + c(1.0)
}

/// Secular determinant of the three-edge star with Dirichlet leaves.
pub fn star_sigma_dirichlet<T: Real>(lengths: &[T], k: T) -> Complex<T> {
    let z: Vec<Complex<T>> = lengths.iter().map(|&l| cis(T::lit(2.0) * k * l)).collect();
    let third = c::<T>(1.0 / 3.0);
    z[0] * z[1] * z[2] - third * (z[0] * z[1] + z[1] * z[2] + z[2] * z[0]) - third * (z[0] + z[1] + z[2]) + c(1.0)
}

/// `(1/3)(z₂ - 1)(3z₁²z₂ - z₁² + z₂ - 3)` with `z_j = e^{ikL_j}`.
pub fn lasso_secular<T: Real>(l1: T, l2: T, k: T) -> Complex<T> {
    let (z1, z2) = (cis(k * l1), cis(k * l2));
    c::<T>(1.0 / 3.0) * (z2 - c(1.0)) * (c::<T>(3.0) * z1 * z1 * z2 - z1 * z1 + z2 - c(3.0))
}

/// Product of the Neumann-star and Dirichlet-star factors with `z_j = e^{ikL_j}`.
pub fn mandarin_secular<T: Real>(l1: T, l2: T, l3: T, k: T) -> Complex<T> {
    let half = T::lit(0.5);
    let ls = [l1 * half, l2 * half, l3 * half];
    star_sigma_neumann(&ls, k) * star_sigma_dirichlet(&ls, k)
}

/// Secular determinant of the dihedral graph (and of its isospectral tree) with flux `α` through the cycle.
pub fn dihedral_secular<T: Real>(a: T, b: T, c_: T, k: T, alpha: T) -> Complex<T> {
    let za4 = cis(T::lit(4.0) * k * a);
    let zb2 = cis(T::lit(2.0) * k * b);
    let zc2 = cis(T::lit(2.0) * k * c_);
    let (zb4, zc4) = (zb2 * zb2, zc2 * zc2);
    let ninth = c::<T>(1.0 / 9.0);
    -(za4 * zb4 * zc4) + ninth * (za4 * zb4 + zb4 * zc4 + zc4 * za4)
        + c::<T>(8.0 / 9.0) * Complex::new(alpha.cos(), T::zero()) * (za4 - c(1.0)) * zb2 * zc2
        - ninth * (za4 + zb4 + zc4)
        + c(1.0)
}

/// `(1/27)(z_a - 1)(3z_a z_b² - z_b² + z_a - 3)(3z_a²z_b² + 2z_a z_b² - z_a² + z_b² - 2z_a - 3)²`.
pub fn tetrahedron_secular<T: Real>(a: T, b: T, k: T) -> Complex<T> {
    let (za, zb) = (cis(k * a), cis(k * b));
    let zb2 = zb * zb;
    let f = c::<T>(3.0) * za * za * zb2 + c::<T>(2.0) * za * zb2 - za * za + zb2 - c::<T>(2.0) * za - c(3.0);
    c::<T>(1.0 / 27.0) * (za - c(1.0)) * (c::<T>(3.0) * za * zb2 - zb2 + za - c(3.0)) * f * f
}

/// The four one-dimensional factors of the parent graph's secular determinant,
/// each a three-star with arms `a, b, c`; the arms `b` and `c` share a condition.
pub fn dihedral_parent_star_factors<T: Real>(a: T, b: T, c_: T, k: T) -> [Complex<T>; 4] {
    let za = cis(T::lit(2.0) * k * a);
    let zb = cis(T::lit(2.0) * k * b);
    let zc = cis(T::lit(2.0) * k * c_);
    let p = c::<T>(3.0) * za * zb * zc;
    let (ab, bc, ca) = (za * zb, zb * zc, zc * za);
    [
        p + ab + bc + ca - za - zb - zc - c(3.0),
        p + ab - bc + ca - za + zb + zc + c(3.0),
        p - ab + bc - ca - za + zb + zc - c(3.0),
        p - ab - bc - ca - za - zb - zc + c(3.0),
    ]
}
