use crate::error::{Error, Result};
use crate::graph::{CycleBasis, MetricGraph};
use crate::scalar::{wrap_angle, Real};

/// Magnetic fluxes through the fundamental cycles, one per chord, each in `[-π, π]`.
///
/// The whole flux of a cycle is carried by its chord: the chord's forward
/// bond picks up `e^{iα}` and its reversal `e^{-iα}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FluxAssignment<T> {
    values: Vec<T>,
}

impl<T: Real> FluxAssignment<T> {
    pub fn new(values: Vec<T>) -> Self {
        Self { values: values.into_iter().map(wrap_angle).collect() }
    }

    pub fn zero(beta: usize) -> Self {
        Self { values: vec![T::zero(); beta] }
    }

    /// Zero flux sized for `graph`.
    pub fn none_for(graph: &MetricGraph<T>) -> Self {
        Self::zero(graph.betti_number())
    }

    /// Fluxes produced by an arbitrary per-edge phase `θ_e` (forward direction):
    /// each cycle collects the signed sum of the phases along it.
    pub fn from_edge_phases(graph: &MetricGraph<T>, basis: &CycleBasis, phases: &[T]) -> Result<Self> {
        if phases.len() != graph.edge_count() {
            return Err(Error::InvalidArgument(format!(
                "expected {} edge phases, got {}",
                graph.edge_count(),
                phases.len()
            )));
        }
        let ne = graph.edge_count();
        let values = basis
            .cycles
            .iter()
            .map(|cycle| {
                cycle
                    .iter()
                    .map(|&b| if b < ne { phases[b] } else { -phases[b - ne] })
                    .fold(T::zero(), |a, x| a + x)
            })
            .collect();
        Ok(Self::new(values))
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn beta(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == T::zero())
    }

    pub fn negated(&self) -> Self {
        Self::new(self.values.iter().map(|v| -*v).collect())
    }

    /// Per-bond phase: `+α` on a chord's forward bond, `-α` on its reversal, zero elsewhere.
    pub fn bond_phases(&self, graph: &MetricGraph<T>, basis: &CycleBasis) -> Result<Vec<T>> {
        if self.values.len() != basis.beta {
            return Err(Error::FluxDimensionMismatch { expected: basis.beta, got: self.values.len() });
        }
        let ne = graph.edge_count();
        let mut theta = vec![T::zero(); 2 * ne];
        for (&chord, &alpha) in basis.chords.iter().zip(&self.values) {
            theta[chord] = alpha;
            theta[chord + ne] = -alpha;
        }
        Ok(theta)
    }

    /// Whether every cycle flux is trivial on the component containing `vertices`.
    pub(crate) fn trivial_on(&self, graph: &MetricGraph<T>, basis: &CycleBasis, vertices: &[usize]) -> bool {
        basis.chords.iter().zip(&self.values).all(|(&chord, &alpha)| {
            let (u, _) = graph.edges()[chord].endpoints;
            !vertices.contains(&u) || wrap_angle(alpha).abs() <= T::epsilon() * T::lit(16.0)
        })
    }
}
