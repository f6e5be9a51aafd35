use crate::error::{Error, Result};
use crate::graph::{MetricGraph, VertexCondition};
use crate::magnetic::FluxAssignment;
use crate::scalar::Real;

use super::spectrum::{find_spectrum, SolverConfig};

/// Result of comparing two interlacing sequences below a common `k_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct InterlacingReport<T> {
    /// Inequalities checked.
    pub checked: usize,
    /// Indices (1-based) where an inequality holds with equality, within tolerance.
    pub equalities: Vec<usize>,
    pub lower_count: usize,
    pub upper_count: usize,
    pub k_max: T,
}

/// Checks `a_n ≤ b_n ≤ a_{n+1}` for two ascending `k` lists computed up to the same `k_max`.
///
/// Both lists are first cut at a common point at least `1e-6` away from every
/// root, so an eigenvalue sitting on `k_max` cannot be counted in one list and
/// not the other.
pub fn check_interlacing<T: Real>(a: &[T], b: &[T], tol: T, k_max: T) -> Result<InterlacingReport<T>> {
    let cut = common_cut(a, b, k_max);
    let a = &a[..a.partition_point(|&x| x <= cut)];
    let b = &b[..b.partition_point(|&x| x <= cut)];
    let mut report =
        InterlacingReport { checked: 0, equalities: Vec::new(), lower_count: a.len(), upper_count: b.len(), k_max };
    let fmt = |x: T| format!("{:.12e}", x.as_f64());
    if b.len() > a.len() || a.len() > b.len() + 1 {
        return Err(Error::InterlacingViolation {
            index: b.len().min(a.len()) + 1,
            detail: format!("counts below k_max are {} and {}", a.len(), b.len()),
        });
    }
    for n in 0..b.len() {
        report.checked += 1;
        if a[n] > b[n] + tol {
            return Err(Error::InterlacingViolation {
                index: n + 1,
                detail: format!("lower {} exceeds upper {}", fmt(a[n]), fmt(b[n])),
            });
        }
        let mut equal = (b[n] - a[n]).abs() <= tol;
        if n + 1 < a.len() {
            report.checked += 1;
            if b[n] > a[n + 1] + tol {
                return Err(Error::InterlacingViolation {
                    index: n + 1,
                    detail: format!("upper {} exceeds next lower {}", fmt(b[n]), fmt(a[n + 1])),
                });
            }
            equal |= (a[n + 1] - b[n]).abs() <= tol;
        }
        if equal {
            report.equalities.push(n + 1);
        }
    }
    Ok(report)
}

fn common_cut<T: Real>(a: &[T], b: &[T], k_max: T) -> T {
    let guard = T::lit(1e-6);
    let mut all: Vec<T> = a.iter().chain(b).copied().collect();
    all.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    let mut cut = k_max;
    while let Some(i) = all.iter().rposition(|&x| (x - cut).abs() < guard) {
        // Step to the middle of the gap below the offending root.
        let below = all[..i].iter().rev().find(|&&x| x < all[i] - guard).copied().unwrap_or(T::zero());
        cut = (below + all[i]) * T::lit(0.5);
    }
    cut
}

/// Imposing Dirichlet at a Neumann vertex raises each eigenvalue by at most one position.
pub fn verify_interlacing_nd<T: Real>(
    graph: &MetricGraph<T>,
    vertex: usize,
    k_max: T,
    config: &SolverConfig<T>,
) -> Result<InterlacingReport<T>> {
    if vertex >= graph.vertex_count() {
        return Err(Error::UnknownVertex(vertex));
    }
    if graph.condition(vertex) != VertexCondition::Neumann {
        return Err(Error::NotNeumann(vertex));
    }
    let modified = graph.modify_condition(vertex, VertexCondition::Dirichlet)?;
    let a = find_spectrum(graph, &FluxAssignment::none_for(graph), k_max, config)?;
    let b = find_spectrum(&modified, &FluxAssignment::none_for(&modified), k_max, config)?;
    check_interlacing(&a.k_values(), &b.k_values(), config.refine_tol * T::lit(2.0), k_max)
}

/// Gluing two Neumann vertices lowers no eigenvalue and raises each by at most one position.
pub fn verify_interlacing_merge<T: Real>(
    graph: &MetricGraph<T>,
    v1: usize,
    v2: usize,
    k_max: T,
    config: &SolverConfig<T>,
) -> Result<InterlacingReport<T>> {
    let merged = graph.merge_vertices(v1, v2)?;
    let a = find_spectrum(graph, &FluxAssignment::none_for(graph), k_max, config)?;
    let b = find_spectrum(&merged, &FluxAssignment::none_for(&merged), k_max, config)?;
    check_interlacing(&a.k_values(), &b.k_values(), config.refine_tol * T::lit(2.0), k_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_out_of_order() {
        let a = [1.0, 2.0, 3.0];
        assert!(check_interlacing(&a, &[1.5, 2.5], 1e-12, 3.2).is_ok());
        let err = check_interlacing(&a, &[1.5, 3.5], 1e-12, 3.6).unwrap_err();
        assert!(matches!(err, Error::InterlacingViolation { index: 2, .. }));
    }

    #[test]
    fn records_equalities() {
        let r = check_interlacing(&[0.0, 1.0], &[1.0], 1e-12, 1.5).unwrap();
        assert_eq!(r.equalities, vec![1]);
    }
}
