//! Magnetic flux through the cycles: dispersion sweeps, the Hessian of an
//! eigenvalue at zero flux, and the Morse index versus nodal surplus check.

mod flux;

pub use flux::FluxAssignment;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::linalg::symmetric_eigenvalues;
use crate::nodal::{count_zeros, nodal_profile, reconstruct, NodalStatus};
use crate::scalar::Real;
use crate::secular::SecularEngine;
use crate::solver::{brent_root, find_spectrum, lowest_k, SolverConfig, Spectrum};

/// How band values are tied together across flux points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tracking {
    /// The `n`-th sheet is the `n`-th smallest eigenvalue at every point.
    SortedValue,
}

/// `λ_n(α)` sampled over a flux grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersionSheet<T> {
    pub band_index: usize,
    pub samples: Vec<(FluxAssignment<T>, T)>,
    pub tracking: Tracking,
}

/// Tensor grid of `points` values per cycle over `[-π, π]`.
pub fn flux_grid<T: Real>(beta: usize, points: usize) -> Vec<FluxAssignment<T>> {
    let axis: Vec<T> = (0..points)
        .map(|i| {
            if points == 1 {
                T::zero()
            } else {
                -T::PI() + T::lit(2.0) * T::PI() * T::from_count(i) / T::from_count(points - 1)
            }
        })
        .collect();
    let mut out = vec![Vec::new()];
    for _ in 0..beta {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<T>| {
                axis.iter().map(move |&x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(FluxAssignment::new).collect()
}

/// The lowest `n_bands` eigenvalues `λ` at every flux in `grid`.
pub fn sweep<T: Real>(
    graph: &MetricGraph<T>,
    n_bands: usize,
    grid: &[FluxAssignment<T>],
    config: &SolverConfig<T>,
) -> Result<Vec<DispersionSheet<T>>> {
    let beta = graph.betti_number();
    if beta == 0 {
        return Err(Error::NoCycles);
    }
    let values: Vec<Result<Vec<T>>> = grid
        .par_iter()
        .enumerate()
        .map(|(point, flux)| {
            if flux.beta() != beta {
                return Err(Error::FluxDimensionMismatch { expected: beta, got: flux.beta() });
            }
            lowest_k(graph, flux, n_bands, config)
                .map(|ks| ks.into_iter().map(|k| k * k).collect())
                .map_err(|e| Error::SolverFailureAtGridPoint { point, reason: e.to_string() })
        })
        .collect();
    let mut sheets: Vec<DispersionSheet<T>> = (1..=n_bands)
        .map(|band_index| DispersionSheet { band_index, samples: Vec::new(), tracking: Tracking::SortedValue })
        .collect();
    for (flux, vals) in grid.iter().zip(values) {
        for (sheet, v) in sheets.iter_mut().zip(vals?) {
            sheet.samples.push((flux.clone(), v));
        }
    }
    Ok(sheets)
}

/// Grid points where sheets `b` and `b + 1` come within `tol` of each other: `(point, b)`.
pub fn band_touchings<T: Real>(sheets: &[DispersionSheet<T>], tol: T) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for pair in sheets.windows(2) {
        for (p, (lo, hi)) in pair[0].samples.iter().zip(&pair[1].samples).enumerate() {
            if hi.1 - lo.1 <= tol {
                out.push((p, pair[0].band_index));
            }
        }
    }
    out
}

/// Largest mismatch between bands at `α` and `-α`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryReport<T> {
    pub max_difference: T,
    pub samples: usize,
}

/// Checks `λ_n(α) = λ_n(-α)` (compared in `k`) within `2·refine_tol`.
pub fn verify_flux_symmetry<T: Real>(
    graph: &MetricGraph<T>,
    n_bands: usize,
    samples: &[FluxAssignment<T>],
    config: &SolverConfig<T>,
) -> Result<SymmetryReport<T>> {
    let tol = config.refine_tol * T::lit(2.0);
    let mut worst = T::zero();
    for flux in samples {
        let plus = lowest_k(graph, flux, n_bands, config)?;
        let minus = lowest_k(graph, &flux.negated(), n_bands, config)?;
        for (band, (a, b)) in plus.iter().zip(&minus).enumerate() {
            let d = (*a - *b).abs();
            worst = worst.max(d);
            if d > tol {
                return Err(Error::SymmetryViolation { band: band + 1, difference: d.as_f64() });
            }
        }
    }
    Ok(SymmetryReport { max_difference: worst, samples: samples.len() })
}

/// Second-order behaviour of `λ_n(α)` at `α = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPointReport<T> {
    pub n: usize,
    pub lambda: T,
    pub gradient: Vec<T>,
    /// `β × β`, row-major, symmetrized.
    pub hessian: Vec<T>,
    pub hessian_eigenvalues: Vec<T>,
    pub morse_index: usize,
    pub degenerate: bool,
    pub step: T,
}

/// Finite-difference Hessian of `λ_n` with respect to the cycle fluxes at zero flux.
///
/// Central differences with step `h` and `h/2` are combined by one Richardson
/// step. The Morse index is the number of negative Hessian eigenvalues.
pub fn hessian_at_zero<T: Real>(
    graph: &MetricGraph<T>,
    n: usize,
    step: T,
    config: &SolverConfig<T>,
) -> Result<CriticalPointReport<T>> {
    let zero = FluxAssignment::none_for(graph);
    let k_max = T::PI() * T::from_count(n + 2 + graph.edge_count()) / graph.total_length();
    let spectrum = find_spectrum(graph, &zero, k_max, config)?;
    let f = reconstruct(graph, &spectrum, n, config)?;
    count_zeros(graph, &f)?;
    critical_point(graph, &spectrum, n, step, config)
}

fn critical_point<T: Real>(
    graph: &MetricGraph<T>,
    spectrum: &Spectrum<T>,
    n: usize,
    step: T,
    config: &SolverConfig<T>,
) -> Result<CriticalPointReport<T>> {
    let ev = spectrum.eigenvalue(n).ok_or(Error::IndexOutOfRange { n, available: spectrum.len() })?;
    if ev.multiplicity > 1 {
        return Err(Error::DegenerateEigenvalue { n, multiplicity: ev.multiplicity });
    }
    let beta = graph.betti_number();
    let lambda = ev.k * ev.k;
    if beta == 0 {
        return Ok(CriticalPointReport {
            n,
            lambda,
            gradient: Vec::new(),
            hessian: Vec::new(),
            hessian_eigenvalues: Vec::new(),
            morse_index: 0,
            degenerate: false,
            step,
        });
    }
    let ks = spectrum.k_values();
    let below = if n >= 2 { ks[n - 2] } else { T::zero() };
    let above = ks.get(n).copied().unwrap_or(spectrum.k_max);
    let half_width = T::lit(0.45) * (ev.k - below).min(above - ev.k);

    let band = |alpha: &[T]| -> Result<T> {
        let flux = FluxAssignment::new(alpha.to_vec());
        if ev.root.is_some() && half_width > T::zero() {
            let eng = SecularEngine::new(graph, &flux)?;
            let (a, b) = (ev.k - half_width, ev.k + half_width);
            let (za, zb) = (eng.zeta(a), eng.zeta(b));
            if (za < T::zero()) != (zb < T::zero()) {
                let k = brent_root(|k| eng.zeta(k), a, b, za, zb, T::zero());
                return Ok(k * k);
            }
        }
        let ks = lowest_k(graph, &flux, n, config)?;
        Ok(ks[n - 1] * ks[n - 1])
    };

    let lam0 = band(&vec![T::zero(); beta])?;
    let estimate = |h: T| -> Result<(Vec<T>, Vec<T>)> {
        let mut grad = vec![T::zero(); beta];
        let mut hess = vec![T::zero(); beta * beta];
        let shifted = |pairs: &[(usize, T)]| {
            let mut a = vec![T::zero(); beta];
            for &(i, d) in pairs {
                a[i] += d;
            }
            band(&a)
        };
        for i in 0..beta {
            let p = shifted(&[(i, h)])?;
            let m = shifted(&[(i, -h)])?;
            grad[i] = (p - m) / (T::lit(2.0) * h);
            hess[i * beta + i] = (p - T::lit(2.0) * lam0 + m) / (h * h);
            for j in 0..i {
                let pp = shifted(&[(i, h), (j, h)])?;
                let pm = shifted(&[(i, h), (j, -h)])?;
                let mp = shifted(&[(i, -h), (j, h)])?;
                let mm = shifted(&[(i, -h), (j, -h)])?;
                let v = (pp - pm - mp + mm) / (T::lit(4.0) * h * h);
                hess[i * beta + j] = v;
                hess[j * beta + i] = v;
            }
        }
        Ok((grad, hess))
    };
    let (g1, h1) = estimate(step)?;
    let (g2, h2) = estimate(step / T::lit(2.0))?;
    let rich = |a: &[T], b: &[T]| -> Vec<T> {
        a.iter().zip(b).map(|(x, y)| (T::lit(4.0) * *y - *x) / T::lit(3.0)).collect()
    };
    let gradient = rich(&g1, &g2);
    let mut hessian = rich(&h1, &h2);
    for i in 0..beta {
        for j in 0..i {
            let s = (hessian[i * beta + j] + hessian[j * beta + i]) * T::lit(0.5);
            hessian[i * beta + j] = s;
            hessian[j * beta + i] = s;
        }
    }
    let eig = symmetric_eigenvalues(&hessian, beta);
    let scale = eig.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    let gnorm = gradient.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    let gtol = T::lit(1e-6) * lambda.max(T::one()) + step * step * scale;
    if gnorm > gtol {
        return Err(Error::NotCritical { n, gradient: gnorm.as_f64() });
    }
    let smallest = eig.iter().fold(T::infinity(), |m, x| m.min(x.abs()));
    let degenerate = scale == T::zero() || smallest < T::lit(1e-4) * scale;
    if degenerate {
        return Err(Error::DegenerateHessian { n, smallest: smallest.as_f64() });
    }
    let morse_index = eig.iter().filter(|x| **x < T::zero()).count();
    Ok(CriticalPointReport { n, lambda, gradient, hessian, hessian_eigenvalues: eig, morse_index, degenerate, step })
}

/// One eigenvalue in the Morse index versus nodal surplus comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct MagneticNodalRow<T> {
    pub n: usize,
    pub k: T,
    pub surplus: Option<i64>,
    pub morse_index: Option<usize>,
    /// `"ok"` when compared, otherwise why the eigenvalue was skipped.
    pub status: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MagneticNodalReport<T> {
    pub rows: Vec<MagneticNodalRow<T>>,
    pub compared: usize,
}

/// For every simple eigenvalue whose eigenfunction does not vanish at a vertex,
/// the Morse index of `λ_n(α)` at zero flux must equal the nodal surplus.
pub fn verify_magnetic_nodal<T: Real>(
    graph: &MetricGraph<T>,
    k_max: T,
    step: T,
    config: &SolverConfig<T>,
) -> Result<MagneticNodalReport<T>> {
    let zero = FluxAssignment::none_for(graph);
    // Solve a little past k_max so the top eigenvalue has a known neighbour.
    let reach = k_max + T::lit(4.0) * T::PI() / graph.total_length();
    let spectrum = find_spectrum(graph, &zero, reach, config)?;
    let profile = nodal_profile(graph, &spectrum, config);
    let mut rows = Vec::new();
    let mut compared = 0;
    for row in profile.into_iter().filter(|r| r.k <= k_max) {
        let mut out =
            MagneticNodalRow { n: row.n, k: row.k, surplus: row.surplus, morse_index: None, status: String::new() };
        if row.status != NodalStatus::Valid {
            out.status = row.status.label().to_string();
            rows.push(out);
            continue;
        }
        match critical_point(graph, &spectrum, row.n, step, config) {
            Ok(cp) => {
                out.morse_index = Some(cp.morse_index);
                let surplus = row.surplus.unwrap_or(-1);
                if surplus < 0 || cp.morse_index as i64 != surplus {
                    return Err(Error::TheoremViolation { n: row.n, morse: cp.morse_index, surplus });
                }
                compared += 1;
                out.status = "ok".into();
            }
            Err(Error::DegenerateHessian { .. }) => out.status = "degenerate-hessian".into(),
            Err(Error::NotCritical { .. }) => out.status = "not-critical".into(),
            Err(e) => return Err(e),
        }
        rows.push(out);
    }
    Ok(MagneticNodalReport { rows, compared })
}
