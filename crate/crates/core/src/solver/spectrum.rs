use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::magnetic::FluxAssignment;
use crate::scalar::Real;
use crate::secular::SecularEngine;

use super::brent::{brent_root, golden_min};

/// Knobs of the root search.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig<T> {
    /// Scan step in k; `None` means `π / (20 𝓛)`.
    pub grid_step: Option<T>,
    /// Absolute bracket width at which Brent refinement stops.
    pub refine_tol: T,
    /// Roots closer than this are examined together for a shared null space.
    pub cluster_gap: T,
    /// Singular values of `I - S D(k)` below `null_tol · max(1, σ_max)` span its null space.
    pub null_tol: T,
    /// Upper bound on watchdog rescan passes.
    pub max_rescans: usize,
    /// Look for roots that touch zero without a sign change during the main scan.
    /// The watchdog rescans always do.
    pub tangent_search: bool,
}

impl<T: Real> Default for SolverConfig<T> {
    fn default() -> Self {
        Self {
            grid_step: None,
            refine_tol: T::default_refine_tol(),
            cluster_gap: T::lit(1e-6),
            null_tol: T::default_null_tol(),
            max_rescans: 3,
            tangent_search: true,
        }
    }
}

impl<T: Real> SolverConfig<T> {
    pub fn step_for(&self, graph: &MetricGraph<T>) -> T {
        self.grid_step.unwrap_or_else(|| T::PI() / (T::lit(20.0) * graph.total_length()))
    }
}

/// A positive root `k` of the secular function with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root<T> {
    pub k: T,
    pub multiplicity: usize,
}

/// Bookkeeping from one solve.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SolverDiagnostics {
    pub grid_points: usize,
    pub sign_brackets: usize,
    pub tangent_candidates: usize,
    pub tangent_roots: usize,
    pub rescans: usize,
    pub rescan_windows: Vec<(f64, f64)>,
    pub merged_clusters: usize,
}

/// All eigenvalues `λ = k² ≤ k_max²`. Zero is held separately and never searched for.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    pub roots: Vec<Root<T>>,
    pub lambda0_multiplicity: usize,
    pub k_max: T,
    pub total_length: T,
    pub edge_count: usize,
    pub vertex_count: usize,
    pub diagnostics: SolverDiagnostics,
}

/// Position of the `n`-th eigenvalue (1-based, multiplicities expanded).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenvalueRef<T> {
    pub k: T,
    pub multiplicity: usize,
    /// Index into `roots`, or `None` for the eigenvalue zero.
    pub root: Option<usize>,
}

impl<T: Real> Spectrum<T> {
    /// Number of eigenvalues with multiplicity, zero included.
    pub fn len(&self) -> usize {
        self.lambda0_multiplicity + self.roots.iter().map(|r| r.multiplicity).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `k` values with multiplicity, zeros first.
    pub fn k_values(&self) -> Vec<T> {
        let mut out = vec![T::zero(); self.lambda0_multiplicity];
        for r in &self.roots {
            out.extend(std::iter::repeat_n(r.k, r.multiplicity));
        }
        out
    }

    pub fn eigenvalues(&self) -> Vec<T> {
        self.k_values().into_iter().map(|k| k * k).collect()
    }

    pub fn eigenvalue(&self, n: usize) -> Option<EigenvalueRef<T>> {
        if n == 0 {
            return None;
        }
        if n <= self.lambda0_multiplicity {
            return Some(EigenvalueRef { k: T::zero(), multiplicity: self.lambda0_multiplicity, root: None });
        }
        let mut seen = self.lambda0_multiplicity;
        for (i, r) in self.roots.iter().enumerate() {
            seen += r.multiplicity;
            if n <= seen {
                return Some(EigenvalueRef { k: r.k, multiplicity: r.multiplicity, root: Some(i) });
            }
        }
        None
    }

    /// `N(k)`: eigenvalues with `√λ ≤ k`.
    pub fn counting_function(&self, k: T) -> Result<usize> {
        counting_function(self, k)
    }

    /// `N(k) - 𝓛k/π` at every root and at the midpoint before it.
    pub fn weyl_gap(&self) -> Vec<(T, T)> {
        weyl_gap(self)
    }

    /// Whether `𝓛k/π - |E| ≤ N(k) ≤ 𝓛k/π + |V|` holds just below and at each root, and at `k_max`.
    pub fn weyl_violation(&self) -> Option<Error> {
        weyl_violation(
            &self.roots,
            self.lambda0_multiplicity,
            self.total_length,
            self.edge_count,
            self.vertex_count,
            self.k_max,
        )
    }
}

pub fn counting_function<T: Real>(spectrum: &Spectrum<T>, k: T) -> Result<usize> {
    if k > spectrum.k_max {
        return Err(Error::BeyondScanCeiling { k: k.as_f64(), k_max: spectrum.k_max.as_f64() });
    }
    if k < T::zero() {
        return Ok(0);
    }
    Ok(spectrum.lambda0_multiplicity
        + spectrum.roots.iter().filter(|r| r.k <= k).map(|r| r.multiplicity).sum::<usize>())
}

pub fn weyl_gap<T: Real>(spectrum: &Spectrum<T>) -> Vec<(T, T)> {
    let slope = spectrum.total_length / T::PI();
    let mut out = Vec::with_capacity(2 * spectrum.roots.len());
    let mut count = spectrum.lambda0_multiplicity;
    let mut prev = T::zero();
    for r in &spectrum.roots {
        let mid = (prev + r.k) * T::lit(0.5);
        out.push((mid, T::from_count(count) - slope * mid));
        count += r.multiplicity;
        out.push((r.k, T::from_count(count) - slope * r.k));
        prev = r.k;
    }
    out
}

fn weyl_violation<T: Real>(
    roots: &[Root<T>],
    lambda0: usize,
    total_length: T,
    edges: usize,
    vertices: usize,
    k_max: T,
) -> Option<Error> {
    let slope = total_length / T::PI();
    let slack = T::lit(1e-9);
    let mut count = lambda0;
    let band = |k: T| (slope * k - T::from_count(edges), slope * k + T::from_count(vertices));
    let fail = |k: T, count: usize| {
        let (lo, hi) = band(k);
        Error::WeylViolation { k: k.as_f64(), count, lower: lo.as_f64(), upper: hi.as_f64() }
    };
    for r in roots {
        let (lo, _) = band(r.k);
        if T::from_count(count) < lo - slack {
            return Some(fail(r.k, count));
        }
        count += r.multiplicity;
        let (_, hi) = band(r.k);
        if T::from_count(count) > hi + slack {
            return Some(fail(r.k, count));
        }
    }
    let (lo, hi) = band(k_max);
    let c = T::from_count(count);
    if c < lo - slack || c > hi + slack {
        return Some(fail(k_max, count));
    }
    None
}

#[derive(Debug, Clone, Copy)]
enum Found {
    SignChange,
    Tangent(usize),
}

#[derive(Debug, Clone, Copy)]
struct Candidate<T> {
    k: T,
    kind: Found,
}

/// Multiplicity of zero: components without a Dirichlet vertex whose cycle fluxes are all trivial.
pub fn lambda0_multiplicity<T: Real>(graph: &MetricGraph<T>, flux: &FluxAssignment<T>) -> usize {
    let basis = graph.fundamental_cycles();
    graph
        .components()
        .iter()
        .filter(|c| c.iter().all(|&v| graph.condition(v) == crate::graph::VertexCondition::Neumann))
        .filter(|c| flux.trivial_on(graph, &basis, c))
        .count()
}

/// All roots of the secular function in `(0, k_max]`.
///
/// The scan samples `ζ(k)` on a uniform grid, refines every sign change with
/// Brent's method, and probes each local minimum of `|ζ|` that does not change
/// sign for a touching (even-order) or closely spaced pair of roots.
/// Multiplicity is the null-space dimension of `I - S D(k)`. A watchdog then
/// follows `N(k) - 𝓛k/π`: a sustained drop of about two below the running
/// envelope marks a window that is rescanned on a finer grid.
pub fn find_spectrum<T: Real>(
    graph: &MetricGraph<T>,
    flux: &FluxAssignment<T>,
    k_max: T,
    config: &SolverConfig<T>,
) -> Result<Spectrum<T>> {
    if !(k_max.is_finite() && k_max > T::zero()) {
        return Err(Error::InvalidArgument(format!("k_max must be positive, got {}", k_max)));
    }
    let engine = SecularEngine::new(graph, flux)?;
    let step = config.step_for(graph);
    if !(step.is_finite() && step > T::zero()) {
        return Err(Error::InvalidArgument("grid step must be positive".into()));
    }
    let lambda0 = lambda0_multiplicity(graph, flux);
    let mut diag = SolverDiagnostics::default();
    // Scanning a little past k_max lets a root sitting on k_max show up as an interior minimum.
    let reach = k_max + step * T::lit(2.0);
    let keep = k_max + config.refine_tol;
    let mut candidates = scan(&engine, T::zero(), reach, step, config, config.tangent_search, &mut diag);
    let mut roots = resolve(&engine, &mut candidates, config, &mut diag);
    roots.retain(|r| r.k <= keep);

    let window = (2 * graph.edge_count()).max(8);
    let mut done: Vec<(T, T)> = Vec::new();
    let mut fine = step;
    for _ in 0..config.max_rescans {
        let flagged = suspicious_windows(&roots, lambda0, graph, k_max, window);
        let todo: Vec<(T, T)> =
            flagged.into_iter().filter(|w| !done.iter().any(|d| d.0 <= w.0 && w.1 <= d.1)).collect();
        if todo.is_empty() {
            break;
        }
        diag.rescans += 1;
        fine /= T::lit(16.0);
        for &(lo, hi) in &todo {
            diag.rescan_windows.push((lo.as_f64(), hi.as_f64()));
            let more = scan(&engine, lo, hi, fine, config, true, &mut diag);
            candidates.extend(more);
        }
        done.extend(todo);
        roots = resolve(&engine, &mut candidates, config, &mut diag);
        roots.retain(|r| r.k <= keep);
    }

    if let Some(err) =
        weyl_violation(&roots, lambda0, graph.total_length(), graph.edge_count(), graph.vertex_count(), k_max)
    {
        return Err(err);
    }
    Ok(Spectrum {
        roots,
        lambda0_multiplicity: lambda0,
        k_max,
        total_length: graph.total_length(),
        edge_count: graph.edge_count(),
        vertex_count: graph.vertex_count(),
        diagnostics: diag,
    })
}

/// The lowest `count` eigenvalues as `k` values (zeros included), enlarging the scan as needed.
pub fn lowest_k<T: Real>(
    graph: &MetricGraph<T>,
    flux: &FluxAssignment<T>,
    count: usize,
    config: &SolverConfig<T>,
) -> Result<Vec<T>> {
    // Weyl's lower bound guarantees `count` eigenvalues below this k.
    let mut k_max = T::PI() * T::from_count(count + graph.edge_count() + 1) / graph.total_length();
    for _ in 0..8 {
        let spec = find_spectrum(graph, flux, k_max, config)?;
        let ks = spec.k_values();
        if ks.len() >= count {
            return Ok(ks[..count].to_vec());
        }
        k_max *= T::lit(2.0);
    }
    Err(Error::InvalidArgument(format!("could not collect {count} eigenvalues")))
}

fn scan<T: Real>(
    eng: &SecularEngine<'_, T>,
    lo: T,
    hi: T,
    step: T,
    cfg: &SolverConfig<T>,
    tangent: bool,
    diag: &mut SolverDiagnostics,
) -> Vec<Candidate<T>> {
    let mut out = Vec::new();
    let start = if lo <= T::zero() {
        let k0 = step / T::lit(4.0);
        probe_near_zero(eng, k0, cfg, &mut out, diag);
        k0
    } else {
        lo
    };
    if hi <= start {
        return out;
    }
    let n = ((hi - start) / step).ceil().to_usize().unwrap_or(0).max(1);
    let mut grid: Vec<T> = (0..=n).map(|i| (start + step * T::from_count(i)).min(hi)).collect();
    grid.dedup();
    let z: Vec<T> = grid.par_iter().map(|&k| eng.zeta(k)).collect();
    diag.grid_points += grid.len();

    let zeta = |k: T| eng.zeta(k);
    for i in 0..grid.len() {
        if z[i] == T::zero() {
            out.push(Candidate { k: grid[i], kind: Found::SignChange });
            continue;
        }
        if i + 1 < grid.len() && z[i + 1] != T::zero() && (z[i] < T::zero()) != (z[i + 1] < T::zero()) {
            diag.sign_brackets += 1;
            let k = brent_root(zeta, grid[i], grid[i + 1], z[i], z[i + 1], cfg.refine_tol);
            out.push(Candidate { k, kind: Found::SignChange });
            if tangent {
                // An odd cluster shows a single sign change; the rest of it hides behind this root.
                let (l, r) = (grid[i.saturating_sub(1)], grid[(i + 2).min(grid.len() - 1)]);
                let h = move |x: T| eng.zeta(x) / (x - k);
                deflated_search(eng, &h, l, r, k, cfg, &mut out, diag, 1);
            }
        }
    }
    if tangent {
        for i in 1..grid.len().saturating_sub(1) {
            let (a, b, c) = (z[i - 1], z[i], z[i + 1]);
            let same = (a > T::zero()) == (b > T::zero()) && (b > T::zero()) == (c > T::zero());
            if same && b != T::zero() && b.abs() <= a.abs() && b.abs() <= c.abs() {
                diag.tangent_candidates += 1;
                let sign = b.signum();
                tangent_probe(eng, grid[i - 1], grid[i + 1], sign, cfg, &mut out, diag);
            }
        }
    }
    out
}

/// Looks for roots below the first grid point on a geometric grid. Only
/// relevant when a flux lifts the eigenvalue zero to a small positive value.
fn probe_near_zero<T: Real>(
    eng: &SecularEngine<'_, T>,
    k0: T,
    cfg: &SolverConfig<T>,
    out: &mut Vec<Candidate<T>>,
    diag: &mut SolverDiagnostics,
) {
    if eng.flux().is_zero() {
        return;
    }
    let floor = T::epsilon() * T::lit(1e4);
    let pts: Vec<T> = (0..=40).rev().map(|j| k0 / T::lit(2f64.powi(j))).collect();
    let z: Vec<T> = pts.iter().map(|&k| eng.zeta(k)).collect();
    for i in 0..pts.len() - 1 {
        if z[i].abs() > floor && z[i + 1].abs() > floor && (z[i] < T::zero()) != (z[i + 1] < T::zero()) {
            diag.sign_brackets += 1;
            let tol = cfg.refine_tol.min(pts[i] * T::lit(1e-6));
            let k = brent_root(|k| eng.zeta(k), pts[i], pts[i + 1], z[i], z[i + 1], tol);
            out.push(Candidate { k, kind: Found::SignChange });
        }
    }
}

fn tangent_probe<T: Real>(
    eng: &SecularEngine<'_, T>,
    a: T,
    b: T,
    sign: T,
    cfg: &SolverConfig<T>,
    out: &mut Vec<Candidate<T>>,
    diag: &mut SolverDiagnostics,
) {
    probe_touching(eng, &|k| eng.zeta(k), a, b, sign, cfg, out, diag, 0);
}

/// Examines a local minimum of `sign·f` on `[a, b]` for roots that touch zero
/// or for a close pair hidden between grid points. `f` is `ζ`, or `ζ` with
/// already found roots divided out.
#[allow(clippy::too_many_arguments)]
fn probe_touching<T: Real>(
    eng: &SecularEngine<'_, T>,
    f: &dyn Fn(T) -> T,
    a: T,
    b: T,
    sign: T,
    cfg: &SolverConfig<T>,
    out: &mut Vec<Candidate<T>>,
    diag: &mut SolverDiagnostics,
    depth: usize,
) {
    let g = |k: T| sign * f(k);
    let width = ((b - a) * T::lit(1e-5)).max(cfg.refine_tol * T::lit(10.0));
    let (km, gm) = golden_min(g, a, b, width);
    let split = |at: T, out: &mut Vec<Candidate<T>>| {
        let (ga, gat, gb) = (g(a), g(at), g(b));
        for (l, r, fl, fr) in [(a, at, ga, gat), (at, b, gat, gb)] {
            if (fl < T::zero()) != (fr < T::zero()) {
                let k = brent_root(g, l, r, fl, fr, cfg.refine_tol);
                out.push(Candidate { k, kind: Found::SignChange });
            }
        }
    };
    if gm < T::zero() {
        split(km, out);
        return;
    }
    // Sharpen the extremum through a central-difference derivative. One
    // Richardson step removes the δ² bias, which otherwise shifts the zero by
    // about δ²·g'''/g'' and can push it out of the null-space test.
    let delta = T::epsilon().cbrt() * km.abs().max(T::one());
    let half = delta * T::lit(0.5);
    let dg = |k: T| T::lit(8.0) * (g(k + half) - g(k - half)) - (g(k + delta) - g(k - delta));
    let w = (width * T::lit(2.0)).max(delta * T::lit(4.0));
    let (l, r) = ((km - w).max(a), (km + w).min(b));
    let (dl, dr) = (dg(l), dg(r));
    let kstar = if dl < T::zero() && dr > T::zero() { brent_root(dg, l, r, dl, dr, cfg.refine_tol) } else { km };
    if g(kstar) < T::zero() {
        split(kstar, out);
        return;
    }
    let d = eng.svd(kstar).null_dimension(cfg.null_tol);
    if d == 0 {
        return;
    }
    diag.tangent_roots += 1;
    out.push(Candidate { k: kstar, kind: Found::Tangent(d) });
    if depth < 3 {
        // Divide the root out and look for a neighbour sharing this minimum.
        let order = i32::try_from(d).unwrap_or(i32::MAX);
        let h = move |k: T| f(k) / (k - kstar).powi(order);
        deflated_search(eng, &h, a, b, kstar, cfg, out, diag, depth + 1);
    }
}

/// Sign changes and touching minima of a deflated function on a fine subgrid
/// of `[a, b]`, away from the root that was divided out.
#[allow(clippy::too_many_arguments)]
fn deflated_search<T: Real>(
    eng: &SecularEngine<'_, T>,
    h: &dyn Fn(T) -> T,
    a: T,
    b: T,
    removed: T,
    cfg: &SolverConfig<T>,
    out: &mut Vec<Candidate<T>>,
    diag: &mut SolverDiagnostics,
    depth: usize,
) {
    let n = 32;
    let guard = (b - a) * T::lit(0.01);
    let pts: Vec<T> = (0..=n)
        .map(|i| a + (b - a) * T::from_count(i) / T::from_count(n))
        .filter(|&k| (k - removed).abs() > guard)
        .collect();
    let vals: Vec<T> = pts.iter().map(|&k| h(k)).collect();
    for i in 0..pts.len().saturating_sub(1) {
        // A sign flip across the removed root is its odd order, not a new root.
        if pts[i] < removed && removed < pts[i + 1] {
            continue;
        }
        if (vals[i] < T::zero()) != (vals[i + 1] < T::zero()) {
            let k = brent_root(h, pts[i], pts[i + 1], vals[i], vals[i + 1], cfg.refine_tol);
            out.push(Candidate { k, kind: Found::SignChange });
        }
    }
    for i in 1..pts.len().saturating_sub(1) {
        if (pts[i - 1] < removed) != (pts[i + 1] < removed) {
            continue;
        }
        let (x, y, z) = (vals[i - 1], vals[i], vals[i + 1]);
        let same = (x > T::zero()) == (y > T::zero()) && (y > T::zero()) == (z > T::zero());
        if same && y != T::zero() && y.abs() <= x.abs() && y.abs() <= z.abs() {
            diag.tangent_candidates += 1;
            probe_touching(eng, h, pts[i - 1], pts[i + 1], y.signum(), cfg, out, diag, depth);
        }
    }
}

/// Groups candidates into roots and assigns multiplicities.
fn resolve<T: Real>(
    eng: &SecularEngine<'_, T>,
    cands: &mut Vec<Candidate<T>>,
    cfg: &SolverConfig<T>,
    diag: &mut SolverDiagnostics,
) -> Vec<Root<T>> {
    cands.sort_by(|x, y| x.k.partial_cmp(&y.k).unwrap_or(std::cmp::Ordering::Equal));
    let dim_at = |k: T| eng.svd(k).null_dimension(cfg.null_tol);
    let own_dim = |c: &Candidate<T>| match c.kind {
        Found::Tangent(d) => d,
        Found::SignChange => dim_at(c.k).max(1),
    };
    let same_root = cfg.refine_tol * T::lit(1e3);
    let mut roots = Vec::new();
    let mut i = 0;
    while i < cands.len() {
        let mut j = i + 1;
        while j < cands.len() && cands[j].k - cands[j - 1].k < cfg.cluster_gap {
            j += 1;
        }
        let group = &cands[i..j];
        if group.len() == 1 {
            roots.push(Root { k: group[0].k, multiplicity: own_dim(&group[0]) });
        } else {
            let lo = group[0].k;
            let hi = group[group.len() - 1].k;
            let mid = (lo + hi) * T::lit(0.5);
            if hi - lo <= same_root {
                let m = group.iter().map(own_dim).max().unwrap_or(1).max(dim_at(mid));
                roots.push(Root { k: mid, multiplicity: m });
            } else {
                let d_mid = dim_at(mid);
                if d_mid >= 2 {
                    diag.merged_clusters += 1;
                    roots.push(Root { k: mid, multiplicity: d_mid });
                } else {
                    // Distinct nearby roots; collapse duplicates within the group.
                    let mut sub: Vec<Candidate<T>> = Vec::new();
                    for c in group {
                        match sub.last_mut() {
                            Some(last) if c.k - last.k <= same_root => {
                                if let Found::Tangent(_) = c.kind {
                                    *last = *c;
                                }
                            }
                            _ => sub.push(*c),
                        }
                    }
                    for c in &sub {
                        roots.push(Root { k: c.k, multiplicity: own_dim(c) });
                    }
                }
            }
        }
        i = j;
    }
    // Keep only one candidate per root so later passes start clean.
    *cands = roots
        .iter()
        .map(|r| Candidate {
            k: r.k,
            kind: if r.multiplicity == 1 { Found::SignChange } else { Found::Tangent(r.multiplicity) },
        })
        .collect();
    roots
}

/// Windows where the counting function looks deficient.
fn suspicious_windows<T: Real>(
    roots: &[Root<T>],
    lambda0: usize,
    graph: &MetricGraph<T>,
    k_max: T,
    m: usize,
) -> Vec<(T, T)> {
    let slope = graph.total_length() / T::PI();
    let n = roots.len();
    let mut pre = Vec::with_capacity(n);
    let mut count = lambda0;
    for r in roots {
        pre.push(T::from_count(count) - slope * r.k);
        count += r.multiplicity;
    }
    let kat = |i: usize| if i < n { roots[i].k } else { k_max };
    let mut windows = Vec::new();
    let drop = T::lit(1.5);
    for i in 1..n {
        let lo = i.saturating_sub(m);
        let hi = (i + m).min(n);
        if hi - i < m / 2 {
            break;
        }
        let trail = pre[lo..i].iter().copied().fold(T::neg_infinity(), T::max);
        let lead = pre[i..hi].iter().copied().fold(T::neg_infinity(), T::max);
        if lead <= trail - drop {
            let start = if lo == 0 { T::zero() } else { kat(lo - 1) };
            windows.push((start, kat(hi)));
        }
    }
    // Hard Weyl lower bound, including the stretch up to k_max.
    let lower = |k: T| slope * k - T::from_count(graph.edge_count());
    let mut count = lambda0;
    for (i, r) in roots.iter().enumerate() {
        if T::from_count(count) < lower(r.k) - T::lit(1e-9) {
            let start = if i < m { T::zero() } else { kat(i - m) };
            windows.push((start, r.k));
        }
        count += r.multiplicity;
    }
    if T::from_count(count) < lower(k_max) - T::lit(1e-9) {
        let start = if n < m { T::zero() } else { kat(n - m) };
        windows.push((start, k_max));
    }
    windows.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    let mut merged: Vec<(T, T)> = Vec::new();
    for w in windows {
        match merged.last_mut() {
            Some(last) if w.0 <= last.1 => last.1 = last.1.max(w.1),
            _ => merged.push(w),
        }
    }
    merged
}
