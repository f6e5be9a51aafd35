//! The operations behind each CLI command. Every function returns the CSV text it would print.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{MetricGraph, VertexCondition};
use crate::magnetic::{flux_grid, sweep, verify_magnetic_nodal, FluxAssignment};
use crate::nodal::nodal_profile;
use crate::oracles::{self, OracleGraph};
use crate::scalar::Complex;
use crate::secular::{verify_det_s, SecularEngine};
use crate::solver::{check_interlacing, find_spectrum, lowest_k, SolverConfig, Spectrum};

use super::csv::{format_sig, CsvTable};
use super::graph_file::GraphFile;
use super::report::ReportDocument;

/// Options shared by the commands; defaults mirror [`SolverConfig`].
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOptions {
    pub k_max: f64,
    pub grid_step: Option<f64>,
    pub tol: Option<f64>,
    pub flux: Option<Vec<f64>>,
    pub bands: usize,
    pub points: usize,
    pub seed: u64,
}

impl Default for CommandOptions {
    fn default() -> Self {
        Self { k_max: 10.0, grid_step: None, tol: None, flux: None, bands: 4, points: 9, seed: 20_240_601 }
    }
}

impl CommandOptions {
    pub fn solver_config(&self) -> SolverConfig<f64> {
        let mut cfg = SolverConfig { grid_step: self.grid_step, ..SolverConfig::default() };
        if let Some(t) = self.tol {
            cfg.refine_tol = t;
        }
        cfg
    }

    /// `--flux` if given, else the file's fluxes, else zero.
    pub fn flux_for(&self, file: &GraphFile<f64>) -> Result<FluxAssignment<f64>> {
        let beta = file.graph.betti_number();
        match (&self.flux, &file.flux) {
            (Some(v), _) if v.len() != beta => Err(Error::FluxDimensionMismatch { expected: beta, got: v.len() }),
            (Some(v), _) => Ok(FluxAssignment::new(v.clone())),
            (None, Some(f)) => Ok(f.clone()),
            (None, None) => Ok(FluxAssignment::zero(beta)),
        }
    }

    fn echo(&self, report: &mut ReportDocument) {
        report.config("kmax", format_sig(self.k_max));
        report.config("grid-step", self.grid_step.map_or("auto".into(), format_sig));
        report.config("tol", format_sig(self.solver_config().refine_tol));
        report.config("seed", self.seed);
    }
}

fn solve(file: &GraphFile<f64>, opts: &CommandOptions) -> Result<Spectrum<f64>> {
    find_spectrum(&file.graph, &opts.flux_for(file)?, opts.k_max, &opts.solver_config())
}

/// `index,k,lambda,multiplicity`, one row per distinct eigenvalue; `index` is the first position it occupies.
pub fn cmd_spectrum(file: &GraphFile<f64>, opts: &CommandOptions) -> Result<String> {
    let spec = solve(file, opts)?;
    let mut t = CsvTable::new(&["index", "k", "lambda", "multiplicity"]);
    let mut index = 1;
    if spec.lambda0_multiplicity > 0 {
        t.row(&["1".into(), "0".into(), "0".into(), spec.lambda0_multiplicity.to_string()]);
        index += spec.lambda0_multiplicity;
    }
    for r in &spec.roots {
        t.row(&[index.to_string(), format_sig(r.k), format_sig(r.k * r.k), r.multiplicity.to_string()]);
        index += r.multiplicity;
    }
    Ok(t.finish())
}

/// `k,zeta` on the solver grid.
pub fn cmd_zeta(file: &GraphFile<f64>, opts: &CommandOptions) -> Result<String> {
    let flux = opts.flux_for(file)?;
    let eng = SecularEngine::new(&file.graph, &flux)?;
    let step = opts.solver_config().step_for(&file.graph);
    let mut t = CsvTable::new(&["k", "zeta"]);
    let count = (opts.k_max / step).floor() as usize;
    for i in 0..=count {
        let k = step * i as f64;
        t.row(&[format_sig(k), format_sig(eng.zeta(k))]);
    }
    Ok(t.finish())
}

/// `k,gap` with `gap = N(k) - 𝓛k/π` sampled before and at every root.
pub fn cmd_weylgap(file: &GraphFile<f64>, opts: &CommandOptions) -> Result<String> {
    let spec = solve(file, opts)?;
    let mut t = CsvTable::new(&["k", "gap"]);
    for (k, g) in spec.weyl_gap() {
        t.row(&[format_sig(k), format_sig(g)]);
    }
    Ok(t.finish())
}

/// `n,k,phi,surplus,even_on_cycles,status` at zero flux.
pub fn cmd_nodal(file: &GraphFile<f64>, opts: &CommandOptions) -> Result<String> {
    let cfg = opts.solver_config();
    let zero = FluxAssignment::none_for(&file.graph);
    let spec = find_spectrum(&file.graph, &zero, opts.k_max, &cfg)?;
    let mut t = CsvTable::new(&["n", "k", "phi", "surplus", "even_on_cycles", "status"]);
    for r in nodal_profile(&file.graph, &spec, &cfg) {
        let opt = |x: Option<String>| x.unwrap_or_default();
        t.row(&[
            r.n.to_string(),
            format_sig(r.k),
            opt(r.phi.map(|p| p.to_string())),
            opt(r.surplus.map(|s| s.to_string())),
            opt(r.even_on_cycles.map(|e| e.to_string())),
            r.status.label().into(),
        ]);
    }
    Ok(t.finish())
}

/// `flux_1..flux_β,band,lambda` over a grid of `points` values per cycle.
pub fn cmd_sweep(file: &GraphFile<f64>, opts: &CommandOptions) -> Result<String> {
    let beta = file.graph.betti_number();
    let grid = flux_grid::<f64>(beta, opts.points);
    let sheets = sweep(&file.graph, opts.bands, &grid, &opts.solver_config())?;
    let mut header: Vec<String> = (1..=beta).map(|i| format!("flux_{i}")).collect();
    header.push("band".into());
    header.push("lambda".into());
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut t = CsvTable::new(&header);
    for p in 0..grid.len() {
        for sheet in &sheets {
            let (flux, lambda) = &sheet.samples[p];
            let mut row: Vec<String> = flux.values().iter().map(|&a| format_sig(a)).collect();
            row.push(sheet.band_index.to_string());
            row.push(format_sig(*lambda));
            t.row(&row);
        }
    }
    Ok(t.finish())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Interlacing,
    Isospectral,
    MagneticNodal,
    Oracles,
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "interlacing" => Ok(Suite::Interlacing),
            "isospectral" => Ok(Suite::Isospectral),
            "magnetic-nodal" => Ok(Suite::MagneticNodal),
            "oracles" => Ok(Suite::Oracles),
            _ => Err(format!("unknown suite `{s}`; expected interlacing, isospectral, magnetic-nodal or oracles")),
        }
    }
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Interlacing => "interlacing",
            Suite::Isospectral => "isospectral",
            Suite::MagneticNodal => "magnetic-nodal",
            Suite::Oracles => "oracles",
        }
    }
}

/// Runs a named suite. Suites that act on a graph use the dihedral graph `(π, 1, √2)` when none is given.
pub fn cmd_verify(suite: Suite, file: Option<&GraphFile<f64>>, opts: &CommandOptions) -> ReportDocument {
    let mut report = ReportDocument::new(format!("verify {}", suite.name()));
    opts.echo(&mut report);
    match suite {
        Suite::Interlacing => match file {
            Some(f) => interlacing_on_graph(&f.graph, opts, &mut report),
            None => dihedral_chain(std::f64::consts::PI, 1.0, 2f64.sqrt(), opts, &mut report),
        },
        Suite::Isospectral => isospectral_suite(opts, &mut report),
        Suite::MagneticNodal => {
            let default = oracles::dihedral(std::f64::consts::PI, 1.0, 2f64.sqrt()).graph;
            let graph = file.map_or(&default, |f| &f.graph);
            magnetic_nodal_suite(graph, opts, &mut report)
        }
        Suite::Oracles => oracle_suite(opts, &mut report),
    }
    report
}

fn record_interlacing(
    report: &mut ReportDocument,
    name: String,
    lower: Result<Spectrum<f64>>,
    upper: Result<Spectrum<f64>>,
    tol: f64,
    k_max: f64,
) {
    let outcome = lower.and_then(|a| upper.and_then(|b| check_interlacing(&a.k_values(), &b.k_values(), tol, k_max)));
    match outcome {
        Ok(r) => report.flag(
            name,
            true,
            format!("{} inequalities, {} equalities, counts {}/{}", r.checked, r.equalities.len(), r.lower_count, r.upper_count),
        ),
        Err(e) => report.flag(name, false, e.to_string()),
    }
}

fn spectrum_of(graph: &MetricGraph<f64>, k_max: f64, cfg: &SolverConfig<f64>) -> Result<Spectrum<f64>> {
    find_spectrum(graph, &FluxAssignment::none_for(graph), k_max, cfg)
}

fn interlacing_on_graph(graph: &MetricGraph<f64>, opts: &CommandOptions, report: &mut ReportDocument) {
    let cfg = opts.solver_config();
    let tol = 2.0 * cfg.refine_tol;
    report.config("interlacing-tol", format_sig(tol));
    let neumann: Vec<usize> =
        (0..graph.vertex_count()).filter(|&v| graph.condition(v) == VertexCondition::Neumann).collect();
    for &v in &neumann {
        let upper = graph.modify_condition(v, VertexCondition::Dirichlet).and_then(|g| spectrum_of(&g, opts.k_max, &cfg));
        record_interlacing(report, format!("dirichlet at {v}"), spectrum_of(graph, opts.k_max, &cfg), upper, tol, opts.k_max);
    }
    for (i, &v1) in neumann.iter().enumerate() {
        for &v2 in &neumann[i + 1..] {
            let upper = graph.merge_vertices(v1, v2).and_then(|g| spectrum_of(&g, opts.k_max, &cfg));
            record_interlacing(report, format!("merge {v1} {v2}"), spectrum_of(graph, opts.k_max, &cfg), upper, tol, opts.k_max);
        }
    }
}

/// The four graphs of the modification chain that starts from two copies of the dihedral graph.
#[derive(Debug, Clone)]
pub struct DihedralChain {
    /// Two disjoint copies.
    pub doubled: MetricGraph<f64>,
    /// Dirichlet at the left attachment point of the first copy.
    pub one_dirichlet: MetricGraph<f64>,
    /// Dirichlet also at the right attachment point of the second copy.
    pub both_dirichlet: MetricGraph<f64>,
    /// The right side edge of the first copy cut loose.
    pub one_cut: MetricGraph<f64>,
    /// The left side edge of the second copy cut loose as well.
    pub both_cut: MetricGraph<f64>,
}

pub fn dihedral_chain_graphs(a: f64, b: f64, c: f64) -> DihedralChain {
    use VertexCondition::{Dirichlet as D, Neumann as N};
    let single = oracles::dihedral(a, b, c).graph;
    let doubled = single.disjoint_union(&single);
    let one_dirichlet = doubled.modify_condition(1, D).expect("vertex 1 is Neumann");
    let both_dirichlet = one_dirichlet.modify_condition(6, D).expect("vertex 6 is Neumann");
    // Edge 3 is (Q₁, leaf, a) and edge 4 is (leaf, P₂, a) in the doubled graph.
    let cut = |edges: &[usize]| {
        let mut conds = both_dirichlet.conditions();
        let mut triples = both_dirichlet.edge_triples();
        for &e in edges {
            conds.push(N);
            let fresh = conds.len() - 1;
            let (u, v, l) = triples[e];
            triples[e] = if e == 3 { (fresh, v, l) } else { (u, fresh, l) };
        }
        MetricGraph::new(&conds, &triples).expect("valid cut graph")
    };
    DihedralChain { one_cut: cut(&[3]), both_cut: cut(&[3, 4]), doubled, one_dirichlet, both_dirichlet }
}

fn dihedral_chain(a: f64, b: f64, c: f64, opts: &CommandOptions, report: &mut ReportDocument) {
    let cfg = opts.solver_config();
    let tol = 2.0 * cfg.refine_tol;
    let k_max = opts.k_max;
    report.config("graph", format!("two dihedral copies a={} b={} c={}", format_sig(a), format_sig(b), format_sig(c)));
    report.config("interlacing-tol", format_sig(tol));
    let chain = dihedral_chain_graphs(a, b, c);
    let s = |g: &MetricGraph<f64>| spectrum_of(g, k_max, &cfg);
    record_interlacing(report, "dirichlet step 1".into(), s(&chain.doubled), s(&chain.one_dirichlet), tol, k_max);
    record_interlacing(report, "dirichlet step 2".into(), s(&chain.one_dirichlet), s(&chain.both_dirichlet), tol, k_max);
    record_interlacing(report, "gluing step 1".into(), s(&chain.one_cut), s(&chain.both_dirichlet), tol, k_max);
    record_interlacing(report, "gluing step 2".into(), s(&chain.both_cut), s(&chain.one_cut), tol, k_max);

    let (Ok(sigma), Ok(hat), Ok(tilde)) = (s(&chain.doubled), s(&chain.both_dirichlet), s(&chain.both_cut)) else {
        report.flag("chain spectra", false, "solver failed");
        return;
    };
    let (sv, hv, tv) = (sigma.k_values(), hat.k_values(), tilde.k_values());

    // s_{2m-1} = s_{2m} ≤ ŝ_{2m-1} ≤ ŝ_{2m} ≤ s_{2m+1}
    let mut worst: f64 = 0.0;
    for m in 0..hv.len() / 2 {
        if 2 * m + 2 > sv.len() {
            break;
        }
        worst = worst.max((sv[2 * m] - sv[2 * m + 1]).abs());
        worst = worst.max(sv[2 * m + 1] - hv[2 * m]);
        worst = worst.max(hv[2 * m] - hv[2 * m + 1]);
        if let Some(&next) = sv.get(2 * m + 2) {
            worst = worst.max(hv[2 * m + 1] - next);
        }
    }
    report.bound("doubled then dirichlet pattern", worst, tol, format!("{} pairs", hv.len() / 2));

    // s̃_1 = 0 < ŝ_1 ≤ s̃_2 = s̃_3 ≤ ŝ_2 ≤ ŝ_3 ≤ s̃_4 = s̃_5 ≤ ...
    let mut worst: f64 = if tv.first() == Some(&0.0) { 0.0 } else { 1.0 };
    for m in 0.. {
        let (Some(&t2), Some(&t3)) = (tv.get(2 * m + 1), tv.get(2 * m + 2)) else { break };
        worst = worst.max((t2 - t3).abs());
        if let Some(&h) = hv.get(2 * m) {
            worst = worst.max(h - t2);
        }
        if let Some(&h) = hv.get(2 * m + 1) {
            worst = worst.max(t3 - h);
        }
    }
    report.bound("cut then glued pattern", worst, tol, format!("{} eigenvalues", tv.len()));

    // The fully cut graph is a union of intervals: {0} ∪ σ̃ ∪ σ̃ with σ̃ = {πn/(2a)} ∪ {πn/(2(b+c))}.
    let mut expected = vec![0.0];
    let pi = std::f64::consts::PI;
    for len in [2.0 * a, 2.0 * (b + c)] {
        let mut n = 1.0;
        while pi * n / len <= k_max {
            expected.push(pi * n / len);
            expected.push(pi * n / len);
            n += 1.0;
        }
    }
    expected.sort_by(f64::total_cmp);
    // Leave out the last 1e-6 below k_max so a root on the ceiling cannot decide the count.
    let inner = |v: &[f64]| -> Vec<f64> { v.iter().copied().filter(|&k| k < k_max - 1e-6).collect() };
    let (expected, found) = (inner(&expected), inner(&tv));
    let dev = if expected.len() == found.len() {
        expected.iter().zip(&found).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    report.bound("cut graph spectrum", dev, 1e-8, format!("{} expected, {} found", expected.len(), found.len()));

    // λ_n ≤ λ̃_n ≤ λ_{n+1} for the single dihedral graph.
    let single = oracles::dihedral(a, b, c).graph;
    let tilde_single: Vec<f64> = expected.iter().skip(1).step_by(2).copied().collect();
    let outcome = s(&single).and_then(|sp| {
        let ks = sp.k_values();
        let ts: Vec<f64> = tilde_single.iter().copied().take_while(|&t| t <= k_max).collect();
        check_interlacing(&ks, &ts, tol, k_max)
    });
    match outcome {
        Ok(r) => report.flag("dihedral against merged sequence", true, format!("{} inequalities", r.checked)),
        Err(e) => report.flag("dihedral against merged sequence", false, e.to_string()),
    }
}

fn random_triple(rng: &mut ChaCha8Rng) -> (f64, f64, f64) {
    (rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0))
}

/// First 30 roots of the dihedral graph and the dihedral tree for `(π, 1, √2)` and five seeded triples.
pub fn isospectral_suite(opts: &CommandOptions, report: &mut ReportDocument) {
    let cfg = opts.solver_config();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut triples = vec![(std::f64::consts::PI, 1.0, 2f64.sqrt())];
    triples.extend((0..5).map(|_| random_triple(&mut rng)));
    for (a, b, c) in triples {
        let (g, t, _) = oracles::dihedral_pair(a, b, c);
        let name = format!("dihedral pair a={} b={} c={}", format_sig(a), format_sig(b), format_sig(c));
        let roots = |o: &OracleGraph<f64>| lowest_k(&o.graph, &FluxAssignment::none_for(&o.graph), 30, &cfg);
        match (roots(&g), roots(&t)) {
            (Ok(x), Ok(y)) => {
                let dev = x.iter().zip(&y).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
                report.bound(name, dev, 1e-8, "max deviation over the first 30 roots");
            }
            (Err(e), _) | (_, Err(e)) => report.flag(name, false, e.to_string()),
        }
    }
}

fn magnetic_nodal_suite(graph: &MetricGraph<f64>, opts: &CommandOptions, report: &mut ReportDocument) {
    let cfg = opts.solver_config();
    let step = 1e-3;
    report.config("hessian-step", format_sig(step));
    match verify_magnetic_nodal(graph, opts.k_max, step, &cfg) {
        Ok(r) => {
            for row in &r.rows {
                let detail = match (row.morse_index, row.surplus) {
                    (Some(m), Some(s)) => format!("morse {m} surplus {s}"),
                    _ => format!("skipped: {}", row.status),
                };
                report.flag(format!("n={} k={}", row.n, format_sig(row.k)), true, detail);
            }
            report.flag("compared", r.compared > 0, format!("{} eigenvalues compared", r.compared));
        }
        Err(e) => report.flag("morse index equals surplus", false, e.to_string()),
    }
}

/// Largest `|Σ(k) - c·F(k)| / max(1, |Σ(k)|)` over `ks`, with `c` calibrated at `k_ref`.
pub fn closed_form_deviation(
    engine: impl Fn(f64) -> Complex<f64>,
    closed: impl Fn(f64) -> Complex<f64>,
    k_ref: f64,
    ks: &[f64],
) -> (f64, Complex<f64>) {
    let c = engine(k_ref) / closed(k_ref);
    let dev = ks
        .iter()
        .map(|&k| {
            let s = engine(k);
            (s - c * closed(k)).norm() / s.norm().max(1.0)
        })
        .fold(0.0, f64::max);
    (dev, c)
}

/// Closed-form agreement of the secular function on every named example, and `det S` on a random corpus.
pub fn oracle_suite(opts: &CommandOptions, report: &mut ReportDocument) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let ks: Vec<f64> = (0..200).map(|_| rng.gen_range(0.0..20.0)).collect();
    let k_ref = 0.7371;
    let tol = 1e-10;
    let mut examples: Vec<(String, OracleGraph<f64>)> = Vec::new();
    let (l1, l2, l3) = (1.0, 2f64.sqrt(), 3f64.sqrt());
    examples.push(("lasso".into(), oracles::lasso(l1, l2)));
    examples.push(("mandarin".into(), oracles::mandarin(&[l1, l2, l3])));
    examples.push(("neumann star".into(), oracles::star(&[l1, l2, l3], VertexCondition::Neumann)));
    examples.push(("dirichlet star".into(), oracles::star(&[l1, l2, l3], VertexCondition::Dirichlet)));
    examples.push(("dihedral".into(), oracles::dihedral(std::f64::consts::PI, 1.0, 2f64.sqrt())));
    examples.push(("dihedral tree".into(), oracles::dihedral_tree(std::f64::consts::PI, 1.0, 2f64.sqrt())));
    examples.push(("tetrahedron".into(), oracles::tetrahedron(1.0, 0.6180339887)));
    for (name, o) in &examples {
        let eng = SecularEngine::new(&o.graph, &FluxAssignment::none_for(&o.graph)).expect("zero flux fits");
        let (dev, c) = closed_form_deviation(|k| eng.sigma(k), |k| o.closed_form(k).expect("closed form"), k_ref, &ks);
        report.bound(format!("{name} closed form"), dev, tol, format!("constant {}", format_sig(c.re)));
    }
    for alpha in [0.4, 1.3, 2.9] {
        let o = oracles::dihedral(std::f64::consts::PI, 1.0, 2f64.sqrt());
        let eng = SecularEngine::new(&o.graph, &FluxAssignment::new(vec![alpha])).expect("one cycle");
        let (dev, c) = closed_form_deviation(
            |k| eng.sigma(k),
            |k| oracles::dihedral_secular(std::f64::consts::PI, 1.0, 2f64.sqrt(), k, alpha),
            k_ref,
            &ks,
        );
        report.bound(format!("dihedral closed form flux {alpha}"), dev, tol, format!("constant {}", format_sig(c.re)));
    }
    for (i, g) in oracles::random_corpus::<f64>(opts.seed, 25).iter().enumerate() {
        match verify_det_s(&g.graph) {
            Ok(r) => report.flag(format!("det S corpus graph {i}"), true, format!("det S = {}", r.exact)),
            Err(e) => report.flag(format!("det S corpus graph {i}"), false, e.to_string()),
        }
    }
}
