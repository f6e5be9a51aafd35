use proptest::prelude::*;
use proptest::test_runner::RngSeed;

use qgraph::io::{parse_graph_file, serialize_graph};
use qgraph::magnetic::verify_flux_symmetry;
use qgraph::nodal::students_count;
use qgraph::secular::{scattering_matrix, SecularEngine};
use qgraph::solver::lowest_k;
use qgraph::{FluxAssignment, MetricGraph, SolverConfig, VertexCondition};

/// Fixed seed so that every run checks the same cases.
fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, rng_seed: RngSeed::Fixed(20_240_601), ..ProptestConfig::default() }
}

/// Raw input of a connected graph: a random tree plus extra edges (loops and multi-edges allowed).
fn graph_input() -> impl Strategy<Value = (Vec<VertexCondition>, Vec<(usize, usize, f64)>)> {
    (2usize..6).prop_flat_map(|nv| {
        let tree = proptest::collection::vec((any::<prop::sample::Index>(), 0.4f64..2.0), nv - 1);
        let extra = proptest::collection::vec((0..nv, 0..nv, 0.4f64..2.0), 0..4);
        let conds = proptest::collection::vec(prop::bool::weighted(0.25), nv);
        (tree, extra, conds).prop_map(move |(tree, extra, conds)| {
            let mut edges: Vec<(usize, usize, f64)> =
                tree.into_iter().enumerate().map(|(i, (p, l))| (p.index(i + 1), i + 1, l)).collect();
            edges.extend(extra);
            let conds = conds
                .into_iter()
                .map(|d| if d { VertexCondition::Dirichlet } else { VertexCondition::Neumann })
                .collect();
            (conds, edges)
        })
    })
}

fn graph() -> impl Strategy<Value = MetricGraph<f64>> {
    graph_input().prop_map(|(c, e)| MetricGraph::new(&c, &e).expect("valid input"))
}

/// `{j/α} ∪ {j/β}` merged: how many of the first `n - 1` come from the first set.
fn students_brute(alpha: f64, beta: f64, n: usize) -> Option<u64> {
    let mut merged: Vec<(f64, bool)> = (1..=n).flat_map(|j| [(j as f64 / alpha, true), (j as f64 / beta, false)]).collect();
    merged.sort_by(|a, b| a.0.total_cmp(&b.0));
    if n >= 2 && (merged[n - 1].0 - merged[n - 2].0).abs() <= 1e-12 * merged[n - 1].0 {
        return None;
    }
    Some(merged[..n - 1].iter().filter(|e| e.1).count() as u64)
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn reversal_is_an_involution(g in graph()) {
        for b in g.bonds() {
            let r = g.bonds()[b.reversal];
            prop_assert_eq!(r.reversal, b.id);
            prop_assert_eq!(r.edge, b.edge);
            prop_assert_eq!((r.origin, r.terminus), (b.terminus, b.origin));
            prop_assert_eq!(g.bond_length(b.id), g.bond_length(r.id));
        }
    }

    #[test]
    fn degrees_sum_to_bond_count(g in graph()) {
        let total: usize = (0..g.vertex_count()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
        for v in 0..g.vertex_count() {
            prop_assert_eq!(g.outgoing(v).len(), g.degree(v));
            if g.condition(v) == VertexCondition::Dirichlet {
                prop_assert_eq!(g.degree(v), 1);
            }
        }
    }

    #[test]
    fn suppression_is_idempotent_and_isospectral(g in graph()) {
        let s = g.suppress_degree2_neumann();
        prop_assert_eq!(s.suppress_degree2_neumann(), s.clone());
        prop_assert!((s.total_length() - g.total_length()).abs() < 1e-12);
        let cfg = SolverConfig::default();
        let a = lowest_k(&g, &FluxAssignment::none_for(&g), 8, &cfg).unwrap();
        let b = lowest_k(&s, &FluxAssignment::none_for(&s), 8, &cfg).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-9, "{:?} vs {:?}", a, b);
        }
    }

    #[test]
    fn scattering_matrix_is_orthogonal(g in graph()) {
        let m = scattering_matrix(&g);
        let n = m.dim;
        for r in 0..n {
            for c in 0..n {
                let v: f64 = (0..n).map(|j| m.get(j, r) * m.get(j, c)).sum();
                let id = if r == c { 1.0 } else { 0.0 };
                prop_assert!((v - id).abs() < 1e-12, "entry ({}, {}) = {}", r, c, v);
            }
        }
    }

    #[test]
    fn secular_function_is_real(g in graph(), k in 0.01f64..30.0) {
        let v = SecularEngine::new(&g, &FluxAssignment::none_for(&g)).unwrap().evaluate(k);
        prop_assert!(v.residual_imag.abs() < 1e-9 * v.zeta.abs().max(1.0));
    }

    #[test]
    fn gauge_invariance(g in graph(), seed in proptest::collection::vec(-3.0f64..3.0, 12), k in 0.05f64..15.0) {
        let phases: Vec<f64> = seed.iter().cycle().take(g.edge_count()).copied().collect();
        let spread = SecularEngine::with_edge_phases(&g, &phases).unwrap();
        let basis = g.fundamental_cycles();
        let flux = FluxAssignment::from_edge_phases(&g, &basis, &phases).unwrap();
        let chords = SecularEngine::new(&g, &flux).unwrap();
        let (a, b) = (spread.sigma(k), chords.sigma(k));
        prop_assert!((a - b).norm() < 1e-10 * a.norm().max(1.0), "{} vs {}", a, b);
    }

    #[test]
    fn serialization_round_trips(g in graph(), flux in proptest::collection::vec(-3.0f64..3.0, 8)) {
        let beta = g.betti_number();
        let flux = (beta > 0).then(|| FluxAssignment::new(flux.into_iter().cycle().take(beta).collect()));
        let text = serialize_graph(&g, flux.as_ref());
        let back = parse_graph_file::<f64>(&text).unwrap();
        prop_assert_eq!(&back.graph, &g);
        prop_assert_eq!(back.flux, flux);
    }

    #[test]
    fn students_count_matches_merge(alpha in 0.05f64..20.0, beta in 0.05f64..20.0, n in 1usize..400) {
        match (students_count(alpha, beta, n), students_brute(alpha, beta, n)) {
            (Ok(a), Some(b)) => prop_assert_eq!(a, b),
            (Err(_), None) => {}
            (a, b) => prop_assert!(false, "formula {:?}, brute force {:?}", a, b),
        }
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn bands_are_even_in_flux(g in graph(), alpha in proptest::collection::vec(-3.0f64..3.0, 8)) {
        let beta = g.betti_number();
        prop_assume!(beta > 0);
        let flux = FluxAssignment::new(alpha.into_iter().take(beta).collect::<Vec<_>>());
        prop_assume!(flux.beta() == beta);
        verify_flux_symmetry(&g, 4, &[flux], &SolverConfig::default()).unwrap();
    }
}
