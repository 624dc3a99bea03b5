mod common;

use common::*;
use fparadox::centrality::{self, CentralitySpec, Direction, Measure};
use fparadox::conditions;
use fparadox::explore;
use fparadox::generators::{make, Family, FamilySpec};
use fparadox::io::{self, GraphSummary, Provenance, Report, ReportDocument};
use fparadox::paradox;
use fparadox::spectral;
use fparadox::{Graph, NodeVector, Orientation, Value};
use proptest::prelude::*;

/// Simple undirected graph on 2..=max_n nodes from a random edge mask.
fn undirected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_filter_map("needs an edge", |(n, bits)| {
            let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
            let edges: Vec<(usize, usize)> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::unweighted(n, &edges, false).ok()
        })
}

fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    undirected_graph(max_n).prop_filter("connected", |g| g.is_connected())
}

fn directed_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(prop::bool::weighted(0.3), n * (n - 1))))
        .prop_filter_map("needs an arc", |(n, bits)| {
            let arcs = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)));
            let edges: Vec<(usize, usize)> = arcs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::unweighted(n, &edges, true).ok()
        })
}

/// A Hamiltonian cycle plus random chords: always strongly connected.
fn strong_digraph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(prop::bool::weighted(0.25), n * (n - 1))))
        .prop_map(|(n, bits)| {
            let arcs = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)));
            let mut edges: Vec<(usize, usize)> = arcs
                .zip(bits)
                .filter(|((i, j), b)| *b && *j != (i + 1) % n)
                .map(|(e, _)| e)
                .collect();
            edges.extend((0..n).map(|i| (i, (i + 1) % n)));
            Graph::unweighted(n, &edges, true).unwrap()
        })
}

fn attribute(n: usize) -> impl Strategy<Value = NodeVector> {
    proptest::collection::vec(0.0..10.0f64, n).prop_map(|v| NodeVector::new(v, "x").unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gap_equals_covariance_form(
        (g, x) in undirected_graph(10).prop_flat_map(|g| { let n = g.n(); (Just(g), attribute(n)) })
    ) {
        // paradox_report itself errors if the two forms disagree
        let r = paradox::paradox_report(&g, &x, Orientation::Undirected, 1e-9).unwrap();
        prop_assert!((r.gap - r.covariance_form).abs() <= 1e-9 * r.node_average.max(r.neighbour_average).max(1.0));
        prop_assert_eq!(r.gap, r.neighbour_average - r.node_average);
    }

    #[test]
    fn classic_paradox_holds_with_equality_iff_regular(g in undirected_graph(10)) {
        let r = paradox::classic_friendship_paradox(&g).unwrap();
        prop_assert!(r.holds);
        prop_assert_eq!(r.equality, g.is_regular_any());
    }

    #[test]
    fn eigenvector_and_sinh_paradoxes_hold(g in connected_graph(9)) {
        for m in [Measure::Eigenvector, Measure::Odd { beta: 1.0 }] {
            let x = centrality::compute(&g, &CentralitySpec::undirected(m)).unwrap();
            let r = paradox::paradox_report(&g, &x, Orientation::Undirected, 1e-9).unwrap();
            prop_assert!(r.holds, "gap {}", r.gap);
        }
    }

    #[test]
    fn even_order_walk_inequality_holds(g in undirected_graph(8), r in 1usize..5, s in 1usize..5) {
        let s = if (r + s) % 2 == 1 { s + 1 } else { s };
        prop_assert!(conditions::check_lagarias(&g, r, s).unwrap().holds);
    }

    #[test]
    fn odd_suff1a_holds(g in undirected_graph(9), k in prop::sample::select(vec![1usize, 3, 5])) {
        prop_assert!(conditions::check_suff1a(&g, k).unwrap().holds);
    }

    #[test]
    fn suff1_directed_reduces_to_suff1a_on_undirected(g in undirected_graph(9), k in 1usize..6) {
        let a = conditions::check_suff1a(&g, k).unwrap();
        let d = conditions::check_suff1_directed(&g, k).unwrap();
        prop_assert_eq!(a.lhs, d.lhs);
        prop_assert_eq!(a.rhs, d.rhs);
        prop_assert_eq!(a.holds, d.holds);
    }

    #[test]
    fn walk_counts_match_dense_powers(g in undirected_graph(8), k in 0usize..7) {
        let a = dense(&g);
        let mut p = nalgebra::DMatrix::identity(g.n(), g.n());
        for _ in 0..k {
            p = &p * &a;
        }
        prop_assert_eq!(spectral::walk_count(&g, k).unwrap(), Value::int(p.sum() as i128));
    }

    #[test]
    fn directed_degree_universals(g in directed_graph(9)) {
        let r = paradox::directed_degree_report(&g, 0.0).unwrap();
        prop_assert!(r.out_out.holds && r.in_in.holds);
        // the mixed gaps carry the sign of Cov(d_out, d_in)
        let c = r.covariance.to_f64();
        for gap in [r.out_in.gap, r.in_out.gap] {
            prop_assert!(gap * c >= 0.0, "gap {} covariance {}", gap, c);
            prop_assert_eq!(gap == 0.0, c == 0.0);
        }
    }

    #[test]
    fn receive_is_broadcast_on_transpose(g in strong_digraph(8)) {
        let t = g.transpose();
        for m in [Measure::Eigenvector, Measure::Katz { alpha: None }, Measure::Total { beta: 0.7 }] {
            let recv = centrality::compute(&g, &CentralitySpec::new(m.clone(), Direction::Receive)).unwrap();
            let bcast = centrality::compute(&t, &CentralitySpec::new(m, Direction::Broadcast)).unwrap();
            prop_assert_eq!(recv.values, bcast.values);
        }
    }

    #[test]
    fn spectral_condition_agrees_with_eigenvector_gap(g in strong_digraph(8)) {
        // check_spectral_directed raises if the verdict and the gap disagree
        for side in [spectral::Side::Left, spectral::Side::Right] {
            conditions::check_spectral_directed(&g, side).unwrap();
        }
    }

    #[test]
    fn katz_near_zero_matches_first_order(g in connected_graph(9)) {
        prop_assume!(!g.is_regular_any());
        let pred = explore::predicted_katz_slope(&g).unwrap();
        let slope = explore::katz_gap_slope(&g, 1e-4).unwrap();
        prop_assert!((slope / pred - 1.0).abs() < 0.05, "{} vs {}", slope, pred);
    }

    #[test]
    fn katz_is_monotone_in_alpha(g in connected_graph(8), f1 in 0.05..0.9f64, f2 in 0.05..0.9f64) {
        prop_assume!((f1 - f2).abs() > 1e-3);
        let rho = spectral::spectral_radius(&g).unwrap();
        let (lo, hi) = if f1 < f2 { (f1, f2) } else { (f2, f1) };
        let a = spectral::katz_action(&g, lo / rho, false, 1e-12).unwrap();
        let b = spectral::katz_action(&g, hi / rho, false, 1e-12).unwrap();
        prop_assert!(a.values.iter().zip(&b.values).all(|(x, y)| x <= y));
    }

    #[test]
    fn random_families_are_reproducible(seed in any::<u64>(), n in 5usize..30) {
        for f in [
            Family::ErdosRenyi { n, p: 0.3 },
            Family::ErdosRenyiDirected { n, p: 0.2 },
            Family::RandomTree { n },
            Family::BarabasiAlbert { n, m: 2 },
        ] {
            let spec = FamilySpec::seeded(f, seed);
            prop_assert_eq!(make(&spec).unwrap(), make(&spec).unwrap());
        }
    }

    #[test]
    fn k_regular_is_regular(seed in any::<u64>(), n in 6usize..20, k in 2usize..5) {
        prop_assume!(n * k % 2 == 0);
        let g = make(&FamilySpec::seeded(Family::KRegularRandom { n, k }, seed)).unwrap();
        prop_assert_eq!(g.is_regular(Orientation::Undirected).unwrap(), Some(k as f64));
    }

    #[test]
    fn edge_list_round_trip(g in undirected_graph(10)) {
        // isolated trailing nodes cannot be expressed in the format
        prop_assume!(g.row(g.n() - 1).next().is_some());
        prop_assert_eq!(io::parse_edge_list(&io::write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn report_documents_round_trip(g in connected_graph(8), seed in any::<u64>()) {
        let mut doc = ReportDocument::new(Provenance {
            command: vec!["paradox".into()],
            seed: Some(seed),
            tolerances: Default::default(),
            version: "test".into(),
        });
        doc.graph_summary = Some(GraphSummary::of(&g));
        let x = centrality::compute(&g, &CentralitySpec::undirected(Measure::Total { beta: 0.5 })).unwrap();
        doc.reports.push(Report::Paradox(paradox::paradox_report(&g, &x, Orientation::Undirected, 1e-9).unwrap()));
        doc.reports.push(Report::Paradox(paradox::classic_friendship_paradox(&g).unwrap()));
        doc.reports.push(Report::Condition(conditions::check_lagarias(&g, 2, 1).unwrap()));
        doc.reports.push(Report::Centrality { measure: Measure::Eigenvector, label: x.label.clone(), values: x.values.clone() });
        if g.n() >= 3 {
            doc.reports.push(Report::Sweep(explore::katz_alpha_sweep(&g, 4, 1e-9).unwrap()));
        }
        let text = doc.to_json().unwrap();
        prop_assert_eq!(ReportDocument::from_json(&text).unwrap(), doc);
    }
}

#[test]
fn search_and_suite_documents_round_trip() {
    let mut doc = ReportDocument::new(Provenance {
        command: vec!["search".into()],
        seed: Some(3),
        tolerances: [("paradox".to_string(), 1e-9)].into(),
        version: "test".into(),
    });
    let spec = FamilySpec::new(Family::StarClique { m: 13, k: 4 });
    let outcome = explore::search_lagarias_violation(&spec, 2, 1, 1).unwrap();
    let g = outcome.violations[0].graph().unwrap();
    doc.reports.push(Report::Search(outcome));
    doc.reports.push(Report::Search(explore::search_lagarias_exhaustive(4, 1, 2).unwrap()));
    doc.reports.push(Report::Counterexample(explore::build_power_series_counterexample(&g, 1.0).unwrap()));
    let d = FamilySpec::seeded(Family::ErdosRenyiDirected { n: 10, p: 0.3 }, 1);
    doc.reports.push(Report::Suite(explore::random_theorem_suite(&d, 3, 1e-12).unwrap()));
    doc.reports.push(Report::DirectedParadox(
        paradox::directed_degree_report(&fam(Family::HubCycle { n: 10 }), 0.0).unwrap(),
    ));
    doc.reports.push(Report::Quantity {
        name: "w".into(),
        value: conditions::first_order_in_degree_term(&fam(Family::HubCycle { n: 10 })).unwrap(),
    });
    doc.reports.push(Report::Graph { n: 3, directed: true, edges: vec![(0, 1, 1.0), (1, 2, 0.25)] });
    let text = doc.to_json().unwrap();
    assert_eq!(ReportDocument::from_json(&text).unwrap(), doc);
}
