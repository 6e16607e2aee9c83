use num_bigint::BigInt;
use proptest::prelude::*;

use hyperlap::document::{HyperedgeDocument, HypergraphDocument};
use hyperlap::operators::adjointness_check;
use hyperlap::spectra::{rayleigh_hyperedge, rayleigh_vertex, spectrum, zero_multiplicities, Operator};
use hyperlap::structure::enumerate_closed_systems_with;
use hyperlap::verify::{certificate_holds, verify, VerifyOptions};
use hyperlap::{ChemicalHypergraph, Execution, Rational};

// Each vertex is absent, input, output or catalyst in each hyperedge.
fn hypergraph() -> impl Strategy<Value = ChemicalHypergraph> {
    (1usize..7)
        .prop_flat_map(|n| {
            let role = prop::collection::vec(0u8..4, n);
            (Just(n), prop::collection::vec(role, 0..6))
        })
        .prop_map(|(n, roles)| {
            let vertices: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            let hyperedges = roles
                .into_iter()
                .enumerate()
                .filter_map(|(j, r)| {
                    let pick = |want: &[u8]| -> Vec<String> {
                        r.iter().enumerate().filter(|(_, x)| want.contains(x)).map(|(i, _)| vertices[i].clone()).collect()
                    };
                    let (inputs, outputs) = (pick(&[1, 3]), pick(&[2, 3]));
                    (!inputs.is_empty() && !outputs.is_empty())
                        .then(|| HyperedgeDocument { id: format!("r{j}"), inputs, outputs })
                })
                .collect();
            ChemicalHypergraph::validate(&HypergraphDocument { vertices, hyperedges }).unwrap()
        })
}

fn rationals(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-50i64..50, 1i64..20), len)
        .prop_map(|v| v.into_iter().map(|(a, b)| Rational::new(BigInt::from(a), BigInt::from(b))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flip_is_an_involution(g in hypergraph(), pick in 0usize..64) {
        let v = g.vertices()[pick % g.vertex_count()].as_str().to_string();
        let once = g.flip_vertex(&v).unwrap();
        prop_assert_eq!(once.flip_vertex(&v).unwrap(), g);
    }

    #[test]
    fn degrees_sum_to_hyperedge_sizes(g in hypergraph()) {
        let deg: usize = g.degrees().iter().sum();
        let sizes: usize = g.hyperedges().iter().map(|h| h.size()).sum();
        prop_assert_eq!(deg, sizes);
    }

    #[test]
    fn canonical_json_round_trips(g in hypergraph()) {
        let text = g.to_document().to_json();
        let back = ChemicalHypergraph::validate(&HypergraphDocument::from_json(&text).unwrap()).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_document().to_json(), text);
    }

    #[test]
    fn adjointness_is_exact(
        (g, f, gamma) in hypergraph().prop_flat_map(|g| {
            let (n, m) = (g.vertex_count(), g.hyperedge_count());
            (Just(g), rationals(n), rationals(m))
        })
    ) {
        let (a, b) = adjointness_check(&g, &f, &gamma).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn multiplicity_identity(g in hypergraph()) {
        let (m_v, m_h) = zero_multiplicities(&g);
        prop_assert_eq!(m_v as i64 - m_h as i64, g.vertex_count() as i64 - g.hyperedge_count() as i64);
    }

    #[test]
    fn rayleigh_quotients_are_bracketed(
        g in hypergraph(),
        f in prop::collection::vec(-1.0f64..1.0, 7),
        gamma in prop::collection::vec(-1.0f64..1.0, 6),
    ) {
        let v = spectrum(&g, Operator::Vertex).unwrap();
        if let Ok(r) = rayleigh_vertex(&g, &f[..g.vertex_count()]) {
            prop_assert!(r <= v.largest().unwrap() + 1e-9 && r >= v.smallest().unwrap() - 1e-9);
        }
        if g.hyperedge_count() > 0 {
            let h = spectrum(&g, Operator::Hyperedge).unwrap();
            if let Ok(r) = rayleigh_hyperedge(&g, &gamma[..g.hyperedge_count()]) {
                prop_assert!(r <= h.largest().unwrap() + 1e-9 && r >= h.smallest().unwrap() - 1e-9);
            }
        }
    }

    #[test]
    fn bipartition_certificates_hold(g in hypergraph()) {
        prop_assert!(certificate_holds(&g, &g.bipartition()));
    }

    #[test]
    fn enumeration_is_execution_independent(g in hypergraph()) {
        let a = enumerate_closed_systems_with(&g, 20, Execution::Sequential).unwrap();
        let b = enumerate_closed_systems_with(&g, 20, Execution::Parallel).unwrap();
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn invariant_suite_passes(g in hypergraph(), seed in any::<u64>()) {
        let checks = verify(&g, &VerifyOptions { trials: 4, seed, ..VerifyOptions::default() }).unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
        prop_assert!(failed.is_empty(), "{:?}", failed);
    }
}
