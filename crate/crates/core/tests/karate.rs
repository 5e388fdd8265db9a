//! End-to-end behavior on the bundled karate-club network.

use sgc_core::datasets::karate;
use sgc_core::*;

fn opts() -> SpectralOptions {
    SpectralOptions::default()
}

#[test]
fn path_centrality_exists_and_tracks_the_adjacency_ordering() {
    let g = karate();
    let p2 = Pattern::builtin("p2").unwrap();
    let c = f_centrality(&g, &p2, &opts()).unwrap();
    assert_eq!(c.scores.len(), 34);
    assert!(c.scores.iter().all(|s| *s > 0.0));
    assert!(c.meta.residual_inf.unwrap() <= 1e-8);

    let ec = eigenvector_centrality(&g, &opts()).unwrap();
    let ec_vector = CentralityVector {
        measure: "f:k2".to_string(),
        scores: ec.x,
        meta: CentralityMeta::default(),
    };
    let spearman = correlate(&c, &ec_vector, CorrelationMethod::Spearman).unwrap();
    assert!(
        spearman > 0.9 && spearman <= 1.0,
        "path/adjacency rank agreement should be high, got {spearman}"
    );
    // The orderings are close but not identical.
    let a = ranking(&c, TIE_TOLERANCE);
    let b = ranking(&ec_vector, TIE_TOLERANCE);
    assert_ne!(a.order, b.order);
    assert!(spearman < 1.0);
}

#[test]
fn triangle_centrality_does_not_exist_but_the_mixed_variant_does() {
    let g = karate();
    let k3 = Pattern::builtin("k3").unwrap();
    match f_centrality(&g, &k3, &opts()) {
        Err(CentralityError::NotPatternConnected(witness)) => {
            assert!(!witness.connected);
            // Actor 12 (internal id 11) has degree 1, so its only edge lies
            // on no triangle.
            assert!(witness.components.iter().any(|c| c == &vec![11]));
            assert!(!witness.uncovered_edges.is_empty());
        }
        other => panic!("expected nonexistence, got {other:?}"),
    }

    let mixed = mixed_centrality(&g, &k3, &opts()).unwrap();
    assert_eq!(mixed.scores.len(), 34);
    assert!(mixed.scores.iter().all(|s| *s > 0.0));
    assert!(mixed.meta.converged.unwrap());
    assert!(mixed.meta.residual_inf.unwrap() <= 1e-8);
}

#[test]
fn adjacency_radius_brackets_are_tight() {
    let g = karate();
    let r = eigenvector_centrality(&g, &opts()).unwrap();
    assert!(r.lower <= r.rho && r.rho <= r.upper);
    assert!(r.upper - r.lower <= 1e-9);
    // Known location of the karate adjacency radius.
    assert!(r.rho > 6.7 && r.rho < 6.8, "rho = {}", r.rho);
}

#[test]
fn hubs_lead_the_degree_and_betweenness_orderings() {
    let g = karate();
    let dc = degree_centrality(&g);
    let dc_ranking = ranking(&dc, TIE_TOLERANCE);
    assert_eq!(dc_ranking.order[0], 33); // actor 34, degree 17
    assert_eq!(dc_ranking.order[1], 0); // actor 1, degree 16

    let bc = betweenness_centrality(&g);
    let bc_ranking = ranking(&bc, TIE_TOLERANCE);
    assert_eq!(bc_ranking.order[0], 0); // actor 1 brokers the most paths

    let sc = subgraph_centrality(&g);
    assert!(sc.scores.iter().all(|s| *s >= 1.0));
    let sc_ranking = ranking(&sc, TIE_TOLERANCE);
    assert_eq!(sc_ranking.order[0], 33);
}
