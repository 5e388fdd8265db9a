//! Randomized invariants, each checked against an independent oracle:
//! brute-force permutation counting for multiplicities, exhaustive subset
//! scans for enumeration, union-find for connectivity, a dense symmetric
//! eigensolver for the order-2 spectral pair, and closed-form structure for
//! everything else.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use sgc_core::*;

// ---------------------------------------------------------------------------
// Generators

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut idx = 0;
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            if bits[idx] {
                edges.push((u, v));
            }
            idx += 1;
        }
    }
    Graph::from_edges(n, edges)
}

prop_compose! {
    fn arb_graph(min_n: usize, max_n: usize)
        (n in min_n..=max_n)
        (bits in proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
         n in Just(n))
        -> Graph
    {
        graph_from_bits(n, &bits)
    }
}

prop_compose! {
    fn arb_connected_graph(min_n: usize, max_n: usize)
        (n in min_n.max(2)..=max_n)
        (parents in proptest::collection::vec(any::<u32>(), n - 1),
         bits in proptest::collection::vec(prop::bool::weighted(0.25), n * (n - 1) / 2),
         n in Just(n))
        -> Graph
    {
        let mut edges = BTreeSet::new();
        for v in 1..n as u32 {
            let p = parents[(v - 1) as usize] % v;
            edges.insert((p, v));
        }
        let mut idx = 0;
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                if bits[idx] {
                    edges.insert((u, v));
                }
                idx += 1;
            }
        }
        Graph::from_edges(n, edges)
    }
}

prop_compose! {
    fn arb_tree(min_n: usize, max_n: usize)
        (n in min_n.max(2)..=max_n)
        (parents in proptest::collection::vec(any::<u32>(), n - 1),
         n in Just(n))
        -> Graph
    {
        let edges = (1..n as u32).map(|v| (parents[(v - 1) as usize] % v, v));
        Graph::from_edges(n, edges)
    }
}

fn small_patterns() -> Vec<Pattern> {
    ["p2", "p3", "k3", "k4", "star-3", "cycle-4"]
        .iter()
        .map(|token| Pattern::builtin(token).unwrap())
        .collect()
}

fn arb_pattern() -> impl Strategy<Value = Pattern> {
    prop::sample::select(small_patterns())
}

fn graph_and_permutation(max_n: usize) -> impl Strategy<Value = (Graph, Vec<u32>)> {
    arb_graph(1, max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        let perm = Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle();
        (Just(g), perm)
    })
}

fn connected_graph_and_permutation(
    min_n: usize,
    max_n: usize,
) -> impl Strategy<Value = (Graph, Vec<u32>)> {
    arb_connected_graph(min_n, max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        let perm = Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle();
        (Just(g), perm)
    })
}

fn connected_graph_with_vector(max_n: usize) -> impl Strategy<Value = (Graph, Vec<f64>)> {
    arb_connected_graph(2, max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        let xs = proptest::collection::vec(0.1..2.0f64, n);
        (Just(g), xs)
    })
}

fn relabel(g: &Graph, perm: &[u32]) -> Graph {
    Graph::from_edges(
        g.vertex_count(),
        g.edges().map(|(u, v)| (perm[u as usize], perm[v as usize])),
    )
}

fn score_vector(scores: Vec<f64>) -> CentralityVector {
    CentralityVector {
        measure: "test".to_string(),
        scores,
        meta: CentralityMeta::default(),
    }
}

// ---------------------------------------------------------------------------
// Oracles

fn oracle_connected(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return false;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for (u, v) in g.edges() {
        let (a, b) = (find(&mut parent, u as usize), find(&mut parent, v as usize));
        if a != b {
            parent[a] = b;
        }
    }
    let root = find(&mut parent, 0);
    (1..n).all(|v| find(&mut parent, v) == root)
}

fn permute_into<F: FnMut(&[usize])>(items: &mut Vec<usize>, start: usize, f: &mut F) {
    if start == items.len() {
        f(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permute_into(items, start + 1, f);
        items.swap(start, i);
    }
}

/// All distinct image edge sets of the template on `set`, by trying every
/// bijection template-vertices -> set-members.
fn oracle_images(g: &Graph, f: &Pattern, set: &[u32]) -> BTreeSet<Vec<(u32, u32)>> {
    let k = f.order();
    assert_eq!(set.len(), k);
    let mut images = BTreeSet::new();
    let mut positions: Vec<usize> = (0..k).collect();
    permute_into(&mut positions, 0, &mut |perm| {
        let embeds = f
            .edges()
            .iter()
            .all(|&(a, b)| g.has_edge(set[perm[a as usize]], set[perm[b as usize]]));
        if embeds {
            let mut image: Vec<(u32, u32)> = f
                .edges()
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (set[perm[a as usize]], set[perm[b as usize]]);
                    (x.min(y), x.max(y))
                })
                .collect();
            image.sort_unstable();
            images.insert(image);
        }
    });
    images
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<u32>> {
    fn rec(start: u32, n: u32, k: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let remaining = (k - current.len()) as u32;
        for v in start..=(n - remaining) {
            current.push(v);
            rec(v + 1, n, k, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 1 && k <= n {
        rec(0, n as u32, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Multiplicity per sorted vertex set, plus the covered edge set.
type OracleOccurrences = (BTreeMap<Vec<u32>, u64>, BTreeSet<(u32, u32)>);

fn oracle_enumerate(g: &Graph, f: &Pattern) -> OracleOccurrences {
    let mut entries = BTreeMap::new();
    let mut covered = BTreeSet::new();
    for set in subsets_of_size(g.vertex_count(), f.order()) {
        let images = oracle_images(g, f, &set);
        if !images.is_empty() {
            for image in &images {
                covered.extend(image.iter().copied());
            }
            entries.insert(set, images.len() as u64);
        }
    }
    (entries, covered)
}

fn oracle_triangle_total(g: &Graph) -> u64 {
    let n = g.vertex_count() as u32;
    let mut count = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            if !g.has_edge(u, v) {
                continue;
            }
            for w in (v + 1)..n {
                if g.has_edge(v, w) && g.has_edge(u, w) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Dominant eigenpair of the adjacency matrix through nalgebra's dense
/// symmetric solver, sign-fixed to the positive orthant.
fn oracle_adjacency_eigenpair(g: &Graph) -> (f64, Vec<f64>) {
    let n = g.vertex_count();
    let mut a = nalgebra::DMatrix::<f64>::zeros(n, n);
    for (u, v) in g.edges() {
        a[(u as usize, v as usize)] = 1.0;
        a[(v as usize, u as usize)] = 1.0;
    }
    let eigen = nalgebra::SymmetricEigen::new(a);
    let mut best = 0;
    for j in 1..n {
        if eigen.eigenvalues[j] > eigen.eigenvalues[best] {
            best = j;
        }
    }
    let mut x: Vec<f64> = (0..n).map(|i| eigen.eigenvectors[(i, best)]).collect();
    let norm = x.iter().map(|c| c * c).sum::<f64>().sqrt();
    let sign = if x.iter().sum::<f64>() < 0.0 {
        -1.0
    } else {
        1.0
    };
    for c in &mut x {
        *c *= sign / norm;
    }
    (eigen.eigenvalues[best], x)
}

// ---------------------------------------------------------------------------
// Structure and counting invariants

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn serialization_round_trips(g in arb_graph(1, 9)) {
        for indexing in [Indexing::ZeroBased, Indexing::OneBased] {
            let back = Graph::parse_edge_list(&g.to_edge_list_string(indexing), indexing).unwrap();
            prop_assert_eq!(&back, &g);
        }
        let back = Graph::parse_pajek(&g.to_pajek_string()).unwrap();
        prop_assert_eq!(&back, &g);
    }

    #[test]
    fn degree_sum_is_twice_the_edge_count(g in arb_graph(1, 12)) {
        let total: usize = (0..g.vertex_count() as u32).map(|v| g.degree(v)).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn connectivity_matches_union_find(g in arb_graph(1, 12)) {
        prop_assert_eq!(g.is_connected(), oracle_connected(&g));
    }

    #[test]
    fn multiplicities_match_brute_force(g in arb_graph(1, 7), f in arb_pattern()) {
        let k = f.order();
        if k <= g.vertex_count() {
            for set in subsets_of_size(g.vertex_count(), k) {
                let expected = oracle_images(&g, &f, &set).len() as u64;
                prop_assert_eq!(count_on_set(&g, &f, &set), expected);
            }
        }
    }

    #[test]
    fn enumeration_matches_the_exhaustive_scan(g in arb_graph(1, 7), f in arb_pattern()) {
        let occ = enumerate_occurrences(&g, &f).unwrap();
        let (entries, covered) = oracle_enumerate(&g, &f);
        prop_assert_eq!(occ.len(), entries.len());
        for (set, m) in occ.entries() {
            prop_assert_eq!(entries.get(set).copied().unwrap_or(0), m);
        }
        prop_assert_eq!(occ.covered_edges(), &covered);
    }

    #[test]
    fn edge_template_recovers_the_edge_set(g in arb_graph(1, 10)) {
        let k2 = Pattern::builtin("k2").unwrap();
        let occ = enumerate_occurrences(&g, &k2).unwrap();
        prop_assert_eq!(occ.len(), g.edge_count());
        for (set, m) in occ.entries() {
            prop_assert_eq!(m, 1);
            prop_assert!(g.has_edge(set[0], set[1]));
        }
    }

    #[test]
    fn path2_multiplicity_is_determined_by_induced_edges(g in arb_graph(3, 8)) {
        let p2 = Pattern::builtin("p2").unwrap();
        for set in subsets_of_size(g.vertex_count(), 3) {
            let induced = [(0, 1), (0, 2), (1, 2)]
                .iter()
                .filter(|&&(a, b)| g.has_edge(set[a], set[b]))
                .count();
            let expected = match induced {
                3 => 3,
                2 => 1,
                _ => 0,
            };
            prop_assert_eq!(count_on_set(&g, &p2, &set), expected);
        }
    }

    #[test]
    fn relabeling_permutes_occurrences((g, perm) in graph_and_permutation(7), f in arb_pattern()) {
        let h = relabel(&g, &perm);
        let original = enumerate_occurrences(&g, &f).unwrap();
        let relabeled = enumerate_occurrences(&h, &f).unwrap();
        prop_assert_eq!(original.len(), relabeled.len());
        for (set, m) in original.entries() {
            let mapped: Vec<u32> = set.iter().map(|&v| perm[v as usize]).collect();
            prop_assert_eq!(relabeled.multiplicity(&mapped), m);
        }
    }

    #[test]
    fn triangle_totals_match_the_dense_count(g in arb_graph(1, 10)) {
        let k3 = Pattern::builtin("k3").unwrap();
        let occ = enumerate_occurrences(&g, &k3).unwrap();
        prop_assert_eq!(occ.total_multiplicity(), oracle_triangle_total(&g));
        // Each triangle set carries exactly one occurrence.
        prop_assert_eq!(occ.len() as u64, occ.total_multiplicity());
    }
}

// ---------------------------------------------------------------------------
// Tensor invariants

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn apply_is_homogeneous_and_monotone((g, xs) in connected_graph_with_vector(8), f in arb_pattern()) {
        let t = SubgraphTensor::build(&g, &f).unwrap();
        let k = t.order() as i32;
        let base = t.apply(&xs);

        let doubled: Vec<f64> = xs.iter().map(|x| 2.0 * x).collect();
        let scaled = t.apply(&doubled);
        let factor = 2.0f64.powi(k - 1);
        for (s, b) in scaled.iter().zip(&base) {
            prop_assert!((s - factor * b).abs() <= 1e-9 * (1.0 + b.abs() * factor));
        }

        let bumped: Vec<f64> = xs.iter().map(|x| x + 0.5).collect();
        for (up, b) in t.apply(&bumped).iter().zip(&base) {
            prop_assert!(*up >= b - 1e-12);
        }
    }

    #[test]
    fn order2_tensor_contracts_like_the_adjacency_matrix((g, xs) in connected_graph_with_vector(10)) {
        let k2 = Pattern::builtin("k2").unwrap();
        let t = SubgraphTensor::build(&g, &k2).unwrap();
        let y = t.apply(&xs);
        for (v, yv) in y.iter().enumerate() {
            let direct: f64 = g.neighbors(v as u32).iter().map(|&w| xs[w as usize]).sum();
            prop_assert!((yv - direct).abs() <= 1e-12 * (1.0 + direct.abs()));
        }
    }

    #[test]
    fn irreducibility_coincides_with_pattern_connectivity(g in arb_graph(2, 10), f in arb_pattern()) {
        let occ = enumerate_occurrences(&g, &f).unwrap();
        let tensor = SubgraphTensor::from_occurrences(g.vertex_count(), occ.clone());
        let report = tensor.is_weakly_irreducible();
        let conn = FConnectivity::analyze(&g, &occ);
        prop_assert_eq!(report.weakly_irreducible, conn.connected);
        prop_assert_eq!(report.components, conn.components);
    }

    #[test]
    fn mixed_tensors_on_connected_graphs_are_weakly_irreducible(
        g in arb_connected_graph(2, 9),
        f in arb_pattern(),
    ) {
        let t = MixedTensor::build(&g, &f).unwrap();
        prop_assert!(t.is_weakly_irreducible().weakly_irreducible);
    }
}

// ---------------------------------------------------------------------------
// Spectral and centrality invariants

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjacency_spectral_pair_matches_the_dense_oracle(g in arb_connected_graph(2, 12)) {
        let r = eigenvector_centrality(&g, &SpectralOptions::default()).unwrap();
        let (rho, x) = oracle_adjacency_eigenpair(&g);
        prop_assert!((r.rho - rho).abs() <= 1e-8, "rho {} vs oracle {}", r.rho, rho);
        for (a, b) in r.x.iter().zip(&x) {
            prop_assert!((a - b).abs() <= 1e-7, "vector mismatch: {} vs {}", a, b);
        }
        prop_assert!(r.lower <= r.rho && r.rho <= r.upper);
        prop_assert!(r.residual_inf <= 1e-8);
    }

    #[test]
    fn scores_are_permutation_equivariant((g, perm) in connected_graph_and_permutation(3, 8)) {
        let p2 = Pattern::builtin("p2").unwrap();
        let opts = SpectralOptions::default();
        let c = f_centrality(&g, &p2, &opts).unwrap();
        let h = relabel(&g, &perm);
        let ch = f_centrality(&h, &p2, &opts).unwrap();
        prop_assert!((c.meta.rho.unwrap() - ch.meta.rho.unwrap()).abs() <= 1e-9);
        for (v, s) in c.scores.iter().enumerate() {
            prop_assert!((ch.scores[perm[v] as usize] - s).abs() <= 1e-6);
        }
    }

    #[test]
    fn existence_splits_exactly_on_pattern_connectivity(g in arb_connected_graph(3, 9)) {
        let k3 = Pattern::builtin("k3").unwrap();
        let conn = is_f_connected(&g, &k3).unwrap();
        match f_centrality(&g, &k3, &SpectralOptions::default()) {
            Ok(c) => {
                prop_assert!(conn.connected);
                prop_assert!(c.scores.iter().all(|s| *s > 0.0));
                prop_assert!(c.meta.residual_inf.unwrap() <= 1e-8);
                let norm: f64 = c.scores.iter().map(|s| s * s).sum();
                prop_assert!((norm - 1.0).abs() <= 1e-10);
            }
            Err(CentralityError::NoOccurrences(_)) => {
                prop_assert_eq!(oracle_triangle_total(&g), 0);
            }
            Err(CentralityError::NotPatternConnected(witness)) => {
                prop_assert!(!conn.connected);
                prop_assert_eq!(witness.components, conn.components);
            }
            Err(other) => prop_assert!(false, "unexpected error: {other}"),
        }
    }

    #[test]
    fn mixed_scores_match_the_adjacency_pair_on_triangle_free_graphs(g in arb_tree(2, 9)) {
        let k3 = Pattern::builtin("k3").unwrap();
        let opts = SpectralOptions::default();
        let mixed = mixed_centrality(&g, &k3, &opts).unwrap();
        let adjacency = eigenvector_centrality(&g, &opts).unwrap();
        prop_assert!((mixed.meta.rho.unwrap() - adjacency.rho).abs() <= 1e-8);
        for (a, b) in mixed.scores.iter().zip(&adjacency.x) {
            prop_assert!((a - b).abs() <= 1e-6);
        }
    }

    #[test]
    fn betweenness_matches_the_all_pairs_oracle(g in arb_graph(2, 10)) {
        let scores = betweenness_centrality(&g).scores;
        let expected = oracle_betweenness(&g);
        for (a, b) in scores.iter().zip(&expected) {
            prop_assert!((a - b).abs() <= 1e-9, "betweenness {} vs oracle {}", a, b);
        }
    }

    #[test]
    fn rankings_partition_with_separated_groups(
        scores in proptest::collection::vec(0.0..10.0f64, 2..32),
    ) {
        let c = score_vector(scores.clone());
        let r = ranking(&c, TIE_TOLERANCE);

        let mut seen: Vec<u32> = r.order.clone();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..scores.len() as u32).collect::<Vec<u32>>());
        let flattened: Vec<u32> = r.tie_groups.iter().flatten().copied().collect();
        prop_assert_eq!(&flattened, &r.order);

        for pair in r.tie_groups.windows(2) {
            let min_prev = pair[0]
                .iter()
                .map(|&v| scores[v as usize])
                .fold(f64::INFINITY, f64::min);
            let max_next = pair[1]
                .iter()
                .map(|&v| scores[v as usize])
                .fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(min_prev > max_next + TIE_TOLERANCE);
        }
        for group in &r.tie_groups {
            let mut vals: Vec<f64> = group.iter().map(|&v| scores[v as usize]).collect();
            vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
            for w in vals.windows(2) {
                prop_assert!(w[0] - w[1] <= TIE_TOLERANCE);
            }
        }
    }

    #[test]
    fn correlations_are_symmetric_and_bounded((xs, ys) in paired_scores()) {
        let a = score_vector(xs);
        let b = score_vector(ys);
        for method in [CorrelationMethod::Pearson, CorrelationMethod::Spearman] {
            match (correlate(&a, &b, method), correlate(&b, &a, method)) {
                (Ok(r1), Ok(r2)) => {
                    prop_assert!((r1 - r2).abs() <= 1e-12);
                    prop_assert!((-1.0..=1.0).contains(&r1));
                }
                (Err(CentralityError::ConstantVector), Err(CentralityError::ConstantVector)) => {}
                (r1, r2) => prop_assert!(false, "asymmetric outcome: {r1:?} vs {r2:?}"),
            }
        }
        match correlate(&a, &a, CorrelationMethod::Pearson) {
            Ok(r) => prop_assert!((r - 1.0).abs() <= 1e-12),
            Err(CentralityError::ConstantVector) => {}
            Err(other) => prop_assert!(false, "unexpected error: {other}"),
        }
    }
}

fn paired_scores() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (2usize..=24).prop_flat_map(|n| {
        (
            proptest::collection::vec(-5.0..5.0f64, n),
            proptest::collection::vec(-5.0..5.0f64, n),
        )
    })
}

fn oracle_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.vertex_count();
    let mut dist = vec![vec![usize::MAX; n]; n];
    let mut sigma = vec![vec![0.0f64; n]; n];
    for s in 0..n {
        dist[s][s] = 0;
        sigma[s][s] = 1.0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v as u32) {
                let w = w as usize;
                if dist[s][w] == usize::MAX {
                    dist[s][w] = dist[s][v] + 1;
                    queue.push_back(w);
                }
                if dist[s][w] == dist[s][v] + 1 {
                    sigma[s][w] += sigma[s][v];
                }
            }
        }
    }
    let mut bc = vec![0.0; n];
    for s in 0..n {
        for t in (s + 1)..n {
            if dist[s][t] == usize::MAX {
                continue;
            }
            for v in 0..n {
                if v == s || v == t || dist[s][v] == usize::MAX || dist[t][v] == usize::MAX {
                    continue;
                }
                if dist[s][v] + dist[t][v] == dist[s][t] {
                    bc[v] += sigma[s][v] * sigma[t][v] / sigma[s][t];
                }
            }
        }
    }
    bc
}

// ---------------------------------------------------------------------------
// Vertex-transitive spot checks

#[test]
fn cycles_score_uniformly_with_a_single_tie_group() {
    for n in 3..=10usize {
        let g = Graph::from_edges(n, (0..n as u32).map(|v| (v, (v + 1) % n as u32)));
        let opts = SpectralOptions::default();

        let ec = eigenvector_centrality(&g, &opts).unwrap();
        assert!((ec.rho - 2.0).abs() < 1e-9, "cycle C{n} adjacency radius");
        let ec_vector = score_vector(ec.x);
        assert_eq!(ranking(&ec_vector, TIE_TOLERANCE).tie_groups.len(), 1);

        let p2 = Pattern::builtin("p2").unwrap();
        let c = f_centrality(&g, &p2, &opts).unwrap();
        assert!(
            (c.meta.rho.unwrap() - 3.0).abs() < 1e-9,
            "cycle C{n} path radius"
        );
        assert_eq!(ranking(&c, TIE_TOLERANCE).tie_groups.len(), 1);
    }
}
