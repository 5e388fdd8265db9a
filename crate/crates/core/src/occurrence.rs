//! Occurrence discovery for pattern templates.
//!
//! An *occurrence* of a template `F` on a `k`-set `S` of graph vertices is a
//! subgraph of `G[S]` spanning all of `S` that is isomorphic to `F`; i.e. an
//! edge-preserving injective placement of `F` onto `S`, where placements with
//! the same image edge set count once. Additional edges inside `S` are
//! allowed (occurrences are not induced). [`count_on_set`] evaluates the
//! multiplicity `m(S)` of one set; [`enumerate_occurrences`] finds every set
//! with `m(S) > 0` by walking the connected induced `k`-vertex subgraphs
//! (ESU-style anchored extension), which is sound because template
//! connectivity forces any occurrence-carrying set to induce a connected
//! subgraph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::graph::Graph;
use crate::pattern::Pattern;

/// Default cap on the template order accepted by enumeration.
pub const DEFAULT_ORDER_LIMIT: usize = 8;

/// Hard bound on template order for the counting kernel (pair-index bitmask).
const MAX_SUPPORTED_ORDER: usize = 16;

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error("pattern order {order} exceeds the enumeration limit {limit}")]
    OrderLimitExceeded { order: usize, limit: usize },
}

/// Placement order for template vertices: each vertex after the first is
/// adjacent in the template to at least one earlier vertex, so edge
/// constraints are checked as soon as both endpoints are placed.
struct TemplatePlan {
    k: usize,
    /// Template edges as (position, position) pairs in placement order.
    edge_positions: Vec<(usize, usize)>,
    /// For each position, the earlier positions adjacent in the template.
    earlier_neighbors: Vec<Vec<usize>>,
}

impl TemplatePlan {
    fn new(f: &Pattern) -> TemplatePlan {
        let k = f.order();
        let mut adj = vec![Vec::new(); k];
        for &(u, v) in f.edges() {
            adj[u as usize].push(v as usize);
            adj[v as usize].push(u as usize);
        }
        let mut position = vec![usize::MAX; k];
        let mut order = Vec::with_capacity(k);
        let mut queue = std::collections::VecDeque::from([0usize]);
        position[0] = 0;
        order.push(0);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if position[w] == usize::MAX {
                    position[w] = order.len();
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        debug_assert_eq!(order.len(), k, "template must be connected");

        let mut earlier_neighbors = vec![Vec::new(); k];
        for (p, &v) in order.iter().enumerate() {
            for &w in &adj[v] {
                if position[w] < p {
                    earlier_neighbors[p].push(position[w]);
                }
            }
        }
        let edge_positions = f
            .edges()
            .iter()
            .map(|&(u, v)| (position[u as usize], position[v as usize]))
            .collect();
        TemplatePlan {
            k,
            edge_positions,
            earlier_neighbors,
        }
    }
}

/// Bit index of the unordered local pair `(i, j)`, `i < j`, within a `k`-set.
fn pair_bit(k: usize, i: usize, j: usize) -> u32 {
    debug_assert!(i < j && j < k);
    (i * (2 * k - i - 1) / 2 + (j - i - 1)) as u32
}

/// Enumerates all edge-preserving injective placements of the template onto
/// the set, records each image edge set as a bitmask over local pairs, and
/// returns `(number of distinct image edge sets, union of those masks)`.
fn placements_on_set(g: &Graph, plan: &TemplatePlan, s: &[u32]) -> (u64, u128) {
    let k = plan.k;
    debug_assert_eq!(s.len(), k);
    assert!(
        k <= MAX_SUPPORTED_ORDER,
        "template order {k} beyond the supported bound {MAX_SUPPORTED_ORDER}"
    );

    // Local adjacency among the set members, one bit row per member.
    let mut adj = vec![0u16; k];
    for i in 0..k {
        for j in (i + 1)..k {
            if g.has_edge(s[i], s[j]) {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }

    let mut masks: Vec<u128> = Vec::new();
    let mut assign = vec![0usize; k];
    place(0, plan, &adj, &mut assign, 0, &mut masks);
    masks.sort_unstable();
    masks.dedup();
    let covered = masks.iter().fold(0u128, |acc, m| acc | m);
    (masks.len() as u64, covered)
}

fn place(
    pos: usize,
    plan: &TemplatePlan,
    adj: &[u16],
    assign: &mut [usize],
    used: u16,
    masks: &mut Vec<u128>,
) {
    let k = plan.k;
    if pos == k {
        let mut mask = 0u128;
        for &(pa, pb) in &plan.edge_positions {
            let (a, b) = (assign[pa], assign[pb]);
            mask |= 1u128 << pair_bit(k, a.min(b), a.max(b));
        }
        masks.push(mask);
        return;
    }
    for cand in 0..k {
        if used & (1 << cand) != 0 {
            continue;
        }
        if plan.earlier_neighbors[pos]
            .iter()
            .any(|&p| adj[cand] & (1 << assign[p]) == 0)
        {
            continue;
        }
        assign[pos] = cand;
        place(pos + 1, plan, adj, assign, used | (1 << cand), masks);
    }
}

/// Multiplicity `m(S)`: the number of occurrences of `f` on the vertex set
/// `s` (distinct spanning edge-subsets of `G[S]` isomorphic to `f`).
///
/// `s` must hold `f.order()` distinct vertices of `g`, in any order.
pub fn count_on_set(g: &Graph, f: &Pattern, s: &[u32]) -> u64 {
    let plan = TemplatePlan::new(f);
    debug_assert!(
        {
            let mut sorted = s.to_vec();
            sorted.sort_unstable();
            sorted.windows(2).all(|w| w[0] < w[1])
        },
        "set members must be distinct"
    );
    placements_on_set(g, &plan, s).0
}

/// The number of edge-preserving bijections of the template onto itself —
/// its automorphism count. Every occurrence of the template on a vertex set
/// corresponds to exactly this many labeled placements, so it converts the
/// deduplicated multiplicities `m(S)` back into labeled-copy counts.
pub fn automorphism_count(f: &Pattern) -> u64 {
    let k = f.order();
    let template = Graph::from_edges(k, f.edges().iter().copied());
    let plan = TemplatePlan::new(f);
    let mut adj = vec![0u16; k];
    for i in 0..k {
        for j in (i + 1)..k {
            if template.has_edge(i as u32, j as u32) {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    // An injective edge-preserving self-placement must cover all template
    // edges, so the raw (pre-deduplication) placement count is |Aut|.
    let mut masks = Vec::new();
    let mut assign = vec![0usize; k];
    place(0, &plan, &adj, &mut assign, 0, &mut masks);
    masks.len() as u64
}

/// The sparse support of a subgraph tensor: every `k`-set carrying at least
/// one occurrence, with its multiplicity, plus the union of all image edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceMap {
    k: usize,
    entries: BTreeMap<Vec<u32>, u64>,
    covered: BTreeSet<(u32, u32)>,
}

impl OccurrenceMap {
    /// Template order `k` of the sets in this map.
    pub fn order(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of distinct sets with positive multiplicity.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Sets in ascending lexicographic order with their multiplicities.
    pub fn entries(&self) -> impl Iterator<Item = (&[u32], u64)> + '_ {
        self.entries.iter().map(|(s, &m)| (s.as_slice(), m))
    }

    /// Multiplicity of a vertex set (0 when absent). Order-insensitive.
    pub fn multiplicity(&self, s: &[u32]) -> u64 {
        let mut key = s.to_vec();
        key.sort_unstable();
        self.entries.get(&key).copied().unwrap_or(0)
    }

    /// Union of the image edges of all occurrences, as `(min, max)` pairs.
    pub fn covered_edges(&self) -> &BTreeSet<(u32, u32)> {
        &self.covered
    }

    /// Sum of multiplicities over all sets.
    pub fn total_multiplicity(&self) -> u64 {
        self.entries.values().sum()
    }

    /// For each vertex, the sum of multiplicities of the sets containing it.
    pub fn per_vertex_totals(&self, n: usize) -> Vec<u64> {
        let mut totals = vec![0u64; n];
        for (set, &m) in &self.entries {
            for &v in set {
                totals[v as usize] += m;
            }
        }
        totals
    }
}

/// Enumerates every occurrence-carrying set with the default order limit.
pub fn enumerate_occurrences(g: &Graph, f: &Pattern) -> Result<OccurrenceMap, EnumerationError> {
    enumerate_occurrences_with_limit(g, f, DEFAULT_ORDER_LIMIT)
}

/// Enumerates every occurrence-carrying set, refusing templates with more
/// than `limit` vertices (combinatorial-cost guard).
pub fn enumerate_occurrences_with_limit(
    g: &Graph,
    f: &Pattern,
    limit: usize,
) -> Result<OccurrenceMap, EnumerationError> {
    let k = f.order();
    if k > limit {
        return Err(EnumerationError::OrderLimitExceeded { order: k, limit });
    }
    let plan = TemplatePlan::new(f);
    let mut entries = BTreeMap::new();
    let mut covered = BTreeSet::new();
    let n = g.vertex_count();

    if k <= n {
        let mut marked = vec![false; n];
        let mut sub: Vec<u32> = Vec::with_capacity(k);
        let mut visit = |set: &mut Vec<u32>| {
            set.sort_unstable();
            let (count, mask) = placements_on_set(g, &plan, set);
            if count == 0 {
                return;
            }
            for i in 0..k {
                for j in (i + 1)..k {
                    if mask & (1u128 << pair_bit(k, i, j)) != 0 {
                        covered.insert((set[i], set[j]));
                    }
                }
            }
            entries.insert(std::mem::take(set), count);
        };
        for v in 0..n as u32 {
            // Anchor a search at v; candidate extensions stay above v, so
            // every connected induced k-set is generated exactly once, at
            // its minimum vertex.
            marked[v as usize] = true;
            let mut newly = Vec::new();
            for &u in g.neighbors(v) {
                if !marked[u as usize] {
                    marked[u as usize] = true;
                    newly.push(u);
                }
            }
            let ext: Vec<u32> = g.neighbors(v).iter().copied().filter(|&u| u > v).collect();
            sub.push(v);
            extend(g, v, &mut sub, ext, &mut marked, k, &mut visit);
            sub.pop();
            marked[v as usize] = false;
            for u in newly {
                marked[u as usize] = false;
            }
        }
    }

    Ok(OccurrenceMap {
        k,
        entries,
        covered,
    })
}

/// ESU extension step. `marked` tracks the closed neighborhood of the
/// current subset, so exclusive neighbors are exactly the unmarked ones.
fn extend(
    g: &Graph,
    anchor: u32,
    sub: &mut Vec<u32>,
    mut ext: Vec<u32>,
    marked: &mut [bool],
    k: usize,
    visit: &mut impl FnMut(&mut Vec<u32>),
) {
    if sub.len() == k {
        let mut set = sub.clone();
        visit(&mut set);
        return;
    }
    while let Some(w) = ext.pop() {
        let mut newly = Vec::new();
        for &u in g.neighbors(w) {
            if !marked[u as usize] {
                marked[u as usize] = true;
                newly.push(u);
            }
        }
        let mut ext_next = ext.clone();
        ext_next.extend(newly.iter().copied().filter(|&u| u > anchor));
        sub.push(w);
        extend(g, anchor, sub, ext_next, marked, k, visit);
        sub.pop();
        for u in newly {
            marked[u as usize] = false;
        }
    }
}

/// Whether the spanning subgraph formed by the covered edges connects all of
/// `G`, plus the witnesses: uncovered edges and the component partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FConnectivity {
    pub connected: bool,
    /// Edges of `G` on no occurrence image, as `(min, max)` pairs.
    pub uncovered_edges: Vec<(u32, u32)>,
    /// Vertex partition of the covered spanning subgraph, each class sorted,
    /// classes ordered by minimum vertex.
    pub components: Vec<Vec<u32>>,
}

impl FConnectivity {
    /// Analyzes an occurrence map against its source graph.
    pub fn analyze(g: &Graph, occ: &OccurrenceMap) -> FConnectivity {
        let n = g.vertex_count();
        let mut dsu = DisjointSets::new(n);
        for &(u, v) in occ.covered_edges() {
            dsu.union(u as usize, v as usize);
        }
        let mut by_root: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for v in 0..n {
            by_root.entry(dsu.find(v)).or_default().push(v as u32);
        }
        let mut components: Vec<Vec<u32>> = by_root.into_values().collect();
        components.sort_by_key(|c| c[0]);
        let uncovered_edges = g
            .edges()
            .filter(|e| !occ.covered_edges().contains(e))
            .collect();
        FConnectivity {
            connected: components.len() == 1,
            uncovered_edges,
            components,
        }
    }
}

impl fmt::Display for FConnectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} uncovered edge(s), {} covered component(s)",
            self.uncovered_edges.len(),
            self.components.len()
        )
    }
}

/// Enumerates occurrences of `f` and reports pattern-connectivity of `g`.
pub fn is_f_connected(g: &Graph, f: &Pattern) -> Result<FConnectivity, EnumerationError> {
    let occ = enumerate_occurrences(g, f)?;
    Ok(FConnectivity::analyze(g, &occ))
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> DisjointSets {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
