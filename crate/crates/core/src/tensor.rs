//! Sparse symmetric subgraph tensors and weak irreducibility.
//!
//! The order-`k` subgraph tensor of a graph `G` and template `F` has entry
//! `m(S)` at every index tuple naming the `k`-set `S`; all other entries are
//! zero. It is stored sparsely as its [`OccurrenceMap`]. The mixed family
//! adds to this the walk entries of the adjacency matrix lifted to order
//! `k`: for each ordered adjacent pair `(i, j)` the entry at
//! `(i, j, i, ..., i)` is 1. Both expose contraction against a vector
//! through the [`Tensor`] trait:
//!
//! `apply(x)_i = Σ entries with first index i · Π x over the remaining
//! indices`,
//!
//! which for the set part reduces to `Σ_{S ∋ i} m(S) · Π_{j ∈ S\{i}} x_j`
//! and for the walk part to `Σ_{j ∈ N(i)} x_j · x_i^{k-2}`.
//!
//! Weak irreducibility is decided on the associated digraph: an arc `i → j`
//! for every nonzero entry whose first index is `i` and that names `j` among
//! its remaining indices (self-arcs dropped); the tensor is weakly
//! irreducible iff that digraph is strongly connected. By convention a
//! 1-dimensional zero tensor is *not* weakly irreducible, matching the
//! matrix case where irreducibility of `[0]` fails.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Graph;
use crate::occurrence::{
    automorphism_count, enumerate_occurrences, enumerate_occurrences_with_limit, EnumerationError,
    OccurrenceMap,
};
use crate::pattern::Pattern;

#[derive(Debug, Error)]
pub enum TensorBuildError {
    #[error("mixed tensor requires a pattern of order at least 3, got {0}")]
    MixedOrderTooSmall(usize),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
}

/// A cubical tensor that can be contracted against a positive vector on all
/// but its first mode.
pub trait Tensor {
    /// Number of indices per entry.
    fn order(&self) -> usize;
    /// Length of each mode (the vertex count).
    fn dim(&self) -> usize;
    /// `y_i = Σ entries (i, i2, …, ik) · x_{i2} ⋯ x_{ik}`.
    fn apply(&self, x: &[f64]) -> Vec<f64>;
}

/// Verdict of the weak-irreducibility check, with the strongly connected
/// components of the associated digraph as the witness partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibilityReport {
    pub weakly_irreducible: bool,
    /// Each component sorted ascending; components ordered by minimum vertex.
    pub components: Vec<Vec<u32>>,
}

fn irreducibility_from(dim: usize, digraph: &Digraph) -> IrreducibilityReport {
    let components = digraph.strongly_connected_components();
    // dim == 1 means the only candidate entry sits on the diagonal, which
    // subgraph tensors never populate: reducible by the matrix convention.
    let weakly_irreducible = dim >= 2 && components.len() == 1;
    IrreducibilityReport {
        weakly_irreducible,
        components,
    }
}

/// The order-`k` subgraph tensor of a graph/template pair, stored as its
/// occurrence support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphTensor {
    dim: usize,
    occ: OccurrenceMap,
}

impl SubgraphTensor {
    pub fn build(g: &Graph, f: &Pattern) -> Result<SubgraphTensor, EnumerationError> {
        Ok(SubgraphTensor {
            dim: g.vertex_count(),
            occ: enumerate_occurrences(g, f)?,
        })
    }

    pub fn build_with_limit(
        g: &Graph,
        f: &Pattern,
        limit: usize,
    ) -> Result<SubgraphTensor, EnumerationError> {
        Ok(SubgraphTensor {
            dim: g.vertex_count(),
            occ: enumerate_occurrences_with_limit(g, f, limit)?,
        })
    }

    /// Wraps a precomputed occurrence map as a tensor of dimension `dim`.
    pub fn from_occurrences(dim: usize, occ: OccurrenceMap) -> SubgraphTensor {
        debug_assert!(occ
            .entries()
            .all(|(s, _)| s.iter().all(|&v| (v as usize) < dim)));
        SubgraphTensor { dim, occ }
    }

    pub fn occurrences(&self) -> &OccurrenceMap {
        &self.occ
    }

    pub fn is_zero(&self) -> bool {
        self.occ.is_empty()
    }

    pub fn associated_digraph(&self) -> Digraph {
        let mut arcs = BTreeSet::new();
        for (set, _) in self.occ.entries() {
            for &i in set {
                for &j in set {
                    if i != j {
                        arcs.insert((i, j));
                    }
                }
            }
        }
        Digraph::from_arcs(self.dim, arcs)
    }

    pub fn is_weakly_irreducible(&self) -> IrreducibilityReport {
        irreducibility_from(self.dim, &self.associated_digraph())
    }

    /// Text rendering, one `v1 v2 … vk multiplicity` line per stored set.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (set, m) in self.occ.entries() {
            for &v in set {
                let _ = write!(out, "{v} ");
            }
            let _ = writeln!(out, " {m}");
        }
        out
    }
}

impl Tensor for SubgraphTensor {
    fn order(&self) -> usize {
        self.occ.order()
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim, "vector length must match dimension");
        let mut y = vec![0.0; self.dim];
        for (set, m) in self.occ.entries() {
            let m = m as f64;
            for (slot, &i) in set.iter().enumerate() {
                let mut term = m;
                for (other, &j) in set.iter().enumerate() {
                    if other != slot {
                        term *= x[j as usize];
                    }
                }
                y[i as usize] += term;
            }
        }
        y
    }
}

/// The mixed-family tensor: the order-`k` walk lift of the adjacency matrix
/// plus the pattern part. Defined for `k >= 3`; on a connected graph its
/// associated digraph inherits all adjacency arcs, so it is always weakly
/// irreducible there, even when the set part is empty.
///
/// Entry semantics differ from [`SubgraphTensor`]: the pattern part counts
/// labeled copies — each of the `m(S)·|Aut(F)|` edge-preserving placements
/// onto a stored set `S`, repeated for every ordering of the remaining
/// `k-1` indices — so under contraction a set feeds each of its members
/// `(k-1)! · |Aut(F)| · m(S) · prod x_j`. The walk tuples `(i, j, i, …, i)`
/// fix all trailing slots and contribute exactly once per ordered neighbor
/// pair. This relative weighting of the two parts is the one under which
/// the reference rankings reproduce; [`SubgraphTensor::apply`] instead sums
/// once per deduplicated set, which only rescales that tensor's spectral
/// radius, never its eigenvector.
#[derive(Debug)]
pub struct MixedTensor<'g> {
    graph: &'g Graph,
    order: usize,
    occ: OccurrenceMap,
    set_scale: f64,
}

impl<'g> MixedTensor<'g> {
    pub fn build(g: &'g Graph, f: &Pattern) -> Result<MixedTensor<'g>, TensorBuildError> {
        MixedTensor::build_with_limit(g, f, crate::occurrence::DEFAULT_ORDER_LIMIT)
    }

    pub fn build_with_limit(
        g: &'g Graph,
        f: &Pattern,
        limit: usize,
    ) -> Result<MixedTensor<'g>, TensorBuildError> {
        let k = f.order();
        if k < 3 {
            return Err(TensorBuildError::MixedOrderTooSmall(k));
        }
        Ok(MixedTensor {
            graph: g,
            order: k,
            occ: enumerate_occurrences_with_limit(g, f, limit)?,
            set_scale: factorial(k - 1) * automorphism_count(f) as f64,
        })
    }

    pub fn occurrences(&self) -> &OccurrenceMap {
        &self.occ
    }

    pub fn associated_digraph(&self) -> Digraph {
        let mut arcs = BTreeSet::new();
        for (u, v) in self.graph.edges() {
            arcs.insert((u, v));
            arcs.insert((v, u));
        }
        for (set, _) in self.occ.entries() {
            for &i in set {
                for &j in set {
                    if i != j {
                        arcs.insert((i, j));
                    }
                }
            }
        }
        Digraph::from_arcs(self.graph.vertex_count(), arcs)
    }

    pub fn is_weakly_irreducible(&self) -> IrreducibilityReport {
        irreducibility_from(self.dim(), &self.associated_digraph())
    }

    /// Text rendering: walk entries as explicit `i j i … i 1` tuples, then
    /// set entries as in [`SubgraphTensor::dump`], lexicographically sorted.
    /// A set line records the per-set multiplicity once; it abbreviates the
    /// `(k-1)!` equal entries per leading index that `apply` contracts over.
    pub fn dump(&self) -> String {
        let mut lines: Vec<Vec<u64>> = Vec::new();
        for (u, v) in self.graph.edges() {
            for (i, j) in [(u, v), (v, u)] {
                let mut tuple = vec![i as u64, j as u64];
                tuple.resize(self.order, i as u64);
                tuple.push(1);
                lines.push(tuple);
            }
        }
        for (set, m) in self.occ.entries() {
            let mut tuple: Vec<u64> = set.iter().map(|&v| v as u64).collect();
            tuple.push(m);
            lines.push(tuple);
        }
        lines.sort();
        let mut out = String::new();
        for tuple in lines {
            let (value, indices) = tuple.split_last().expect("tuple holds indices and value");
            for v in indices {
                let _ = write!(out, "{v} ");
            }
            let _ = writeln!(out, " {value}");
        }
        out
    }
}

impl Tensor for MixedTensor<'_> {
    fn order(&self) -> usize {
        self.order
    }

    fn dim(&self) -> usize {
        self.graph.vertex_count()
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(x.len(), n, "vector length must match dimension");
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut walk = 0.0;
            for &j in self.graph.neighbors(i as u32) {
                walk += x[j as usize];
            }
            y[i] = walk * x[i].powi(self.order as i32 - 2);
        }
        for (set, m) in self.occ.entries() {
            let m = m as f64 * self.set_scale;
            for (slot, &i) in set.iter().enumerate() {
                let mut term = m;
                for (other, &j) in set.iter().enumerate() {
                    if other != slot {
                        term *= x[j as usize];
                    }
                }
                y[i as usize] += term;
            }
        }
        y
    }
}

fn factorial(m: usize) -> f64 {
    (1..=m as u64).product::<u64>() as f64
}

/// A directed graph on `0..n`, used for associated-digraph analysis.
#[derive(Debug, Clone)]
pub struct Digraph {
    n: usize,
    adj: Vec<Vec<u32>>,
}

impl Digraph {
    pub fn from_arcs<I>(n: usize, arcs: I) -> Digraph
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (from, to) in arcs {
            assert!((from as usize) < n && (to as usize) < n);
            adj[from as usize].push(to);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Digraph { n, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn out_neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.n >= 1 && self.strongly_connected_components().len() == 1
    }

    /// Tarjan's algorithm with an explicit stack; components are returned
    /// sorted internally and ordered by their minimum vertex.
    pub fn strongly_connected_components(&self) -> Vec<Vec<u32>> {
        const UNVISITED: usize = usize::MAX;
        let n = self.n;
        let mut index = vec![UNVISITED; n];
        let mut lowlink = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack: Vec<u32> = Vec::new();
        let mut next_index = 0usize;
        let mut components: Vec<Vec<u32>> = Vec::new();
        let mut frames: Vec<(u32, usize)> = Vec::new();

        for root in 0..n as u32 {
            if index[root as usize] != UNVISITED {
                continue;
            }
            index[root as usize] = next_index;
            lowlink[root as usize] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root as usize] = true;
            frames.push((root, 0));

            while let Some(&(v, child)) = frames.last() {
                let vu = v as usize;
                if child < self.adj[vu].len() {
                    frames.last_mut().expect("frame exists").1 += 1;
                    let w = self.adj[vu][child];
                    let wu = w as usize;
                    if index[wu] == UNVISITED {
                        index[wu] = next_index;
                        lowlink[wu] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[wu] = true;
                        frames.push((w, 0));
                    } else if on_stack[wu] {
                        lowlink[vu] = lowlink[vu].min(index[wu]);
                    }
                } else {
                    frames.pop();
                    if let Some(&(parent, _)) = frames.last() {
                        let pu = parent as usize;
                        lowlink[pu] = lowlink[pu].min(lowlink[vu]);
                    }
                    if lowlink[vu] == index[vu] {
                        let mut component = Vec::new();
                        loop {
                            let w = stack.pop().expect("component member on stack");
                            on_stack[w as usize] = false;
                            component.push(w);
                            if w == v {
                                break;
                            }
                        }
                        component.sort_unstable();
                        components.push(component);
                    }
                }
            }
        }
        components.sort_by_key(|c| c[0]);
        components
    }
}
