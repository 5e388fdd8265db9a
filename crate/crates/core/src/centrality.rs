//! Centrality measures, rankings, and score correlations.
//!
//! The two tensor measures — pattern-subgraph eigenvector centrality and its
//! mixed edge/pattern variant — gate existence before iterating: the pure
//! pattern measure requires the covered spanning subgraph to connect the
//! graph (equivalently, weak irreducibility of the subgraph tensor), while
//! the mixed variant exists on every connected graph with at least one edge
//! because the walk part alone makes its tensor weakly irreducible. Degree,
//! betweenness (Brandes), and Estrada subgraph centrality are provided for
//! comparison, plus descending rankings with tolerance-chained tie groups
//! and Pearson/Spearman score correlations.

use std::collections::VecDeque;

use nalgebra::{DMatrix, SymmetricEigen};
use thiserror::Error;

use crate::graph::Graph;
use crate::occurrence::{EnumerationError, FConnectivity};
use crate::pattern::Pattern;
use crate::spectral::{zqw_iterate, SpectralError, SpectralOptions, SpectralResult};
use crate::tensor::{MixedTensor, SubgraphTensor, TensorBuildError};

/// Scores within this of their neighbor (descending order) share a tie group.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum CentralityError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph needs at least {needed} vertices, got {got}")]
    TooFewVertices { needed: usize, got: usize },
    #[error("pattern eigenvector centrality does not exist: {0}")]
    NotPatternConnected(FConnectivity),
    #[error("pattern `{0}` has no occurrences in the graph")]
    NoOccurrences(String),
    #[error(transparent)]
    Build(#[from] TensorBuildError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("correlation is undefined for a constant score vector")]
    ConstantVector,
    #[error("correlation requires two equal-length score vectors with at least 2 entries")]
    CorrelationInput,
}

/// A per-vertex score vector with the context it was computed under.
#[derive(Debug, Clone)]
pub struct CentralityVector {
    /// Canonical measure tag: `dc`, `bc`, `sc`, `f:<pattern>`, `k2f:<pattern>`.
    pub measure: String,
    pub scores: Vec<f64>,
    pub meta: CentralityMeta,
}

/// Solver metadata; populated only by the spectral measures.
#[derive(Debug, Clone, Default)]
pub struct CentralityMeta {
    pub pattern: Option<String>,
    pub rho: Option<f64>,
    pub iterations: Option<usize>,
    pub converged: Option<bool>,
    pub residual_inf: Option<f64>,
    /// Per-iteration brackets when tracing was requested.
    pub trace: Vec<(f64, f64)>,
}

fn from_spectral(measure: String, pattern: &Pattern, r: SpectralResult) -> CentralityVector {
    CentralityVector {
        measure,
        scores: r.x,
        meta: CentralityMeta {
            pattern: Some(pattern.name().to_string()),
            rho: Some(r.rho),
            iterations: Some(r.iterations),
            converged: Some(r.converged),
            residual_inf: Some(r.residual_inf),
            trace: r.trace,
        },
    }
}

/// Pattern-subgraph eigenvector centrality: the positive H-eigenvector of
/// the subgraph tensor of `(g, f)`. Exists iff `g` is `f`-connected.
pub fn f_centrality(
    g: &Graph,
    f: &Pattern,
    opts: &SpectralOptions,
) -> Result<CentralityVector, CentralityError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(CentralityError::TooFewVertices { needed: 2, got: n });
    }
    if !g.is_connected() {
        return Err(CentralityError::Disconnected);
    }
    let tensor = SubgraphTensor::build(g, f)?;
    if tensor.is_zero() {
        return Err(CentralityError::NoOccurrences(f.name().to_string()));
    }
    if !tensor.is_weakly_irreducible().weakly_irreducible {
        let witness = FConnectivity::analyze(g, tensor.occurrences());
        return Err(CentralityError::NotPatternConnected(witness));
    }
    let result = zqw_iterate(&tensor, opts)?;
    Ok(from_spectral(format!("f:{}", f.name()), f, result))
}

/// Mixed edge/pattern eigenvector centrality: the positive H-eigenvector of
/// the mixed tensor. Exists on every connected graph with `>= 2` vertices.
pub fn mixed_centrality(
    g: &Graph,
    f: &Pattern,
    opts: &SpectralOptions,
) -> Result<CentralityVector, CentralityError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(CentralityError::TooFewVertices { needed: 2, got: n });
    }
    if !g.is_connected() {
        return Err(CentralityError::Disconnected);
    }
    let tensor = MixedTensor::build(g, f)?;
    debug_assert!(tensor.is_weakly_irreducible().weakly_irreducible);
    let result = zqw_iterate(&tensor, opts)?;
    Ok(from_spectral(format!("k2f:{}", f.name()), f, result))
}

/// Raw vertex degrees.
pub fn degree_centrality(g: &Graph) -> CentralityVector {
    CentralityVector {
        measure: "dc".to_string(),
        scores: (0..g.vertex_count() as u32)
            .map(|v| g.degree(v) as f64)
            .collect(),
        meta: CentralityMeta::default(),
    }
}

/// Shortest-path betweenness (Brandes), unnormalized; each unordered pair
/// contributes once.
pub fn betweenness_centrality(g: &Graph) -> CentralityVector {
    let n = g.vertex_count();
    let mut scores = vec![0.0; n];
    let mut predecessors: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![-1i64; n];
    let mut delta = vec![0.0f64; n];
    let mut order: Vec<u32> = Vec::with_capacity(n);

    for s in 0..n as u32 {
        for list in &mut predecessors {
            list.clear();
        }
        sigma.fill(0.0);
        dist.fill(-1);
        delta.fill(0.0);
        order.clear();

        sigma[s as usize] = 1.0;
        dist[s as usize] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in g.neighbors(v) {
                if dist[w as usize] < 0 {
                    dist[w as usize] = dist[v as usize] + 1;
                    queue.push_back(w);
                }
                if dist[w as usize] == dist[v as usize] + 1 {
                    sigma[w as usize] += sigma[v as usize];
                    predecessors[w as usize].push(v);
                }
            }
        }
        while let Some(w) = order.pop() {
            for &v in &predecessors[w as usize] {
                delta[v as usize] +=
                    sigma[v as usize] / sigma[w as usize] * (1.0 + delta[w as usize]);
            }
            if w != s {
                scores[w as usize] += delta[w as usize];
            }
        }
    }
    // Each unordered pair was accumulated from both endpoints.
    for b in &mut scores {
        *b /= 2.0;
    }
    CentralityVector {
        measure: "bc".to_string(),
        scores,
        meta: CentralityMeta::default(),
    }
}

/// Estrada subgraph centrality: `SC(u) = (e^A)_{uu}` through a dense
/// symmetric eigendecomposition.
pub fn subgraph_centrality(g: &Graph) -> CentralityVector {
    let n = g.vertex_count();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for (u, v) in g.edges() {
        a[(u as usize, v as usize)] = 1.0;
        a[(v as usize, u as usize)] = 1.0;
    }
    let eigen = SymmetricEigen::new(a);
    let weights: Vec<f64> = eigen.eigenvalues.iter().map(|&l| l.exp()).collect();
    let scores = (0..n)
        .map(|u| {
            let mut total = 0.0;
            for (j, w) in weights.iter().enumerate() {
                let q = eigen.eigenvectors[(u, j)];
                total += q * q * w;
            }
            total
        })
        .collect();
    CentralityVector {
        measure: "sc".to_string(),
        scores,
        meta: CentralityMeta::default(),
    }
}

/// Descending ranking with tolerance-chained tie groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ranking {
    /// All vertices, best first; within a tie group ascending by id.
    pub order: Vec<u32>,
    /// Consecutive runs whose neighboring scores differ by at most the
    /// tolerance; singleton groups included.
    pub tie_groups: Vec<Vec<u32>>,
}

/// Ranks vertices by descending score. Adjacent scores within
/// `tie_tolerance` of each other chain into one tie group, and each group is
/// listed ascending by vertex id.
pub fn ranking(c: &CentralityVector, tie_tolerance: f64) -> Ranking {
    debug_assert!(c.scores.iter().all(|s| s.is_finite()));
    let mut by_score: Vec<u32> = (0..c.scores.len() as u32).collect();
    by_score.sort_by(|&a, &b| {
        c.scores[b as usize]
            .partial_cmp(&c.scores[a as usize])
            .expect("scores are finite")
            .then(a.cmp(&b))
    });

    let mut tie_groups: Vec<Vec<u32>> = Vec::new();
    let mut previous_score = f64::INFINITY;
    for &v in &by_score {
        let score = c.scores[v as usize];
        match tie_groups.last_mut() {
            Some(group) if previous_score - score <= tie_tolerance => group.push(v),
            _ => tie_groups.push(vec![v]),
        }
        previous_score = score;
    }
    for group in &mut tie_groups {
        group.sort_unstable();
    }
    let order = tie_groups.iter().flatten().copied().collect();
    Ranking { order, tie_groups }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrelationMethod {
    Pearson,
    Spearman,
}

/// Correlation between two score vectors over the same vertex set.
/// Spearman is Pearson on mid-ranks (ties get their average rank).
pub fn correlate(
    a: &CentralityVector,
    b: &CentralityVector,
    method: CorrelationMethod,
) -> Result<f64, CentralityError> {
    if a.scores.len() != b.scores.len() || a.scores.len() < 2 {
        return Err(CentralityError::CorrelationInput);
    }
    match method {
        CorrelationMethod::Pearson => pearson(&a.scores, &b.scores),
        CorrelationMethod::Spearman => pearson(&midranks(&a.scores), &midranks(&b.scores)),
    }
}

fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64, CentralityError> {
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let (mut cov, mut var_x, mut var_y) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - mean_x;
        let dy = y - mean_y;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    // Treat deviations at roundoff scale as a constant vector.
    let floor_x = 1e-12 * n.sqrt() * (1.0 + mean_x.abs());
    let floor_y = 1e-12 * n.sqrt() * (1.0 + mean_y.abs());
    if var_x.sqrt() <= floor_x || var_y.sqrt() <= floor_y {
        return Err(CentralityError::ConstantVector);
    }
    Ok((cov / (var_x.sqrt() * var_y.sqrt())).clamp(-1.0, 1.0))
}

/// 1-based ranks in ascending score order; exactly equal scores share the
/// average of their rank range.
fn midranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].partial_cmp(&xs[b]).expect("finite scores"));
    let mut ranks = vec![0.0; xs.len()];
    let mut start = 0;
    while start < idx.len() {
        let mut end = start;
        while end + 1 < idx.len() && xs[idx[end + 1]] == xs[idx[start]] {
            end += 1;
        }
        let average = (start + end) as f64 / 2.0 + 1.0;
        for &i in &idx[start..=end] {
            ranks[i] = average;
        }
        start = end + 1;
    }
    ranks
}
