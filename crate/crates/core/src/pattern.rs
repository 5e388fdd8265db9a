//! Connected pattern templates.
//!
//! A [`Pattern`] is a small connected simple graph on vertices `0..k`
//! (`k >= 2`) used as the template `F` of a subgraph tensor. Patterns come
//! from a builtin catalogue (paths, cliques, stars, cycles) or from a tiny
//! text format: the first non-comment line is the order `k`, each following
//! line one zero-based template edge.

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PatternError {
    #[error("unknown builtin pattern `{0}`")]
    UnknownBuiltin(String),
    #[error("malformed parameter in `{token}`: {reason}")]
    MalformedParameter { token: String, reason: String },
    #[error("pattern order must be at least 2, got {0}")]
    OrderTooSmall(usize),
    #[error("pattern template is not connected")]
    Disconnected,
    #[error("line {line}: malformed template line {found:?}")]
    MalformedLine { line: usize, found: String },
    #[error("template edge ({u}, {v}) references a vertex outside 0..{k}")]
    EdgeOutOfRange { u: u32, v: u32, k: usize },
    #[error("template self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("template text declares no order line")]
    MissingOrder,
}

/// A connected template graph on vertices `0..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    k: usize,
    edges: Vec<(u32, u32)>,
    name: String,
}

impl Pattern {
    /// Builds a pattern from explicit template edges, validating order,
    /// ranges, simplicity, and connectivity. Duplicate edges collapse.
    pub fn new<I>(k: usize, edges: I, name: impl Into<String>) -> Result<Pattern, PatternError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        if k < 2 {
            return Err(PatternError::OrderTooSmall(k));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(PatternError::SelfLoop(u));
            }
            if u as usize >= k || v as usize >= k {
                return Err(PatternError::EdgeOutOfRange { u, v, k });
            }
            set.insert((u.min(v), u.max(v)));
        }
        let pattern = Pattern {
            k,
            edges: set.into_iter().collect(),
            name: name.into(),
        };
        if !pattern.is_connected() {
            return Err(PatternError::Disconnected);
        }
        Ok(pattern)
    }

    /// Resolves a builtin token: `p1`/`k2` (one edge), `p2`, `p3` (paths with
    /// 2 and 3 edges), `k3`, `k4` (cliques), `star-r` (`K_{1,r}`, `r >= 2`),
    /// `cycle-r` (`C_r`, `r >= 3`).
    pub fn builtin(token: &str) -> Result<Pattern, PatternError> {
        let tok = token.trim().to_ascii_lowercase();
        let parse_param = |prefix: &str, min: usize| -> Result<usize, PatternError> {
            let raw = &tok[prefix.len()..];
            let r: usize = raw.parse().map_err(|_| PatternError::MalformedParameter {
                token: token.to_string(),
                reason: format!("`{raw}` is not an integer"),
            })?;
            if r < min {
                return Err(PatternError::MalformedParameter {
                    token: token.to_string(),
                    reason: format!("parameter must be at least {min}"),
                });
            }
            Ok(r)
        };
        match tok.as_str() {
            "p1" | "k2" => Pattern::path(1, &tok),
            "p2" => Pattern::path(2, &tok),
            "p3" => Pattern::path(3, &tok),
            "k3" => Pattern::clique(3, &tok),
            "k4" => Pattern::clique(4, &tok),
            _ if tok.starts_with("star-") => {
                let r = parse_param("star-", 2)?;
                let edges = (1..=r as u32).map(|v| (0, v));
                Pattern::new(r + 1, edges, tok.clone())
            }
            _ if tok.starts_with("cycle-") => {
                let r = parse_param("cycle-", 3)?;
                let edges = (0..r as u32).map(|v| (v, (v + 1) % r as u32));
                Pattern::new(r, edges, tok.clone())
            }
            _ => Err(PatternError::UnknownBuiltin(token.to_string())),
        }
    }

    fn path(edge_count: usize, name: &str) -> Result<Pattern, PatternError> {
        let edges = (0..edge_count as u32).map(|v| (v, v + 1));
        Pattern::new(edge_count + 1, edges, name)
    }

    fn clique(k: usize, name: &str) -> Result<Pattern, PatternError> {
        let mut edges = Vec::new();
        for u in 0..k as u32 {
            for v in (u + 1)..k as u32 {
                edges.push((u, v));
            }
        }
        Pattern::new(k, edges, name)
    }

    /// Parses template text: first non-comment line is the order, each later
    /// line one zero-based edge. `#` comments and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Pattern, PatternError> {
        let mut k: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            if k.is_none() {
                match tokens.as_slice() {
                    [order] => {
                        k = Some(order.parse().map_err(|_| PatternError::MalformedLine {
                            line,
                            found: raw.to_string(),
                        })?);
                    }
                    _ => {
                        return Err(PatternError::MalformedLine {
                            line,
                            found: raw.to_string(),
                        })
                    }
                }
                continue;
            }
            match tokens.as_slice() {
                [a, b] => {
                    let parse = |s: &str| s.parse::<u32>().ok();
                    match (parse(a), parse(b)) {
                        (Some(u), Some(v)) => edges.push((u, v)),
                        _ => {
                            return Err(PatternError::MalformedLine {
                                line,
                                found: raw.to_string(),
                            })
                        }
                    }
                }
                _ => {
                    return Err(PatternError::MalformedLine {
                        line,
                        found: raw.to_string(),
                    })
                }
            }
        }
        let k = k.ok_or(PatternError::MissingOrder)?;
        Pattern::new(k, edges, "custom")
    }

    /// Template order `k` (number of template vertices).
    pub fn order(&self) -> usize {
        self.k
    }

    /// Template edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Display name: the builtin token, or `custom` for parsed templates.
    pub fn name(&self) -> &str {
        &self.name
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.k];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut reached = 1usize;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == self.k
    }
}
