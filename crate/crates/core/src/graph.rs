//! Undirected simple graphs with text ingestion and serialization.
//!
//! A [`Graph`] stores a finite, unweighted, undirected simple graph on
//! vertices `0..n`. Parallel edges are collapsed on ingestion and self-loops
//! are rejected, so every stored edge is a two-element set. Vertices keep an
//! external string label (by default their id in the indexing convention of
//! the source file) purely for reporting; labels take no part in structural
//! equality.
//!
//! Two text formats are supported:
//!
//! * **edge list** — one `u v` pair per line, `#` comments, with an optional
//!   `# n=N` header that fixes the vertex count (otherwise the count is
//!   `max id + 1` after normalizing to zero-based ids);
//! * **Pajek** (a tolerant subset) — `*Vertices N`, optional labelled vertex
//!   lines, `*Edges` / `*Arcs` sections with one-based endpoints, `%`
//!   comments. Arcs are symmetrized, since the model is undirected.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

/// Vertex-id convention used by an edge-list file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Indexing {
    ZeroBased,
    OneBased,
}

/// Errors raised while ingesting a graph from text.
#[derive(Debug, Error)]
pub enum GraphParseError {
    #[error("line {line}: expected two integer endpoints, found {found:?}")]
    MalformedLine { line: usize, found: String },
    #[error("line {line}: self-loop at vertex {label}")]
    SelfLoop { line: usize, label: String },
    #[error("line {line}: vertex id 0 in a one-based edge list")]
    ZeroIdInOneBased { line: usize },
    #[error("line {line}: vertex id {id} outside the declared range 1..={n}")]
    IdOutOfRange { line: usize, id: u64, n: usize },
    #[error("input declares no vertices (no edges and no vertex-count header)")]
    EmptyInput,
    #[error("missing `*Vertices N` section before vertex or edge data")]
    MissingVertexHeader,
}

/// An undirected simple graph on vertices `0..n`.
///
/// Equality and ordering-sensitive iteration are defined by the vertex count
/// and the edge set alone; labels are reporting metadata.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(u32, u32)>,
    adjacency: Vec<Vec<u32>>,
    labels: Vec<String>,
    duplicates_collapsed: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from explicit edges on vertices `0..n`.
    ///
    /// Intended for programmatic construction; panics on self-loops or
    /// out-of-range endpoints rather than reporting a parse-style error.
    /// Duplicate edges (in either orientation) are collapsed.
    pub fn from_edges<I>(n: usize, edges: I) -> Graph
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut set = BTreeSet::new();
        let mut duplicates = 0usize;
        for (u, v) in edges {
            assert!(u != v, "self-loop at vertex {u}");
            assert!(
                (u as usize) < n && (v as usize) < n,
                "edge ({u}, {v}) outside 0..{n}"
            );
            if !set.insert((u.min(v), u.max(v))) {
                duplicates += 1;
            }
        }
        let labels = (0..n).map(|v| v.to_string()).collect();
        Graph::assemble(n, set, labels, duplicates)
    }

    fn assemble(
        n: usize,
        edges: BTreeSet<(u32, u32)>,
        labels: Vec<String>,
        duplicates_collapsed: usize,
    ) -> Graph {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            adjacency,
            labels,
            duplicates_collapsed,
        }
    }

    /// Parses an edge list with the given id convention.
    ///
    /// Lines starting with `#` are comments, except that a comment of the
    /// form `# n=N` declares the vertex count. Without such a header the
    /// count is inferred as `max id + 1` after normalization to zero-based
    /// ids. Duplicate edges are collapsed (see
    /// [`duplicates_collapsed`](Graph::duplicates_collapsed)); self-loops and
    /// malformed lines are errors carrying their line number.
    pub fn parse_edge_list(text: &str, indexing: Indexing) -> Result<Graph, GraphParseError> {
        let mut declared_n: Option<usize> = None;
        let mut edges = BTreeSet::new();
        // Largest id seen so far, with its raw spelling and line for errors.
        let mut max_id: Option<(u32, u64, usize)> = None;
        let mut duplicates = 0usize;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(comment) = trimmed.strip_prefix('#') {
                let comment = comment.trim();
                if let Some(value) = comment.strip_prefix("n=") {
                    let n: usize =
                        value
                            .trim()
                            .parse()
                            .map_err(|_| GraphParseError::MalformedLine {
                                line,
                                found: raw.to_string(),
                            })?;
                    declared_n = Some(n);
                }
                continue;
            }

            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            let (u_raw, v_raw) = match tokens.as_slice() {
                [a, b] => {
                    let parse = |s: &str| s.parse::<u64>().ok();
                    match (parse(a), parse(b)) {
                        (Some(u), Some(v)) => (u, v),
                        _ => {
                            return Err(GraphParseError::MalformedLine {
                                line,
                                found: raw.to_string(),
                            })
                        }
                    }
                }
                _ => {
                    return Err(GraphParseError::MalformedLine {
                        line,
                        found: raw.to_string(),
                    })
                }
            };

            let normalize = |id: u64| -> Result<u32, GraphParseError> {
                match indexing {
                    Indexing::ZeroBased => Ok(id as u32),
                    Indexing::OneBased => {
                        if id == 0 {
                            Err(GraphParseError::ZeroIdInOneBased { line })
                        } else {
                            Ok((id - 1) as u32)
                        }
                    }
                }
            };
            let u = normalize(u_raw)?;
            let v = normalize(v_raw)?;
            if u == v {
                return Err(GraphParseError::SelfLoop {
                    line,
                    label: u_raw.to_string(),
                });
            }
            if !edges.insert((u.min(v), u.max(v))) {
                duplicates += 1;
            }
            for (id, raw_id) in [(u, u_raw), (v, v_raw)] {
                if max_id.is_none_or(|(m, _, _)| id > m) {
                    max_id = Some((id, raw_id, line));
                }
            }
        }

        let n = match (declared_n, max_id) {
            (Some(n), seen) => {
                // The header wins, but must cover every endpoint.
                if let Some((id, raw_id, line)) = seen {
                    if id as usize >= n {
                        return Err(GraphParseError::IdOutOfRange {
                            line,
                            id: raw_id,
                            n,
                        });
                    }
                }
                n
            }
            (None, Some((m, _, _))) => m as usize + 1,
            (None, None) => return Err(GraphParseError::EmptyInput),
        };
        let labels = (0..n)
            .map(|v| match indexing {
                Indexing::ZeroBased => v.to_string(),
                Indexing::OneBased => (v + 1).to_string(),
            })
            .collect();
        Ok(Graph::assemble(n, edges, labels, duplicates))
    }

    /// Parses a tolerant subset of the Pajek `.net` format.
    ///
    /// Recognizes `*Vertices N` (case-insensitive), optional vertex lines
    /// `id "label" ...`, and `*Edges` / `*Arcs` sections whose lines start
    /// with two one-based endpoints (trailing tokens such as weights are
    /// ignored). `%` comments and blank lines are skipped; arcs are
    /// symmetrized.
    pub fn parse_pajek(text: &str) -> Result<Graph, GraphParseError> {
        #[derive(PartialEq)]
        enum Section {
            Preamble,
            Vertices,
            Edges,
        }

        let mut section = Section::Preamble;
        let mut n: Option<usize> = None;
        let mut labels: Vec<String> = Vec::new();
        let mut edges = BTreeSet::new();
        let mut duplicates = 0usize;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('%') {
                continue;
            }
            if trimmed.starts_with('*') {
                let lower = trimmed.to_ascii_lowercase();
                if lower.starts_with("*vertices") {
                    let count: usize = lower
                        .split_whitespace()
                        .nth(1)
                        .and_then(|tok| tok.parse().ok())
                        .ok_or(GraphParseError::MalformedLine {
                            line,
                            found: raw.to_string(),
                        })?;
                    n = Some(count);
                    labels = (0..count).map(|v| (v + 1).to_string()).collect();
                    section = Section::Vertices;
                } else if lower.starts_with("*edges") || lower.starts_with("*arcs") {
                    if n.is_none() {
                        return Err(GraphParseError::MissingVertexHeader);
                    }
                    section = Section::Edges;
                } else {
                    // Other sections (e.g. *Network headers) are skipped.
                    section = Section::Preamble;
                }
                continue;
            }

            match section {
                Section::Preamble => continue,
                Section::Vertices => {
                    let count = n.expect("vertex section implies header");
                    let mut parts = trimmed.splitn(2, char::is_whitespace);
                    let id: u64 = parts.next().and_then(|tok| tok.parse().ok()).ok_or(
                        GraphParseError::MalformedLine {
                            line,
                            found: raw.to_string(),
                        },
                    )?;
                    if id == 0 || id as usize > count {
                        return Err(GraphParseError::IdOutOfRange { line, id, n: count });
                    }
                    if let Some(rest) = parts.next() {
                        let rest = rest.trim();
                        let label = if let Some(stripped) = rest.strip_prefix('"') {
                            stripped.split('"').next().unwrap_or(stripped).to_string()
                        } else {
                            rest.split_whitespace().next().unwrap_or(rest).to_string()
                        };
                        if !label.is_empty() {
                            labels[id as usize - 1] = label;
                        }
                    }
                }
                Section::Edges => {
                    let count = n.expect("edge section implies header");
                    let mut tokens = trimmed.split_whitespace();
                    let mut endpoint = || -> Result<u64, GraphParseError> {
                        tokens.next().and_then(|tok| tok.parse().ok()).ok_or(
                            GraphParseError::MalformedLine {
                                line,
                                found: raw.to_string(),
                            },
                        )
                    };
                    let u_raw = endpoint()?;
                    let v_raw = endpoint()?;
                    for id in [u_raw, v_raw] {
                        if id == 0 || id as usize > count {
                            return Err(GraphParseError::IdOutOfRange { line, id, n: count });
                        }
                    }
                    if u_raw == v_raw {
                        return Err(GraphParseError::SelfLoop {
                            line,
                            label: u_raw.to_string(),
                        });
                    }
                    let u = (u_raw - 1) as u32;
                    let v = (v_raw - 1) as u32;
                    if !edges.insert((u.min(v), u.max(v))) {
                        duplicates += 1;
                    }
                }
            }
        }

        match n {
            Some(count) => Ok(Graph::assemble(count, edges, labels, duplicates)),
            None => Err(GraphParseError::MissingVertexHeader),
        }
    }

    /// Serializes to edge-list text with a `# n=N` header, so parsing the
    /// result round-trips even in the presence of isolated vertices.
    pub fn to_edge_list_string(&self, indexing: Indexing) -> String {
        let offset = match indexing {
            Indexing::ZeroBased => 0,
            Indexing::OneBased => 1,
        };
        let mut out = format!("# n={}\n", self.n);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{} {}", u as usize + offset, v as usize + offset);
        }
        out
    }

    /// Serializes to Pajek text, emitting one labelled vertex line per vertex.
    pub fn to_pajek_string(&self) -> String {
        let mut out = format!("*Vertices {}\n", self.n);
        for v in 0..self.n {
            let _ = writeln!(out, "{} \"{}\"", v + 1, self.labels[v]);
        }
        out.push_str("*Edges\n");
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{} {}", u + 1, v + 1);
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        if u == v {
            return false;
        }
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// True iff the graph has at least one vertex and every vertex is
    /// reachable from vertex 0.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut queue = std::collections::VecDeque::from([0u32]);
        seen[0] = true;
        let mut reached = 1usize;
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.n
    }

    /// The reporting label of vertex `v`.
    pub fn label(&self, v: u32) -> &str {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Number of duplicate input edges collapsed during ingestion, exposed so
    /// callers can surface a data-quality warning.
    pub fn duplicates_collapsed(&self) -> usize {
        self.duplicates_collapsed
    }
}
