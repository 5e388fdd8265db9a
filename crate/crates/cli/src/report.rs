//! Machine- and human-readable output for the `sgc` commands.
//!
//! The JSON renderer is the contract surface: field order is fixed by the
//! struct declarations, maps are ordered, and floats go through the standard
//! shortest round-trip formatter, so identical inputs serialize to identical
//! bytes. CSV carries full-precision scores, one row per vertex; the table
//! renderer rounds to four decimals for reading.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    pub connected: bool,
    pub labels: Vec<String>,
}

/// One evaluated measure: solver metadata, scores by vertex id, and the
/// derived ranking (best first, ties broken by ascending id).
#[derive(Debug, Serialize)]
pub struct MeasureBlock {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pattern: Option<String>,
    pub rho: Option<f64>,
    pub converged: Option<bool>,
    pub iterations: Option<usize>,
    pub residual: Option<f64>,
    pub scores: Vec<f64>,
    pub ranking: Vec<u32>,
    pub ties: Vec<Vec<u32>>,
}

/// Entry-weighting conventions in force, reported so numbers can be compared
/// across implementations without guessing.
#[derive(Debug, Serialize)]
pub struct Conventions {
    pub subgraph_tensor: &'static str,
    pub mixed_tensor: &'static str,
}

pub const SUBGRAPH_TENSOR_CONVENTION: &str =
    "set-based: each vertex set contributes its deduplicated multiplicity once";
pub const MIXED_TENSOR_CONVENTION: &str =
    "ordered-tuple: each vertex set contributes (k-1)! * |Aut(F)| * multiplicity; \
     walk tuples contribute once per ordered neighbor pair";

#[derive(Debug, Serialize)]
pub struct PatternDiagnostics {
    pub pattern: String,
    pub order: usize,
    pub automorphisms: u64,
    pub occurrence_sets: usize,
    pub total_multiplicity: u64,
    pub f_connected: bool,
    pub uncovered_edges: Vec<(u32, u32)>,
    pub covered_components: usize,
    pub subgraph_tensor_weakly_irreducible: bool,
    /// Absent for order-2 patterns, where no mixed tensor is defined.
    pub mixed_tensor_weakly_irreducible: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct Diagnostics {
    pub conventions: Conventions,
    pub patterns: Vec<PatternDiagnostics>,
}

/// The `compute` output document.
#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub graph: GraphSummary,
    pub measures: Vec<MeasureBlock>,
    /// Full symmetric matrix keyed by measure name; `null` marks pairs whose
    /// correlation is undefined (constant score vector).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub correlations: Option<BTreeMap<String, BTreeMap<String, Option<f64>>>>,
    pub correlation_method: Option<&'static str>,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Serialize)]
pub struct TensorCheck {
    pub zero: bool,
    pub weakly_irreducible: bool,
    pub components: Vec<Vec<u32>>,
}

/// The `check` output document: the certification surface for one
/// graph/pattern pair.
#[derive(Debug, Serialize)]
pub struct CheckDocument {
    pub graph: GraphSummary,
    pub pattern: String,
    pub order: usize,
    pub automorphisms: u64,
    pub f_connected: bool,
    pub uncovered_edges: Vec<(u32, u32)>,
    pub covered_components: Vec<Vec<u32>>,
    pub occurrence_sets: usize,
    pub total_multiplicity: u64,
    /// Number of occurrences containing each vertex, by vertex id.
    pub per_vertex_totals: Vec<u64>,
    pub subgraph_tensor: TensorCheck,
    /// Absent for order-2 patterns.
    pub mixed_tensor: Option<TensorCheck>,
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report types always serialize");
    s.push('\n');
    s
}

/// Score table: `vertex,label,<measure...>` header and one full-precision row
/// per vertex.
pub fn to_csv(doc: &ReportDocument) -> String {
    let mut out = String::from("vertex,label");
    for m in &doc.measures {
        let _ = write!(out, ",{}", m.name);
    }
    out.push('\n');
    for v in 0..doc.graph.n {
        let _ = write!(out, "{v},{}", doc.graph.labels[v]);
        for m in &doc.measures {
            let _ = write!(out, ",{}", m.scores[v]);
        }
        out.push('\n');
    }
    out
}

/// Four-decimal human-readable rendering: per-measure solver lines, the score
/// table, leading ranks, and the correlation matrix when present.
pub fn to_table(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "graph: {} vertices, {} edges, {}",
        doc.graph.n,
        doc.graph.m,
        if doc.graph.connected {
            "connected"
        } else {
            "disconnected"
        }
    );
    for m in &doc.measures {
        let _ = write!(out, "{}:", m.name);
        match m.rho {
            Some(rho) => {
                let _ = write!(out, " rho={rho:.4}");
                if let Some(it) = m.iterations {
                    let _ = write!(out, " iterations={it}");
                }
                if let Some(c) = m.converged {
                    let _ = write!(out, " converged={c}");
                }
                if let Some(r) = m.residual {
                    let _ = write!(out, " residual={r:.2e}");
                }
            }
            None => {
                let _ = write!(out, " direct");
            }
        }
        out.push('\n');
    }

    let width = doc
        .measures
        .iter()
        .map(|m| m.name.len())
        .chain(doc.graph.labels.iter().map(|l| l.len()))
        .max()
        .unwrap_or(6)
        .max(7);
    let _ = write!(out, "{:>width$}", "vertex");
    for m in &doc.measures {
        let _ = write!(out, " {:>width$}", m.name);
    }
    out.push('\n');
    for v in 0..doc.graph.n {
        let _ = write!(out, "{:>width$}", doc.graph.labels[v]);
        for m in &doc.measures {
            let _ = write!(out, " {:>width$.4}", m.scores[v]);
        }
        out.push('\n');
    }

    for m in &doc.measures {
        let shown = m.ranking.len().min(10);
        let leaders: Vec<&str> = m.ranking[..shown]
            .iter()
            .map(|&v| doc.graph.labels[v as usize].as_str())
            .collect();
        let _ = writeln!(out, "top-{shown} {}: {}", m.name, leaders.join(" "));
    }

    if let (Some(corr), Some(method)) = (&doc.correlations, doc.correlation_method) {
        let _ = writeln!(out, "correlations ({method}):");
        let _ = write!(out, "{:>width$}", "");
        for m in &doc.measures {
            let _ = write!(out, " {:>width$}", m.name);
        }
        out.push('\n');
        for a in &doc.measures {
            let _ = write!(out, "{:>width$}", a.name);
            for b in &doc.measures {
                match corr[&a.name][&b.name] {
                    Some(v) => {
                        let _ = write!(out, " {:>width$.4}", v);
                    }
                    None => {
                        let _ = write!(out, " {:>width$}", "n/a");
                    }
                }
            }
            out.push('\n');
        }
    }
    out
}

/// Per-iteration bracket trace CSV for the spectral measures.
pub fn trace_csv(measures: &[(String, Vec<(f64, f64)>)]) -> String {
    let mut out = String::from("measure,iteration,lower,upper\n");
    for (name, trace) in measures {
        for (i, (lower, upper)) in trace.iter().enumerate() {
            let _ = writeln!(out, "{name},{},{lower},{upper}", i + 1);
        }
    }
    out
}
