//! Library backing the `sgc` binary: configuration types, measure parsing,
//! and the command implementations. Kept separate from the clap surface so
//! integration tests can drive commands directly.

pub mod report;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use sgc_core::{
    automorphism_count, betweenness_centrality, correlate, degree_centrality,
    eigenvector_centrality, enumerate_occurrences, f_centrality, mixed_centrality, ranking,
    subgraph_centrality, CentralityError, CentralityMeta, CentralityVector, CorrelationMethod,
    FConnectivity, Graph, GraphParseError, Indexing, MixedTensor, Pattern, PatternError,
    SpectralError, SpectralOptions, SubgraphTensor, TensorBuildError, TIE_TOLERANCE,
};

use report::{
    CheckDocument, Conventions, Diagnostics, GraphSummary, MeasureBlock, PatternDiagnostics,
    ReportDocument, TensorCheck, MIXED_TENSOR_CONVENTION, SUBGRAPH_TENSOR_CONVENTION,
};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_ITERATIONS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Pajek,
}

#[derive(Debug, Clone)]
pub enum GraphSource {
    /// The bundled 34-vertex club network.
    Karate,
    File(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

/// One requested measure. Pattern-based variants carry the token given
/// inline (`f:p2`), or `None` when the shared `--pattern` flag supplies it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeasureSpec {
    Eigenvector,
    Degree,
    Betweenness,
    Subgraph,
    Pattern(Option<String>),
    Mixed(Option<String>),
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub source: GraphSource,
    pub format: GraphFormat,
    pub one_based: bool,
    pub pattern: Option<String>,
    pub measures: Vec<MeasureSpec>,
    pub tolerance: f64,
    pub max_iterations: usize,
    pub output: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub correlation: CorrelationMethod,
    pub trace_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(source: GraphSource, measures: Vec<MeasureSpec>) -> RunConfig {
        RunConfig {
            source,
            format: GraphFormat::EdgeList,
            one_based: false,
            pattern: None,
            measures,
            tolerance: DEFAULT_TOLERANCE,
            max_iterations: DEFAULT_MAX_ITERATIONS,
            output: OutputFormat::Json,
            output_path: None,
            correlation: CorrelationMethod::Pearson,
            trace_path: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("graph: {0}")]
    Graph(#[from] GraphParseError),
    #[error("pattern: {0}")]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Centrality(#[from] CentralityError),
}

/// Process exit codes: `2` rejects the request itself (usage, unparsable
/// input), `3` reports that the requested centrality does not exist on this
/// graph, `4` that the iteration failed to certify one, `1` anything else.
impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Graph(_) | CliError::Pattern(_) => 2,
            CliError::Io { .. } => 1,
            CliError::Centrality(e) => match e {
                CentralityError::Disconnected
                | CentralityError::TooFewVertices { .. }
                | CentralityError::NotPatternConnected(_)
                | CentralityError::NoOccurrences(_)
                | CentralityError::Build(TensorBuildError::MixedOrderTooSmall(_)) => 3,
                CentralityError::Spectral(s) => match s {
                    SpectralError::ZeroTensor
                    | SpectralError::Disconnected
                    | SpectralError::GraphTooSmall(_) => 3,
                    SpectralError::NonIrreducible { .. } | SpectralError::NotConverged { .. } => 4,
                    SpectralError::InvalidInitial { .. } => 2,
                },
                CentralityError::Enumeration(_)
                | CentralityError::Build(TensorBuildError::Enumeration(_)) => 2,
                CentralityError::ConstantVector | CentralityError::CorrelationInput => 1,
            },
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_graph(config: &RunConfig) -> Result<Graph, CliError> {
    match &config.source {
        GraphSource::Karate => Ok(sgc_core::datasets::karate()),
        GraphSource::File(path) => {
            let text = read_file(path)?;
            let g = match config.format {
                GraphFormat::EdgeList => {
                    let indexing = if config.one_based {
                        Indexing::OneBased
                    } else {
                        Indexing::ZeroBased
                    };
                    Graph::parse_edge_list(&text, indexing)?
                }
                GraphFormat::Pajek => Graph::parse_pajek(&text)?,
            };
            Ok(g)
        }
    }
}

/// Resolves a pattern token: builtin name first, then a template file path.
pub fn resolve_pattern(token: &str) -> Result<Pattern, CliError> {
    match Pattern::builtin(token) {
        Ok(p) => Ok(p),
        Err(PatternError::UnknownBuiltin(_)) => {
            let path = Path::new(token);
            if !path.is_file() {
                return Err(CliError::Usage(format!(
                    "pattern `{token}` is neither a builtin token (see `sgc patterns`) \
                     nor a template file"
                )));
            }
            Ok(Pattern::parse(&read_file(path)?)?)
        }
        Err(e) => Err(e.into()),
    }
}

/// Parses a comma-separated measure list. `p2c` and `k2k3c` are shorthands
/// for `f:p2` and `k2f:k3`; bare `f`/`k2f` defer to `--pattern`.
pub fn parse_measures(list: &str) -> Result<Vec<MeasureSpec>, CliError> {
    let mut specs = Vec::new();
    for raw in list.split(',') {
        let token = raw.trim();
        let lower = token.to_ascii_lowercase();
        let spec = match lower.as_str() {
            "" => return Err(CliError::Usage(format!("empty measure token in `{list}`"))),
            "ec" => MeasureSpec::Eigenvector,
            "dc" => MeasureSpec::Degree,
            "bc" => MeasureSpec::Betweenness,
            "sc" => MeasureSpec::Subgraph,
            "p2c" => MeasureSpec::Pattern(Some("p2".into())),
            "k2k3c" => MeasureSpec::Mixed(Some("k3".into())),
            "f" => MeasureSpec::Pattern(None),
            "k2f" => MeasureSpec::Mixed(None),
            _ => {
                if let Some(rest) = lower.strip_prefix("k2f:") {
                    MeasureSpec::Mixed(Some(rest.to_string()))
                } else if let Some(rest) = lower.strip_prefix("f:") {
                    MeasureSpec::Pattern(Some(rest.to_string()))
                } else {
                    return Err(CliError::Usage(format!(
                        "unknown measure `{token}`; expected ec, dc, bc, sc, p2c, k2k3c, \
                         f[:pattern], or k2f[:pattern]"
                    )));
                }
            }
        };
        specs.push(spec);
    }
    Ok(specs)
}

struct Evaluated {
    vector: CentralityVector,
    pattern: Option<Pattern>,
}

fn evaluate(
    g: &Graph,
    spec: &MeasureSpec,
    shared_pattern: Option<&str>,
    opts: &SpectralOptions,
) -> Result<Evaluated, CliError> {
    let pattern_for = |inline: &Option<String>, bare: &str| -> Result<Pattern, CliError> {
        let token = inline.as_deref().or(shared_pattern).ok_or_else(|| {
            CliError::Usage(format!(
                "measure `{bare}` needs a pattern: use `{bare}:<token>` or pass --pattern"
            ))
        })?;
        resolve_pattern(token)
    };
    match spec {
        MeasureSpec::Eigenvector => {
            let r = eigenvector_centrality(g, opts).map_err(CentralityError::from)?;
            Ok(Evaluated {
                vector: CentralityVector {
                    measure: "ec".into(),
                    scores: r.x,
                    meta: CentralityMeta {
                        pattern: None,
                        rho: Some(r.rho),
                        iterations: Some(r.iterations),
                        converged: Some(r.converged),
                        residual_inf: Some(r.residual_inf),
                        trace: r.trace,
                    },
                },
                pattern: None,
            })
        }
        MeasureSpec::Degree => Ok(Evaluated {
            vector: degree_centrality(g),
            pattern: None,
        }),
        MeasureSpec::Betweenness => Ok(Evaluated {
            vector: betweenness_centrality(g),
            pattern: None,
        }),
        MeasureSpec::Subgraph => Ok(Evaluated {
            vector: subgraph_centrality(g),
            pattern: None,
        }),
        MeasureSpec::Pattern(inline) => {
            let p = pattern_for(inline, "f")?;
            let vector = f_centrality(g, &p, opts)?;
            Ok(Evaluated {
                vector,
                pattern: Some(p),
            })
        }
        MeasureSpec::Mixed(inline) => {
            let p = pattern_for(inline, "k2f")?;
            let vector = mixed_centrality(g, &p, opts)?;
            Ok(Evaluated {
                vector,
                pattern: Some(p),
            })
        }
    }
}

fn pattern_diagnostics(g: &Graph, f: &Pattern) -> Result<PatternDiagnostics, CliError> {
    let occ = enumerate_occurrences(g, f).map_err(CentralityError::from)?;
    let conn = FConnectivity::analyze(g, &occ);
    let tensor = SubgraphTensor::from_occurrences(g.vertex_count(), occ);
    let sub_report = tensor.is_weakly_irreducible();
    let mixed = if f.order() >= 3 {
        let t = MixedTensor::build(g, f).map_err(CentralityError::from)?;
        Some(t.is_weakly_irreducible().weakly_irreducible)
    } else {
        None
    };
    Ok(PatternDiagnostics {
        pattern: f.name().to_string(),
        order: f.order(),
        automorphisms: automorphism_count(f),
        occurrence_sets: tensor.occurrences().entries().count(),
        total_multiplicity: tensor.occurrences().total_multiplicity(),
        f_connected: conn.connected,
        uncovered_edges: conn.uncovered_edges,
        covered_components: conn.components.len(),
        subgraph_tensor_weakly_irreducible: sub_report.weakly_irreducible,
        mixed_tensor_weakly_irreducible: mixed,
    })
}

fn graph_summary(g: &Graph) -> GraphSummary {
    GraphSummary {
        n: g.vertex_count(),
        m: g.edge_count(),
        connected: g.is_connected(),
        labels: g.labels().to_vec(),
    }
}

/// Runs the requested measures and assembles the report document.
pub fn cmd_compute(config: &RunConfig) -> Result<ReportDocument, CliError> {
    if !config.tolerance.is_finite() || config.tolerance <= 0.0 {
        return Err(CliError::Usage(format!(
            "--tol must be positive, got {}",
            config.tolerance
        )));
    }
    if config.max_iterations == 0 {
        return Err(CliError::Usage("--max-iter must be at least 1".into()));
    }
    if config.measures.is_empty() {
        return Err(CliError::Usage("no measures requested".into()));
    }

    let g = load_graph(config)?;
    let opts = SpectralOptions {
        tolerance: config.tolerance,
        max_iterations: config.max_iterations,
        record_trace: config.trace_path.is_some(),
        ..SpectralOptions::default()
    };

    let mut vectors: Vec<CentralityVector> = Vec::new();
    let mut patterns: Vec<Pattern> = Vec::new();
    for spec in &config.measures {
        let evaluated = evaluate(&g, spec, config.pattern.as_deref(), &opts)?;
        if vectors
            .iter()
            .any(|v| v.measure == evaluated.vector.measure)
        {
            return Err(CliError::Usage(format!(
                "measure `{}` requested twice",
                evaluated.vector.measure
            )));
        }
        if let Some(p) = evaluated.pattern {
            if !patterns.iter().any(|q| q.name() == p.name()) {
                patterns.push(p);
            }
        }
        vectors.push(evaluated.vector);
    }

    let correlations = if vectors.len() >= 2 {
        let mut matrix = BTreeMap::new();
        for a in &vectors {
            let mut row = BTreeMap::new();
            for b in &vectors {
                row.insert(b.measure.clone(), correlate(a, b, config.correlation).ok());
            }
            matrix.insert(a.measure.clone(), row);
        }
        Some(matrix)
    } else {
        None
    };

    if let Some(trace_path) = &config.trace_path {
        let traces: Vec<(String, Vec<(f64, f64)>)> = vectors
            .iter()
            .filter(|v| !v.meta.trace.is_empty())
            .map(|v| (v.measure.clone(), v.meta.trace.clone()))
            .collect();
        write_file(trace_path, &report::trace_csv(&traces))?;
    }

    let measures = vectors
        .into_iter()
        .map(|v| {
            let r = ranking(&v, TIE_TOLERANCE);
            MeasureBlock {
                name: v.measure,
                pattern: v.meta.pattern,
                rho: v.meta.rho,
                converged: v.meta.converged,
                iterations: v.meta.iterations,
                residual: v.meta.residual_inf,
                scores: v.scores,
                ranking: r.order,
                ties: r.tie_groups,
            }
        })
        .collect();

    let pattern_blocks = patterns
        .iter()
        .map(|f| pattern_diagnostics(&g, f))
        .collect::<Result<Vec<_>, _>>()?;

    Ok(ReportDocument {
        graph: graph_summary(&g),
        measures,
        correlations,
        correlation_method: Some(match config.correlation {
            CorrelationMethod::Pearson => "pearson",
            CorrelationMethod::Spearman => "spearman",
        }),
        diagnostics: Diagnostics {
            conventions: Conventions {
                subgraph_tensor: SUBGRAPH_TENSOR_CONVENTION,
                mixed_tensor: MIXED_TENSOR_CONVENTION,
            },
            patterns: pattern_blocks,
        },
    })
}

/// Certifies existence-related facts for one graph/pattern pair. Reporting a
/// negative verdict is a successful check, not an error.
pub fn cmd_check(config: &RunConfig) -> Result<CheckDocument, CliError> {
    let token = config
        .pattern
        .as_deref()
        .ok_or_else(|| CliError::Usage("check requires --pattern".into()))?;
    let f = resolve_pattern(token)?;
    let g = load_graph(config)?;

    let occ = enumerate_occurrences(&g, &f).map_err(CentralityError::from)?;
    let conn = FConnectivity::analyze(&g, &occ);
    let per_vertex = occ.per_vertex_totals(g.vertex_count());
    let total = occ.total_multiplicity();
    let sets = occ.entries().count();
    let tensor = SubgraphTensor::from_occurrences(g.vertex_count(), occ);
    let sub_report = tensor.is_weakly_irreducible();
    let mixed = if f.order() >= 3 {
        let t = MixedTensor::build(&g, &f).map_err(CentralityError::from)?;
        let r = t.is_weakly_irreducible();
        Some(TensorCheck {
            zero: false,
            weakly_irreducible: r.weakly_irreducible,
            components: r.components,
        })
    } else {
        None
    };

    Ok(CheckDocument {
        graph: graph_summary(&g),
        pattern: f.name().to_string(),
        order: f.order(),
        automorphisms: automorphism_count(&f),
        f_connected: conn.connected,
        uncovered_edges: conn.uncovered_edges,
        covered_components: conn.components,
        occurrence_sets: sets,
        total_multiplicity: total,
        per_vertex_totals: per_vertex,
        subgraph_tensor: TensorCheck {
            zero: tensor.is_zero(),
            weakly_irreducible: sub_report.weakly_irreducible,
            components: sub_report.components,
        },
        mixed_tensor: mixed,
    })
}

/// Materializes a bundled dataset as an edge-list file and returns its path.
pub fn cmd_dataset(name: &str, output: Option<&Path>) -> Result<PathBuf, CliError> {
    match name.to_ascii_lowercase().as_str() {
        "karate" => {
            let g = sgc_core::datasets::karate();
            assert_eq!(g.vertex_count(), 34, "bundled fixture changed shape");
            assert_eq!(g.edge_count(), 78, "bundled fixture changed shape");
            let path = output
                .map(Path::to_path_buf)
                .unwrap_or_else(|| PathBuf::from("karate.edges"));
            write_file(&path, &g.to_edge_list_string(Indexing::OneBased))?;
            // Round-trip before handing the path out.
            let back = Graph::parse_edge_list(&read_file(&path)?, Indexing::OneBased)?;
            if back != g {
                return Err(CliError::Usage(format!(
                    "round-trip mismatch materializing `{}`",
                    path.display()
                )));
            }
            Ok(path)
        }
        "sandi" | "sandi-auths" => Err(CliError::Usage(
            "the political-support network (86 vertices, 124 edges) is not bundled; \
             fetch it yourself, save it as an edge list, and pass --graph <path> \
             (ingestion should verify n=86, m=124)"
                .into(),
        )),
        other => Err(CliError::Usage(format!(
            "unknown dataset `{other}`; bundled: karate"
        ))),
    }
}

/// Text listing of the builtin pattern vocabulary.
pub fn builtin_pattern_listing() -> String {
    let mut out = String::new();
    out.push_str("builtin patterns (token  order  edges):\n");
    for token in ["k2", "p2", "p3", "k3", "k4", "star-3", "cycle-5"] {
        let f = Pattern::builtin(token).expect("listing covers builtins only");
        let edges: Vec<String> = f
            .edges()
            .iter()
            .map(|(u, v)| format!("({u},{v})"))
            .collect();
        out.push_str(&format!(
            "  {:8} {:5}  {}\n",
            token,
            f.order(),
            edges.join(" ")
        ));
    }
    out.push_str("  star-r   r+1    center 0 joined to 1..r (r >= 2)\n");
    out.push_str("  cycle-r  r      ring 0-1-...-(r-1)-0 (r >= 3)\n");
    out.push_str("  p1 is an alias for k2\n");
    out.push_str("custom templates: a file whose first line is the order k,\n");
    out.push_str("followed by one 0-based edge `u v` per line.\n");
    out
}

/// Renders a compute document in the configured format.
pub fn render(doc: &ReportDocument, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => report::to_json(doc),
        OutputFormat::Csv => report::to_csv(doc),
        OutputFormat::Table => report::to_table(doc),
    }
}

/// Writes `text` to the configured destination (file or stdout).
pub fn emit(text: &str, output_path: Option<&Path>) -> Result<(), CliError> {
    match output_path {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
