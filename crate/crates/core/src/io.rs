//! Edge-list files and JSON/CSV report documents.
//!
//! Edge lists are ASCII, one `source target [weight]` per line, separated
//! by whitespace. `#` starts a comment; blank lines are skipped. The
//! directives `%directed` and `%one-based` may appear before the first edge.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::centrality::Measure;
use crate::conditions::ConditionReport;
use crate::error::{Error, Result};
use crate::explore::{Counterexample, SearchOutcome, SuiteSummary, SweepResult};
use crate::graph::{Duplicates, Graph};
use crate::paradox::{DirectedDegreeReport, ParadoxReport};
use crate::value::Value;

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Treat node labels as 1-based even without the directive.
    pub one_based: bool,
    pub duplicates: Duplicates,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    parse_edge_list_with(text, ParseOptions::default())
}

pub fn parse_edge_list_with(text: &str, opts: ParseOptions) -> Result<Graph> {
    let mut directed = false;
    let mut one_based = opts.one_based;
    let mut seen_edge = false;
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    // canonical pair -> (index into edges, line)
    let mut index: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    let mut n = 0usize;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(directive) = content.strip_prefix('%') {
            if seen_edge {
                return Err(parse_err(line, format!("directive %{directive} after the first edge")));
            }
            match directive.trim() {
                "directed" => directed = true,
                "one-based" => one_based = true,
                other => return Err(parse_err(line, format!("unknown directive %{other}"))),
            }
            continue;
        }
        seen_edge = true;

        let fields: Vec<&str> = content.split_whitespace().collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(parse_err(
                line,
                format!("expected 'source target [weight]', found {} fields", fields.len()),
            ));
        }
        let node = |s: &str| -> Result<usize> {
            let v: usize = s
                .parse()
                .map_err(|_| parse_err(line, format!("invalid node label {s:?}")))?;
            if one_based {
                v.checked_sub(1)
                    .ok_or_else(|| parse_err(line, "node label 0 in a one-based file"))
            } else {
                Ok(v)
            }
        };
        let (u, v) = (node(fields[0])?, node(fields[1])?);
        let w = match fields.get(2) {
            Some(s) => s
                .parse::<f64>()
                .map_err(|_| parse_err(line, format!("invalid weight {s:?}")))?,
            None => 1.0,
        };
        if u == v {
            return Err(parse_err(line, format!("self-loop (node {})", fields[0])));
        }
        if !(w > 0.0 && w.is_finite()) {
            return Err(parse_err(line, format!("weight {w} must be positive and finite")));
        }
        n = n.max(u + 1).max(v + 1);
        let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
        match index.get(&key) {
            Some(&(at, first)) => match opts.duplicates {
                Duplicates::Reject => {
                    return Err(parse_err(
                        line,
                        format!("duplicate edge ({}, {}); first seen on line {first}", fields[0], fields[1]),
                    ))
                }
                Duplicates::Sum => edges[at].2 += w,
            },
            None => {
                index.insert(key, (edges.len(), line));
                edges.push((u, v, w));
            }
        }
    }
    if edges.is_empty() {
        return Err(Error::NoEdges);
    }
    Graph::build(n, &edges, directed)
}

pub fn read_edge_list(path: &Path, opts: ParseOptions) -> Result<Graph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    parse_edge_list_with(&text, opts)
}

/// Edge-list text that [`parse_edge_list`] reads back to the same graph
/// (isolated trailing nodes aside, which the format cannot express).
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    if g.is_directed() {
        out.push_str("%directed\n");
    }
    let _ = writeln!(out, "# n = {}", g.n());
    for (i, j, w) in g.edges() {
        if w == 1.0 {
            let _ = writeln!(out, "{i} {j}");
        } else {
            let _ = writeln!(out, "{i} {j} {w}");
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub n: usize,
    pub edges: usize,
    pub directed: bool,
    pub weighted: bool,
    pub regular: bool,
    pub connected: bool,
    pub strongly_connected: bool,
}

impl GraphSummary {
    pub fn of(g: &Graph) -> Self {
        GraphSummary {
            n: g.n(),
            edges: g.edge_count(),
            directed: g.is_directed(),
            weighted: g.is_weighted(),
            regular: g.is_regular_any(),
            connected: g.is_connected(),
            strongly_connected: g.is_strongly_connected(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Report {
    Graph {
        n: usize,
        directed: bool,
        edges: Vec<(usize, usize, f64)>,
    },
    Centrality {
        measure: Measure,
        label: String,
        values: Vec<f64>,
    },
    Paradox(ParadoxReport),
    DirectedParadox(DirectedDegreeReport),
    Condition(ConditionReport),
    Quantity {
        name: String,
        value: Value,
    },
    Sweep(SweepResult),
    Search(SearchOutcome),
    Counterexample(Counterexample),
    Suite(SuiteSummary),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    /// Arguments after the program name, minus the thread count.
    pub command: Vec<String>,
    pub seed: Option<u64>,
    pub tolerances: BTreeMap<String, f64>,
    pub version: String,
}

/// Everything one CLI run produced. No timestamps or host details, so equal
/// inputs serialise to equal bytes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub graph_summary: Option<GraphSummary>,
    pub reports: Vec<Report>,
    pub provenance: Provenance,
}

impl ReportDocument {
    pub fn new(provenance: Provenance) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION.into(),
            graph_summary: None,
            reports: Vec::new(),
            provenance,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)
            .map_err(|e| Error::invalid(format!("serialisation failed: {e}")))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }
}

/// `alpha,gap` header plus one row per grid point.
pub fn sweep_csv(s: &SweepResult) -> String {
    let mut out = String::from("alpha,gap\n");
    for (a, g) in s.alphas.iter().zip(&s.gaps) {
        let _ = writeln!(out, "{a:e},{g:e}");
    }
    out
}

/// One row per violation; the edge list is `;`-separated `u-v` pairs.
pub fn search_csv(s: &SearchOutcome) -> String {
    let mut out = String::from("trial,seed,n,lhs,rhs,slack,edges\n");
    for v in &s.violations {
        let edges: Vec<String> = v.edges.iter().map(|(i, j, _)| format!("{i}-{j}")).collect();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            v.trial,
            v.seed.map(|s| s.to_string()).unwrap_or_default(),
            v.n,
            v.report.lhs,
            v.report.rhs,
            v.report.slack,
            edges.join(";")
        );
    }
    out
}
