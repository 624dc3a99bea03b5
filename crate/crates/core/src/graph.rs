//! Immutable weighted graphs stored as compressed sparse rows.
//!
//! Undirected graphs keep both arcs of every edge, so every kernel can treat
//! them as directed graphs with a symmetric adjacency matrix.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance for deciding that weighted degrees are all equal.
pub const WEIGHTED_REGULAR_RTOL: f64 = 1e-12;

/// Which degree vector an operation looks at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Undirected,
    Out,
    In,
}

impl std::str::FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "undirected" => Ok(Orientation::Undirected),
            "out" => Ok(Orientation::Out),
            "in" => Ok(Orientation::In),
            other => Err(Error::invalid(format!(
                "unknown mode {other:?} (expected undirected, out or in)"
            ))),
        }
    }
}

/// How `build` treats an edge key that appears twice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Duplicates {
    #[default]
    Reject,
    Sum,
}

/// Per-node real values: degrees, attributes or centralities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeVector {
    pub label: String,
    pub values: Vec<f64>,
}

impl NodeVector {
    pub fn new(values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidEntry { index, value });
        }
        Ok(NodeVector {
            label: label.into(),
            values,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Copy rescaled so that the entries sum to `target`.
    pub fn rescaled_sum(&self, target: f64) -> NodeVector {
        let s = self.sum();
        NodeVector {
            label: self.label.clone(),
            values: self.values.iter().map(|v| v * target / s).collect(),
        }
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.values.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: self.values.len(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    n: usize,
    directed: bool,
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<f64>,
}

impl Graph {
    /// Builds a graph from `(source, target, weight)` triples.
    ///
    /// For undirected graphs each triple is one edge; `(i, j)` and `(j, i)`
    /// are the same key.
    pub fn build(n: usize, edges: &[(usize, usize, f64)], directed: bool) -> Result<Graph> {
        Self::build_with(n, edges, directed, Duplicates::Reject)
    }

    pub fn build_with(
        n: usize,
        edges: &[(usize, usize, f64)],
        directed: bool,
        duplicates: Duplicates,
    ) -> Result<Graph> {
        if n == 0 {
            return Err(Error::NoNodes);
        }
        if edges.is_empty() {
            return Err(Error::NoEdges);
        }
        let mut arcs: Vec<(usize, usize, f64)> = Vec::with_capacity(edges.len() * 2);
        for &(s, t, w) in edges {
            for node in [s, t] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, n });
                }
            }
            if s == t {
                return Err(Error::SelfLoop(s));
            }
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::NonPositiveWeight {
                    tail: s,
                    head: t,
                    weight: w,
                });
            }
            if directed {
                arcs.push((s, t, w));
            } else {
                // Canonical orientation first so duplicates collide.
                arcs.push((s.min(t), s.max(t), w));
            }
        }
        arcs.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(arcs.len());
        for arc in arcs {
            match merged.last_mut() {
                Some(last) if (last.0, last.1) == (arc.0, arc.1) => match duplicates {
                    Duplicates::Reject => return Err(Error::DuplicateEdge(arc.0, arc.1)),
                    Duplicates::Sum => last.2 += arc.2,
                },
                _ => merged.push(arc),
            }
        }
        if !directed {
            let mirrored: Vec<_> = merged.iter().map(|&(s, t, w)| (t, s, w)).collect();
            merged.extend(mirrored);
            merged.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        }
        Ok(Self::from_sorted_arcs(n, directed, &merged))
    }

    /// Unit-weight convenience constructor.
    pub fn unweighted(n: usize, edges: &[(usize, usize)], directed: bool) -> Result<Graph> {
        let triples: Vec<_> = edges.iter().map(|&(s, t)| (s, t, 1.0)).collect();
        Self::build(n, &triples, directed)
    }

    fn from_sorted_arcs(n: usize, directed: bool, arcs: &[(usize, usize, f64)]) -> Graph {
        let mut offsets = vec![0usize; n + 1];
        for &(s, _, _) in arcs {
            offsets[s + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        Graph {
            n,
            directed,
            offsets,
            targets: arcs.iter().map(|a| a.1).collect(),
            weights: arcs.iter().map(|a| a.2).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Number of stored arcs; twice the edge count for undirected graphs.
    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }

    pub fn edge_count(&self) -> usize {
        if self.directed {
            self.arc_count()
        } else {
            self.arc_count() / 2
        }
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let span = self.offsets[i]..self.offsets[i + 1];
        self.targets[span.clone()]
            .iter()
            .copied()
            .zip(self.weights[span].iter().copied())
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| self.row(i).map(move |(j, w)| (i, j, w)))
    }

    /// Edge list suitable for `build`: undirected edges listed once with
    /// source < target.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        self.arcs()
            .filter(|&(i, j, _)| self.directed || i < j)
            .collect()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.iter().any(|&w| w != 1.0)
    }

    pub fn has_integer_weights(&self) -> bool {
        self.weights
            .iter()
            .all(|&w| crate::value::exact_int(w).is_some())
    }

    /// Σᵢⱼ aᵢⱼ, counting both arcs of undirected edges.
    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Same structure with every weight multiplied by `factor`.
    pub fn scale_weights(&self, factor: f64) -> Result<Graph> {
        if !(factor > 0.0) || !factor.is_finite() {
            return Err(Error::invalid(format!("weight factor {factor} must be positive")));
        }
        let mut g = self.clone();
        g.weights.iter_mut().for_each(|w| *w *= factor);
        Ok(g)
    }

    /// d = A𝟙 for undirected graphs.
    pub fn degree_vector(&self) -> Result<NodeVector> {
        if self.directed {
            return Err(Error::RequiresUndirected(
                "use out_degree_vector or in_degree_vector on directed graphs",
            ));
        }
        Ok(self.row_sums("degree"))
    }

    /// d_out = A𝟙.
    pub fn out_degree_vector(&self) -> NodeVector {
        self.row_sums(if self.directed { "out_degree" } else { "degree" })
    }

    /// d_in = Aᵀ𝟙.
    pub fn in_degree_vector(&self) -> NodeVector {
        let mut d = vec![0.0; self.n];
        for (_, j, w) in self.arcs() {
            d[j] += w;
        }
        NodeVector {
            label: if self.directed { "in_degree" } else { "degree" }.into(),
            values: d,
        }
    }

    pub fn degrees(&self, orientation: Orientation) -> Result<NodeVector> {
        match orientation {
            Orientation::Undirected => self.degree_vector(),
            Orientation::Out => Ok(self.out_degree_vector()),
            Orientation::In => Ok(self.in_degree_vector()),
        }
    }

    fn row_sums(&self, label: &str) -> NodeVector {
        NodeVector {
            label: label.into(),
            values: (0..self.n).map(|i| self.row(i).map(|(_, w)| w).sum()).collect(),
        }
    }

    /// Weak connectivity for directed graphs, ordinary connectivity otherwise.
    pub fn is_connected(&self) -> bool {
        let t = self.transpose();
        let seen = reach(self.n, 0, |u| {
            self.row(u).map(|(v, _)| v).chain(t.row(u).map(|(v, _)| v)).collect()
        });
        seen.iter().all(|&s| s)
    }

    pub fn is_strongly_connected(&self) -> bool {
        let forward = reach(self.n, 0, |u| self.row(u).map(|(v, _)| v).collect());
        if !forward.iter().all(|&s| s) {
            return false;
        }
        let t = self.transpose();
        let backward = reach(self.n, 0, |u| t.row(u).map(|(v, _)| v).collect());
        backward.iter().all(|&s| s)
    }

    /// Whether the graph satisfies the irreducibility premise of the
    /// Perron–Frobenius results: connected if undirected, strongly
    /// connected if directed.
    pub fn is_irreducible(&self) -> bool {
        if self.directed {
            self.is_strongly_connected()
        } else {
            self.is_connected()
        }
    }

    /// Strongly connected components (connected components when
    /// undirected), each sorted, listed by smallest member.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        let t = self.transpose();
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let fwd = reach(self.n, start, |u| self.row(u).map(|(v, _)| v).collect());
            let bwd = reach(self.n, start, |u| t.row(u).map(|(v, _)| v).collect());
            let members: Vec<usize> = (0..self.n)
                .filter(|&v| fwd[v] && bwd[v] && comp[v] == usize::MAX)
                .collect();
            for &v in &members {
                comp[v] = out.len();
            }
            out.push(members);
        }
        out
    }

    /// Subgraph induced by `nodes` (relabelled in the given order), or
    /// `None` when it has no edges.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Option<Graph> {
        let mut index = vec![usize::MAX; self.n];
        for (k, &v) in nodes.iter().enumerate() {
            index[v] = k;
        }
        let mut arcs = Vec::new();
        for &v in nodes {
            for (u, w) in self.row(v) {
                if index[u] != usize::MAX {
                    arcs.push((index[v], index[u], w));
                }
            }
        }
        if arcs.is_empty() {
            return None;
        }
        arcs.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        Some(Self::from_sorted_arcs(nodes.len(), self.directed, &arcs))
    }

    /// Common degree of the selected degree vector, if it is constant.
    pub fn is_regular(&self, orientation: Orientation) -> Result<Option<f64>> {
        let d = self.degrees(orientation)?.values;
        let first = d[0];
        let regular = if self.is_weighted() {
            let scale = d.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            d.iter()
                .all(|&v| (v - first).abs() <= WEIGHTED_REGULAR_RTOL * scale)
        } else {
            d.iter().all(|&v| v == first)
        };
        Ok(regular.then_some(first))
    }

    /// Regular with respect to every orientation that applies.
    pub fn is_regular_any(&self) -> bool {
        if self.directed {
            matches!(self.is_regular(Orientation::Out), Ok(Some(_)))
                && matches!(self.is_regular(Orientation::In), Ok(Some(_)))
        } else {
            matches!(self.is_regular(Orientation::Undirected), Ok(Some(_)))
        }
    }

    pub fn transpose(&self) -> Graph {
        if !self.directed {
            return self.clone();
        }
        let mut arcs: Vec<_> = self.arcs().map(|(i, j, w)| (j, i, w)).collect();
        arcs.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        Self::from_sorted_arcs(self.n, true, &arcs)
    }

    /// Re-checks every structural invariant.
    pub fn audit(&self) -> Result<()> {
        if self.arc_count() == 0 {
            return Err(Error::NoEdges);
        }
        for i in 0..self.n {
            let mut prev = None;
            for (j, w) in self.row(i) {
                if j >= self.n {
                    return Err(Error::NodeOutOfRange { node: j, n: self.n });
                }
                if j == i {
                    return Err(Error::SelfLoop(i));
                }
                if !(w > 0.0) {
                    return Err(Error::NonPositiveWeight {
                        tail: i,
                        head: j,
                        weight: w,
                    });
                }
                if prev.is_some_and(|p| p >= j) {
                    return Err(Error::DuplicateEdge(i, j));
                }
                prev = Some(j);
            }
        }
        if !self.directed {
            let t = {
                let mut arcs: Vec<_> = self.arcs().map(|(i, j, w)| (j, i, w)).collect();
                arcs.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
                arcs
            };
            if !t.iter().copied().eq(self.arcs()) {
                return Err(Error::invalid("undirected adjacency is not symmetric"));
            }
        }
        Ok(())
    }
}

fn reach(n: usize, start: usize, neighbours: impl Fn(usize) -> Vec<usize>) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(u) = queue.pop_front() {
        for v in neighbours(u) {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}
