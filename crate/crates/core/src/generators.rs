//! Deterministic graph families: the worked examples, parametric families
//! and seeded random models, plus exhaustive enumeration of small graphs.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::SplitMix64;

const MAX_ENUMERATION_NODES: usize = 7;
const REGULAR_RESTARTS: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// The 8-node friendship example (degrees 4,1,1,1,3,2,3,1).
    Figure1,
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    /// K₁,ₙ₋₁ with hub 0.
    StarUndirected { n: usize },
    /// Arcs 0 → j for every other node.
    StarOut { n: usize },
    /// Arcs j → 0 for every other node.
    StarIn { n: usize },
    /// Strongly connected hub-and-cycle digraph with
    /// d_out = (n−1, 1, …, 1, 2) and d_in = (1, 2, …, 2).
    HubCycle { n: usize },
    /// Adjacency rows (0,1,1), (0,0,1), (1,0,0).
    ThreeNode,
    DirectedCycle { n: usize },
    KRegularRandom { n: usize, k: usize },
    ErdosRenyi { n: usize, p: f64 },
    ErdosRenyiDirected { n: usize, p: f64 },
    BarabasiAlbert { n: usize, m: usize },
    /// Uniform labelled tree via a random Prüfer sequence.
    RandomTree { n: usize },
    /// Star K₁,ₘ whose first leaf is joined by one edge to a clique Kₖ.
    StarClique { m: usize, k: usize },
}

impl Family {
    pub fn is_random(&self) -> bool {
        matches!(
            self,
            Family::KRegularRandom { .. }
                | Family::ErdosRenyi { .. }
                | Family::ErdosRenyiDirected { .. }
                | Family::BarabasiAlbert { .. }
                | Family::RandomTree { .. }
        )
    }

    pub fn is_directed(&self) -> bool {
        matches!(
            self,
            Family::StarOut { .. }
                | Family::StarIn { .. }
                | Family::HubCycle { .. }
                | Family::ThreeNode
                | Family::DirectedCycle { .. }
                | Family::ErdosRenyiDirected { .. }
        )
    }

    /// Builds a family from a name and loose parameters, as given on a
    /// command line. Missing parameters are reported by name.
    pub fn from_parts(
        name: &str,
        n: Option<usize>,
        k: Option<usize>,
        p: Option<f64>,
        m: Option<usize>,
    ) -> Result<Family> {
        let need = |v: Option<usize>, flag: &str| {
            v.ok_or_else(|| Error::invalid(format!("family {name} needs --{flag}")))
        };
        let need_p = || p.ok_or_else(|| Error::invalid(format!("family {name} needs --p")));
        Ok(match name {
            "figure1" => Family::Figure1,
            "path" => Family::Path { n: need(n, "n")? },
            "cycle" => Family::Cycle { n: need(n, "n")? },
            "complete" => Family::Complete { n: need(n, "n")? },
            "star_undirected" | "star" => Family::StarUndirected { n: need(n, "n")? },
            "star_out" => Family::StarOut { n: need(n, "n")? },
            "star_in" => Family::StarIn { n: need(n, "n")? },
            "hub_cycle" => Family::HubCycle { n: need(n, "n")? },
            "three_node" => Family::ThreeNode,
            "directed_cycle" => Family::DirectedCycle { n: need(n, "n")? },
            "k_regular_random" => Family::KRegularRandom {
                n: need(n, "n")?,
                k: need(k, "k")?,
            },
            "erdos_renyi" => Family::ErdosRenyi {
                n: need(n, "n")?,
                p: need_p()?,
            },
            "erdos_renyi_directed" => Family::ErdosRenyiDirected {
                n: need(n, "n")?,
                p: need_p()?,
            },
            "barabasi_albert" => Family::BarabasiAlbert {
                n: need(n, "n")?,
                m: need(m, "m")?,
            },
            "random_tree" => Family::RandomTree { n: need(n, "n")? },
            "star_clique" => Family::StarClique {
                m: need(m, "m")?,
                k: need(k, "k")?,
            },
            other => return Err(Error::invalid(format!("unknown family {other:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    #[serde(flatten)]
    pub family: Family,
    pub seed: u64,
}

impl FamilySpec {
    pub fn new(family: Family) -> Self {
        FamilySpec { family, seed: 0 }
    }

    pub fn seeded(family: Family, seed: u64) -> Self {
        FamilySpec { family, seed }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        FamilySpec {
            family: self.family.clone(),
            seed,
        }
    }
}

fn at_least(name: &str, value: usize, min: usize) -> Result<()> {
    if value < min {
        return Err(Error::invalid(format!("{name} = {value} must be at least {min}")));
    }
    Ok(())
}

pub fn make(spec: &FamilySpec) -> Result<Graph> {
    let mut rng = SplitMix64::new(spec.seed);
    match spec.family {
        Family::Figure1 => Graph::unweighted(
            8,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (4, 5),
                (4, 6),
                (5, 6),
                (6, 7),
            ],
            false,
        ),
        Family::Path { n } => {
            at_least("n", n, 2)?;
            let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
            Graph::unweighted(n, &edges, false)
        }
        Family::Cycle { n } => {
            at_least("n", n, 3)?;
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::unweighted(n, &edges, false)
        }
        Family::Complete { n } => {
            at_least("n", n, 2)?;
            let edges: Vec<_> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect();
            Graph::unweighted(n, &edges, false)
        }
        Family::StarUndirected { n } => {
            at_least("n", n, 2)?;
            let edges: Vec<_> = (1..n).map(|j| (0, j)).collect();
            Graph::unweighted(n, &edges, false)
        }
        Family::StarOut { n } => {
            at_least("n", n, 2)?;
            let edges: Vec<_> = (1..n).map(|j| (0, j)).collect();
            Graph::unweighted(n, &edges, true)
        }
        Family::StarIn { n } => {
            at_least("n", n, 2)?;
            let edges: Vec<_> = (1..n).map(|j| (j, 0)).collect();
            Graph::unweighted(n, &edges, true)
        }
        Family::HubCycle { n } => {
            at_least("n", n, 3)?;
            // Hub to everyone, a chain through 1..n-1, and two arcs back
            // out of the last node (to the hub and to node 1).
            let mut edges: Vec<_> = (1..n).map(|j| (0, j)).collect();
            edges.extend((1..n - 1).map(|i| (i, i + 1)));
            edges.push((n - 1, 0));
            edges.push((n - 1, 1));
            Graph::unweighted(n, &edges, true)
        }
        Family::ThreeNode => Graph::unweighted(3, &[(0, 1), (0, 2), (1, 2), (2, 0)], true),
        Family::DirectedCycle { n } => {
            at_least("n", n, 2)?;
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::unweighted(n, &edges, true)
        }
        Family::KRegularRandom { n, k } => k_regular(n, k, &mut rng),
        Family::ErdosRenyi { n, p } => {
            check_probability(p)?;
            at_least("n", n, 2)?;
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.next_f64() < p {
                        edges.push((i, j));
                    }
                }
            }
            Graph::unweighted(n, &edges, false)
        }
        Family::ErdosRenyiDirected { n, p } => {
            check_probability(p)?;
            at_least("n", n, 2)?;
            let mut edges = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j && rng.next_f64() < p {
                        edges.push((i, j));
                    }
                }
            }
            Graph::unweighted(n, &edges, true)
        }
        Family::BarabasiAlbert { n, m } => {
            at_least("m", m, 1)?;
            if n <= m {
                return Err(Error::invalid(format!("barabasi_albert needs n > m (n = {n}, m = {m})")));
            }
            let mut edges: Vec<(usize, usize)> = (0..=m)
                .flat_map(|i| (i + 1..=m).map(move |j| (i, j)))
                .collect();
            // Every endpoint occurrence; sampling from it is degree-proportional.
            let mut ends: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
            if ends.is_empty() {
                ends.push(0);
            }
            for v in m + 1..n {
                let mut chosen = Vec::with_capacity(m);
                while chosen.len() < m {
                    let t = ends[rng.index(ends.len())];
                    if !chosen.contains(&t) {
                        chosen.push(t);
                    }
                }
                for &t in &chosen {
                    edges.push((t, v));
                    ends.push(t);
                    ends.push(v);
                }
            }
            Graph::unweighted(n, &edges, false)
        }
        Family::RandomTree { n } => {
            at_least("n", n, 2)?;
            let prufer: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.index(n)).collect();
            Graph::unweighted(n, &decode_prufer(n, &prufer), false)
        }
        Family::StarClique { m, k } => {
            at_least("m", m, 1)?;
            at_least("k", k, 2)?;
            let mut edges: Vec<_> = (1..=m).map(|j| (0, j)).collect();
            let base = m + 1;
            for a in 0..k {
                for b in a + 1..k {
                    edges.push((base + a, base + b));
                }
            }
            edges.push((1, base));
            Graph::unweighted(m + 1 + k, &edges, false)
        }
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("p = {p} must lie in [0, 1]")));
    }
    Ok(())
}

fn decode_prufer(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).expect("prufer leaf");
        edges.push((leaf.min(v), leaf.max(v)));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Pairing model: repeatedly join two random free stubs, refusing pairs
/// that would create a loop or a repeated edge; start over when stuck.
fn k_regular(n: usize, k: usize, rng: &mut SplitMix64) -> Result<Graph> {
    at_least("k", k, 1)?;
    if k >= n || (n * k) % 2 != 0 {
        return Err(Error::invalid(format!(
            "k_regular needs k < n and n*k even (n = {n}, k = {k})"
        )));
    }
    'restart: for _ in 0..REGULAR_RESTARTS {
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, k)).collect();
        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        let mut edges = Vec::with_capacity(n * k / 2);
        while !stubs.is_empty() {
            let mut failures = 0;
            loop {
                let a = rng.index(stubs.len());
                let b = rng.index(stubs.len());
                let (u, v) = (stubs[a], stubs[b]);
                let key = (u.min(v), u.max(v));
                if a != b && u != v && !seen.contains(&key) {
                    seen.insert(key);
                    edges.push(key);
                    let (hi, lo) = (a.max(b), a.min(b));
                    stubs.swap_remove(hi);
                    stubs.swap_remove(lo);
                    break;
                }
                failures += 1;
                if failures > 50 * stubs.len() + 50 {
                    continue 'restart;
                }
            }
        }
        return Graph::unweighted(n, &edges, false);
    }
    Err(Error::invalid(format!(
        "no simple {k}-regular graph on {n} nodes after {REGULAR_RESTARTS} restarts"
    )))
}

/// Every connected simple undirected labelled graph on 2..=max_n nodes.
pub fn enumerate_connected(max_n: usize) -> Result<ConnectedGraphs> {
    if max_n > MAX_ENUMERATION_NODES {
        return Err(Error::invalid(format!(
            "max_n = {max_n} exceeds the enumeration limit of {MAX_ENUMERATION_NODES}"
        )));
    }
    Ok(ConnectedGraphs::new(max_n))
}

/// Iterator over edge-subset bitmasks, filtered by connectivity.
#[derive(Clone, Debug)]
pub struct ConnectedGraphs {
    max_n: usize,
    n: usize,
    pairs: Vec<(usize, usize)>,
    mask: u64,
}

impl ConnectedGraphs {
    fn new(max_n: usize) -> Self {
        let mut it = ConnectedGraphs {
            max_n,
            n: 1,
            pairs: Vec::new(),
            mask: 0,
        };
        it.advance_n();
        it
    }

    fn advance_n(&mut self) {
        self.n += 1;
        let n = self.n;
        self.pairs = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        self.mask = 1;
    }

    fn connected(&self, mask: u64) -> bool {
        let mut adj = [0u8; MAX_ENUMERATION_NODES];
        for (b, &(i, j)) in self.pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
        let full: u8 = ((1u16 << self.n) - 1) as u8;
        let mut seen: u8 = 1;
        let mut frontier: u8 = 1;
        while frontier != 0 {
            let mut next = 0u8;
            for v in 0..self.n {
                if frontier >> v & 1 == 1 {
                    next |= adj[v];
                }
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == full
    }
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.n <= self.max_n {
            let limit = 1u64 << self.pairs.len();
            while self.mask < limit {
                let mask = self.mask;
                self.mask += 1;
                if self.connected(mask) {
                    let edges: Vec<_> = self
                        .pairs
                        .iter()
                        .enumerate()
                        .filter(|(b, _)| mask >> b & 1 == 1)
                        .map(|(_, &e)| e)
                        .collect();
                    return Some(Graph::unweighted(self.n, &edges, false).expect("valid subset"));
                }
            }
            self.advance_n();
        }
        None
    }
}
