//! Sweeps, searches and batch checks built on the other modules.

use std::collections::BTreeMap;

use log::{info, warn};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::centrality::{self, CentralitySpec, Measure};
use crate::conditions::{self, ConditionReport};
use crate::error::{Error, Result};
use crate::generators::{self, FamilySpec};
use crate::graph::{Graph, Orientation};
use crate::paradox::{self, ParadoxReport};
use crate::rng;
use crate::spectral::{self, SeriesCoefficients};
use crate::value::Value;

/// Katz α used by the batch suite, as a fraction of 1/ρ(A).
pub const SMALL_ALPHA_FRACTION: f64 = 1e-3;
pub const SUITE_BETA: f64 = 1.0;
/// Regular graphs must give gaps within this (scaled by the node average).
pub const REGULAR_TOL: f64 = 1e-8;
const MAX_CONNECT_RETRIES: u64 = 10_000;
const MAX_HALVINGS: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapAt {
    pub alpha: f64,
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub rho: f64,
    pub alphas: Vec<f64>,
    pub gaps: Vec<f64>,
    /// gap′(0) extrapolated from the two smallest α.
    pub derivative_at_zero: f64,
    /// (dᵀd − ‖d‖₁²/n)/‖d‖₁, the exact small-α slope.
    pub predicted_derivative: f64,
    pub min_gap: GapAt,
    pub violations: Vec<f64>,
}

fn require_connected_undirected(g: &Graph) -> Result<()> {
    if g.is_directed() {
        return Err(Error::RequiresUndirected("Katz sweeps are run on undirected graphs"));
    }
    if !g.is_connected() {
        return Err(Error::NotIrreducible("connected"));
    }
    Ok(())
}

fn katz_report(g: &Graph, alpha: f64, rho: f64, tol: f64) -> Result<ParadoxReport> {
    let x = spectral::katz_action_with_radius(g, alpha, false, spectral::DEFAULT_KATZ_TOL, rho)?;
    paradox::paradox_report(g, &x, Orientation::Undirected, tol)
}

/// (dᵀd − ‖d‖₁²/n)/‖d‖₁ for an undirected graph.
pub fn predicted_katz_slope(g: &Graph) -> Result<f64> {
    let d = g.degree_vector()?;
    let w1 = d.sum();
    let w2: f64 = d.values.iter().map(|v| v * v).sum();
    Ok((w2 - w1 * w1 / g.n() as f64) / w1)
}

/// gap(α)/α for the Katz paradox at α = fraction/ρ(A).
pub fn katz_gap_slope(g: &Graph, fraction: f64) -> Result<f64> {
    require_connected_undirected(g)?;
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::invalid(format!("fraction {fraction} must lie in (0, 1)")));
    }
    let rho = spectral::spectral_radius(g)?;
    let alpha = fraction / rho;
    Ok(katz_report(g, alpha, rho, paradox::DEFAULT_TOL)?.gap / alpha)
}

/// Katz paradox gap on the grid α = j/(grid_size+1)/ρ(A), j = 1..=grid_size.
pub fn katz_alpha_sweep(g: &Graph, grid_size: usize, tol: f64) -> Result<SweepResult> {
    require_connected_undirected(g)?;
    if grid_size < 2 {
        return Err(Error::invalid(format!("grid size {grid_size} must be at least 2")));
    }
    let rho = spectral::spectral_radius(g)?;
    let alphas: Vec<f64> = (1..=grid_size)
        .map(|j| j as f64 / (grid_size + 1) as f64 / rho)
        .collect();
    let gaps = alphas
        .iter()
        .map(|&a| katz_report(g, a, rho, tol).map(|r| r.gap))
        .collect::<Result<Vec<_>>>()?;

    let (a1, a2) = (alphas[0], alphas[1]);
    let (s1, s2) = (gaps[0] / a1, gaps[1] / a2);
    let derivative_at_zero = s1 - a1 * (s2 - s1) / (a2 - a1);

    let min_gap = alphas
        .iter()
        .zip(&gaps)
        .map(|(&alpha, &gap)| GapAt { alpha, gap })
        .fold(GapAt { alpha: f64::NAN, gap: f64::INFINITY }, |m, p| {
            if p.gap < m.gap {
                p
            } else {
                m
            }
        });
    let violations = alphas
        .iter()
        .zip(&gaps)
        .filter(|(_, &gap)| gap < -tol)
        .map(|(&a, _)| a)
        .collect();
    Ok(SweepResult {
        rho,
        alphas,
        gaps,
        derivative_at_zero,
        predicted_derivative: predicted_katz_slope(g)?,
        min_gap,
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum SearchSource {
    Family { spec: FamilySpec },
    Exhaustive { max_n: usize },
}

/// A graph on which the inequality failed, stored with everything needed
/// to check it again.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub n: usize,
    pub edges: Vec<(usize, usize, f64)>,
    pub connected: bool,
    pub report: ConditionReport,
}

impl Violation {
    fn new(trial: u64, seed: Option<u64>, g: &Graph, report: ConditionReport) -> Self {
        Violation {
            trial,
            seed,
            n: g.n(),
            edges: g.edges(),
            connected: g.is_connected(),
            report,
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        Graph::build(self.n, &self.edges, false)
    }

    /// Re-run the check from the stored edge list alone.
    pub fn replay(&self) -> Result<ConditionReport> {
        match self.report.condition {
            conditions::ConditionId::Lagarias { r, s } => conditions::check_lagarias(&self.graph()?, r, s),
            other => Err(Error::invalid(format!("cannot replay {other}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    #[serde(flatten)]
    pub source: SearchSource,
    pub r: usize,
    pub s: usize,
    pub trials: u64,
    pub violations: Vec<Violation>,
    pub min_slack: Option<Value>,
    pub min_slack_trial: Option<u64>,
}

#[derive(Clone, Debug, Default)]
struct Partial {
    min: Option<(Value, u64)>,
    violations: Vec<Violation>,
}

impl Partial {
    fn add(mut self, trial: u64, seed: Option<u64>, g: &Graph, report: ConditionReport) -> Self {
        let better = match &self.min {
            None => true,
            Some((m, t)) => less(&report.slack, m) || (report.slack == *m && trial < *t),
        };
        if better {
            self.min = Some((report.slack, trial));
        }
        if !report.holds {
            self.violations.push(Violation::new(trial, seed, g, report));
        }
        self
    }

    fn merge(mut self, other: Partial) -> Self {
        self.min = match (self.min, other.min) {
            (Some(a), Some(b)) => Some(if less(&b.0, &a.0) || (b.0 == a.0 && b.1 < a.1) { b } else { a }),
            (a, b) => a.or(b),
        };
        self.violations.extend(other.violations);
        self
    }

    fn finish(mut self, source: SearchSource, r: usize, s: usize, trials: u64) -> SearchOutcome {
        self.violations.sort_by_key(|v| v.trial);
        SearchOutcome {
            source,
            r,
            s,
            trials,
            violations: self.violations,
            min_slack: self.min.map(|m| m.0),
            min_slack_trial: self.min.map(|m| m.1),
        }
    }
}

fn less(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Exact(x), Value::Exact(y)) => x < y,
        _ => a.to_f64() < b.to_f64(),
    }
}

fn check_odd_order(r: usize, s: usize) -> Result<()> {
    if r == 0 || s == 0 {
        return Err(Error::invalid("r and s must be at least 1"));
    }
    if (r + s) % 2 == 0 {
        return Err(Error::invalid(
            "even order is theorem-guaranteed; search needs r + s odd",
        ));
    }
    Ok(())
}

/// Check n·𝟙ᵀA^{r+s}𝟙 ≥ 𝟙ᵀA^r𝟙·𝟙ᵀA^s𝟙 on `trials` graphs from `spec`.
///
/// Trial t uses seed `derive(spec.seed, t)`, so the outcome does not depend
/// on how trials are scheduled. Deterministic families are checked once.
pub fn search_lagarias_violation(spec: &FamilySpec, r: usize, s: usize, trials: u64) -> Result<SearchOutcome> {
    check_odd_order(r, s)?;
    if spec.family.is_directed() {
        return Err(Error::RequiresUndirected("the walk inequality search needs an undirected family"));
    }
    let trials = if spec.family.is_random() { trials } else { trials.min(1) };
    let partial = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<Partial> {
            let seed = spec.family.is_random().then(|| rng::derive(spec.seed, t));
            let g = generators::make(&spec.with_seed(seed.unwrap_or(spec.seed)))?;
            let report = conditions::check_lagarias(&g, r, s)?;
            Ok(Partial::default().add(t, seed, &g, report))
        })
        .try_reduce(Partial::default, |a, b| Ok(a.merge(b)))?;
    Ok(partial.finish(SearchSource::Family { spec: spec.clone() }, r, s, trials))
}

/// The same search over every connected labelled graph with n ≤ max_n.
pub fn search_lagarias_exhaustive(max_n: usize, r: usize, s: usize) -> Result<SearchOutcome> {
    check_odd_order(r, s)?;
    let graphs = generators::enumerate_connected(max_n)?;
    let (count, partial) = graphs
        .enumerate()
        .par_bridge()
        .map(|(i, g)| -> Result<(u64, Partial)> {
            let report = conditions::check_lagarias(&g, r, s)?;
            Ok((1, Partial::default().add(i as u64, None, &g, report)))
        })
        .try_reduce(|| (0, Partial::default()), |a, b| Ok((a.0 + b.0, a.1.merge(b.1))))?;
    Ok(partial.finish(SearchSource::Exhaustive { max_n }, r, s, count))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub coefficients: SeriesCoefficients,
    pub epsilon: f64,
    pub halvings: usize,
    pub condition: ConditionReport,
    pub report: ParadoxReport,
}

/// Power-series centrality (1, ε, 1) whose paradox fails on `g`.
///
/// With W_k = 𝟙ᵀA^k𝟙 the gap is
/// ε(W₂/W₁ − W₁/n) + (W₃ − W₂W₁/n)/W₁, so it is negative once
/// ε < |W₃ − W₂W₁/n| / (W₂ − W₁²/n). ε starts at half that bound (or the
/// requested value if smaller) and is halved until the gap is verified
/// negative.
pub fn build_power_series_counterexample(g: &Graph, epsilon: f64) -> Result<Counterexample> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::invalid(format!("epsilon {epsilon} must be positive")));
    }
    let condition = conditions::check_suff1a(g, 2)?;
    if condition.holds {
        return Err(Error::NotViolating(format!(
            "{} holds with slack {}",
            condition.condition, condition.slack
        )));
    }
    let n = Value::int(g.n() as i128);
    let w1 = spectral::walk_count(g, 1)?;
    let w2 = spectral::walk_count(g, 2)?;
    let corrective = w2.checked_sub(&w1.checked_mul(&w1)?.checked_div(&n)?)?.to_f64();
    let bound = if corrective > 0.0 {
        condition.slack.to_f64().abs() / (2.0 * corrective)
    } else {
        f64::INFINITY
    };
    let mut eps = epsilon.min(bound);
    for halvings in 0..=MAX_HALVINGS {
        let coefficients = SeriesCoefficients::new(vec![1.0, eps, 1.0])?;
        let x = spectral::series_action(g, &coefficients, false)?;
        let report = paradox::paradox_report(g, &x, Orientation::Undirected, 0.0)?;
        if report.gap < 0.0 {
            return Ok(Counterexample {
                coefficients,
                epsilon: eps,
                halvings,
                condition,
                report,
            });
        }
        eps /= 2.0;
    }
    Err(Error::NotViolating(format!(
        "no negative gap after {MAX_HALVINGS} halvings of epsilon"
    )))
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckStats {
    pub count: u64,
    /// Checks that came out false. Only informational checks may have any.
    pub failures: u64,
    pub min_gap: Option<f64>,
}

impl CheckStats {
    fn record(&mut self, gap: f64, ok: bool) {
        self.count += 1;
        if !ok {
            self.failures += 1;
        }
        self.min_gap = Some(self.min_gap.map_or(gap, |m| m.min(gap)));
    }

    fn merge(&mut self, other: &CheckStats) {
        self.count += other.count;
        self.failures += other.failures;
        self.min_gap = match (self.min_gap, other.min_gap) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    #[serde(flatten)]
    pub source: SearchSource,
    pub trials: u64,
    pub tol: f64,
    /// Extra draws needed to obtain connected graphs.
    pub retries: u64,
    pub regular_graphs: u64,
    /// Theorem-backed checks: any failure aborts the suite.
    pub checks: BTreeMap<String, CheckStats>,
    /// Reported but not asserted.
    pub observations: BTreeMap<String, CheckStats>,
}

#[derive(Default)]
struct TrialStats {
    retries: u64,
    regular: u64,
    checks: BTreeMap<String, CheckStats>,
    observations: BTreeMap<String, CheckStats>,
}

fn failure(g: &Graph, trial: u64, what: &str, detail: impl std::fmt::Display) -> Error {
    Error::TheoremViolation(format!(
        "trial {trial}: {what} ({detail}); graph:\n{}",
        crate::io::write_edge_list(g)
    ))
}

fn draw(spec: &FamilySpec, trial: u64) -> Result<(Graph, u64)> {
    let seed = rng::derive(spec.seed, trial);
    let g = generators::make(&spec.with_seed(seed))?;
    if g.is_directed() || g.is_connected() {
        return Ok((g, 0));
    }
    for attempt in 1..=MAX_CONNECT_RETRIES {
        let g = generators::make(&spec.with_seed(rng::derive(seed, attempt)))?;
        if g.is_connected() {
            info!("trial {trial}: connected graph after {attempt} retries");
            return Ok((g, attempt));
        }
    }
    Err(Error::invalid(format!(
        "no connected graph after {MAX_CONNECT_RETRIES} retries; raise p or n"
    )))
}

fn undirected_trial(g: &Graph, trial: u64, tol: f64, stats: &mut TrialStats) -> Result<()> {
    let regular = g.is_regular_any();
    if regular {
        stats.regular += 1;
    }
    let rho = spectral::spectral_radius(g)?;
    let measures = [
        ("eigenvector", Measure::Eigenvector),
        ("sinh", Measure::Odd { beta: SUITE_BETA }),
        ("katz_small_alpha", Measure::Katz { alpha: Some(SMALL_ALPHA_FRACTION / rho) }),
        ("degree", Measure::Degree),
    ];
    for (name, measure) in measures {
        let x = centrality::compute(g, &CentralitySpec::undirected(measure))?;
        let r = paradox::paradox_report(g, &x, Orientation::Undirected, tol)?;
        let mut ok = r.holds;
        if regular {
            ok &= r.gap.abs() <= REGULAR_TOL * r.node_average.abs().max(1.0);
        }
        if !ok {
            return Err(failure(g, trial, &format!("{name} paradox gap"), r.gap));
        }
        stats.checks.entry(name.into()).or_default().record(r.gap, ok);
    }
    for k in [1, 3] {
        let c = conditions::check_suff1a(g, k)?;
        if !c.holds {
            return Err(failure(g, trial, &c.condition.to_string(), c.slack));
        }
        stats.checks.entry(format!("suff1a_k{k}")).or_default().record(c.slack.to_f64(), true);
    }
    for (r, s) in [(1, 1), (2, 2), (1, 3)] {
        let c = conditions::check_lagarias(g, r, s)?;
        stats.checks.entry(format!("lagarias_{r}_{s}")).or_default().record(c.slack.to_f64(), true);
    }
    let c = conditions::check_lagarias(g, 2, 1)?;
    stats.observations.entry("lagarias_2_1".into()).or_default().record(c.slack.to_f64(), c.holds);
    Ok(())
}

fn directed_trial(g: &Graph, trial: u64, tol: f64, stats: &mut TrialStats) -> Result<()> {
    let report = paradox::directed_degree_report(g, tol)?;
    for (name, r, asserted) in [
        ("out_out", &report.out_out, true),
        ("in_in", &report.in_in, true),
        ("out_in", &report.out_in, false),
        ("in_out", &report.in_out, false),
    ] {
        let map = if asserted { &mut stats.checks } else { &mut stats.observations };
        map.entry(name.into()).or_default().record(r.gap, r.holds);
    }
    // First-order Katz term: always ≥ 0, zero exactly for a common out-degree.
    let c = conditions::check_suff1_directed(g, 1)?;
    let common_out = g.is_regular(Orientation::Out)?.is_some();
    if !c.holds || c.slack.is_zero(0.0) != common_out {
        return Err(failure(g, trial, "first-order out-degree Katz term", c.slack));
    }
    stats.checks.entry("suff1_directed_k1".into()).or_default().record(c.slack.to_f64(), true);

    if g.is_strongly_connected() {
        let rho = spectral::spectral_radius(g)?;
        let x = spectral::katz_action_with_radius(
            g,
            SMALL_ALPHA_FRACTION / rho,
            false,
            spectral::DEFAULT_KATZ_TOL,
            rho,
        )?;
        let r = paradox::paradox_report(g, &x, Orientation::Out, tol)?;
        stats.observations.entry("katz_broadcast_out_small_alpha".into()).or_default().record(r.gap, r.holds);
        for side in [spectral::Side::Left, spectral::Side::Right] {
            // Cross-checks the spectral condition against the eigenvector gap.
            let c = conditions::check_spectral_directed(g, side)?;
            let name = format!("spectral_directed_{side:?}").to_lowercase();
            stats.observations.entry(name).or_default().record(c.slack.to_f64(), c.holds);
        }
    }
    Ok(())
}

/// Run every theorem-backed check on `trials` graphs from `spec`.
///
/// Undirected families are redrawn until connected. Any failed assertion
/// aborts with [`Error::TheoremViolation`] carrying the graph's edge list.
pub fn random_theorem_suite(spec: &FamilySpec, trials: u64, tol: f64) -> Result<SuiteSummary> {
    if !(tol >= 0.0) {
        return Err(Error::invalid(format!("tolerance {tol} must be nonnegative")));
    }
    let results: Vec<Result<TrialStats>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let (g, retries) = draw(spec, t)?;
            let mut stats = TrialStats { retries, ..Default::default() };
            if g.is_directed() {
                directed_trial(&g, t, tol, &mut stats)?;
            } else {
                undirected_trial(&g, t, tol, &mut stats)?;
            }
            Ok(stats)
        })
        .collect();

    summarise(SearchSource::Family { spec: spec.clone() }, trials, tol, results)
}

/// The undirected checks of [`random_theorem_suite`] on every connected
/// labelled graph with n ≤ max_n.
pub fn exhaustive_theorem_suite(max_n: usize, tol: f64) -> Result<SuiteSummary> {
    let mut results: Vec<(usize, Result<TrialStats>)> = generators::enumerate_connected(max_n)?
        .enumerate()
        .par_bridge()
        .map(|(i, g)| {
            let mut stats = TrialStats::default();
            (i, undirected_trial(&g, i as u64, tol, &mut stats).map(|_| stats))
        })
        .collect();
    results.sort_by_key(|r| r.0);
    let trials = results.len() as u64;
    summarise(
        SearchSource::Exhaustive { max_n },
        trials,
        tol,
        results.into_iter().map(|r| r.1).collect(),
    )
}

fn summarise(source: SearchSource, trials: u64, tol: f64, results: Vec<Result<TrialStats>>) -> Result<SuiteSummary> {
    let mut summary = SuiteSummary {
        source,
        trials,
        tol,
        retries: 0,
        regular_graphs: 0,
        checks: BTreeMap::new(),
        observations: BTreeMap::new(),
    };
    for r in results {
        let stats = r?;
        summary.retries += stats.retries;
        summary.regular_graphs += stats.regular;
        for (k, v) in &stats.checks {
            summary.checks.entry(k.clone()).or_default().merge(v);
        }
        for (k, v) in &stats.observations {
            summary.observations.entry(k.clone()).or_default().merge(v);
        }
    }
    if summary.retries > 0 {
        info!("{} retries to obtain connected graphs", summary.retries);
    }
    for (name, s) in &summary.observations {
        if s.failures > 0 {
            warn!("{name}: {} of {} graphs fail (not a theorem-backed check)", s.failures, s.count);
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::Family;

    fn fam(f: Family) -> Graph {
        generators::make(&FamilySpec::new(f)).unwrap()
    }

    #[test]
    fn sweep_on_regular_graph_is_flat() {
        let s = katz_alpha_sweep(&fam(Family::Cycle { n: 8 }), 5, 1e-9).unwrap();
        assert!(s.gaps.iter().all(|g| g.abs() < 1e-12));
        assert!(s.violations.is_empty());
    }

    #[test]
    fn sweep_grid_excludes_endpoints() {
        let g = fam(Family::Figure1);
        let s = katz_alpha_sweep(&g, 10, 1e-9).unwrap();
        assert_eq!(s.alphas.len(), 10);
        assert!(s.alphas.windows(2).all(|w| w[0] < w[1]));
        assert!(s.alphas[0] > 0.0 && *s.alphas.last().unwrap() < 1.0 / s.rho);
        assert_eq!(s.predicted_derivative, 0.625);
        assert!((s.derivative_at_zero / 0.625 - 1.0).abs() < 0.05);
        assert!(katz_alpha_sweep(&g, 1, 1e-9).is_err());
    }

    #[test]
    fn slope_matches_first_order_term() {
        let slope = katz_gap_slope(&fam(Family::Figure1), 1e-4).unwrap();
        assert!((slope / 0.625 - 1.0).abs() < 0.05);
    }

    #[test]
    fn search_rejects_even_orders() {
        let spec = FamilySpec::new(Family::Figure1);
        assert!(search_lagarias_violation(&spec, 1, 1, 1).is_err());
    }

    #[test]
    fn exhaustive_small_search() {
        let o = search_lagarias_exhaustive(4, 2, 1).unwrap();
        assert_eq!(o.trials, 1 + 4 + 38);
        assert!(o.violations.is_empty());
        assert_eq!(o.min_slack, Some(Value::int(0)));
    }

    #[test]
    fn search_finds_star_clique() {
        let spec = FamilySpec::new(Family::StarClique { m: 13, k: 4 });
        let o = search_lagarias_violation(&spec, 2, 1, 5).unwrap();
        assert_eq!(o.trials, 1);
        assert_eq!(o.violations.len(), 1);
        assert_eq!(o.violations[0].replay().unwrap(), o.violations[0].report);
    }

    #[test]
    fn counterexample_from_violator() {
        let g = fam(Family::StarClique { m: 13, k: 4 });
        let c = build_power_series_counterexample(&g, 1.0).unwrap();
        assert!(!c.report.holds && c.report.gap < 0.0);
        assert_eq!(c.coefficients.values()[0], 1.0);
        assert_eq!(c.coefficients.values()[2], 1.0);
        let half = SeriesCoefficients::new(vec![1.0, c.epsilon / 2.0, 1.0]).unwrap();
        let x = spectral::series_action(&g, &half, false).unwrap();
        let r = paradox::paradox_report(&g, &x, Orientation::Undirected, 0.0).unwrap();
        assert!(r.gap < 0.0);
    }

    #[test]
    fn counterexample_rejects_regular_input() {
        let g = fam(Family::Cycle { n: 6 });
        assert!(matches!(
            build_power_series_counterexample(&g, 0.1),
            Err(Error::NotViolating(_))
        ));
    }

    #[test]
    fn small_suites_pass() {
        let er = FamilySpec::seeded(Family::ErdosRenyi { n: 20, p: 0.2 }, 5);
        let s = random_theorem_suite(&er, 8, 1e-9).unwrap();
        assert_eq!(s.checks["eigenvector"].count, 8);
        let d = FamilySpec::seeded(Family::ErdosRenyiDirected { n: 15, p: 0.2 }, 5);
        let s = random_theorem_suite(&d, 8, 1e-12).unwrap();
        assert_eq!(s.checks["out_out"].failures, 0);
        assert_eq!(s, random_theorem_suite(&d, 8, 1e-12).unwrap());
    }

    #[test]
    fn exhaustive_suite_small() {
        let s = exhaustive_theorem_suite(4, 1e-9).unwrap();
        assert_eq!(s.trials, 43);
        assert_eq!(s.checks["eigenvector"].count, 43);
        // K2, K3 and C4 labellings
        assert_eq!(s.regular_graphs, 1 + 1 + 3 + 1);
    }
}
