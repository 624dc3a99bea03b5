//! Walk-count inequalities behind the paradox results, reported with slack.
//!
//! On integer-weighted graphs every side is an exact rational built from
//! integer walk counts, so the sign of the slack is decided without rounding
//! (stars and regular graphs sit exactly on the boundary). Weighted graphs
//! fall back to floats with a relative tolerance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Orientation};
use crate::paradox;
use crate::spectral::{self, Side};
use crate::value::Value;

/// Relative tolerance for float comparisons on weighted graphs.
pub const FLOAT_RTOL: f64 = 1e-9;
/// Relative tolerance when comparing a spectral verdict with a paradox gap.
const CROSS_CHECK_RTOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConditionId {
    /// 𝟙ᵀA^{k+1}𝟙 ≥ 𝟙ᵀA^k𝟙 · 𝟙ᵀA𝟙 / n
    Suff1a { k: usize },
    /// n·𝟙ᵀA^{r+s}𝟙 ≥ 𝟙ᵀA^r𝟙 · 𝟙ᵀA^s𝟙
    Lagarias { r: usize, s: usize },
    /// λ₁ ≥ 𝟙ᵀA𝟙 / n
    SpectralDirected { side: Side },
    /// 𝟙ᵀAᵀA^k𝟙 ≥ 𝟙ᵀA^k𝟙 · 𝟙ᵀA𝟙 / n
    Suff1Directed { k: usize },
}

impl std::fmt::Display for ConditionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConditionId::Suff1a { k } => write!(f, "suff1a(k={k})"),
            ConditionId::Lagarias { r, s } => write!(f, "lagarias(r={r},s={s})"),
            ConditionId::SpectralDirected { side } => write!(f, "spectral_directed({side:?})"),
            ConditionId::Suff1Directed { k } => write!(f, "suff1_directed(k={k})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: ConditionId,
    pub lhs: Value,
    pub rhs: Value,
    /// lhs − rhs
    pub slack: Value,
    pub holds: bool,
}

impl ConditionReport {
    fn new(condition: ConditionId, lhs: Value, rhs: Value) -> Result<Self> {
        let slack = lhs.checked_sub(&rhs)?;
        let scale = lhs.to_f64().abs().max(rhs.to_f64().abs());
        let holds = slack.nonnegative(FLOAT_RTOL * scale);
        Ok(ConditionReport {
            condition,
            lhs,
            rhs,
            slack,
            holds,
        })
    }
}

fn require_undirected(g: &Graph, what: &'static str) -> Result<()> {
    if g.is_directed() {
        Err(Error::RequiresUndirected(what))
    } else {
        Ok(())
    }
}

fn require_positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        Err(Error::invalid(format!("{name} must be at least 1")))
    } else {
        Ok(())
    }
}

fn node_count(g: &Graph) -> Value {
    Value::int(g.n() as i128)
}

/// 𝟙ᵀA^k𝟙 · 𝟙ᵀA𝟙 / n, shared by both first-order conditions.
fn walk_product_over_n(g: &Graph, k: usize) -> Result<Value> {
    spectral::walk_count(g, k)?
        .checked_mul(&spectral::walk_count(g, 1)?)?
        .checked_div(&node_count(g))
}

pub fn check_suff1a(g: &Graph, k: usize) -> Result<ConditionReport> {
    require_undirected(g, "suff1a is stated for undirected graphs")?;
    require_positive("k", k)?;
    let lhs = spectral::walk_count(g, k + 1)?;
    ConditionReport::new(ConditionId::Suff1a { k }, lhs, walk_product_over_n(g, k)?)
}

/// For even r + s the inequality is a theorem; a failure is reported as
/// [`Error::TheoremViolation`] rather than as a failing report.
pub fn check_lagarias(g: &Graph, r: usize, s: usize) -> Result<ConditionReport> {
    require_undirected(g, "the walk inequality is stated for undirected graphs")?;
    require_positive("r", r)?;
    require_positive("s", s)?;
    let lhs = node_count(g).checked_mul(&spectral::walk_count(g, r + s)?)?;
    let rhs = spectral::walk_count(g, r)?.checked_mul(&spectral::walk_count(g, s)?)?;
    let report = ConditionReport::new(ConditionId::Lagarias { r, s }, lhs, rhs)?;
    if (r + s) % 2 == 0 && !report.holds {
        return Err(Error::TheoremViolation(format!(
            "walk inequality with r={r}, s={s} failed with slack {}",
            report.slack
        )));
    }
    Ok(report)
}

/// λ₁ against the mean degree; equivalent to the out-degree paradox for
/// the left Perron vector (`Side::Left`) or the in-degree paradox for the
/// right one (`Side::Right`). The equivalence is checked on every call.
pub fn check_spectral_directed(g: &Graph, side: Side) -> Result<ConditionReport> {
    let eig = spectral::dominant_eigenpair(
        g,
        side,
        spectral::DEFAULT_EIGEN_TOL,
        spectral::default_max_iter(g.n()),
    )?;
    let mean_degree = spectral::walk_count(g, 1)?.checked_div(&node_count(g))?;
    let report = ConditionReport::new(
        ConditionId::SpectralDirected { side },
        Value::Approx(eig.eigenvalue),
        mean_degree,
    )?;

    let mode = match (g.is_directed(), side) {
        (false, _) => Orientation::Undirected,
        (true, Side::Left) => Orientation::Out,
        (true, Side::Right) => Orientation::In,
    };
    let gap = paradox::paradox_report(g, &eig.vector, mode, paradox::DEFAULT_TOL)?;
    // gap = (λ₁ n / 𝟙ᵀA𝟙 − 1) · node average, so both signs must agree
    // wherever they are resolved.
    let slack = report.slack.to_f64();
    let slack_tol = CROSS_CHECK_RTOL * report.rhs.to_f64().abs();
    let gap_tol = CROSS_CHECK_RTOL * gap.node_average.abs();
    if (slack > slack_tol && gap.gap < -gap_tol) || (slack < -slack_tol && gap.gap > gap_tol) {
        return Err(Error::TheoremViolation(format!(
            "spectral slack {slack} disagrees with eigenvector paradox gap {}",
            gap.gap
        )));
    }
    Ok(report)
}

/// The first-order condition for the out-degree Katz paradox. Defined for
/// undirected graphs too, where it coincides with [`check_suff1a`].
pub fn check_suff1_directed(g: &Graph, k: usize) -> Result<ConditionReport> {
    require_positive("k", k)?;
    let lhs = spectral::mixed_walk_count(g, k)?;
    ConditionReport::new(
        ConditionId::Suff1Directed { k },
        lhs,
        walk_product_over_n(g, k)?,
    )
}

/// 𝟙ᵀA²𝟙 − (𝟙ᵀA𝟙)²/n: the coefficient of α in the in-degree Katz gap
/// numerator. Negative means the paradox fails for small α.
pub fn first_order_in_degree_term(g: &Graph) -> Result<Value> {
    let w1 = spectral::walk_count(g, 1)?;
    spectral::walk_count(g, 2)?.checked_sub(&w1.checked_mul(&w1)?.checked_div(&node_count(g))?)
}

/// Smallest r + s ≤ `max_order` from which every split (r, s) with
/// r, s ≥ 1 satisfies the walk inequality, or `None` if there is none.
pub fn lagarias_threshold(g: &Graph, max_order: usize) -> Result<Option<usize>> {
    let mut threshold = None;
    for order in (2..=max_order).rev() {
        let mut ok = true;
        for r in 1..order {
            if !check_lagarias(g, r, order - r)?.holds {
                ok = false;
                break;
            }
        }
        if !ok {
            break;
        }
        threshold = Some(order);
    }
    Ok(threshold)
}
