//! One entry point from a measure description to a centrality vector.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeVector};
use crate::spectral::{self, SeriesCoefficients, Side};

pub const DEFAULT_BETA: f64 = 1.0;
/// Default Katz α as a fraction of 1/ρ(A).
pub const DEFAULT_KATZ_FRACTION: f64 = 0.5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Measure {
    Degree,
    Eigenvector,
    /// `None` picks α = 0.5/ρ(A).
    Katz { alpha: Option<f64> },
    /// exp(βA)𝟙
    Total { beta: f64 },
    /// sinh(βA)𝟙
    Odd { beta: f64 },
    /// cosh(βA)𝟙
    Even { beta: f64 },
    PowerSeries { coeffs: SeriesCoefficients },
}

/// Which end of a walk a node is credited for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Undirected,
    /// Walks starting at the node (series in A; right Perron vector).
    Broadcast,
    /// Walks ending at the node (series in Aᵀ; left Perron vector).
    Receive,
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "undirected" => Ok(Direction::Undirected),
            "broadcast" => Ok(Direction::Broadcast),
            "receive" => Ok(Direction::Receive),
            other => Err(Error::invalid(format!(
                "unknown direction {other:?} (expected undirected, broadcast or receive)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CentralitySpec {
    pub measure: Measure,
    pub direction: Direction,
    /// Kernel tolerance; `None` uses the kernel's default.
    pub tol: Option<f64>,
}

impl CentralitySpec {
    pub fn new(measure: Measure, direction: Direction) -> Self {
        CentralitySpec {
            measure,
            direction,
            tol: None,
        }
    }

    pub fn undirected(measure: Measure) -> Self {
        Self::new(measure, Direction::Undirected)
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = Some(tol);
        self
    }

    fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::invalid(format!("{name} = {v} must be positive")))
            }
        };
        if let Some(t) = self.tol {
            positive("tol", t)?;
        }
        match &self.measure {
            Measure::Katz { alpha: Some(a) } => positive("alpha", *a),
            Measure::Total { beta } | Measure::Odd { beta } | Measure::Even { beta } => {
                positive("beta", *beta)
            }
            _ => Ok(()),
        }
    }
}

/// Centrality vector for `spec` on `g`.
///
/// Eigenvector output sums to n; walk-based measures are unnormalised.
/// Receive-direction results are the broadcast results on Aᵀ.
pub fn compute(g: &Graph, spec: &CentralitySpec) -> Result<NodeVector> {
    spec.validate()?;
    match spec.direction {
        Direction::Undirected if g.is_directed() => Err(Error::RequiresUndirected(
            "direction 'undirected' on a directed graph; use broadcast or receive",
        )),
        Direction::Receive if g.is_directed() => {
            let mut x = broadcast(&g.transpose(), spec)?;
            x.label = format!("{}[receive]", x.label);
            Ok(x)
        }
        Direction::Broadcast if g.is_directed() => {
            let mut x = broadcast(g, spec)?;
            x.label = format!("{}[broadcast]", x.label);
            Ok(x)
        }
        _ => broadcast(g, spec),
    }
}

fn broadcast(g: &Graph, spec: &CentralitySpec) -> Result<NodeVector> {
    match &spec.measure {
        Measure::Degree => Ok(g.out_degree_vector()),
        Measure::Eigenvector => {
            let tol = spec.tol.unwrap_or(spectral::DEFAULT_EIGEN_TOL);
            let r = spectral::dominant_eigenpair(g, Side::Right, tol, spectral::default_max_iter(g.n()))?;
            let mut x = r.vector;
            x.label = "eigenvector".into();
            Ok(x)
        }
        Measure::Katz { alpha } => {
            let tol = spec.tol.unwrap_or(spectral::DEFAULT_KATZ_TOL);
            let rho = spectral::spectral_radius(g)?;
            let alpha = match alpha {
                Some(a) => *a,
                None if rho > 0.0 => DEFAULT_KATZ_FRACTION / rho,
                None => DEFAULT_KATZ_FRACTION,
            };
            spectral::katz_action_with_radius(g, alpha, false, tol, rho)
        }
        Measure::Total { beta } => {
            spectral::exp_action(g, *beta, spec.tol.unwrap_or(spectral::DEFAULT_SERIES_TOL))
        }
        Measure::Odd { beta } => {
            spectral::odd_action(g, *beta, spec.tol.unwrap_or(spectral::DEFAULT_SERIES_TOL))
        }
        Measure::Even { beta } => {
            spectral::even_action(g, *beta, spec.tol.unwrap_or(spectral::DEFAULT_SERIES_TOL))
        }
        Measure::PowerSeries { coeffs } => spectral::series_action(g, coeffs, false),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitDiagnostic {
    pub alphas: Vec<f64>,
    /// Per-α distance to the limiting vector (meaning depends on the check).
    pub values: Vec<f64>,
    /// Worst value over the sequence.
    pub worst: f64,
}

fn degree_for(g: &Graph, direction: Direction) -> Result<NodeVector> {
    match direction {
        Direction::Undirected => g.degree_vector(),
        Direction::Broadcast => Ok(g.out_degree_vector()),
        Direction::Receive => Ok(g.in_degree_vector()),
    }
}

fn check_direction(g: &Graph, direction: Direction) -> Result<()> {
    if direction == Direction::Undirected && g.is_directed() {
        return Err(Error::RequiresUndirected(
            "direction 'undirected' on a directed graph; use broadcast or receive",
        ));
    }
    Ok(())
}

/// ‖(x(α) − 𝟙)/α − d‖∞ / ‖d‖∞ for each α of a decreasing sequence; these
/// shrink to zero as Katz centrality collapses onto shifted degree.
pub fn katz_degree_limit_check(
    g: &Graph,
    direction: Direction,
    alphas: &[f64],
) -> Result<LimitDiagnostic> {
    check_direction(g, direction)?;
    if alphas.is_empty() || alphas.windows(2).any(|w| w[1] >= w[0]) || alphas.iter().any(|&a| !(a > 0.0)) {
        return Err(Error::invalid("alphas must be positive and strictly decreasing"));
    }
    let transposed = direction == Direction::Receive;
    let rho = spectral::spectral_radius(g)?;
    let d = degree_for(g, direction)?.values;
    let d_inf = d.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut values = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let x = spectral::katz_action_with_radius(g, alpha, transposed, spectral::DEFAULT_KATZ_TOL, rho)?;
        let dev = x
            .values
            .iter()
            .zip(&d)
            .map(|(xi, di)| ((xi - 1.0) / alpha - di).abs())
            .fold(0.0f64, f64::max);
        values.push(dev / d_inf);
    }
    let worst = values.iter().copied().fold(0.0, f64::max);
    Ok(LimitDiagnostic {
        alphas: alphas.to_vec(),
        values,
        worst,
    })
}

pub fn cosine_similarity(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    dot / (na * nb)
}

/// Cosine similarity between the Katz vector and the matching Perron
/// vector for each α of an increasing sequence below 1/ρ(A). Broadcast
/// pairs with the right vector, receive with the left one.
pub fn katz_eigenvector_limit_check(
    g: &Graph,
    direction: Direction,
    alphas: &[f64],
) -> Result<LimitDiagnostic> {
    check_direction(g, direction)?;
    if alphas.is_empty() || alphas.windows(2).any(|w| w[1] <= w[0]) || alphas.iter().any(|&a| !(a > 0.0)) {
        return Err(Error::invalid("alphas must be positive and strictly increasing"));
    }
    let transposed = direction == Direction::Receive;
    let side = if transposed { Side::Left } else { Side::Right };
    let perron = spectral::dominant_eigenpair(g, side, spectral::DEFAULT_EIGEN_TOL, spectral::default_max_iter(g.n()))?;
    let rho = spectral::spectral_radius(g)?;
    let mut values = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let x = spectral::katz_action_with_radius(g, alpha, transposed, spectral::DEFAULT_KATZ_TOL, rho)?;
        let x = x.rescaled_sum(g.n() as f64);
        values.push(cosine_similarity(&x.values, &perron.vector.values));
    }
    let worst = values.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(LimitDiagnostic {
        alphas: alphas.to_vec(),
        values,
        worst,
    })
}
