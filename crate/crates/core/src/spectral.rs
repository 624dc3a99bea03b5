//! Numeric kernels on the adjacency matrix: products, the Perron eigenpair,
//! Katz solves, power-series actions and exact walk totals.

use std::borrow::Cow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeVector};
use crate::value::{self, Value};

pub const DEFAULT_EIGEN_TOL: f64 = 1e-10;
pub const DEFAULT_KATZ_TOL: f64 = 1e-12;
pub const DEFAULT_SERIES_TOL: f64 = 1e-15;
/// Relative inflation of the computed spectral radius when validating α.
pub const RADIUS_SAFETY: f64 = 1e-9;
const MAX_TAYLOR_ORDER: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// xᵀA = λxᵀ
    Left,
    /// Ax = λx
    Right,
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(Error::invalid(format!("unknown side {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenResult {
    pub eigenvalue: f64,
    /// Perron vector, strictly positive, entries summing to n.
    pub vector: NodeVector,
    pub side: Side,
    /// ‖Ax − λx‖₂ / ‖x‖₂ (with Aᵀ for the left side).
    pub residual: f64,
    pub iterations: usize,
}

/// Nonnegative coefficients c₀..c_K of a truncated power series in A.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesCoefficients(Vec<f64>);

impl SeriesCoefficients {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("empty coefficient sequence"));
        }
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, c)| !(c.is_finite() && **c >= 0.0))
        {
            return Err(Error::InvalidEntry { index, value });
        }
        if values.iter().all(|&c| c == 0.0) {
            return Err(Error::invalid("at least one coefficient must be positive"));
        }
        Ok(SeriesCoefficients(values))
    }

    /// c_k = α^k for k = 0..=order.
    pub fn geometric(alpha: f64, order: usize) -> Result<Self> {
        Self::new((0..=order).map(|k| alpha.powi(k as i32)).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// Truncation order K.
    pub fn order(&self) -> usize {
        self.0.len() - 1
    }
}

fn oriented(g: &Graph, transposed: bool) -> Cow<'_, Graph> {
    if transposed && g.is_directed() {
        Cow::Owned(g.transpose())
    } else {
        Cow::Borrowed(g)
    }
}

pub(crate) fn matvec(g: &Graph, x: &[f64], y: &mut [f64]) {
    for (i, yi) in y.iter_mut().enumerate() {
        *yi = g.row(i).map(|(j, w)| w * x[j]).sum();
    }
}


fn norm_inf(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// A·v, or Aᵀ·v when `transposed`.
pub fn apply(g: &Graph, v: &NodeVector, transposed: bool) -> Result<NodeVector> {
    v.check_len(g.n())?;
    let mut y = vec![0.0; g.n()];
    if transposed {
        for (i, j, w) in g.arcs() {
            y[j] += w * v.values[i];
        }
    } else {
        matvec(g, &v.values, &mut y);
    }
    NodeVector::new(y, format!("{}A·{}", if transposed { "ᵀ" } else { "" }, v.label))
}

pub fn default_max_iter(n: usize) -> usize {
    100 * n + 1000
}

/// Perron eigenpair by power iteration on the shifted operator A + I.
///
/// The shift makes the iteration converge on bipartite and periodic
/// graphs. The start vector is 𝟙/n + i/n², which lies in the positive
/// cone and is not an eigenvector of non-regular graphs by accident.
pub fn dominant_eigenpair(g: &Graph, side: Side, tol: f64, max_iter: usize) -> Result<EigenResult> {
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tolerance {tol} must be positive")));
    }
    if !g.is_irreducible() {
        return Err(Error::NotIrreducible(if g.is_directed() {
            "strongly connected"
        } else {
            "connected"
        }));
    }
    let op = oriented(g, side == Side::Left);
    let n = g.n();
    let nf = n as f64;
    let mut x: Vec<f64> = (0..n).map(|i| 1.0 / nf + i as f64 / (nf * nf)).collect();
    let mut y = vec![0.0; n];
    let mut best: (f64, Vec<f64>) = (f64::INFINITY, x.clone());
    for iteration in 0..=max_iter {
        matvec(&op, &x, &mut y);
        let xx: f64 = x.iter().map(|v| v * v).sum();
        let lambda = x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>() / xx;
        let residual = y
            .iter()
            .zip(&x)
            .map(|(yi, xi)| (yi - lambda * xi).powi(2))
            .sum::<f64>()
            .sqrt()
            / xx.sqrt();
        if residual < best.0 {
            best = (residual, x.clone());
        }
        if residual <= tol {
            let sum: f64 = x.iter().sum();
            let values: Vec<f64> = x.iter().map(|v| v * nf / sum).collect();
            if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !(**v > 0.0)) {
                return Err(Error::InvalidEntry { index, value });
            }
            return Ok(EigenResult {
                eigenvalue: lambda,
                vector: NodeVector::new(
                    values,
                    match side {
                        Side::Right => "eigenvector[right]",
                        Side::Left => "eigenvector[left]",
                    },
                )?,
                side,
                residual,
                iterations: iteration,
            });
        }
        let mut total = 0.0;
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi += yi;
            total += *xi;
        }
        x.iter_mut().for_each(|v| *v /= total);
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        residual: best.0,
        best: best.1,
    })
}

/// ρ(A): the largest Perron root over the strongly connected components.
pub fn spectral_radius(g: &Graph) -> Result<f64> {
    let tol = DEFAULT_EIGEN_TOL;
    if g.is_irreducible() {
        return Ok(dominant_eigenpair(g, Side::Right, tol, default_max_iter(g.n()))?.eigenvalue);
    }
    let mut rho: f64 = 0.0;
    for component in g.strongly_connected_components() {
        if let Some(sub) = g.induced_subgraph(&component) {
            let r = dominant_eigenpair(&sub, Side::Right, tol, default_max_iter(sub.n()))?;
            rho = rho.max(r.eigenvalue);
        }
    }
    Ok(rho)
}

/// Largest admissible Katz parameter for a computed radius (exclusive).
pub fn alpha_limit(rho: f64) -> f64 {
    if rho > 0.0 {
        1.0 / (rho * (1.0 + RADIUS_SAFETY))
    } else {
        f64::INFINITY
    }
}

/// Katz centrality x solving (I − αA)x = 𝟙 (Aᵀ when `transposed`).
pub fn katz_action(g: &Graph, alpha: f64, transposed: bool, tol: f64) -> Result<NodeVector> {
    let rho = spectral_radius(g)?;
    katz_action_with_radius(g, alpha, transposed, tol, rho)
}

/// As [`katz_action`] with a precomputed ρ(A), for sweeps over α.
pub fn katz_action_with_radius(
    g: &Graph,
    alpha: f64,
    transposed: bool,
    tol: f64,
    rho: f64,
) -> Result<NodeVector> {
    if !(alpha > 0.0) {
        return Err(Error::invalid(format!("alpha {alpha} must be positive")));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tolerance {tol} must be positive")));
    }
    let limit = alpha_limit(rho);
    if alpha >= limit {
        return Err(Error::AlphaOutOfRange { alpha, limit });
    }
    let op = oriented(g, transposed);
    let n = g.n();
    let contraction = alpha * rho;
    let max_iter = if contraction > 0.0 {
        n + 100 + 2 * (tol.ln() / contraction.ln()).ceil() as usize
    } else {
        n + 100
    };
    // Neumann iteration x ← 𝟙 + αAx; the step x_{k+1} − x_k is the
    // residual 𝟙 − (I − αA)x_k.
    let scale = (n as f64).sqrt();
    let mut x = vec![1.0; n];
    let mut ax = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for _ in 0..max_iter {
        matvec(&op, &x, &mut ax);
        let mut step = 0.0;
        for (xi, axi) in x.iter_mut().zip(&ax) {
            let next = 1.0 + alpha * axi;
            step += (next - *xi) * (next - *xi);
            *xi = next;
        }
        residual = step.sqrt() / scale;
        if residual <= tol {
            return NodeVector::new(x, format!("katz[alpha={alpha}]"));
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        residual,
        best: x,
    })
}

/// x = Σ c_k A^k 𝟙 by Horner's rule (Aᵀ when `transposed`).
pub fn series_action(g: &Graph, coeffs: &SeriesCoefficients, transposed: bool) -> Result<NodeVector> {
    let op = oriented(g, transposed);
    let n = g.n();
    let c = coeffs.values();
    let mut x = vec![c[c.len() - 1]; n];
    let mut ax = vec![0.0; n];
    for &ck in c.iter().rev().skip(1) {
        matvec(&op, &x, &mut ax);
        for (xi, axi) in x.iter_mut().zip(&ax) {
            *xi = axi + ck;
        }
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    NodeVector::new(x, format!("power_series[order={}]", coeffs.order()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    All,
    Odd,
    Even,
}

/// Truncated Taylor series of exp/sinh/cosh(βA)𝟙.
///
/// Stops once past the hump of the terms (k > β·max row sum) and the last
/// term is at most `tol` times the running sum in the ∞-norm.
pub fn taylor_action(g: &Graph, beta: f64, tol: f64, parity: Parity) -> Result<NodeVector> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::invalid(format!("beta {beta} must be positive")));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tolerance {tol} must be positive")));
    }
    let n = g.n();
    let max_row = (0..n)
        .map(|i| g.row(i).map(|(_, w)| w).sum::<f64>())
        .fold(0.0, f64::max);
    let mut term = vec![1.0; n];
    let mut next = vec![0.0; n];
    let mut sum = if parity == Parity::Odd {
        vec![0.0; n]
    } else {
        vec![1.0; n]
    };
    for k in 1..=MAX_TAYLOR_ORDER {
        matvec(g, &term, &mut next);
        let factor = beta / k as f64;
        for (t, v) in term.iter_mut().zip(&next) {
            *t = v * factor;
        }
        let wanted = match parity {
            Parity::All => true,
            Parity::Odd => k % 2 == 1,
            Parity::Even => k % 2 == 0,
        };
        if wanted {
            sum.iter_mut().zip(&term).for_each(|(s, t)| *s += t);
        }
        let size = norm_inf(&term);
        if !size.is_finite() || sum.iter().any(|s| !s.is_finite()) {
            return Err(Error::NonFinite);
        }
        if k as f64 > beta * max_row && size <= tol * norm_inf(&sum) {
            let label = match parity {
                Parity::All => "exp",
                Parity::Odd => "sinh",
                Parity::Even => "cosh",
            };
            return NodeVector::new(sum, format!("{label}[beta={beta}]"));
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_TAYLOR_ORDER,
        residual: f64::NAN,
        best: sum,
    })
}

/// Total communicability exp(βA)𝟙.
pub fn exp_action(g: &Graph, beta: f64, tol: f64) -> Result<NodeVector> {
    taylor_action(g, beta, tol, Parity::All)
}

/// sinh(βA)𝟙.
pub fn odd_action(g: &Graph, beta: f64, tol: f64) -> Result<NodeVector> {
    taylor_action(g, beta, tol, Parity::Odd)
}

/// cosh(βA)𝟙.
pub fn even_action(g: &Graph, beta: f64, tol: f64) -> Result<NodeVector> {
    taylor_action(g, beta, tol, Parity::Even)
}

/// A^k 𝟙 in exact integer arithmetic.
pub fn walk_vector_exact(g: &Graph, k: usize) -> Result<Vec<i128>> {
    if !g.has_integer_weights() {
        return Err(Error::NonIntegerWeights);
    }
    let rows: Vec<Vec<(usize, i128)>> = (0..g.n())
        .map(|i| g.row(i).map(|(j, w)| (j, w as i128)).collect())
        .collect();
    let mut v = vec![1i128; g.n()];
    for _ in 0..k {
        v = rows
            .iter()
            .map(|row| {
                row.iter().try_fold(0i128, |acc, &(j, w)| {
                    w.checked_mul(v[j])
                        .and_then(|t| acc.checked_add(t))
                        .ok_or(Error::Overflow)
                })
            })
            .collect::<Result<_>>()?;
    }
    Ok(v)
}

fn walk_vector_float(g: &Graph, k: usize) -> Vec<f64> {
    let mut v = vec![1.0; g.n()];
    let mut next = vec![0.0; g.n()];
    for _ in 0..k {
        matvec(g, &v, &mut next);
        std::mem::swap(&mut v, &mut next);
    }
    v
}

/// 𝟙ᵀA^k𝟙 as an exact integer.
pub fn walk_count_exact(g: &Graph, k: usize) -> Result<i128> {
    value::checked_sum(&walk_vector_exact(g, k)?)
}

/// 𝟙ᵀA^k𝟙: exact for integer weights, a weighted walk sum otherwise.
pub fn walk_count(g: &Graph, k: usize) -> Result<Value> {
    if g.has_integer_weights() {
        Ok(Value::int(walk_count_exact(g, k)?))
    } else {
        let total: f64 = walk_vector_float(g, k).iter().sum();
        if !total.is_finite() {
            return Err(Error::Overflow);
        }
        Ok(Value::Approx(total))
    }
}

/// 𝟙ᵀAᵀA^k𝟙 = d_outᵀ(A^k𝟙).
pub fn mixed_walk_count(g: &Graph, k: usize) -> Result<Value> {
    if g.has_integer_weights() {
        let walks = walk_vector_exact(g, k)?;
        let dout = walk_vector_exact(g, 1)?;
        Ok(Value::int(value::checked_dot(&dout, &walks)?))
    } else {
        let walks = walk_vector_float(g, k);
        let dout = walk_vector_float(g, 1);
        let total: f64 = dout.iter().zip(&walks).map(|(a, b)| a * b).sum();
        if !total.is_finite() {
            return Err(Error::Overflow);
        }
        Ok(Value::Approx(total))
    }
}
