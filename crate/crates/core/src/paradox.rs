//! Node averages against neighbour averages.
//!
//! For a nonnegative attribute x and a degree vector d (undirected, out or
//! in), the neighbour average dᵀx/‖d‖₁ is compared with the node average
//! ‖x‖₁/n. The gap between them equals Cov(d, x)/μ_d, which is computed
//! separately as a cross-check. When both d and x are integer valued the
//! averages are also kept as exact rationals and the verdicts use them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeVector, Orientation};
use crate::value::{self, Value};

pub const DEFAULT_TOL: f64 = 1e-9;
/// Relative agreement required between the gap and the covariance form.
pub const IDENTITY_RTOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactAverages {
    pub node_average: Value,
    pub neighbour_average: Value,
    pub gap: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParadoxReport {
    pub mode: Orientation,
    pub measure_label: String,
    pub node_average: f64,
    pub neighbour_average: f64,
    /// neighbour_average − node_average
    pub gap: f64,
    /// Cov(d, x)/μ_d
    pub covariance_form: f64,
    pub holds: bool,
    pub equality: bool,
    pub tol: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactAverages>,
}

fn check_attribute(x: &NodeVector) -> Result<()> {
    if let Some((index, &value)) = x
        .values
        .iter()
        .enumerate()
        .find(|(_, v)| !(v.is_finite() && **v >= 0.0))
    {
        return Err(Error::InvalidEntry { index, value });
    }
    Ok(())
}

/// ‖x‖₁/n for a nonnegative attribute.
pub fn node_average(x: &NodeVector) -> Result<f64> {
    check_attribute(x)?;
    if x.is_empty() {
        return Err(Error::NoNodes);
    }
    Ok(x.sum() / x.len() as f64)
}

/// dᵀx/‖d‖₁ with d chosen by `mode`.
pub fn neighbour_average(g: &Graph, x: &NodeVector, mode: Orientation) -> Result<f64> {
    check_attribute(x)?;
    x.check_len(g.n())?;
    let d = g.degrees(mode)?;
    Ok(dot(&d.values, &x.values) / d.sum())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn exact_averages(d: &[f64], x: &[f64]) -> Result<Option<ExactAverages>> {
    let (Some(d), Some(x)) = (value::exact_ints(d), value::exact_ints(x)) else {
        return Ok(None);
    };
    let n = d.len() as i128;
    let node = value::ratio(value::checked_sum(&x)?, n)?;
    let neighbour = value::ratio(value::checked_dot(&d, &x)?, value::checked_sum(&d)?)?;
    let gap = Value::Exact(neighbour).checked_sub(&Value::Exact(node))?;
    Ok(Some(ExactAverages {
        node_average: Value::Exact(node),
        neighbour_average: Value::Exact(neighbour),
        gap,
    }))
}

/// Full comparison of node and neighbour averages of `x`.
pub fn paradox_report(g: &Graph, x: &NodeVector, mode: Orientation, tol: f64) -> Result<ParadoxReport> {
    check_attribute(x)?;
    x.check_len(g.n())?;
    let d = g.degrees(mode)?.values;
    let n = g.n() as f64;

    let exact = exact_averages(&d, &x.values)?;
    let (node, neighbour) = match &exact {
        Some(e) => (e.node_average.to_f64(), e.neighbour_average.to_f64()),
        None => (x.sum() / n, dot(&d, &x.values) / d.iter().sum::<f64>()),
    };
    let gap = neighbour - node;

    let mu_d = d.iter().sum::<f64>() / n;
    let mu_x = x.sum() / n;
    let cov = d
        .iter()
        .zip(&x.values)
        .map(|(di, xi)| (di - mu_d) * (xi - mu_x))
        .sum::<f64>()
        / n;
    let covariance_form = cov / mu_d;
    let scale = node.abs().max(neighbour.abs()).max(f64::MIN_POSITIVE);
    if (gap - covariance_form).abs() > IDENTITY_RTOL * scale {
        return Err(Error::TheoremViolation(format!(
            "gap {gap} and covariance form {covariance_form} disagree"
        )));
    }

    let (holds, equality) = match &exact {
        Some(e) => (e.gap.nonnegative(0.0), e.gap.is_zero(0.0)),
        None => (gap >= -tol, gap.abs() <= tol),
    };
    Ok(ParadoxReport {
        mode,
        measure_label: x.label.clone(),
        node_average: node,
        neighbour_average: neighbour,
        gap,
        covariance_form,
        holds,
        equality,
        tol,
        exact,
    })
}

/// The original paradox: degree against neighbour degree.
pub fn classic_friendship_paradox(g: &Graph) -> Result<ParadoxReport> {
    if g.is_directed() {
        return Err(Error::RequiresUndirected(
            "use directed_degree_report on directed graphs",
        ));
    }
    let d = g.degree_vector()?;
    let report = paradox_report(g, &d, Orientation::Undirected, DEFAULT_TOL)?;
    if !report.holds {
        return Err(Error::TheoremViolation(format!(
            "friendship paradox gap {} is negative",
            report.gap
        )));
    }
    if report.exact.is_some() && report.equality != g.is_regular_any() {
        return Err(Error::TheoremViolation(
            "friendship paradox equality does not match regularity".into(),
        ));
    }
    Ok(report)
}

/// The four degree-versus-degree comparisons on a digraph.
///
/// `out_in` weighs in-degrees by out-degree (mode out, x = d_in); `in_out`
/// the reverse. Only `out_out` and `in_in` are guaranteed to hold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectedDegreeReport {
    pub out_out: ParadoxReport,
    pub in_in: ParadoxReport,
    pub out_in: ParadoxReport,
    pub in_out: ParadoxReport,
    /// Cov(d_out, d_in)
    pub covariance: Value,
}

impl DirectedDegreeReport {
    pub fn all_hold(&self) -> bool {
        [&self.out_out, &self.in_in, &self.out_in, &self.in_out]
            .iter()
            .all(|r| r.holds)
    }
}

pub fn directed_degree_report(g: &Graph, tol: f64) -> Result<DirectedDegreeReport> {
    if !g.is_directed() {
        return Err(Error::RequiresDirected(
            "use classic_friendship_paradox on undirected graphs",
        ));
    }
    let mut dout = g.out_degree_vector();
    let mut din = g.in_degree_vector();
    dout.label = "out_degree".into();
    din.label = "in_degree".into();
    let out_out = paradox_report(g, &dout, Orientation::Out, tol)?;
    let in_in = paradox_report(g, &din, Orientation::In, tol)?;
    for (name, r) in [("out_out", &out_out), ("in_in", &in_in)] {
        if !r.holds {
            return Err(Error::TheoremViolation(format!("{name} gap {} is negative", r.gap)));
        }
    }
    let out_in = paradox_report(g, &din, Orientation::Out, tol)?;
    let in_out = paradox_report(g, &dout, Orientation::In, tol)?;
    Ok(DirectedDegreeReport {
        out_out,
        in_in,
        out_in,
        in_out,
        covariance: covariance(&dout.values, &din.values)?,
    })
}

/// Population covariance (1/n)Σ(uᵢ − μ_u)(vᵢ − μ_v), exact for integer data.
pub fn covariance(u: &[f64], v: &[f64]) -> Result<Value> {
    let n = u.len();
    if let (Some(a), Some(b)) = (value::exact_ints(u), value::exact_ints(v)) {
        let n = n as i128;
        let cross = n
            .checked_mul(value::checked_dot(&a, &b)?)
            .and_then(|p| {
                value::checked_sum(&a)
                    .ok()?
                    .checked_mul(value::checked_sum(&b).ok()?)
                    .and_then(|q| p.checked_sub(q))
            })
            .ok_or(Error::Overflow)?;
        let denom = n.checked_mul(n).ok_or(Error::Overflow)?;
        return Ok(Value::Exact(value::ratio(cross, denom)?));
    }
    let nf = n as f64;
    let mu = u.iter().sum::<f64>() / nf;
    let mv = v.iter().sum::<f64>() / nf;
    Ok(Value::Approx(
        u.iter().zip(v).map(|(a, b)| (a - mu) * (b - mv)).sum::<f64>() / nf,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{make, Family, FamilySpec};
    use crate::value::Rational;

    fn fam(f: Family) -> Graph {
        make(&FamilySpec::new(f)).unwrap()
    }

    #[test]
    fn figure1_averages() {
        let g = fam(Family::Figure1);
        let d = g.degree_vector().unwrap();
        assert_eq!(node_average(&d).unwrap(), 2.0);
        assert_eq!(neighbour_average(&g, &d, Orientation::Undirected).unwrap(), 2.625);
        let r = classic_friendship_paradox(&g).unwrap();
        assert_eq!(r.gap, 0.625);
        assert!(r.holds && !r.equality);
        let e = r.exact.unwrap();
        assert_eq!(e.node_average, Value::Exact(Rational::new(16, 8)));
        assert_eq!(e.neighbour_average, Value::Exact(Rational::new(42, 16)));
    }

    #[test]
    fn node_average_rejects_negative_entries() {
        let x = NodeVector::new(vec![1.0, -0.5], "bad").unwrap();
        assert!(matches!(node_average(&x), Err(Error::InvalidEntry { index: 1, .. })));
        let ones = NodeVector::new(vec![1.0; 4], "ones").unwrap();
        assert_eq!(node_average(&ones).unwrap(), 1.0);
    }

    #[test]
    fn regular_graph_neighbour_average_equals_node_average() {
        let g = fam(Family::Cycle { n: 7 });
        let x = NodeVector::new(vec![0.3, 1.0, 2.0, 0.0, 5.0, 0.25, 1.5], "x").unwrap();
        let r = paradox_report(&g, &x, Orientation::Undirected, DEFAULT_TOL).unwrap();
        assert!((r.gap).abs() < 1e-15);
        assert!(r.equality);
        assert!(classic_friendship_paradox(&fam(Family::Cycle { n: 9 })).unwrap().equality);
    }

    #[test]
    fn star_classic_gap() {
        let g = fam(Family::StarUndirected { n: 10 });
        let r = classic_friendship_paradox(&g).unwrap();
        assert_eq!(r.exact.unwrap().gap, Value::Exact(Rational::new(16, 5)));
        // brute-force neighbour enumeration: each node lists its neighbours' degrees
        let d = g.degree_vector().unwrap().values;
        let listed: Vec<f64> = (0..g.n()).flat_map(|i| g.row(i).map(|(j, _)| d[j]).collect::<Vec<_>>()).collect();
        let brute = listed.iter().sum::<f64>() / listed.len() as f64 - d.iter().sum::<f64>() / 10.0;
        assert!((brute - 3.2).abs() < 1e-12);
    }

    #[test]
    fn hub_cycle_out_in() {
        let g = fam(Family::HubCycle { n: 10 });
        let din = g.in_degree_vector();
        assert_eq!(
            neighbour_average(&g, &din, Orientation::Out).unwrap(),
            29.0 / 19.0
        );
        let r = paradox_report(&g, &din, Orientation::Out, DEFAULT_TOL).unwrap();
        // (3n−1)/(2n−1) − (2n−1)/n at n = 10
        assert_eq!(r.exact.as_ref().unwrap().gap, Value::Exact(Rational::new(-71, 190)));
        assert!((r.gap + 0.3737).abs() < 1e-4);
        assert!((r.gap - (29.0 / 19.0 - 1.9)).abs() < 1e-12);
        assert!(!r.holds);
    }

    #[test]
    fn directed_reports() {
        let c = directed_degree_report(&fam(Family::DirectedCycle { n: 5 }), DEFAULT_TOL).unwrap();
        for r in [&c.out_out, &c.in_in, &c.out_in, &c.in_out] {
            assert_eq!(r.gap, 0.0);
            assert!(r.equality);
        }

        let s = directed_degree_report(&fam(Family::StarOut { n: 5 }), DEFAULT_TOL).unwrap();
        assert!(s.out_in.gap < 0.0);
        assert!(s.covariance.to_f64() < 0.0);

        let h = directed_degree_report(&fam(Family::HubCycle { n: 10 }), DEFAULT_TOL).unwrap();
        assert!(!h.out_in.holds && !h.in_out.holds);
        assert!(h.out_out.holds && h.in_in.holds);
        assert!(!h.all_hold());

        assert!(matches!(
            directed_degree_report(&fam(Family::Figure1), DEFAULT_TOL),
            Err(Error::RequiresDirected(_))
        ));
    }

    #[test]
    fn mode_mismatch_is_rejected() {
        let g = fam(Family::HubCycle { n: 5 });
        let x = g.in_degree_vector();
        assert!(paradox_report(&g, &x, Orientation::Undirected, DEFAULT_TOL).is_err());
        assert!(classic_friendship_paradox(&g).is_err());
    }

    #[test]
    fn zero_degree_nodes_count_in_node_average_only() {
        let g = fam(Family::StarOut { n: 5 });
        let x = NodeVector::new(vec![0.0, 1.0, 2.0, 3.0, 4.0], "x").unwrap();
        let r = paradox_report(&g, &x, Orientation::Out, DEFAULT_TOL).unwrap();
        assert_eq!(r.neighbour_average, 0.0);
        assert_eq!(r.node_average, 2.0);
    }
}
