//! Invariant battery run by `verify` (and by `run` when asked for).

use hyperflow::ball::poincare_projection;
use hyperflow::flow::{existence_window, gauge_lorentz_to_hyperbolic, hyperbolic_flow, lorentz_flow, GaugeParams};
use hyperflow::limits::{backward_limit_point, classify_limits, forward_limit_point, hausdorff, BackwardKind, ForwardPoint};
use hyperflow::linalg::distance;
use hyperflow::oracle::{isoparametric_residual, pde_residual, Gauge, PdeSettings, Scheme, TransportSpec};
use hyperflow::{IsoDescriptor, Result, Vector};
use rayon::prelude::*;
use serde::Serialize;

use crate::scenario::OracleSettings;

pub const NORM_LAW_TOL: f64 = 1e-9;
pub const GAUGE_TOL: f64 = 1e-12;
pub const SPREAD_TOL: f64 = 1e-5;
pub const BACKWARD_TOL: f64 = 1e-5;
pub const STATIONARY_TOL: f64 = 1e-9;
pub const FOCAL_TOL: f64 = 1e-2;
pub const ASYMPTOTIC_TOL: f64 = 1e-5;

/// Hyperbolic times far enough back or forward for the limits to be read off.
const BACKWARD_TIME: f64 = -15.0;
const IDEAL_TIME: f64 = 15.0;
const GEODESIC_TIME: f64 = 20.0;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    /// `None` when the check could not be evaluated.
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub evaluations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub checks: Vec<Check>,
    pub overall_pass: bool,
}

pub struct BatteryInput<'a> {
    pub descriptor: &'a IsoDescriptor,
    pub chart_samples: &'a [Vec<f64>],
    pub points: &'a [Vector],
    pub times: &'a [f64],
    pub oracle: OracleSettings,
    pub tolerance_scale: f64,
    /// Multiplies every Lorentzian flow position; 1 except in fault-injection runs.
    pub flow_scale: f64,
}

struct Outcome {
    residual: f64,
    evaluations: usize,
    detail: Option<String>,
}

fn outcome(residual: f64, evaluations: usize) -> Result<Outcome> {
    Ok(Outcome { residual, evaluations, detail: None })
}

fn check(name: &'static str, tolerance: f64, result: Result<Outcome>) -> Check {
    match result {
        Ok(o) => Check {
            name,
            max_residual: Some(o.residual),
            tolerance,
            pass: o.residual.is_finite() && o.residual < tolerance,
            evaluations: o.evaluations,
            detail: o.detail,
        },
        Err(e) => Check {
            name,
            max_residual: None,
            tolerance,
            pass: false,
            evaluations: 0,
            detail: Some(e.to_string()),
        },
    }
}

fn max_of(values: Vec<Result<f64>>) -> Result<(f64, usize)> {
    values.into_iter().try_fold((0.0f64, 0usize), |(m, k), v| Ok((m.max(v?), k + 1)))
}

/// At most `k` evenly spread entries of `v`, endpoints included.
fn thin(v: &[f64], k: usize) -> Vec<f64> {
    if v.len() <= k {
        return v.to_vec();
    }
    (0..k).map(|i| v[i * (v.len() - 1) / (k - 1)]).collect()
}

impl BatteryInput<'_> {
    fn lorentz(&self, x: &Vector, t: f64) -> Result<Vector> {
        let f = lorentz_flow(self.descriptor, x, t)?;
        Ok(if self.flow_scale == 1.0 { f } else { f.scale(self.flow_scale) })
    }

    fn gauge(&self) -> GaugeParams<f64> {
        GaugeParams::new(self.descriptor.n(), self.descriptor.r())
    }

    /// Grid times inside `[−1, frac·T]`, where finite differences stay well
    /// conditioned; `t = 0` if the grid has none.
    fn oracle_times(&self, frac: f64, k: usize) -> Vec<f64> {
        let hi = existence_window(self.descriptor).t.finite().map_or(f64::INFINITY, |t| frac * t);
        let inside: Vec<f64> = self.times.iter().copied().filter(|&t| (-1.0..=hi).contains(&t)).collect();
        if inside.is_empty() {
            vec![0.0]
        } else {
            thin(&inside, k)
        }
    }

    fn norm_law(&self) -> Result<Outcome> {
        let n = self.descriptor.n() as f64;
        let g = self.gauge();
        let pairs: Vec<(&Vector, f64)> =
            self.points.iter().flat_map(|x| self.times.iter().map(move |&t| (x, g.w(t)))).collect();
        let (worst, k) = max_of(pairs.par_iter().map(|&(x, s)| {
            let f = self.lorentz(x, s)?;
            Ok((f.square() - x.square() + 2.0 * n * s).abs())
        }).collect())?;
        outcome(worst, k)
    }

    fn gauge_round_trip(&self) -> Result<Outcome> {
        let (n, r) = (self.descriptor.n(), self.descriptor.r());
        let times: Vec<f64> = self.times.iter().copied().filter(|&t| t >= -1.0).collect();
        let pairs: Vec<(&Vector, f64)> =
            self.points.iter().flat_map(|x| times.iter().map(move |&t| (x, t))).collect();
        let (worst, k) = max_of(pairs.par_iter().map(|&(x, t)| {
            let direct = hyperbolic_flow(self.descriptor, x, t)?.into_vector();
            let via = gauge_lorentz_to_hyperbolic(|y: &Vector, s: f64| self.lorentz(y, s), n, r, x, t)?;
            Ok(distance(direct.coords(), via.vector().coords()) / direct.euclidean_norm())
        }).collect())?;
        let mut o = outcome(worst, k)?;
        o.detail = Some("relative, grid times t >= -1".into());
        Ok(o)
    }

    fn pde(&self, gauge: Gauge) -> Result<Outcome> {
        let settings = PdeSettings { h: self.oracle.fd_step, dt: self.oracle.dt, scheme: Scheme::Central };
        let g = self.gauge();
        let lower = existence_window(self.descriptor).lorentz_lower.finite();
        let times: Vec<f64> = self
            .oracle_times(0.75, 8)
            .into_iter()
            .filter_map(|t| match gauge {
                Gauge::Hyperbolic => Some(t),
                // keep clear of the singular time −r/(2n)
                Gauge::Lorentzian => {
                    let s = g.w(t);
                    lower.is_none_or(|lo| s >= 0.5 * lo).then_some(s)
                }
            })
            .collect();
        let samples = &self.chart_samples[..self.chart_samples.len().min(16)];
        let pairs: Vec<(&Vec<f64>, f64)> = samples.iter().flat_map(|u| times.iter().map(move |&t| (u, t))).collect();
        let (worst, k) = max_of(
            pairs
                .par_iter()
                .map(|&(u, t)| pde_residual(self.descriptor, u, t, gauge, settings))
                .collect(),
        )?;
        outcome(worst, k)
    }

    fn spread(&self) -> Result<Outcome> {
        let samples = &self.chart_samples[..self.chart_samples.len().min(4)];
        let times = self.oracle_times(0.8, 10);
        let (worst, k) = max_of(
            times
                .par_iter()
                .map(|&t| isoparametric_residual(self.descriptor, t, samples, TransportSpec::default()))
                .collect(),
        )?;
        outcome(worst, k)
    }

    fn backward(&self) -> Result<Outcome> {
        let d = self.descriptor;
        if classify_limits(d).backward == BackwardKind::Stationary {
            return Ok(Outcome { residual: 0.0, evaluations: 0, detail: Some("stationary".into()) });
        }
        let rows = self
            .points
            .par_iter()
            .map(|x| {
                let f = hyperbolic_flow(d, x, BACKWARD_TIME)?;
                Ok((
                    poincare_projection(f.vector())?.coords().to_vec(),
                    backward_limit_point(d, x)?.into_coords(),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let (flowed, limit): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
        Ok(Outcome {
            residual: hausdorff(&flowed, &limit),
            evaluations: flowed.len(),
            detail: Some(format!("Hausdorff distance in the ball at t = {BACKWARD_TIME}")),
        })
    }

    fn forward(&self) -> Result<(Outcome, f64)> {
        let d = self.descriptor;
        let limits = self.points.iter().map(|x| forward_limit_point(d, x)).collect::<Result<Vec<_>>>()?;
        let k = limits.len();
        let Some(first) = limits.first() else {
            return Ok((Outcome { residual: 0.0, evaluations: 0, detail: None }, STATIONARY_TOL));
        };
        let gap_at = |t: f64| -> Result<f64> {
            self.points.iter().zip(&limits).try_fold(0.0f64, |m, (x, p)| {
                let f = hyperbolic_flow(d, x, t)?;
                let gap = match p {
                    ForwardPoint::Ideal(q) => distance(poincare_projection(f.vector())?.coords(), q.coords()),
                    other => distance(f.vector().coords(), other.interior().expect("interior limit").coords()),
                };
                Ok(m.max(gap))
            })
        };
        let (residual, tol, detail) = match first {
            ForwardPoint::Fixed(_) => (gap_at(1.0)?, STATIONARY_TOL, "stationary".to_string()),
            ForwardPoint::Geodesic(_) => {
                (gap_at(GEODESIC_TIME)?, ASYMPTOTIC_TOL, format!("totally geodesic limit, distance at t = {GEODESIC_TIME}"))
            }
            ForwardPoint::Ideal(q) => {
                let c: Vec<String> = q.coords().iter().map(|v| format!("{:.6}", (v * 1e6).round() / 1e6 + 0.0)).collect();
                (gap_at(IDEAL_TIME)?, ASYMPTOTIC_TOL, format!("ideal point ({}), ball distance at t = {IDEAL_TIME}", c.join(", ")))
            }
            ForwardPoint::Focal(_) => {
                let end = existence_window(d).t.finite().expect("focal collapse has a finite time");
                let scale = end.abs().max(1.0);
                let (coarse, fine) = (gap_at(end - 1e-6 * scale)?, gap_at(end - 1e-9 * scale)?);
                let note = format!("focal collapse at T = {end}; distance {coarse:.2e} at T-1e-6, {fine:.2e} at T-1e-9");
                let residual = if fine < coarse { coarse } else { f64::INFINITY };
                (residual, FOCAL_TOL, note)
            }
        };
        Ok((Outcome { residual, evaluations: k, detail: Some(detail) }, tol))
    }

    pub fn run(&self) -> InvariantReport {
        let s = self.tolerance_scale;
        let mut checks = vec![
            check("norm_law", NORM_LAW_TOL * s, self.norm_law()),
            check("gauge_round_trip", GAUGE_TOL * s, self.gauge_round_trip()),
        ];
        if self.oracle.enabled {
            checks.push(check("pde_residual_hyperbolic", self.oracle.tolerance * s, self.pde(Gauge::Hyperbolic)));
            checks.push(check("pde_residual_lorentzian", self.oracle.tolerance * s, self.pde(Gauge::Lorentzian)));
            checks.push(check("isoparametric_spread", SPREAD_TOL * s, self.spread()));
        }
        match self.forward() {
            Ok((o, tol)) => checks.push(check("limit_consistency_forward", tol * s, Ok(o))),
            Err(e) => checks.push(check("limit_consistency_forward", ASYMPTOTIC_TOL * s, Err(e))),
        }
        checks.push(check("limit_consistency_backward", BACKWARD_TOL * s, self.backward()));
        let overall_pass = checks.iter().all(|c| c.pass);
        InvariantReport { checks, overall_pass }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thinning_keeps_endpoints() {
        let v: Vec<f64> = (0..21).map(f64::from).collect();
        let t = thin(&v, 8);
        assert_eq!(t.len(), 8);
        assert_eq!((t[0], t[7]), (0.0, 20.0));
        assert_eq!(thin(&v[..3], 8), vec![0.0, 1.0, 2.0]);
    }

    #[test]
    fn failed_evaluation_fails_the_check() {
        let c = check("x", 1.0, Err(hyperflow::Error::Internal("boom".into())));
        assert!(!c.pass);
        assert_eq!(c.max_residual, None);
        let c = check("x", 1.0, outcome(f64::INFINITY, 1));
        assert!(!c.pass);
    }
}
