//! Residuals of the flow equation, of isoparametricity and of normal flatness.

use super::fd::{self, AmbientKind, ImmersionEvaluator, LocalGeometry, Scheme};
use crate::descriptor::IsoDescriptor;
use crate::error::{Error, Result};
use crate::flow::{existence_window, hyperbolic_flow, lorentz_flow};
use crate::linalg::{self, Matrix};
use crate::scalar::{lit, Real};

/// Which of the two flows is being checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gauge {
    /// The flow inside `H^m(−r)`.
    Hyperbolic,
    /// The flow in `ℝ^{m,1}`.
    Lorentzian,
}

/// Chart `u ↦ f(X(u), t)` of the evolved submanifold in the chosen gauge.
pub fn flow_chart<'a, T: Real>(d: &'a IsoDescriptor<T>, t: T, gauge: Gauge) -> ImmersionEvaluator<'a, T> {
    match gauge {
        Gauge::Hyperbolic => ImmersionEvaluator::new(d.n(), AmbientKind::Hyperboloid { r: d.r() }, move |u: &[T]| {
            Ok(hyperbolic_flow(d, &d.immerse(u)?, t)?.into_vector().into_coords())
        }),
        Gauge::Lorentzian => ImmersionEvaluator::new(d.n(), AmbientKind::Minkowski, move |u: &[T]| {
            Ok(lorentz_flow(d, &d.immerse(u)?, t)?.into_coords())
        }),
    }
}

/// Differencing parameters for [`pde_residual`].
#[derive(Debug, Clone, Copy)]
pub struct PdeSettings<T> {
    /// Spatial step.
    pub h: T,
    /// Time step of the central velocity difference.
    pub dt: T,
    pub scheme: Scheme,
}

impl<T: Real> Default for PdeSettings<T> {
    fn default() -> Self {
        Self {
            h: lit(1e-3),
            dt: lit(1e-4),
            scheme: Scheme::Central,
        }
    }
}

/// `‖∂_t f − H‖` at the chart point `u` and time `t`.
///
/// The hyperbolic residual is measured after removing the radial component,
/// with the (positive) Lorentzian norm of the tangent space; the Lorentzian
/// residual uses the coordinate norm, which bounds every component.
pub fn pde_residual<T: Real>(d: &IsoDescriptor<T>, u: &[T], t: T, gauge: Gauge, s: PdeSettings<T>) -> Result<T> {
    fd::check_step(s.h)?;
    if !(s.dt > T::zero()) {
        return Err(Error::InvalidArgument("time step must be positive".into()));
    }
    let window = existence_window(d);
    let (upper, reach) = match gauge {
        Gauge::Hyperbolic => (window.t, s.dt),
        Gauge::Lorentzian => (window.t_dprime, s.dt),
    };
    let reach = if s.scheme == Scheme::Richardson { reach * lit(2.0) } else { reach };
    if !upper.admits(t + reach) {
        return Err(Error::TimeOutOfRange {
            t: t.to_f64().unwrap_or(f64::NAN),
            bound: format!("{upper} minus the time margin"),
        });
    }
    let x = d.immerse(u)?;
    let at = |tau: T| -> Result<Vec<T>> {
        Ok(match gauge {
            Gauge::Hyperbolic => hyperbolic_flow(d, &x, tau)?.into_vector().into_coords(),
            Gauge::Lorentzian => lorentz_flow(d, &x, tau)?.into_coords(),
        })
    };
    let central = |k: T| -> Result<Vec<T>> {
        let (p, m) = (at(t + k)?, at(t - k)?);
        Ok(p.iter().zip(&m).map(|(&a, &b)| (a - b) / (lit::<T>(2.0) * k)).collect())
    };
    let velocity = match s.scheme {
        Scheme::Central => central(s.dt)?,
        Scheme::Richardson => {
            let (f, c) = (central(s.dt)?, central(s.dt * lit(2.0))?);
            f.iter().zip(&c).map(|(&a, &b)| (lit::<T>(4.0) * a - b) / lit(3.0)).collect()
        }
    };
    let imm = flow_chart(d, t, gauge);
    let geo = fd::local_geometry(&imm, u, s.h, s.scheme)?;
    let hn = geo.mean_curvature();
    let mut diff: Vec<T> = velocity.iter().zip(&hn).map(|(&a, &b)| a - b).collect();
    Ok(match gauge {
        Gauge::Hyperbolic => {
            let ambient = imm.ambient();
            let p = &geo.jet.point;
            let c = ambient.inner(&diff, p) / ambient.inner(p, p);
            diff.iter_mut().zip(p).for_each(|(a, &b)| *a = *a - c * b);
            ambient.inner(&diff, &diff).abs().sqrt()
        }
        Gauge::Lorentzian => linalg::norm(&diff),
    })
}

/// Path discretization for the normal-frame transport.
#[derive(Debug, Clone, Copy)]
pub struct TransportSpec<T> {
    /// Straight chart segments are cut into this many steps.
    pub steps: usize,
    pub h: T,
    /// Scheme used for the shape operators at the endpoints.
    pub scheme: Scheme,
}

impl<T: Real> Default for TransportSpec<T> {
    fn default() -> Self {
        Self {
            steps: 400,
            h: lit(1e-3),
            scheme: Scheme::Richardson,
        }
    }
}

/// Symmetric (polar) orthonormalization: `w ↦ w G^{−1/2}`, the closest
/// orthonormal frame. For spacelike normal spaces only.
fn polar_orthonormalize<T: Real>(ambient: AmbientKind<T>, w: Vec<Vec<T>>) -> Result<Vec<Vec<T>>> {
    let k = w.len();
    if k == 0 {
        return Ok(w);
    }
    let mut g = linalg::zeros(k, k);
    for a in 0..k {
        for b in 0..k {
            g[a][b] = ambient.inner(&w[a], &w[b]);
        }
    }
    let s = linalg::inverse_sqrt_spd(&g)
        .ok_or_else(|| Error::ChartDegenerate("transported normal frame collapsed".into()))?;
    Ok((0..k)
        .map(|a| {
            let mut v = vec![T::zero(); w[0].len()];
            for b in 0..k {
                v.iter_mut().zip(&w[b]).for_each(|(o, &x)| *o = *o + s[b][a] * x);
            }
            v
        })
        .collect())
}

/// Normal frame at `to`, obtained by transporting `frame` from `from` along
/// the chart segment with projection followed by polar retraction. The
/// retraction cancels the symmetric second-order error of the projection,
/// so the result converges quadratically in the step count.
pub fn transport_normals<T: Real>(
    imm: &ImmersionEvaluator<T>,
    from: &[T],
    to: &[T],
    frame: Vec<Vec<T>>,
    spec: TransportSpec<T>,
) -> Result<Vec<Vec<T>>> {
    let steps = spec.steps.max(1);
    let mut frame = frame;
    for k in 1..=steps {
        let s = lit::<T>(k as f64) / lit(steps as f64);
        let u: Vec<T> = from.iter().zip(to).map(|(&a, &b)| a + s * (b - a)).collect();
        let geo = fd::tangent_geometry(imm, &u, spec.h)?;
        let projected = frame.iter().map(|v| geo.normal_part(v)).collect();
        frame = polar_orthonormalize(imm.ambient(), projected)?;
    }
    Ok(frame)
}

fn probe_normals<T: Real>(frame: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = frame.to_vec();
    let inv = T::one() / lit::<T>(2.0).sqrt();
    for a in 0..frame.len() {
        for b in (a + 1)..frame.len() {
            out.push(frame[a].iter().zip(&frame[b]).map(|(&x, &y)| (x + y) * inv).collect());
        }
    }
    out
}

fn principal_curvatures<T: Real>(geo: &LocalGeometry<T>, normals: &[Vec<T>]) -> Vec<Vec<T>> {
    normals
        .iter()
        .map(|nu| linalg::symmetric_eigen(&geo.shape_operator(nu)).0)
        .collect()
}

/// Largest deviation between the principal curvatures at `base` and at each
/// sample, along normal fields transported from `base`. The probed normals
/// are the transported basis and the normalized sums of its pairs.
pub fn isoparametric_spread<T: Real>(
    imm: &ImmersionEvaluator<T>,
    base: &[T],
    samples: &[Vec<T>],
    spec: TransportSpec<T>,
) -> Result<T> {
    let geo0 = fd::local_geometry(imm, base, spec.h, spec.scheme)?;
    let frame0 = geo0.normals.clone();
    if geo0.normal_signs.iter().any(|&s| s < T::zero()) {
        return Err(Error::InvalidArgument("transport needs a spacelike normal space".into()));
    }
    let reference = principal_curvatures(&geo0, &probe_normals(&frame0));
    let mut spread = T::zero();
    for u in samples {
        let frame = transport_normals(imm, base, u, frame0.clone(), spec)?;
        let geo = fd::local_geometry(imm, u, spec.h, spec.scheme)?;
        let here = principal_curvatures(&geo, &probe_normals(&frame));
        for (a, b) in reference.iter().zip(&here) {
            for (&x, &y) in a.iter().zip(b) {
                spread = spread.max((x - y).abs());
            }
        }
    }
    Ok(spread)
}

/// Principal-curvature spread of the hyperbolic flow at time `t`, with the
/// first chart sample as the base point.
pub fn isoparametric_residual<T: Real>(
    d: &IsoDescriptor<T>,
    t: T,
    samples: &[Vec<T>],
    spec: TransportSpec<T>,
) -> Result<T> {
    let (base, rest) = samples.split_first().ok_or(Error::InsufficientSamples { needed: 1, found: 0 })?;
    isoparametric_spread(&flow_chart(d, t, Gauge::Hyperbolic), base, rest, spec)
}

fn commutator_norm<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> T {
    let ab = linalg::matmul(a, b);
    let ba = linalg::matmul(b, a);
    ab.iter()
        .zip(&ba)
        .flat_map(|(r, s)| r.iter().zip(s).map(|(&x, &y)| (x - y) * (x - y)))
        .fold(T::zero(), |s, v| s + v)
        .sqrt()
}

/// Norm of the normal curvature tensor, `(Σ_{a<b} ‖[A_a, A_b]‖²)^{1/2}` over
/// orthonormal frames; independent of the normal frame chosen. Valid in
/// ambients of constant curvature.
pub fn normal_curvature_norm<T: Real>(geo: &LocalGeometry<T>) -> T {
    let shapes: Vec<Matrix<T>> = geo.normals.iter().map(|nu| geo.shape_operator(nu)).collect();
    let mut total = T::zero();
    for a in 0..shapes.len() {
        for b in (a + 1)..shapes.len() {
            let c = commutator_norm(&shapes[a], &shapes[b]);
            total = total + c * c;
        }
    }
    total.sqrt()
}

/// Largest normal curvature over chart samples of a submanifold of a sphere
/// (or any constant-curvature ambient). Codimension below two is flat by
/// convention and returns 0.
pub fn flat_normal_residual<T: Real>(imm: &ImmersionEvaluator<T>, samples: &[Vec<T>], h: T) -> Result<T> {
    if samples.is_empty() {
        return Err(Error::InsufficientSamples { needed: 1, found: 0 });
    }
    fd::check_step(h)?;
    let mut worst = T::zero();
    for u in samples {
        let geo = fd::local_geometry(imm, u, h, Scheme::Richardson)?;
        if geo.normals.len() < 2 {
            return Ok(T::zero());
        }
        worst = worst.max(normal_curvature_norm(&geo));
    }
    Ok(worst)
}

/// Compares the normal curvature of a submanifold of the unit ball in the
/// Euclidean metric with its value in the hyperbolic metric
/// `4(1−‖y‖²)^{−2}·Euclidean`, rescaled by the conformal factor. The two
/// must agree since normal flatness is conformally invariant; returns the
/// largest discrepancy.
pub fn conformal_normal_curvature_gap<T: Real>(
    ball_chart: &ImmersionEvaluator<T>,
    samples: &[Vec<T>],
    h: T,
) -> Result<T> {
    if samples.is_empty() {
        return Err(Error::InsufficientSamples { needed: 1, found: 0 });
    }
    fd::check_step(h)?;
    let lifted = ImmersionEvaluator::new(ball_chart.chart_dim(), AmbientKind::Hyperboloid { r: T::one() }, |u: &[T]| {
        let y = ball_chart.eval(u)?;
        let y2 = y.iter().fold(T::zero(), |s, &v| s + v * v);
        if y2 >= T::one() {
            return Err(Error::Domain("chart leaves the unit ball".into()));
        }
        let den = T::one() - y2;
        let mut x: Vec<T> = y.iter().map(|&v| lit::<T>(2.0) * v / den).collect();
        x.push((T::one() + y2) / den);
        Ok(x)
    });
    let mut worst = T::zero();
    for u in samples {
        let euclid = fd::local_geometry(ball_chart, u, h, Scheme::Richardson)?;
        let hyper = fd::local_geometry(&lifted, u, h, Scheme::Richardson)?;
        let y2 = euclid.jet.point.iter().fold(T::zero(), |s, &v| s + v * v);
        let e_rho = lit::<T>(2.0) / (T::one() - y2);
        let gap = normal_curvature_norm(&euclid) - e_rho * e_rho * normal_curvature_norm(&hyper);
        worst = worst.max(gap.abs());
    }
    Ok(worst)
}
