//! Closed-form Lorentzian and hyperbolic mean curvature flows.
//!
//! The Lorentzian flow `F` moves a submanifold of `H^m(−1)` inside `ℝ^{m,1}`
//! and leaves the hyperboloid; the hyperbolic flow `f` stays on it. Both are
//! evaluated recursively down the descriptor, starting from an initial point
//! `x` of the submanifold.

mod gauge;
mod window;

pub use gauge::{gauge_hyperbolic_to_lorentz, gauge_lorentz_to_hyperbolic, GaugeParams};
pub use window::{
    existence_window, hyperbolic_from_lorentz, lorentz_from_intrinsic, product_backward_time,
    ExistenceWindow, TimeBound,
};

use crate::descriptor::{join_product, split_product, IsoDescriptor, UmbilicData, UmbilicInner};
use crate::error::{Error, Result};
use crate::lorentz::{HyperboloidPoint, LorentzVector};
use crate::scalar::{count, lit, Real};

/// Below this `|1 − α²|` the horosphere branch replaces the general formula.
pub(crate) fn is_horospherical<T: Real>(one_minus_alpha2: T) -> bool {
    one_minus_alpha2.abs() < lit(1e-8)
}

fn time_error<T: Real>(t: T, bound: String) -> Error {
    Error::TimeOutOfRange {
        t: t.to_f64().unwrap_or(f64::NAN),
        bound,
    }
}

/// Wraps a flow output as a hyperboloid point, failing on overflow.
pub(crate) fn finite_point<T: Real>(v: LorentzVector<T>, r: T, t: T) -> Result<HyperboloidPoint<T>> {
    if v.is_finite() {
        Ok(HyperboloidPoint::from_flow(v, r))
    } else {
        Err(Error::Overflow {
            t: t.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// How radicands that reach zero are treated: rejected, or clamped when
/// evaluating exactly at a collapse time.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Strict,
    Closure,
}

fn root<T: Real>(x: T, t: T, what: &str, mode: Mode) -> Result<T> {
    if x > T::zero() {
        Ok(x.sqrt())
    } else if mode == Mode::Closure && x > -lit::<T>(1e-9) {
        Ok(T::zero())
    } else {
        Err(time_error(t, format!("{what}: radicand {x} is not positive")))
    }
}

/// Intrinsic flow `f₁` of `M` inside the umbilical hypersurface.
fn intrinsic_flow<T: Real>(
    umb: &UmbilicData<T>,
    inner: &UmbilicInner<T>,
    x: &LorentzVector<T>,
    s: T,
    mode: Mode,
) -> Result<LorentzVector<T>> {
    let z = umb.to_model(x);
    let moved = match inner {
        UmbilicInner::Hyperbolic(d) => {
            let z = LorentzVector::from_vec(z);
            hyperbolic_impl(d, &z, s / umb.model_radius2(), mode)?.into_coords()
        }
        UmbilicInner::Spherical(leaf) => leaf.spherical_flow_impl(&z, s, mode == Mode::Closure)?,
        UmbilicInner::Euclidean(e) => e.flow_impl(&z, s, mode == Mode::Closure)?,
    };
    umb.from_model(&moved)
}

fn lorentz_impl<T: Real>(
    d: &IsoDescriptor<T>,
    x: &LorentzVector<T>,
    t: T,
    mode: Mode,
) -> Result<LorentzVector<T>> {
    let n = d.n();
    if n == 0 {
        return Ok(x.clone());
    }
    let two_n = count::<T>(2 * n);
    match d {
        IsoDescriptor::Ambient { m, r } => {
            let s = root(T::one() + count::<T>(2 * m) * t / *r, t, "1 + 2mt/r", mode)?;
            Ok(x.scale(s))
        }
        IsoDescriptor::FullProduct { l, r, leaf } => {
            let (xv, y) = split_product(x, *l);
            let a1 = root(T::one() + count::<T>(2 * l) * t / *r, t, "a1", mode)?;
            let y = leaf.euclidean_flow_impl(&y, t, mode == Mode::Closure)?;
            let xv: Vec<T> = xv.iter().map(|&v| a1 * v).collect();
            Ok(join_product(&xv, &y))
        }
        IsoDescriptor::Umbilic { umb, inner } => {
            let k = umb.one_minus_alpha2();
            if is_horospherical(k) {
                let f1 = intrinsic_flow(umb, inner, x, t, mode)?;
                return Ok(f1.axpy(-count::<T>(n) * t * umb.beta(), umb.xi()));
            }
            let eta = umb.eta().expect("eta exists off the horosphere branch");
            let scale = root(T::one() + two_n * t * k, t, "2nt(1-alpha^2) + 1", mode)?;
            if scale == T::zero() {
                return Ok(eta.clone());
            }
            let s = (two_n * t * k).ln_1p() / (two_n * k);
            let f1 = intrinsic_flow(umb, inner, x, s, mode)?;
            Ok((&f1 - eta).scale(scale) + eta.clone())
        }
    }
}

fn hyperbolic_impl<T: Real>(
    d: &IsoDescriptor<T>,
    x: &LorentzVector<T>,
    t: T,
    mode: Mode,
) -> Result<LorentzVector<T>> {
    let n = d.n();
    if n == 0 {
        return Ok(x.clone());
    }
    let nn = count::<T>(n);
    let two_n = count::<T>(2 * n);
    let decay = (-nn * t).exp();
    match d {
        IsoDescriptor::Ambient { .. } => Ok(x.clone()),
        IsoDescriptor::FullProduct { l, r, leaf } => {
            let w = (two_n * t).exp_m1() / two_n;
            let (xv, y) = split_product(x, *l);
            let a1 = root(T::one() + count::<T>(2 * l) * w / *r, t, "a1", mode)?;
            let y = leaf.euclidean_flow_impl(&y, w, mode == Mode::Closure)?;
            let xv: Vec<T> = xv.iter().map(|&v| decay * a1 * v).collect();
            let y: Vec<T> = y.iter().map(|&v| decay * v).collect();
            Ok(join_product(&xv, &y))
        }
        IsoDescriptor::Umbilic { umb, inner } => {
            let k = umb.one_minus_alpha2();
            if is_horospherical(k) {
                let w = (two_n * t).exp_m1() / two_n;
                let f1 = intrinsic_flow(umb, inner, x, w, mode)?;
                return Ok(f1.axpy(-nn * w * umb.beta(), umb.xi()).scale(decay));
            }
            let eta = umb.eta().expect("eta exists off the horosphere branch");
            if umb.is_totally_geodesic() {
                return intrinsic_flow(umb, inner, x, t, mode);
            }
            let a2 = T::one() - k;
            let v = root(k + a2 * (-two_n * t).exp(), t, "v_alpha", mode)?;
            if v == T::zero() {
                return Ok(eta.scale(decay));
            }
            // s_α(w(t)) written without the cancellation in 1 + 2nw(1−α²)
            let s = (a2 + k * (two_n * t).exp()).ln() / (two_n * k);
            let f1 = intrinsic_flow(umb, inner, x, s, mode)?;
            Ok(f1.scale(v).axpy(decay - v, eta))
        }
    }
}

fn check_upper<T: Real>(t: T, end: TimeBound<T>, what: &str) -> Result<()> {
    if end.admits(t) {
        Ok(())
    } else {
        Err(time_error(t, format!("{what} exists for t < {end}")))
    }
}

/// Lorentzian mean curvature flow `F(x,t)` in `ℝ^{m,1}`.
///
/// Defined on the full Lorentzian domain, including times below `−r/(2n)`
/// that have no hyperbolic counterpart.
pub fn lorentz_flow<T: Real>(d: &IsoDescriptor<T>, x: &LorentzVector<T>, t: T) -> Result<LorentzVector<T>> {
    d.ensure_contains(x)?;
    check_upper(t, existence_window(d).t_dprime, "the Lorentzian flow")?;
    let v = lorentz_impl(d, x, t, Mode::Strict)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow {
            t: t.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// Hyperbolic mean curvature flow `f(x,t)` in `H^m(−r)`, defined for `t < T`.
pub fn hyperbolic_flow<T: Real>(d: &IsoDescriptor<T>, x: &LorentzVector<T>, t: T) -> Result<HyperboloidPoint<T>> {
    d.ensure_contains(x)?;
    check_upper(t, existence_window(d).t, "the hyperbolic flow")?;
    finite_point(hyperbolic_impl(d, x, t, Mode::Strict)?, d.r(), t)
}

/// Evaluates the hyperbolic flow exactly at a finite maximal time `T`, where
/// the submanifold has collapsed onto a focal set.
pub fn hyperbolic_flow_at_collapse<T: Real>(d: &IsoDescriptor<T>, x: &LorentzVector<T>) -> Result<HyperboloidPoint<T>> {
    d.ensure_contains(x)?;
    let end = existence_window(d)
        .t
        .finite()
        .ok_or_else(|| Error::InvalidArgument("the flow does not collapse".into()))?;
    finite_point(hyperbolic_impl(d, x, end, Mode::Closure)?, d.r(), end)
}

/// Evaluates the Lorentzian flow exactly at a finite collapse time `T″`.
pub fn lorentz_flow_at_collapse<T: Real>(d: &IsoDescriptor<T>, x: &LorentzVector<T>) -> Result<LorentzVector<T>> {
    d.ensure_contains(x)?;
    let end = existence_window(d)
        .t_dprime
        .finite()
        .ok_or_else(|| Error::InvalidArgument("the flow does not collapse".into()))?;
    lorentz_impl(d, x, end, Mode::Closure)
}

/// Intrinsic flow `f₁(x,s)` inside the umbilical hypersurface of an
/// `Umbilic` descriptor; used by the limit analysis.
pub fn intrinsic_umbilic_flow<T: Real>(d: &IsoDescriptor<T>, x: &LorentzVector<T>, s: T) -> Result<LorentzVector<T>> {
    match d {
        IsoDescriptor::Umbilic { umb, inner } => {
            d.ensure_contains(x)?;
            intrinsic_flow(umb, inner, x, s, Mode::Strict)
        }
        _ => Err(Error::InvalidArgument("not an umbilic descriptor".into())),
    }
}

/// Mean curvature flow of a product-of-spheres leaf: the spherical flow `f₂`
/// inside the sphere of squared radius `Σ s_i`, and its Euclidean gauge `F₂`
/// at the matching Euclidean time `t(s)`.
pub fn sphere_leaf_flow<T: Real>(
    leaf: &crate::descriptor::ProductOfSpheres<T>,
    y: &[T],
    s: T,
) -> Result<(Vec<T>, Vec<T>)> {
    let spherical = leaf.spherical_flow(y, s)?;
    let euclidean = leaf.euclidean_flow(y, leaf.euclidean_time(s))?;
    Ok((spherical, euclidean))
}
