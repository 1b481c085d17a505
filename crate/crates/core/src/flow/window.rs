use std::fmt;

use crate::descriptor::{IsoDescriptor, UmbilicInner};
use crate::scalar::{count, Real};

/// An end of a time interval: a finite value or an explicit unbounded marker.
///
/// `Unbounded` is `+∞` for upper ends and `−∞` for lower ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeBound<T> {
    Finite(T),
    Unbounded,
}

impl<T: Real> TimeBound<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            TimeBound::Finite(t) => Some(t),
            TimeBound::Unbounded => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, TimeBound::Finite(_))
    }

    /// Smaller of two upper ends.
    pub fn min(self, other: Self) -> Self {
        match (self, other) {
            (TimeBound::Finite(a), TimeBound::Finite(b)) => TimeBound::Finite(a.min(b)),
            (TimeBound::Finite(a), _) | (_, TimeBound::Finite(a)) => TimeBound::Finite(a),
            _ => TimeBound::Unbounded,
        }
    }

    /// Whether `t` lies strictly below this upper end.
    pub fn admits(self, t: T) -> bool {
        match self {
            TimeBound::Finite(end) => t < end,
            TimeBound::Unbounded => true,
        }
    }

    pub fn map(self, f: impl FnOnce(T) -> T) -> Self {
        match self {
            TimeBound::Finite(t) => TimeBound::Finite(f(t)),
            TimeBound::Unbounded => TimeBound::Unbounded,
        }
    }
}

impl<T: fmt::Display> fmt::Display for TimeBound<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimeBound::Finite(t) => write!(f, "{t}"),
            TimeBound::Unbounded => write!(f, "unbounded"),
        }
    }
}

/// Maximal times of the flow of a descriptor.
#[derive(Debug, Clone, PartialEq)]
pub struct ExistenceWindow<T> {
    /// Maximal time of the intrinsic flow inside the leaf or umbilical hypersurface.
    pub t_prime: TimeBound<T>,
    /// Collapse time of the Lorentzian flow.
    pub t_dprime: TimeBound<T>,
    /// Maximal time of the hyperbolic flow; the flow exists on `(−∞, T)`.
    pub t: TimeBound<T>,
    /// Intrinsic time at which the backward limit is read off, `None` for
    /// totally geodesic descriptors. For a chain of totally geodesic umbilic
    /// wrappers this is the value at the first level that moves.
    pub t_alpha: Option<T>,
    /// Number of totally geodesic umbilic wrappers crossed to reach `t_alpha`.
    pub alpha_chain: usize,
    /// Lower end `−r/(2n)` of the Lorentzian times that have a hyperbolic counterpart.
    pub lorentz_lower: TimeBound<T>,
}

/// Converts a Lorentzian collapse time into the hyperbolic one,
/// `T = ln(1 + 2nT″)/(2n)`.
pub fn hyperbolic_from_lorentz<T: Real>(n: usize, t_dprime: TimeBound<T>) -> TimeBound<T> {
    let two_n = count::<T>(2 * n);
    t_dprime.map(|t| (two_n * t).ln_1p() / two_n)
}

/// `T″ = (e^{2n(1−α²)T′} − 1)/(2n(1−α²))`, with the horosphere and the
/// unbounded cases handled explicitly.
///
/// `k` is `1 − α²`.
pub fn lorentz_from_intrinsic<T: Real>(n: usize, k: T, t_prime: TimeBound<T>) -> TimeBound<T> {
    if super::is_horospherical(k) {
        return t_prime;
    }
    let two_nk = count::<T>(2 * n) * k;
    match t_prime {
        TimeBound::Finite(tp) => TimeBound::Finite((two_nk * tp).exp_m1() / two_nk),
        TimeBound::Unbounded if k > T::zero() => TimeBound::Unbounded,
        TimeBound::Unbounded => TimeBound::Finite(-T::one() / two_nk),
    }
}

/// `q* = −((r−1)/(2(n−l)))·ln(1 + (n−l)/(n(r−1)))`, the leaf time matching
/// the Lorentzian time `−1/(2n)`.
pub fn product_backward_time<T: Real>(n: usize, l: usize, r: T) -> T {
    let nn = count::<T>(n);
    if n == l {
        return -T::one() / (count::<T>(2) * nn);
    }
    let k = count::<T>(n - l);
    let rm1 = r - T::one();
    -(rm1 / (count::<T>(2) * k)) * (k / (nn * rm1)).ln_1p()
}

/// Maximal existence times of the flows of `d`.
pub fn existence_window<T: Real>(d: &IsoDescriptor<T>) -> ExistenceWindow<T> {
    let n = d.n();
    let two_n = count::<T>(2 * n);
    let lorentz_lower = if n == 0 {
        TimeBound::Unbounded
    } else {
        TimeBound::Finite(-d.r() / two_n)
    };
    let stationary = ExistenceWindow {
        t_prime: TimeBound::Unbounded,
        t_dprime: TimeBound::Unbounded,
        t: TimeBound::Unbounded,
        t_alpha: None,
        alpha_chain: 0,
        lorentz_lower,
    };
    if n == 0 {
        return stationary;
    }
    match d {
        IsoDescriptor::Ambient { .. } => stationary,
        IsoDescriptor::FullProduct { l, r, leaf } => {
            let t_dprime = leaf.euclidean_collapse_time();
            let tg = d.classify_shape().totally_geodesic;
            ExistenceWindow {
                t_prime: leaf.spherical_window(),
                t_dprime,
                t: hyperbolic_from_lorentz(n, t_dprime),
                t_alpha: (!tg).then(|| product_backward_time(n, *l, *r)),
                alpha_chain: 0,
                lorentz_lower,
            }
        }
        IsoDescriptor::Umbilic { umb, inner } => {
            let k = umb.one_minus_alpha2();
            let (t_prime, inner_alpha) = match inner {
                UmbilicInner::Hyperbolic(d_in) => {
                    let w = existence_window(d_in);
                    let r_l = umb.model_radius2();
                    (w.t.map(|t| r_l * t), w.t_alpha.map(|ta| (ta, w.alpha_chain)))
                }
                UmbilicInner::Spherical(leaf) => (leaf.spherical_window(), None),
                UmbilicInner::Euclidean(e) => (e.collapse_time(), None),
            };
            let t_dprime = lorentz_from_intrinsic(n, k, t_prime);
            let (t_alpha, alpha_chain) = if umb.is_totally_geodesic() {
                match inner_alpha {
                    Some((ta, chain)) => (Some(ta), chain + 1),
                    None => (None, 0),
                }
            } else if super::is_horospherical(k) {
                (Some(-T::one() / two_n), 0)
            } else {
                (Some((-k).ln_1p() / (two_n * k)), 0)
            };
            ExistenceWindow {
                t_prime,
                t_dprime,
                t: hyperbolic_from_lorentz(n, t_dprime),
                t_alpha,
                alpha_chain,
                lorentz_lower,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn fin(b: TimeBound<f64>) -> f64 {
        b.finite().expect("finite bound")
    }

    #[test]
    fn circle_window() {
        let w = existence_window(&catalog::circle_h2::<f64>());
        assert_eq!(w.t_prime, TimeBound::Unbounded);
        assert!((fin(w.t_dprime) - 1.5).abs() < 1e-15);
        assert!((fin(w.t) - 2f64.ln()).abs() < 1e-15);
        assert!((w.t_alpha.unwrap() + 1.5 * (4f64 / 3.0).ln()).abs() < 1e-14);
        assert_eq!(w.lorentz_lower, TimeBound::Finite(-0.5));
    }

    #[test]
    fn tube_window() {
        let w = existence_window(&catalog::tube_h3::<f64>());
        assert_eq!(w.t_dprime, TimeBound::Finite(0.5));
        assert!((fin(w.t) - 3f64.ln() / 4.0).abs() < 1e-15);
        assert!((w.t_alpha.unwrap() + 0.5 * 1.5f64.ln()).abs() < 1e-15);
        let w = existence_window(&catalog::clifford_tube_h5::<f64>());
        assert!((fin(w.t) - 4f64.ln() / 6.0).abs() < 1e-15);
    }

    #[test]
    fn horocycle_window() {
        let w = existence_window(&catalog::horocycle_h2::<f64>());
        assert_eq!((w.t_prime, w.t_dprime, w.t), (TimeBound::Unbounded, TimeBound::Unbounded, TimeBound::Unbounded));
        assert_eq!(w.t_alpha, Some(-0.5));
    }

    #[test]
    fn nested_chain() {
        let w = existence_window(&catalog::circle_in_h4_nested::<f64>());
        let inner = existence_window(&catalog::circle_h2::<f64>());
        assert!((fin(w.t) - fin(inner.t)).abs() < 1e-14);
        assert_eq!(w.t_alpha, inner.t_alpha);
        assert_eq!(w.alpha_chain, 2);
        let w = existence_window(&catalog::ambient_h3::<f64>());
        assert_eq!(w.t_alpha, None);
    }

    #[test]
    fn geodesic_sphere_window() {
        let w = existence_window(&catalog::geodesic_sphere_h3::<f64>());
        assert!((fin(w.t) - 2f64.ln() / 2.0).abs() < 1e-15);
    }
}
