//! Time reparametrizations linking the Lorentzian and hyperbolic flows.

use crate::error::{Error, Result};
use crate::lorentz::{HyperboloidPoint, LorentzVector};
use crate::scalar::{count, Real};

fn out_of_range<T: Real>(t: T, bound: String) -> Error {
    Error::TimeOutOfRange {
        t: t.to_f64().unwrap_or(f64::NAN),
        bound,
    }
}

fn positive_root<T: Real>(x: T, t: T, what: &str) -> Result<T> {
    if x > T::zero() {
        Ok(x.sqrt())
    } else {
        Err(out_of_range(t, format!("{what} requires a positive radicand, got {x}")))
    }
}

/// Gauge functions for a flow of an `n`-dimensional submanifold of `H^m(−r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeParams<T> {
    pub n: usize,
    pub r: T,
}

impl<T: Real> GaugeParams<T> {
    pub fn new(n: usize, r: T) -> Self {
        Self { n, r }
    }

    fn two_n(&self) -> T {
        count::<T>(2 * self.n)
    }

    /// `w(t) = (r/2n)(e^{2nt/r} − 1)`, the Lorentzian time matching hyperbolic time `t`.
    pub fn w(&self, t: T) -> T {
        if self.n == 0 {
            return t;
        }
        let k = self.two_n() / self.r;
        (k * t).exp_m1() / k
    }

    /// Inverse of [`Self::w`]: `(r/2n)·ln(1 + 2nt/r)`.
    pub fn w_inverse(&self, t: T) -> Result<T> {
        if self.n == 0 {
            return Ok(t);
        }
        let k = self.two_n() / self.r;
        if k * t <= -T::one() {
            return Err(Error::GaugeDomain {
                t: t.to_f64().unwrap_or(f64::NAN),
                bound: format!("Lorentzian time must exceed -r/(2n) = {}", -self.r / self.two_n()),
            });
        }
        Ok((k * t).ln_1p() / k)
    }

    /// `s_α(t) = ln(2nt(1−α²) + 1)/(2n(1−α²))`.
    pub fn s_alpha(&self, alpha: T, t: T) -> Result<T> {
        let k = T::one() - alpha * alpha;
        if self.n == 0 || k == T::zero() {
            return Ok(t);
        }
        let x = self.two_n() * t * k;
        if x <= -T::one() {
            return Err(out_of_range(t, format!("s_alpha needs 2nt(1-alpha^2) > -1, got {x}")));
        }
        Ok(x.ln_1p() / (self.two_n() * k))
    }

    /// `v_α(t) = √(1 − α² + α² e^{−2nt})`.
    pub fn v_alpha(&self, alpha: T, t: T) -> Result<T> {
        let a2 = alpha * alpha;
        positive_root(T::one() - a2 + a2 * (-self.two_n() * t).exp(), t, "v_alpha")
    }

    /// `a₁(t) = √(1 + 2lt/r)`.
    pub fn a1(&self, l: usize, t: T) -> Result<T> {
        positive_root(T::one() + count::<T>(2 * l) * t / self.r, t, "a1")
    }

    /// `a₂(t) = √(1 − 2(n−l)t/(r−1))`.
    pub fn a2(&self, l: usize, t: T) -> Result<T> {
        let k = count::<T>(2 * (self.n - l)) / (self.r - T::one());
        positive_root(T::one() - k * t, t, "a2")
    }

    /// `q(t) = −((r−1)/(2(n−l)))·ln(1 − 2(n−l)t/(r−1))`.
    pub fn q(&self, l: usize, t: T) -> Result<T> {
        if self.n == l {
            return Ok(t);
        }
        let k = count::<T>(2 * (self.n - l)) / (self.r - T::one());
        if k * t >= T::one() {
            return Err(out_of_range(t, "q needs 1 - 2(n-l)t/(r-1) > 0".into()));
        }
        Ok(-(-k * t).ln_1p() / k)
    }
}

/// `F(x,t) = √(1 + 2nt/r)·f(x, (r/2n)·ln(1 + 2nt/r))`.
pub fn gauge_hyperbolic_to_lorentz<T, F>(
    f: F,
    n: usize,
    r: T,
    x: &LorentzVector<T>,
    t: T,
) -> Result<LorentzVector<T>>
where
    T: Real,
    F: Fn(&LorentzVector<T>, T) -> Result<LorentzVector<T>>,
{
    let g = GaugeParams::new(n, r);
    let inner = g.w_inverse(t)?;
    let scale = (T::one() + count::<T>(2 * n) * t / r).sqrt();
    Ok(f(x, inner)?.scale(scale))
}

/// `f(x,t) = e^{−nt/r}·F(x, (r/2n)(e^{2nt/r} − 1))`.
pub fn gauge_lorentz_to_hyperbolic<T, F>(
    big_f: F,
    n: usize,
    r: T,
    x: &LorentzVector<T>,
    t: T,
) -> Result<HyperboloidPoint<T>>
where
    T: Real,
    F: Fn(&LorentzVector<T>, T) -> Result<LorentzVector<T>>,
{
    let g = GaugeParams::new(n, r);
    let scale = (-count::<T>(n) * t / r).exp();
    let v = big_f(x, g.w(t))?.scale(scale);
    super::finite_point(v, r, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_round_trip() {
        let x = LorentzVector::new(vec![0.0, 0.0, 1.0]).unwrap();
        let stationary = |x: &LorentzVector<f64>, _t: f64| Ok(x.clone());
        let big = gauge_hyperbolic_to_lorentz(stationary, 1, 1.0, &x, 1.5).unwrap();
        assert_eq!(big.coords(), &[0.0, 0.0, 2.0]);
        assert_eq!(gauge_hyperbolic_to_lorentz(stationary, 1, 1.0, &x, 0.0).unwrap(), x);
        assert!(matches!(
            gauge_hyperbolic_to_lorentz(stationary, 1, 1.0, &x, -0.5),
            Err(Error::GaugeDomain { .. })
        ));
        let lorentz = |x: &LorentzVector<f64>, t: f64| Ok(x.scale((1.0 + 2.0 * t).sqrt()));
        for t in [-3.0, 0.0, 0.7] {
            let f = gauge_lorentz_to_hyperbolic(lorentz, 1, 1.0, &x, t).unwrap();
            assert!(crate::linalg::distance(f.vector().coords(), x.coords()) < 1e-12);
        }
    }

    #[test]
    fn gauge_evaluators() {
        let g = GaugeParams::new(2, 2.0);
        assert!((g.a1(1, 0.5).unwrap() - 1.5f64.sqrt()).abs() < 1e-15);
        assert!((g.a2(1, 0.25).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(g.a2(1, 0.5).is_err());
        assert!((g.q(1, 0.25).unwrap() + 0.5 * 0.5f64.ln()).abs() < 1e-15);
        let t = 0.3;
        assert!((g.w_inverse(g.w(t)).unwrap() - t).abs() < 1e-15);
        let g = GaugeParams::new(1, 1.0);
        assert!(g.v_alpha(2.0, 1.0).is_err());
        assert!((g.s_alpha(0.0, 0.4).unwrap() - 1.8f64.ln() / 2.0).abs() < 1e-15);
    }
}
