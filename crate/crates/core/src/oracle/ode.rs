//! One-dimensional quadrature oracle for the collapse time of geodesic spheres.

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

fn simpson<T: Real>(fa: T, fm: T, fb: T, a: T, b: T) -> T {
    (b - a) / lit(6.0) * (fa + lit::<T>(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T, fa: T, fm: T, fb: T, whole: T, tol: T, depth: usize) -> T {
    let m = (a + b) / lit(2.0);
    let (lm, rm) = ((a + m) / lit(2.0), (m + b) / lit(2.0));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(fa, flm, fm, a, m);
    let right = simpson(fm, frm, fb, m, b);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= lit::<T>(15.0) * tol {
        return left + right + delta / lit(15.0);
    }
    let half = tol / lit(2.0);
    refine(f, a, m, fa, flm, fm, left, half, depth - 1) + refine(f, m, b, fm, frm, fb, right, half, depth - 1)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
pub fn adaptive_simpson<T: Real>(f: impl Fn(T) -> T, a: T, b: T, tol: T) -> T {
    let m = (a + b) / lit(2.0);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, a, b);
    refine(&f, a, b, fa, fm, fb, whole, tol, 48)
}

/// Time for a geodesic sphere of radius `rho0` in `H^{n+1}` to shrink to a
/// point under `ρ′ = −n coth ρ`, i.e. `∫₀^{ρ₀} tanh ρ / n dρ`.
pub fn geodesic_sphere_collapse_time<T: Real>(n: usize, rho0: T) -> Result<T> {
    if n == 0 || !(rho0 > T::zero()) || !rho0.is_finite() {
        return Err(Error::InvalidArgument("need n ≥ 1 and a positive finite radius".into()));
    }
    let n = lit::<T>(n as f64);
    Ok(adaptive_simpson(|rho: T| rho.tanh() / n, T::zero(), rho0, lit(1e-13)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_collapses_at_log_two() {
        let t = geodesic_sphere_collapse_time(1, 2f64.acosh()).unwrap();
        assert!((t - 2f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn sphere_in_h3_matches_the_closed_integral() {
        // ∫ tanh / 2 = ln cosh / 2
        let rho0 = 1.7f64;
        let t = geodesic_sphere_collapse_time(2, rho0).unwrap();
        assert!((t - rho0.cosh().ln() / 2.0).abs() < 1e-10);
        assert!(geodesic_sphere_collapse_time(1, -1.0f64).is_err());
    }
}
