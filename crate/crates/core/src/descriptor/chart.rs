//! Chart maps shared by the leaves and the hyperbolic factors.

use crate::scalar::{lit, Real};

/// How a chart coordinate behaves; drives sampling ranges and grid wrapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisKind {
    /// Coordinate of the exponential chart of a hyperbolic factor.
    Hyperbolic,
    /// Polar angle of a hyperspherical chart, kept away from the poles.
    Polar,
    /// Azimuthal angle, periodic.
    Azimuth,
    /// Coordinate of a Euclidean factor.
    Flat,
}

impl AxisKind {
    /// Parameter interval used for sampling.
    pub fn range<T: Real>(self) -> (T, T) {
        match self {
            AxisKind::Hyperbolic | AxisKind::Flat => (lit(-1.5), lit(1.5)),
            AxisKind::Polar => (lit(0.35), T::PI() - lit(0.35)),
            AxisKind::Azimuth => (T::zero(), T::TAU()),
        }
    }

    pub fn periodic(self) -> bool {
        self == AxisKind::Azimuth
    }
}

/// `sinh(r)/r`, accurate at the origin.
pub fn sinhc<T: Real>(r: T) -> T {
    if r.abs() < lit(1e-4) {
        let r2 = r * r;
        T::one() + r2 / lit(6.0) + r2 * r2 / lit(120.0)
    } else {
        r.sinh() / r
    }
}

/// Exponential chart of `H^l(−r)` at its base point `(0, …, 0, √r)`.
pub fn hyperbolic_exp<T: Real>(u: &[T], r: T) -> Vec<T> {
    let rho = crate::linalg::norm(u);
    let sr = r.sqrt();
    let s = sr * sinhc(rho);
    let mut out: Vec<T> = u.iter().map(|&ui| s * ui).collect();
    out.push(sr * rho.cosh());
    out
}

/// Hyperspherical chart of the sphere of squared radius `s` in `ℝ^{p+1}`;
/// `angles` holds `p − 1` polar angles followed by the azimuth.
pub fn sphere_point<T: Real>(angles: &[T], s: T) -> Vec<T> {
    let p = angles.len();
    let mut out = Vec::with_capacity(p + 1);
    let mut prefix = s.sqrt();
    for &theta in &angles[..p - 1] {
        out.push(prefix * theta.cos());
        prefix = prefix * theta.sin();
    }
    let phi = angles[p - 1];
    out.push(prefix * phi.cos());
    out.push(prefix * phi.sin());
    out
}

/// Axis kinds for a sphere of dimension `p`.
pub fn sphere_axes(p: usize) -> impl Iterator<Item = AxisKind> {
    (0..p).map(move |i| if i + 1 == p { AxisKind::Azimuth } else { AxisKind::Polar })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_chart_lands_on_hyperboloid() {
        let x = hyperbolic_exp(&[0.3, -1.1], 2.0);
        let q: f64 = x[0] * x[0] + x[1] * x[1] - x[2] * x[2];
        assert!((q + 2.0).abs() < 1e-13);
        assert_eq!(hyperbolic_exp(&[0.0], 1.0), vec![0.0, 1.0]);
    }

    #[test]
    fn sphere_chart_radius() {
        let y = sphere_point(&[0.7, 1.9, 4.0], 3.0);
        assert_eq!(y.len(), 4);
        let n2: f64 = y.iter().map(|v| v * v).sum();
        assert!((n2 - 3.0).abs() < 1e-14);
        let c = sphere_point(&[0.5], 4.0);
        assert!((c[0] - 2.0 * 0.5f64.cos()).abs() < 1e-15);
    }

    #[test]
    fn sinhc_is_continuous() {
        let a = sinhc(0.99e-4f64);
        let b = sinhc(1.01e-4f64);
        assert!((a - b).abs() < 1e-8);
    }
}
