//! Poincaré ball projections, ideal boundary maps and the boundary-limit test.

use crate::descriptor::UmbilicData;
use crate::error::{ensure_dim, Error, Result};
use crate::lorentz::{frame_coordinates, HyperboloidPoint, LorentzVector, Membership, OrthonormalFrame};
use crate::scalar::{count, lit, Real};

/// A point of the open unit ball.
#[derive(Debug, Clone, PartialEq)]
pub struct BallPoint<T> {
    coords: Vec<T>,
}

impl<T: Real> BallPoint<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        let n = crate::linalg::norm(&coords);
        if !(n < T::one()) {
            return Err(Error::Domain(format!("ball point has norm {n} >= 1")));
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }
}

/// A point of the ideal boundary `S^{m−1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealPoint<T> {
    coords: Vec<T>,
}

impl<T: Real> IdealPoint<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        let n = crate::linalg::norm(&coords);
        if (n - T::one()).abs() > T::membership_tol() {
            return Err(Error::Domain(format!("ideal point has norm {n}, expected 1")));
        }
        Ok(Self { coords })
    }

    pub(crate) fn from_unit(coords: Vec<T>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }
}

/// `Ψ_{ε,r}(x) = (a_1, …, a_m)/(a_{m+1} + √r)` in frame coordinates.
pub fn ball_projection<T: Real>(
    frame: &OrthonormalFrame<T>,
    r: T,
    x: &LorentzVector<T>,
) -> Result<BallPoint<T>> {
    if crate::lorentz::ambient_membership(x, r) != Membership::OnHyperboloid {
        return Err(Error::Domain(format!("point is not on H^m(-{r})")));
    }
    let a = frame_coordinates(frame, x)?;
    let m = frame.m();
    let den = a[m] + r.sqrt();
    Ok(BallPoint {
        coords: a[..m].iter().map(|&v| v / den).collect(),
    })
}

/// `ψ`: the projection for the standard frame and `r = 1`.
pub fn poincare_projection<T: Real>(x: &LorentzVector<T>) -> Result<BallPoint<T>> {
    ball_projection(&OrthonormalFrame::standard(x.m()), T::one(), x)
}

/// Inverse of [`ball_projection`].
pub fn ball_lift<T: Real>(
    frame: &OrthonormalFrame<T>,
    r: T,
    y: &BallPoint<T>,
) -> Result<HyperboloidPoint<T>> {
    ensure_dim(frame.m(), y.coords.len())?;
    let y2 = y.coords.iter().fold(T::zero(), |s, &v| s + v * v);
    let sr = r.sqrt();
    let den = T::one() - y2;
    let two = lit::<T>(2.0);
    let mut a: Vec<T> = y.coords.iter().map(|&v| two * sr * v / den).collect();
    a.push(sr * (T::one() + y2) / den);
    Ok(HyperboloidPoint::from_flow(frame.combine(&a)?, r))
}

/// `Θ(p) = (v_{m+1} + Σ a_i v_i)/h` with `h = c_{m+1} + Σ a_i c_i`, where
/// `ε_i = (v_i, c_i)`.
///
/// Carries the ideal boundary of the ball built on `frame` to that of the
/// standard ball; returns the image and the squared scaling `1/h²` of the
/// differential.
pub fn boundary_transition<T: Real>(
    frame: &OrthonormalFrame<T>,
    p: &IdealPoint<T>,
) -> Result<(IdealPoint<T>, T)> {
    let m = frame.m();
    ensure_dim(m, p.coords.len())?;
    let eps = frame.vectors();
    let mut num: Vec<T> = eps[m].spatial().to_vec();
    let mut h = eps[m].time();
    for (a, e) in p.coords.iter().zip(eps) {
        for (n, v) in num.iter_mut().zip(e.spatial()) {
            *n = *n + *a * *v;
        }
        h = h + *a * e.time();
    }
    if !(h > T::zero()) {
        return Err(Error::Internal(format!("boundary transition denominator {h} <= 0")));
    }
    let image = num.into_iter().map(|v| v / h).collect();
    Ok((IdealPoint::from_unit(image), T::one() / (h * h)))
}

/// Which end of a path [`boundary_limit`] approaches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathEnd<T> {
    Finite(T),
    PlusInfinity,
    MinusInfinity,
}

/// Limit of `(a_1, …, a_m)/a_{m+1}` along a path in frame coordinates whose
/// last coordinate diverges.
///
/// Samples `t_k = ±t₀·2^k`, or `T − (T − t₀)/2^k` for a finite end, and accepts
/// once successive normalized values agree to `1e−7`, the last five samples of
/// `a_{m+1}` increase, and `a_{m+1}` has passed `1e6`.
pub fn boundary_limit<T, F>(path: F, r: T, start: T, end: PathEnd<T>) -> Result<IdealPoint<T>>
where
    T: Real,
    F: Fn(T) -> Result<Vec<T>>,
{
    let tol = lit::<T>(1e-7);
    let floor = lit::<T>(1e6) * r.sqrt();
    let mut last: Option<Vec<T>> = None;
    let mut growth: Vec<T> = Vec::new();
    for k in 0..64 {
        let scale = lit::<T>(2.0).powi(k);
        let t = match end {
            PathEnd::PlusInfinity => start.abs().max(T::one()) * scale,
            PathEnd::MinusInfinity => -start.abs().max(T::one()) * scale,
            PathEnd::Finite(te) => te - (te - start) / scale,
        };
        let a = match path(t) {
            Ok(a) if a.iter().all(|v| v.is_finite()) => a,
            _ => break,
        };
        let m = a.len() - 1;
        let top = a[m];
        if !(top > T::zero()) {
            break;
        }
        let normalized: Vec<T> = a[..m].iter().map(|&v| v / top).collect();
        growth.push(top);
        if let Some(prev) = &last {
            let step = crate::linalg::distance(prev, &normalized);
            let g = &growth[growth.len().saturating_sub(5)..];
            let increasing = g.len() == 5 && g.windows(2).all(|w| w[1] > w[0]);
            if step < tol && increasing && top > floor {
                let n = crate::linalg::norm(&normalized);
                return Ok(IdealPoint::from_unit(normalized.iter().map(|&v| v / n).collect()));
            }
        }
        last = Some(normalized);
    }
    Err(Error::NoLimit(format!(
        "a_(m+1) did not diverge with convergent direction after {} samples",
        growth.len()
    )))
}

/// `φ(y) = (ȳ + cξ̄)/(y_{m+1} + cξ_{m+1})` on an umbilical hypersurface.
pub fn umbilic_boundary_map<T: Real>(umb: &UmbilicData<T>, y: &LorentzVector<T>) -> Result<IdealPoint<T>> {
    if !umb.contains(y, crate::descriptor::on_tol()) {
        return Err(Error::Domain("point is not on the umbilical hypersurface".into()));
    }
    let c = umb.c();
    let xi = umb.xi();
    let den = y.time() + c * xi.time();
    let coords = y
        .spatial()
        .iter()
        .zip(xi.spatial())
        .map(|(&a, &b)| (a + c * b) / den)
        .collect();
    Ok(IdealPoint::from_unit(coords))
}

/// `Φ(x,z) = (x̄, z)/x_{l+1}` for `x ∈ H^l(−r)` and `z` on the sphere of
/// squared radius `r`; returns the point and the conformal factor `1/x_{l+1}²`.
pub fn product_boundary_map<T: Real>(l: usize, r: T, x: &[T], z: &[T]) -> Result<(IdealPoint<T>, T)> {
    ensure_dim(l + 1, x.len())?;
    if !(r > T::one()) {
        return Err(Error::Domain(format!("product boundary map needs r > 1, got {r}")));
    }
    let tol = T::membership_tol() * r.max(T::one());
    let xq = x[..l].iter().fold(T::zero(), |s, &v| s + v * v) - x[l] * x[l];
    let zq = z.iter().fold(T::zero(), |s, &v| s + v * v);
    if (xq + r).abs() > tol * x[l] * x[l] || x[l] <= T::zero() {
        return Err(Error::Domain("x is not on H^l(-r)".into()));
    }
    if (zq - r).abs() > tol {
        return Err(Error::Domain("z is not on the sphere of squared radius r".into()));
    }
    let top = x[l];
    let coords = x[..l].iter().chain(z).map(|&v| v / top).collect();
    Ok((IdealPoint::from_unit(coords), T::one() / (top * top)))
}

/// Mean curvature after the conformal change `g′ = e^{2ρ}g`:
/// `H′ = e^{−2ρ}(H − n·(∇ρ)^⊥)`.
pub fn conformal_mean_curvature<T: Real>(h: &[T], grad_rho_normal: &[T], rho: T, n: usize) -> Result<Vec<T>> {
    ensure_dim(h.len(), grad_rho_normal.len())?;
    let e = (-lit::<T>(2.0) * rho).exp();
    let nn = count::<T>(n);
    Ok(h.iter()
        .zip(grad_rho_normal)
        .map(|(&a, &b)| e * (a - nn * b))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::derive_umbilic;

    fn v(c: &[f64]) -> LorentzVector<f64> {
        LorentzVector::new(c.to_vec()).unwrap()
    }

    fn boost() -> OrthonormalFrame<f64> {
        OrthonormalFrame::from_vectors(vec![
            v(&[1.25, 0.0, 0.75]),
            v(&[0.0, 1.0, 0.0]),
            v(&[0.75, 0.0, 1.25]),
        ])
        .unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) {
        assert!(crate::linalg::distance(a, b) < tol, "{a:?} vs {b:?}");
    }

    #[test]
    fn projection_examples() {
        let id = OrthonormalFrame::standard(2);
        assert_eq!(ball_projection(&id, 1.0, &v(&[0.0, 0.0, 1.0])).unwrap().coords(), &[0.0, 0.0]);
        let y = ball_projection(&id, 1.0, &v(&[0.0, 1.0, 2f64.sqrt()])).unwrap();
        close(y.coords(), &[0.0, 2f64.sqrt() - 1.0], 1e-16);
        let y = ball_projection(&boost(), 1.0, &v(&[0.0, 0.0, 1.0])).unwrap();
        close(y.coords(), &[-1.0 / 3.0, 0.0], 1e-16);
        let back = ball_lift(&boost(), 1.0, &y).unwrap();
        close(back.vector().coords(), &[0.0, 0.0, 1.0], 1e-15);
        assert!(matches!(
            ball_projection(&id, 1.0, &v(&[1.0, 0.0, 1.0])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn transition_examples() {
        let p = IdealPoint::new(vec![0.6, -0.8]).unwrap();
        let (q, f) = boundary_transition(&OrthonormalFrame::standard(2), &p).unwrap();
        assert_eq!((q.coords(), f), (p.coords(), 1.0));
        let swap = OrthonormalFrame::from_vectors(vec![v(&[0.0, 1.0, 0.0]), v(&[1.0, 0.0, 0.0]), v(&[0.0, 0.0, 1.0])]).unwrap();
        let (q, f) = boundary_transition(&swap, &p).unwrap();
        assert_eq!((q.coords(), f), (&[-0.8, 0.6][..], 1.0));
        let (q, f) = boundary_transition(&boost(), &IdealPoint::new(vec![0.0, 1.0]).unwrap()).unwrap();
        assert_eq!(q.coords(), &[0.6, 0.8]);
        assert!((f - 0.64).abs() < 1e-16);
        let (back, _) = boundary_transition(&boost().inverse(), &q).unwrap();
        close(back.coords(), &[0.0, 1.0], 1e-15);
    }

    #[test]
    fn transition_factor_matches_numeric_jacobian() {
        // tangent direction at angle θ on S¹, differentiated in θ
        let theta = 1.0f64;
        let map = |th: f64| {
            boundary_transition(&boost(), &IdealPoint::new(vec![th.cos(), th.sin()]).unwrap())
                .unwrap()
                .0
                .into_coords()
        };
        let h = 1e-5;
        let (a, b) = (map(theta + h), map(theta - h));
        let d2 = ((a[0] - b[0]) / (2.0 * h)).powi(2) + ((a[1] - b[1]) / (2.0 * h)).powi(2);
        let (_, f) = boundary_transition(&boost(), &IdealPoint::new(vec![theta.cos(), theta.sin()]).unwrap()).unwrap();
        assert!((d2 - f).abs() < 1e-8);
    }

    #[test]
    fn boundary_limit_examples() {
        let out = boundary_limit(|t: f64| Ok(vec![t.sinh(), 0.0, t.cosh()]), 1.0, 1.0, PathEnd::PlusInfinity).unwrap();
        close(out.coords(), &[1.0, 0.0], 1e-12);
        let out = boundary_limit(|t: f64| Ok(vec![-t.sinh(), 0.0, t.cosh()]), 1.0, 1.0, PathEnd::PlusInfinity).unwrap();
        close(out.coords(), &[-1.0, 0.0], 1e-12);
        let still = boundary_limit(|_t: f64| Ok(vec![0.0, 0.0, 1.0]), 1.0, 1.0, PathEnd::PlusInfinity);
        assert!(matches!(still, Err(Error::NoLimit(_))));
        // a geodesic reaching infinity in finite parameter time
        let out = boundary_limit(
            |t: f64| {
                let s = (1.0 / (1.0 - t)).ln();
                Ok(vec![s.sinh(), s.cosh()])
            },
            1.0,
            0.0,
            PathEnd::Finite(1.0),
        )
        .unwrap();
        close(out.coords(), &[1.0], 1e-12);
    }

    #[test]
    fn umbilic_map_examples() {
        let circle = derive_umbilic(v(&[0.0, 0.0, -1.0]), 2.0).unwrap();
        let p = umbilic_boundary_map(&circle, &v(&[3f64.sqrt(), 0.0, 2.0])).unwrap();
        close(p.coords(), &[1.0, 0.0], 1e-15);
        let p = umbilic_boundary_map(&circle, &v(&[0.0, 3f64.sqrt(), 2.0])).unwrap();
        close(p.coords(), &[0.0, 1.0], 1e-15);
        let eq = derive_umbilic(v(&[1.0, 0.0, 0.0]), 1.0).unwrap();
        let p = umbilic_boundary_map(&eq, &v(&[1.0, 0.0, 2f64.sqrt()])).unwrap();
        close(p.coords(), &[1.0, 0.0], 1e-15);
        assert!(umbilic_boundary_map(&eq, &v(&[0.0, 0.0, 1.0])).is_err());
    }

    #[test]
    fn product_map_examples() {
        let s2 = 2f64.sqrt();
        let (p, f) = product_boundary_map(1, 2.0, &[0.0, s2], &[s2, 0.0]).unwrap();
        close(p.coords(), &[0.0, 1.0, 0.0], 1e-15);
        assert!((f - 0.5).abs() < 1e-15);
        let (p, _) = product_boundary_map(1, 2.0, &[s2, 2.0], &[s2, 0.0]).unwrap();
        close(p.coords(), &[s2 / 2.0, s2 / 2.0, 0.0], 1e-15);
        assert!(product_boundary_map(1, 2.0, &[0.0, 1.0], &[s2, 0.0]).is_err());
    }

    #[test]
    fn conformal_mean_curvature_examples() {
        let h = [0.3, -1.0];
        let w = [0.5, 0.25];
        assert_eq!(conformal_mean_curvature(&h, &[0.0, 0.0], 0.0, 3).unwrap(), h.to_vec());
        assert_eq!(conformal_mean_curvature(&[0.0, 0.0], &w, 0.0, 2).unwrap(), vec![-1.0, -0.5]);
        let out = conformal_mean_curvature(&h, &w, 2f64.ln(), 1).unwrap();
        close(&out, &[(0.3 - 0.5) / 4.0, (-1.0 - 0.25) / 4.0], 1e-16);
    }
}
