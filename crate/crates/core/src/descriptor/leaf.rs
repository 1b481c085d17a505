//! Leaves of the construction: products of round spheres, points and
//! Euclidean isoparametric pieces, with their closed-form Euclidean flows.

use crate::descriptor::chart::{sphere_axes, sphere_point, AxisKind};
use crate::error::{ensure_dim, Error, Result};
use crate::flow::TimeBound;
use crate::scalar::{count, lit, Real};

/// A round sphere `S^p(s)` of dimension `p` and squared radius `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereFactor<T> {
    pub dim: usize,
    pub radius2: T,
}

impl<T: Real> SphereFactor<T> {
    pub fn new(dim: usize, radius2: T) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("sphere factor dimension must be >= 1".into()));
        }
        if !(radius2 > T::zero()) || !radius2.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "sphere factor needs a positive squared radius, got {radius2}"
            )));
        }
        Ok(Self { dim, radius2 })
    }

    /// `s/(2p)`, when the Euclidean flow shrinks the factor to its center.
    pub fn collapse_time(&self) -> T {
        self.radius2 / (count::<T>(2 * self.dim))
    }
}

/// Product `S^{p_1}(s_1) × … × S^{p_k}(s_k)` sitting block-diagonally in
/// `ℝ^{Σ(p_i+1)}`, or a single point.
#[derive(Debug, Clone, PartialEq)]
pub enum ProductOfSpheres<T> {
    Spheres(Vec<SphereFactor<T>>),
    /// A point `√R²·direction` on whichever sphere of squared radius `R²` hosts
    /// the leaf.
    Point { direction: Vec<T> },
}

/// Scales `y` block by block so that factor `i` has squared radius
/// `s_i − 2 p_i t`.
fn shrink_blocks<T: Real>(
    factors: &[SphereFactor<T>],
    y: &[T],
    center: &[T],
    t: T,
    clamp: bool,
) -> Result<Vec<T>> {
    let mut out = y.to_vec();
    let mut k = 0;
    for f in factors {
        let remaining = f.radius2 - count::<T>(2 * f.dim) * t;
        let ratio = if remaining > T::zero() {
            (remaining / f.radius2).sqrt()
        } else if clamp && remaining > -T::algebraic_tol() * f.radius2.max(T::one()) {
            T::zero()
        } else {
            return Err(Error::TimeOutOfRange {
                t: t.to_f64().unwrap_or(f64::NAN),
                bound: format!("sphere factor S^{}({}) collapses at {}", f.dim, f.radius2, f.collapse_time()),
            });
        };
        for _ in 0..=f.dim {
            out[k] = center[k] + ratio * (y[k] - center[k]);
            k += 1;
        }
    }
    Ok(out)
}

fn blocks_contain<T: Real>(factors: &[SphereFactor<T>], y: &[T], center: &[T], tol: T) -> bool {
    let mut k = 0;
    for f in factors {
        let mut n2 = T::zero();
        for _ in 0..=f.dim {
            let d = y[k] - center[k];
            n2 = n2 + d * d;
            k += 1;
        }
        if (n2 - f.radius2).abs() > tol * f.radius2.max(T::one()) {
            return false;
        }
    }
    true
}

impl<T: Real> ProductOfSpheres<T> {
    pub fn spheres(factors: Vec<SphereFactor<T>>) -> Result<Self> {
        let leaf = ProductOfSpheres::Spheres(factors);
        leaf.validate()?;
        Ok(leaf)
    }

    pub fn point(direction: Vec<T>) -> Result<Self> {
        let leaf = ProductOfSpheres::Point { direction };
        leaf.validate()?;
        Ok(leaf)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ProductOfSpheres::Spheres(factors) => {
                if factors.is_empty() {
                    return Err(Error::InvalidArgument("product of spheres needs a factor".into()));
                }
                for f in factors {
                    SphereFactor::new(f.dim, f.radius2)?;
                }
            }
            ProductOfSpheres::Point { direction } => {
                let n = crate::linalg::norm(direction);
                if direction.is_empty() || (n - T::one()).abs() > T::membership_tol() {
                    return Err(Error::InvalidArgument(
                        "point leaf needs a unit direction".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn factors(&self) -> &[SphereFactor<T>] {
        match self {
            ProductOfSpheres::Spheres(f) => f,
            ProductOfSpheres::Point { .. } => &[],
        }
    }

    pub fn is_point(&self) -> bool {
        matches!(self, ProductOfSpheres::Point { .. })
    }

    /// Dimension of the Euclidean space holding the leaf.
    pub fn ambient_dim(&self) -> usize {
        match self {
            ProductOfSpheres::Spheres(f) => f.iter().map(|f| f.dim + 1).sum(),
            ProductOfSpheres::Point { direction } => direction.len(),
        }
    }

    /// Manifold dimension `Σ p_i`.
    pub fn dim(&self) -> usize {
        self.factors().iter().map(|f| f.dim).sum()
    }

    /// `Σ s_i`, the squared radius of the sphere the product lies on.
    pub fn radius2(&self) -> Option<T> {
        match self {
            ProductOfSpheres::Spheres(f) => Some(f.iter().fold(T::zero(), |a, f| a + f.radius2)),
            ProductOfSpheres::Point { .. } => None,
        }
    }

    /// Whether the leaf is minimal in its sphere: all `p_i/s_i` coincide.
    pub fn is_minimal_in_sphere(&self) -> bool {
        let f = self.factors();
        if f.is_empty() {
            return true;
        }
        let k0 = count::<T>(f[0].dim) / f[0].radius2;
        f.iter().all(|f| {
            let k = count::<T>(f.dim) / f.radius2;
            (k - k0).abs() <= T::algebraic_tol() * k0
        })
    }

    /// Whether every factor is one dimensional (or the leaf is a point).
    pub fn is_flat(&self) -> bool {
        self.factors().iter().all(|f| f.dim == 1)
    }

    pub fn axes(&self) -> Vec<AxisKind> {
        self.factors().iter().flat_map(|f| sphere_axes(f.dim)).collect()
    }

    /// Chart of the leaf; `radius2` is the squared radius of the host sphere
    /// and only matters for a point leaf.
    pub fn immerse(&self, u: &[T], radius2: T) -> Result<Vec<T>> {
        ensure_dim(self.dim(), u.len())?;
        match self {
            ProductOfSpheres::Point { direction } => {
                let s = radius2.max(T::zero()).sqrt();
                Ok(direction.iter().map(|&d| s * d).collect())
            }
            ProductOfSpheres::Spheres(factors) => {
                let mut out = Vec::with_capacity(self.ambient_dim());
                let mut k = 0;
                for f in factors {
                    out.extend(sphere_point(&u[k..k + f.dim], f.radius2));
                    k += f.dim;
                }
                Ok(out)
            }
        }
    }

    pub fn contains(&self, y: &[T], radius2: T, tol: T) -> bool {
        if y.len() != self.ambient_dim() {
            return false;
        }
        match self {
            ProductOfSpheres::Point { direction } => {
                let s = radius2.max(T::zero()).sqrt();
                direction
                    .iter()
                    .zip(y)
                    .all(|(&d, &v)| (s * d - v).abs() <= tol * T::one().max(s))
            }
            ProductOfSpheres::Spheres(factors) => {
                blocks_contain(factors, y, &vec![T::zero(); y.len()], tol)
            }
        }
    }

    /// Euclidean mean curvature `−(p_i/s_i)·y_i` of each block.
    pub fn euclidean_mean_curvature(&self, y: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); y.len()];
        let mut k = 0;
        for f in self.factors() {
            let c = count::<T>(f.dim) / f.radius2;
            for _ in 0..=f.dim {
                out[k] = -c * y[k];
                k += 1;
            }
        }
        out
    }

    /// First time a factor of the Euclidean flow collapses.
    pub fn euclidean_collapse_time(&self) -> TimeBound<T> {
        self.factors()
            .iter()
            .map(|f| f.collapse_time())
            .fold(TimeBound::Unbounded, |acc, t| acc.min(TimeBound::Finite(t)))
    }

    /// Euclidean mean curvature flow `F₂(y,t)`: squared radii `s_i − 2p_i t`.
    pub fn euclidean_flow(&self, y: &[T], t: T) -> Result<Vec<T>> {
        self.euclidean_flow_impl(y, t, false)
    }

    pub(crate) fn euclidean_flow_impl(&self, y: &[T], t: T, clamp: bool) -> Result<Vec<T>> {
        ensure_dim(self.ambient_dim(), y.len())?;
        match self {
            ProductOfSpheres::Point { .. } => Ok(y.to_vec()),
            ProductOfSpheres::Spheres(f) => shrink_blocks(f, y, &vec![T::zero(); y.len()], t, clamp),
        }
    }

    /// Euclidean time `t(q) = (R²/2n′)(1 − e^{−2n′q/R²})` reached by the
    /// spherical flow after time `q`.
    pub fn euclidean_time(&self, q: T) -> T {
        let n = count::<T>(self.dim());
        let r2 = self.radius2().unwrap_or_else(T::one);
        if n == T::zero() {
            return q;
        }
        let k = lit::<T>(2.0) * n / r2;
        -(-k * q).exp_m1() / k
    }

    /// Spherical time `q(t) = −(R²/2n′)·ln(1 − 2n′t/R²)`, inverse of
    /// [`Self::euclidean_time`].
    pub fn spherical_time(&self, t: T) -> T {
        let n = count::<T>(self.dim());
        let r2 = self.radius2().unwrap_or_else(T::one);
        if n == T::zero() {
            return t;
        }
        let k = lit::<T>(2.0) * n / r2;
        -(-k * t).ln_1p() / k
    }

    /// Maximal time of the spherical mean curvature flow inside the host sphere.
    pub fn spherical_window(&self) -> TimeBound<T> {
        if self.is_minimal_in_sphere() {
            return TimeBound::Unbounded;
        }
        match self.euclidean_collapse_time() {
            TimeBound::Finite(t) => TimeBound::Finite(self.spherical_time(t)),
            TimeBound::Unbounded => TimeBound::Unbounded,
        }
    }

    /// Spherical mean curvature flow `f₂(y,q) = F₂(y,t(q))/a₂(t(q))` in the
    /// sphere of squared radius `Σ s_i`.
    pub fn spherical_flow(&self, y: &[T], q: T) -> Result<Vec<T>> {
        self.spherical_flow_impl(y, q, false)
    }

    pub(crate) fn spherical_flow_impl(&self, y: &[T], q: T, clamp: bool) -> Result<Vec<T>> {
        ensure_dim(self.ambient_dim(), y.len())?;
        if self.is_point() || self.is_minimal_in_sphere() {
            return Ok(y.to_vec());
        }
        let window = self.spherical_window();
        if let TimeBound::Finite(end) = window {
            if q > end && !(clamp && q <= end + T::algebraic_tol() * end.abs().max(T::one())) {
                return Err(Error::TimeOutOfRange {
                    t: q.to_f64().unwrap_or(f64::NAN),
                    bound: format!("spherical leaf flow exists for q < {end}"),
                });
            }
        }
        let t = self.euclidean_time(q);
        let moved = self.euclidean_flow_impl(y, t, clamp)?;
        let r2 = self.radius2().unwrap_or_else(T::one);
        let a2 = (T::one() - lit::<T>(2.0) * count::<T>(self.dim()) * t / r2).sqrt();
        Ok(moved.into_iter().map(|v| v / a2).collect())
    }
}

/// An isoparametric submanifold of `ℝ^k`: `ℝ^{flat_dim} × S^{p_1}(s_1) × …`
/// laid out block by block, zero padded, then translated by `offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct EuclideanIso<T> {
    pub flat_dim: usize,
    pub spheres: Option<Vec<SphereFactor<T>>>,
    pub offset: Vec<T>,
}

impl<T: Real> EuclideanIso<T> {
    pub fn new(flat_dim: usize, spheres: Option<Vec<SphereFactor<T>>>, offset: Vec<T>) -> Result<Self> {
        let e = Self { flat_dim, spheres, offset };
        e.validate()?;
        Ok(e)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(f) = &self.spheres {
            if f.is_empty() {
                return Err(Error::InvalidArgument("empty sphere list; use none".into()));
            }
            for s in f {
                SphereFactor::new(s.dim, s.radius2)?;
            }
        }
        if self.offset.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("non-finite offset".into()));
        }
        if self.used_dim() > self.space_dim() {
            return Err(Error::InvalidArgument(format!(
                "Euclidean leaf needs {} coordinates but the space has {}",
                self.used_dim(),
                self.space_dim()
            )));
        }
        Ok(())
    }

    fn factors(&self) -> &[SphereFactor<T>] {
        self.spheres.as_deref().unwrap_or(&[])
    }

    fn used_dim(&self) -> usize {
        self.flat_dim + self.factors().iter().map(|f| f.dim + 1).sum::<usize>()
    }

    /// Dimension of the Euclidean space.
    pub fn space_dim(&self) -> usize {
        self.offset.len()
    }

    pub fn dim(&self) -> usize {
        self.flat_dim + self.factors().iter().map(|f| f.dim).sum::<usize>()
    }

    pub fn is_totally_geodesic(&self) -> bool {
        self.spheres.is_none()
    }

    pub fn is_flat(&self) -> bool {
        self.factors().iter().all(|f| f.dim == 1)
    }

    pub fn axes(&self) -> Vec<AxisKind> {
        let mut axes = vec![AxisKind::Flat; self.flat_dim];
        axes.extend(self.factors().iter().flat_map(|f| sphere_axes(f.dim)));
        axes
    }

    pub fn immerse(&self, u: &[T]) -> Result<Vec<T>> {
        ensure_dim(self.dim(), u.len())?;
        let mut w = self.offset.clone();
        w[..self.flat_dim].iter_mut().zip(u).for_each(|(w, &u)| *w = *w + u);
        let (mut k, mut j) = (self.flat_dim, self.flat_dim);
        for f in self.factors() {
            for v in sphere_point(&u[j..j + f.dim], f.radius2) {
                w[k] = w[k] + v;
                k += 1;
            }
            j += f.dim;
        }
        Ok(w)
    }

    pub fn contains(&self, w: &[T], tol: T) -> bool {
        if w.len() != self.space_dim() {
            return false;
        }
        let start = self.flat_dim;
        let end = self.used_dim();
        let pad_ok = (end..w.len()).all(|i| (w[i] - self.offset[i]).abs() <= tol);
        pad_ok && blocks_contain(self.factors(), &w[start..end], &self.offset[start..end], tol)
    }

    pub fn mean_curvature(&self, w: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); w.len()];
        let mut k = self.flat_dim;
        for f in self.factors() {
            let c = count::<T>(f.dim) / f.radius2;
            for _ in 0..=f.dim {
                out[k] = -c * (w[k] - self.offset[k]);
                k += 1;
            }
        }
        out
    }

    pub fn collapse_time(&self) -> TimeBound<T> {
        self.factors()
            .iter()
            .map(|f| f.collapse_time())
            .fold(TimeBound::Unbounded, |acc, t| acc.min(TimeBound::Finite(t)))
    }

    pub fn flow(&self, w: &[T], t: T) -> Result<Vec<T>> {
        self.flow_impl(w, t, false)
    }

    pub(crate) fn flow_impl(&self, w: &[T], t: T, clamp: bool) -> Result<Vec<T>> {
        ensure_dim(self.space_dim(), w.len())?;
        let start = self.flat_dim;
        let end = self.used_dim();
        let moved = shrink_blocks(self.factors(), &w[start..end], &self.offset[start..end], t, clamp)?;
        let mut out = w.to_vec();
        out[start..end].copy_from_slice(&moved);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clifford(s1: f64, s2: f64) -> ProductOfSpheres<f64> {
        ProductOfSpheres::spheres(vec![
            SphereFactor::new(1, s1).unwrap(),
            SphereFactor::new(1, s2).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn clifford_torus_is_stationary_in_its_sphere() {
        let leaf = clifford(1.0, 1.0);
        assert!(leaf.is_minimal_in_sphere());
        assert_eq!(leaf.spherical_window(), TimeBound::Unbounded);
        let y = leaf.immerse(&[0.3, 1.2], 2.0).unwrap();
        assert_eq!(leaf.spherical_flow(&y, 5.0).unwrap(), y);
    }

    #[test]
    fn unequal_torus_collapses_at_ln2() {
        let leaf = clifford(3.0, 1.0);
        assert_eq!(leaf.euclidean_collapse_time(), TimeBound::Finite(0.5));
        match leaf.spherical_window() {
            TimeBound::Finite(q) => assert!((q - 2f64.ln()).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        let q = 0.4;
        assert!((leaf.euclidean_time(q) - (1.0 - (-q).exp())).abs() < 1e-15);
        assert!((leaf.spherical_time(leaf.euclidean_time(q)) - q).abs() < 1e-15);
        let y = leaf.immerse(&[0.3, 1.2], 4.0).unwrap();
        let f = leaf.spherical_flow(&y, q).unwrap();
        let n2: f64 = f.iter().map(|v| v * v).sum();
        assert!((n2 - 4.0).abs() < 1e-13);
        // limit circle S¹(4) × {0}
        let end = leaf.spherical_flow_impl(&y, 2f64.ln(), true).unwrap();
        assert!((end[0].hypot(end[1]) - 2.0).abs() < 1e-12);
        assert!(end[2].abs() < 1e-12 && end[3].abs() < 1e-12);
        assert!(leaf.spherical_flow(&y, 0.7).is_err());
    }

    #[test]
    fn euclidean_flow_shrinks_radius_linearly() {
        let leaf = clifford(3.0, 1.0);
        let y = leaf.immerse(&[0.0, 0.0], 4.0).unwrap();
        let f = leaf.euclidean_flow(&y, 0.25).unwrap();
        assert!((f[0] * f[0] - 2.5).abs() < 1e-14);
        assert!((f[2] * f[2] - 0.5).abs() < 1e-14);
        assert!(matches!(leaf.euclidean_flow(&y, 0.6), Err(Error::TimeOutOfRange { .. })));
    }

    #[test]
    fn point_leaf_is_inert() {
        let p = ProductOfSpheres::point(vec![0.0, 1.0]).unwrap();
        assert_eq!(p.dim(), 0);
        assert_eq!(p.euclidean_collapse_time(), TimeBound::Unbounded);
        assert_eq!(p.immerse(&[], 4.0).unwrap(), vec![0.0, 2.0]);
        assert!(ProductOfSpheres::<f64>::point(vec![0.5, 0.0]).is_err());
    }

    #[test]
    fn euclidean_iso_layout() {
        let e = EuclideanIso::new(
            1,
            Some(vec![SphereFactor::new(1, 4.0).unwrap()]),
            vec![0.5, 1.0, 0.0, -2.0],
        )
        .unwrap();
        assert_eq!(e.dim(), 2);
        let w = e.immerse(&[0.25, 0.0]).unwrap();
        assert_eq!(w, vec![0.75, 3.0, 0.0, -2.0]);
        assert!(e.contains(&w, 1e-12));
        assert_eq!(e.mean_curvature(&w), vec![0.0, -0.5, -0.0, 0.0]);
        let f = e.flow(&w, 1.0).unwrap();
        assert!((f[1] - (1.0 + 2f64.sqrt())).abs() < 1e-14);
        assert!(EuclideanIso::<f64>::new(3, Some(vec![SphereFactor::new(1, 1.0).unwrap()]), vec![0.0; 4]).is_err());
    }
}
