//! Finite-difference differential geometry of a parametrized submanifold.
//!
//! Nothing here knows about descriptors: an immersion is a chart map plus the
//! ambient it lives in, and every quantity is computed from samples of it.

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::{lit, Real};

/// Ambient space of an immersion, fixing the inner product and the normal
/// directions that do not belong to the ambient manifold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AmbientKind<T> {
    /// `ℝ^N` with the dot product.
    Euclidean,
    /// `ℝ^{N−1,1}`, last coordinate timelike.
    Minkowski,
    /// The round sphere through the point, centered at the origin of `ℝ^N`.
    Sphere,
    /// The hyperboloid `H^{N−1}(−r)` in `ℝ^{N−1,1}`; the radial direction is removed.
    Hyperboloid { r: T },
}

impl<T: Real> AmbientKind<T> {
    fn lorentzian(self) -> bool {
        matches!(self, AmbientKind::Minkowski | AmbientKind::Hyperboloid { .. })
    }

    /// Inner product of the ambient vector space.
    pub fn inner(self, a: &[T], b: &[T]) -> T {
        let n = a.len();
        let s = a.iter().zip(b).fold(T::zero(), |s, (&x, &y)| s + x * y);
        if self.lorentzian() {
            s - lit::<T>(2.0) * a[n - 1] * b[n - 1]
        } else {
            s
        }
    }

    pub(crate) fn has_radial(self) -> bool {
        matches!(self, AmbientKind::Sphere | AmbientKind::Hyperboloid { .. })
    }
}

type ChartMap<'a, T> = Box<dyn Fn(&[T]) -> Result<Vec<T>> + Send + Sync + 'a>;

/// A chart `u ↦ X(u)` of an `n`-dimensional submanifold.
pub struct ImmersionEvaluator<'a, T> {
    chart_dim: usize,
    ambient: AmbientKind<T>,
    map: ChartMap<'a, T>,
}

impl<'a, T: Real> ImmersionEvaluator<'a, T> {
    pub fn new(
        chart_dim: usize,
        ambient: AmbientKind<T>,
        map: impl Fn(&[T]) -> Result<Vec<T>> + Send + Sync + 'a,
    ) -> Self {
        Self {
            chart_dim,
            ambient,
            map: Box::new(map),
        }
    }

    pub fn chart_dim(&self) -> usize {
        self.chart_dim
    }

    pub fn ambient(&self) -> AmbientKind<T> {
        self.ambient
    }

    pub fn eval(&self, u: &[T]) -> Result<Vec<T>> {
        let x = (self.map)(u)?;
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::ChartDegenerate("non-finite immersion value".into()));
        }
        Ok(x)
    }
}

/// Differencing scheme for the jets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Second-order central differences.
    Central,
    /// Richardson extrapolation of central differences at `h` and `2h`.
    Richardson,
}

/// Value, first and second chart derivatives at a point.
#[derive(Debug, Clone)]
pub struct Jet<T> {
    pub point: Vec<T>,
    pub first: Vec<Vec<T>>,
    pub second: Vec<Vec<Vec<T>>>,
}

fn combine<T: Real>(terms: &[(T, &Vec<T>)]) -> Vec<T> {
    let mut out = vec![T::zero(); terms[0].1.len()];
    for (c, v) in terms {
        for (o, &x) in out.iter_mut().zip(v.iter()) {
            *o = *o + *c * x;
        }
    }
    out
}

fn central_jet<T: Real>(imm: &ImmersionEvaluator<T>, u: &[T], h: T, x0: &Vec<T>) -> Result<Jet<T>> {
    let n = imm.chart_dim;
    let shifted = |moves: &[(usize, T)]| {
        let mut v = u.to_vec();
        for &(i, d) in moves {
            v[i] = v[i] + d;
        }
        imm.eval(&v)
    };
    let two = lit::<T>(2.0);
    let mut first = Vec::with_capacity(n);
    let mut second = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        let p = shifted(&[(i, h)])?;
        let m = shifted(&[(i, -h)])?;
        first.push(combine(&[(T::one() / (two * h), &p), (-T::one() / (two * h), &m)]));
        let h2 = h * h;
        second[i][i] = combine(&[(T::one() / h2, &p), (-two / h2, x0), (T::one() / h2, &m)]);
    }
    let four_h2 = lit::<T>(4.0) * h * h;
    for i in 0..n {
        for j in (i + 1)..n {
            let pp = shifted(&[(i, h), (j, h)])?;
            let pm = shifted(&[(i, h), (j, -h)])?;
            let mp = shifted(&[(i, -h), (j, h)])?;
            let mm = shifted(&[(i, -h), (j, -h)])?;
            let c = T::one() / four_h2;
            let d = combine(&[(c, &pp), (-c, &pm), (-c, &mp), (c, &mm)]);
            second[j][i] = d.clone();
            second[i][j] = d;
        }
    }
    Ok(Jet {
        point: x0.clone(),
        first,
        second,
    })
}

/// Chart jet at `u` with step `h`.
pub fn jet<T: Real>(imm: &ImmersionEvaluator<T>, u: &[T], h: T, scheme: Scheme) -> Result<Jet<T>> {
    if u.len() != imm.chart_dim {
        return Err(Error::DimensionMismatch {
            expected: imm.chart_dim,
            found: u.len(),
        });
    }
    let x0 = imm.eval(u)?;
    let fine = central_jet(imm, u, h, &x0)?;
    if scheme == Scheme::Central {
        return Ok(fine);
    }
    let coarse = central_jet(imm, u, h * lit(2.0), &x0)?;
    let (a, b) = (lit::<T>(4.0) / lit(3.0), -T::one() / lit(3.0));
    let first = fine
        .first
        .iter()
        .zip(&coarse.first)
        .map(|(f, c)| combine(&[(a, f), (b, c)]))
        .collect();
    let second = fine
        .second
        .iter()
        .zip(&coarse.second)
        .map(|(fr, cr)| fr.iter().zip(cr).map(|(f, c)| combine(&[(a, f), (b, c)])).collect())
        .collect();
    Ok(Jet {
        point: x0,
        first,
        second,
    })
}

/// Extrinsic geometry at one point of an immersion.
#[derive(Debug, Clone)]
pub struct LocalGeometry<T> {
    pub ambient: AmbientKind<T>,
    pub jet: Jet<T>,
    /// Induced metric `g_ij`.
    pub metric: Matrix<T>,
    pub metric_inv: Matrix<T>,
    /// Tangent frame `e_a = Σ (g^{−1/2})_{ai} X_i`, orthonormal.
    pub tangent_frame: Vec<Vec<T>>,
    /// Orthonormal basis of the normal space inside the ambient manifold.
    pub normals: Vec<Vec<T>>,
    /// `⟨ν_a,ν_a⟩ = ±1`.
    pub normal_signs: Vec<T>,
}

/// Signature-aware Gram–Schmidt completion of `seeds` by standard basis
/// vectors, choosing the best-conditioned candidate at each round.
fn complete_basis<T: Real>(ambient: AmbientKind<T>, seeds: &[Vec<T>], dim: usize, count: usize) -> Result<Vec<Vec<T>>> {
    let mut basis: Vec<(Vec<T>, T)> = Vec::new();
    let push = |basis: &mut Vec<(Vec<T>, T)>, v: &[T]| -> Option<Vec<T>> {
        let mut w = v.to_vec();
        for _ in 0..2 {
            for (b, bb) in basis.iter() {
                let c = ambient.inner(&w, b) / *bb;
                w.iter_mut().zip(b).for_each(|(x, &y)| *x = *x - c * y);
            }
        }
        let sq = ambient.inner(&w, &w);
        if sq.abs() <= lit(1e-24) {
            return None;
        }
        let s = sq.abs().sqrt();
        let unit: Vec<T> = w.iter().map(|&x| x / s).collect();
        let usq = ambient.inner(&unit, &unit);
        basis.push((unit.clone(), usq));
        Some(unit)
    };
    for s in seeds {
        if push(&mut basis, s).is_none() {
            return Err(Error::ChartDegenerate("tangent vectors are dependent".into()));
        }
    }
    let mut out = Vec::with_capacity(count);
    let mut used = vec![false; dim];
    while out.len() < count {
        let mut best: Option<(usize, T)> = None;
        for k in (0..dim).filter(|&k| !used[k]) {
            let mut w = vec![T::zero(); dim];
            w[k] = T::one();
            for (b, bb) in &basis {
                let c = ambient.inner(&w, b) / *bb;
                w.iter_mut().zip(b).for_each(|(x, &y)| *x = *x - c * y);
            }
            let q = ambient.inner(&w, &w).abs();
            if best.is_none_or(|(_, bq)| q > bq) {
                best = Some((k, q));
            }
        }
        let (k, _) = best.ok_or_else(|| Error::ChartDegenerate("normal space too small".into()))?;
        used[k] = true;
        let mut e = vec![T::zero(); dim];
        e[k] = T::one();
        match push(&mut basis, &e) {
            Some(unit) => out.push(unit),
            None => return Err(Error::ChartDegenerate("normal space is degenerate".into())),
        }
    }
    Ok(out)
}

/// Computes the induced metric, tangent and normal frames from a jet.
pub fn local_geometry_from_jet<T: Real>(ambient: AmbientKind<T>, jet: Jet<T>) -> Result<LocalGeometry<T>> {
    let n = jet.first.len();
    let dim = jet.point.len();
    let mut metric = linalg::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            metric[i][j] = ambient.inner(&jet.first[i], &jet.first[j]);
        }
    }
    let metric_inv = if n == 0 {
        Vec::new()
    } else {
        linalg::invert(&metric, lit(1e-12))
            .ok_or_else(|| Error::ChartDegenerate("induced metric is singular".into()))?
    };
    let inv_sqrt = if n == 0 {
        Vec::new()
    } else {
        linalg::inverse_sqrt_spd(&metric)
            .ok_or_else(|| Error::ChartDegenerate("induced metric is not positive definite".into()))?
    };
    let tangent_frame: Vec<Vec<T>> = (0..n)
        .map(|a| {
            let terms: Vec<(T, &Vec<T>)> = (0..n).map(|i| (inv_sqrt[a][i], &jet.first[i])).collect();
            combine(&terms)
        })
        .collect();
    let mut seeds = Vec::new();
    if ambient.has_radial() {
        seeds.push(jet.point.clone());
    }
    seeds.extend(jet.first.iter().cloned());
    let codim = dim - n - usize::from(ambient.has_radial());
    let normals = complete_basis(ambient, &seeds, dim, codim)?;
    let normal_signs = normals.iter().map(|v| ambient.inner(v, v).signum()).collect();
    Ok(LocalGeometry {
        ambient,
        jet,
        metric,
        metric_inv,
        tangent_frame,
        normals,
        normal_signs,
    })
}

/// Local geometry of `imm` at `u`.
pub fn local_geometry<T: Real>(imm: &ImmersionEvaluator<T>, u: &[T], h: T, scheme: Scheme) -> Result<LocalGeometry<T>> {
    local_geometry_from_jet(imm.ambient, jet(imm, u, h, scheme)?)
}

impl<T: Real> LocalGeometry<T> {
    pub fn dim(&self) -> usize {
        self.jet.first.len()
    }

    /// Normal component of an ambient vector.
    pub fn normal_part(&self, v: &[T]) -> Vec<T> {
        let terms: Vec<(T, &Vec<T>)> = self
            .normals
            .iter()
            .zip(&self.normal_signs)
            .map(|(nu, &s)| (s * self.ambient.inner(v, nu), nu))
            .collect();
        if terms.is_empty() {
            return vec![T::zero(); v.len()];
        }
        combine(&terms)
    }

    /// `g^{ij} X_ij`, before projection.
    fn trace_second(&self) -> Vec<T> {
        let n = self.dim();
        let mut out = vec![T::zero(); self.jet.point.len()];
        for i in 0..n {
            for j in 0..n {
                let c = self.metric_inv[i][j];
                out.iter_mut()
                    .zip(&self.jet.second[i][j])
                    .for_each(|(o, &x)| *o = *o + c * x);
            }
        }
        out
    }

    /// Mean curvature vector `g^{ij}(X_ij)^⊥`.
    pub fn mean_curvature(&self) -> Vec<T> {
        self.normal_part(&self.trace_second())
    }

    /// Shape operator `⟨B(e_a,e_b), ν⟩` in the orthonormal tangent frame.
    pub fn shape_operator(&self, nu: &[T]) -> Matrix<T> {
        let n = self.dim();
        let raw: Matrix<T> = (0..n)
            .map(|i| (0..n).map(|j| self.ambient.inner(&self.jet.second[i][j], nu)).collect())
            .collect();
        // e_a = Σ_i P_ai X_i with P = g^{-1/2}; recover P from the frame
        let p = self.frame_coefficients();
        let pt = linalg::transpose(&p);
        linalg::matmul(&linalg::matmul(&p, &raw), &pt)
    }

    fn frame_coefficients(&self) -> Matrix<T> {
        linalg::inverse_sqrt_spd(&self.metric).unwrap_or_else(|| linalg::identity(self.dim()))
    }

    /// Largest entry of the second fundamental form over the orthonormal
    /// tangent and normal frames.
    pub fn second_fundamental_norm(&self) -> T {
        self.normals
            .iter()
            .map(|nu| {
                self.shape_operator(nu)
                    .iter()
                    .flat_map(|r| r.iter())
                    .fold(T::zero(), |m, &v| m.max(v.abs()))
            })
            .fold(T::zero(), T::max)
    }
}

/// Tangent and normal frames from first derivatives only. The returned
/// second derivatives are zero, so shape operators are meaningless.
pub fn tangent_geometry<T: Real>(imm: &ImmersionEvaluator<T>, u: &[T], h: T) -> Result<LocalGeometry<T>> {
    if u.len() != imm.chart_dim {
        return Err(Error::DimensionMismatch {
            expected: imm.chart_dim,
            found: u.len(),
        });
    }
    let point = imm.eval(u)?;
    let two_h = lit::<T>(2.0) * h;
    let mut first = Vec::with_capacity(u.len());
    for i in 0..u.len() {
        let mut p = u.to_vec();
        p[i] = p[i] + h;
        let mut m = u.to_vec();
        m[i] = m[i] - h;
        let (xp, xm) = (imm.eval(&p)?, imm.eval(&m)?);
        first.push(xp.iter().zip(&xm).map(|(&a, &b)| (a - b) / two_h).collect());
    }
    let zero = vec![T::zero(); point.len()];
    let second = vec![vec![zero; u.len()]; u.len()];
    local_geometry_from_jet(imm.ambient, Jet { point, first, second })
}

/// Accepted range for the differencing step.
pub fn check_step<T: Real>(h: T) -> Result<()> {
    if h >= lit(1e-4) && h <= lit(1e-2) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "finite-difference step {h} outside [1e-4, 1e-2]"
        )))
    }
}

/// Mean curvature vector `H = g^{ij}(∂²X/∂u_i∂u_j)^⊥` by central differences.
pub fn numeric_mean_curvature<T: Real>(imm: &ImmersionEvaluator<T>, u: &[T], h: T) -> Result<Vec<T>> {
    numeric_mean_curvature_with(imm, u, h, Scheme::Central)
}

pub fn numeric_mean_curvature_with<T: Real>(
    imm: &ImmersionEvaluator<T>,
    u: &[T],
    h: T,
    scheme: Scheme,
) -> Result<Vec<T>> {
    check_step(h)?;
    Ok(local_geometry(imm, u, h, scheme)?.mean_curvature())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(radius: f64) -> ImmersionEvaluator<'static, f64> {
        ImmersionEvaluator::new(1, AmbientKind::Euclidean, move |u: &[f64]| {
            Ok(vec![radius * u[0].cos(), radius * u[0].sin()])
        })
    }

    #[test]
    fn round_circle() {
        let h = numeric_mean_curvature(&circle(2.0), &[0.0], 1e-3).unwrap();
        assert!((h[0] + 0.5).abs() < 1e-6 && h[1].abs() < 1e-12);
    }

    #[test]
    fn minimal_hyperbola_in_minkowski_plane() {
        let imm = ImmersionEvaluator::new(1, AmbientKind::Minkowski, |u: &[f64]| {
            Ok(vec![u[0].sinh(), u[0].cosh()])
        });
        let h = numeric_mean_curvature(&imm, &[0.0], 1e-3).unwrap();
        assert!(h[0].abs() < 1e-10 && (h[1] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn product_of_circles() {
        let imm = ImmersionEvaluator::new(2, AmbientKind::Euclidean, |u: &[f64]| {
            Ok(vec![u[0].cos(), u[0].sin(), u[1].cos(), u[1].sin()])
        });
        let h = numeric_mean_curvature(&imm, &[0.0, 0.0], 1e-3).unwrap();
        let expected = [-1.0, 0.0, -1.0, 0.0];
        assert!(linalg::distance(&h, &expected) < 1e-6);
    }

    #[test]
    fn step_bounds_and_degenerate_charts() {
        assert!(matches!(
            numeric_mean_curvature(&circle(1.0), &[0.0], 1e-6),
            Err(Error::InvalidArgument(_))
        ));
        let flat = ImmersionEvaluator::new(1, AmbientKind::Euclidean, |_u: &[f64]| Ok(vec![1.0, 0.0]));
        assert!(matches!(
            numeric_mean_curvature(&flat, &[0.0], 1e-3),
            Err(Error::ChartDegenerate(_))
        ));
    }

    #[test]
    fn halving_the_step_quarters_the_error() {
        let err = |h: f64| {
            let v = numeric_mean_curvature(&circle(2.0), &[0.3], h).unwrap();
            let exact = [-0.5 * 0.3f64.cos(), -0.5 * 0.3f64.sin()];
            linalg::distance(&v, &exact)
        };
        let ratio = err(8e-3) / err(4e-3);
        assert!((3.0..=5.0).contains(&ratio), "ratio {ratio}");
        let rich = numeric_mean_curvature_with(&circle(2.0), &[0.3], 4e-3, Scheme::Richardson).unwrap();
        let exact = [-0.5 * 0.3f64.cos(), -0.5 * 0.3f64.sin()];
        assert!(linalg::distance(&rich, &exact) < err(4e-3) / 100.0);
    }

    #[test]
    fn hyperboloid_strips_the_radial_part() {
        // a geodesic of H² has no mean curvature in the hyperboloid
        let imm = ImmersionEvaluator::new(1, AmbientKind::Hyperboloid { r: 1.0 }, |u: &[f64]| {
            Ok(vec![0.0, u[0].sinh(), u[0].cosh()])
        });
        let geo = local_geometry(&imm, &[0.4], 1e-3, Scheme::Central).unwrap();
        assert!(linalg::norm(&geo.mean_curvature()) < 1e-9);
        assert!(geo.second_fundamental_norm() < 1e-9);
        assert_eq!(geo.normals.len(), 1);
    }
}
