//! Recursive descriptions of isoparametric submanifolds of `H^m(−1)`.
//!
//! Every descriptor lives in the unit model except a top level `Ambient`,
//! which may carry any `r > 0`. A `FullProduct` places `H^l(−r)` in the span
//! of the first `l` and the last coordinate and its leaf in the middle block.

mod chart;
mod leaf;
mod umbilic;

pub use chart::{hyperbolic_exp, sinhc, sphere_point, AxisKind};
pub use leaf::{EuclideanIso, ProductOfSpheres, SphereFactor};
pub use umbilic::{derive_umbilic, UmbilicData, UmbilicKind};

use crate::error::{ensure_dim, Error, Result};
use crate::lorentz::LorentzVector;
use crate::scalar::{count, Real};

/// Tolerance for deciding that a point lies on an immersed descriptor.
pub(crate) fn on_tol<T: Real>() -> T {
    T::membership_tol() * crate::scalar::lit(100.0)
}

#[derive(Debug, Clone, PartialEq)]
pub enum IsoDescriptor<T> {
    /// The whole `H^m(−r)`.
    Ambient { m: usize, r: T },
    /// `H^l(−r) × leaf`, the leaf sitting on the sphere of squared radius `r − 1`.
    FullProduct {
        l: usize,
        r: T,
        leaf: ProductOfSpheres<T>,
    },
    /// A submanifold of the totally umbilical hypersurface described by `umb`.
    Umbilic {
        umb: UmbilicData<T>,
        inner: UmbilicInner<T>,
    },
}

/// What a totally umbilical hypersurface contains; must match its kind.
#[derive(Debug, Clone, PartialEq)]
pub enum UmbilicInner<T> {
    Hyperbolic(Box<IsoDescriptor<T>>),
    Spherical(ProductOfSpheres<T>),
    Euclidean(EuclideanIso<T>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dimensions {
    pub n: usize,
    pub m: usize,
    pub codim: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShapeFlags {
    pub minimal: bool,
    pub totally_geodesic: bool,
    pub intrinsically_flat: bool,
}

/// Mean curvature in both ambient interpretations.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanCurvature<T> {
    /// `H^L`, computed in `ℝ^{m,1}`.
    pub lorentz: LorentzVector<T>,
    /// `H`, computed in the hyperboloid.
    pub hyperbolic: LorentzVector<T>,
}

impl<T: Real> IsoDescriptor<T> {
    pub fn ambient(m: usize, r: T) -> Result<Self> {
        let d = IsoDescriptor::Ambient { m, r };
        d.validate()?;
        Ok(d)
    }

    pub fn full_product(l: usize, r: T, leaf: ProductOfSpheres<T>) -> Result<Self> {
        let d = IsoDescriptor::FullProduct { l, r, leaf };
        d.validate()?;
        Ok(d)
    }

    pub fn umbilic(umb: UmbilicData<T>, inner: UmbilicInner<T>) -> Result<Self> {
        let d = IsoDescriptor::Umbilic { umb, inner };
        d.validate()?;
        Ok(d)
    }

    /// Checks the grammar at every level.
    pub fn validate(&self) -> Result<()> {
        self.validate_at(true)
    }

    fn validate_at(&self, top: bool) -> Result<()> {
        match self {
            IsoDescriptor::Ambient { m, r } => {
                if *m == 0 {
                    return Err(Error::InvalidArgument("ambient dimension must be >= 1".into()));
                }
                if !(*r > T::zero()) || !r.is_finite() {
                    return Err(Error::InvalidArgument(format!("r must be positive, got {r}")));
                }
                if !top && *r != T::one() {
                    return Err(Error::InvalidArgument(
                        "nested ambient descriptors live in the unit model (r = 1)".into(),
                    ));
                }
            }
            IsoDescriptor::FullProduct { l, r, leaf } => {
                if *l == 0 {
                    return Err(Error::InvalidArgument("full product needs l >= 1".into()));
                }
                leaf.validate()?;
                if !(*r >= T::one()) || !r.is_finite() {
                    return Err(Error::InvalidArgument(format!("full product needs r >= 1, got {r}")));
                }
                if let Some(sum) = leaf.radius2() {
                    if *r <= T::one() {
                        return Err(Error::InvalidArgument(
                            "a sphere leaf needs r > 1".into(),
                        ));
                    }
                    let target = *r - T::one();
                    if (sum - target).abs() > T::membership_tol() * target.max(T::one()) {
                        return Err(Error::InvalidArgument(format!(
                            "leaf squared radii sum to {sum}, expected r - 1 = {target}"
                        )));
                    }
                }
            }
            IsoDescriptor::Umbilic { umb, inner } => {
                let m = umb.m();
                match (umb.kind(), inner) {
                    (UmbilicKind::Hyperbolic, UmbilicInner::Hyperbolic(d)) => {
                        d.validate_at(false)?;
                        ensure_dim(m - 1, d.m())?;
                    }
                    (UmbilicKind::Spherical, UmbilicInner::Spherical(leaf)) => {
                        leaf.validate()?;
                        ensure_dim(m, leaf.ambient_dim())?;
                        if let Some(sum) = leaf.radius2() {
                            let rho2 = umb.model_radius2();
                            if (sum - rho2).abs() > T::membership_tol() * rho2.max(T::one()) {
                                return Err(Error::InvalidArgument(format!(
                                    "leaf squared radii sum to {sum}, expected rho^2 = {rho2}"
                                )));
                            }
                        }
                    }
                    (UmbilicKind::Euclidean, UmbilicInner::Euclidean(e)) => {
                        e.validate()?;
                        ensure_dim(m - 1, e.space_dim())?;
                    }
                    (kind, _) => {
                        return Err(Error::InvalidArgument(format!(
                            "inner descriptor does not match a {kind:?} umbilical hypersurface"
                        )))
                    }
                }
                if self.n() >= m {
                    return Err(Error::InvalidArgument(format!(
                        "umbilic level needs n < m, got n = {}, m = {m}",
                        self.n()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Dimension of the submanifold.
    pub fn n(&self) -> usize {
        match self {
            IsoDescriptor::Ambient { m, .. } => *m,
            IsoDescriptor::FullProduct { l, leaf, .. } => l + leaf.dim(),
            IsoDescriptor::Umbilic { inner, .. } => match inner {
                UmbilicInner::Hyperbolic(d) => d.n(),
                UmbilicInner::Spherical(leaf) => leaf.dim(),
                UmbilicInner::Euclidean(e) => e.dim(),
            },
        }
    }

    /// Dimension of the ambient hyperbolic space.
    pub fn m(&self) -> usize {
        match self {
            IsoDescriptor::Ambient { m, .. } => *m,
            IsoDescriptor::FullProduct { l, leaf, .. } => l + leaf.ambient_dim(),
            IsoDescriptor::Umbilic { umb, .. } => umb.m(),
        }
    }

    /// `r` of the hyperboloid `H^m(−r)` the descriptor lives in.
    pub fn r(&self) -> T {
        match self {
            IsoDescriptor::Ambient { r, .. } => *r,
            _ => T::one(),
        }
    }

    pub fn dimensions(&self) -> Dimensions {
        let (n, m) = (self.n(), self.m());
        Dimensions { n, m, codim: m - n }
    }

    /// Kinds of the chart coordinates, in order.
    pub fn axes(&self) -> Vec<AxisKind> {
        match self {
            IsoDescriptor::Ambient { m, .. } => vec![AxisKind::Hyperbolic; *m],
            IsoDescriptor::FullProduct { l, leaf, .. } => {
                let mut axes = vec![AxisKind::Hyperbolic; *l];
                axes.extend(leaf.axes());
                axes
            }
            IsoDescriptor::Umbilic { inner, .. } => match inner {
                UmbilicInner::Hyperbolic(d) => d.axes(),
                UmbilicInner::Spherical(leaf) => leaf.axes(),
                UmbilicInner::Euclidean(e) => e.axes(),
            },
        }
    }

    /// Chart of the immersion.
    pub fn immerse(&self, u: &[T]) -> Result<LorentzVector<T>> {
        ensure_dim(self.n(), u.len())?;
        if u.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("non-finite chart parameter".into()));
        }
        Ok(match self {
            IsoDescriptor::Ambient { r, .. } => LorentzVector::from_vec(hyperbolic_exp(u, *r)),
            IsoDescriptor::FullProduct { l, r, leaf } => {
                let xv = hyperbolic_exp(&u[..*l], *r);
                let y = leaf.immerse(&u[*l..], *r - T::one())?;
                join_product(&xv, &y)
            }
            IsoDescriptor::Umbilic { umb, inner } => {
                let z = match inner {
                    UmbilicInner::Hyperbolic(d) => d.immerse(u)?.into_coords(),
                    UmbilicInner::Spherical(leaf) => leaf.immerse(u, umb.model_radius2())?,
                    UmbilicInner::Euclidean(e) => e.immerse(u)?,
                };
                umb.from_model(&z)?
            }
        })
    }

    /// Whether `x` lies on the submanifold within `tol`.
    pub fn contains(&self, x: &LorentzVector<T>, tol: T) -> bool {
        if x.m() != self.m() || !x.is_finite() || x.time() <= T::zero() {
            return false;
        }
        let scale = x.euclidean_norm().powi(2).max(T::one());
        match self {
            IsoDescriptor::Ambient { r, .. } => (x.square() + *r).abs() <= tol * scale.max(*r),
            IsoDescriptor::FullProduct { l, r, leaf } => {
                let (xv, y) = split_product(x, *l);
                let q = xv.iter().take(*l).fold(T::zero(), |s, &v| s + v * v) - xv[*l] * xv[*l];
                (q + *r).abs() <= tol * scale && leaf.contains(&y, *r - T::one(), tol)
            }
            IsoDescriptor::Umbilic { umb, inner } => {
                if !umb.contains(x, tol) {
                    return false;
                }
                let z = umb.to_model(x);
                match inner {
                    UmbilicInner::Hyperbolic(d) => d.contains(&LorentzVector::from_vec(z), tol),
                    UmbilicInner::Spherical(leaf) => leaf.contains(&z, umb.model_radius2(), tol),
                    UmbilicInner::Euclidean(e) => e.contains(&z, tol),
                }
            }
        }
    }

    pub(crate) fn ensure_contains(&self, x: &LorentzVector<T>) -> Result<()> {
        ensure_dim(self.m() + 1, x.coords().len())?;
        if self.contains(x, on_tol()) {
            Ok(())
        } else {
            Err(Error::Domain("point is not on the immersed submanifold".into()))
        }
    }

    /// Closed-form mean curvature at a point of the submanifold.
    pub fn mean_curvature(&self, x: &LorentzVector<T>) -> Result<MeanCurvature<T>> {
        self.ensure_contains(x)?;
        let hyperbolic = self.hyperbolic_mean_curvature(x);
        let n = count::<T>(self.n());
        let lorentz = hyperbolic.axpy(n / self.r(), x);
        Ok(MeanCurvature { lorentz, hyperbolic })
    }

    fn hyperbolic_mean_curvature(&self, x: &LorentzVector<T>) -> LorentzVector<T> {
        let n = count::<T>(self.n());
        match self {
            IsoDescriptor::Ambient { m, .. } => LorentzVector::zeros(*m),
            IsoDescriptor::FullProduct { l, r, leaf } => {
                let (xv, y) = split_product(x, *l);
                let k = count::<T>(*l) / *r;
                let xv: Vec<T> = xv.iter().map(|&v| k * v).collect();
                let hl = join_product(&xv, &leaf.euclidean_mean_curvature(&y));
                hl.axpy(-n, x)
            }
            IsoDescriptor::Umbilic { umb, inner } => {
                let z = umb.to_model(x);
                let h1 = match inner {
                    UmbilicInner::Hyperbolic(d) => {
                        let h = d.hyperbolic_mean_curvature(&LorentzVector::from_vec(z));
                        umb.push(h.coords())
                            .scale(T::one() / umb.model_radius2().sqrt())
                    }
                    UmbilicInner::Spherical(leaf) => {
                        let k = n / umb.model_radius2();
                        let h: Vec<T> = leaf
                            .euclidean_mean_curvature(&z)
                            .iter()
                            .zip(&z)
                            .map(|(&h, &y)| h + k * y)
                            .collect();
                        umb.push(&h)
                    }
                    UmbilicInner::Euclidean(e) => umb.push_tangent(&z, &e.mean_curvature(&z)),
                };
                let normal = x.scale(umb.alpha()).axpy(umb.beta(), umb.xi());
                h1.axpy(-n * umb.alpha(), &normal)
            }
        }
    }

    /// Minimality, total geodesy and intrinsic flatness.
    pub fn classify_shape(&self) -> ShapeFlags {
        let n = self.n();
        let (tg, flat) = match self {
            IsoDescriptor::Ambient { m, .. } => (true, *m <= 1),
            IsoDescriptor::FullProduct { l, r, leaf } => {
                (leaf.is_point() && *r == T::one(), *l <= 1 && leaf.is_flat())
            }
            IsoDescriptor::Umbilic { umb, inner } => match inner {
                UmbilicInner::Hyperbolic(d) => {
                    let s = d.classify_shape();
                    (umb.is_totally_geodesic() && s.totally_geodesic, s.intrinsically_flat)
                }
                UmbilicInner::Spherical(leaf) => (false, leaf.is_flat()),
                UmbilicInner::Euclidean(e) => (false, e.is_flat()),
            },
        };
        let tg = tg || n == 0;
        ShapeFlags {
            minimal: tg,
            totally_geodesic: tg,
            intrinsically_flat: flat || n <= 1,
        }
    }
}

/// Splits `x` into its `V` part `(x_1, …, x_l, x_{m+1})` and the middle block.
pub(crate) fn split_product<T: Real>(x: &LorentzVector<T>, l: usize) -> (Vec<T>, Vec<T>) {
    let c = x.coords();
    let m = x.m();
    let mut xv = c[..l].to_vec();
    xv.push(c[m]);
    (xv, c[l..m].to_vec())
}

pub(crate) fn join_product<T: Real>(xv: &[T], y: &[T]) -> LorentzVector<T> {
    let l = xv.len() - 1;
    let mut c = xv[..l].to_vec();
    c.extend_from_slice(y);
    c.push(xv[l]);
    LorentzVector::from_vec(c)
}
