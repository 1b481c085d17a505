//! Totally umbilical hypersurfaces `L = {x ∈ H^m(−1) : ⟨x,ξ⟩ = a}` and the
//! isometries that identify them with a standard space form.

use crate::error::{ensure_dim, Error, Result};
use crate::lorentz::{complete_orthonormal, LorentzVector, OrthonormalFrame};
use crate::scalar::{lit, Real};

/// Intrinsic geometry of `L`, read off from the causal type of `ξ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UmbilicKind {
    /// `⟨ξ,ξ⟩ = 1`: an equidistant hypersurface, `α < 1`.
    Hyperbolic,
    /// `⟨ξ,ξ⟩ = 0`: a horosphere, `α = 1`.
    Euclidean,
    /// `⟨ξ,ξ⟩ = −1`: a geodesic sphere, `α > 1`.
    Spherical,
}

/// Isometry from a standard model onto `L`.
#[derive(Debug, Clone, PartialEq)]
enum Placement<T> {
    /// `x = η + √r_L·E z` for `z ∈ H^{m−1}(−1)`; `E` sends the standard basis of
    /// `ℝ^{m−1,1}` to `spatial ∪ {time}`.
    Hyperbolic {
        r_l: T,
        spatial: Vec<LorentzVector<T>>,
        time: LorentzVector<T>,
    },
    /// `x = η + E y` for `y` on the sphere of squared radius `ρ²` in `ℝ^m`.
    Spherical { rho2: T, basis: Vec<LorentzVector<T>> },
    /// `x = p₀ + E w − |w|²/(2a)·ξ` for `w ∈ ℝ^{m−1}`.
    Euclidean { p0: LorentzVector<T>, basis: Vec<LorentzVector<T>> },
}

/// Constants of a totally umbilical hypersurface together with its placement.
#[derive(Debug, Clone, PartialEq)]
pub struct UmbilicData<T> {
    xi: LorentzVector<T>,
    xi_square: T,
    a: T,
    alpha: T,
    beta: T,
    eta: Option<LorentzVector<T>>,
    c: T,
    kind: UmbilicKind,
    placement: Placement<T>,
}

/// Builds `UmbilicData` for `{⟨x,ξ⟩ = a}`.
///
/// A negative `a` is normalized by flipping `ξ`. Besides `⟨ξ,ξ⟩ + a² > 0`, a
/// causal `ξ` must point to the past, otherwise the level set misses the
/// upper sheet.
pub fn derive_umbilic<T: Real>(xi: LorentzVector<T>, a: T) -> Result<UmbilicData<T>> {
    if !a.is_finite() {
        return Err(Error::InvalidArgument("a must be finite".into()));
    }
    let q = xi.square();
    let tol = T::algebraic_tol();
    let q = if (q - T::one()).abs() <= tol {
        T::one()
    } else if q.abs() <= tol {
        T::zero()
    } else if (q + T::one()).abs() <= tol {
        -T::one()
    } else {
        return Err(Error::InvalidArgument(format!(
            "<xi,xi> must be -1, 0 or 1, got {q}"
        )));
    };
    let (xi, a) = if a < T::zero() { (-xi, -a) } else { (xi, a) };
    let radius = q + a * a;
    if radius <= T::zero() {
        return Err(Error::EmptyHypersurface(format!(
            "<xi,xi> + a^2 = {radius} <= 0"
        )));
    }
    if q <= T::zero() && xi.time() >= T::zero() {
        return Err(Error::EmptyHypersurface(
            "a future causal xi never meets the upper sheet with a > 0".into(),
        ));
    }
    let m = xi.m();
    let beta = T::one() / radius.sqrt();
    let alpha = beta * a;
    let c = beta / (alpha + T::one());
    // αβ/(1−α²) reduces to ⟨ξ,ξ⟩·a; the reduced form avoids the rounding in 1 − α²
    let (kind, eta, placement) = if q > T::zero() {
        let eta = xi.scale(q * a);
        let o = LorentzVector::time_axis(m);
        let w = o.axpy(-o.dot(&xi), &xi);
        let time = w.scale(T::one() / (-w.square()).sqrt());
        let spatial = complete_orthonormal(&[xi.clone(), time.clone()], m);
        let placement = Placement::Hyperbolic {
            r_l: radius,
            spatial,
            time,
        };
        (UmbilicKind::Hyperbolic, Some(eta), placement)
    } else if q < T::zero() {
        let eta = xi.scale(q * a);
        let basis = complete_orthonormal(std::slice::from_ref(&xi), m);
        let placement = Placement::Spherical { rho2: radius, basis };
        (UmbilicKind::Spherical, Some(eta), placement)
    } else {
        let big_a = a / (-xi.time());
        let big_b = (big_a * big_a - T::one()) / (lit::<T>(2.0) * a);
        let p0 = LorentzVector::time_axis(m)
            .scale(big_a)
            .axpy(big_b, &xi);
        let along = xi.axpy(a, &p0).scale(T::one() / a);
        let basis = complete_orthonormal(&[p0.clone(), along], m);
        (UmbilicKind::Euclidean, None, Placement::Euclidean { p0, basis })
    };
    Ok(UmbilicData {
        xi,
        xi_square: q,
        a,
        alpha,
        beta,
        eta,
        c,
        kind,
        placement,
    })
}

impl<T: Real> UmbilicData<T> {
    pub fn xi(&self) -> &LorentzVector<T> {
        &self.xi
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    /// `⟨ξ,ξ⟩`, snapped to −1, 0 or 1.
    pub fn xi_square(&self) -> T {
        self.xi_square
    }

    /// `1 − α²`, evaluated as `⟨ξ,ξ⟩β²` to keep it exact in sign and free of cancellation.
    pub fn one_minus_alpha2(&self) -> T {
        self.xi_square * self.beta * self.beta
    }

    /// Center `η = αβ/(1−α²)·ξ`; absent for horospheres.
    pub fn eta(&self) -> Option<&LorentzVector<T>> {
        self.eta.as_ref()
    }

    /// `c = β/(α+1)`.
    pub fn c(&self) -> T {
        self.c
    }

    pub fn kind(&self) -> UmbilicKind {
        self.kind
    }

    pub fn is_totally_geodesic(&self) -> bool {
        self.a == T::zero()
    }

    /// Ambient dimension `m` of `H^m(−1) ⊃ L`.
    pub fn m(&self) -> usize {
        self.xi.m()
    }

    /// `1/β² = ⟨ξ,ξ⟩ + a²`: `r_L` for the hyperbolic kind, `ρ²` for the spherical one.
    pub fn model_radius2(&self) -> T {
        T::one() / (self.beta * self.beta)
    }

    /// Dimension of the standard model space the placement starts from.
    pub fn model_dim(&self) -> usize {
        match self.kind {
            UmbilicKind::Spherical => self.m(),
            _ => self.m() - 1,
        }
    }

    /// Whether `x` lies on `L` within `tol`.
    pub fn contains(&self, x: &LorentzVector<T>, tol: T) -> bool {
        x.m() == self.m()
            && x.time() > T::zero()
            && (x.square() + T::one()).abs() <= tol * x.euclidean_norm().max(T::one())
            && (x.dot(&self.xi) - self.a).abs() <= tol * x.euclidean_norm().max(T::one())
    }

    fn eta_or_zero(&self) -> LorentzVector<T> {
        self.eta.clone().unwrap_or_else(|| LorentzVector::zeros(self.m()))
    }

    /// Coordinates of `x ∈ L` in the standard model: a point of `H^{m−1}(−1)`
    /// (last entry timelike), of the sphere `S^{m−1}(ρ²) ⊂ ℝ^m`, or of `ℝ^{m−1}`.
    pub fn to_model(&self, x: &LorentzVector<T>) -> Vec<T> {
        match &self.placement {
            Placement::Hyperbolic { r_l, spatial, time } => {
                let v = (x - &self.eta_or_zero()).scale(T::one() / r_l.sqrt());
                let mut z: Vec<T> = spatial.iter().map(|b| v.dot(b)).collect();
                z.push(-v.dot(time));
                z
            }
            Placement::Spherical { basis, .. } => {
                let v = x - &self.eta_or_zero();
                basis.iter().map(|b| v.dot(b)).collect()
            }
            Placement::Euclidean { p0, basis } => {
                let v = x - p0;
                basis.iter().map(|b| v.dot(b)).collect()
            }
        }
    }

    /// Inverse of [`Self::to_model`].
    pub fn from_model(&self, z: &[T]) -> Result<LorentzVector<T>> {
        ensure_dim(self.model_dim() + usize::from(self.kind == UmbilicKind::Hyperbolic), z.len())?;
        Ok(match &self.placement {
            Placement::Hyperbolic { r_l, .. } => {
                self.eta_or_zero().axpy(r_l.sqrt(), &self.push(z))
            }
            Placement::Spherical { .. } => self.eta_or_zero() + self.push(z),
            Placement::Euclidean { p0, .. } => {
                let w2 = z.iter().fold(T::zero(), |s, &v| s + v * v);
                p0.axpy(T::one(), &self.push(z))
                    .axpy(-w2 / (lit::<T>(2.0) * self.a), &self.xi)
            }
        })
    }

    /// For the hyperbolic kind, the admissible frame `(b₁, …, b_{m−1}, ξ, b_time)`
    /// adapted to the placement: its first `m−1` spatial vectors and its
    /// timelike vector span the plane of `L(V,u)`.
    pub fn adapted_frame(&self) -> Option<OrthonormalFrame<T>> {
        match &self.placement {
            Placement::Hyperbolic { spatial, time, .. } => {
                let mut v = spatial.clone();
                v.push(self.xi.clone());
                v.push(time.clone());
                OrthonormalFrame::from_vectors(v).ok()
            }
            _ => None,
        }
    }

    /// The linear isometry `E` applied to a model vector.
    pub fn push(&self, v: &[T]) -> LorentzVector<T> {
        let mut out = LorentzVector::zeros(self.m());
        match &self.placement {
            Placement::Hyperbolic { spatial, time, .. } => {
                for (b, &vi) in spatial.iter().zip(v) {
                    out = out.axpy(vi, b);
                }
                out = out.axpy(v[spatial.len()], time);
            }
            Placement::Spherical { basis, .. } | Placement::Euclidean { basis, .. } => {
                for (b, &vi) in basis.iter().zip(v) {
                    out = out.axpy(vi, b);
                }
            }
        }
        out
    }

    /// Differential of the placement at model point `z` applied to a model
    /// tangent vector `v`.
    pub fn push_tangent(&self, z: &[T], v: &[T]) -> LorentzVector<T> {
        match &self.placement {
            Placement::Hyperbolic { r_l, .. } => self.push(v).scale(r_l.sqrt()),
            Placement::Spherical { .. } => self.push(v),
            Placement::Euclidean { .. } => {
                let wv = z.iter().zip(v).fold(T::zero(), |s, (&a, &b)| s + a * b);
                self.push(v).axpy(-wv / self.a, &self.xi)
            }
        }
    }
}
