//! Minkowski space ℝ^{m,1}, its hyperboloids and admissible orthonormal frames.
//!
//! The bilinear form is `⟨x,y⟩ = Σ_{i≤m} x_i y_i − x_{m+1} y_{m+1}`: the last
//! coordinate is the timelike one. Coordinates are always stored in the
//! standard basis; a frame only changes how a vector is read.

use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::error::{ensure_dim, Error, Result};
use crate::scalar::Real;

/// A vector of ℝ^{m,1} in standard coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzVector<T> {
    coords: Vec<T>,
}

impl<T: Real> LorentzVector<T> {
    /// Builds a vector from its `m + 1` standard coordinates.
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "a vector of R^{{m,1}} needs m >= 1, got {} coordinates",
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coordinate".into()));
        }
        Ok(Self { coords })
    }

    /// Unchecked constructor for values produced by the crate's own closed forms.
    pub(crate) fn from_vec(coords: Vec<T>) -> Self {
        Self { coords }
    }

    pub fn zeros(m: usize) -> Self {
        Self::from_vec(vec![T::zero(); m + 1])
    }

    /// The `i`-th standard basis vector (zero based, `i = m` is timelike).
    pub fn basis(m: usize, i: usize) -> Self {
        let mut v = Self::zeros(m);
        v.coords[i] = T::one();
        v
    }

    /// The future timelike unit `(0, …, 0, 1)`.
    pub fn time_axis(m: usize) -> Self {
        Self::basis(m, m)
    }

    /// Spatial dimension `m`.
    pub fn m(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    /// The spatial part `(x_1, …, x_m)`.
    pub fn spatial(&self) -> &[T] {
        &self.coords[..self.m()]
    }

    /// The timelike coordinate `x_{m+1}`.
    pub fn time(&self) -> T {
        self.coords[self.m()]
    }

    /// Minkowski product; callers guarantee equal dimension.
    pub fn dot(&self, other: &Self) -> T {
        debug_assert_eq!(self.coords.len(), other.coords.len());
        let m = self.m();
        let spatial = (0..m).fold(T::zero(), |s, i| s + self.coords[i] * other.coords[i]);
        spatial - self.coords[m] * other.coords[m]
    }

    /// `⟨x,x⟩`.
    pub fn square(&self) -> T {
        self.dot(self)
    }

    /// Euclidean norm of the coordinate vector.
    pub fn euclidean_norm(&self) -> T {
        crate::linalg::norm(&self.coords)
    }

    pub fn scale(&self, s: T) -> Self {
        Self::from_vec(self.coords.iter().map(|&c| c * s).collect())
    }

    /// `self + s·other`.
    pub fn axpy(&self, s: T, other: &Self) -> Self {
        Self::from_vec(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| a + s * b)
                .collect(),
        )
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }
}

impl<T> Index<usize> for LorentzVector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.coords[i]
    }
}

impl<T: Real> Add for &LorentzVector<T> {
    type Output = LorentzVector<T>;
    fn add(self, rhs: Self) -> LorentzVector<T> {
        self.axpy(T::one(), rhs)
    }
}

impl<T: Real> Sub for &LorentzVector<T> {
    type Output = LorentzVector<T>;
    fn sub(self, rhs: Self) -> LorentzVector<T> {
        self.axpy(-T::one(), rhs)
    }
}

impl<T: Real> Add for LorentzVector<T> {
    type Output = LorentzVector<T>;
    fn add(self, rhs: Self) -> LorentzVector<T> {
        &self + &rhs
    }
}

impl<T: Real> Sub for LorentzVector<T> {
    type Output = LorentzVector<T>;
    fn sub(self, rhs: Self) -> LorentzVector<T> {
        &self - &rhs
    }
}

impl<T: Real> Mul<T> for &LorentzVector<T> {
    type Output = LorentzVector<T>;
    fn mul(self, rhs: T) -> LorentzVector<T> {
        self.scale(rhs)
    }
}

impl<T: Real> Mul<T> for LorentzVector<T> {
    type Output = LorentzVector<T>;
    fn mul(self, rhs: T) -> LorentzVector<T> {
        self.scale(rhs)
    }
}

impl<T: Real> Neg for LorentzVector<T> {
    type Output = LorentzVector<T>;
    fn neg(self) -> LorentzVector<T> {
        self.scale(-T::one())
    }
}

/// `⟨x,y⟩ = Σ_{i≤m} x_i y_i − x_{m+1} y_{m+1}`.
pub fn minkowski_inner<T: Real>(x: &LorentzVector<T>, y: &LorentzVector<T>) -> Result<T> {
    ensure_dim(x.coords.len(), y.coords.len())?;
    Ok(x.dot(y))
}

/// An orthonormal basis `ε_1, …, ε_{m+1}` with `ε_{m+1}` future timelike.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalFrame<T> {
    vectors: Vec<LorentzVector<T>>,
}

impl<T: Real> OrthonormalFrame<T> {
    /// The standard basis `e_1, …, e_{m+1}`.
    pub fn standard(m: usize) -> Self {
        Self {
            vectors: (0..=m).map(|i| LorentzVector::basis(m, i)).collect(),
        }
    }

    /// Accepts `vectors` as a frame after checking every admissibility condition.
    pub fn from_vectors(vectors: Vec<LorentzVector<T>>) -> Result<Self> {
        let frame = Self { vectors };
        frame.validate()?;
        Ok(frame)
    }

    /// Checks orthonormality (to the algebraic tolerance) and the time orientation.
    pub fn validate(&self) -> Result<()> {
        let n = self.vectors.len();
        if n < 2 {
            return Err(Error::FrameConstructionFailed("frame needs m >= 1".into()));
        }
        for v in &self.vectors {
            ensure_dim(n, v.coords.len())?;
        }
        let tol = T::algebraic_tol();
        for i in 0..n {
            for j in i..n {
                let expected = if i != j {
                    T::zero()
                } else if i == n - 1 {
                    -T::one()
                } else {
                    T::one()
                };
                let got = self.vectors[i].dot(&self.vectors[j]);
                if (got - expected).abs() > tol {
                    return Err(Error::FrameConstructionFailed(format!(
                        "<e_{},e_{}> = {got}, expected {expected}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let m = n - 1;
        if self.vectors[m].dot(&LorentzVector::time_axis(m)) >= T::zero() {
            return Err(Error::FrameConstructionFailed(
                "timelike frame vector is past pointing".into(),
            ));
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.vectors.len() - 1
    }

    pub fn vectors(&self) -> &[LorentzVector<T>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &LorentzVector<T> {
        &self.vectors[i]
    }

    /// `Σ a_i ε_i`.
    pub fn combine(&self, coords: &[T]) -> Result<LorentzVector<T>> {
        ensure_dim(self.vectors.len(), coords.len())?;
        let mut out = LorentzVector::zeros(self.m());
        for (a, e) in coords.iter().zip(&self.vectors) {
            out = out.axpy(*a, e);
        }
        Ok(out)
    }

    /// The frame of the inverse Lorentz transformation: its vectors are the
    /// frame coordinates of the standard basis.
    pub fn inverse(&self) -> Self {
        let m = self.m();
        let vectors = (0..=m)
            .map(|i| {
                LorentzVector::from_vec(frame_coords_unchecked(self, &LorentzVector::basis(m, i)))
            })
            .collect();
        Self { vectors }
    }
}

fn frame_coords_unchecked<T: Real>(frame: &OrthonormalFrame<T>, x: &LorentzVector<T>) -> Vec<T> {
    let m = frame.m();
    frame
        .vectors
        .iter()
        .enumerate()
        .map(|(i, e)| if i < m { x.dot(e) } else { -x.dot(e) })
        .collect()
}

/// Coordinates `(a_1, …, a_{m+1})` of `x = Σ a_i ε_i`.
pub fn frame_coordinates<T: Real>(
    frame: &OrthonormalFrame<T>,
    x: &LorentzVector<T>,
) -> Result<Vec<T>> {
    ensure_dim(frame.vectors.len(), x.coords.len())?;
    Ok(frame_coords_unchecked(frame, x))
}

/// Signature-aware Gram–Schmidt.
///
/// The candidate with the most negative self-product becomes `ε_{m+1}` and is
/// oriented to the future; the remaining vectors keep their input order.
pub fn orthonormalize_frame<T: Real>(vectors: &[LorentzVector<T>]) -> Result<OrthonormalFrame<T>> {
    let n = vectors.len();
    if n < 2 {
        return Err(Error::FrameConstructionFailed(
            "need m + 1 >= 2 vectors".into(),
        ));
    }
    for v in vectors {
        ensure_dim(n, v.coords.len())?;
    }
    let scale = vectors
        .iter()
        .map(|v| v.euclidean_norm())
        .fold(T::zero(), T::max);
    let tol = T::algebraic_tol() * scale * scale;
    let (time_idx, time_sq) = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| (i, v.square()))
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .unwrap();
    if time_sq >= -tol {
        return Err(Error::FrameConstructionFailed(
            "no timelike direction among the inputs".into(),
        ));
    }
    let mut timelike = vectors[time_idx].scale(T::one() / (-time_sq).sqrt());
    let m = n - 1;
    if timelike.dot(&LorentzVector::time_axis(m)) > T::zero() {
        timelike = -timelike;
    }
    let mut spacelike: Vec<LorentzVector<T>> = Vec::with_capacity(m);
    for (i, v) in vectors.iter().enumerate() {
        if i == time_idx {
            continue;
        }
        // ⟨t,t⟩ = −1 so the projection coefficient flips sign
        let mut w = v.axpy(v.dot(&timelike), &timelike);
        for e in &spacelike {
            w = w.axpy(-w.dot(e), e);
        }
        let sq = w.square();
        if sq <= tol {
            return Err(Error::FrameConstructionFailed(format!(
                "vector {} is degenerate after projection (<w,w> = {sq})",
                i + 1
            )));
        }
        spacelike.push(w.scale(T::one() / sq.sqrt()));
    }
    spacelike.push(timelike);
    OrthonormalFrame::from_vectors(spacelike)
}

/// Membership of a point with respect to `H^m(−r)` and the time cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    OnHyperboloid,
    InTimeCone,
    Outside,
}

/// Classifies `x` against `H^m(−r)` (within the membership tolerance) and the
/// open time cone `⟨v,v⟩ < 0`.
pub fn ambient_membership<T: Real>(x: &LorentzVector<T>, r: T) -> Membership {
    let sq = x.square();
    // rounding in ⟨x,x⟩ grows with the squared coordinates, which matters far out
    let tol = T::membership_tol() * T::one().max(r).max(x.euclidean_norm().powi(2));
    if (sq + r).abs() <= tol && x.time() > T::zero() {
        Membership::OnHyperboloid
    } else if sq < -T::membership_tol() {
        Membership::InTimeCone
    } else {
        Membership::Outside
    }
}

/// A point of the sheet `H^m(−r) = {⟨x,x⟩ = −r, x_{m+1} > 0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperboloidPoint<T> {
    vector: LorentzVector<T>,
    r: T,
}

impl<T: Real> HyperboloidPoint<T> {
    pub fn new(vector: LorentzVector<T>, r: T) -> Result<Self> {
        if !(r > T::zero()) {
            return Err(Error::InvalidArgument(format!("r must be positive, got {r}")));
        }
        if ambient_membership(&vector, r) != Membership::OnHyperboloid {
            return Err(Error::Domain(format!(
                "point with <x,x> = {} and x_last = {} is not on H^m(-{r})",
                vector.square(),
                vector.time()
            )));
        }
        Ok(Self { vector, r })
    }

    /// Rescales a time-cone vector onto the sheet.
    pub fn project(vector: &LorentzVector<T>, r: T) -> Result<Self> {
        let sq = vector.square();
        if !(sq < T::zero()) || vector.time() <= T::zero() {
            return Err(Error::Domain("vector is not future timelike".into()));
        }
        Ok(Self {
            vector: vector.scale((-r / sq).sqrt()),
            r,
        })
    }

    /// Wraps a closed-form flow output, which lies on the sheet by construction.
    pub(crate) fn from_flow(vector: LorentzVector<T>, r: T) -> Self {
        Self { vector, r }
    }

    pub fn vector(&self) -> &LorentzVector<T> {
        &self.vector
    }

    pub fn into_vector(self) -> LorentzVector<T> {
        self.vector
    }

    pub fn r(&self) -> T {
        self.r
    }
}

/// Vectors orthonormal to `seeds` (which must be orthonormal and
/// non-degenerate) obtained by Gram–Schmidt over the standard basis.
/// Returned in the order they emerge; the caller picks what it needs.
pub(crate) fn complete_orthonormal<T: Real>(
    seeds: &[LorentzVector<T>],
    m: usize,
) -> Vec<LorentzVector<T>> {
    let mut basis: Vec<(LorentzVector<T>, T)> =
        seeds.iter().map(|s| (s.clone(), s.square())).collect();
    let mut out = Vec::new();
    let threshold = crate::scalar::lit::<T>(1e-6);
    for i in 0..=m {
        if basis.len() == m + 1 {
            break;
        }
        let mut w = LorentzVector::basis(m, i);
        for (b, bb) in &basis {
            w = w.axpy(-w.dot(b) / *bb, b);
        }
        // re-orthogonalize once for stability
        for (b, bb) in &basis {
            w = w.axpy(-w.dot(b) / *bb, b);
        }
        let sq = w.square();
        if sq.abs() <= threshold {
            continue;
        }
        let unit = w.scale(T::one() / sq.abs().sqrt());
        let usq = unit.square();
        basis.push((unit.clone(), usq));
        out.push(unit);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> LorentzVector<f64> {
        LorentzVector::new(c.to_vec()).unwrap()
    }

    fn boost() -> Vec<LorentzVector<f64>> {
        vec![
            v(&[1.25, 0.0, 0.75]),
            v(&[0.0, 1.0, 0.0]),
            v(&[0.75, 0.0, 1.25]),
        ]
    }

    #[test]
    fn inner_product_examples() {
        let t = v(&[0.0, 0.0, 1.0]);
        assert_eq!(minkowski_inner(&t, &t).unwrap(), -1.0);
        assert_eq!(
            minkowski_inner(&v(&[1.0, 0.0, 0.0]), &v(&[0.0, 1.0, 0.0])).unwrap(),
            0.0
        );
        let x = v(&[3.0, 0.0, 10f64.sqrt()]);
        assert!((minkowski_inner(&x, &x).unwrap() + 1.0).abs() < 1e-14);
        assert!(matches!(
            minkowski_inner(&t, &v(&[0.0, 1.0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn orthonormalize_examples() {
        let std: Vec<_> = (0..3).map(|i| LorentzVector::<f64>::basis(2, i)).collect();
        assert_eq!(orthonormalize_frame(&std).unwrap(), OrthonormalFrame::standard(2));

        let frame = orthonormalize_frame(&boost()).unwrap();
        for (a, b) in frame.vectors().iter().zip(boost()) {
            assert!(crate::linalg::distance(a.coords(), b.coords()) < 1e-15);
        }
        // the three inner products that make the boost admissible
        let b = boost();
        assert!((b[0].square() - 1.0).abs() < 1e-15);
        assert!((b[2].square() + 1.0).abs() < 1e-15);
        assert_eq!(b[0].dot(&b[2]), 0.0);
        assert_eq!(b[2].dot(&LorentzVector::time_axis(2)), -1.25);

        let flipped = vec![
            LorentzVector::basis(2, 0),
            LorentzVector::basis(2, 1),
            -LorentzVector::<f64>::basis(2, 2),
        ];
        let frame = orthonormalize_frame(&flipped).unwrap();
        assert_eq!(frame.vector(2), &LorentzVector::basis(2, 2));
    }

    #[test]
    fn orthonormalize_failures() {
        let spacelike_only = vec![v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0]), v(&[1.0, 1.0, 0.0])];
        assert!(matches!(
            orthonormalize_frame(&spacelike_only),
            Err(Error::FrameConstructionFailed(_))
        ));
        let degenerate = vec![v(&[1.0, 0.0, 0.0]), v(&[2.0, 0.0, 0.0]), v(&[0.0, 0.0, 1.0])];
        assert!(matches!(
            orthonormalize_frame(&degenerate),
            Err(Error::FrameConstructionFailed(_))
        ));
    }

    #[test]
    fn frame_coordinate_examples() {
        let id = OrthonormalFrame::<f64>::standard(2);
        assert_eq!(
            frame_coordinates(&id, &v(&[0.0, 0.0, 1.0])).unwrap(),
            vec![0.0, 0.0, 1.0]
        );
        let frame = OrthonormalFrame::from_vectors(boost()).unwrap();
        let a = frame_coordinates(&frame, &v(&[0.0, 0.0, 1.0])).unwrap();
        assert!((a[0] + 0.75).abs() < 1e-15 && a[1] == 0.0 && (a[2] - 1.25).abs() < 1e-15);
        // solving x = Σ a_i ε_i directly: a_1 (5/4) + a_3 (3/4) = 0, a_1 (3/4) + a_3 (5/4) = 1
        let det = 1.25 * 1.25 - 0.75 * 0.75;
        assert!((a[0] - (-0.75 / det)).abs() < 1e-15);
        for k in 0..3 {
            let c = frame_coordinates(&frame, frame.vector(k)).unwrap();
            for (i, ci) in c.iter().enumerate() {
                assert!((ci - if i == k { 1.0 } else { 0.0 }).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn membership_examples() {
        assert_eq!(ambient_membership(&v(&[0.0, 0.0, 1.0]), 1.0), Membership::OnHyperboloid);
        assert_eq!(ambient_membership(&v(&[0.0, 0.0, -1.0]), 1.0), Membership::InTimeCone);
        assert_eq!(ambient_membership(&v(&[1.0, 0.0, 1.0]), 1.0), Membership::Outside);
    }

    #[test]
    fn inverse_frame_undoes_coordinates() {
        let frame = OrthonormalFrame::from_vectors(boost()).unwrap();
        let inv = frame.inverse();
        inv.validate().unwrap();
        let x = v(&[0.3, -0.2, 1.4]);
        let a = frame_coordinates(&frame, &x).unwrap();
        let via_inverse = inv.combine(x.coords()).unwrap();
        assert!(crate::linalg::distance(via_inverse.coords(), &a) < 1e-14);
        let y = frame.combine(&a).unwrap();
        assert!(crate::linalg::distance(y.coords(), x.coords()) < 1e-14);
    }
}
