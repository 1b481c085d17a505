//! Scalar abstraction shared by every geometric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar the closed forms and the finite-difference oracle run on.
///
/// The tolerance hooks let single precision run the same code paths with
/// thresholds that make sense for its epsilon.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Tolerance for exact algebraic identities (frame orthonormality, unit norms).
    fn algebraic_tol() -> Self;
    /// Tolerance for membership predicates (on the hyperboloid, on the ideal sphere).
    fn membership_tol() -> Self;
}

impl Real for f64 {
    fn algebraic_tol() -> Self {
        1e-12
    }
    fn membership_tol() -> Self {
        1e-10
    }
}

impl Real for f32 {
    fn algebraic_tol() -> Self {
        2e-5
    }
    fn membership_tol() -> Self {
        1e-4
    }
}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

/// Converts a count into `T`.
#[inline]
pub fn count<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("count representable in scalar type")
}
