//! Exact mean curvature flows of isoparametric submanifolds of hyperbolic
//! space.
//!
//! Submanifolds are described by an [`IsoDescriptor`]: the whole space, a
//! product `H^l × (sphere leaf)`, or a submanifold of a totally umbilical
//! hypersurface, recursively. For each descriptor the crate evaluates the
//! flow in closed form in both the hyperboloid and the surrounding Minkowski
//! space, its existence window, and its forward and backward limits. The
//! [`oracle`] module checks all of it by finite differences on charts alone.
//!
//! The numerical core is generic over [`scalar::Real`]; the aliases below fix
//! the scalar to `f64`.
//!
//! ```
//! use hyperflow::{catalog, flow};
//!
//! let circle = catalog::circle_h2::<f64>();
//! let window = flow::existence_window(&circle);
//! assert!((window.t.finite().unwrap() - 2f64.ln()).abs() < 1e-12);
//!
//! let x = circle.immerse(&[0.0]).unwrap();
//! let y = flow::hyperbolic_flow(&circle, &x, 0.5).unwrap();
//! assert!((y.vector().square() + 1.0).abs() < 1e-12);
//! ```

// `!(a < b)` is deliberate: it also rejects NaN. Index loops mirror the formulas.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod ball;
pub mod catalog;
pub mod descriptor;
pub mod error;
pub mod flow;
pub mod limits;
pub mod linalg;
pub mod lorentz;
pub mod oracle;
pub mod sampling;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Vector = lorentz::LorentzVector<f64>;
pub type Frame = lorentz::OrthonormalFrame<f64>;
pub type Point = lorentz::HyperboloidPoint<f64>;
pub type BallPoint = ball::BallPoint<f64>;
pub type IdealPoint = ball::IdealPoint<f64>;
pub type IsoDescriptor = descriptor::IsoDescriptor<f64>;
pub type Umbilic = descriptor::UmbilicData<f64>;
pub type Leaf = descriptor::ProductOfSpheres<f64>;
pub type Window = flow::ExistenceWindow<f64>;
pub type LimitReport = limits::LimitReport<f64>;
