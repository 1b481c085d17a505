//! Descriptor-blind numerical checks.
//!
//! Every routine here consumes chart maps only, so the closed forms in
//! [`crate::flow`] are certified by code that never sees them.

pub mod evolve;
pub mod fd;
pub mod ode;
pub mod residual;

pub use fd::{
    jet, local_geometry, tangent_geometry, numeric_mean_curvature, numeric_mean_curvature_with, AmbientKind,
    ImmersionEvaluator, Jet, LocalGeometry, Scheme,
};
pub use residual::{
    conformal_normal_curvature_gap, flat_normal_residual, flow_chart, isoparametric_residual,
    isoparametric_spread, normal_curvature_norm, pde_residual, transport_normals, Gauge, PdeSettings,
    TransportSpec,
};
pub use evolve::{evolve_and_compare, evolve_grid, ChartGrid, EulerSettings, GridAxis};
pub use ode::{adaptive_simpson, geodesic_sphere_collapse_time};
