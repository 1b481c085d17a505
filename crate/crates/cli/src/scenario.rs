//! Scenario files: what to flow, on which times and samples, and what to write.

use std::path::Path;

use hyperflow::descriptor::{
    derive_umbilic, EuclideanIso, IsoDescriptor, ProductOfSpheres, SphereFactor, UmbilicInner, UmbilicKind,
};
use hyperflow::flow::existence_window;
use hyperflow::lorentz::{LorentzVector, OrthonormalFrame};
use hyperflow::{catalog, Frame};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub descriptor: DescriptorSpec,
    #[serde(default)]
    pub time_grid: TimeGrid,
    #[serde(default)]
    pub sampling: Sampling,
    #[serde(default)]
    pub oracle: OracleSettings,
    #[serde(default = "all_outputs")]
    pub outputs: Vec<Output>,
    #[serde(default)]
    pub frame: FrameChoice,
}

/// Descriptor grammar, one `type` tag per variant. Leaves (`spheres`,
/// `point`, `euclidean`) only appear inside `full_product` and `umbilic`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum DescriptorSpec {
    Catalog {
        name: String,
    },
    Ambient {
        m: usize,
        r: f64,
    },
    FullProduct {
        l: usize,
        r: f64,
        leaf: Box<DescriptorSpec>,
    },
    Umbilic {
        xi: Vec<f64>,
        a: f64,
        inner: Box<DescriptorSpec>,
    },
    Spheres {
        factors: Vec<FactorSpec>,
    },
    Point {
        direction: Vec<f64>,
    },
    Euclidean {
        flat_dim: usize,
        #[serde(default)]
        spheres: Option<Vec<FactorSpec>>,
        offset: Vec<f64>,
    },
}

/// A sphere factor `S^p` of squared radius `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSpec {
    pub p: usize,
    pub s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub start: f64,
    pub end: f64,
    pub steps: usize,
    #[serde(default = "yes")]
    pub clip_to_existence: bool,
}

impl Default for TimeGrid {
    fn default() -> Self {
        Self { start: -1.0, end: 1.0, steps: 21, clip_to_existence: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sampling {
    pub per_dim: usize,
    #[serde(default)]
    pub seed: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Self { per_dim: 4, seed: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSettings {
    #[serde(default = "yes")]
    pub enabled: bool,
    pub fd_step: f64,
    pub dt: f64,
    /// Tolerance of the PDE residual checks.
    pub tolerance: f64,
}

impl Default for OracleSettings {
    fn default() -> Self {
        Self { enabled: true, fd_step: 1e-3, dt: 1e-4, tolerance: 1e-3 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Output {
    Trajectory,
    Ball,
    Window,
    Limits,
    Invariants,
}

fn all_outputs() -> Vec<Output> {
    vec![Output::Trajectory, Output::Ball, Output::Window, Output::Limits, Output::Invariants]
}

fn yes() -> bool {
    true
}

/// Frame used for the ball coordinates: the standard basis or explicit
/// vectors `ε_1, …, ε_{m+1}`, one row each.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameChoice {
    #[default]
    Standard,
    Explicit(Vec<Vec<f64>>),
}

/// Times actually used, after clipping to the existence window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResolvedGrid {
    pub start: f64,
    pub end: f64,
    pub requested_end: f64,
    pub steps: usize,
    pub clipped: bool,
    /// Margin kept below a finite maximal time, when clipping applies.
    pub margin: Option<f64>,
    #[serde(skip)]
    pub times: Vec<f64>,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
    }

    /// A scenario file path, or the name of a catalog entry.
    pub fn resolve(arg: &str) -> Result<Self, CliError> {
        let path = Path::new(arg);
        if !path.exists() {
            if let Some(s) = catalog_scenario(arg) {
                return Ok(s);
            }
        }
        Self::load(path)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let g = &self.time_grid;
        if g.steps < 2 {
            return Err(invalid("time_grid.steps must be at least 2"));
        }
        if !(g.start.is_finite() && g.end.is_finite() && g.start < g.end) {
            return Err(invalid("time_grid needs finite start < end"));
        }
        if self.sampling.per_dim < 2 {
            return Err(invalid("sampling.per_dim must be at least 2"));
        }
        let o = &self.oracle;
        if !(o.fd_step > 0.0 && o.dt > 0.0 && o.tolerance > 0.0) {
            return Err(invalid("oracle.fd_step, oracle.dt and oracle.tolerance must be positive"));
        }
        Ok(())
    }

    pub fn descriptor(&self) -> Result<IsoDescriptor<f64>, CliError> {
        self.descriptor.build().map_err(invalid)
    }

    pub fn frame(&self, m: usize) -> Result<Frame, CliError> {
        match &self.frame {
            FrameChoice::Standard => Ok(OrthonormalFrame::standard(m)),
            FrameChoice::Explicit(rows) => {
                if rows.len() != m + 1 {
                    return Err(invalid(format!("frame needs {} vectors, found {}", m + 1, rows.len())));
                }
                let vectors = rows
                    .iter()
                    .map(|r| LorentzVector::new(r.clone()))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| invalid(format!("frame: {e}")))?;
                OrthonormalFrame::from_vectors(vectors).map_err(|e| invalid(format!("frame: {e}")))
            }
        }
    }

    /// Evenly spaced times, with the end pulled below `T − 1e−9·max(1,|T|)`
    /// when `clip_to_existence` is set.
    pub fn grid(&self, d: &IsoDescriptor<f64>) -> Result<ResolvedGrid, CliError> {
        let g = self.time_grid;
        let bound = existence_window(d).t.finite();
        let margin = bound.map(|t| 1e-9 * t.abs().max(1.0));
        let mut end = g.end;
        let mut clipped = false;
        if let (true, Some(t), Some(eps)) = (g.clip_to_existence, bound, margin) {
            if end > t - eps {
                end = t - eps;
                clipped = true;
            }
        }
        if end <= g.start {
            return Err(invalid(format!("time grid is empty after clipping to the existence window (end {end})")));
        }
        let times = (0..g.steps)
            .map(|k| {
                if k + 1 == g.steps {
                    end
                } else {
                    g.start + (end - g.start) * k as f64 / (g.steps - 1) as f64
                }
            })
            .collect();
        Ok(ResolvedGrid {
            start: g.start,
            end,
            requested_end: g.end,
            steps: g.steps,
            clipped,
            margin: if g.clip_to_existence { margin } else { None },
            times,
        })
    }
}

fn factors(spec: &[FactorSpec]) -> Result<Vec<SphereFactor<f64>>, String> {
    spec.iter()
        .map(|f| SphereFactor::new(f.p, f.s).map_err(|e| e.to_string()))
        .collect()
}

impl DescriptorSpec {
    /// Builds and validates a top-level descriptor.
    pub fn build(&self) -> Result<IsoDescriptor<f64>, String> {
        let e = |err: hyperflow::Error| err.to_string();
        match self {
            DescriptorSpec::Catalog { name } => {
                catalog::by_name(name).ok_or_else(|| format!("unknown catalog entry `{name}`"))
            }
            DescriptorSpec::Ambient { m, r } => IsoDescriptor::ambient(*m, *r).map_err(e),
            DescriptorSpec::FullProduct { l, r, leaf } => IsoDescriptor::full_product(*l, *r, leaf.sphere_leaf()?).map_err(e),
            DescriptorSpec::Umbilic { xi, a, inner } => {
                let umb = derive_umbilic(LorentzVector::new(xi.clone()).map_err(e)?, *a).map_err(e)?;
                let inner = match umb.kind() {
                    UmbilicKind::Hyperbolic => UmbilicInner::Hyperbolic(Box::new(inner.build()?)),
                    UmbilicKind::Spherical => UmbilicInner::Spherical(inner.sphere_leaf()?),
                    UmbilicKind::Euclidean => UmbilicInner::Euclidean(inner.euclidean_leaf()?),
                };
                IsoDescriptor::umbilic(umb, inner).map_err(e)
            }
            other => Err(format!("`{}` is a leaf and cannot stand alone", other.tag())),
        }
    }

    fn sphere_leaf(&self) -> Result<ProductOfSpheres<f64>, String> {
        let leaf = match self {
            DescriptorSpec::Spheres { factors: f } => ProductOfSpheres::spheres(factors(f)?),
            DescriptorSpec::Point { direction } => ProductOfSpheres::point(direction.clone()),
            other => return Err(format!("expected a `spheres` or `point` leaf, found `{}`", other.tag())),
        };
        leaf.map_err(|e| e.to_string())
    }

    fn euclidean_leaf(&self) -> Result<EuclideanIso<f64>, String> {
        match self {
            DescriptorSpec::Euclidean { flat_dim, spheres, offset } => {
                let spheres = spheres.as_deref().map(factors).transpose()?;
                EuclideanIso::new(*flat_dim, spheres, offset.clone()).map_err(|e| e.to_string())
            }
            other => Err(format!("a horospherical wrapper needs a `euclidean` leaf, found `{}`", other.tag())),
        }
    }

    fn tag(&self) -> &'static str {
        match self {
            DescriptorSpec::Catalog { .. } => "catalog",
            DescriptorSpec::Ambient { .. } => "ambient",
            DescriptorSpec::FullProduct { .. } => "full_product",
            DescriptorSpec::Umbilic { .. } => "umbilic",
            DescriptorSpec::Spheres { .. } => "spheres",
            DescriptorSpec::Point { .. } => "point",
            DescriptorSpec::Euclidean { .. } => "euclidean",
        }
    }

    /// Explicit form of a descriptor.
    pub fn from_descriptor(d: &IsoDescriptor<f64>) -> Self {
        match d {
            IsoDescriptor::Ambient { m, r } => DescriptorSpec::Ambient { m: *m, r: *r },
            IsoDescriptor::FullProduct { l, r, leaf } => DescriptorSpec::FullProduct {
                l: *l,
                r: *r,
                leaf: Box::new(Self::from_leaf(leaf)),
            },
            IsoDescriptor::Umbilic { umb, inner } => DescriptorSpec::Umbilic {
                xi: umb.xi().coords().to_vec(),
                a: umb.a(),
                inner: Box::new(match inner {
                    UmbilicInner::Hyperbolic(d) => Self::from_descriptor(d),
                    UmbilicInner::Spherical(leaf) => Self::from_leaf(leaf),
                    UmbilicInner::Euclidean(e) => DescriptorSpec::Euclidean {
                        flat_dim: e.flat_dim,
                        spheres: e.spheres.as_deref().map(factor_specs),
                        offset: e.offset.clone(),
                    },
                }),
            },
        }
    }

    fn from_leaf(leaf: &ProductOfSpheres<f64>) -> Self {
        match leaf {
            ProductOfSpheres::Spheres(f) => DescriptorSpec::Spheres { factors: factor_specs(f) },
            ProductOfSpheres::Point { direction } => DescriptorSpec::Point { direction: direction.clone() },
        }
    }
}

fn factor_specs(f: &[SphereFactor<f64>]) -> Vec<FactorSpec> {
    f.iter().map(|f| FactorSpec { p: f.dim, s: f.radius2 }).collect()
}

/// Default scenario for a catalog entry, with the descriptor spelled out.
pub fn catalog_scenario(name: &str) -> Option<Scenario> {
    let d = catalog::by_name::<f64>(name)?;
    let per_dim = match d.n() {
        0 | 1 => 8,
        2 => 4,
        _ => 3,
    };
    Some(Scenario {
        name: Some(name.to_string()),
        descriptor: DescriptorSpec::from_descriptor(&d),
        time_grid: TimeGrid::default(),
        sampling: Sampling { per_dim, seed: 0 },
        oracle: OracleSettings::default(),
        outputs: all_outputs(),
        frame: FrameChoice::Standard,
    })
}
