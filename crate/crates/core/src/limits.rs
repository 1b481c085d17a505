//! Forward and backward limits of the flows.
//!
//! Forward, a flow either stays put, collapses onto a focal set at a finite
//! time, converges to a totally geodesic submanifold, or runs off to a single
//! ideal point. Backward, every moving flow converges to a submanifold of the
//! ideal boundary with the dimension of the initial one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ball::{boundary_transition, product_boundary_map, umbilic_boundary_map, IdealPoint};
use crate::descriptor::{join_product, split_product, IsoDescriptor, UmbilicInner, UmbilicKind};
use crate::error::{Error, Result};
use crate::flow::{existence_window, hyperbolic_flow_at_collapse, intrinsic_umbilic_flow, TimeBound};
use crate::linalg::{self, Matrix};
use crate::lorentz::{LorentzVector, OrthonormalFrame};
use crate::oracle::{flat_normal_residual, AmbientKind, ImmersionEvaluator};
use crate::scalar::{lit, Real};

/// Forward behavior, before evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForwardKind {
    Stationary,
    FocalCollapse,
    TotallyGeodesic,
    IdealPoint,
}

/// Backward behavior, before evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackwardKind {
    Stationary,
    IdealSubmanifold,
}

/// Which limits a descriptor has, without sampling them.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitSkeleton<T> {
    pub forward: ForwardKind,
    pub backward: BackwardKind,
    /// Maximal time of the hyperbolic flow.
    pub collapse_time: TimeBound<T>,
    /// Dimension of the backward limit, equal to that of the submanifold.
    pub backward_dim: usize,
}

/// Decides the limit types of `d`.
///
/// Finite maximal time means focal collapse. Otherwise the flow tends to a
/// totally geodesic submanifold or to an ideal point, and which one follows
/// the structure of the descriptor: a flat umbilical hypersurface (a
/// horosphere) pushes everything to its center, while equidistant
/// hypersurfaces and products with a hyperbolic factor straighten out.
pub fn classify_limits<T: Real>(d: &IsoDescriptor<T>) -> LimitSkeleton<T> {
    let window = existence_window(d);
    let n = d.n();
    if d.classify_shape().totally_geodesic {
        return LimitSkeleton {
            forward: ForwardKind::Stationary,
            backward: BackwardKind::Stationary,
            collapse_time: window.t,
            backward_dim: n,
        };
    }
    let forward = if window.t.is_finite() {
        ForwardKind::FocalCollapse
    } else {
        unbounded_kind(d)
    };
    LimitSkeleton {
        forward,
        backward: BackwardKind::IdealSubmanifold,
        collapse_time: window.t,
        backward_dim: n,
    }
}

fn unbounded_kind<T: Real>(d: &IsoDescriptor<T>) -> ForwardKind {
    match d {
        IsoDescriptor::Ambient { .. } => ForwardKind::Stationary,
        IsoDescriptor::FullProduct { .. } => ForwardKind::TotallyGeodesic,
        IsoDescriptor::Umbilic { umb, inner } => match (umb.kind(), inner) {
            (UmbilicKind::Euclidean, _) => ForwardKind::IdealPoint,
            (_, UmbilicInner::Hyperbolic(d_in)) => {
                if d_in.classify_shape().totally_geodesic {
                    ForwardKind::TotallyGeodesic
                } else {
                    unbounded_kind(d_in)
                }
            }
            // spherical leaves always collapse in finite time
            _ => ForwardKind::FocalCollapse,
        },
    }
}

/// Evaluated forward limit.
#[derive(Debug, Clone, PartialEq)]
pub enum ForwardLimit<T> {
    Stationary,
    /// Limit positions at the collapse time; coincident points are merged,
    /// so a collapse to a point has a single sample.
    FocalCollapse { time: T, samples: Vec<LorentzVector<T>> },
    /// Images of the samples under the limit map `h̃` onto a totally geodesic
    /// submanifold of `H^m(−1)`.
    TotallyGeodesic { samples: Vec<LorentzVector<T>> },
    IdealPoint(IdealPoint<T>),
}

/// Evaluated backward limit, in the standard ball.
#[derive(Debug, Clone, PartialEq)]
pub enum BackwardLimit<T> {
    Stationary,
    IdealSubmanifold {
        samples: Vec<IdealPoint<T>>,
        dim: usize,
        /// Frame in which the boundary subsphere of a totally geodesic
        /// reduction was embedded; the standard frame otherwise.
        frame: OrthonormalFrame<T>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitReport<T> {
    pub forward: ForwardLimit<T>,
    pub backward: BackwardLimit<T>,
}

/// Where a single point ends up as `t → T`.
#[derive(Debug, Clone, PartialEq)]
pub enum ForwardPoint<T> {
    /// The point does not move.
    Fixed(LorentzVector<T>),
    /// Position at the finite collapse time.
    Focal(LorentzVector<T>),
    /// `h̃(x)` on the totally geodesic limit.
    Geodesic(LorentzVector<T>),
    Ideal(IdealPoint<T>),
}

impl<T: Real> ForwardPoint<T> {
    /// Position inside `H^m`, if the limit is not ideal.
    pub fn interior(&self) -> Option<&LorentzVector<T>> {
        match self {
            ForwardPoint::Fixed(x) | ForwardPoint::Focal(x) | ForwardPoint::Geodesic(x) => Some(x),
            ForwardPoint::Ideal(_) => None,
        }
    }
}

/// Forward limit of the trajectory through `x`.
pub fn forward_limit_point<T: Real>(d: &IsoDescriptor<T>, x: &LorentzVector<T>) -> Result<ForwardPoint<T>> {
    d.ensure_contains(x)?;
    match classify_limits(d).forward {
        ForwardKind::Stationary => Ok(ForwardPoint::Fixed(x.clone())),
        ForwardKind::FocalCollapse => Ok(ForwardPoint::Focal(hyperbolic_flow_at_collapse(d, x)?.into_vector())),
        ForwardKind::TotallyGeodesic | ForwardKind::IdealPoint => unbounded_point(d, x),
    }
}

/// Limit as `t → ∞` for descriptors whose flow exists for all time.
fn unbounded_point<T: Real>(d: &IsoDescriptor<T>, x: &LorentzVector<T>) -> Result<ForwardPoint<T>> {
    match d {
        IsoDescriptor::Ambient { .. } => Ok(ForwardPoint::Fixed(x.clone())),
        IsoDescriptor::FullProduct { l, r, .. } => {
            let (xv, y) = split_product(x, *l);
            let s = T::one() / r.sqrt();
            let xv: Vec<T> = xv.iter().map(|&v| v * s).collect();
            Ok(ForwardPoint::Geodesic(join_product(&xv, &vec![T::zero(); y.len()])))
        }
        IsoDescriptor::Umbilic { umb, inner } => match (umb.kind(), inner) {
            (UmbilicKind::Euclidean, _) => {
                let xi = umb.xi();
                let p: Vec<T> = xi.spatial().iter().map(|&v| v / xi.time()).collect();
                Ok(ForwardPoint::Ideal(IdealPoint::new(p)?))
            }
            (UmbilicKind::Hyperbolic, UmbilicInner::Hyperbolic(d_in)) => {
                let z = LorentzVector::new(umb.to_model(x))?;
                if d_in.classify_shape().totally_geodesic {
                    return Ok(ForwardPoint::Geodesic(umb.push(z.coords())));
                }
                match unbounded_point(d_in, &z)? {
                    ForwardPoint::Geodesic(h) | ForwardPoint::Fixed(h) => Ok(ForwardPoint::Geodesic(umb.push(h.coords()))),
                    ForwardPoint::Ideal(p) => Ok(ForwardPoint::Ideal(embed_ideal(umb, &p)?)),
                    ForwardPoint::Focal(_) => Err(Error::Internal("focal limit of a flow without collapse".into())),
                }
            }
            _ => Err(Error::Internal("unbounded flow on a spherical leaf".into())),
        },
    }
}

/// Ideal point of `L(V,u) ≅ H^{m−1}` seen from `H^m`: the null direction
/// `E(p, 1)` normalized, i.e. the boundary transition of the adapted frame.
fn embed_ideal<T: Real>(umb: &crate::descriptor::UmbilicData<T>, p: &IdealPoint<T>) -> Result<IdealPoint<T>> {
    let frame = umb
        .adapted_frame()
        .ok_or_else(|| Error::Internal("ideal embedding needs a hyperbolic placement".into()))?;
    let mut a = p.coords().to_vec();
    a.push(T::zero());
    Ok(boundary_transition(&frame, &IdealPoint::new(a)?)?.0)
}

fn merge_points<T: Real>(points: Vec<LorentzVector<T>>, tol: T) -> Vec<LorentzVector<T>> {
    let mut out: Vec<LorentzVector<T>> = Vec::new();
    for p in points {
        if !out.iter().any(|q| linalg::distance(q.coords(), p.coords()) <= tol) {
            out.push(p);
        }
    }
    out
}

/// Forward limit evaluated on sample points of the submanifold.
pub fn forward_limit<T: Real>(d: &IsoDescriptor<T>, samples: &[LorentzVector<T>]) -> Result<ForwardLimit<T>> {
    let skeleton = classify_limits(d);
    match skeleton.forward {
        ForwardKind::Stationary => Ok(ForwardLimit::Stationary),
        ForwardKind::FocalCollapse => {
            let time = skeleton
                .collapse_time
                .finite()
                .ok_or_else(|| Error::Internal("focal collapse without a finite time".into()))?;
            let points = samples
                .iter()
                .map(|x| Ok(hyperbolic_flow_at_collapse(d, x)?.into_vector()))
                .collect::<Result<Vec<_>>>()?;
            Ok(ForwardLimit::FocalCollapse {
                time,
                samples: merge_points(points, lit(1e-9)),
            })
        }
        ForwardKind::TotallyGeodesic => {
            let points = samples
                .iter()
                .map(|x| match forward_limit_point(d, x)? {
                    ForwardPoint::Geodesic(h) => Ok(h),
                    other => Err(Error::Internal(format!("unexpected forward point {other:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ForwardLimit::TotallyGeodesic { samples: points })
        }
        ForwardKind::IdealPoint => {
            let x = samples.first().ok_or(Error::InsufficientSamples { needed: 1, found: 0 })?;
            match forward_limit_point(d, x)? {
                ForwardPoint::Ideal(p) => Ok(ForwardLimit::IdealPoint(p)),
                other => Err(Error::Internal(format!("unexpected forward point {other:?}"))),
            }
        }
    }
}

/// Backward limit `lim_{t→−∞} ψ(f(x,t))` of the trajectory through `x`.
pub fn backward_limit_point<T: Real>(d: &IsoDescriptor<T>, x: &LorentzVector<T>) -> Result<IdealPoint<T>> {
    d.ensure_contains(x)?;
    if d.classify_shape().totally_geodesic {
        return Err(Error::StationaryNoLimit);
    }
    let window = existence_window(d);
    match d {
        IsoDescriptor::Ambient { .. } => Err(Error::StationaryNoLimit),
        IsoDescriptor::FullProduct { l, r, leaf } => {
            let q_star = window
                .t_alpha
                .ok_or_else(|| Error::Internal("missing backward leaf time".into()))?;
            let (xv, y) = split_product(x, *l);
            let f2 = leaf.spherical_flow(&y, q_star)?;
            let s = (*r / (*r - T::one())).sqrt();
            let z: Vec<T> = f2.iter().map(|&v| v * s).collect();
            Ok(product_boundary_map(*l, *r, &xv, &z)?.0)
        }
        IsoDescriptor::Umbilic { umb, inner } => {
            if umb.is_totally_geodesic() {
                let UmbilicInner::Hyperbolic(d_in) = inner else {
                    return Err(Error::Internal("totally geodesic umbilic with a non-hyperbolic leaf".into()));
                };
                let z = LorentzVector::new(umb.to_model(x))?;
                return embed_ideal(umb, &backward_limit_point(d_in, &z)?);
            }
            let t_alpha = window
                .t_alpha
                .ok_or_else(|| Error::Internal("missing backward intrinsic time".into()))?;
            let y = intrinsic_umbilic_flow(d, x, t_alpha)?;
            umbilic_boundary_map(umb, &y)
        }
    }
}

/// Frame recorded with a backward limit: the adapted frame of the outermost
/// totally geodesic reduction, if any.
fn backward_frame<T: Real>(d: &IsoDescriptor<T>) -> OrthonormalFrame<T> {
    match d {
        IsoDescriptor::Umbilic { umb, .. } if umb.is_totally_geodesic() => umb
            .adapted_frame()
            .unwrap_or_else(|| OrthonormalFrame::standard(d.m())),
        _ => OrthonormalFrame::standard(d.m()),
    }
}

/// Backward limit evaluated on sample points.
pub fn backward_limit<T: Real>(d: &IsoDescriptor<T>, samples: &[LorentzVector<T>]) -> Result<BackwardLimit<T>> {
    if classify_limits(d).backward == BackwardKind::Stationary {
        return Err(Error::StationaryNoLimit);
    }
    let points = samples
        .iter()
        .map(|x| backward_limit_point(d, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(BackwardLimit::IdealSubmanifold {
        samples: points,
        dim: d.n(),
        frame: backward_frame(d),
    })
}

/// Both limits; totally geodesic descriptors report `Stationary` twice.
pub fn limit_report<T: Real>(d: &IsoDescriptor<T>, samples: &[LorentzVector<T>]) -> Result<LimitReport<T>> {
    let forward = forward_limit(d, samples)?;
    let backward = match backward_limit(d, samples) {
        Err(Error::StationaryNoLimit) => BackwardLimit::Stationary,
        other => other?,
    };
    Ok(LimitReport { forward, backward })
}

/// Chart `u ↦ h̃(X(u))` of a totally geodesic forward limit, as a
/// submanifold of `H^m(−1)`.
pub fn forward_limit_chart<T: Real>(d: &IsoDescriptor<T>) -> ImmersionEvaluator<'_, T> {
    ImmersionEvaluator::new(d.n(), AmbientKind::Hyperboloid { r: T::one() }, move |u: &[T]| {
        match forward_limit_point(d, &d.immerse(u)?)? {
            ForwardPoint::Geodesic(h) | ForwardPoint::Fixed(h) | ForwardPoint::Focal(h) => Ok(h.into_coords()),
            ForwardPoint::Ideal(p) => Ok(p.into_coords()),
        }
    })
}

/// Chart `u ↦ lim_{t→−∞} ψ(f(X(u),t))` of the backward limit, as a
/// submanifold of the unit sphere.
pub fn backward_limit_chart<T: Real>(d: &IsoDescriptor<T>) -> ImmersionEvaluator<'_, T> {
    ImmersionEvaluator::new(d.n(), AmbientKind::Sphere, move |u: &[T]| {
        Ok(backward_limit_point(d, &d.immerse(u)?)?.into_coords())
    })
}

/// Normal curvature of the backward limit at the given chart samples, in the
/// round metric of the ideal sphere. Zero when the codimension is below two.
pub fn verify_flat_normal_bundle<T: Real>(d: &IsoDescriptor<T>, chart_samples: &[Vec<T>], h: T) -> Result<T> {
    if d.classify_shape().totally_geodesic {
        return Err(Error::StationaryNoLimit);
    }
    // the ideal sphere of H^m is S^{m−1}
    if d.m() < d.n() + 3 {
        if chart_samples.is_empty() {
            return Err(Error::InsufficientSamples { needed: 1, found: 0 });
        }
        return Ok(T::zero());
    }
    flat_normal_residual(&backward_limit_chart(d), chart_samples, h)
}

/// Number of singular values of `rows` above `rel_tol` times the largest.
pub fn pca_rank<T: Real>(rows: &[Vec<T>], rel_tol: T) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let dim = first.len();
    let mut cov: Matrix<T> = linalg::zeros(dim, dim);
    for r in rows {
        for i in 0..dim {
            for j in 0..dim {
                cov[i][j] = cov[i][j] + r[i] * r[j];
            }
        }
    }
    let (values, _) = linalg::symmetric_eigen(&cov);
    let top = values.iter().fold(T::zero(), |m, &v| m.max(v));
    if top <= T::zero() {
        return 0;
    }
    let cut = rel_tol * rel_tol * top;
    values.iter().filter(|&&v| v > cut).count()
}

/// Local dimension of the image of a chart map at `u`.
///
/// The neighborhood cloud consists of `4·n` symmetric chart perturbations of
/// size `delta` in random directions; the differences
/// `(g(u+δv) − g(u−δv))/(2δ)` cancel the curvature term to second order, and
/// their principal components above `1e−6` of the largest are counted.
pub fn estimate_dimension<T: Real>(
    map: &dyn Fn(&[T]) -> Result<Vec<T>>,
    u: &[T],
    delta: T,
    seed: u64,
) -> Result<usize> {
    let n = u.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(4 * n);
    for _ in 0..(4 * n).max(1) {
        let v: Vec<T> = (0..n).map(|_| lit(rng.gen_range(-1.0..1.0))).collect();
        let p: Vec<T> = u.iter().zip(&v).map(|(&a, &b)| a + delta * b).collect();
        let m: Vec<T> = u.iter().zip(&v).map(|(&a, &b)| a - delta * b).collect();
        let (gp, gm) = (map(&p)?, map(&m)?);
        rows.push(gp.iter().zip(&gm).map(|(&a, &b)| (a - b) / (lit::<T>(2.0) * delta)).collect());
    }
    Ok(pca_rank(&rows, lit(1e-6)))
}

/// Symmetric Hausdorff distance between two finite point sets.
pub fn hausdorff<T: Real>(a: &[Vec<T>], b: &[Vec<T>]) -> T {
    let one_way = |p: &[Vec<T>], q: &[Vec<T>]| {
        p.iter()
            .map(|x| {
                q.iter()
                    .map(|y| linalg::distance(x, y))
                    .fold(T::infinity(), T::min)
            })
            .fold(T::zero(), T::max)
    };
    one_way(a, b).max(one_way(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn v(c: &[f64]) -> LorentzVector<f64> {
        LorentzVector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn catalog_classification() {
        let k = |d: IsoDescriptor<f64>| {
            let s = classify_limits(&d);
            (s.forward, s.backward)
        };
        use BackwardKind as B;
        use ForwardKind as F;
        assert_eq!(k(catalog::ambient_h3()), (F::Stationary, B::Stationary));
        assert_eq!(k(catalog::circle_h2()), (F::FocalCollapse, B::IdealSubmanifold));
        assert_eq!(k(catalog::horocycle_h2()), (F::IdealPoint, B::IdealSubmanifold));
        assert_eq!(k(catalog::equidistant_h2()), (F::TotallyGeodesic, B::IdealSubmanifold));
        assert_eq!(k(catalog::geodesic_sphere_h3()), (F::FocalCollapse, B::IdealSubmanifold));
        assert_eq!(k(catalog::tube_h3()), (F::FocalCollapse, B::IdealSubmanifold));
        assert_eq!(k(catalog::circle_in_h4_nested()), (F::FocalCollapse, B::IdealSubmanifold));
        let circle = classify_limits(&catalog::circle_h2::<f64>());
        assert!((circle.collapse_time.finite().unwrap() - 2f64.ln()).abs() < 1e-15);
        assert_eq!(circle.backward_dim, 1);
    }

    #[test]
    fn circle_collapses_to_the_center() {
        let d = catalog::circle_h2::<f64>();
        let samples: Vec<_> = (0..5).map(|k| d.immerse(&[k as f64]).unwrap()).collect();
        match forward_limit(&d, &samples).unwrap() {
            ForwardLimit::FocalCollapse { time, samples } => {
                assert!((time - 2f64.ln()).abs() < 1e-15);
                assert_eq!(samples.len(), 1);
                assert!(linalg::distance(samples[0].coords(), &[0.0, 0.0, 1.0]) < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn equidistant_curve_straightens_to_a_geodesic() {
        let d = catalog::equidistant_h2::<f64>();
        let x = v(&[1.0, 0.0, 2f64.sqrt()]);
        match forward_limit_point(&d, &x).unwrap() {
            ForwardPoint::Geodesic(h) => assert!(linalg::distance(h.coords(), &[0.0, 0.0, 1.0]) < 1e-12),
            other => panic!("{other:?}"),
        }
        let y = d.immerse(&[0.7]).unwrap();
        let h = forward_limit_point(&d, &y).unwrap();
        let h = h.interior().unwrap();
        assert!(h.coords()[0].abs() < 1e-12);
        assert!((h.square() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn horocycle_runs_to_its_center() {
        let d = catalog::horocycle_h2::<f64>();
        let x = d.immerse(&[0.3]).unwrap();
        match forward_limit(&d, &[x]).unwrap() {
            ForwardLimit::IdealPoint(p) => assert!(linalg::distance(p.coords(), &[-1.0, 0.0]) < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn circle_backward_limit_is_the_whole_boundary() {
        let d = catalog::circle_h2::<f64>();
        for k in 0..6 {
            let x = d.immerse(&[k as f64]).unwrap();
            let p = backward_limit_point(&d, &x).unwrap();
            let s3 = 3f64.sqrt();
            let expected = [x.coords()[0] / s3, x.coords()[1] / s3];
            assert!(linalg::distance(p.coords(), &expected) < 1e-12);
        }
        let w = existence_window(&d);
        assert!((w.t_alpha.unwrap() + 1.5 * (4f64 / 3.0).ln()).abs() < 1e-14);
    }

    #[test]
    fn tube_backward_limit_uses_the_leaf_time() {
        let d = catalog::tube_h3::<f64>();
        let w = existence_window(&d);
        assert!((w.t_alpha.unwrap() + 0.5 * 1.5f64.ln()).abs() < 1e-14);
        // the unit circle is minimal in its sphere, so f₂ = id
        let x = d.immerse(&[0.4, 1.1]).unwrap();
        let c = x.coords();
        let p = backward_limit_point(&d, &x).unwrap();
        let s = 2f64.sqrt();
        let expected = [c[0] / c[3], s * c[1] / c[3], s * c[2] / c[3]];
        assert!(linalg::distance(p.coords(), &expected) < 1e-12);
    }

    #[test]
    fn totally_geodesic_input_has_no_backward_limit() {
        let d = catalog::ambient_h3::<f64>();
        let x = d.immerse(&[0.1, 0.2, 0.3]).unwrap();
        assert!(matches!(backward_limit_point(&d, &x), Err(Error::StationaryNoLimit)));
        let report = limit_report(&d, &[x]).unwrap();
        assert_eq!(report.forward, ForwardLimit::Stationary);
        assert_eq!(report.backward, BackwardLimit::Stationary);
    }

    #[test]
    fn nested_circle_limit_is_flat_and_one_dimensional() {
        let d = catalog::circle_in_h4_nested::<f64>();
        let samples: Vec<Vec<f64>> = (0..4).map(|k| vec![0.4 + k as f64]).collect();
        assert!(verify_flat_normal_bundle(&d, &samples, 1e-3).unwrap() < 1e-4);
        let chart = backward_limit_chart(&d);
        let dim = estimate_dimension(&|u: &[f64]| chart.eval(u), &[0.9], 1e-5, 7).unwrap();
        assert_eq!(dim, 1);
        assert_eq!(verify_flat_normal_bundle(&catalog::tube_h3::<f64>(), &[vec![0.0, 0.0]], 1e-3).unwrap(), 0.0);
    }

    #[test]
    fn rank_counts_independent_directions() {
        let rows = vec![vec![1.0, 0.0, 0.0], vec![0.0, 2.0, 0.0], vec![1.0, 1.0, 1e-9]];
        assert_eq!(pca_rank(&rows, 1e-6), 2);
        assert_eq!(pca_rank::<f64>(&[], 1e-6), 0);
    }

    #[test]
    fn hausdorff_is_symmetric() {
        let a = vec![vec![0.0, 0.0], vec![1.0, 0.0]];
        let b = vec![vec![0.0, 0.5]];
        assert_eq!(hausdorff(&a, &b), hausdorff(&b, &a));
        assert!((hausdorff(&a, &b) - 1.25f64.sqrt()).abs() < 1e-15);
    }
}
