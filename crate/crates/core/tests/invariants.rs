use hyperflow::ball::{
    ball_lift, ball_projection, boundary_transition, product_boundary_map, umbilic_boundary_map, BallPoint,
};
use hyperflow::descriptor::{IsoDescriptor, UmbilicInner};
use hyperflow::lorentz::{frame_coordinates, orthonormalize_frame, HyperboloidPoint, LorentzVector, OrthonormalFrame};
use hyperflow::{catalog, flow, IdealPoint, Vector};
use proptest::prelude::*;

/// Orthonormalizes a perturbed standard basis, then boosts it along `e_1`.
fn random_frame(m: usize, rapidity: f64, noise: &[f64]) -> OrthonormalFrame<f64> {
    let perturbed: Vec<Vector> = (0..=m)
        .map(|i| {
            let v = (0..=m).map(|j| f64::from(u8::from(i == j)) + noise[i * (m + 1) + j]).collect();
            LorentzVector::new(v).unwrap()
        })
        .collect();
    let base = orthonormalize_frame(&perturbed).unwrap();
    let (c, s) = (rapidity.cosh(), rapidity.sinh());
    let boosted = base
        .vectors()
        .iter()
        .map(|e| {
            let mut v = e.coords().to_vec();
            let (x, t) = (v[0], v[m]);
            v[0] = c * x + s * t;
            v[m] = s * x + c * t;
            LorentzVector::new(v).unwrap()
        })
        .collect();
    OrthonormalFrame::from_vectors(boosted).unwrap()
}

prop_compose! {
    fn frame(m: usize)(
        rapidity in -1.5f64..1.5,
        noise in prop::collection::vec(-0.2f64..0.2, (m + 1) * (m + 1)),
    ) -> OrthonormalFrame<f64> {
        random_frame(m, rapidity, &noise)
    }
}

fn sized_frame() -> impl Strategy<Value = OrthonormalFrame<f64>> {
    (2usize..=4).prop_flat_map(frame)
}

fn unit(v: &[f64]) -> Vec<f64> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / n).collect()
}

fn hyperboloid_point(spatial: &[f64], r: f64) -> Vector {
    let mut c = spatial.to_vec();
    c.push((r + spatial.iter().map(|x| x * x).sum::<f64>()).sqrt());
    LorentzVector::new(c).unwrap()
}

fn sphere_direction(m: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, m).prop_filter_map("zero vector", |v| {
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        (n > 0.1).then(|| unit(&v))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn orthonormalized_perturbations_are_admissible(f in sized_frame()) {
        prop_assert!(f.validate().is_ok());
    }

    #[test]
    fn reorthonormalizing_a_perturbed_frame_is_admissible(
        (f, noise) in sized_frame().prop_flat_map(|f| {
            let k = (f.m() + 1) * (f.m() + 1);
            (Just(f), prop::collection::vec(-0.05f64..0.05, k))
        })
    ) {
        let k = f.m() + 1;
        let perturbed: Vec<Vector> = f
            .vectors()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let v = e.coords().iter().zip(&noise[i * k..(i + 1) * k]).map(|(a, b)| a + b).collect();
                LorentzVector::new(v).unwrap()
            })
            .collect();
        let g = orthonormalize_frame(&perturbed).unwrap();
        prop_assert!(g.validate().is_ok());
    }

    #[test]
    fn frame_coordinates_invert_combination(
        (f, a) in sized_frame().prop_flat_map(|f| {
            let m = f.m();
            (Just(f), prop::collection::vec(-3.0f64..3.0, m + 1))
        })
    ) {
        let x = f.combine(&a).unwrap();
        let back = frame_coordinates(&f, &x).unwrap();
        for (u, v) in a.iter().zip(&back) {
            prop_assert!((u - v).abs() < 1e-12 * (1.0 + x.euclidean_norm()).powi(2));
        }
    }

    #[test]
    fn inner_product_is_frame_invariant(
        (f, x, y) in sized_frame().prop_flat_map(|f| {
            let m = f.m();
            (
                Just(f),
                prop::collection::vec(-2.0f64..2.0, m + 1),
                prop::collection::vec(-2.0f64..2.0, m + 1),
            )
        })
    ) {
        let x = LorentzVector::new(x).unwrap();
        let y = LorentzVector::new(y).unwrap();
        let a = frame_coordinates(&f, &x).unwrap();
        let b = frame_coordinates(&f, &y).unwrap();
        let m = f.m();
        let signature: f64 = (0..m).map(|i| a[i] * b[i]).sum::<f64>() - a[m] * b[m];
        prop_assert!((signature - x.dot(&y)).abs() < 1e-10);
    }

    #[test]
    fn ball_projection_round_trips(
        (f, p, r) in sized_frame().prop_flat_map(|f| {
            let m = f.m();
            (Just(f), prop::collection::vec(-3.0f64..3.0, m), 0.25f64..4.0)
        })
    ) {
        let x = hyperboloid_point(&p, r);
        let y = ball_projection(&f, r, &x).unwrap();
        let back = ball_lift(&f, r, &y).unwrap();
        let err = x.coords().iter().zip(back.vector().coords()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        prop_assert!(err < 1e-10 * x.euclidean_norm().max(1.0));
        let again = ball_projection(&f, r, back.vector()).unwrap();
        let _ = BallPoint::new(again.coords().to_vec()).unwrap();
    }

    #[test]
    fn boundary_transition_inverts(
        (f, p) in sized_frame().prop_flat_map(|f| {
            let m = f.m();
            (Just(f), sphere_direction(m))
        })
    ) {
        let p = IdealPoint::new(p).unwrap();
        let (q, _) = boundary_transition(&f, &p).unwrap();
        let (back, _) = boundary_transition(&f.inverse(), &q).unwrap();
        for (a, b) in p.coords().iter().zip(back.coords()) {
            prop_assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn boundary_transition_is_conformal(
        (f, p, w) in sized_frame().prop_flat_map(|f| {
            let m = f.m();
            (Just(f), sphere_direction(m), prop::collection::vec(-1.0f64..1.0, m))
        })
    ) {
        // tangent direction at p
        let dot: f64 = p.iter().zip(&w).map(|(a, b)| a * b).sum();
        let w: Vec<f64> = w.iter().zip(&p).map(|(a, b)| a - dot * b).collect();
        let wn = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assume!(wn > 1e-3);
        let w: Vec<f64> = w.iter().map(|x| x / wn).collect();
        let h = 1e-5;
        let curve = |s: f64| {
            let q: Vec<f64> = p.iter().zip(&w).map(|(a, b)| a * s.cos() + b * s.sin()).collect();
            boundary_transition(&f, &IdealPoint::new(q).unwrap()).unwrap().0
        };
        let (plus, minus) = (curve(h), curve(-h));
        let d2: f64 = plus.coords().iter().zip(minus.coords()).map(|(a, b)| ((a - b) / (2.0 * h)).powi(2)).sum();
        let (_, factor) = boundary_transition(&f, &IdealPoint::new(p.clone()).unwrap()).unwrap();
        prop_assert!((d2 - factor).abs() < 1e-6 * factor.max(1.0));
    }

    #[test]
    fn umbilic_boundary_map_lands_on_sphere(u in prop::collection::vec(-3.0f64..3.0, 3)) {
        for name in ["circle_h2", "horocycle_h2", "equidistant_h2", "geodesic_sphere_h3"] {
            let d = catalog::by_name::<f64>(name).unwrap();
            let IsoDescriptor::Umbilic { umb, .. } = &d else { unreachable!() };
            let x = d.immerse(&u[..d.n()]).unwrap();
            let p = umbilic_boundary_map(umb, &x).unwrap();
            let n = p.coords().iter().map(|v| v * v).sum::<f64>().sqrt();
            prop_assert!((n - 1.0).abs() < 1e-10, "{name}: norm {n}");
        }
    }

    #[test]
    fn product_boundary_map_lands_on_sphere(
        l in 1usize..3,
        r in 1.5f64..6.0,
        xs in prop::collection::vec(-4.0f64..4.0, 2),
        z in sphere_direction(3),
    ) {
        let x = hyperboloid_point(&xs[..l], r);
        let z: Vec<f64> = z.iter().map(|v| v * r.sqrt()).collect();
        let (p, factor) = product_boundary_map(l, r, x.coords(), &z).unwrap();
        let n = p.coords().iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assert!((n - 1.0).abs() < 1e-10);
        prop_assert!((factor * x.time().powi(2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lorentz_flow_obeys_norm_law(
        idx in 0usize..catalog::NAMES.len(),
        u in prop::collection::vec(-2.0f64..2.0, 4),
        s in 0.0f64..1.0,
    ) {
        let (name, d) = catalog::entries::<f64>().swap_remove(idx);
        let w = flow::existence_window(&d);
        let lo = w.lorentz_lower.finite().unwrap_or(-1.0);
        let hi = w.t_dprime.finite().unwrap_or(1.0);
        let t = lo + s * (hi - lo) * 0.99;
        let x = d.immerse(&u[..d.n()]).unwrap();
        let f = flow::lorentz_flow(&d, &x, t).unwrap();
        let expected = x.square() - 2.0 * d.n() as f64 * t;
        prop_assert!((f.square() - expected).abs() < 1e-9 * expected.abs().max(1.0), "{name} t={t}");
    }

    #[test]
    fn mean_curvature_is_tangent_to_hyperboloid(
        idx in 0usize..catalog::NAMES.len(),
        u in prop::collection::vec(-2.0f64..2.0, 4),
    ) {
        let (name, d) = catalog::entries::<f64>().swap_remove(idx);
        let x = d.immerse(&u[..d.n()]).unwrap();
        let h = d.mean_curvature(&x).unwrap().hyperbolic;
        prop_assert!(h.dot(&x).abs() < 1e-10 * (1.0 + h.euclidean_norm() * x.euclidean_norm()), "{name}");
    }

    #[test]
    fn hyperbolic_flow_stays_on_hyperboloid(
        idx in 0usize..catalog::NAMES.len(),
        u in prop::collection::vec(-2.0f64..2.0, 4),
        s in -3.0f64..1.0,
    ) {
        let (name, d) = catalog::entries::<f64>().swap_remove(idx);
        let t = match flow::existence_window(&d).t.finite() {
            Some(end) => s.min(0.99) * end.abs(),
            None => s,
        };
        let x = d.immerse(&u[..d.n()]).unwrap();
        let f = flow::hyperbolic_flow(&d, &x, t).unwrap();
        prop_assert!(HyperboloidPoint::new(f.vector().clone(), d.r()).is_ok(), "{name} t={t}");
    }
}

#[test]
fn umbilic_norm_law_holds_for_nested_wrappers() {
    let d = catalog::circle_in_h4_nested::<f64>();
    let IsoDescriptor::Umbilic { inner: UmbilicInner::Hyperbolic(_), .. } = &d else {
        panic!("expected a hyperbolic wrapper");
    };
    let x = d.immerse(&[0.7]).unwrap();
    for t in [-0.2, 0.0, 0.3] {
        let f = flow::lorentz_flow(&d, &x, t).unwrap();
        assert!((f.square() + 1.0 + 2.0 * t).abs() < 1e-12);
    }
}
