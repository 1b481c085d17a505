//! Named example descriptors.

use crate::descriptor::{
    derive_umbilic, EuclideanIso, IsoDescriptor, ProductOfSpheres, SphereFactor, UmbilicInner,
};
use crate::lorentz::LorentzVector;
use crate::scalar::{lit, Real};

/// Names of every catalog entry, in a fixed order.
pub const NAMES: [&str; 8] = [
    "ambient_h3",
    "circle_h2",
    "horocycle_h2",
    "equidistant_h2",
    "geodesic_sphere_h3",
    "tube_h3",
    "clifford_tube_h5",
    "circle_in_h4_nested",
];

fn vector<T: Real>(c: &[f64]) -> LorentzVector<T> {
    LorentzVector::new(c.iter().map(|&v| lit(v)).collect()).expect("catalog vector")
}

fn spheres<T: Real>(f: &[(usize, f64)]) -> ProductOfSpheres<T> {
    ProductOfSpheres::spheres(
        f.iter()
            .map(|&(p, s)| SphereFactor::new(p, lit(s)).expect("catalog factor"))
            .collect(),
    )
    .expect("catalog leaf")
}

pub fn ambient_h3<T: Real>() -> IsoDescriptor<T> {
    IsoDescriptor::ambient(3, T::one()).expect("catalog entry")
}

/// The circle `{x₃ = 2}` in `H²`.
pub fn circle_h2<T: Real>() -> IsoDescriptor<T> {
    let umb = derive_umbilic(vector(&[0.0, 0.0, -1.0]), lit(2.0)).expect("catalog umbilic");
    IsoDescriptor::umbilic(umb, UmbilicInner::Spherical(spheres(&[(1, 3.0)]))).expect("catalog entry")
}

/// The horocycle `{x₁ + x₃ = 1}` in `H²`.
pub fn horocycle_h2<T: Real>() -> IsoDescriptor<T> {
    let umb = derive_umbilic(vector(&[1.0, 0.0, -1.0]), T::one()).expect("catalog umbilic");
    let flat = EuclideanIso::new(1, None, vec![T::zero()]).expect("catalog leaf");
    IsoDescriptor::umbilic(umb, UmbilicInner::Euclidean(flat)).expect("catalog entry")
}

/// The equidistant curve `{x₁ = 1}` in `H²`.
pub fn equidistant_h2<T: Real>() -> IsoDescriptor<T> {
    let umb = derive_umbilic(vector(&[1.0, 0.0, 0.0]), T::one()).expect("catalog umbilic");
    let inner = IsoDescriptor::ambient(1, T::one()).expect("catalog inner");
    IsoDescriptor::umbilic(umb, UmbilicInner::Hyperbolic(Box::new(inner))).expect("catalog entry")
}

/// The geodesic sphere `{x₄ = 2}` in `H³`.
pub fn geodesic_sphere_h3<T: Real>() -> IsoDescriptor<T> {
    let umb = derive_umbilic(vector(&[0.0, 0.0, 0.0, -1.0]), lit(2.0)).expect("catalog umbilic");
    IsoDescriptor::umbilic(umb, UmbilicInner::Spherical(spheres(&[(2, 3.0)]))).expect("catalog entry")
}

/// `H¹(−2) × S¹(1)` in `H³`.
pub fn tube_h3<T: Real>() -> IsoDescriptor<T> {
    IsoDescriptor::full_product(1, lit(2.0), spheres(&[(1, 1.0)])).expect("catalog entry")
}

/// `H¹(−5) × S¹(3) × S¹(1)` in `H⁵`.
pub fn clifford_tube_h5<T: Real>() -> IsoDescriptor<T> {
    IsoDescriptor::full_product(1, lit(5.0), spheres(&[(1, 3.0), (1, 1.0)])).expect("catalog entry")
}

/// `circle_h2` pushed into `H⁴` through two totally geodesic hypersurfaces.
pub fn circle_in_h4_nested<T: Real>() -> IsoDescriptor<T> {
    let h3 = derive_umbilic(vector(&[0.0, 0.0, 1.0, 0.0]), T::zero()).expect("catalog umbilic");
    let mid = IsoDescriptor::umbilic(h3, UmbilicInner::Hyperbolic(Box::new(circle_h2())))
        .expect("catalog inner");
    let h4 = derive_umbilic(vector(&[0.0, 0.0, 0.0, 1.0, 0.0]), T::zero()).expect("catalog umbilic");
    IsoDescriptor::umbilic(h4, UmbilicInner::Hyperbolic(Box::new(mid))).expect("catalog entry")
}

/// Looks up an entry by its exact name.
pub fn by_name<T: Real>(name: &str) -> Option<IsoDescriptor<T>> {
    Some(match name {
        "ambient_h3" => ambient_h3(),
        "circle_h2" => circle_h2(),
        "horocycle_h2" => horocycle_h2(),
        "equidistant_h2" => equidistant_h2(),
        "geodesic_sphere_h3" => geodesic_sphere_h3(),
        "tube_h3" => tube_h3(),
        "clifford_tube_h5" => clifford_tube_h5(),
        "circle_in_h4_nested" => circle_in_h4_nested(),
        _ => return None,
    })
}

/// Every entry paired with its name.
pub fn entries<T: Real>() -> Vec<(&'static str, IsoDescriptor<T>)> {
    NAMES
        .iter()
        .map(|&n| (n, by_name(n).expect("catalog name")))
        .collect()
}
