//! Explicit Euler integration of mean curvature flow on a chart grid.

use rayon::prelude::*;

use super::fd::AmbientKind;
use crate::descriptor::{AxisKind, IsoDescriptor};
use crate::error::{Error, Result};
use crate::flow::{existence_window, hyperbolic_flow};
use crate::linalg;
use crate::scalar::{lit, Real};

/// One axis of a chart grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis<T> {
    pub start: T,
    pub end: T,
    pub nodes: usize,
    /// Periodic axes wrap; `end` is then identified with `start`.
    pub periodic: bool,
}

impl<T: Real> GridAxis<T> {
    pub fn step(&self) -> T {
        let cells = if self.periodic { self.nodes } else { self.nodes - 1 };
        (self.end - self.start) / lit(cells as f64)
    }

    pub fn coordinate(&self, i: usize) -> T {
        self.start + self.step() * lit(i as f64)
    }
}

/// Tensor-product grid of chart points, last axis fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartGrid<T> {
    pub axes: Vec<GridAxis<T>>,
}

impl<T: Real> ChartGrid<T> {
    pub fn new(axes: Vec<GridAxis<T>>) -> Result<Self> {
        for a in &axes {
            let min = if a.periodic { 3 } else { 2 };
            if a.nodes < min || !(a.end > a.start) {
                return Err(Error::InvalidArgument("grid axis needs an interval and enough nodes".into()));
            }
        }
        Ok(Self { axes })
    }

    /// Grid over the descriptor's chart with hyperbolic and flat axes on
    /// `[−half_width, half_width]` at spacing `spacing`, and `angular` nodes on
    /// angular axes.
    pub fn for_descriptor(d: &IsoDescriptor<T>, half_width: T, spacing: T, angular: usize) -> Result<Self> {
        let axes = d
            .axes()
            .into_iter()
            .map(|kind| match kind {
                AxisKind::Hyperbolic | AxisKind::Flat => {
                    let cells = (lit::<T>(2.0) * half_width / spacing).round().to_usize().unwrap_or(1);
                    GridAxis {
                        start: -half_width,
                        end: half_width,
                        nodes: cells + 1,
                        periodic: false,
                    }
                }
                AxisKind::Polar => {
                    let (a, b) = kind.range::<T>();
                    GridAxis {
                        start: a,
                        end: b,
                        nodes: angular / 2 + 1,
                        periodic: false,
                    }
                }
                AxisKind::Azimuth => GridAxis {
                    start: T::zero(),
                    end: T::TAU(),
                    nodes: angular,
                    periodic: true,
                },
            })
            .collect();
        Self::new(axes)
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.nodes).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn unflatten(&self, mut k: usize) -> Vec<usize> {
        let mut idx = vec![0; self.axes.len()];
        for (i, a) in self.axes.iter().enumerate().rev() {
            idx[i] = k % a.nodes;
            k /= a.nodes;
        }
        idx
    }

    fn flatten(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.axes).fold(0, |k, (&i, a)| k * a.nodes + i)
    }

    /// Chart coordinates of the `k`-th node.
    pub fn point(&self, k: usize) -> Vec<T> {
        self.unflatten(k)
            .iter()
            .zip(&self.axes)
            .map(|(&i, a)| a.coordinate(i))
            .collect()
    }

    /// Adds `w` times the value at a possibly out-of-range multi-index to
    /// `out`, as weights on actual nodes. Periodic axes wrap; others are
    /// extended linearly from the two nearest nodes.
    fn resolve(&self, idx: &mut [isize], w: T, out: &mut Vec<(usize, T)>) {
        for (i, a) in self.axes.iter().enumerate() {
            let n = a.nodes as isize;
            let j = idx[i];
            if (0..n).contains(&j) {
                continue;
            }
            if a.periodic {
                idx[i] = j.rem_euclid(n);
                self.resolve(idx, w, out);
            } else {
                let (edge, inner) = if j < 0 { (0, 1) } else { (n - 1, n - 2) };
                let depth: T = lit((if j < 0 { -j } else { j - (n - 1) }) as f64);
                idx[i] = edge;
                self.resolve(idx, w * (T::one() + depth), out);
                idx[i] = inner;
                self.resolve(idx, -w * depth, out);
            }
            idx[i] = j;
            return;
        }
        let u: Vec<usize> = idx.iter().map(|&i| i as usize).collect();
        out.push((self.flatten(&u), w));
    }

    fn stencil(&self, base: &[isize], terms: &[(Vec<(usize, isize)>, T)]) -> Vec<(usize, T)> {
        let mut out = Vec::new();
        for (moves, w) in terms {
            let mut idx = base.to_vec();
            for &(i, d) in moves {
                idx[i] += d;
            }
            self.resolve(&mut idx, *w, &mut out);
        }
        out.sort_by_key(|&(k, _)| k);
        let mut merged: Vec<(usize, T)> = Vec::with_capacity(out.len());
        for (k, w) in out {
            match merged.last_mut() {
                Some((last, acc)) if *last == k => *acc = *acc + w,
                _ => merged.push((k, w)),
            }
        }
        merged
    }

    /// Fourth-order difference stencils at node `k`: `n` first derivatives
    /// followed by the `n×n` second derivatives, row by row.
    fn stencils(&self, k: usize) -> Vec<Vec<(usize, T)>> {
        let n = self.axes.len();
        let base: Vec<isize> = self.unflatten(k).iter().map(|&i| i as isize).collect();
        let twelve = lit::<T>(12.0);
        let d1 = [(-2isize, 1.0), (-1, -8.0), (1, 8.0), (2, -1.0)];
        let d2 = [(-2isize, -1.0), (-1, 16.0), (0, -30.0), (1, 16.0), (2, -1.0)];
        let mut out = Vec::with_capacity(n + n * n);
        for i in 0..n {
            let h = self.axes[i].step();
            let terms: Vec<_> = d1.iter().map(|&(o, c)| (vec![(i, o)], lit::<T>(c) / (twelve * h))).collect();
            out.push(self.stencil(&base, &terms));
        }
        for i in 0..n {
            for j in 0..n {
                let (hi, hj) = (self.axes[i].step(), self.axes[j].step());
                let terms: Vec<_> = if i == j {
                    d2.iter()
                        .map(|&(o, c)| (vec![(i, o)], lit::<T>(c) / (twelve * hi * hi)))
                        .collect()
                } else {
                    d1.iter()
                        .flat_map(|&(a, ca)| {
                            d1.iter().map(move |&(b, cb)| {
                                (vec![(i, a), (j, b)], lit::<T>(ca * cb) / (twelve * twelve * hi * hj))
                            })
                        })
                        .collect()
                };
                out.push(self.stencil(&base, &terms));
            }
        }
        out
    }
}

#[cfg(test)]
fn apply<T: Real>(stencil: &[(usize, T)], values: &[T], dim: usize) -> Vec<T> {
    let mut out = vec![T::zero(); dim];
    apply_into(stencil, values, &mut out);
    out
}

fn apply_into<T: Real>(stencil: &[(usize, T)], values: &[T], out: &mut [T]) {
    let dim = out.len();
    out.iter_mut().for_each(|o| *o = T::zero());
    for &(k, w) in stencil {
        for (o, &v) in out.iter_mut().zip(&values[k * dim..(k + 1) * dim]) {
            *o = *o + w * v;
        }
    }
}

/// Per-node work buffers, reused across nodes to keep the inner loop free of
/// allocations.
struct Scratch<T> {
    first: Vec<T>,
    second: Vec<T>,
    metric: Vec<T>,
    inverse: Vec<T>,
    w: Vec<T>,
    dots: Vec<T>,
}

impl<T: Real> Scratch<T> {
    fn new(n: usize, dim: usize) -> Self {
        Self {
            first: vec![T::zero(); n * dim],
            second: vec![T::zero(); n * n * dim],
            metric: vec![T::zero(); n * n],
            inverse: vec![T::zero(); n * n],
            w: vec![T::zero(); dim],
            dots: vec![T::zero(); n],
        }
    }
}

/// Gauss–Jordan inverse of the `n×n` row-major `a` into `inv`; `a` is destroyed.
fn invert_flat<T: Real>(a: &mut [T], inv: &mut [T], n: usize) -> bool {
    for i in 0..n {
        for j in 0..n {
            inv[i * n + j] = if i == j { T::one() } else { T::zero() };
        }
    }
    for c in 0..n {
        let p = (c..n)
            .max_by(|&x, &y| a[x * n + c].abs().partial_cmp(&a[y * n + c].abs()).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(c);
        if a[p * n + c].abs() <= lit(1e-300) {
            return false;
        }
        for j in 0..n {
            a.swap(c * n + j, p * n + j);
            inv.swap(c * n + j, p * n + j);
        }
        let d = a[c * n + c];
        for j in 0..n {
            a[c * n + j] = a[c * n + j] / d;
            inv[c * n + j] = inv[c * n + j] / d;
        }
        for r in (0..n).filter(|&r| r != c) {
            let f = a[r * n + c];
            for j in 0..n {
                a[r * n + j] = a[r * n + j] - f * a[c * n + j];
                inv[r * n + j] = inv[r * n + j] - f * inv[c * n + j];
            }
        }
    }
    true
}

/// One Euler update of node `k` written to `out`. Same projection as the
/// oracle's pointwise mean curvature: radial part first, then the tangential
/// part through the inverse metric of the radially corrected tangents.
fn euler_node<T: Real>(
    ambient: AmbientKind<T>,
    stencil: &[Vec<(usize, T)>],
    values: &[T],
    k: usize,
    dt: T,
    s: &mut Scratch<T>,
    out: &mut [T],
) -> Result<()> {
    let dim = out.len();
    let n = s.dots.len();
    let x = &values[k * dim..(k + 1) * dim];
    let xx = ambient.inner(x, x);
    let radial = ambient.has_radial();
    for i in 0..n {
        let t = &mut s.first[i * dim..(i + 1) * dim];
        apply_into(&stencil[i], values, t);
        if radial {
            let c = ambient.inner(t, x) / xx;
            t.iter_mut().zip(x).for_each(|(a, &b)| *a = *a - c * b);
        }
    }
    for i in 0..n {
        for j in 0..n {
            s.metric[i * n + j] = ambient.inner(&s.first[i * dim..(i + 1) * dim], &s.first[j * dim..(j + 1) * dim]);
            apply_into(&stencil[n + i * n + j], values, &mut s.second[(i * n + j) * dim..(i * n + j + 1) * dim]);
        }
    }
    if !invert_flat(&mut s.metric, &mut s.inverse, n) {
        return Err(Error::ChartDegenerate("induced metric is singular".into()));
    }
    s.w.iter_mut().for_each(|v| *v = T::zero());
    for ij in 0..n * n {
        let c = s.inverse[ij];
        s.w.iter_mut()
            .zip(&s.second[ij * dim..(ij + 1) * dim])
            .for_each(|(o, &v)| *o = *o + c * v);
    }
    if radial {
        let c = ambient.inner(&s.w, x) / xx;
        s.w.iter_mut().zip(x).for_each(|(a, &b)| *a = *a - c * b);
    }
    for i in 0..n {
        s.dots[i] = ambient.inner(&s.w, &s.first[i * dim..(i + 1) * dim]);
    }
    for i in 0..n {
        let c = (0..n).fold(T::zero(), |acc, j| acc + s.inverse[i * n + j] * s.dots[j]);
        for (o, &t) in s.w.iter_mut().zip(&s.first[i * dim..(i + 1) * dim]) {
            *o = *o - c * t;
        }
    }
    for ((o, &a), &h) in out.iter_mut().zip(x).zip(&s.w) {
        *o = a + dt * h;
    }
    if let AmbientKind::Hyperboloid { r } = ambient {
        let q = ambient.inner(out, out);
        if !(q < T::zero()) {
            return Err(Error::Domain("Euler step left the time cone".into()));
        }
        let f = (-r / q).sqrt();
        out.iter_mut().for_each(|v| *v = *v * f);
    }
    Ok(())
}

/// Advances every grid node by `steps` explicit Euler steps `x ← x + dt·H`,
/// with `H` from fourth-order grid differences. Points on a hyperboloid are
/// rescaled back onto it after each step.
pub fn evolve_grid<T: Real>(
    ambient: AmbientKind<T>,
    grid: &ChartGrid<T>,
    initial: Vec<Vec<T>>,
    dt: T,
    steps: usize,
) -> Result<Vec<Vec<T>>> {
    if initial.len() != grid.len() {
        return Err(Error::DimensionMismatch {
            expected: grid.len(),
            found: initial.len(),
        });
    }
    let Some(dim) = initial.first().map(Vec::len) else {
        return Ok(initial);
    };
    let n = grid.axes.len();
    let stencils: Vec<_> = (0..grid.len()).into_par_iter().map(|k| grid.stencils(k)).collect();
    let mut values: Vec<T> = initial.into_iter().flatten().collect();
    let mut next = values.clone();
    for _ in 0..steps {
        next.par_chunks_mut(dim)
            .enumerate()
            .try_for_each_init(
                || Scratch::new(n, dim),
                |scratch, (k, out)| euler_node(ambient, &stencils[k], &values, k, dt, scratch, out),
            )?;
        std::mem::swap(&mut values, &mut next);
    }
    Ok(values.chunks(dim).map(<[T]>::to_vec).collect())
}

/// Settings for [`evolve_and_compare`].
#[derive(Debug, Clone)]
pub struct EulerSettings<T> {
    pub t0: T,
    pub t1: T,
    pub dt: T,
    pub grid: ChartGrid<T>,
    /// Only nodes with every non-periodic coordinate inside the middle
    /// fraction of its axis are compared, away from the extrapolated edges.
    pub compare_fraction: T,
}

/// Integrates the hyperbolic flow numerically from `t0` to `t1` starting at
/// the closed-form positions, and returns the largest distance to the
/// closed form at `t1` over interior nodes.
pub fn evolve_and_compare<T: Real>(d: &IsoDescriptor<T>, s: &EulerSettings<T>) -> Result<T> {
    if !(s.dt > T::zero()) || s.dt > lit(1e-4) {
        return Err(Error::InvalidArgument("Euler step must lie in (0, 1e-4]".into()));
    }
    if !(s.t1 > s.t0) {
        return Err(Error::InvalidArgument("integration interval is empty".into()));
    }
    let end = existence_window(d).t;
    if !end.admits(s.t1) {
        return Err(Error::TimeOutOfRange {
            t: s.t1.to_f64().unwrap_or(f64::NAN),
            bound: end.to_string(),
        });
    }
    if s.grid.axes.len() != d.n() {
        return Err(Error::DimensionMismatch {
            expected: d.n(),
            found: s.grid.axes.len(),
        });
    }
    let steps = ((s.t1 - s.t0) / s.dt).round().to_usize().unwrap_or(0).max(1);
    let dt = (s.t1 - s.t0) / lit(steps as f64);
    let chart: Vec<Vec<T>> = (0..s.grid.len()).map(|k| s.grid.point(k)).collect();
    let at = |t: T| -> Result<Vec<Vec<T>>> {
        chart
            .par_iter()
            .map(|u| Ok(hyperbolic_flow(d, &d.immerse(u)?, t)?.into_vector().into_coords()))
            .collect()
    };
    let start = at(s.t0)?;
    let evolved = evolve_grid(AmbientKind::Hyperboloid { r: d.r() }, &s.grid, start, dt, steps)?;
    let exact = at(s.t1)?;
    let half = s.compare_fraction / lit(2.0);
    let inside = |u: &[T]| {
        u.iter().zip(&s.grid.axes).all(|(&c, a)| {
            if a.periodic {
                return true;
            }
            let mid = (a.start + a.end) / lit(2.0);
            (c - mid).abs() <= half * (a.end - a.start) + lit(1e-12)
        })
    };
    let mut worst = T::zero();
    for ((u, a), b) in chart.iter().zip(&evolved).zip(&exact) {
        if inside(u) {
            worst = worst.max(linalg::distance(a, b));
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn circle_follows_the_radius_law() {
        let d = catalog::circle_h2::<f64>();
        let grid = ChartGrid::for_descriptor(&d, 1.0, 1.0, 64).unwrap();
        let start: Vec<Vec<f64>> = (0..grid.len())
            .map(|k| d.immerse(&grid.point(k)).unwrap().into_coords())
            .collect();
        let out = evolve_grid(AmbientKind::Hyperboloid { r: 1.0 }, &grid, start, 1e-5, 10_000).unwrap();
        // cosh ρ(t) = 2e^{−t}
        let expected = 2.0 * (-0.1f64).exp();
        assert!(out.iter().all(|x| (x[2] - expected).abs() < 1e-3));
        let s = EulerSettings {
            t0: 0.0,
            t1: 0.1,
            dt: 1e-5,
            grid,
            compare_fraction: 1.0,
        };
        assert!(evolve_and_compare(&d, &s).unwrap() < 1e-3);
    }

    #[test]
    fn ambient_space_does_not_move() {
        let d = catalog::ambient_h3::<f64>();
        let grid = ChartGrid::for_descriptor(&d, 0.5, 0.25, 8).unwrap();
        let s = EulerSettings {
            t0: 0.0,
            t1: 0.01,
            dt: 1e-4,
            grid,
            compare_fraction: 1.0,
        };
        assert!(evolve_and_compare(&d, &s).unwrap() < 1e-9);
    }

    #[test]
    fn stepping_past_collapse_is_rejected() {
        let d = catalog::circle_h2::<f64>();
        let s = EulerSettings {
            t0: 0.0,
            t1: 0.8,
            dt: 1e-4,
            grid: ChartGrid::for_descriptor(&d, 1.0, 1.0, 16).unwrap(),
            compare_fraction: 1.0,
        };
        assert!(matches!(evolve_and_compare(&d, &s), Err(Error::TimeOutOfRange { .. })));
    }

    #[test]
    fn linear_extension_reproduces_affine_data() {
        let grid = ChartGrid::new(vec![GridAxis {
            start: 0.0,
            end: 1.0,
            nodes: 5,
            periodic: false,
        }])
        .unwrap();
        let values: Vec<f64> = (0..5).map(|k| 3.0 * grid.point(k)[0] + 1.0).collect();
        let at = |i: isize| {
            let mut w = Vec::new();
            grid.resolve(&mut [i], 1.0, &mut w);
            apply(&w, &values, 1)[0]
        };
        assert!((at(-1) - 0.25).abs() < 1e-12);
        assert!((at(6) - 5.5).abs() < 1e-12);
    }
}
