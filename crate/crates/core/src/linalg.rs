//! Small dense linear algebra on row-major `Vec<Vec<T>>` matrices.
//!
//! The oracle only ever needs matrices of size ≤ 10, so cyclic Jacobi and
//! Gauss–Jordan are plenty.

use crate::scalar::{lit, Real};

pub type Matrix<T> = Vec<Vec<T>>;

pub fn zeros<T: Real>(rows: usize, cols: usize) -> Matrix<T> {
    vec![vec![T::zero(); cols]; rows]
}

pub fn identity<T: Real>(n: usize) -> Matrix<T> {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::one();
    }
    m
}

pub fn transpose<T: Real>(a: &Matrix<T>) -> Matrix<T> {
    if a.is_empty() {
        return Vec::new();
    }
    let (r, c) = (a.len(), a[0].len());
    let mut t = zeros(c, r);
    for i in 0..r {
        for j in 0..c {
            t[j][i] = a[i][j];
        }
    }
    t
}

pub fn matmul<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let (r, k) = (a.len(), b.len());
    let c = if k == 0 { 0 } else { b[0].len() };
    let mut out = zeros(r, c);
    for i in 0..r {
        for j in 0..c {
            let mut s = T::zero();
            for l in 0..k {
                s = s + a[i][l] * b[l][j];
            }
            out[i][j] = s;
        }
    }
    out
}

/// Inverse by Gauss–Jordan with partial pivoting. `None` when a pivot falls
/// below `tol` times the largest entry.
pub fn invert<T: Real>(a: &Matrix<T>, tol: T) -> Option<Matrix<T>> {
    let n = a.len();
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(T::zero(), |m, &v| m.max(v.abs()));
    if n == 0 {
        return Some(Vec::new());
    }
    if scale == T::zero() {
        return None;
    }
    let mut m = a.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())
            .unwrap();
        if m[pivot][col].abs() <= tol * scale {
            return None;
        }
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col];
        for j in 0..n {
            m[col][j] = m[col][j] / p;
            inv[col][j] = inv[col][j] / p;
        }
        for i in 0..n {
            if i != col {
                let f = m[i][col];
                if f != T::zero() {
                    for j in 0..n {
                        m[i][j] = m[i][j] - f * m[col][j];
                        inv[i][j] = inv[i][j] - f * inv[col][j];
                    }
                }
            }
        }
    }
    Some(inv)
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and the matching eigenvectors as
/// the columns of the second matrix.
pub fn symmetric_eigen<T: Real>(a: &Matrix<T>) -> (Vec<T>, Matrix<T>) {
    let n = a.len();
    let mut m = a.clone();
    // symmetrize against round-off in the caller
    for i in 0..n {
        for j in (i + 1)..n {
            let s = (m[i][j] + m[j][i]) * lit(0.5);
            m[i][j] = s;
            m[j][i] = s;
        }
    }
    let mut v = identity(n);
    for _sweep in 0..100 {
        let off: T = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .fold(T::zero(), |s, (i, j)| s + m[i][j] * m[i][j]);
        let diag: T = (0..n).fold(T::zero(), |s, i| s + m[i][i] * m[i][i]);
        if off <= T::epsilon() * T::epsilon() * (diag + off) || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if m[p][q] == T::zero() {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (m[p][q] * lit(2.0));
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let t = if theta == T::zero() { T::one() } else { t };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i][i].partial_cmp(&m[j][j]).unwrap());
    let values = order.iter().map(|&i| m[i][i]).collect();
    let vectors = (0..n)
        .map(|row| order.iter().map(|&col| v[row][col]).collect())
        .collect();
    (values, vectors)
}

/// `A^{-1/2}` for a symmetric positive definite matrix.
pub fn inverse_sqrt_spd<T: Real>(a: &Matrix<T>) -> Option<Matrix<T>> {
    let (vals, vecs) = symmetric_eigen(a);
    if vals.iter().any(|&l| l <= T::zero()) {
        return None;
    }
    let n = a.len();
    let mut out = zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut s = T::zero();
            for k in 0..n {
                s = s + vecs[i][k] * vecs[j][k] / vals[k].sqrt();
            }
            out[i][j] = s;
        }
    }
    Some(out)
}

pub fn norm<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |s, &x| s + x * x).sqrt()
}

pub fn distance<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |s, (&x, &y)| s + (x - y) * (x - y))
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_recovers_known_spectrum() {
        let a: Matrix<f64> = vec![
            vec![2.0, 1.0, 0.0],
            vec![1.0, 2.0, 0.0],
            vec![0.0, 0.0, 5.0],
        ];
        let (vals, vecs) = symmetric_eigen(&a);
        assert!((vals[0] - 1.0).abs() < 1e-14);
        assert!((vals[1] - 3.0).abs() < 1e-14);
        assert!((vals[2] - 5.0).abs() < 1e-14);
        // A v = λ v for each column
        for k in 0..3 {
            for i in 0..3 {
                let av: f64 = (0..3).map(|j| a[i][j] * vecs[j][k]).sum();
                assert!((av - vals[k] * vecs[i][k]).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn invert_and_inverse_sqrt() {
        let a: Matrix<f64> = vec![vec![4.0, 1.0], vec![1.0, 3.0]];
        let inv = invert(&a, 1e-14).unwrap();
        let id = matmul(&a, &inv);
        assert!((id[0][0] - 1.0).abs() < 1e-14 && id[0][1].abs() < 1e-14);
        let s = inverse_sqrt_spd(&a).unwrap();
        let back = matmul(&matmul(&s, &a), &s);
        assert!((back[0][0] - 1.0).abs() < 1e-13 && back[1][0].abs() < 1e-13);
        assert!(invert(&vec![vec![1.0, 2.0], vec![2.0, 4.0]], 1e-12).is_none());
    }
}
