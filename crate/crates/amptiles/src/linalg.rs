//! Exact dense linear algebra over any `Scalar` (Gaussian elimination).

use crate::rat::Scalar;

pub type Mat<T> = Vec<Vec<T>>;

pub fn mat_mul<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
    let (ra, ca) = (a.len(), if a.is_empty() { 0 } else { a[0].len() });
    let cb = if b.is_empty() { 0 } else { b[0].len() };
    assert!(ra == 0 || ca == b.len(), "matrix product shape mismatch");
    let mut out = vec![vec![T::zero(); cb]; ra];
    for i in 0..ra {
        for (k, bk) in b.iter().enumerate() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cb {
                let v = a[i][k].clone() * bk[j].clone();
                out[i][j] = out[i][j].clone() + v;
            }
        }
    }
    out
}

/// Determinant by fraction-producing Gaussian elimination with row pivoting.
pub fn det<T: Scalar>(m: &Mat<T>) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    assert!(m.iter().all(|r| r.len() == n), "det of non-square matrix");
    let mut a = m.clone();
    let mut acc = T::one();
    let mut negate = false;
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| a[r][col].is_invertible()) else {
            return T::zero();
        };
        if p != col {
            a.swap(p, col);
            negate = !negate;
        }
        let pivot = a[col][col].clone();
        acc = acc * pivot.clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() / pivot.clone();
            for c in col..n {
                let v = a[r][c].clone() - f.clone() * a[col][c].clone();
                a[r][c] = v;
            }
        }
    }
    if negate {
        -acc
    } else {
        acc
    }
}

/// Rank of an arbitrary rectangular matrix.
pub fn rank<T: Scalar>(m: &Mat<T>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c].is_invertible()) else {
            continue;
        };
        a.swap(p, r);
        let pivot = a[r][c].clone();
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone() / pivot.clone();
            for j in c..cols {
                let v = a[i][j].clone() - f.clone() * a[r][j].clone();
                a[i][j] = v;
            }
        }
        r += 1;
    }
    r
}

/// Reduced row echelon form; returns (rref, pivot column indices).
pub fn rref<T: Scalar>(m: &Mat<T>) -> (Mat<T>, Vec<usize>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c].is_invertible()) else {
            continue;
        };
        a.swap(p, r);
        let pivot = a[r][c].clone();
        for j in 0..cols {
            a[r][j] = a[r][j].clone() / pivot.clone();
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..cols {
                let v = a[i][j].clone() - f.clone() * a[r][j].clone();
                a[i][j] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Solves `A x = b` for square invertible `A`.
pub fn solve<T: Scalar>(a: &Mat<T>, b: &[T]) -> Option<Vec<T>> {
    let n = a.len();
    assert_eq!(b.len(), n);
    let mut aug = a.clone();
    for (i, row) in aug.iter_mut().enumerate() {
        row.push(b[i].clone());
    }
    let (r, pivots) = rref(&aug);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some((0..n).map(|i| r[i][n].clone()).collect())
}
