//! Exact rational linear algebra on small dense matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// Dense row-major matrix over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            debug_assert_eq!(row.len(), cols);
            data.extend(row);
        }
        Mat { rows: r, cols, data }
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Q::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }
}

/// Reduced row echelon form of the given row vectors (each of length `cols`).
/// Returns the nonzero reduced rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<Q>>, cols: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Vec<Vec<Q>>, cols: usize) -> usize {
    rref(rows, cols).1.len()
}

/// Basis of `{v : M v = 0}`.
pub fn kernel(m: &Mat) -> Vec<Vec<Q>> {
    let rows: Vec<Vec<Q>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    let (red, pivots) = rref(rows, m.cols);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); m.cols];
            v[f] = Q::one();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// A subspace kept in reduced echelon form, used to reduce vectors modulo it.
#[derive(Clone, Debug, Default)]
pub struct Reducer {
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Reducer {
    pub fn new(spanning: Vec<Vec<Q>>, cols: usize) -> Self {
        let (rows, pivots) = rref(spanning, cols);
        Reducer { rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Normal form of `v` modulo the subspace: all pivot coordinates eliminated.
    pub fn reduce(&self, v: &mut [Q]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let rows = vec![qv(&[1, 2, 3]), qv(&[2, 4, 6]), qv(&[1, 0, 1])];
        assert_eq!(rank(rows.clone(), 3), 2);
        let m = Mat::from_rows(rows, 3);
        let ker = kernel(&m);
        assert_eq!(ker.len(), 1);
        assert!(is_zero_vec(&m.apply(&ker[0])));
    }

    #[test]
    fn reducer_normal_form() {
        let r = Reducer::new(vec![qv(&[1, 1, 0])], 3);
        let mut v = qv(&[2, 0, 5]);
        r.reduce(&mut v);
        assert_eq!(v, qv(&[0, -2, 5]));
    }

    #[test]
    fn matrix_product() {
        let a = Mat::from_rows(vec![qv(&[1, 2]), qv(&[0, 1])], 2);
        let b = a.mul(&Mat::identity(2));
        assert_eq!(a, b);
        assert_eq!(a.apply(&qv(&[1, 1])), qv(&[3, 1]));
    }
}
