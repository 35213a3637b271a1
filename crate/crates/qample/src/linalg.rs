//! Dense exact linear algebra over any [`Field`].
//!
//! Matrices are stored as rows.  Most callers build a matrix whose rows
//! are the images of a domain basis, so the natural kernel is the *left*
//! kernel: coefficient vectors `c` with `c · M = 0`.

use crate::field::{Field, Rat};
use num::{BigInt, BigRational, One, Zero};

#[derive(Clone, Debug)]
pub struct Mat<F: Field> {
    pub rows: Vec<Vec<F>>,
    pub cols: usize,
}

impl<F: Field> Mat<F> {
    pub fn new(rows: Vec<Vec<F>>, cols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged matrix");
        }
        Mat { rows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Row-reduce in place; returns the pivot column of each (nonzero) row.
    /// After the call the matrix is in reduced row echelon form with zero
    /// rows removed.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows.len() {
                break;
            }
            let Some(pi) = (r..self.rows.len()).find(|&i| !self.rows[i][c].is_zero()) else {
                continue;
            };
            self.rows.swap(r, pi);
            let inv = self.rows[r][c].inv();
            for x in self.rows[r].iter_mut() {
                *x = x.mul(&inv);
            }
            for i in 0..self.rows.len() {
                if i != r && !self.rows[i][c].is_zero() {
                    let f = self.rows[i][c].clone();
                    for j in 0..self.cols {
                        let t = f.mul(&self.rows[r][j]);
                        self.rows[i][j] = self.rows[i][j].sub(&t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.rows.truncate(r);
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of `{c : c · M = 0}`, deterministic (RREF of the augmented
    /// system, free variables in row order).
    pub fn left_kernel(&self) -> Vec<Vec<F>> {
        let n = self.rows.len();
        if n == 0 {
            return Vec::new();
        }
        let zero = self.zero_elem();
        let one = zero.one_like();
        // Augment each row with an identity block and reduce on the M part.
        let mut aug: Vec<Vec<F>> = Vec::with_capacity(n);
        for (i, row) in self.rows.iter().enumerate() {
            let mut v = row.clone();
            for j in 0..n {
                v.push(if i == j { one.clone() } else { zero.clone() });
            }
            aug.push(v);
        }
        let mut r = 0;
        for c in 0..self.cols {
            if r == n {
                break;
            }
            let Some(pi) = (r..n).find(|&i| !aug[i][c].is_zero()) else { continue };
            aug.swap(r, pi);
            let inv = aug[r][c].inv();
            for x in aug[r].iter_mut() {
                *x = x.mul(&inv);
            }
            for i in 0..n {
                if i != r && !aug[i][c].is_zero() {
                    let f = aug[i][c].clone();
                    for j in 0..self.cols + n {
                        let t = f.mul(&aug[r][j]);
                        aug[i][j] = aug[i][j].sub(&t);
                    }
                }
            }
            r += 1;
        }
        aug[r..]
            .iter()
            .map(|v| v[self.cols..].to_vec())
            .collect()
    }

    fn zero_elem(&self) -> F {
        self.rows[0][0].zero_like()
    }
}

/// Precomputed solver for repeated "express v in the row span" queries.
pub struct RowSolver<F: Field> {
    rref: Vec<Vec<F>>,
    pivots: Vec<usize>,
    /// transform[i] = coefficients of rref row i in the original rows
    transform: Vec<Vec<F>>,
    n_orig: usize,
    cols: usize,
}

impl<F: Field> RowSolver<F> {
    pub fn new(m: &Mat<F>) -> Self {
        let n = m.rows.len();
        let cols = m.cols;
        if n == 0 {
            return RowSolver { rref: vec![], pivots: vec![], transform: vec![], n_orig: 0, cols };
        }
        let zero = m.rows[0][0].zero_like();
        let one = zero.one_like();
        let mut aug: Vec<Vec<F>> = Vec::with_capacity(n);
        for (i, row) in m.rows.iter().enumerate() {
            let mut v = row.clone();
            for j in 0..n {
                v.push(if i == j { one.clone() } else { zero.clone() });
            }
            aug.push(v);
        }
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == n {
                break;
            }
            let Some(pi) = (r..n).find(|&i| !aug[i][c].is_zero()) else { continue };
            aug.swap(r, pi);
            let inv = aug[r][c].inv();
            for x in aug[r].iter_mut() {
                *x = x.mul(&inv);
            }
            for i in 0..n {
                if i != r && !aug[i][c].is_zero() {
                    let f = aug[i][c].clone();
                    for j in 0..cols + n {
                        let t = f.mul(&aug[r][j]);
                        aug[i][j] = aug[i][j].sub(&t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rref = aug[..r].iter().map(|v| v[..cols].to_vec()).collect();
        let transform = aug[..r].iter().map(|v| v[cols..].to_vec()).collect();
        RowSolver { rref, pivots, transform, n_orig: n, cols }
    }

    pub fn rank(&self) -> usize {
        self.rref.len()
    }

    pub fn in_span(&self, v: &[F]) -> bool {
        self.residual(v).iter().all(|x| x.is_zero())
    }

    fn residual(&self, v: &[F]) -> Vec<F> {
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if !w[p].is_zero() {
                let f = w[p].clone();
                for j in 0..self.cols {
                    let t = f.mul(&self.rref[i][j]);
                    w[j] = w[j].sub(&t);
                }
            }
        }
        w
    }

    /// Coefficients of `v` in the *original* rows, if `v` is in their span.
    pub fn solve(&self, v: &[F]) -> Option<Vec<F>> {
        assert_eq!(v.len(), self.cols);
        if self.n_orig == 0 {
            return if v.iter().all(|x| x.is_zero()) { Some(vec![]) } else { None };
        }
        let zero = v
            .first()
            .map(|x| x.zero_like())
            .unwrap_or_else(|| self.rref[0][0].zero_like());
        let mut w = v.to_vec();
        let mut coeffs = vec![zero; self.n_orig];
        for (i, &p) in self.pivots.iter().enumerate() {
            if !w[p].is_zero() {
                let f = w[p].clone();
                for j in 0..self.cols {
                    let t = f.mul(&self.rref[i][j]);
                    w[j] = w[j].sub(&t);
                }
                for (k, t) in self.transform[i].iter().enumerate() {
                    let inc = f.mul(t);
                    coeffs[k] = coeffs[k].add(&inc);
                }
            }
        }
        if w.iter().all(|x| x.is_zero()) {
            Some(coeffs)
        } else {
            None
        }
    }
}

/// Determinant of a square big-integer matrix (fraction-free Bareiss).
pub fn det_bigint(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(pi) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, pi);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = &num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Solve the square rational system `A x = b` exactly; `None` if singular.
pub fn solve_square_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut r: Vec<Rat> = a[i].iter().map(|x| Rat(x.clone())).collect();
        r.push(Rat(b[i].clone()));
        rows.push(r);
    }
    let mut m = Mat::new(rows, n + 1);
    let pivots = m.rref();
    if pivots.len() != n || pivots.contains(&n) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (row, &p) in m.rows.iter().zip(pivots.iter()) {
        x[p] = row[n].0.clone();
    }
    Some(x)
}

pub fn rat_rows(m: &[Vec<i64>]) -> Mat<Rat> {
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    Mat::new(
        m.iter().map(|r| r.iter().map(|&x| Rat::from_i64(x)).collect()).collect(),
        cols,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf, CERT_PRIME};

    fn gf_mat(rows: &[&[i64]], p: u64) -> Mat<Gf> {
        let cols = rows[0].len();
        Mat::new(
            rows.iter().map(|r| r.iter().map(|&x| Gf::new(x, p)).collect()).collect(),
            cols,
        )
    }

    #[test]
    fn rank_and_kernel_small() {
        let m = gf_mat(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]], CERT_PRIME);
        assert_eq!(m.rank(), 2);
        let k = m.left_kernel();
        assert_eq!(k.len(), 1);
        // c0*r0 + c1*r1 + c2*r2 = 0
        for j in 0..3 {
            let mut s = Gf::new(0, CERT_PRIME);
            for i in 0..3 {
                s = s.add(&k[0][i].mul(&m.rows[i][j]));
            }
            assert!(s.is_zero());
        }
    }

    #[test]
    fn row_solver_expresses_span_members() {
        let m = gf_mat(&[&[1, 0, 1], &[0, 1, 1]], 7);
        let s = RowSolver::new(&m);
        let v: Vec<Gf> = [2, 3, 5].iter().map(|&x| Gf::new(x, 7)).collect();
        let c = s.solve(&v).unwrap();
        assert_eq!(c[0].v, 2);
        assert_eq!(c[1].v, 3);
        let w: Vec<Gf> = [1, 1, 0].iter().map(|&x| Gf::new(x, 7)).collect();
        assert!(s.solve(&w).is_none());
    }

    #[test]
    fn rational_rank_matches_gf_on_generic_input() {
        let rows = vec![vec![1i64, 4, 2], vec![3, -1, 0], vec![4, 3, 2]];
        let q = rat_rows(&rows);
        let g = gf_mat(&[&[1, 4, 2], &[3, -1, 0], &[4, 3, 2]], CERT_PRIME);
        assert_eq!(q.rank(), g.rank());
    }

    #[test]
    fn bareiss_determinant() {
        let m: Vec<Vec<BigInt>> = vec![
            vec![BigInt::from(2), BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(3), BigInt::from(1)],
        ];
        assert_eq!(det_bigint(&m), BigInt::from(5));
    }

    #[test]
    fn solve_square() {
        let a: Vec<Vec<BigRational>> = vec![
            vec![BigRational::from_integer(1.into()), BigRational::from_integer(1.into())],
            vec![BigRational::from_integer(1.into()), BigRational::from_integer((-1).into())],
        ];
        let b = vec![BigRational::from_integer(3.into()), BigRational::from_integer(1.into())];
        let x = solve_square_rational(&a, &b).unwrap();
        assert_eq!(x[0], BigRational::from_integer(2.into()));
        assert_eq!(x[1], BigRational::from_integer(1.into()));
    }
}
