//! Integer linear algebra: column Hermite normal form, saturated integer
//! kernels and rational rank.
//!
//! Everything is computed with unimodular column operations on `BigInt`
//! entries, so `A * U = H` holds exactly and the trailing columns of `U`
//! generate the full integer kernel of `A`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from equal-length rows. An empty row list needs `cols`.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let owned: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        IntMatrix::from_rows(&owned, cols).expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for l in 0..self.cols {
                    acc += self.get(i, l) * other.get(l, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        (0..self.rows).map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn is_zero_column(&self, c: usize) -> bool {
        (0..self.rows).all(|r| self.get(r, c).is_zero())
    }

    /// Exact determinant by fraction-free elimination. Square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let i = r * self.cols + c;
            self.data[i] = -std::mem::take(&mut self.data[i]);
        }
    }

    /// col[dst] -= f * col[src]
    fn sub_col_multiple(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + src] * f;
            self.data[r * self.cols + dst] -= v;
        }
    }

    /// (col[a], col[b]) <- (s*col[a] + t*col[b], u*col[a] + v*col[b])
    fn mix_cols(&mut self, a: usize, b: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
        for r in 0..self.rows {
            let x = self.data[r * self.cols + a].clone();
            let y = self.data[r * self.cols + b].clone();
            self.data[r * self.cols + a] = s * &x + t * &y;
            self.data[r * self.cols + b] = u * &x + v * &y;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of [`hermite_normal_form`]: `A * transform = form`.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub form: IntMatrix,
    pub transform: IntMatrix,
    /// Row index of the pivot of each of the first `rank` columns.
    pub pivot_rows: Vec<usize>,
}

impl Hermite {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }
}

/// Column-style Hermite normal form.
///
/// The first `rank` columns of `H` carry pivots in strictly increasing rows,
/// pivots are positive and entries left of a pivot lie in `[0, pivot)`. The
/// remaining columns are zero. `U` is unimodular.
pub fn hermite_normal_form(a: &IntMatrix) -> Hermite {
    let n = a.cols;
    let mut h = a.clone();
    let mut u = IntMatrix::identity(n);
    let mut pivot_rows = Vec::new();
    let mut c = 0;
    for r in 0..a.rows {
        if c == n {
            break;
        }
        // bring a nonzero entry to column c
        let Some(first) = (c..n).find(|&j| !h.get(r, j).is_zero()) else {
            continue;
        };
        if first != c {
            h.swap_cols(c, first);
            u.swap_cols(c, first);
        }
        for j in c + 1..n {
            if h.get(r, j).is_zero() {
                continue;
            }
            let x = h.get(r, c).clone();
            let y = h.get(r, j).clone();
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let u_ = -(&y / &g);
            let v_ = &x / &g;
            h.mix_cols(c, j, &s, &t, &u_, &v_);
            u.mix_cols(c, j, &s, &t, &u_, &v_);
        }
        if h.get(r, c).is_negative() {
            h.negate_col(c);
            u.negate_col(c);
        }
        let pivot = h.get(r, c).clone();
        for l in 0..c {
            let q = h.get(r, l).div_floor(&pivot);
            h.sub_col_multiple(l, c, &q);
            u.sub_col_multiple(l, c, &q);
        }
        pivot_rows.push(r);
        c += 1;
    }
    Hermite { form: h, transform: u, pivot_rows }
}

/// Lattice basis of `{ beta in Z^cols : A beta = 0 }`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KernelBasis {
    pub vectors: Vec<Vec<BigInt>>,
}

impl KernelBasis {
    pub fn is_trivial(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Saturated integer kernel, canonicalised to row Hermite form so that the
/// basis depends only on the kernel lattice (first nonzero entry of each
/// vector positive, pivots strictly moving right).
pub fn kernel_basis(a: &IntMatrix) -> KernelBasis {
    let hnf = hermite_normal_form(a);
    let rank = hnf.rank();
    let n = a.cols;
    if rank == n {
        return KernelBasis { vectors: Vec::new() };
    }
    // kernel vectors as columns of K^T (n x (n - rank))
    let mut kt = IntMatrix::zeros(n, n - rank);
    for (out, c) in (rank..n).enumerate() {
        for r in 0..n {
            kt.set(r, out, hnf.transform.get(r, c).clone());
        }
    }
    // column HNF of K^T is row HNF of K; the lattice is unchanged
    let canon = hermite_normal_form(&kt);
    let vectors = (0..canon.rank()).map(|c| canon.form.column(c)).collect();
    KernelBasis { vectors }
}

/// Rank over Q.
pub fn rank_over_rationals(a: &IntMatrix) -> usize {
    hermite_normal_form(a).rank()
}

/// Divides an integer vector by the gcd of its entries. Zero stays zero.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_is_its_own_form() {
        let a = IntMatrix::identity(2);
        let h = hermite_normal_form(&a);
        assert_eq!(h.form, a);
        assert_eq!(h.transform, a);
    }

    #[test]
    fn single_row_gcd() {
        let a = IntMatrix::from_i64(&[&[4, 6]]);
        let h = hermite_normal_form(&a);
        assert_eq!(h.form, IntMatrix::from_i64(&[&[2, 0]]));
        assert_eq!(a.mul(&h.transform).unwrap(), h.form);
        assert_eq!(h.transform.determinant().abs(), BigInt::one());
    }

    #[test]
    fn two_by_three_has_rank_two() {
        let a = IntMatrix::from_i64(&[&[2, 3, 4], &[1, 1, 1]]);
        let h = hermite_normal_form(&a);
        assert_eq!(h.rank(), 2);
        assert!(h.form.is_zero_column(2));
        assert!(!h.form.is_zero_column(0));
        assert!(!h.form.is_zero_column(1));
        assert_eq!(a.mul(&h.transform).unwrap(), h.form);
    }

    #[test]
    fn kernel_of_example_face() {
        let a = IntMatrix::from_i64(&[&[2, 3, 4], &[1, 1, 1]]);
        assert_eq!(kernel_basis(&a).vectors, vec![big(&[1, -2, 1])]);
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        assert!(kernel_basis(&IntMatrix::identity(3)).is_trivial());
    }

    #[test]
    fn kernel_of_zero_row_is_everything() {
        let a = IntMatrix::zeros(1, 3);
        let k = kernel_basis(&a);
        assert_eq!(k.vectors, vec![big(&[1, 0, 0]), big(&[0, 1, 0]), big(&[0, 0, 1])]);
    }

    #[test]
    fn kernel_with_no_rows() {
        let a = IntMatrix::zeros(0, 2);
        assert_eq!(kernel_basis(&a).len(), 2);
        assert_eq!(rank_over_rationals(&a), 0);
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_over_rationals(&IntMatrix::identity(3)), 3);
        assert_eq!(rank_over_rationals(&IntMatrix::from_i64(&[&[1, 2]])), 1);
        let k = kernel_basis(&IntMatrix::from_i64(&[&[1, 2]]));
        assert_eq!(k.vectors, vec![big(&[2, -1])]);
    }

    #[test]
    fn determinant_small() {
        let a = IntMatrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.determinant(), BigInt::from(18));
        let s = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(s.determinant(), BigInt::from(-1));
    }

    #[test]
    fn primitive_divides_gcd() {
        assert_eq!(primitive(&big(&[4, -6, 0])), big(&[2, -3, 0]));
        assert_eq!(primitive(&big(&[0, 0])), big(&[0, 0]));
    }
}
