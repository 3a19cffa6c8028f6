//! Exact rational and integer matrices: rank, kernels, determinants,
//! characteristic polynomials, and integer Smith normal form.
//!
//! This is the computational substrate for every other module; all
//! elimination is done over arbitrary-precision rationals or integers,
//! never floats.

use crate::poly::RatPoly;
use crate::rational::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense matrix over the rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| crate::rational::rat_int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .fold(Rat::zero(), |acc, t| acc + t)
            })
            .collect()
    }

    pub fn scale(&self, c: &Rat) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Columns of `other` appended to the right of `self`.
    pub fn hstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.at(i, j).clone());
            }
        }
        out
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<Rat>], rows: usize) -> RatMatrix {
        let mut out = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                out.set(i, j, v.clone());
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.at(r, c).recip();
            for j in c..m.cols {
                let v = m.at(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let f = m.at(i, c).clone();
                    for j in c..m.cols {
                        let v = m.at(i, j) - &f * m.at(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column.
    ///
    /// Vectors are scaled to integer entries with content 1 and positive
    /// free coordinate, so equal kernels produce identical bases.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.at(row, free).clone();
            }
            basis.push(canonical_scale(&v));
        }
        basis
    }

    /// Determinant by exact fraction elimination (square matrices only).
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.at(i, c).is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let pivot = m.at(c, c).clone();
            det *= &pivot;
            let inv = pivot.recip();
            for i in c + 1..n {
                if m.at(i, c).is_zero() {
                    continue;
                }
                let f = m.at(i, c) * &inv;
                for j in c..n {
                    let v = m.at(i, j) - &f * m.at(c, j);
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "trace of non-square matrix");
        (0..self.rows).fold(Rat::zero(), |acc, i| acc + self.at(i, i))
    }

    /// Characteristic polynomial `det(xI - M)` by the Faddeev-LeVerrier
    /// recurrence, exact over the rationals.
    pub fn char_poly(&self) -> RatPoly {
        assert_eq!(self.rows, self.cols, "char poly of non-square matrix");
        let n = self.rows;
        // coefficients c[n]..c[0], c[n] = 1
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        let mut m = RatMatrix::zeros(n, n);
        for k in 1..=n {
            // M_k = A (M_{k-1} + c_{n-k+1} I)
            let mut shifted = m.clone();
            for i in 0..n {
                let v = shifted.at(i, i) + &coeffs[n - k + 1];
                shifted.set(i, i, v);
            }
            m = self.mul(&shifted);
            let c = -(m.trace() / crate::rational::rat_int(k as i64));
            coeffs[n - k] = c;
        }
        RatPoly::from_coeffs(coeffs)
    }

    /// A particular solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, b.len(), "dimension mismatch");
        let augmented = self.hstack(&RatMatrix::from_cols(&[b.to_vec()], self.rows));
        let (r, pivots) = augmented.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the constant column
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.at(row, self.cols).clone();
        }
        Some(x)
    }

    /// True when `self * other` is the identity.
    pub fn is_inverse_pair(&self, other: &RatMatrix) -> bool {
        self.rows == self.cols
            && other.rows == other.cols
            && self.rows == other.rows
            && self.mul(other) == RatMatrix::identity(self.rows)
    }
}

/// Scales a rational vector to integer entries of gcd 1, keeping the
/// orientation of its last nonzero coordinate positive when the vector is
/// a kernel vector built with unit free coordinate.
fn canonical_scale(v: &[Rat]) -> Vec<Rat> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rat::from_integer(lcm.clone())).numer().clone())
        .collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = gcd.gcd(x);
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|x| Rat::from_integer(x / &gcd))
        .collect()
}

/// Dense matrix over the integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| Rat::from_integer(v.clone())).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += f * row[src]
    fn add_row_mul(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = self.at(dst, j) + f * self.at(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += f * col[src]
    fn add_col_mul(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = self.at(i, dst) + f * self.at(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j).clone();
            self.set(i, j, v);
        }
    }
}

/// Smith normal form `U * A * V = D` with unimodular `U`, `V`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.at(i, i).clone())
            .filter(|v| !v.is_zero())
            .collect()
    }
}

/// Smith normal form by elementary row/column reduction, pivoting on the
/// entry of minimal absolute value. Diagonal entries come out non-negative
/// with `d_i | d_{i+1}`.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    let mut t = 0;
    'outer: while t < m.min(n) {
        // Pivot: minimal nonzero absolute value in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d.at(i, j).is_zero()
                    && pivot.is_none_or(|(pi, pj)| d.at(i, j).abs() < d.at(pi, pj).abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break 'outer; // trailing block is zero
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        let mut dirty = false;
        for i in t + 1..m {
            if d.at(i, t).is_zero() {
                continue;
            }
            let q = d.at(i, t) / d.at(t, t);
            if !q.is_zero() {
                d.add_row_mul(i, t, &(-&q));
                u.add_row_mul(i, t, &(-q));
            }
            if !d.at(i, t).is_zero() {
                dirty = true; // remainder smaller than pivot; re-pivot
            }
        }
        for j in t + 1..n {
            if d.at(t, j).is_zero() {
                continue;
            }
            let q = d.at(t, j) / d.at(t, t);
            if !q.is_zero() {
                d.add_col_mul(j, t, &(-&q));
                v.add_col_mul(j, t, &(-q));
            }
            if !d.at(t, j).is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }

        // Pivot must divide the whole trailing block for the divisibility
        // chain; fold an offending row into row t and reduce again.
        let mut offender = None;
        'scan: for i in t + 1..m {
            for j in t + 1..n {
                if !(d.at(i, j) % d.at(t, t)).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            let one = BigInt::one();
            d.add_row_mul(t, i, &one);
            u.add_row_mul(t, i, &one);
            continue;
        }

        if d.at(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    // Zero rounds above can still leave a negative entry only at t itself;
    // diagonal past the last pivot is zero. Normalize any stragglers.
    for i in 0..m.min(n) {
        if d.at(i, i).is_negative() {
            d.negate_row(i);
            u.negate_row(i);
        }
    }

    SnfResult { d, u, v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use proptest::prelude::*;

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(RatMatrix::identity(2).rank(), 2);
        assert_eq!(RatMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(RatMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(RatMatrix::identity(3).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let basis = RatMatrix::zeros(2, 3).kernel_basis();
        assert_eq!(basis.len(), 3);
    }

    #[test]
    fn kernel_vectors_are_canonical_and_exact() {
        let m = RatMatrix::from_i64_rows(&[&[1, 1]]);
        let basis = m.kernel_basis();
        assert_eq!(basis, vec![vec![rat_int(-1), rat_int(1)]]);
        for v in &basis {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        // fractional entries get cleared to gcd-1 integers
        let m = RatMatrix::from_rows(vec![vec![rat(1, 2), rat(1, 3)]]);
        assert_eq!(m.kernel_basis(), vec![vec![rat_int(-2), rat_int(3)]]);
    }

    #[test]
    fn det_and_char_poly() {
        let m = RatMatrix::from_i64_rows(&[&[0, 1], &[-1, 0]]);
        assert_eq!(m.det(), rat_int(1));
        // rotation block: x^2 + 1
        assert_eq!(
            m.char_poly(),
            RatPoly::from_coeffs(vec![rat_int(1), rat_int(0), rat_int(1)])
        );
        let m = RatMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        assert_eq!(
            m.char_poly(),
            RatPoly::from_coeffs(vec![rat_int(6), rat_int(-5), rat_int(1)])
        );
    }

    #[test]
    fn snf_small_cases() {
        let a = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form(&a);
        assert_eq!(
            snf.invariant_factors(),
            vec![BigInt::from(1), BigInt::from(6)]
        );

        let a = IntMatrix::from_i64_rows(&[&[2, 4], &[6, 8]]);
        let snf = smith_normal_form(&a);
        assert_eq!(
            snf.invariant_factors(),
            vec![BigInt::from(2), BigInt::from(4)]
        );

        let a = IntMatrix::zeros(2, 3);
        let snf = smith_normal_form(&a);
        assert!(snf.invariant_factors().is_empty());
        assert_eq!(snf.d, IntMatrix::zeros(2, 3));
    }

    fn check_snf(a: &IntMatrix) {
        let snf = smith_normal_form(a);
        // U A V = D
        assert_eq!(snf.u.mul(a).mul(&snf.v), snf.d);
        // unimodular transforms
        assert_eq!(snf.u.to_rational().det().abs(), rat_int(1));
        assert_eq!(snf.v.to_rational().det().abs(), rat_int(1));
        // diagonal, non-negative, divisibility chain
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    assert!(snf.d.at(i, j).is_zero());
                }
            }
        }
        let factors = snf.invariant_factors();
        for w in factors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "divisibility broken: {factors:?}");
        }
        // rank over Q equals number of nonzero invariant factors
        assert_eq!(a.to_rational().rank(), factors.len());
    }

    proptest! {
        #[test]
        fn snf_reconstruction_random(entries in proptest::collection::vec(-30i64..30, 12)) {
            let rows: Vec<Vec<BigInt>> = entries
                .chunks(4)
                .map(|c| c.iter().map(|&v| BigInt::from(v)).collect())
                .collect();
            check_snf(&IntMatrix::from_rows(rows));
        }

        #[test]
        fn kernel_always_annihilates(entries in proptest::collection::vec(-9i64..9, 12)) {
            let rows: Vec<&[i64]> = entries.chunks(4).collect();
            let m = RatMatrix::from_i64_rows(&rows);
            let basis = m.kernel_basis();
            prop_assert_eq!(basis.len(), m.cols() - m.rank());
            for v in &basis {
                prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
            }
        }
    }
}
