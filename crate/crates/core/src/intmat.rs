//! Dense integer matrices with Hermite and Smith normal forms.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

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
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = v.clone().into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += q * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * q;
            self[(dst, j)] += v;
        }
    }

    /// `col[dst] += q * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * q;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination; square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
            }
            prev = m[(k, k)].clone();
        }
        if n == 0 {
            BigInt::one()
        } else {
            sign * &m[(n - 1, n - 1)]
        }
    }

    pub fn rank(&self) -> usize {
        hermite_normal_form(self).rows()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, r: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, r.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, r.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..r.cols {
                    out[(i, j)] += a * &r[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// Row-style Hermite normal form of the row lattice, zero rows dropped.
///
/// Pivots are positive and entries above a pivot are reduced into `[0, pivot)`.
pub fn hermite_normal_form(a: &IntMatrix) -> IntMatrix {
    let mut m = a.clone();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        // Euclid down the column until only row r is non-zero below r
        loop {
            let pivot = (r..m.rows)
                .filter(|&i| !m[(i, c)].is_zero())
                .min_by(|&i, &j| m[(i, c)].abs().cmp(&m[(j, c)].abs()));
            let Some(p) = pivot else { break };
            m.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..m.rows {
                if !m[(i, c)].is_zero() {
                    let q = m[(i, c)].div_floor(&m[(r, c)]);
                    m.add_row(i, r, &-q);
                    if !m[(i, c)].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[(r, c)].is_zero() {
            continue;
        }
        if m[(r, c)].is_negative() {
            m.negate_row(r);
        }
        for i in 0..r {
            let q = m[(i, c)].div_floor(&m[(r, c)]);
            m.add_row(i, r, &-q);
        }
        r += 1;
    }
    let mut out = IntMatrix::zeros(r, m.cols);
    out.data.clone_from_slice(&m.data[..r * m.cols]);
    out
}

/// Integer coordinates of `v` in the basis given by the rows of an HNF,
/// or `None` when `v` is not in the lattice.
pub fn hnf_coordinates(hnf: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(v.len(), hnf.cols());
    let mut rest = v.to_vec();
    let mut coords = Vec::with_capacity(hnf.rows());
    for i in 0..hnf.rows() {
        let p = (0..hnf.cols()).find(|&j| !hnf[(i, j)].is_zero())?;
        if rest[..p].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let (q, r) = rest[p].div_rem(&hnf[(i, p)]);
        if !r.is_zero() {
            return None;
        }
        for (j, x) in rest.iter_mut().enumerate().skip(p) {
            *x -= &q * &hnf[(i, j)];
        }
        coords.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(coords)
}

/// `left * a * right = diag`, with `left`, `right` unimodular and the non-zero
/// diagonal entries `d_1 | d_2 | ... | d_r` positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diag: Vec<BigInt>,
    pub d: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub right_inv: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diag.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut left = IntMatrix::identity(m);
    let mut right = IntMatrix::identity(n);
    let mut right_inv = IntMatrix::identity(n);

    let mut t = 0;
    while t < m.min(n) {
        // smallest non-zero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[(i, j)].is_zero() && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        left.swap_rows(t, pi);
        d.swap_cols(t, pj);
        right.swap_cols(t, pj);
        right_inv.swap_rows(t, pj);

        let mut clean = true;
        for i in t + 1..m {
            let q = d[(i, t)].div_floor(&d[(t, t)]);
            if !q.is_zero() {
                d.add_row(i, t, &-&q);
                left.add_row(i, t, &-q);
            }
            if !d[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..n {
            let q = d[(t, j)].div_floor(&d[(t, t)]);
            if !q.is_zero() {
                d.add_col(j, t, &-&q);
                right.add_col(j, t, &-&q);
                // inverse of col_j -= q col_t is row_t += q row_j
                right_inv.add_row(t, j, &q);
            }
            if !d[(t, j)].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold an offending row into row t and retry
        let offending = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)])));
        if let Some(i) = offending {
            d.add_row(t, i, &BigInt::one());
            left.add_row(t, i, &BigInt::one());
            continue;
        }
        if d[(t, t)].is_negative() {
            d.negate_col(t);
            right.negate_col(t);
            right_inv.negate_row(t);
        }
        t += 1;
    }
    let diag = (0..m.min(n)).map(|i| d[(i, i)].clone()).take_while(|x| !x.is_zero()).collect();
    SmithForm { diag, d, left, right, right_inv }
}

/// Abelian group `Z^free_rank + sum Z/t_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianGroup {
    /// Cokernel of the row-relation matrix: generators are columns, relations rows.
    pub fn from_relations(rel: &IntMatrix) -> Self {
        let snf = smith_normal_form(rel);
        AbelianGroup { torsion: snf.torsion(), free_rank: rel.cols() - snf.rank() }
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|t| u64::try_from(t).unwrap_or(u64::MAX)).collect()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<alloc::string::String> = self.torsion.iter().map(|t| alloc::format!("Z/{t}")).collect();
        if self.free_rank > 0 {
            parts.push(alloc::format!("Z^{}", self.free_rank));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}
