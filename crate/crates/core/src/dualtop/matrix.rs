//! Dense integer matrices, Smith and Hermite normal forms, and lattice kernels.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "{rows}x{cols} matrix needs {} entries",
                rows * cols
            )));
        }
        Ok(IntegerMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in entries.iter().enumerate() {
            m.data[i * n + i] = d.clone();
        }
        m
    }

    /// Builds a matrix from rows of machine integers; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        let data = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
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

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::InvalidInput(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::InvalidInput(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(if n == 0 {
            sign
        } else {
            sign * &a[n - 1][n - 1]
        })
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().map(|d| d.abs().is_one()).unwrap_or(false)
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

    /// `row_dst += q · row_src`
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j] * q;
            self.data[dst * self.cols + j] += s;
        }
    }

    /// `col_dst += q · col_src`
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src] * q;
            self.data[i * self.cols + dst] += s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }
}

/// Row-major nested arrays; entries outside the `i64` range become strings.
impl Serialize for IntegerMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<serde_json::Value> = self.row(i).iter().map(crate::json::bigint).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// `U · A · V = D` with `U`, `V` unimodular and `d_1 | d_2 | …` on the diagonal of `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
}

impl SmithDecomposition {
    /// The diagonal entries `d_1, …, d_min(rows, cols)`, all non-negative.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    /// Recomputes `U·A·V` and compares with `D`; also checks the divisibility chain.
    pub fn verify(&self, a: &IntegerMatrix) -> bool {
        let Ok(uav) = self.u.mul(a).and_then(|m| m.mul(&self.v)) else {
            return false;
        };
        let diag = self.diagonal();
        let chain = diag.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            }
        });
        let off_diag_zero = (0..self.d.rows)
            .all(|i| (0..self.d.cols).all(|j| i == j || self.d.get(i, j).is_zero()));
        uav == self.d && chain && off_diag_zero && self.u.is_unimodular() && self.v.is_unimodular()
    }
}

struct SmithState {
    a: IntegerMatrix,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

impl SmithState {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_row(dst, src, q);
        self.u.add_row(dst, src, q);
        self.u_inv.add_col(src, dst, &-q);
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_col(dst, src, q);
        self.v.add_col(dst, src, q);
        self.v_inv.add_row(src, dst, &-q);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Clears row and column `t` outside the pivot, using the smallest entry as pivot.
    fn clear_cross(&mut self, t: usize) {
        loop {
            let mut done = true;
            for i in t + 1..self.a.rows {
                if self.a.get(i, t).is_zero() {
                    continue;
                }
                let q = self.a.get(i, t).div_floor(self.a.get(t, t));
                self.add_row(i, t, &-q);
                if !self.a.get(i, t).is_zero() {
                    self.swap_rows(i, t);
                    done = false;
                }
            }
            for j in t + 1..self.a.cols {
                if self.a.get(t, j).is_zero() {
                    continue;
                }
                let q = self.a.get(t, j).div_floor(self.a.get(t, t));
                self.add_col(j, t, &-q);
                if !self.a.get(t, j).is_zero() {
                    self.swap_cols(j, t);
                    done = false;
                }
            }
            if done {
                return;
            }
        }
    }
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows, a.cols);
    let mut st = SmithState {
        a: a.clone(),
        u: IntegerMatrix::identity(rows),
        u_inv: IntegerMatrix::identity(rows),
        v: IntegerMatrix::identity(cols),
        v_inv: IntegerMatrix::identity(cols),
    };
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = st.a.get(i, j);
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < st.a.get(bi, bj).abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break;
            };
            st.swap_rows(t, bi);
            st.swap_cols(t, bj);
            st.clear_cross(t);
            let pivot = st.a.get(t, t).clone();
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !st.a.get(i, j).is_multiple_of(&pivot)));
            match bad {
                Some(i) => st.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if st.a.get(t, t).is_negative() {
            st.negate_row(t);
        }
    }
    SmithDecomposition {
        u: st.u,
        u_inv: st.u_inv,
        d: st.a,
        v: st.v,
        v_inv: st.v_inv,
    }
}

/// Column-style Hermite normal form of the lattice spanned by the columns of `a`,
/// which must have full row rank. The result is square and lower triangular with
/// positive diagonal, and `0 ≤ h_ij < h_ii` for `j < i`.
pub fn hermite_normal_form(a: &IntegerMatrix) -> Result<IntegerMatrix> {
    let r = a.rows;
    let mut m = a.clone();
    for i in 0..r {
        // gather the gcd of row i (columns i..) into column i
        loop {
            let nz: Vec<usize> = (i..m.cols).filter(|&j| !m.get(i, j).is_zero()).collect();
            if nz.is_empty() {
                return Err(Error::InvalidInput(
                    "lattice generators do not have full rank".into(),
                ));
            }
            let p = *nz.iter().min_by_key(|&&j| m.get(i, j).abs()).unwrap();
            m.swap_cols(i, p);
            if nz.len() == 1 {
                break;
            }
            for j in i + 1..m.cols {
                if !m.get(i, j).is_zero() {
                    let q = m.get(i, j).div_floor(m.get(i, i));
                    m.add_col(j, i, &-q);
                }
            }
        }
        if m.get(i, i).is_negative() {
            m.negate_col(i);
        }
        for j in 0..i {
            let q = m.get(i, j).div_floor(m.get(i, i));
            m.add_col(j, i, &-q);
        }
    }
    let mut h = IntegerMatrix::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            h.set(i, j, m.get(i, j).clone());
        }
    }
    Ok(h)
}

/// Solves `H c = v` for a nonsingular lower triangular `H`, if an integer solution exists.
pub fn solve_lower_triangular(h: &IntegerMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = h.cols;
    let mut c: Vec<BigInt> = Vec::with_capacity(n);
    for i in 0..n {
        let mut rest = v[i].clone();
        for (j, cj) in c.iter().enumerate() {
            rest -= h.get(i, j) * cj;
        }
        let (q, r) = rest.div_rem(h.get(i, i));
        if !r.is_zero() {
            return None;
        }
        c.push(q);
    }
    for i in n..h.rows {
        let s: BigInt = (0..n).map(|j| h.get(i, j) * &c[j]).sum();
        if s != v[i] {
            return None;
        }
    }
    Some(c)
}

/// A sparse integer row, as `(column, value)` pairs.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Basis of the lattice `{x ∈ Z^dim : row_i · x ≡ 0 (mod m_i) for all i}`, where a
/// modulus of zero means exact vanishing. The basis is returned in Hermite form
/// when the lattice has full rank.
pub fn kernel_mod(dim: usize, rows: &[SparseRow], moduli: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut basis: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::one();
            e
        })
        .collect();
    for (row, m) in rows.iter().zip(moduli) {
        if row.is_empty() {
            continue;
        }
        let mut vals: Vec<BigInt> = basis
            .iter()
            .map(|b| row.iter().map(|(j, a)| a * &b[*j]).sum())
            .collect();
        if !m.is_zero() {
            for v in vals.iter_mut() {
                *v = v.mod_floor(m);
            }
        }
        let Some(p) = vals.iter().position(|v| !v.is_zero()) else {
            continue;
        };
        for j in p + 1..basis.len() {
            if vals[j].is_zero() {
                continue;
            }
            let eg = vals[p].extended_gcd(&vals[j]);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let (cp, cj) = (&vals[j] / &g, &vals[p] / &g);
            let (bp, bj) = (&basis[p], &basis[j]);
            let new_p: Vec<BigInt> = bp.iter().zip(bj).map(|(x, y)| &s * x + &t * y).collect();
            let new_j: Vec<BigInt> = bp.iter().zip(bj).map(|(x, y)| &cp * x - &cj * y).collect();
            basis[p] = new_p;
            basis[j] = new_j;
            vals[p] = g;
            vals[j] = BigInt::zero();
        }
        if m.is_zero() {
            basis.remove(p);
        } else {
            let k = m / vals[p].gcd(m);
            for x in basis[p].iter_mut() {
                *x *= &k;
            }
        }
        if basis.iter().flatten().any(|x| x.bits() > 96) {
            basis = echelon_basis(basis);
        }
    }
    echelon_basis(basis)
}

/// Reduced row echelon basis (row-style Hermite form) of the lattice spanned by `vecs`.
pub fn echelon_basis(mut vecs: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    vecs.retain(|v| v.iter().any(|x| !x.is_zero()));
    let dim = vecs.first().map_or(0, Vec::len);
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for c in 0..dim {
        let mut idx: Vec<usize> = (0..vecs.len()).filter(|&i| !vecs[i][c].is_zero()).collect();
        if idx.is_empty() {
            continue;
        }
        while idx.len() > 1 {
            let p = *idx.iter().min_by_key(|&&i| vecs[i][c].abs()).unwrap();
            for &i in &idx {
                if i != p {
                    let q = vecs[i][c].div_floor(&vecs[p][c]);
                    let pv = vecs[p].clone();
                    for (x, y) in vecs[i].iter_mut().zip(&pv) {
                        *x -= &q * y;
                    }
                }
            }
            idx.retain(|&i| !vecs[i][c].is_zero());
        }
        let mut piv = vecs.swap_remove(idx[0]);
        if piv[c].is_negative() {
            for x in piv.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        for row in out.iter_mut() {
            let q = row[c].div_floor(&piv[c]);
            if !q.is_zero() {
                for (x, y) in row.iter_mut().zip(&piv) {
                    *x -= &q * y;
                }
            }
        }
        out.push(piv);
        pivots.push(c);
        vecs.retain(|v| v.iter().any(|x| !x.is_zero()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows).unwrap()
    }

    fn diag(d: &SmithDecomposition) -> Vec<i64> {
        d.diagonal()
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    #[test]
    fn smith_examples() {
        let id = IntegerMatrix::identity(3);
        assert_eq!(smith_normal_form(&id).d, id);
        let a = m(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&a);
        assert_eq!(diag(&s), vec![1, 6]);
        assert!(s.verify(&a));
        let b = m(&[vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&b);
        assert_eq!(diag(&s), vec![2, 4]);
        assert!(s.verify(&b));
    }

    #[test]
    fn smith_rectangular_and_inverses() {
        let a = m(&[vec![4, 6, 2], vec![8, 2, 0], vec![0, 0, 0], vec![3, 9, 12]]);
        let s = smith_normal_form(&a);
        assert!(s.verify(&a));
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntegerMatrix::identity(4));
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntegerMatrix::identity(3));
    }

    #[test]
    fn determinant() {
        assert_eq!(
            m(&[vec![2, 4], vec![6, 8]]).det().unwrap(),
            BigInt::from(-8)
        );
        assert_eq!(
            m(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 5]])
                .det()
                .unwrap(),
            BigInt::from(-5)
        );
    }

    #[test]
    fn hermite_form() {
        let a = m(&[vec![2, 0, 4], vec![1, 3, 5]]);
        let h = hermite_normal_form(&a).unwrap();
        assert_eq!(h, m(&[vec![2, 0], vec![1, 3]]));
        let c = solve_lower_triangular(&h, &[BigInt::from(4), BigInt::from(5)]).unwrap();
        assert_eq!(c, vec![BigInt::from(2), BigInt::from(1)]);
        assert!(solve_lower_triangular(&h, &[BigInt::from(1), BigInt::from(0)]).is_none());
    }

    #[test]
    fn kernels() {
        // x + 2y ≡ 0 mod 4 in Z^2
        let rows = vec![vec![(0, BigInt::from(1)), (1, BigInt::from(2))]];
        let basis: Vec<Vec<BigInt>> = kernel_mod(2, &rows, &[BigInt::from(4)]);
        let h = IntegerMatrix::from_columns(2, &basis);
        assert_eq!(h.det().unwrap().abs(), BigInt::from(4));
        for b in &basis {
            assert!((&b[0] + &b[1] * BigInt::from(2)).is_multiple_of(&BigInt::from(4)));
        }
        // x - y = 0 exactly
        let rows = vec![vec![(0, BigInt::from(1)), (1, BigInt::from(-1))]];
        let basis = kernel_mod(2, &rows, &[BigInt::zero()]);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0][0], basis[0][1]);
    }
}
