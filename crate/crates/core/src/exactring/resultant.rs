//! Sylvester resultants with entries in `A[x]`, evaluated by Bareiss elimination.
//!
//! Polynomials in `y` are given as ascending coefficient lists whose entries are
//! polynomials in `x`. The scalar resultant is the special case of constant entries.

use super::poly::Polynomial;
use super::ring::RingDescriptor;
use crate::error::{Error, Result};

/// `det Syl_y(f, g)` with the `deg_y g` shifted rows of `f` on top. Equals
/// `lc(f)^{deg g} ∏_{f(α)=0} g(x, α)`.
pub fn sylvester_determinant(
    ring: &RingDescriptor,
    f: &[Polynomial],
    g: &[Polynomial],
) -> Result<Polynomial> {
    if f.is_empty() || g.is_empty() || f.last().unwrap().is_zero() || g.last().unwrap().is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.len() - 1;
    let m = g.len() - 1;
    let size = n + m;
    if size == 0 {
        return Ok(Polynomial::one(ring));
    }
    let zero = Polynomial::zero(ring);
    let mut mat = vec![vec![zero.clone(); size]; size];
    for r in 0..m {
        for (k, c) in f.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..n {
        for (k, c) in g.iter().rev().enumerate() {
            mat[m + r][r + k] = c.clone();
        }
    }
    bareiss_determinant(ring, mat)
}

/// Fraction-free Gaussian elimination; every division is exact over a domain.
pub fn bareiss_determinant(
    ring: &RingDescriptor,
    mut mat: Vec<Vec<Polynomial>>,
) -> Result<Polynomial> {
    let size = mat.len();
    if size == 0 {
        return Ok(Polynomial::one(ring));
    }
    let mut negate = false;
    let mut prev = Polynomial::one(ring);
    for k in 0..size {
        if mat[k][k].is_zero() {
            match (k + 1..size).find(|&i| !mat[i][k].is_zero()) {
                Some(i) => {
                    mat.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(Polynomial::zero(ring)),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = mat[k][k]
                    .mul(&mat[i][j])?
                    .sub(&mat[i][k].mul(&mat[k][j])?)?;
                mat[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    Ok(if negate { det.neg() } else { det })
}
