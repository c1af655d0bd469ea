//! Dense univariate polynomials over a [`RingDescriptor`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::ring::{Elem, RingDescriptor};
use crate::error::{Error, Result};

/// A polynomial with ascending coefficients; trailing zeros are always stripped,
/// so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: RingDescriptor,
    coeffs: Vec<Elem>,
}

impl Polynomial {
    pub fn new(ring: RingDescriptor, coeffs: Vec<Elem>) -> Result<Self> {
        for c in &coeffs {
            ring.check(c)?;
        }
        Ok(Self::from_raw(ring, coeffs))
    }

    /// Skips membership checks; callers guarantee the coefficients live in `ring`.
    pub(crate) fn from_raw(ring: RingDescriptor, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        Polynomial { ring, coeffs }
    }

    pub fn from_ints(ring: &RingDescriptor, coeffs: &[i64]) -> Self {
        Self::from_raw(
            ring.clone(),
            coeffs.iter().map(|&c| ring.from_int(c)).collect(),
        )
    }

    pub fn from_bigints(ring: &RingDescriptor, coeffs: &[BigInt]) -> Self {
        Self::from_raw(
            ring.clone(),
            coeffs.iter().map(|c| ring.from_bigint(c)).collect(),
        )
    }

    pub fn zero(ring: &RingDescriptor) -> Self {
        Polynomial {
            ring: ring.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(ring: &RingDescriptor) -> Self {
        Self::constant(ring, ring.one())
    }

    pub fn constant(ring: &RingDescriptor, c: Elem) -> Self {
        Self::from_raw(ring.clone(), vec![c])
    }

    /// `c · t^k`.
    pub fn monomial(ring: &RingDescriptor, c: Elem, k: usize) -> Self {
        let mut coeffs = vec![ring.zero(); k];
        coeffs.push(c);
        Self::from_raw(ring.clone(), coeffs)
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn lead(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> Elem {
        self.coeff(0)
    }

    pub(crate) fn same_ring(&self, other: &Self) -> Result<()> {
        self.ring.same(&other.ring)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.ring.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Ok(Self::from_raw(self.ring.clone(), coeffs))
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        Self::from_raw(self.ring.clone(), coeffs)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let bound = self.coeffs.len() + other.coeffs.len() - 2;
        self.mul_truncated(other, bound)
    }

    /// Product with every term of degree `> bound` dropped.
    pub fn mul_truncated(&self, other: &Self, bound: usize) -> Result<Self> {
        self.same_ring(other)?;
        let r = &self.ring;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(r));
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(bound + 1);
        let mut out = vec![r.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = r.add(&out[i + j], &r.mul(a, b));
            }
        }
        Ok(Self::from_raw(r.clone(), out))
    }

    pub fn scale(&self, c: &Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(a, c)).collect();
        Self::from_raw(self.ring.clone(), coeffs)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Drops all terms of degree `> bound`.
    pub fn truncate(&self, bound: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(bound + 1);
        Self::from_raw(self.ring.clone(), coeffs)
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let r = &self.ring;
        self.coeffs
            .iter()
            .rev()
            .fold(r.zero(), |acc, c| r.add(&r.mul(&acc, x), c))
    }

    /// `t^d · f(1/t)`, i.e. the coefficient list reversed in a frame of width `d + 1`.
    pub fn reversed(&self, d: usize) -> Self {
        let coeffs = (0..=d).map(|i| self.coeff(d - i)).collect();
        Self::from_raw(self.ring.clone(), coeffs)
    }

    /// Substitution `t ↦ t^m`.
    pub fn substitute_power(&self, m: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.ring.zero(); (self.coeffs.len() - 1) * m + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m] = c.clone();
        }
        Self::from_raw(self.ring.clone(), coeffs)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.ring.mul_int(c, &BigInt::from(i)))
            .collect();
        Self::from_raw(self.ring.clone(), coeffs)
    }

    /// Maps every coefficient into another ring (the coefficients must be integers
    /// in the source, which is how base change from `Z` is used).
    pub fn map_integers(&self, target: &RingDescriptor) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| match c {
                Elem::Int(n) if self.ring == RingDescriptor::Integers => Ok(target.from_bigint(n)),
                _ => Err(Error::Unsupported {
                    op: "base_change",
                    ring: self.ring.to_string(),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_raw(target.clone(), coeffs))
    }

    /// Long division by a divisor whose leading coefficient divides every
    /// intermediate leading term; fails unless the remainder vanishes.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.same_ring(divisor)?;
        let r = &self.ring;
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        if self.is_zero() {
            return Ok(self.clone());
        }
        let ds = self.degree().unwrap();
        if ds < dd {
            return Err(Error::InvalidInput("inexact polynomial division".into()));
        }
        let lc = divisor.lead().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![r.zero(); ds - dd + 1];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dd];
            if r.is_zero(top) {
                continue;
            }
            let q = r.div_exact(top, lc)?;
            for (j, dj) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = r.sub(&rem[i + j], &r.mul(&q, dj));
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !r.is_zero(c)) {
            return Err(Error::InvalidInput("inexact polynomial division".into()));
        }
        Ok(Self::from_raw(r.clone(), quot))
    }

    /// Division with remainder by a divisor with invertible leading coefficient.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.same_ring(divisor)?;
        let r = &self.ring;
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lc_inv = r
            .inv(divisor.lead().unwrap())
            .ok_or_else(|| Error::NotAUnit {
                ring: r.to_string(),
                elem: r.format(divisor.lead().unwrap()),
            })?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(r), self.clone()));
        }
        let mut quot = vec![r.zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = r.mul(&rem[i + dd], &lc_inv);
            if r.is_zero(&q) {
                continue;
            }
            for (j, dj) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = r.sub(&rem[i + j], &r.mul(&q, dj));
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        Ok((
            Self::from_raw(r.clone(), quot),
            Self::from_raw(r.clone(), rem),
        ))
    }

    /// Exact division by a polynomial with unit constant term, performed as a power
    /// series quotient from the low end.
    pub fn div_exact_low(&self, divisor: &Self) -> Result<Self> {
        self.same_ring(divisor)?;
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let Some(ds) = self.degree() else {
            return Ok(self.clone());
        };
        if ds < dd {
            return Err(Error::InvalidInput("inexact polynomial division".into()));
        }
        let q = self.mul_truncated(&series_inverse(divisor, ds - dd)?, ds - dd)?;
        if &q.mul(divisor)? != self {
            return Err(Error::InvalidInput("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Content (gcd of coefficients) of an integer polynomial, with the sign of the lead.
    fn int_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c.as_int().expect("integer coefficients"));
        }
        if self
            .lead()
            .and_then(Elem::as_int)
            .is_some_and(|l| l.is_negative())
        {
            g = -g;
        }
        g
    }

    fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.int_content();
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| Elem::Int(x.as_int().unwrap() / &c))
            .collect();
        Self::from_raw(self.ring.clone(), coeffs)
    }
}

/// `f · g` with every term of degree `> bound` removed.
pub fn poly_mul_truncated(f: &Polynomial, g: &Polynomial, bound: usize) -> Result<Polynomial> {
    f.mul_truncated(g, bound)
}

/// The power series inverse of `f` modulo `t^{bound+1}`; `f(0)` must be a unit.
pub fn series_inverse(f: &Polynomial, bound: usize) -> Result<Polynomial> {
    let r = f.ring();
    let c0 = f.constant_term();
    let c0_inv = r.inv(&c0).ok_or_else(|| Error::NotAUnit {
        ring: r.to_string(),
        elem: r.format(&c0),
    })?;
    let mut g = Vec::with_capacity(bound + 1);
    g.push(c0_inv.clone());
    for n in 1..=bound {
        // f_0 g_n = -Σ_{k=1}^{n} f_k g_{n-k}
        let mut acc = r.zero();
        for k in 1..=n.min(f.coeffs().len().saturating_sub(1)) {
            acc = r.add(&acc, &r.mul(&f.coeffs()[k], &g[n - k]));
        }
        g.push(r.neg(&r.mul(&acc, &c0_inv)));
    }
    Ok(Polynomial::from_raw(r.clone(), g))
}

/// Greatest common divisor over a field or over the integers.
///
/// The result is normalized to constant term 1 when its constant term is a unit,
/// otherwise to a monic (fields) or primitive with positive leading coefficient
/// (integers) polynomial. `gcd(0, 0) = 0`.
pub fn poly_gcd(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.same_ring(g)?;
    let r = f.ring();
    let g = if *r == RingDescriptor::Integers {
        int_gcd(f, g)
    } else if r.is_field() {
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let (_, rem) = a.div_rem(&b)?;
            a = b;
            b = rem;
        }
        a
    } else {
        return Err(Error::Unsupported {
            op: "poly_gcd",
            ring: r.to_string(),
        });
    };
    Ok(normalize_gcd(g))
}

fn int_gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    let content = f.int_content().gcd(&g.int_content());
    let (mut a, mut b) = (f.primitive_part(), g.primitive_part());
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    // primitive pseudo-remainder sequence
    while !b.is_zero() {
        let rem = pseudo_rem(&a, &b);
        a = b;
        b = rem.primitive_part();
    }
    a.primitive_part().scale(&Elem::Int(content))
}

fn pseudo_rem(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let r = a.ring();
    let db = b.degree().unwrap();
    let lc = b.lead().unwrap().clone();
    let mut rem = a.clone();
    while let Some(dr) = rem.degree() {
        if dr < db {
            break;
        }
        let top = rem.lead().unwrap().clone();
        let shifted = Polynomial::monomial(r, top, dr - db).mul(b).unwrap();
        rem = rem.scale(&lc).sub(&shifted).unwrap();
    }
    rem
}

fn normalize_gcd(g: Polynomial) -> Polynomial {
    let r = g.ring().clone();
    if g.is_zero() {
        return g;
    }
    let c0 = g.constant_term();
    if let Some(inv) = r.inv(&c0) {
        return g.scale(&inv);
    }
    if r == RingDescriptor::Integers {
        g.primitive_part()
    } else {
        let inv = r.inv(g.lead().unwrap()).expect("field");
        g.scale(&inv)
    }
}

/// Resultant `Res(f, g) = lc(f)^{deg g} · ∏_{f(α)=0} g(α)`, i.e. the determinant of the
/// Sylvester matrix with the rows of `f` on top, evaluated by fraction-free elimination.
pub fn poly_resultant(f: &Polynomial, g: &Polynomial) -> Result<Elem> {
    f.same_ring(g)?;
    let r = f.ring();
    if !r.is_integral_domain() {
        return Err(Error::Unsupported {
            op: "poly_resultant",
            ring: r.to_string(),
        });
    }
    let (Some(_), Some(_)) = (f.degree(), g.degree()) else {
        return Err(Error::ZeroPolynomial);
    };
    let lift = |p: &Polynomial| -> Vec<Polynomial> {
        p.coeffs()
            .iter()
            .map(|c| Polynomial::constant(r, c.clone()))
            .collect()
    };
    let det = super::resultant::sylvester_determinant(r, &lift(f), &lift(g))?;
    Ok(det.constant_term())
}
