//! Truncated big Witt vectors `W_N(A)`.
//!
//! A vector is the power series `1 + a_1 t + … + a_N t^N` modulo `t^{N+1}`. Witt
//! addition is series multiplication; Witt multiplication is determined by
//! `(1 - at) ⊙ (1 - bt) = 1 - abt` and evaluated through the universal integer
//! polynomials of [`UniversalWittPolynomials`]. Ghost components follow the
//! generating function `Σ gh_n t^n = -t f'/f`, so that `ghost([a]) = (a, a², …)`.

mod universal;

pub use universal::{IntPoly, UniversalWittPolynomials};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactring::{series_inverse, Elem, Polynomial, RingDescriptor};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedWittVector {
    ring: RingDescriptor,
    tail: Vec<Elem>,
}

/// Ghost components `(gh_1, …, gh_N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GhostVector {
    ring: RingDescriptor,
    components: Vec<Elem>,
}

impl GhostVector {
    pub fn new(ring: RingDescriptor, components: Vec<Elem>) -> Result<Self> {
        for c in &components {
            ring.check(c)?;
        }
        Ok(GhostVector { ring, components })
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn depth(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Elem] {
        &self.components
    }

    fn zip(&self, other: &Self, f: impl Fn(&Elem, &Elem) -> Elem) -> Result<Self> {
        self.ring.same(&other.ring)?;
        if self.depth() != other.depth() {
            return Err(Error::DepthMismatch(self.depth(), other.depth()));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(GhostVector {
            ring: self.ring.clone(),
            components,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| self.ring.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| self.ring.sub(a, b))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| self.ring.mul(a, b))
    }
}

impl TruncatedWittVector {
    /// Builds `1 + Σ tail_i t^i`; the depth is the tail length.
    pub fn new(ring: RingDescriptor, tail: Vec<Elem>) -> Result<Self> {
        if tail.is_empty() {
            return Err(Error::InvalidInput(
                "truncation depth must be at least 1".into(),
            ));
        }
        for c in &tail {
            ring.check(c)?;
        }
        Ok(TruncatedWittVector { ring, tail })
    }

    pub fn from_ints(ring: &RingDescriptor, tail: &[i64]) -> Result<Self> {
        Self::new(
            ring.clone(),
            tail.iter().map(|&c| ring.from_int(c)).collect(),
        )
    }

    /// Reads a series with constant term 1, truncating it at `t^depth`.
    pub fn from_series(series: &Polynomial, depth: usize) -> Result<Self> {
        let ring = series.ring();
        if !ring.is_one(&series.constant_term()) {
            return Err(Error::InvalidInput(
                "Witt vector series must have constant term 1".into(),
            ));
        }
        Self::new(ring.clone(), (1..=depth).map(|i| series.coeff(i)).collect())
    }

    /// The zero vector, i.e. the series `1`.
    pub fn zero(ring: &RingDescriptor, depth: usize) -> Result<Self> {
        Self::new(ring.clone(), vec![ring.zero(); depth])
    }

    /// The unit `[1] = 1 - t`.
    pub fn one(ring: &RingDescriptor, depth: usize) -> Result<Self> {
        Self::teichmuller(&ring.one(), ring, depth)
    }

    /// `[a] = 1 - at`.
    pub fn teichmuller(a: &Elem, ring: &RingDescriptor, depth: usize) -> Result<Self> {
        ring.check(a)?;
        let mut tail = vec![ring.zero(); depth];
        if let Some(first) = tail.first_mut() {
            *first = ring.neg(a);
        }
        Self::new(ring.clone(), tail)
    }

    /// The Witt integer `n = [1] ⊕ … ⊕ [1]`, i.e. `(1 - t)^n`.
    pub fn from_integer(n: i64, ring: &RingDescriptor, depth: usize) -> Result<Self> {
        let base = Self::one(ring, depth)?;
        let unit = if n < 0 { base.neg() } else { base };
        let mut acc = Self::zero(ring, depth)?;
        for _ in 0..n.unsigned_abs() {
            acc = acc.add(&unit)?;
        }
        Ok(acc)
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn depth(&self) -> usize {
        self.tail.len()
    }

    pub fn tail(&self) -> &[Elem] {
        &self.tail
    }

    pub fn is_zero(&self) -> bool {
        self.tail.iter().all(|c| self.ring.is_zero(c))
    }

    /// The represented series `1 + a_1 t + … + a_N t^N`.
    pub fn to_series(&self) -> Polynomial {
        let mut coeffs = vec![self.ring.one()];
        coeffs.extend(self.tail.iter().cloned());
        Polynomial::from_raw(self.ring.clone(), coeffs)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        self.ring.same(&other.ring)?;
        if self.depth() != other.depth() {
            return Err(Error::DepthMismatch(self.depth(), other.depth()));
        }
        Ok(())
    }

    /// Witt addition: the truncated series product.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let prod = self
            .to_series()
            .mul_truncated(&other.to_series(), self.depth())?;
        Self::from_series(&prod, self.depth())
    }

    /// Witt negation: the truncated series inverse.
    pub fn neg(&self) -> Self {
        let inv = series_inverse(&self.to_series(), self.depth()).expect("constant term is 1");
        Self::from_series(&inv, self.depth()).expect("constant term is 1")
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Witt multiplication through the universal polynomials. Over rings containing
    /// `Q` the result is additionally checked against the ghost route.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let polys = UniversalWittPolynomials::get(self.depth())?;
        let tail = polys.eval_mul(&self.ring, &self.tail, &other.tail);
        let out = TruncatedWittVector {
            ring: self.ring.clone(),
            tail,
        };
        if self.ring.contains_rationals() {
            let via_ghost = Self::ghost_inverse(&self.ghost().mul(&other.ghost())?)?;
            if via_ghost != out {
                return Err(Error::CrossCheck(
                    "witt_mul disagrees with the ghost route".into(),
                ));
            }
        }
        Ok(out)
    }

    /// Ghost components by the recursion `gh_n = -n a_n - Σ_{j<n} gh_j a_{n-j}`.
    pub fn ghost(&self) -> GhostVector {
        let r = &self.ring;
        let mut gh: Vec<Elem> = Vec::with_capacity(self.depth());
        for n in 1..=self.depth() {
            let mut acc = r.mul_int(&self.tail[n - 1], &BigInt::from(n));
            for j in 1..n {
                acc = r.add(&acc, &r.mul(&gh[j - 1], &self.tail[n - j - 1]));
            }
            gh.push(r.neg(&acc));
        }
        GhostVector {
            ring: r.clone(),
            components: gh,
        }
    }

    /// Inverse of [`ghost`](Self::ghost); needs division by every `n ≤ N`.
    pub fn ghost_inverse(g: &GhostVector) -> Result<Self> {
        let r = &g.ring;
        if !r.contains_rationals() {
            return Err(Error::Unsupported {
                op: "ghost_inverse",
                ring: r.to_string(),
            });
        }
        let mut tail: Vec<Elem> = Vec::with_capacity(g.depth());
        for n in 1..=g.depth() {
            let mut acc = g.components[n - 1].clone();
            for j in 1..n {
                acc = r.add(&acc, &r.mul(&g.components[j - 1], &tail[n - j - 1]));
            }
            tail.push(r.div_exact(&acc, &r.from_int(-(n as i64)))?);
        }
        Self::new(r.clone(), tail)
    }

    /// Frobenius `F_m: W_N → W_{⌊N/m⌋}`, with `ghost(F_m u)_n = ghost(u)_{mn}`.
    pub fn frobenius(&self, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput(
                "Frobenius index must be positive".into(),
            ));
        }
        let depth = self.depth() / m;
        if depth == 0 {
            return Err(Error::TruncationTooShallow {
                depth: self.depth(),
                m,
            });
        }
        if m == 1 {
            return Ok(self.clone());
        }
        let polys = UniversalWittPolynomials::get(self.depth())?;
        let tail = polys
            .eval_frob(&self.ring, m, &self.tail)
            .expect("2 <= m <= N");
        let out = TruncatedWittVector {
            ring: self.ring.clone(),
            tail,
        };
        if self.ring.contains_rationals() {
            let gh = self.ghost();
            let shifted = GhostVector {
                ring: self.ring.clone(),
                components: (1..=depth)
                    .map(|n| gh.components[m * n - 1].clone())
                    .collect(),
            };
            if Self::ghost_inverse(&shifted)? != out {
                return Err(Error::CrossCheck(
                    "frobenius disagrees with the ghost route".into(),
                ));
            }
        }
        Ok(out)
    }

    /// Verschiebung `V_m`: the substitution `t ↦ t^m`, truncated at the same depth.
    pub fn verschiebung(&self, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput(
                "Verschiebung index must be positive".into(),
            ));
        }
        let series = self.to_series().substitute_power(m);
        Self::from_series(&series, self.depth())
    }

    /// Re-truncates to a smaller depth.
    pub fn truncate(&self, depth: usize) -> Result<Self> {
        if depth > self.depth() {
            return Err(Error::DepthMismatch(depth, self.depth()));
        }
        Self::new(self.ring.clone(), self.tail[..depth].to_vec())
    }
}

pub fn witt_zero(ring: &RingDescriptor, depth: usize) -> Result<TruncatedWittVector> {
    TruncatedWittVector::zero(ring, depth)
}

pub fn witt_one(ring: &RingDescriptor, depth: usize) -> Result<TruncatedWittVector> {
    TruncatedWittVector::one(ring, depth)
}

pub fn teichmuller(a: &Elem, ring: &RingDescriptor, depth: usize) -> Result<TruncatedWittVector> {
    TruncatedWittVector::teichmuller(a, ring, depth)
}

pub fn witt_add(u: &TruncatedWittVector, v: &TruncatedWittVector) -> Result<TruncatedWittVector> {
    u.add(v)
}

pub fn witt_neg(u: &TruncatedWittVector) -> TruncatedWittVector {
    u.neg()
}

pub fn witt_mul(u: &TruncatedWittVector, v: &TruncatedWittVector) -> Result<TruncatedWittVector> {
    u.mul(v)
}

pub fn ghost(u: &TruncatedWittVector) -> GhostVector {
    u.ghost()
}

pub fn ghost_inverse(g: &GhostVector) -> Result<TruncatedWittVector> {
    TruncatedWittVector::ghost_inverse(g)
}

pub fn build_universal_polys(depth: usize) -> Result<std::sync::Arc<UniversalWittPolynomials>> {
    UniversalWittPolynomials::get(depth)
}

pub fn frobenius(m: usize, u: &TruncatedWittVector) -> Result<TruncatedWittVector> {
    u.frobenius(m)
}

pub fn verschiebung(m: usize, u: &TruncatedWittVector) -> Result<TruncatedWittVector> {
    u.verschiebung(m)
}
