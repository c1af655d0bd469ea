//! Rational Witt vectors: quotients `num/den` of polynomials with constant term 1.
//!
//! Addition multiplies fractions. Multiplication pairs roots: for
//! `f = ∏(1 - α_i t)` and `g = ∏(1 - γ_k t)` the product is `∏(1 - α_i γ_k t)`,
//! obtained without factoring as a resultant in `y` of the reversed `f` against
//! `Σ_j g_j x^{m-j} y^j`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactring::{
    is_prime, poly_gcd, resultant::sylvester_determinant, series_inverse, Elem, Polynomial,
    RingDescriptor,
};
use crate::wittvec::{GhostVector, TruncatedWittVector};

/// Depth at which exact products are compared with the truncated ones.
pub const CROSS_CHECK_DEPTH: usize = 12;

#[derive(Clone, Debug)]
pub struct RationalWittVector {
    num: Polynomial,
    den: Polynomial,
}

impl PartialEq for RationalWittVector {
    fn eq(&self, other: &Self) -> bool {
        if self.ring() != other.ring() {
            return false;
        }
        if self.num == other.num && self.den == other.den {
            return true;
        }
        let l = self.num.mul(&other.den).expect("same ring");
        let r = other.num.mul(&self.den).expect("same ring");
        l == r
    }
}

impl Eq for RationalWittVector {}

impl fmt::Display for RationalWittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::exactring::text::format_fraction(
            &self.num, &self.den,
        ))
    }
}

fn unit_constant(p: &Polynomial) -> Result<Elem> {
    let r = p.ring();
    let c0 = p.constant_term();
    r.inv(&c0).ok_or_else(|| Error::NotAUnit {
        ring: r.to_string(),
        elem: r.format(&c0),
    })
}

impl RationalWittVector {
    /// Same as [`wr_normalize`].
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        wr_normalize(&num, &den)
    }

    pub fn zero(ring: &RingDescriptor) -> Self {
        RationalWittVector {
            num: Polynomial::one(ring),
            den: Polynomial::one(ring),
        }
    }

    /// `[1] = 1 - t`.
    pub fn one(ring: &RingDescriptor) -> Self {
        Self::teichmuller(&ring.one(), ring).expect("1 lies in every ring")
    }

    /// `[a] = 1 - at`.
    pub fn teichmuller(a: &Elem, ring: &RingDescriptor) -> Result<Self> {
        ring.check(a)?;
        let num = Polynomial::from_raw(ring.clone(), vec![ring.one(), ring.neg(a)]);
        Ok(RationalWittVector {
            num,
            den: Polynomial::one(ring),
        })
    }

    pub fn ring(&self) -> &RingDescriptor {
        self.num.ring()
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == self.den
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        wr_add(self, other)
    }

    pub fn neg(&self) -> Self {
        wr_neg(self)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        wr_add(self, &wr_neg(other))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        wr_mul(self, other)
    }

    /// `n·u = u ⊕ … ⊕ u`, with `(-n)·u = n·(⊖u)`.
    pub fn scalar(&self, n: i64) -> Self {
        let base = if n < 0 { self.neg() } else { self.clone() };
        let e = n.unsigned_abs();
        wr_normalize(&base.num.pow(e), &base.den.pow(e)).expect("constant terms stay 1")
    }

    pub fn ghost(&self, depth: usize) -> GhostVector {
        wr_ghost(self, depth)
    }

    pub fn embed(&self, depth: usize) -> Result<TruncatedWittVector> {
        wr_embed_truncated(self, depth)
    }
}

/// Rescales both polynomials to constant term 1 and cancels their gcd where the
/// ring supports one.
pub fn wr_normalize(p: &Polynomial, q: &Polynomial) -> Result<RationalWittVector> {
    p.ring().same(q.ring())?;
    let num = p.scale(&unit_constant(p)?);
    let den = q.scale(&unit_constant(q)?);
    let ring = num.ring();
    if !(ring.is_field() || *ring == RingDescriptor::Integers) {
        return Ok(RationalWittVector { num, den });
    }
    let g = poly_gcd(&num, &den)?;
    if g.degree() == Some(0) {
        return Ok(RationalWittVector { num, den });
    }
    let num = num.div_exact(&g)?;
    let den = den.div_exact(&g)?;
    let (num, den) = (
        num.scale(&unit_constant(&num)?),
        den.scale(&unit_constant(&den)?),
    );
    Ok(RationalWittVector { num, den })
}

pub fn wr_add(u: &RationalWittVector, v: &RationalWittVector) -> Result<RationalWittVector> {
    u.ring().same(v.ring())?;
    wr_normalize(&u.num.mul(&v.num)?, &u.den.mul(&v.den)?)
}

pub fn wr_neg(u: &RationalWittVector) -> RationalWittVector {
    RationalWittVector {
        num: u.den.clone(),
        den: u.num.clone(),
    }
}

fn require_exact_ring(op: &'static str, ring: &RingDescriptor) -> Result<()> {
    if ring.is_integral_domain() && ring.is_integrally_closed() {
        Ok(())
    } else {
        Err(Error::Unsupported {
            op,
            ring: ring.to_string(),
        })
    }
}

/// Reverses `h*` back to a series and forces its constant term to 1.
fn from_reversed(h_star: &Polynomial, width: usize) -> Result<Polynomial> {
    let h = h_star.reversed(width);
    Ok(h.scale(&unit_constant(&h)?))
}

fn check_constant_one(p: &Polynomial) -> Result<()> {
    let r = p.ring();
    if r.is_one(&p.constant_term()) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "constant term of {} must be 1",
            crate::exactring::text::format_poly(p)
        )))
    }
}

/// The polynomial `∏(1 - α_i γ_k t)` for `f = ∏(1 - α_i t)` and `g = ∏(1 - γ_k t)`.
pub fn poly_witt_mul(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.same_ring(g)?;
    let ring = f.ring();
    require_exact_ring("poly_witt_mul", ring)?;
    check_constant_one(f)?;
    check_constant_one(g)?;
    let n = f.degree().unwrap_or(0);
    let m = g.degree().unwrap_or(0);
    if n == 0 || m == 0 {
        return Ok(Polynomial::one(ring));
    }
    let f_star: Vec<Polynomial> = f
        .reversed(n)
        .coeffs()
        .iter()
        .map(|c| Polynomial::constant(ring, c.clone()))
        .collect();
    // G(x, y) = Σ_j g_j x^{m-j} y^j
    let big_g: Vec<Polynomial> = (0..=m)
        .map(|j| Polynomial::monomial(ring, g.coeff(j), m - j))
        .collect();
    let h_star = sylvester_determinant(ring, &f_star, &big_g)?;
    from_reversed(&h_star, n * m)
}

/// The polynomial `∏(1 - α_i^k t)` for `f = ∏(1 - α_i t)`.
fn poly_power_roots(f: &Polynomial, k: usize) -> Result<Polynomial> {
    let ring = f.ring();
    let n = f.degree().unwrap_or(0);
    if n == 0 || k == 1 {
        return Ok(f.clone());
    }
    let f_star: Vec<Polynomial> = f
        .reversed(n)
        .coeffs()
        .iter()
        .map(|c| Polynomial::constant(ring, c.clone()))
        .collect();
    // x - y^k
    let mut rel = vec![Polynomial::zero(ring); k + 1];
    rel[0] = Polynomial::monomial(ring, ring.one(), 1);
    rel[k] = Polynomial::constant(ring, ring.from_int(-1));
    let h_star = sylvester_determinant(ring, &f_star, &rel)?;
    from_reversed(&h_star, n)
}

/// Exact product over integrally closed domains, extended bilinearly to fractions.
/// The result is compared with the truncated product at depth
/// [`CROSS_CHECK_DEPTH`].
pub fn wr_mul(u: &RationalWittVector, v: &RationalWittVector) -> Result<RationalWittVector> {
    u.ring().same(v.ring())?;
    require_exact_ring("wr_mul", u.ring())?;
    let num = poly_witt_mul(&u.num, &v.num)?.mul(&poly_witt_mul(&u.den, &v.den)?)?;
    let den = poly_witt_mul(&u.num, &v.den)?.mul(&poly_witt_mul(&u.den, &v.num)?)?;
    let out = wr_normalize(&num, &den)?;
    let expect = u
        .embed(CROSS_CHECK_DEPTH)?
        .mul(&v.embed(CROSS_CHECK_DEPTH)?)?;
    if out.embed(CROSS_CHECK_DEPTH)? != expect {
        return Err(Error::CrossCheck(
            "wr_mul disagrees with the truncated product".into(),
        ));
    }
    Ok(out)
}

/// Ghost components up to `depth`: power sums of the numerator roots minus those
/// of the denominator roots.
pub fn wr_ghost(u: &RationalWittVector, depth: usize) -> GhostVector {
    let part = |p: &Polynomial| {
        TruncatedWittVector::from_series(p, depth)
            .expect("constant term 1")
            .ghost()
    };
    part(&u.num)
        .sub(&part(&u.den))
        .expect("same ring and depth")
}

/// Frobenius `F_m`: every root `α` goes to `α^m`.
pub fn wr_frobenius(m: usize, u: &RationalWittVector) -> Result<RationalWittVector> {
    if m == 0 {
        return Err(Error::InvalidInput(
            "Frobenius index must be positive".into(),
        ));
    }
    require_exact_ring("wr_frobenius", u.ring())?;
    wr_normalize(&poly_power_roots(&u.num, m)?, &poly_power_roots(&u.den, m)?)
}

/// Verschiebung `V_m`: the substitution `t ↦ t^m`.
pub fn wr_verschiebung(m: usize, u: &RationalWittVector) -> Result<RationalWittVector> {
    if m == 0 {
        return Err(Error::InvalidInput(
            "Verschiebung index must be positive".into(),
        ));
    }
    Ok(RationalWittVector {
        num: u.num.substitute_power(m),
        den: u.den.substitute_power(m),
    })
}

/// `Φ_p = 1 + t + … + t^{p-1}` over the integers.
pub fn phi_p(p: u64) -> Result<RationalWittVector> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let z = RingDescriptor::Integers;
    let num = Polynomial::from_ints(&z, &vec![1; p as usize]);
    Ok(RationalWittVector {
        num,
        den: Polynomial::one(&z),
    })
}

/// Ghost vector of `Φ_p ⊖ (p-1)·[1]` to the given depth. Its components are
/// `0` at multiples of `p` and `-p` elsewhere.
pub fn phi_p_minus_scalar_check(p: u64, depth: usize) -> Result<GhostVector> {
    let phi = phi_p(p)?;
    let one = RationalWittVector::one(&RingDescriptor::Integers);
    let diff = phi.sub(&one.scalar(p as i64 - 1))?;
    Ok(diff.ghost(depth))
}

/// `num · den^{-1}` truncated to a Witt vector of the given depth.
pub fn wr_embed_truncated(u: &RationalWittVector, depth: usize) -> Result<TruncatedWittVector> {
    let inv = series_inverse(&u.den, depth)?;
    let series = u.num.mul_truncated(&inv, depth)?;
    TruncatedWittVector::from_series(&series, depth)
}

/// Base change of an integral rational Witt vector into another ring.
pub fn base_change(u: &RationalWittVector, target: &RingDescriptor) -> Result<RationalWittVector> {
    wr_normalize(&u.num.map_integers(target)?, &u.den.map_integers(target)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingDescriptor {
        RingDescriptor::Integers
    }

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(&z(), c)
    }

    fn wr(num: &[i64], den: &[i64]) -> RationalWittVector {
        wr_normalize(&p(num), &p(den)).unwrap()
    }

    #[test]
    fn normalization() {
        let u = wr(&[1, 0, -1], &[1, -1]);
        assert_eq!(u.num(), &p(&[1, 1]));
        assert_eq!(u.den(), &p(&[1]));
        assert!(wr(&[1], &[1]).is_zero());
        let q = RingDescriptor::Rationals;
        let v = wr_normalize(
            &Polynomial::from_ints(&q, &[2, -4]),
            &Polynomial::from_ints(&q, &[2]),
        )
        .unwrap();
        assert_eq!(v.num(), &Polynomial::from_ints(&q, &[1, -2]));
        assert!(v.den().degree() == Some(0));
        assert!(matches!(
            wr_normalize(&p(&[2, 1]), &p(&[1])),
            Err(Error::NotAUnit { .. })
        ));
    }

    #[test]
    fn addition_and_negation() {
        let s = wr(&[1, -2], &[1]).add(&wr(&[1, -3], &[1])).unwrap();
        assert_eq!(s.num(), &p(&[1, -5, 6]));
        let n = wr(&[1, -1], &[1]).neg();
        assert_eq!((n.num(), n.den()), (&p(&[1]), &p(&[1, -1])));
        let u = wr(&[1, 3, -2], &[1, 0, 5]);
        assert!(u.add(&u.neg()).unwrap().is_zero());
    }

    #[test]
    fn root_pairing_products() {
        assert_eq!(
            poly_witt_mul(&p(&[1, -2]), &p(&[1, -3])).unwrap(),
            p(&[1, -6])
        );
        assert_eq!(
            poly_witt_mul(&p(&[1, -5, 6]), &p(&[1, -5])).unwrap(),
            p(&[1, -25, 150])
        );
        let f = p(&[1, 4, -1, 7]);
        assert_eq!(poly_witt_mul(&f, &p(&[1, -1])).unwrap(), f);
        assert_eq!(poly_witt_mul(&p(&[1]), &f).unwrap(), p(&[1]));
        let z12 = RingDescriptor::IntegersMod(12);
        let g = Polynomial::from_ints(&z12, &[1, 1]);
        assert!(matches!(
            poly_witt_mul(&g, &g),
            Err(Error::Unsupported { .. })
        ));
    }

    #[test]
    fn fraction_products() {
        let two = RationalWittVector::teichmuller(&z().from_int(2), &z()).unwrap();
        let three = RationalWittVector::teichmuller(&z().from_int(3), &z()).unwrap();
        assert_eq!(
            two.mul(&three).unwrap(),
            RationalWittVector::teichmuller(&z().from_int(6), &z()).unwrap()
        );
        let u = wr(&[1, -2], &[1, -3]);
        assert_eq!(
            u.mul(&wr(&[1, -5], &[1])).unwrap(),
            wr(&[1, -10], &[1, -15])
        );
        assert_eq!(u.mul(&RationalWittVector::one(&z())).unwrap(), u);
    }

    #[test]
    fn ghosts() {
        let g = RationalWittVector::teichmuller(&z().from_int(4), &z())
            .unwrap()
            .ghost(3);
        assert_eq!(
            g.components(),
            &[z().from_int(4), z().from_int(16), z().from_int(64)]
        );
        let h = wr(&[1], &[1, -1]).ghost(3);
        assert_eq!(
            h.components(),
            &[z().from_int(-1), z().from_int(-1), z().from_int(-1)]
        );
        let u = wr(&[1, 2, -1], &[1, 0, 3]);
        assert_eq!(u.ghost(7), u.embed(7).unwrap().ghost());
    }

    #[test]
    fn frobenius_and_verschiebung() {
        let a = RationalWittVector::teichmuller(&z().from_int(-3), &z()).unwrap();
        assert_eq!(
            wr_frobenius(3, &a).unwrap(),
            RationalWittVector::teichmuller(&z().from_int(-27), &z()).unwrap()
        );
        assert_eq!(
            wr_frobenius(2, &wr(&[1, -5, 6], &[1])).unwrap().num(),
            &p(&[1, -13, 36])
        );
        assert_eq!(
            wr_verschiebung(3, &wr(&[1, -7], &[1])).unwrap().num(),
            &p(&[1, 0, 0, -7])
        );
        let u = wr(&[1, 1, 2], &[1, -3]);
        let lhs = wr_frobenius(2, &wr_frobenius(3, &u).unwrap()).unwrap();
        assert_eq!(lhs, wr_frobenius(6, &u).unwrap());
        let gh = u.ghost(12);
        let fg = wr_frobenius(3, &u).unwrap().ghost(4);
        for n in 1..=4 {
            assert_eq!(fg.components()[n - 1], gh.components()[3 * n - 1]);
        }
    }

    #[test]
    fn cyclotomic_elements() {
        assert_eq!(phi_p(2).unwrap().num(), &p(&[1, 1]));
        assert_eq!(phi_p(3).unwrap().num(), &p(&[1, 1, 1]));
        assert!(matches!(phi_p(4), Err(Error::NotPrime(4))));
        let g = phi_p(3).unwrap().ghost(6);
        let want: Vec<Elem> = [-1, -1, 2, -1, -1, 2]
            .iter()
            .map(|&c| z().from_int(c))
            .collect();
        assert_eq!(g.components(), want.as_slice());
    }

    #[test]
    fn shifted_cyclotomic_ghosts() {
        let g = phi_p_minus_scalar_check(3, 6).unwrap();
        let want: Vec<Elem> = [-3, -3, 0, -3, -3, 0]
            .iter()
            .map(|&c| z().from_int(c))
            .collect();
        assert_eq!(g.components(), want.as_slice());
        let g = phi_p_minus_scalar_check(2, 4).unwrap();
        let want: Vec<Elem> = [-2, 0, -2, 0].iter().map(|&c| z().from_int(c)).collect();
        assert_eq!(g.components(), want.as_slice());
    }

    #[test]
    fn cyclotomic_phi_is_a_sum_of_teichmuller_lifts() {
        for prime in [2u32, 3, 5] {
            let ring = RingDescriptor::cyclotomic(prime).unwrap();
            let mut sum = RationalWittVector::zero(&ring);
            for i in 1..prime {
                let zeta_i = ring.pow(&ring.root_of_unity(prime).unwrap(), i as u64);
                sum = sum
                    .add(&RationalWittVector::teichmuller(&zeta_i, &ring).unwrap())
                    .unwrap();
            }
            assert_eq!(
                sum,
                base_change(&phi_p(prime as u64).unwrap(), &ring).unwrap()
            );
        }
    }

    #[test]
    fn embedding() {
        let one = RationalWittVector::one(&z()).embed(3).unwrap();
        assert_eq!(
            one,
            TruncatedWittVector::from_ints(&z(), &[-1, 0, 0]).unwrap()
        );
        let geo = wr(&[1], &[1, -1]).embed(3).unwrap();
        assert_eq!(
            geo,
            TruncatedWittVector::from_ints(&z(), &[1, 1, 1]).unwrap()
        );
    }

    #[test]
    fn prime_field_products() {
        let f7 = RingDescriptor::prime_field(7).unwrap();
        let u = wr_normalize(
            &Polynomial::from_ints(&f7, &[1, 3, 5]),
            &Polynomial::from_ints(&f7, &[1, 6]),
        )
        .unwrap();
        let v = wr_normalize(
            &Polynomial::from_ints(&f7, &[1, 2]),
            &Polynomial::from_ints(&f7, &[1, 1, 1]),
        )
        .unwrap();
        let w = u.mul(&v).unwrap();
        assert_eq!(
            w.embed(12).unwrap(),
            u.embed(12).unwrap().mul(&v.embed(12).unwrap()).unwrap()
        );
    }
}
