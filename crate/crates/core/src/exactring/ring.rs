use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The coefficient rings the library computes over.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Integers,
    Rationals,
    IntegersMod(u64),
    PrimeField(u64),
    CyclotomicField(u32),
    FractionField(Box<RingDescriptor>),
}

/// A ring element. Which variant is used is decided by the ring, see [`RingDescriptor`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Int(BigInt),
    Rat(BigRational),
    Cyc(CyclotomicNumber),
}

impl Elem {
    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Elem::Int(n) => Some(n),
            _ => None,
        }
    }

    pub fn as_cyc(&self) -> Option<&CyclotomicNumber> {
        match self {
            Elem::Cyc(c) => Some(c),
            _ => None,
        }
    }
}

/// Underlying arithmetic of a descriptor, with fraction fields resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Arith {
    Z,
    Q,
    Mod(u64),
    Cyc(u32),
}

impl RingDescriptor {
    pub fn integers_mod(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRing(format!("Z/{n} needs modulus >= 2")));
        }
        Ok(RingDescriptor::IntegersMod(n))
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(RingDescriptor::PrimeField(p))
    }

    pub fn cyclotomic(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRing(
                "cyclotomic conductor must be positive".into(),
            ));
        }
        Ok(RingDescriptor::CyclotomicField(n))
    }

    pub fn fraction_field(of: RingDescriptor) -> Result<Self> {
        of.validate()?;
        if !of.is_integral_domain() {
            return Err(Error::InvalidRing(format!(
                "{of} is not an integral domain"
            )));
        }
        Ok(RingDescriptor::FractionField(Box::new(of)))
    }

    /// Checks the construction invariants (useful for descriptors built by hand).
    pub fn validate(&self) -> Result<()> {
        match self {
            RingDescriptor::Integers | RingDescriptor::Rationals => Ok(()),
            RingDescriptor::IntegersMod(n) => Self::integers_mod(*n).map(|_| ()),
            RingDescriptor::PrimeField(p) => Self::prime_field(*p).map(|_| ()),
            RingDescriptor::CyclotomicField(n) => Self::cyclotomic(*n).map(|_| ()),
            RingDescriptor::FractionField(of) => Self::fraction_field((**of).clone()).map(|_| ()),
        }
    }

    fn arith(&self) -> Arith {
        match self {
            RingDescriptor::Integers => Arith::Z,
            RingDescriptor::Rationals => Arith::Q,
            RingDescriptor::IntegersMod(n) | RingDescriptor::PrimeField(n) => Arith::Mod(*n),
            RingDescriptor::CyclotomicField(n) => Arith::Cyc(*n),
            RingDescriptor::FractionField(of) => match of.arith() {
                Arith::Z | Arith::Q => Arith::Q,
                other => other,
            },
        }
    }

    pub fn is_integral_domain(&self) -> bool {
        match self {
            RingDescriptor::IntegersMod(n) => is_prime(*n),
            _ => true,
        }
    }

    pub fn is_integrally_closed(&self) -> bool {
        // Z and every field are integrally closed; Z/n is iff it is a field.
        self.is_integral_domain()
    }

    pub fn contains_rationals(&self) -> bool {
        matches!(self.arith(), Arith::Q | Arith::Cyc(_))
    }

    pub fn is_field(&self) -> bool {
        match self.arith() {
            Arith::Z => false,
            Arith::Q | Arith::Cyc(_) => true,
            Arith::Mod(n) => is_prime(n),
        }
    }

    /// The smallest field containing this domain.
    pub fn fraction_field_of(&self) -> Result<RingDescriptor> {
        if self.is_field() {
            Ok(self.clone())
        } else {
            Self::fraction_field(self.clone())
        }
    }

    pub fn contains(&self, x: &Elem) -> bool {
        match (self.arith(), x) {
            (Arith::Z, Elem::Int(_)) | (Arith::Q, Elem::Rat(_)) => true,
            (Arith::Mod(n), Elem::Int(v)) => !v.is_negative() && v < &BigInt::from(n),
            (Arith::Cyc(n), Elem::Cyc(c)) => c.conductor() == n,
            _ => false,
        }
    }

    pub(crate) fn check(&self, x: &Elem) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotInRing {
                ring: self.to_string(),
                elem: format!("{x:?}"),
            })
        }
    }

    pub fn zero(&self) -> Elem {
        self.from_int(0)
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    /// Image of an integer under the unique map `Z → A`.
    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match self.arith() {
            Arith::Z => Elem::Int(n.clone()),
            Arith::Q => Elem::Rat(BigRational::from_integer(n.clone())),
            Arith::Mod(m) => Elem::Int(n.mod_floor(&BigInt::from(m))),
            Arith::Cyc(c) => Elem::Cyc(CyclotomicNumber::from_rational(
                c,
                BigRational::from_integer(n.clone()),
            )),
        }
    }

    /// Image of a rational number, when its denominator is invertible.
    pub fn from_rational(&self, q: &BigRational) -> Result<Elem> {
        if q.denom().is_one() {
            return Ok(self.from_bigint(q.numer()));
        }
        match self.arith() {
            Arith::Q => Ok(Elem::Rat(q.clone())),
            Arith::Cyc(c) => Ok(Elem::Cyc(CyclotomicNumber::from_rational(c, q.clone()))),
            Arith::Mod(_) | Arith::Z => {
                let den = self.from_bigint(q.denom());
                let inv = self.inv(&den).ok_or_else(|| Error::NotAUnit {
                    ring: self.to_string(),
                    elem: q.denom().to_string(),
                })?;
                Ok(self.mul(&self.from_bigint(q.numer()), &inv))
            }
        }
    }

    /// A primitive `n`-th root of unity, for cyclotomic fields with `n | N`.
    pub fn root_of_unity(&self, n: u32) -> Result<Elem> {
        match self.arith() {
            Arith::Cyc(c) if n >= 1 && c % n == 0 => {
                Ok(Elem::Cyc(CyclotomicNumber::zeta_pow(c, (c / n) as i64)))
            }
            _ => Err(Error::Unsupported {
                op: "root_of_unity",
                ring: self.to_string(),
            }),
        }
    }

    pub fn is_zero(&self, x: &Elem) -> bool {
        match x {
            Elem::Int(v) => v.is_zero(),
            Elem::Rat(v) => v.is_zero(),
            Elem::Cyc(v) => v.is_zero(),
        }
    }

    pub fn is_one(&self, x: &Elem) -> bool {
        match x {
            Elem::Int(v) => v.is_one(),
            Elem::Rat(v) => v.is_one(),
            Elem::Cyc(v) => v.is_one(),
        }
    }

    fn reduce(&self, v: BigInt) -> Elem {
        match self.arith() {
            Arith::Mod(m) => Elem::Int(v.mod_floor(&BigInt::from(m))),
            _ => Elem::Int(v),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => self.reduce(x + y),
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Elem::Cyc(x), Elem::Cyc(y)) => Elem::Cyc(x.add(y)),
            _ => panic!("mixed element kinds in {self}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Int(x) => self.reduce(-x),
            Elem::Rat(x) => Elem::Rat(-x),
            Elem::Cyc(x) => Elem::Cyc(x.neg()),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => self.reduce(x * y),
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Elem::Cyc(x), Elem::Cyc(y)) => Elem::Cyc(x.mul(y)),
            _ => panic!("mixed element kinds in {self}"),
        }
    }

    pub fn mul_int(&self, a: &Elem, n: &BigInt) -> Elem {
        self.mul(a, &self.from_bigint(n))
    }

    pub fn pow(&self, a: &Elem, e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Integer power; negative exponents need a unit.
    pub fn pow_signed(&self, a: &Elem, e: i64) -> Result<Elem> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            let inv = self.inv(a).ok_or_else(|| Error::NotAUnit {
                ring: self.to_string(),
                elem: self.format(a),
            })?;
            Ok(self.pow(&inv, e.unsigned_abs()))
        }
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        self.inv(a).is_some()
    }

    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        match (self.arith(), a) {
            (Arith::Z, Elem::Int(x)) => {
                if x.abs().is_one() {
                    Some(Elem::Int(x.clone()))
                } else {
                    None
                }
            }
            (Arith::Q, Elem::Rat(x)) => (!x.is_zero()).then(|| Elem::Rat(x.recip())),
            (Arith::Mod(m), Elem::Int(x)) => {
                let m = BigInt::from(m);
                let e = x.extended_gcd(&m);
                if e.gcd.is_one() {
                    Some(Elem::Int(e.x.mod_floor(&m)))
                } else {
                    None
                }
            }
            (Arith::Cyc(_), Elem::Cyc(x)) => x.inv().map(Elem::Cyc),
            _ => None,
        }
    }

    /// Exact quotient `a / b`. Over the integers the division must leave no remainder;
    /// over `Z/n` the divisor must be a unit.
    pub fn div_exact(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        if self.is_zero(b) {
            return Err(Error::InvalidInput("division by zero".into()));
        }
        if let (Arith::Z, Elem::Int(x), Elem::Int(y)) = (self.arith(), a, b) {
            let (q, r) = x.div_rem(y);
            if !r.is_zero() {
                return Err(Error::InvalidInput(format!("{x} is not divisible by {y}")));
            }
            return Ok(Elem::Int(q));
        }
        let inv = self.inv(b).ok_or_else(|| Error::NotAUnit {
            ring: self.to_string(),
            elem: self.format(b),
        })?;
        Ok(self.mul(a, &inv))
    }

    /// Human-readable form of an element.
    pub fn format(&self, a: &Elem) -> String {
        match a {
            Elem::Int(x) => x.to_string(),
            Elem::Rat(x) => x.to_string(),
            Elem::Cyc(x) => x.to_string(),
        }
    }

    pub(crate) fn same(&self, other: &RingDescriptor) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integers => write!(f, "Z"),
            RingDescriptor::Rationals => write!(f, "Q"),
            RingDescriptor::IntegersMod(n) => write!(f, "Z/{n}"),
            RingDescriptor::PrimeField(p) => write!(f, "Fp/{p}"),
            RingDescriptor::CyclotomicField(n) => write!(f, "Qzeta/{n}"),
            RingDescriptor::FractionField(of) => write!(f, "Frac({of})"),
        }
    }
}

impl std::str::FromStr for RingDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown ring descriptor `{s}`"));
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
        match s {
            "Z" => Ok(RingDescriptor::Integers),
            "Q" => Ok(RingDescriptor::Rationals),
            _ => {
                if let Some(rest) = s.strip_prefix("Z/") {
                    RingDescriptor::integers_mod(num(rest)?)
                } else if let Some(rest) = s.strip_prefix("Fp/") {
                    RingDescriptor::prime_field(num(rest)?)
                } else if let Some(rest) = s.strip_prefix("Qzeta/") {
                    let n = u32::try_from(num(rest)?).map_err(|_| bad())?;
                    RingDescriptor::cyclotomic(n)
                } else if let Some(inner) =
                    s.strip_prefix("Frac(").and_then(|r| r.strip_suffix(')'))
                {
                    RingDescriptor::fraction_field(inner.parse()?)
                } else {
                    Err(bad())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_per_kind() {
        let z = RingDescriptor::Integers;
        assert!(z.is_integral_domain() && z.is_integrally_closed() && !z.contains_rationals());
        let q = RingDescriptor::Rationals;
        assert!(q.is_integral_domain() && q.is_integrally_closed() && q.contains_rationals());
        let z12 = RingDescriptor::integers_mod(12).unwrap();
        assert!(
            !z12.is_integral_domain() && !z12.is_integrally_closed() && !z12.contains_rationals()
        );
        let z7 = RingDescriptor::integers_mod(7).unwrap();
        assert!(z7.is_integral_domain() && z7.is_field());
        let f7 = RingDescriptor::prime_field(7).unwrap();
        assert!(f7.is_integral_domain() && f7.is_integrally_closed() && !f7.contains_rationals());
        let c5 = RingDescriptor::cyclotomic(5).unwrap();
        assert!(c5.is_integral_domain() && c5.is_integrally_closed() && c5.contains_rationals());
        let fz = RingDescriptor::fraction_field(RingDescriptor::Integers).unwrap();
        assert!(fz.contains_rationals() && fz.is_field());
    }

    #[test]
    fn construction_errors() {
        assert!(RingDescriptor::integers_mod(1).is_err());
        assert_eq!(RingDescriptor::prime_field(9), Err(Error::NotPrime(9)));
        assert!(RingDescriptor::cyclotomic(0).is_err());
        assert!(RingDescriptor::fraction_field(RingDescriptor::IntegersMod(12)).is_err());
    }

    #[test]
    fn descriptor_text_round_trip() {
        for s in ["Z", "Q", "Z/12", "Fp/7", "Qzeta/5", "Frac(Z)", "Frac(Fp/3)"] {
            let r: RingDescriptor = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("Fp/8".parse::<RingDescriptor>().is_err());
        assert!("R".parse::<RingDescriptor>().is_err());
    }

    #[test]
    fn modular_units() {
        let r = RingDescriptor::IntegersMod(12);
        assert!(r.is_unit(&r.from_int(5)));
        assert!(!r.is_unit(&r.from_int(4)));
        assert_eq!(r.inv(&r.from_int(5)), Some(r.from_int(5)));
        assert_eq!(r.from_int(-1), r.from_int(11));
        let f7 = RingDescriptor::PrimeField(7);
        let half = f7
            .from_rational(&BigRational::new(1.into(), 2.into()))
            .unwrap();
        assert_eq!(half, f7.from_int(4));
    }

    #[test]
    fn exact_division_over_integers() {
        let z = RingDescriptor::Integers;
        assert_eq!(
            z.div_exact(&z.from_int(12), &z.from_int(-4)).unwrap(),
            z.from_int(-3)
        );
        assert!(z.div_exact(&z.from_int(7), &z.from_int(2)).is_err());
    }
}
