//! Cyclotomic fields `Q(ζ_N)` as quotients `Q[z]/Φ_N(z)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients (ascending) of the `n`-th cyclotomic polynomial.
///
/// Computed as `(x^n - 1) / ∏_{d | n, d < n} Φ_d` and memoized.
pub fn cyclotomic_coeffs(n: u32) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    if let Some(c) = cache().lock().unwrap().get(&n) {
        return c.clone();
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let div = cyclotomic_coeffs(d);
            num = div_monic_exact(&num, &div);
        }
    }
    let result = Arc::new(num);
    cache().lock().unwrap().entry(n).or_insert(result).clone()
}

fn div_monic_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// An element of `Q(ζ_N)`, stored as the reduced residue of a polynomial in `ζ_N`
/// of degree `< φ(N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    /// Reduces an arbitrary coefficient vector modulo `Φ_N`.
    pub fn from_coeffs(conductor: u32, coeffs: Vec<BigRational>) -> Self {
        let modulus = cyclotomic_coeffs(conductor);
        let d = modulus.len() - 1;
        let mut v = coeffs;
        if v.len() < d {
            v.resize(d, BigRational::zero());
        }
        for i in (d..v.len()).rev() {
            let c = std::mem::replace(&mut v[i], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            for (j, mj) in modulus.iter().enumerate().take(d) {
                if !mj.is_zero() {
                    v[i - d + j] -= &c * BigRational::from_integer(mj.clone());
                }
            }
        }
        v.truncate(d);
        CyclotomicNumber {
            conductor,
            coeffs: v,
        }
    }

    pub fn zero(conductor: u32) -> Self {
        Self::from_rational(conductor, BigRational::zero())
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(conductor, BigRational::one())
    }

    pub fn from_rational(conductor: u32, q: BigRational) -> Self {
        Self::from_coeffs(conductor, vec![q])
    }

    pub fn from_int(conductor: u32, n: i64) -> Self {
        Self::from_rational(conductor, BigRational::from_integer(n.into()))
    }

    /// The primitive root of unity `ζ_N`.
    pub fn zeta(conductor: u32) -> Self {
        Self::zeta_pow(conductor, 1)
    }

    /// `ζ_N^k`, for any integer `k`.
    pub fn zeta_pow(conductor: u32, k: i64) -> Self {
        let e = k.mod_floor(&(conductor as i64)) as usize;
        let mut v = vec![BigRational::zero(); e + 1];
        v[e] = BigRational::one();
        Self::from_coeffs(conductor, v)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Coefficients with respect to `1, ζ, …, ζ^{φ(N)-1}`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(
                self.coeffs
                    .first()
                    .cloned()
                    .unwrap_or_else(BigRational::zero),
            )
        } else {
            None
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            self.conductor, other.conductor,
            "cyclotomic conductors differ"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let d = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * d.max(1) - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(self.conductor, prod)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|a| a * q).collect(),
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_N`.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let modulus: Vec<BigRational> = cyclotomic_coeffs(self.conductor)
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        // invariant: s * self ≡ r0 (mod Φ_N)
        let mut r0 = trim(self.coeffs.clone());
        let mut r1 = modulus;
        let mut s0 = vec![BigRational::one()];
        let mut s1: Vec<BigRational> = Vec::new();
        while !r1.is_empty() {
            let (q, r) = qdiv_rem(&r0, &r1);
            let s2 = qsub(&s0, &qmul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since Φ_N is irreducible
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let s: Vec<BigRational> = s0.into_iter().map(|x| x * &c).collect();
        Some(Self::from_coeffs(self.conductor, s))
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^k` (requires `gcd(k, N) = 1`).
    pub fn galois_conjugate(&self, k: i64) -> Self {
        let mut acc = Self::zero(self.conductor);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&Self::zeta_pow(self.conductor, k * i as i64).scale(c));
            }
        }
        acc
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn qmul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn qsub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn qdiv_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    let lc_inv = b[db].recip();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * &lc_inv;
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] -= &c * bj;
        }
        quot[shift] = c;
        rem.pop();
        rem = trim(rem);
    }
    (trim(quot), rem)
}

impl std::fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", abs)?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{}", abs)?;
                    }
                    write!(f, "z")?;
                    if i > 1 {
                        write!(f, "^{}", i)?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_coeffs(1), ints(&[-1, 1]));
        assert_eq!(*cyclotomic_coeffs(2), ints(&[1, 1]));
        assert_eq!(*cyclotomic_coeffs(3), ints(&[1, 1, 1]));
        assert_eq!(*cyclotomic_coeffs(4), ints(&[1, 0, 1]));
        assert_eq!(*cyclotomic_coeffs(6), ints(&[1, -1, 1]));
        assert_eq!(*cyclotomic_coeffs(12), ints(&[1, 0, -1, 0, 1]));
        for n in 1..=30 {
            assert_eq!(cyclotomic_coeffs(n).len() as u32 - 1, euler_phi(n));
        }
    }

    #[test]
    fn zeta_has_order_n() {
        for n in 1..=24u32 {
            let z = CyclotomicNumber::zeta(n);
            assert!(z.pow(n as u64).is_one(), "n={n}");
            for k in 1..n {
                if n % k == 0 {
                    assert!(!z.pow(k as u64).is_one(), "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn phi_vanishes_at_zeta() {
        for n in 1..=24u32 {
            let z = CyclotomicNumber::zeta(n);
            let mut acc = CyclotomicNumber::zero(n);
            for (i, c) in cyclotomic_coeffs(n).iter().enumerate() {
                acc = acc.add(&z.pow(i as u64).scale(&BigRational::from_integer(c.clone())));
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn reduction_is_idempotent() {
        let x = CyclotomicNumber::from_coeffs(
            7,
            (0..20)
                .map(|i| BigRational::from_integer((i * 3 - 7).into()))
                .collect(),
        );
        let again = CyclotomicNumber::from_coeffs(7, x.coeffs().to_vec());
        assert_eq!(x, again);
    }

    #[test]
    fn inverse_round_trips() {
        let x = CyclotomicNumber::from_coeffs(
            5,
            vec![
                BigRational::from_integer(2.into()),
                BigRational::from_integer((-1).into()),
            ],
        );
        let y = x.inv().unwrap();
        assert!(x.mul(&y).is_one());
        assert!(CyclotomicNumber::zero(5).inv().is_none());
    }

    #[test]
    fn display() {
        let x = CyclotomicNumber::from_coeffs(
            8,
            vec![
                BigRational::one(),
                BigRational::from_integer((-1).into()),
                BigRational::zero(),
                BigRational::new(1.into(), 2.into()),
            ],
        );
        assert_eq!(x.to_string(), "1-z+1/2z^3");
        assert_eq!(CyclotomicNumber::zero(3).to_string(), "0");
    }
}
