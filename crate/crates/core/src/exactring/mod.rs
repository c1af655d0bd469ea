//! Exact arithmetic kernel: coefficient rings, dense univariate polynomials,
//! series inversion, gcd, resultants and cyclotomic fields.
//!
//! All values are immutable once built and every operation is a pure function.

pub mod cyclotomic;
mod poly;
pub mod resultant;
mod ring;
pub mod text;

pub use cyclotomic::{cyclotomic_coeffs, euler_phi, CyclotomicNumber};
pub use poly::{poly_gcd, poly_mul_truncated, poly_resultant, series_inverse, Polynomial};
pub use ring::{is_prime, Elem, RingDescriptor};

/// The `n`-th cyclotomic polynomial over the integers.
pub fn cyclotomic_polynomial(n: u32) -> Polynomial {
    Polynomial::from_bigints(&RingDescriptor::Integers, &cyclotomic_coeffs(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomial_examples() {
        let z = RingDescriptor::Integers;
        assert_eq!(
            cyclotomic_polynomial(1),
            Polynomial::from_ints(&z, &[-1, 1])
        );
        assert_eq!(
            cyclotomic_polynomial(3),
            Polynomial::from_ints(&z, &[1, 1, 1])
        );
        assert_eq!(
            cyclotomic_polynomial(6),
            Polynomial::from_ints(&z, &[1, -1, 1])
        );
        for n in 1..=24 {
            let p = cyclotomic_polynomial(n);
            assert_eq!(p.degree().unwrap() as u32, euler_phi(n));
            assert!(z.is_one(p.lead().unwrap()));
        }
    }
}
