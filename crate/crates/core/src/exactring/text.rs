//! Text grammar for ring elements and polynomials.
//!
//! Polynomials are written in ascending powers of `t`, e.g. `1 - 2t + 3t^2`.
//! Coefficients are integers or fractions `p/q`; over `Qzeta/N` a coefficient may be
//! a parenthesized polynomial in `z = ζ_N`, e.g. `1 + (1+z)t`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::CyclotomicNumber;
use super::poly::Polynomial;
use super::ring::{Elem, RingDescriptor};
use crate::error::{Error, Result};

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            src,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {} in `{}`", self.pos, self.src))
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn number(&mut self) -> Result<Option<BigRational>> {
        let Some(n) = self.digits() else {
            return Ok(None);
        };
        if self.eat('/') {
            let d = self
                .digits()
                .ok_or_else(|| self.err("expected denominator"))?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(Some(BigRational::new(n, d)))
        } else {
            Ok(Some(BigRational::from_integer(n)))
        }
    }

    fn exponent(&mut self) -> Result<usize> {
        if self.eat('^') {
            let e = self.digits().ok_or_else(|| self.err("expected exponent"))?;
            usize::try_from(e).map_err(|_| self.err("exponent too large"))
        } else {
            Ok(1)
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

/// Parses a sum of terms `c·v^k` with rational coefficients `c`, where a term's
/// coefficient is produced by `coeff` (which may consume a parenthesized group).
fn parse_terms<T, F>(
    cur: &mut Cursor,
    var: char,
    mut coeff: F,
    stop: Option<char>,
) -> Result<Vec<(T, usize)>>
where
    F: FnMut(&mut Cursor) -> Result<Option<T>>,
    T: From<BigRational> + std::ops::Neg<Output = T>,
{
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let c = cur.peek();
        if c.is_none() || c == stop {
            if first {
                return Err(cur.err("empty expression"));
            }
            break;
        }
        let mut negative = false;
        if cur.eat('-') {
            negative = true;
        } else if !cur.eat('+') && !first {
            return Err(cur.err("expected `+` or `-`"));
        }
        first = false;
        let c = coeff(cur)?;
        let has_coeff = c.is_some();
        if has_coeff {
            cur.eat('*');
        }
        let power = if cur.eat(var) {
            cur.exponent()?
        } else if has_coeff {
            0
        } else {
            return Err(cur.err("expected a term"));
        };
        let value = c.unwrap_or_else(|| T::from(BigRational::one()));
        terms.push((if negative { -value } else { value }, power));
    }
    Ok(terms)
}

fn parse_rational_poly(
    cur: &mut Cursor,
    var: char,
    stop: Option<char>,
) -> Result<Vec<BigRational>> {
    let terms = parse_terms(cur, var, |c| c.number(), stop)?;
    let len = terms.iter().map(|(_, k)| k + 1).max().unwrap_or(0);
    let mut out = vec![BigRational::zero(); len];
    for (c, k) in terms {
        out[k] += c;
    }
    Ok(out)
}

/// A coefficient as parsed, before it is placed into a ring.
#[derive(Clone)]
struct RawCoeff(Vec<BigRational>);

impl From<BigRational> for RawCoeff {
    fn from(q: BigRational) -> Self {
        RawCoeff(vec![q])
    }
}

impl std::ops::Neg for RawCoeff {
    type Output = RawCoeff;
    fn neg(self) -> RawCoeff {
        RawCoeff(self.0.into_iter().map(|q| -q).collect())
    }
}

fn raw_to_elem(ring: &RingDescriptor, raw: &RawCoeff) -> Result<Elem> {
    if let RingDescriptor::CyclotomicField(n) = ring {
        return Ok(Elem::Cyc(CyclotomicNumber::from_coeffs(*n, raw.0.clone())));
    }
    if let RingDescriptor::FractionField(of) = ring {
        if let RingDescriptor::CyclotomicField(n) = **of {
            return Ok(Elem::Cyc(CyclotomicNumber::from_coeffs(n, raw.0.clone())));
        }
    }
    if raw.0.iter().skip(1).any(|q| !q.is_zero()) {
        return Err(Error::Parse(format!(
            "`z` is only meaningful over cyclotomic fields, not {ring}"
        )));
    }
    let q = raw.0.first().cloned().unwrap_or_else(BigRational::zero);
    if *ring == RingDescriptor::Integers && !q.is_integer() {
        return Err(Error::Parse(format!("{q} is not an integer")));
    }
    ring.from_rational(&q)
}

fn is_cyclotomic(ring: &RingDescriptor) -> bool {
    match ring {
        RingDescriptor::CyclotomicField(_) => true,
        RingDescriptor::FractionField(of) => is_cyclotomic(of),
        _ => false,
    }
}

/// Parses a ring element: an integer, a fraction, or over cyclotomic fields a
/// polynomial in `z`.
pub fn parse_elem(ring: &RingDescriptor, s: &str) -> Result<Elem> {
    let mut cur = Cursor::new(s);
    let coeffs = if is_cyclotomic(ring) {
        parse_rational_poly(&mut cur, 'z', None)?
    } else {
        parse_rational_poly(&mut cur, '\0', None)?
    };
    if !cur.at_end() {
        return Err(cur.err("trailing input"));
    }
    raw_to_elem(ring, &RawCoeff(coeffs))
}

pub fn format_elem(ring: &RingDescriptor, e: &Elem) -> String {
    ring.format(e)
}

/// Parses a polynomial in `t`.
pub fn parse_poly(ring: &RingDescriptor, s: &str) -> Result<Polynomial> {
    let mut cur = Cursor::new(s);
    let poly = parse_poly_until(ring, &mut cur, None)?;
    if !cur.at_end() {
        return Err(cur.err("trailing input"));
    }
    Ok(poly)
}

fn parse_poly_until(
    ring: &RingDescriptor,
    cur: &mut Cursor,
    stop: Option<char>,
) -> Result<Polynomial> {
    let cyc = is_cyclotomic(ring);
    let terms = parse_terms(
        cur,
        't',
        |c| {
            if c.eat('(') {
                let inner = parse_rational_poly(c, if cyc { 'z' } else { '\0' }, Some(')'))?;
                if !c.eat(')') {
                    return Err(c.err("expected `)`"));
                }
                Ok(Some(RawCoeff(inner)))
            } else {
                Ok(c.number()?.map(RawCoeff::from))
            }
        },
        stop,
    )?;
    let mut acc = Polynomial::zero(ring);
    for (raw, k) in terms {
        let c = raw_to_elem(ring, &raw)?;
        acc = acc.add(&Polynomial::monomial(ring, c, k))?;
    }
    Ok(acc)
}

/// Parses `(<poly>)/(<poly>)`; a bare polynomial is read with denominator 1.
pub fn parse_fraction(ring: &RingDescriptor, s: &str) -> Result<(Polynomial, Polynomial)> {
    let trimmed = s.trim();
    if let Some(rest) = trimmed.strip_prefix('(') {
        let mut cur = Cursor::new(rest);
        if let Ok(num) = parse_poly_until(ring, &mut cur, Some(')')) {
            if cur.eat(')') {
                if cur.at_end() {
                    return Ok((num, Polynomial::one(ring)));
                }
                if cur.eat('/') {
                    if !cur.eat('(') {
                        return Err(cur.err("expected `(`"));
                    }
                    let den = parse_poly_until(ring, &mut cur, Some(')'))?;
                    if !cur.eat(')') {
                        return Err(cur.err("expected `)`"));
                    }
                    if !cur.at_end() {
                        return Err(cur.err("trailing input"));
                    }
                    return Ok((num, den));
                }
            }
        }
    }
    Ok((parse_poly(ring, trimmed)?, Polynomial::one(ring)))
}

/// Compact form such as `1-5t+6t^2`; the zero polynomial prints as `0`.
pub fn format_poly(p: &Polynomial) -> String {
    let ring = p.ring();
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if ring.is_zero(c) {
            continue;
        }
        let (negative, body, simple) = coefficient_parts(c);
        if negative {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let unit = simple && body == "1";
        if k == 0 {
            out.push_str(&if simple { body } else { format!("({body})") });
        } else {
            if !unit {
                out.push_str(&if simple { body } else { format!("({body})") });
            }
            out.push('t');
            if k > 1 {
                out.push_str(&format!("^{k}"));
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Splits a coefficient into sign, absolute text, and whether it needs no parentheses.
fn coefficient_parts(c: &Elem) -> (bool, String, bool) {
    match c {
        Elem::Int(n) => (n.is_negative(), n.abs().to_string(), true),
        Elem::Rat(q) => (q.is_negative(), q.abs().to_string(), true),
        Elem::Cyc(x) => match x.as_rational() {
            Some(q) => (q.is_negative(), q.abs().to_string(), true),
            None => (false, x.to_string(), false),
        },
    }
}

pub fn format_fraction(num: &Polynomial, den: &Polynomial) -> String {
    format!("({})/({})", format_poly(num), format_poly(den))
}
