//! Kummer extensions `Q(ζ_N)(y_1, …, y_k)` with `y_i^{m_i} = a_i` and `m_i | N`.
//!
//! Elements are polynomials in the `y_i` with exponents below `m_i` and coefficients
//! in the cyclotomic base. A Galois element `σ_k` acts by `y_i ↦ ζ_{m_i}^{k_i} y_i`.
//! The algebra is treated formally as having degree `∏ m_i`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cohomology::{Cocycle, FiniteGroup, GModule};
use crate::error::{Error, Result};
use crate::exactring::CyclotomicNumber;
use crate::grouplambda::FgAbelianGroup;

/// Environment variable holding the seed of the randomized resolvent trials.
pub const RESOLVENT_SEED_VAR: &str = "WITTKIT_RESOLVENT_SEED";
/// Default number of trial elements for [`hilbert90_resolvent`].
pub const DEFAULT_RESOLVENT_BUDGET: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerExtension {
    conductor: u32,
    radicals: Vec<(CyclotomicNumber, u32)>,
}

/// An element `Σ c_e y^e` of a [`KummerExtension`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KummerElement {
    terms: BTreeMap<Vec<u32>, CyclotomicNumber>,
}

/// `σ: y_i ↦ ζ_{m_i}^{k_i} y_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GaloisElement {
    exponents: Vec<u32>,
}

impl GaloisElement {
    pub fn new(exponents: Vec<u32>) -> Self {
        GaloisElement { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }
}

impl KummerExtension {
    /// Radicals are pairs `(a_i, m_i)`; every `m_i` must divide `N` and every `a_i`
    /// must be nonzero.
    pub fn new(conductor: u32, radicals: Vec<(CyclotomicNumber, u32)>) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidRing("conductor must be positive".into()));
        }
        let mut out = Vec::with_capacity(radicals.len());
        for (a, m) in radicals {
            if m == 0 || conductor % m != 0 {
                return Err(Error::InvalidInput(format!(
                    "radical exponent {m} must divide {conductor}"
                )));
            }
            if a.is_zero() {
                return Err(Error::InvalidInput("radicand must be nonzero".into()));
            }
            let a = match a.as_rational() {
                Some(q) => CyclotomicNumber::from_rational(conductor, q),
                None if a.conductor() == conductor => a,
                None => {
                    return Err(Error::InvalidInput(
                        "radicand lies in a different cyclotomic field".into(),
                    ))
                }
            };
            out.push((a, m));
        }
        Ok(KummerExtension {
            conductor,
            radicals: out,
        })
    }

    /// Radicals with integer radicands.
    pub fn with_integer_radicals(conductor: u32, radicals: &[(i64, u32)]) -> Result<Self> {
        let r = radicals
            .iter()
            .map(|&(a, m)| (CyclotomicNumber::from_int(conductor, a), m))
            .collect();
        Self::new(conductor, r)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn radicals(&self) -> &[(CyclotomicNumber, u32)] {
        &self.radicals
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.radicals.iter().map(|(_, m)| *m).collect()
    }

    /// The formal degree `∏ m_i`.
    pub fn degree(&self) -> u64 {
        self.radicals.iter().map(|(_, m)| *m as u64).product()
    }

    /// The Galois group `∏ Z/m_i`.
    pub fn galois_group(&self) -> Result<FiniteGroup> {
        FiniteGroup::new(self.radicals.iter().map(|(_, m)| *m as u64).collect())
    }

    pub fn galois_element(&self, idx: usize) -> Result<GaloisElement> {
        let g = self.galois_group()?;
        Ok(GaloisElement::new(
            g.element(idx).into_iter().map(|x| x as u32).collect(),
        ))
    }

    /// The generator moving only `y_i`.
    pub fn generator(&self, i: usize) -> GaloisElement {
        let mut e = vec![0; self.radicals.len()];
        e[i] = 1;
        GaloisElement::new(e)
    }

    pub fn zero(&self) -> KummerElement {
        KummerElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: CyclotomicNumber) -> KummerElement {
        self.monomial(c, &vec![0; self.radicals.len()])
    }

    pub fn one(&self) -> KummerElement {
        self.constant(CyclotomicNumber::one(self.conductor))
    }

    pub fn from_int(&self, n: i64) -> KummerElement {
        self.constant(CyclotomicNumber::from_int(self.conductor, n))
    }

    /// `c · y^e`, with the exponents reduced through `y_i^{m_i} = a_i`.
    pub fn monomial(&self, c: CyclotomicNumber, e: &[u32]) -> KummerElement {
        let mut out = self.zero();
        let (c, e) = self.reduce_monomial(c, e);
        add_term(&mut out.terms, e, c);
        out
    }

    /// The radical `y_i`.
    pub fn y(&self, i: usize) -> KummerElement {
        let mut e = vec![0; self.radicals.len()];
        e[i] = 1;
        self.monomial(CyclotomicNumber::one(self.conductor), &e)
    }

    fn reduce_monomial(&self, mut c: CyclotomicNumber, e: &[u32]) -> (CyclotomicNumber, Vec<u32>) {
        let mut out = Vec::with_capacity(e.len());
        for ((a, m), &k) in self.radicals.iter().zip(e) {
            let (q, r) = (k / m, k % m);
            if q > 0 {
                c = c.mul(&a.pow(q as u64));
            }
            out.push(r);
        }
        (c, out)
    }

    pub fn add(&self, x: &KummerElement, y: &KummerElement) -> KummerElement {
        let mut out = x.clone();
        for (e, c) in &y.terms {
            add_term(&mut out.terms, e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self, x: &KummerElement) -> KummerElement {
        KummerElement {
            terms: x.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, x: &KummerElement, y: &KummerElement) -> KummerElement {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, x: &KummerElement, c: &CyclotomicNumber) -> KummerElement {
        let mut out = self.zero();
        for (e, d) in &x.terms {
            add_term(&mut out.terms, e.clone(), d.mul(c));
        }
        out
    }

    pub fn mul(&self, x: &KummerElement, y: &KummerElement) -> KummerElement {
        let mut out = self.zero();
        for (e, c) in &x.terms {
            for (f, d) in &y.terms {
                let sum: Vec<u32> = e.iter().zip(f).map(|(a, b)| a + b).collect();
                let (coef, exps) = self.reduce_monomial(c.mul(d), &sum);
                add_term(&mut out.terms, exps, coef);
            }
        }
        out
    }

    pub fn pow(&self, x: &KummerElement, e: u64) -> KummerElement {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// The element as a base-field number, if it has no radical part.
    pub fn as_base(&self, x: &KummerElement) -> Option<CyclotomicNumber> {
        match x.terms.len() {
            0 => Some(CyclotomicNumber::zero(self.conductor)),
            1 => {
                let (e, c) = x.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn zeta_pow(&self, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::zeta_pow(self.conductor, k)
    }

    /// `ζ_n^k` inside the base field; `n` must divide the conductor.
    pub fn root_of_unity(&self, n: u32, k: i64) -> Result<CyclotomicNumber> {
        if n == 0 || self.conductor % n != 0 {
            return Err(Error::InvalidInput(format!(
                "ζ_{n} is not in Q(ζ_{})",
                self.conductor
            )));
        }
        Ok(self.zeta_pow((self.conductor / n) as i64 * k))
    }

    pub fn apply(&self, sigma: &GaloisElement, x: &KummerElement) -> Result<KummerElement> {
        if sigma.exponents.len() != self.radicals.len() {
            return Err(Error::InvalidInput(
                "Galois element has the wrong number of exponents".into(),
            ));
        }
        let mut out = self.zero();
        for (e, c) in &x.terms {
            let k: i64 = self
                .radicals
                .iter()
                .zip(&sigma.exponents)
                .zip(e)
                .map(|(((_, m), &s), &ei)| (self.conductor / m) as i64 * s as i64 * ei as i64)
                .sum();
            add_term(&mut out.terms, e.clone(), c.mul(&self.zeta_pow(k)));
        }
        Ok(out)
    }

    pub fn compose(&self, s: &GaloisElement, t: &GaloisElement) -> GaloisElement {
        let e = s
            .exponents
            .iter()
            .zip(&t.exponents)
            .zip(&self.radicals)
            .map(|((a, b), (_, m))| (a + b) % m)
            .collect();
        GaloisElement::new(e)
    }

    pub fn galois_power(&self, s: &GaloisElement, k: u64) -> GaloisElement {
        let e = s
            .exponents
            .iter()
            .zip(&self.radicals)
            .map(|(a, (_, m))| ((*a as u64 * k) % *m as u64) as u32)
            .collect();
        GaloisElement::new(e)
    }

    pub fn galois_order(&self, s: &GaloisElement) -> u64 {
        s.exponents
            .iter()
            .zip(&self.radicals)
            .map(|(&a, (_, m))| (*m as u64) / (a as u64).gcd(&(*m as u64)))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// Formats an element, writing `y` for a single radical and `y1, y2, …` otherwise.
    pub fn format(&self, x: &KummerElement) -> String {
        if x.terms.is_empty() {
            return "0".into();
        }
        let single = self.radicals.len() == 1;
        let mut out = String::new();
        for (e, c) in &x.terms {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    let name = if single {
                        "y".to_string()
                    } else {
                        format!("y{}", i + 1)
                    };
                    if k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            let coef = c.to_string();
            let (neg, body) = match (c.as_rational(), coef.strip_prefix('-')) {
                (Some(_), Some(rest)) => (true, rest.to_string()),
                (Some(_), None) => (false, coef.clone()),
                (None, _) => (false, format!("({coef})")),
            };
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if mono.is_empty() {
                out.push_str(&body);
            } else {
                if body != "1" {
                    out.push_str(&body);
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }

    /// Parses sums of terms `c*y1^2*y2`, where `c` is a rational number or a
    /// parenthesized expression in `z = ζ_N`; `y` stands for `y1`.
    pub fn parse(&self, s: &str) -> Result<KummerElement> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in `{s}`"));
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(bad("empty element"));
        }
        let base = crate::exactring::RingDescriptor::CyclotomicField(self.conductor);
        let mut out = self.zero();
        let chars: Vec<char> = src.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let mut sign = 1i64;
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -1;
                }
                i += 1;
            } else if i > 0 {
                return Err(bad("expected a sign"));
            }
            let mut coef = CyclotomicNumber::from_int(self.conductor, sign);
            let mut exps = vec![0u32; self.radicals.len()];
            let mut first = true;
            loop {
                if i >= chars.len() || chars[i] == '+' || chars[i] == '-' {
                    if first {
                        return Err(bad("expected a term"));
                    }
                    break;
                }
                if !first {
                    if chars[i] != '*' {
                        return Err(bad("expected `*`"));
                    }
                    i += 1;
                }
                first = false;
                match chars.get(i) {
                    Some('(') => {
                        let mut depth = 0;
                        let start = i;
                        while i < chars.len() {
                            match chars[i] {
                                '(' => depth += 1,
                                ')' => depth -= 1,
                                _ => {}
                            }
                            i += 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        if depth != 0 {
                            return Err(bad("unbalanced parentheses"));
                        }
                        let inner: String = chars[start + 1..i - 1].iter().collect();
                        let e = crate::exactring::text::parse_elem(&base, &inner)?;
                        let c = e.as_cyc().ok_or_else(|| bad("bad coefficient"))?.clone();
                        coef = coef.mul(&c);
                    }
                    Some('y') => {
                        i += 1;
                        let start = i;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                        let idx: usize = if start == i {
                            1
                        } else {
                            chars[start..i]
                                .iter()
                                .collect::<String>()
                                .parse()
                                .map_err(|_| bad("bad index"))?
                        };
                        if idx == 0 || idx > self.radicals.len() {
                            return Err(bad("unknown radical"));
                        }
                        let mut k = 1u32;
                        if chars.get(i) == Some(&'^') {
                            i += 1;
                            let start = i;
                            while i < chars.len() && chars[i].is_ascii_digit() {
                                i += 1;
                            }
                            k = chars[start..i]
                                .iter()
                                .collect::<String>()
                                .parse()
                                .map_err(|_| bad("bad exponent"))?;
                        }
                        exps[idx - 1] += k;
                    }
                    Some(c) if c.is_ascii_digit() => {
                        let start = i;
                        while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                            i += 1;
                        }
                        let txt: String = chars[start..i].iter().collect();
                        let q: BigRational = txt.parse().map_err(|_| bad("bad number"))?;
                        coef = coef.scale(&q);
                    }
                    _ => return Err(bad("unexpected character")),
                }
            }
            let (c, e) = self.reduce_monomial(coef, &exps);
            add_term(&mut out.terms, e, c);
        }
        Ok(out)
    }
}

fn add_term(terms: &mut BTreeMap<Vec<u32>, CyclotomicNumber>, e: Vec<u32>, c: CyclotomicNumber) {
    if c.is_zero() {
        return;
    }
    match terms.entry(e) {
        Entry::Occupied(mut o) => {
            let s = o.get().add(&c);
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
        Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

impl KummerElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &CyclotomicNumber)> {
        self.terms.iter()
    }
}

impl fmt::Display for KummerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .map(|(i, k)| format!("y{}^{k}", i + 1))
                    .collect();
                format!("({c})*{}", mono.join("*"))
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

/// `⟨σ, α⟩`: the exponent `c` with `σ(α) = ζ_n^c α`.
pub fn kummer_pairing(
    ext: &KummerExtension,
    sigma: &GaloisElement,
    alpha: &KummerElement,
    n: u32,
) -> Result<u32> {
    if alpha.is_zero() {
        return Err(Error::InvalidInput("pairing with zero".into()));
    }
    ext.root_of_unity(n, 1)?;
    if ext.as_base(&ext.pow(alpha, n as u64)).is_none() {
        return Err(Error::NotRepresentable(format!(
            "{} is not an {n}-th root of a base element",
            ext.format(alpha)
        )));
    }
    let moved = ext.apply(sigma, alpha)?;
    for c in 0..n {
        if ext.scale(alpha, &ext.root_of_unity(n, c as i64)?) == moved {
            return Ok(c);
        }
    }
    Err(Error::InvalidInput(
        "σ(α)/α is not an n-th root of unity".into(),
    ))
}

/// Pairings of radical elements (rows) with the generators of the Galois group
/// (columns), as residues mod `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingMatrix {
    pub modulus: u32,
    pub entries: Vec<Vec<u32>>,
}

impl PairingMatrix {
    pub fn is_square(&self) -> bool {
        self.entries.iter().all(|r| r.len() == self.entries.len())
    }

    /// Whether the matrix is square with determinant a unit mod `n`.
    pub fn is_invertible(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let rows: Vec<Vec<i64>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|&x| x as i64).collect())
            .collect();
        let Ok(m) = crate::dualtop::IntegerMatrix::from_rows(&rows) else {
            return false;
        };
        let det = m.det().unwrap_or_default();
        det.gcd(&BigInt::from(self.modulus)).is_one()
    }

    /// Whether some row is a combination of the others mod `n`; detected as a row
    /// space smaller than the number of rows.
    pub fn has_dependent_rows(&self) -> bool {
        let n = self.modulus as u64;
        let cols = self.entries.first().map_or(0, Vec::len);
        let mut span: std::collections::BTreeSet<Vec<u64>> = [vec![0; cols]].into();
        for row in &self.entries {
            let before = span.len();
            let mut next = span.clone();
            for v in &span {
                for k in 1..n {
                    next.insert(
                        v.iter()
                            .zip(row)
                            .map(|(a, &b)| (a + k * b as u64) % n)
                            .collect(),
                    );
                }
            }
            if next.len() == before {
                return true;
            }
            span = next;
        }
        false
    }
}

/// The pairing matrix of `elements` (default: the radicals `y_i`) against the
/// Galois generators. Every exponent `m_i` must equal `n`.
pub fn kummer_pairing_matrix(
    ext: &KummerExtension,
    n: u32,
    elements: Option<&[KummerElement]>,
) -> Result<PairingMatrix> {
    if ext.radicals.iter().any(|(_, m)| *m != n) {
        return Err(Error::InvalidInput(format!(
            "every radical exponent must equal {n}"
        )));
    }
    let default: Vec<KummerElement>;
    let elems = match elements {
        Some(e) => e,
        None => {
            default = (0..ext.radicals.len()).map(|i| ext.y(i)).collect();
            &default
        }
    };
    let entries = elems
        .iter()
        .map(|a| {
            (0..ext.radicals.len())
                .map(|j| kummer_pairing(ext, &ext.generator(j), a, n))
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(PairingMatrix {
        modulus: n,
        entries,
    })
}

/// Settings for the randomized part of the resolvent search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolventConfig {
    pub budget: usize,
    pub seed: u64,
}

impl Default for ResolventConfig {
    fn default() -> Self {
        ResolventConfig {
            budget: DEFAULT_RESOLVENT_BUDGET,
            seed: 0,
        }
    }
}

impl ResolventConfig {
    /// Default budget, seed read from [`RESOLVENT_SEED_VAR`] when set.
    pub fn from_env() -> Self {
        let seed = std::env::var(RESOLVENT_SEED_VAR)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(0);
        ResolventConfig {
            seed,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolvent {
    pub alpha: KummerElement,
    pub theta: KummerElement,
    pub trials: usize,
}

fn all_exponents(ms: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &m in ms {
        out = out
            .into_iter()
            .flat_map(|v| (0..m).map(move |k| [v.clone(), vec![k]].concat()))
            .collect();
    }
    out
}

/// Finds `α ≠ 0` with `σ(α) = ζ α` as a Lagrange resolvent `Σ ζ^{-i} σ^i(θ)`,
/// trying radical monomials, then `1 + y^e`, then random small elements.
pub fn hilbert90_resolvent(
    ext: &KummerExtension,
    sigma: &GaloisElement,
    zeta: &CyclotomicNumber,
    config: &ResolventConfig,
) -> Result<Resolvent> {
    let n = ext.galois_order(sigma);
    if zeta.conductor() != ext.conductor && zeta.as_rational().is_none() {
        return Err(Error::InvalidInput("ζ is not in the base field".into()));
    }
    let zeta = match zeta.as_rational() {
        Some(q) => CyclotomicNumber::from_rational(ext.conductor, q),
        None => zeta.clone(),
    };
    if !zeta.pow(n).is_one() {
        return Err(Error::InvalidInput(format!(
            "ζ is not an {n}-th root of unity"
        )));
    }
    let zeta_inv = zeta.inv().expect("roots of unity are invertible");
    let exps = all_exponents(&ext.exponents());
    let one = CyclotomicNumber::one(ext.conductor);
    let mut trials: Vec<KummerElement> =
        exps.iter().map(|e| ext.monomial(one.clone(), e)).collect();
    trials.extend(
        exps.iter()
            .skip(1)
            .map(|e| ext.add(&ext.one(), &ext.monomial(one.clone(), e))),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut attempt = 0;
    while attempt < config.budget {
        let theta = match trials.get(attempt) {
            Some(t) => t.clone(),
            None => {
                let mut t = ext.zero();
                for e in &exps {
                    let c: i64 = rng.gen_range(-3..=3);
                    t = ext.add(
                        &t,
                        &ext.monomial(CyclotomicNumber::from_int(ext.conductor, c), e),
                    );
                }
                t
            }
        };
        attempt += 1;
        if theta.is_zero() {
            continue;
        }
        let candidate = if ext.apply(sigma, &theta)? == ext.scale(&theta, &zeta) {
            theta.clone()
        } else {
            let mut acc = ext.zero();
            let mut moved = theta.clone();
            let mut coef = one.clone();
            for _ in 0..n {
                acc = ext.add(&acc, &ext.scale(&moved, &coef));
                moved = ext.apply(sigma, &moved)?;
                coef = coef.mul(&zeta_inv);
            }
            acc
        };
        if candidate.is_zero() {
            continue;
        }
        if ext.apply(sigma, &candidate)? != ext.scale(&candidate, &zeta) {
            return Err(Error::CrossCheck("resolvent failed verification".into()));
        }
        return Ok(Resolvent {
            alpha: candidate,
            theta,
            trials: attempt,
        });
    }
    Err(Error::ResolventExhausted(config.budget))
}

fn rational_root(q: &BigRational, n: u32) -> Option<BigRational> {
    let (a, b) = (q.numer().abs(), q.denom().clone());
    let (ra, rb) = (a.nth_root(n), b.nth_root(n));
    (ra.pow(n) == a && rb.pow(n) == b).then(|| BigRational::new(ra, rb))
}

/// An `n`-th root of a base element inside the extension, found among
/// `ω · r · y^e` with `ω` a root of unity of the base and `r` rational.
pub fn nth_root_in_extension(
    ext: &KummerExtension,
    alpha: &CyclotomicNumber,
    n: u32,
) -> Result<KummerElement> {
    let alpha = match alpha.as_rational() {
        Some(q) => CyclotomicNumber::from_rational(ext.conductor, q),
        None => alpha.clone(),
    };
    if alpha.is_zero() {
        return Err(Error::NotRepresentable("0 has no Kummer symbol".into()));
    }
    let conductor = ext.conductor as i64;
    for e in all_exponents(&ext.exponents()) {
        if ext
            .radicals
            .iter()
            .zip(&e)
            .any(|((_, m), &k)| (k as u64 * n as u64) % *m as u64 != 0)
        {
            continue;
        }
        let mono = ext.monomial(CyclotomicNumber::one(ext.conductor), &e);
        let p = ext
            .as_base(&ext.pow(&mono, n as u64))
            .expect("power lands in the base");
        let Some(q) = alpha
            .mul(&p.inv().expect("radicands are nonzero"))
            .as_rational()
        else {
            continue;
        };
        let Some(r) = rational_root(&q, n) else {
            continue;
        };
        let sign = CyclotomicNumber::from_int(ext.conductor, if q.is_negative() { -1 } else { 1 });
        for j in 0..2 * conductor {
            let mut omega = CyclotomicNumber::zeta_pow(ext.conductor, j % conductor);
            if j >= conductor {
                omega = omega.neg();
            }
            if omega.pow(n as u64) == sign {
                let c = omega.scale(&r);
                return Ok(ext.monomial(c, &e));
            }
        }
    }
    Err(Error::NotRepresentable(format!(
        "no {n}-th root of {alpha} in the extension"
    )))
}

/// The Kummer symbol `∂α`: the homomorphism `σ ↦ ⟨σ, ⁿ√α⟩` from the Galois group
/// to `Z/n`, as a 1-cocycle for the trivial action.
pub fn galois_symbol(ext: &KummerExtension, alpha: &CyclotomicNumber, n: u32) -> Result<Cocycle> {
    let beta = nth_root_in_extension(ext, alpha, n)?;
    let group = ext.galois_group()?;
    let module = GModule::trivial(&group, FgAbelianGroup::cyclic(n as u64));
    let values = (0..group.order())
        .map(|g| {
            let sigma = ext.galois_element(g)?;
            let c = kummer_pairing(ext, &sigma, &beta, n)?;
            Ok(if n == 1 {
                Vec::new()
            } else {
                vec![BigInt::from(c)]
            })
        })
        .collect::<Result<_>>()?;
    Cocycle::new(1, group, module, values)
}
