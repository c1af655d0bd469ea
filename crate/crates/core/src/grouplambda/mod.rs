//! Group rings `Z[M]` of finitely generated abelian groups with their Frobenius lifts
//! `φ_p: [m] ↦ [pm]`, and the homomorphism `Z[M] → W_rat(A)` sending `[m]` to the
//! Teichmüller lift of an assigned image of `m`.
//!
//! Groups are written additively; the Witt bridge switches to multiplicative notation.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dualtop::{smith_normal_form, IntegerMatrix};
use crate::error::{Error, Result};
use crate::exactring::{is_prime, Elem, Polynomial, RingDescriptor};
use crate::wittrat::{wr_frobenius, wr_normalize, RationalWittVector};

/// `Z^r ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with `d_1 | d_2 | … | d_k` and every `d_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FgAbelianGroup {
    #[serde(rename = "rank")]
    free_rank: usize,
    torsion: Vec<u64>,
}

impl FgAbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self> {
        if let Some(d) = torsion.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidGroup(format!(
                "invariant factor {d} must be at least 2"
            )));
        }
        if torsion.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidGroup(format!(
                "invariant factors {torsion:?} do not form a divisibility chain"
            )));
        }
        Ok(FgAbelianGroup { free_rank, torsion })
    }

    pub fn trivial() -> Self {
        FgAbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::trivial(),
            _ => FgAbelianGroup {
                free_rank: 0,
                torsion: vec![n],
            },
        }
    }

    /// The cokernel `Z^rows / (columns of relations)`, put in invariant-factor form.
    pub fn from_presentation(relations: &IntegerMatrix) -> Result<Self> {
        let snf = smith_normal_form(relations);
        let diag = snf.diagonal();
        let mut free_rank = relations.rows() - diag.len();
        let mut torsion = Vec::new();
        for d in diag {
            if d.is_zero() {
                free_rank += 1;
            } else if !d.is_one() {
                let d = u64::try_from(&d)
                    .map_err(|_| Error::TooLarge(format!("invariant factor {d}")))?;
                torsion.push(d);
            }
        }
        Self::new(free_rank, torsion)
    }

    /// Direct sum, re-normalized to invariant factors.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let all: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        let diag: Vec<BigInt> = all.iter().map(|&d| BigInt::from(d)).collect();
        let t = Self::from_presentation(&IntegerMatrix::diagonal(&diag)).expect("finite orders");
        FgAbelianGroup {
            free_rank: self.free_rank + other.free_rank,
            torsion: t.torsion,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    /// Number of coordinates of an element: free ones first, then torsion ones.
    pub fn ngens(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// The torsion subgroup `M_tors`.
    pub fn torsion_part(&self) -> Self {
        FgAbelianGroup {
            free_rank: 0,
            torsion: self.torsion.clone(),
        }
    }

    /// Modulus of coordinate `i` (0 for free coordinates).
    pub fn modulus(&self, i: usize) -> u64 {
        if i < self.free_rank {
            0
        } else {
            self.torsion[i - self.free_rank]
        }
    }

    /// Reduces torsion coordinates into `0..d_i`.
    pub fn reduce(&self, x: &[i64]) -> Result<Vec<i64>> {
        if x.len() != self.ngens() {
            return Err(Error::InvalidInput(format!(
                "element {x:?} needs {} coordinates",
                self.ngens()
            )));
        }
        Ok(x.iter()
            .enumerate()
            .map(|(i, &c)| self.reduce_coord(i, c))
            .collect())
    }

    fn reduce_coord(&self, i: usize, c: i64) -> i64 {
        match self.modulus(i) {
            0 => c,
            d => c.rem_euclid(d as i64),
        }
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(y)
            .enumerate()
            .map(|(i, (a, b))| self.reduce_coord(i, a + b))
            .collect()
    }

    pub fn scale(&self, k: i64, x: &[i64]) -> Vec<i64> {
        x.iter()
            .enumerate()
            .map(|(i, a)| self.reduce_coord(i, k * a))
            .collect()
    }

    pub fn identity(&self) -> Vec<i64> {
        vec![0; self.ngens()]
    }

    /// All elements of a finite group in lexicographic order.
    pub fn elements(&self) -> Result<Vec<Vec<i64>>> {
        if !self.is_finite() {
            return Err(Error::InvalidGroup(
                "cannot enumerate an infinite group".into(),
            ));
        }
        let mut out = vec![Vec::new()];
        for &d in &self.torsion {
            out = out
                .into_iter()
                .flat_map(|v| (0..d as i64).map(move |c| [v.clone(), vec![c]].concat()))
                .collect();
        }
        Ok(out)
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.torsion.iter().map(u64::to_string).collect();
        match (self.free_rank, t.is_empty()) {
            (r, true) => write!(f, "rank={r}"),
            (0, false) => write!(f, "torsion={}", t.join(",")),
            (r, false) => write!(f, "rank={r};torsion={}", t.join(",")),
        }
    }
}

impl FromStr for FgAbelianGroup {
    type Err = Error;

    /// Parses `rank=r;torsion=d1,d2,…`; either part may be omitted.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid group `{s}`"));
        let (mut rank, mut torsion) = (0usize, Vec::new());
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, val) = part.split_once('=').ok_or_else(bad)?;
            match key.trim() {
                "rank" => rank = val.trim().parse().map_err(|_| bad())?,
                "torsion" => {
                    torsion = val
                        .split(',')
                        .map(str::trim)
                        .filter(|v| !v.is_empty())
                        .map(|v| v.parse::<u64>().map_err(|_| bad()))
                        .collect::<Result<_>>()?
                }
                _ => return Err(bad()),
            }
        }
        Self::new(rank, torsion)
    }
}

/// A finite integer combination `Σ c_m [m]` in `Z[M]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    group: FgAbelianGroup,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl GroupRingElement {
    pub fn zero(group: &FgAbelianGroup) -> Self {
        GroupRingElement {
            group: group.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The unit `[0]`.
    pub fn one(group: &FgAbelianGroup) -> Self {
        Self::basis(group, &group.identity()).expect("identity has the right shape")
    }

    pub fn basis(group: &FgAbelianGroup, m: &[i64]) -> Result<Self> {
        Self::from_terms(group, [(m.to_vec(), BigInt::one())])
    }

    /// Collects terms, reducing exponents and dropping zero coefficients.
    pub fn from_terms(
        group: &FgAbelianGroup,
        terms: impl IntoIterator<Item = (Vec<i64>, BigInt)>,
    ) -> Result<Self> {
        let mut out = Self::zero(group);
        for (m, c) in terms {
            let m = group.reduce(&m)?;
            out.add_term(m, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, m: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch {
                left: self.group.to_string(),
                right: other.group.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Convolution: `[m]·[m'] = [m + m']`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let mut out = Self::zero(&self.group);
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                out.add_term(self.group.add(m, n), c * d);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.group);
        for _ in 0..e {
            acc = acc.mul(self).expect("same group");
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(&self.group);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    /// Linear extension of `[m] ↦ [k·m]`.
    pub fn dilate(&self, k: i64) -> Self {
        let mut out = Self::zero(&self.group);
        for (m, c) in &self.terms {
            out.add_term(self.group.scale(k, m), c.clone());
        }
        out
    }

    /// Whether every coefficient is divisible by `p`.
    pub fn divisible_by(&self, p: u64) -> bool {
        let p = BigInt::from(p);
        self.terms.values().all(|c| c.is_multiple_of(&p))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| serde_json::json!({ "exp": m, "coeff": crate::json::bigint(c) }))
            .collect();
        serde_json::json!({ "rank": self.group.free_rank, "torsion": self.group.torsion, "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::Parse("invalid group ring element JSON".into());
        let rank = v["rank"].as_u64().ok_or_else(bad)? as usize;
        let torsion: Vec<u64> = serde_json::from_value(v["torsion"].clone()).map_err(|_| bad())?;
        let group = FgAbelianGroup::new(rank, torsion)?;
        let mut terms = Vec::new();
        for t in v["terms"].as_array().ok_or_else(bad)? {
            let exp: Vec<i64> = serde_json::from_value(t["exp"].clone()).map_err(|_| bad())?;
            let coeff = crate::json::parse_bigint(&t["coeff"])?;
            terms.push((exp, coeff));
        }
        Self::from_terms(&group, terms)
    }

    /// Parses the text form produced by `Display`, e.g. `2[1,0]-[0,3]+[0,0]`.
    pub fn parse(group: &FgAbelianGroup, s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in group ring element `{s}`"));
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src == "0" {
            return Ok(Self::zero(group));
        }
        let mut terms = Vec::new();
        let mut rest = src.as_str();
        while !rest.is_empty() {
            let (sign, r) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ if terms.is_empty() => (1, rest),
                _ => return Err(bad("expected a sign")),
            };
            let open = r.find('[').ok_or_else(|| bad("expected `[`"))?;
            let coeff_txt = r[..open].trim_end_matches('*');
            let coeff = if coeff_txt.is_empty() {
                BigInt::one()
            } else {
                coeff_txt
                    .parse::<BigInt>()
                    .map_err(|_| bad("bad coefficient"))?
            };
            let close = r.find(']').ok_or_else(|| bad("expected `]`"))?;
            let inner = &r[open + 1..close];
            let exp = if inner.is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|x| x.parse::<i64>().map_err(|_| bad("bad exponent")))
                    .collect::<Result<_>>()?
            };
            terms.push((exp, coeff * sign));
            rest = &r[close + 1..];
        }
        Self::from_terms(group, terms)
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if c.is_negative() {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            if !c.abs().is_one() {
                write!(f, "{}", c.abs())?;
            }
            let e: Vec<String> = m.iter().map(i64::to_string).collect();
            write!(f, "[{}]", e.join(","))?;
        }
        Ok(())
    }
}

pub fn gr_add(x: &GroupRingElement, y: &GroupRingElement) -> Result<GroupRingElement> {
    x.add(y)
}

pub fn gr_mul(x: &GroupRingElement, y: &GroupRingElement) -> Result<GroupRingElement> {
    x.mul(y)
}

/// The Frobenius lift `φ_p: [m] ↦ [pm]`.
pub fn gr_frobenius_lift(p: u64, x: &GroupRingElement) -> Result<GroupRingElement> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(x.dilate(p as i64))
}

/// `x^p - φ_p(x)`, whose coefficients are all divisible by `p`.
pub fn frobenius_congruence_check(p: u64, x: &GroupRingElement) -> Result<GroupRingElement> {
    let lift = gr_frobenius_lift(p, x)?;
    x.pow(p as u32).sub(&lift)
}

pub fn lambda_commute_check(p: u64, q: u64, x: &GroupRingElement) -> Result<bool> {
    let pq = gr_frobenius_lift(p, &gr_frobenius_lift(q, x)?)?;
    let qp = gr_frobenius_lift(q, &gr_frobenius_lift(p, x)?)?;
    Ok(pq == qp)
}

/// Images of the generators of `M` in a ring: free generators go to units, the
/// generator of `Z/d` to an element whose `d`-th power is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittAssignment {
    group: FgAbelianGroup,
    ring: RingDescriptor,
    images: Vec<Elem>,
}

impl WittAssignment {
    pub fn new(group: FgAbelianGroup, ring: RingDescriptor, images: Vec<Elem>) -> Result<Self> {
        if images.len() != group.ngens() {
            return Err(Error::InvalidInput(format!(
                "{} generator images expected",
                group.ngens()
            )));
        }
        for (i, a) in images.iter().enumerate() {
            ring.check(a)?;
            match group.modulus(i) {
                0 if !ring.is_unit(a) => {
                    return Err(Error::NotAUnit {
                        ring: ring.to_string(),
                        elem: ring.format(a),
                    });
                }
                0 => {}
                d if !ring.is_one(&ring.pow(a, d)) => {
                    return Err(Error::InvalidAction(format!(
                        "image {} of a generator of order {d} is not a {d}-th root of unity",
                        ring.format(a)
                    )));
                }
                _ => {}
            }
        }
        Ok(WittAssignment {
            group,
            ring,
            images,
        })
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    /// `∏ image_i^{m_i}`.
    pub fn eval(&self, m: &[i64]) -> Result<Elem> {
        let r = &self.ring;
        let mut acc = r.one();
        for (a, &e) in self.images.iter().zip(m) {
            acc = r.mul(&acc, &r.pow_signed(a, e)?);
        }
        Ok(acc)
    }
}

/// `Σ c_m [m] ↦ ∏ (1 - eval(m) t)^{c_m}` as a rational Witt vector.
pub fn to_witt(x: &GroupRingElement, asg: &WittAssignment) -> Result<RationalWittVector> {
    if x.group != asg.group {
        return Err(Error::GroupMismatch {
            left: x.group.to_string(),
            right: asg.group.to_string(),
        });
    }
    let r = &asg.ring;
    if !(r.is_integral_domain() && r.is_integrally_closed()) {
        return Err(Error::Unsupported {
            op: "to_witt",
            ring: r.to_string(),
        });
    }
    let mut num = Polynomial::one(r);
    let mut den = Polynomial::one(r);
    for (m, c) in &x.terms {
        let a = asg.eval(m)?;
        let factor = Polynomial::new(r.clone(), vec![r.one(), r.neg(&a)])?;
        let e = u64::try_from(c.abs()).map_err(|_| Error::TooLarge(format!("coefficient {c}")))?;
        let power = factor.pow(e);
        if c.is_positive() {
            num = num.mul(&power)?;
        } else {
            den = den.mul(&power)?;
        }
    }
    wr_normalize(&num, &den)
}

/// Whether `to_witt(φ_p x) = F_p(to_witt x)`.
pub fn frobenius_compat_check(p: u64, x: &GroupRingElement, asg: &WittAssignment) -> Result<bool> {
    let lhs = to_witt(&gr_frobenius_lift(p, x)?, asg)?;
    let rhs = wr_frobenius(p as usize, &to_witt(x, asg)?)?;
    Ok(lhs == rhs)
}
