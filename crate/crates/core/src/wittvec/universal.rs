//! Universal integer polynomials for Witt multiplication and Frobenius.
//!
//! `c_n(a_1..a_n, b_1..b_n)` is the `n`-th tail coefficient of the product of
//! `1 + Σ a_i t^i` and `1 + Σ b_i t^i`. It is obtained by pushing generic vectors
//! through the ghost map, multiplying componentwise, and running the inverse ghost
//! recursion; the only division in that recursion is by `n`, and it must be exact.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactring::{Elem, RingDescriptor};

/// Sparse multivariate polynomial with integer coefficients. Monomials are dense
/// exponent vectors over a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, BigInt>,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        IntPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, BigInt::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Coefficient of the monomial with the given exponent vector.
    pub fn coeff(&self, exps: &[u16]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, e: Vec<u16>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_assign(&mut self, other: &IntPoly) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    fn scale(&self, k: &BigInt) -> IntPoly {
        let mut out = IntPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out = IntPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u16> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Divides every coefficient by `n`, failing unless each division is exact.
    fn div_exact(&self, n: &BigInt) -> Result<IntPoly> {
        let mut out = IntPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(n);
            if !r.is_zero() {
                return Err(Error::IntegralityViolation(format!(
                    "coefficient {c}/{n} at {e:?}"
                )));
            }
            out.terms.insert(e.clone(), q);
        }
        Ok(out)
    }

    /// Evaluates at the given point; `vals.len()` must equal `nvars`.
    pub fn eval(&self, ring: &RingDescriptor, vals: &[Elem]) -> Elem {
        Compiled::new(self).eval(ring, vals)
    }
}

/// Generic ghost components `gh_1..gh_k` of the vector whose tail variables are
/// `offset..offset+k` among `nvars` variables.
fn generic_ghosts(nvars: usize, offset: usize, k: usize) -> Vec<IntPoly> {
    let mut gh: Vec<IntPoly> = Vec::with_capacity(k);
    for n in 1..=k {
        // gh_n = -n a_n - Σ_{j<n} gh_j a_{n-j}
        let mut acc = IntPoly::var(nvars, offset + n - 1).scale(&BigInt::from(n));
        for j in 1..n {
            acc.add_assign(&gh[j - 1].mul(&IntPoly::var(nvars, offset + n - j - 1)));
        }
        gh.push(acc.scale(&BigInt::from(-1)));
    }
    gh
}

/// Inverse ghost recursion applied to symbolic ghost components.
fn inverse_ghosts(targets: &[IntPoly]) -> Result<Vec<IntPoly>> {
    let mut out: Vec<IntPoly> = Vec::with_capacity(targets.len());
    for n in 1..=targets.len() {
        // -n c_n = g_n + Σ_{j<n} g_j c_{n-j}
        let mut acc = targets[n - 1].clone();
        for j in 1..n {
            acc.add_assign(&targets[j - 1].mul(&out[n - j - 1]));
        }
        out.push(acc.div_exact(&BigInt::from(-(n as i64)))?);
    }
    Ok(out)
}

/// Multiplication polynomials for depth `N` and Frobenius polynomials for every
/// `2 ≤ m ≤ N`.
#[derive(Debug)]
pub struct UniversalWittPolynomials {
    depth: usize,
    mul_polys: Vec<IntPoly>,
    frob_polys: BTreeMap<usize, Vec<IntPoly>>,
    mul_compiled: Vec<Compiled>,
    frob_compiled: BTreeMap<usize, Vec<Compiled>>,
}

impl UniversalWittPolynomials {
    /// Builds from scratch (no cache). Variables of `c_n` are `a_1..a_N` then
    /// `b_1..b_N`; variables of the Frobenius polynomials are `a_1..a_N`.
    pub fn build(depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidInput("depth must be at least 1".into()));
        }
        let nvars = 2 * depth;
        let gh_a = generic_ghosts(nvars, 0, depth);
        let gh_b = generic_ghosts(nvars, depth, depth);
        let products: Vec<IntPoly> = gh_a.iter().zip(&gh_b).map(|(x, y)| x.mul(y)).collect();
        let mul_polys = inverse_ghosts(&products)?;

        let gh = generic_ghosts(depth, 0, depth);
        let mut frob_polys = BTreeMap::new();
        for m in 2..=depth {
            let shifted: Vec<IntPoly> = (1..=depth / m).map(|n| gh[m * n - 1].clone()).collect();
            frob_polys.insert(m, inverse_ghosts(&shifted)?);
        }
        let mul_compiled = mul_polys.iter().map(Compiled::new).collect();
        let frob_compiled = frob_polys
            .iter()
            .map(|(m, ps)| (*m, ps.iter().map(Compiled::new).collect()))
            .collect();
        Ok(UniversalWittPolynomials {
            depth,
            mul_polys,
            frob_polys,
            mul_compiled,
            frob_compiled,
        })
    }

    /// Cached instance for `depth`. Concurrent first builders may race; they all
    /// produce identical values and the first insertion wins.
    pub fn get(depth: usize) -> Result<Arc<Self>> {
        static CACHE: OnceLock<RwLock<HashMap<usize, Arc<UniversalWittPolynomials>>>> =
            OnceLock::new();
        let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(p) = cache.read().unwrap().get(&depth) {
            return Ok(p.clone());
        }
        let built = Arc::new(Self::build(depth)?);
        Ok(cache.write().unwrap().entry(depth).or_insert(built).clone())
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `c_1, …, c_N`.
    pub fn mul_polys(&self) -> &[IntPoly] {
        &self.mul_polys
    }

    /// Tail polynomials of `F_m` at depth `N / m`, if `2 ≤ m ≤ N`.
    pub fn frob_polys(&self, m: usize) -> Option<&[IntPoly]> {
        self.frob_polys.get(&m).map(Vec::as_slice)
    }

    pub(crate) fn eval_mul(&self, ring: &RingDescriptor, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let vals: Vec<Elem> = a.iter().chain(b).cloned().collect();
        self.mul_compiled
            .iter()
            .map(|c| c.eval(ring, &vals))
            .collect()
    }

    pub(crate) fn eval_frob(
        &self,
        ring: &RingDescriptor,
        m: usize,
        a: &[Elem],
    ) -> Option<Vec<Elem>> {
        let polys = self.frob_compiled.get(&m)?;
        Some(polys.iter().map(|c| c.eval(ring, a)).collect())
    }
}

/// Evaluation-friendly layout: distinct monomials are evaluated once, and terms
/// are grouped by their leading half of variables.
#[derive(Debug)]
struct Compiled {
    nvars: usize,
    /// distinct "left" and "right" monomials as sparse (var, exp) lists
    left: Vec<Vec<(usize, u16)>>,
    right: Vec<Vec<(usize, u16)>>,
    /// for each left monomial: (right index, coefficient)
    groups: Vec<Vec<(usize, BigInt)>>,
    max_exp: Vec<u16>,
}

impl Compiled {
    fn new(p: &IntPoly) -> Self {
        let half = p.nvars.div_ceil(2);
        let mut left_idx: HashMap<Vec<(usize, u16)>, usize> = HashMap::new();
        let mut right_idx: HashMap<Vec<(usize, u16)>, usize> = HashMap::new();
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut groups: Vec<Vec<(usize, BigInt)>> = Vec::new();
        let mut max_exp = vec![0u16; p.nvars];
        for (e, c) in &p.terms {
            for (m, x) in max_exp.iter_mut().zip(e) {
                *m = (*m).max(*x);
            }
            let sparse = |range: std::ops::Range<usize>| -> Vec<(usize, u16)> {
                range.filter(|&i| e[i] > 0).map(|i| (i, e[i])).collect()
            };
            let l = sparse(0..half);
            let r = sparse(half..p.nvars);
            let li = *left_idx.entry(l.clone()).or_insert_with(|| {
                left.push(l);
                groups.push(Vec::new());
                left.len() - 1
            });
            let ri = *right_idx.entry(r.clone()).or_insert_with(|| {
                right.push(r);
                right.len() - 1
            });
            groups[li].push((ri, c.clone()));
        }
        Compiled {
            nvars: p.nvars,
            left,
            right,
            groups,
            max_exp,
        }
    }

    fn eval(&self, ring: &RingDescriptor, vals: &[Elem]) -> Elem {
        assert_eq!(vals.len(), self.nvars, "wrong number of evaluation points");
        // integer-backed rings: accumulate in Z and reduce once
        if let Some(ints) = vals.iter().map(Elem::as_int).collect::<Option<Vec<_>>>() {
            let powers: Vec<Vec<BigInt>> = ints
                .iter()
                .zip(&self.max_exp)
                .map(|(v, &m)| {
                    let mut p = vec![BigInt::one()];
                    for k in 1..=m as usize {
                        let next = &p[k - 1] * *v;
                        p.push(next);
                    }
                    p
                })
                .collect();
            let mono = |m: &[(usize, u16)]| -> BigInt {
                m.iter()
                    .fold(BigInt::one(), |acc, &(i, e)| acc * &powers[i][e as usize])
            };
            let rvals: Vec<BigInt> = self.right.iter().map(|m| mono(m)).collect();
            let mut total = BigInt::zero();
            for (l, group) in self.left.iter().zip(&self.groups) {
                let inner: BigInt = group.iter().map(|(ri, c)| c * &rvals[*ri]).sum();
                total += mono(l) * inner;
            }
            return ring.from_bigint(&total);
        }
        let powers: Vec<Vec<Elem>> = vals
            .iter()
            .zip(&self.max_exp)
            .map(|(v, &m)| {
                let mut p = vec![ring.one()];
                for k in 1..=m as usize {
                    let next = ring.mul(&p[k - 1], v);
                    p.push(next);
                }
                p
            })
            .collect();
        let mono = |m: &[(usize, u16)]| -> Elem {
            m.iter().fold(ring.one(), |acc, &(i, e)| {
                ring.mul(&acc, &powers[i][e as usize])
            })
        };
        let rvals: Vec<Elem> = self.right.iter().map(|m| mono(m)).collect();
        let mut total = ring.zero();
        for (l, group) in self.left.iter().zip(&self.groups) {
            let mut inner = ring.zero();
            for (ri, c) in group {
                inner = ring.add(&inner, &ring.mul_int(&rvals[*ri], c));
            }
            total = ring.add(&total, &ring.mul(&mono(l), &inner));
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_product_polynomial() {
        let u = UniversalWittPolynomials::build(3).unwrap();
        let c1 = &u.mul_polys()[0];
        // c_1 = -a_1 b_1
        assert_eq!(c1.len(), 1);
        assert_eq!(c1.coeff(&[1, 0, 0, 1, 0, 0]), BigInt::from(-1));
    }

    #[test]
    fn teichmuller_product_via_polynomials() {
        let u = UniversalWittPolynomials::build(2).unwrap();
        let z = RingDescriptor::Integers;
        let e = |v: i64| z.from_int(v);
        // [2] ⊙ [3] = [6]: a = (-2, 0), b = (-3, 0)
        let out = u.eval_mul(&z, &[e(-2), e(0)], &[e(-3), e(0)]);
        assert_eq!(out, vec![e(-6), e(0)]);
    }

    #[test]
    fn frobenius_polynomials_exist() {
        let u = UniversalWittPolynomials::build(6).unwrap();
        assert_eq!(u.frob_polys(2).unwrap().len(), 3);
        assert_eq!(u.frob_polys(4).unwrap().len(), 1);
        assert!(u.frob_polys(7).is_none());
        // roots α, β: F_2 tail_1 = -(α² + β²) = -a_1² + 2 a_2
        let f = &u.frob_polys(2).unwrap()[0];
        assert_eq!(f.coeff(&[2, 0, 0, 0, 0, 0]), BigInt::from(-1));
        assert_eq!(f.coeff(&[0, 1, 0, 0, 0, 0]), BigInt::from(2));
    }

    #[test]
    fn cache_returns_shared_instance() {
        let a = UniversalWittPolynomials::get(4).unwrap();
        let b = UniversalWittPolynomials::get(4).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}
