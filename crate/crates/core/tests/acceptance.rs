//! Acceptance battery. Prints one PASS/FAIL line per criterion and exits nonzero
//! if any criterion fails.
//!
//! Oracles here are written independently of the library algorithms: ghost maps
//! through series logarithms and exponentials, Ext through determinantal divisors,
//! subgroup counts through bitset enumeration, and cohomology of cyclic groups
//! through the periodic resolution.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wittkit::dualtop::{
    covering_deck_group, enumerate_overlattices, ext_from_presentation, ext_to_z,
    presentation_matrix, solenoid_stage_chain, IntegerMatrix,
};
use wittkit::exactring::{CyclotomicNumber, Elem, Polynomial, RingDescriptor};
use wittkit::grouplambda::{
    frobenius_compat_check, frobenius_congruence_check, gr_frobenius_lift, FgAbelianGroup,
    GroupRingElement, WittAssignment,
};
use wittkit::kummercoh::{
    bar_differential, group_cohomology, hilbert90_resolvent, kummer_pairing_matrix, FiniteGroup,
    GModule, KummerExtension, ResolventConfig,
};
use wittkit::wittrat::{base_change, phi_p, phi_p_minus_scalar_check, RationalWittVector};
use wittkit::wittvec::{build_universal_polys, TruncatedWittVector};

type Q = BigRational;
type Outcome = Result<(), String>;

const WITT_AXIOM_BUDGET: Duration = Duration::from_secs(60);
const SOLENOID_BUDGET: Duration = Duration::from_secs(1);

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: wittkit::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

// ---------- series oracles over Q ----------

fn series_mul(a: &[Q], b: &[Q], n: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn series_inv(a: &[Q], n: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n];
    out[0] = a[0].recip();
    for k in 1..n {
        let mut s = Q::zero();
        for j in 1..=k.min(a.len() - 1) {
            s += &a[j] * &out[k - j];
        }
        out[k] = -s * &out[0];
    }
    out
}

/// Ghost components of `1 + a_1 t + …`: the coefficients of `-t f'/f`.
fn oracle_ghost(tail: &[Q]) -> Vec<Q> {
    let n = tail.len();
    let mut f = vec![Q::one()];
    f.extend(tail.iter().cloned());
    let deriv: Vec<Q> = (0..=n)
        .map(|i| {
            if i == 0 {
                Q::zero()
            } else {
                -&f[i] * q(i as i64)
            }
        })
        .collect();
    let prod = series_mul(&deriv, &series_inv(&f, n + 1), n + 1);
    prod[1..].to_vec()
}

/// Inverse of [`oracle_ghost`]: `f = exp(-Σ g_n t^n / n)`.
fn oracle_ghost_inverse(g: &[Q]) -> Vec<Q> {
    let n = g.len();
    let h: Vec<Q> = (0..=n)
        .map(|i| {
            if i == 0 {
                Q::zero()
            } else {
                -&g[i - 1] / q(i as i64)
            }
        })
        .collect();
    let mut e = vec![Q::one(); n + 1];
    for k in 1..=n {
        let mut s = Q::zero();
        for j in 1..=k {
            s += q(j as i64) * &h[j] * &e[k - j];
        }
        e[k] = s / q(k as i64);
    }
    e[1..].to_vec()
}

fn oracle_witt_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let (ga, gb) = (oracle_ghost(a), oracle_ghost(b));
    oracle_ghost_inverse(&ga.iter().zip(&gb).map(|(x, y)| x * y).collect::<Vec<_>>())
}

fn elem_to_q(e: &Elem) -> Q {
    match e {
        Elem::Int(n) => Q::from_integer(n.clone()),
        Elem::Rat(r) => r.clone(),
        Elem::Cyc(c) => c.as_rational().expect("rational element"),
    }
}

fn tail_q(u: &TruncatedWittVector) -> Vec<Q> {
    u.tail().iter().map(elem_to_q).collect()
}

/// `num/den` expanded to depth `n`, for polynomials over Z with constant term 1.
fn expand_fraction(num: &Polynomial, den: &Polynomial, n: usize) -> Vec<Q> {
    let to_q = |p: &Polynomial| p.coeffs().iter().map(elem_to_q).collect::<Vec<_>>();
    let s = series_mul(&to_q(num), &series_inv(&to_q(den), n + 1), n + 1);
    s[1..].to_vec()
}

// ---------- random data ----------

fn rings() -> Vec<RingDescriptor> {
    vec![
        RingDescriptor::Integers,
        RingDescriptor::IntegersMod(12),
        RingDescriptor::PrimeField(7),
        RingDescriptor::Rationals,
    ]
}

fn rand_elem(ring: &RingDescriptor, rng: &mut ChaCha8Rng) -> Elem {
    if *ring == RingDescriptor::Rationals {
        ring.from_rational(&Q::new(
            rng.gen_range(-6..=6).into(),
            rng.gen_range(1..=4).into(),
        ))
        .unwrap()
    } else {
        ring.from_int(rng.gen_range(-9..=9))
    }
}

fn rand_witt(ring: &RingDescriptor, n: usize, rng: &mut ChaCha8Rng) -> TruncatedWittVector {
    TruncatedWittVector::new(ring.clone(), (0..n).map(|_| rand_elem(ring, rng)).collect()).unwrap()
}

fn rand_fraction(rng: &mut ChaCha8Rng) -> RationalWittVector {
    let z = RingDescriptor::Integers;
    let mut side = || {
        let mut c = vec![1i64];
        c.extend((0..rng.gen_range(0..=4)).map(|_| rng.gen_range(-4..=4)));
        Polynomial::from_ints(&z, &c)
    };
    let num = side();
    let den = side();
    RationalWittVector::new(num, den).unwrap()
}

// ---------- criteria ----------

fn c1_ring_axioms() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for ring in rings() {
        for n in 1..=8 {
            let one = TruncatedWittVector::one(&ring, n).unwrap();
            let zero = TruncatedWittVector::zero(&ring, n).unwrap();
            for _ in 0..200 {
                let (u, v, w) = (
                    rand_witt(&ring, n, &mut rng),
                    rand_witt(&ring, n, &mut rng),
                    rand_witt(&ring, n, &mut rng),
                );
                let uv = lib(u.mul(&v))?;
                let ok = lib(u.add(&v))? == lib(v.add(&u))?
                    && lib(lib(u.add(&v))?.add(&w))? == lib(u.add(&lib(v.add(&w))?))?
                    && uv == lib(v.mul(&u))?
                    && lib(uv.mul(&w))? == lib(u.mul(&lib(v.mul(&w))?))?
                    && lib(u.mul(&lib(v.add(&w))?))? == lib(uv.add(&lib(u.mul(&w))?))?
                    && lib(u.mul(&one))? == u
                    && lib(u.add(&zero))? == u
                    && lib(u.add(&u.neg()))? == zero;
                ensure(ok, || {
                    format!("axiom failure over {ring} at N={n}: {u:?} {v:?} {w:?}")
                })?;
            }
        }
    }
    let t = start.elapsed();
    ensure(t < WITT_AXIOM_BUDGET, || format!("took {t:?}"))
}

fn c2_teichmuller() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for ring in rings() {
        for _ in 0..100 {
            let (a, b) = (rand_elem(&ring, &mut rng), rand_elem(&ring, &mut rng));
            let n = rng.gen_range(1..=8);
            let prod = lib(lib(TruncatedWittVector::teichmuller(&a, &ring, n))?
                .mul(&lib(TruncatedWittVector::teichmuller(&b, &ring, n))?))?;
            // 1 - ab t, written out directly
            let mut tail = vec![ring.neg(&ring.mul(&a, &b))];
            tail.resize(n, ring.zero());
            ensure(prod.tail() == tail.as_slice(), || {
                format!("[{a:?}][{b:?}] over {ring}")
            })?;
        }
    }
    Ok(())
}

fn c3_ghost() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for ring in [RingDescriptor::Integers, RingDescriptor::Rationals] {
        for _ in 0..100 {
            let n = rng.gen_range(1..=8);
            let (u, v) = (rand_witt(&ring, n, &mut rng), rand_witt(&ring, n, &mut rng));
            let gsum = lib(u.add(&v))?.ghost();
            let gprod = lib(u.mul(&v))?.ghost();
            let expect_sum = lib(u.ghost().add(&v.ghost()))?;
            let expect_prod = lib(u.ghost().mul(&v.ghost()))?;
            ensure(gsum == expect_sum && gprod == expect_prod, || {
                format!("ghost not a homomorphism on {u:?}, {v:?}")
            })?;
            let oracle: Vec<Q> = oracle_ghost(&tail_q(&u));
            let got: Vec<Q> = u.ghost().components().iter().map(elem_to_q).collect();
            ensure(oracle == got, || {
                format!("ghost of {u:?} disagrees with -t f'/f")
            })?;
        }
    }
    let qr = RingDescriptor::Rationals;
    for n in 1..=10 {
        for _ in 0..20 {
            let u = rand_witt(&qr, n, &mut rng);
            let back = lib(TruncatedWittVector::ghost_inverse(&u.ghost()))?;
            ensure(back == u, || format!("ghost_inverse∘ghost ≠ id on {u:?}"))?;
            let g: Vec<Q> = (0..n)
                .map(|_| Q::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=5).into()))
                .collect();
            let gv = lib(wittkit::wittvec::GhostVector::new(
                qr.clone(),
                g.iter().map(|x| qr.from_rational(x).unwrap()).collect(),
            ))?;
            let w = lib(TruncatedWittVector::ghost_inverse(&gv))?;
            ensure(oracle_ghost(&tail_q(&w)) == g, || {
                format!("ghost∘ghost_inverse ≠ id on {g:?}")
            })?;
            ensure(tail_q(&w) == oracle_ghost_inverse(&g), || {
                "ghost_inverse disagrees with exp".into()
            })?;
        }
    }
    Ok(())
}

fn c4_universal() -> Outcome {
    let polys = lib(build_universal_polys(8))?;
    ensure(polys.mul_polys().len() == 8, || {
        "wrong number of product polynomials".into()
    })?;
    let c1 = &polys.mul_polys()[0];
    let mut a1b1 = vec![0u16; 16];
    a1b1[0] = 1;
    a1b1[8] = 1;
    ensure(c1.len() == 1 && c1.coeff(&a1b1) == BigInt::from(-1), || {
        "c_1 ≠ -a_1 b_1".into()
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for ring in [RingDescriptor::Rationals, RingDescriptor::Integers] {
        for _ in 0..100 {
            let n = rng.gen_range(1..=8);
            let (u, v) = (rand_witt(&ring, n, &mut rng), rand_witt(&ring, n, &mut rng));
            let got = tail_q(&lib(u.mul(&v))?);
            let want = oracle_witt_mul(&tail_q(&u), &tail_q(&v));
            ensure(got == want, || {
                format!("witt_mul ≠ ghost route on {u:?}, {v:?} over {ring}")
            })?;
            if ring == RingDescriptor::Integers {
                ensure(want.iter().all(|x| x.is_integer()), || {
                    "ghost route left Z".into()
                })?;
            }
        }
    }
    Ok(())
}

fn c5_rational_closure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let z = RingDescriptor::Integers;
    for _ in 0..100 {
        let (u, v) = (rand_fraction(&mut rng), rand_fraction(&mut rng));
        let w = lib(u.mul(&v))?;
        let eu = expand_fraction(u.num(), u.den(), 12);
        let ev = expand_fraction(v.num(), v.den(), 12);
        let ew = expand_fraction(w.num(), w.den(), 12);
        let to_witt = |s: &[Q]| {
            TruncatedWittVector::new(
                z.clone(),
                s.iter().map(|x| z.from_bigint(&x.to_integer())).collect(),
            )
        };
        let prod = lib(lib(to_witt(&eu))?.mul(&lib(to_witt(&ev))?))?;
        ensure(tail_q(&prod) == ew, || {
            format!("{u} ⊙ {v} = {w} does not embed correctly")
        })?;
        ensure(oracle_witt_mul(&eu, &ev) == ew, || {
            format!("{u} ⊙ {v} disagrees with the ghost oracle")
        })?;
    }
    Ok(())
}

fn c6_phi() -> Outcome {
    for p in [2u64, 3, 5] {
        let phi = lib(phi_p(p))?;
        let depth = 2 * p as usize;
        let g = oracle_ghost(&expand_fraction(phi.num(), phi.den(), depth));
        for (i, x) in g.iter().enumerate() {
            let want = if (i as u64 + 1) % p == 0 {
                p as i64 - 1
            } else {
                -1
            };
            ensure(*x == q(want), || format!("ghost_{} of Φ_{p} is {x}", i + 1))?;
        }
        let z = RingDescriptor::Integers;
        let scalar = RationalWittVector::one(&z).scalar(p as i64 - 1);
        let diff = lib(phi.sub(&scalar))?;
        let dg = oracle_ghost(&expand_fraction(diff.num(), diff.den(), depth));
        ensure(
            dg.iter().all(|x| x.is_zero() || *x == q(-(p as i64))),
            || format!("Φ_{p} ⊖ (p-1)[1]: {dg:?}"),
        )?;
        let check: Vec<Q> = lib(phi_p_minus_scalar_check(p, depth))?
            .components()
            .iter()
            .map(elem_to_q)
            .collect();
        ensure(check == dg, || {
            "phi_p_minus_scalar_check disagrees with the oracle".into()
        })?;
        let field = lib(RingDescriptor::cyclotomic(p as u32))?;
        let mut sum = RationalWittVector::zero(&field);
        for i in 1..p {
            let zeta = Elem::Cyc(CyclotomicNumber::zeta_pow(p as u32, i as i64));
            sum = lib(sum.add(&lib(RationalWittVector::teichmuller(&zeta, &field))?))?;
        }
        ensure(sum == lib(base_change(&phi, &field))?, || {
            format!("Φ_{p} ≠ Σ[ζ^i] over Q(ζ_{p})")
        })?;
    }
    Ok(())
}

fn rand_group_ring(g: &FgAbelianGroup, rng: &mut ChaCha8Rng, coeff: i64) -> GroupRingElement {
    let terms: Vec<(Vec<i64>, BigInt)> = (0..rng.gen_range(1..=4))
        .map(|_| {
            (
                (0..g.ngens()).map(|_| rng.gen_range(-3..=3)).collect(),
                BigInt::from(rng.gen_range(-coeff..=coeff)),
            )
        })
        .collect();
    GroupRingElement::from_terms(g, terms).unwrap()
}

fn c7_lambda() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let groups: Vec<FgAbelianGroup> = ["rank=1", "rank=2", "rank=1;torsion=6", "torsion=2,4"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let primes = [2u64, 3, 5];
    for _ in 0..100 {
        let g = groups.choose(&mut rng).unwrap();
        let (p, r) = (
            *primes.choose(&mut rng).unwrap(),
            *primes.choose(&mut rng).unwrap(),
        );
        let x = rand_group_ring(g, &mut rng, 4);
        let pq = lib(gr_frobenius_lift(p, &lib(gr_frobenius_lift(r, &x))?))?;
        let qp = lib(gr_frobenius_lift(r, &lib(gr_frobenius_lift(p, &x))?))?;
        // [m] ↦ [pq m], written out
        let direct = lib(GroupRingElement::from_terms(
            g,
            x.terms()
                .map(|(m, c)| (m.iter().map(|e| e * (p * r) as i64).collect(), c.clone())),
        ))?;
        ensure(pq == qp && pq == direct, || {
            format!("φ_{p}φ_{r} ≠ φ_{r}φ_{p} on {x}")
        })?;
    }
    for _ in 0..200 {
        let g = groups.choose(&mut rng).unwrap();
        let p = *primes.choose(&mut rng).unwrap();
        let x = rand_group_ring(g, &mut rng, 4);
        let mut xp = GroupRingElement::one(g);
        for _ in 0..p {
            xp = lib(xp.mul(&x))?;
        }
        let d = lib(frobenius_congruence_check(p, &x))?;
        ensure(d == lib(xp.sub(&lib(gr_frobenius_lift(p, &x))?))?, || {
            "congruence difference miscomputed".into()
        })?;
        ensure(
            d.terms().all(|(_, c)| c.is_multiple_of(&BigInt::from(p))),
            || format!("x^{p} - φ_{p}(x) ≢ 0 for {x}"),
        )?;
    }
    let qz4 = RingDescriptor::CyclotomicField(4);
    let assignments = [
        WittAssignment::new(
            "rank=1".parse().unwrap(),
            RingDescriptor::Integers,
            vec![RingDescriptor::Integers.from_int(-1)],
        ),
        WittAssignment::new(
            "rank=1;torsion=4".parse().unwrap(),
            qz4.clone(),
            vec![qz4.from_int(3), Elem::Cyc(CyclotomicNumber::zeta(4))],
        ),
        WittAssignment::new(
            "rank=2".parse().unwrap(),
            RingDescriptor::Rationals,
            vec![
                RingDescriptor::Rationals.from_int(2),
                RingDescriptor::Rationals.from_int(-3),
            ],
        ),
    ]
    .into_iter()
    .collect::<wittkit::Result<Vec<_>>>()
    .map_err(|e| e.to_string())?;
    for _ in 0..50 {
        let asg = assignments.choose(&mut rng).unwrap();
        let p = *primes.choose(&mut rng).unwrap();
        let x = rand_group_ring(asg.group(), &mut rng, 2);
        ensure(lib(frobenius_compat_check(p, &x, asg))?, || {
            format!("to_witt∘φ_{p} ≠ F_{p}∘to_witt on {x}")
        })?;
    }
    Ok(())
}

/// Determinant by cofactor expansion.
fn det(m: &[Vec<BigInt>]) -> BigInt {
    match m.len() {
        0 => BigInt::one(),
        1 => m[0][0].clone(),
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                s * &m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..1u32 << n)
        .filter(|b| b.count_ones() as usize == k)
        .map(|b| (0..n).filter(|i| b >> i & 1 == 1).collect())
        .collect()
}

/// Invariant factors of an integer matrix via gcds of minors.
fn determinantal_invariants(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut g = BigInt::zero();
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let sub: Vec<Vec<BigInt>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect())
                    .collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn torsion_chains() -> Vec<Vec<u64>> {
    let mut all = vec![vec![]];
    for len in 1..=3 {
        let mut found = Vec::new();
        let mut stack: Vec<Vec<u64>> = vec![vec![]];
        while let Some(c) = stack.pop() {
            if c.len() == len {
                found.push(c);
                continue;
            }
            for d in 2..=12u64 {
                if c.last().is_none_or(|l| d % l == 0) {
                    let mut n = c.clone();
                    n.push(d);
                    stack.push(n);
                }
            }
        }
        found.sort();
        all.extend(found);
    }
    all
}

fn unimodular(n: usize, rng: &mut ChaCha8Rng) -> IntegerMatrix {
    let mut rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..4 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            let k = rng.gen_range(-2..=2);
            for col in 0..n {
                rows[i][col] += k * rows[j][col];
            }
        }
    }
    IntegerMatrix::from_rows(&rows).unwrap()
}

/// Subgroups of order `n` in `(Z/n)²` by closure of generator pairs, deduplicated as bitsets.
fn brute_force_subgroup_count(n: usize) -> usize {
    let words = (n * n).div_ceil(64);
    let span = |gens: &[(usize, usize)]| -> Vec<u64> {
        let mut bits = vec![0u64; words];
        let mut frontier = vec![(0usize, 0usize)];
        bits[0] |= 1;
        while let Some((x, y)) = frontier.pop() {
            for &(a, b) in gens {
                let (u, v) = ((x + a) % n, (y + b) % n);
                let k = u * n + v;
                if bits[k / 64] >> (k % 64) & 1 == 0 {
                    bits[k / 64] |= 1 << (k % 64);
                    frontier.push((u, v));
                }
            }
        }
        bits
    };
    let mut cyclic: BTreeSet<Vec<u64>> = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            cyclic.insert(span(&[(a, b)]));
        }
    }
    let gens: Vec<(usize, usize)> = cyclic
        .iter()
        .map(|bits| {
            // a generator of the cyclic group: an element of maximal order inside it
            (0..n * n)
                .filter(|&k| bits[k / 64] >> (k % 64) & 1 == 1)
                .max_by_key(|&k| {
                    let (a, b) = (k / n, k % n);
                    let o = |x: usize| n / x.gcd(&n);
                    o(a).lcm(&o(b))
                })
                .map(|k| (k / n, k % n))
                .unwrap()
        })
        .collect();
    let order = |bits: &[u64]| bits.iter().map(|w| w.count_ones() as usize).sum::<usize>();
    let mut found: BTreeSet<Vec<u64>> = BTreeSet::new();
    for i in 0..gens.len() {
        for j in i..gens.len() {
            let s = span(&[gens[i], gens[j]]);
            if order(&s) == n {
                found.insert(s);
            }
        }
    }
    found.len()
}

fn c8_pontryagin() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for torsion in torsion_chains() {
        for rank in 0..=2 {
            let m = lib(FgAbelianGroup::new(rank, torsion.clone()))?;
            let k = m.ngens();
            let a = presentation_matrix(&m);
            let scrambled = lib(
                lib(unimodular(k, &mut rng).mul(&a))?.mul(&unimodular(torsion.len(), &mut rng))
            )?;
            let oracle: Vec<u64> = determinantal_invariants(&scrambled.transpose().to_rows())
                .into_iter()
                .map(|d| u64::try_from(d.abs()).unwrap())
                .filter(|&d| d != 1)
                .collect();
            let from_pres = lib(ext_from_presentation(&scrambled))?;
            let direct = ext_to_z(&m);
            ensure(
                from_pres.free_rank() == 0
                    && from_pres.torsion() == oracle.as_slice()
                    && direct == from_pres,
                || format!("Ext({m}, Z): got {from_pres} and {direct}, minors give {oracle:?}"),
            )?;
        }
    }
    for n in 1..=30u64 {
        let lattices = lib(enumerate_overlattices(2, n))?;
        let sigma: u64 = (1..=n).filter(|d| n % d == 0).sum();
        let brute = brute_force_subgroup_count(n as usize) as u64;
        ensure(lattices.len() as u64 == brute && brute == sigma, || {
            format!(
                "n={n}: {} overlattices, {brute} subgroups, σ={sigma}",
                lattices.len()
            )
        })?;
        for lat in &lattices {
            let deck = lib(covering_deck_group(lat))?;
            ensure(deck.order() == Some(lat.index()), || {
                format!("deck group {deck} for index {}", lat.index())
            })?;
        }
    }
    Ok(())
}

fn c9_solenoid() -> Outcome {
    let start = Instant::now();
    let chain: Vec<u64> = (1..=8).map(|k| 1 << k).collect();
    let stages = lib(solenoid_stage_chain(&chain))?;
    let t = start.elapsed();
    ensure(stages.len() == chain.len(), || {
        "wrong number of stages".into()
    })?;
    for (i, s) in stages.iter().enumerate() {
        let n = chain[i];
        ensure(
            s.group.order() == Some(n) && s.group.torsion() == [n],
            || format!("stage {n} has group {}", s.group),
        )?;
        ensure(s.surjective, || {
            format!("transition into stage {n} not surjective")
        })?;
        if i > 0 {
            // the transition sends 1 to a generator of the previous stage
            let tr = s.transition.ok_or("missing transition")?;
            ensure(tr.gcd(&chain[i - 1]) == 1, || {
                format!("transition image {tr} does not generate Z/{}", chain[i - 1])
            })?;
        }
    }
    ensure(t < SOLENOID_BUDGET, || format!("took {t:?}"))
}

/// `|H^p(Z/k, Z/n)|` from the periodic resolution: the complex is
/// `A -0→ A -k→ A -0→ A -k→ …`.
fn cyclic_resolution_order(k: u64, n: u64, p: usize) -> u64 {
    let times_k = |a: u64| (a * k) % n;
    let kernel_k = (0..n).filter(|&a| times_k(a) == 0).count() as u64;
    let image_k = (0..n).map(times_k).collect::<BTreeSet<_>>().len() as u64;
    match p {
        0 => n,
        p if p % 2 == 1 => kernel_k,
        _ => n / image_k,
    }
}

fn c10_cohomology() -> Outcome {
    for k in 2..=8u64 {
        let g = lib(FiniteGroup::cyclic(k))?;
        for n in 2..=8u64 {
            let m = GModule::trivial(&g, FgAbelianGroup::cyclic(n));
            for p in 0..=2 {
                let h = lib(group_cohomology(&g, &m, p))?;
                let want = cyclic_resolution_order(k, n, p);
                // subgroups and quotients of cyclic groups are cyclic
                let expected = if want == 1 {
                    FgAbelianGroup::trivial()
                } else {
                    FgAbelianGroup::cyclic(want)
                };
                ensure(*h.invariants() == expected, || {
                    format!("H^{p}(Z/{k}, Z/{n}) = {}, want Z/{want}", h.invariants())
                })?;
            }
            for p in 0..=1 {
                let d0 = lib(bar_differential(&g, &m, p))?;
                let d1 = lib(bar_differential(&g, &m, p + 1))?;
                ensure(lib(d1.mul(&d0))?.is_zero(), || {
                    format!("d∘d ≠ 0 in degree {p} for Z/{k}, Z/{n}")
                })?;
            }
        }
    }
    Ok(())
}

fn c11_kummer() -> Outcome {
    let ext = lib(KummerExtension::with_integer_radicals(4, &[(2, 2), (3, 2)]))?;
    let m = lib(kummer_pairing_matrix(&ext, 2, None))?;
    ensure(
        m.entries == vec![vec![1, 0], vec![0, 1]] && m.is_invertible(),
        || format!("pairing matrix {:?}", m.entries),
    )?;
    let cfg = ResolventConfig::default();
    for n in [3u32, 5] {
        let ext = lib(KummerExtension::with_integer_radicals(n, &[(2, n)]))?;
        let sigma = ext.generator(0);
        for k in 0..n {
            let zeta = CyclotomicNumber::zeta_pow(n, k as i64);
            let r = lib(hilbert90_resolvent(&ext, &sigma, &zeta, &cfg))?;
            ensure(!r.alpha.is_zero() && r.trials <= cfg.budget, || {
                format!("ζ_{n}^{k}: no α within budget")
            })?;
            let lhs = lib(ext.apply(&sigma, &r.alpha))?;
            ensure(lhs == ext.scale(&r.alpha, &zeta), || {
                format!("σ(α) ≠ ζ_{n}^{k} α for α = {}", ext.format(&r.alpha))
            })?;
        }
    }
    Ok(())
}

fn c12_determinism() -> Outcome {
    let run = || {
        std::process::Command::new(env!("CARGO_BIN_EXE_wittkit"))
            .args(["verify", "--suite", "all", "--seed", "7"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success(), || {
        format!("verify failed:\n{}", String::from_utf8_lossy(&a.stdout))
    })?;
    ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || {
        "reports differ between runs".into()
    })
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("Witt ring axioms", c1_ring_axioms),
        ("Teichmüller product rule", c2_teichmuller),
        ("ghost homomorphism", c3_ghost),
        ("universal polynomial integrality", c4_universal),
        ("rational Witt closure", c5_rational_closure),
        ("Φ_p identities", c6_phi),
        ("Λ-structure of group rings", c7_lambda),
        ("Pontryagin and Ext calculus", c8_pontryagin),
        ("solenoid stages", c9_solenoid),
        ("cohomology tables", c10_cohomology),
        ("Kummer pairing and Hilbert 90", c11_kummer),
        ("determinism of verify", c12_determinism),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({t:.2}s)", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name} ({t:.2}s): {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
