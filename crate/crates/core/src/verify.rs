//! Seeded property battery behind `wittkit verify`.
//!
//! Every check draws from its own ChaCha stream derived from the seed and the
//! check name, so suites can run on separate threads and still produce the same
//! report byte for byte.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dualtop::{
    covering_deck_group, enumerate_overlattices, ext_from_presentation, ext_to_z,
    presentation_matrix, sigma, solenoid_stage_chain, IntegerMatrix,
};
use crate::error::{Error, Result};
use crate::exactring::{CyclotomicNumber, Elem, Polynomial, RingDescriptor};
use crate::grouplambda::{
    frobenius_compat_check, frobenius_congruence_check, gr_frobenius_lift, lambda_commute_check,
    FgAbelianGroup, GroupRingElement, WittAssignment,
};
use crate::kummercoh::{
    bar_differential, cup_product, galois_symbol, group_cohomology, hilbert90_resolvent,
    kummer_pairing_matrix, BilinearPairing, Cocycle, FiniteGroup, GModule, KummerExtension,
    ResolventConfig,
};
use crate::wittrat::{phi_p, phi_p_minus_scalar_check, RationalWittVector, CROSS_CHECK_DEPTH};
use crate::wittvec::{TruncatedWittVector, UniversalWittPolynomials};

pub const SUITES: [&str; 5] = ["witt", "wrat", "lambda", "dual", "cohom"];
pub const DEFAULT_SEED: u64 = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }
}

impl Report {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn render(&self) -> String {
        let mut out = format!("seed {}\n", self.seed);
        for s in &self.suites {
            for c in &s.checks {
                let status = if c.failed == 0 { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "{status} {}::{} passed={} failed={}",
                    s.suite, c.name, c.passed, c.failed
                );
                if let Some(ce) = &c.counterexample {
                    let _ = writeln!(out, "  counterexample: {ce}");
                }
            }
        }
        let total: usize = self.suites.iter().map(|s| s.checks.len()).sum();
        let bad: usize = self
            .suites
            .iter()
            .flat_map(|s| &s.checks)
            .filter(|c| c.failed > 0)
            .count();
        let _ = writeln!(out, "{} checks, {} failed", total, bad);
        out
    }
}

struct Check {
    result: CheckResult,
    rng: ChaCha8Rng,
}

impl Check {
    fn new(name: impl Into<String>, seed: u64) -> Self {
        let name = name.into();
        // FNV-1a, so the stream depends only on the seed and the name
        let h = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
        });
        let rng = ChaCha8Rng::seed_from_u64(seed ^ h);
        Check {
            result: CheckResult {
                name,
                passed: 0,
                failed: 0,
                counterexample: None,
            },
            rng,
        }
    }

    fn record(&mut self, outcome: Result<bool>, describe: impl FnOnce() -> String) {
        match outcome {
            Ok(true) => self.result.passed += 1,
            Ok(false) => self.fail(describe()),
            Err(e) => self.fail(format!("{} ({e})", describe())),
        }
    }

    fn fail(&mut self, msg: String) {
        self.result.failed += 1;
        if self.result.counterexample.is_none() {
            self.result.counterexample = Some(msg);
        }
    }

    fn done(self) -> CheckResult {
        self.result
    }
}

/// Runs one suite, or every suite in parallel for `"all"`.
pub fn verify(suite: &str, seed: u64) -> Result<Report> {
    let names: Vec<&str> = match suite {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        s => return Err(Error::InvalidInput(format!("unknown suite `{s}`"))),
    };
    let mut suites: Vec<SuiteReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = names
            .iter()
            .map(|&n| scope.spawn(move || run_suite(n, seed)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect::<Result<_>>()
    })?;
    suites.sort_by(|a, b| a.suite.cmp(&b.suite));
    Ok(Report { seed, suites })
}

pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    let checks = match name {
        "witt" => witt_suite(seed),
        "wrat" => wrat_suite(seed),
        "lambda" => lambda_suite(seed),
        "dual" => dual_suite(seed),
        "cohom" => cohom_suite(seed),
        s => return Err(Error::InvalidInput(format!("unknown suite `{s}`"))),
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        checks,
    })
}

fn test_rings() -> Vec<RingDescriptor> {
    vec![
        RingDescriptor::Integers,
        RingDescriptor::IntegersMod(12),
        RingDescriptor::PrimeField(7),
        RingDescriptor::Rationals,
    ]
}

pub(crate) fn random_elem(ring: &RingDescriptor, rng: &mut impl Rng) -> Elem {
    match ring {
        RingDescriptor::Rationals => {
            let q = BigRational::new(rng.gen_range(-4..=4).into(), rng.gen_range(1..=3).into());
            ring.from_rational(&q).expect("Q contains Q")
        }
        _ => ring.from_int(rng.gen_range(-5..=5)),
    }
}

fn random_witt(
    ring: &RingDescriptor,
    depth: usize,
    rng: &mut impl Rng,
) -> Result<TruncatedWittVector> {
    TruncatedWittVector::new(
        ring.clone(),
        (0..depth).map(|_| random_elem(ring, rng)).collect(),
    )
}

fn witt_axioms(
    u: &TruncatedWittVector,
    v: &TruncatedWittVector,
    w: &TruncatedWittVector,
) -> Result<bool> {
    let (r, n) = (u.ring(), u.depth());
    let one = TruncatedWittVector::one(r, n)?;
    let zero = TruncatedWittVector::zero(r, n)?;
    Ok(u.add(v)?.add(w)? == u.add(&v.add(w)?)?
        && u.add(v)? == v.add(u)?
        && u.mul(v)?.mul(w)? == u.mul(&v.mul(w)?)?
        && u.mul(v)? == v.mul(u)?
        && u.mul(&v.add(w)?)? == u.mul(v)?.add(&u.mul(w)?)?
        && u.mul(&one)? == *u
        && u.add(&zero)? == *u
        && u.add(&u.neg())?.is_zero())
}

fn witt_suite(seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for ring in test_rings() {
        let mut c = Check::new(format!("ring_axioms[{ring}]"), seed);
        for depth in 1..=8 {
            for _ in 0..200 {
                let (u, v, w) = match (
                    random_witt(&ring, depth, &mut c.rng),
                    random_witt(&ring, depth, &mut c.rng),
                    random_witt(&ring, depth, &mut c.rng),
                ) {
                    (Ok(u), Ok(v), Ok(w)) => (u, v, w),
                    _ => {
                        c.fail("could not build random vectors".into());
                        continue;
                    }
                };
                c.record(witt_axioms(&u, &v, &w), || {
                    format!("N={depth} u={} v={} w={}", show(&u), show(&v), show(&w))
                });
            }
        }
        out.push(c.done());

        let mut c = Check::new(format!("teichmuller[{ring}]"), seed);
        for _ in 0..100 {
            let (a, b) = (
                random_elem(&ring, &mut c.rng),
                random_elem(&ring, &mut c.rng),
            );
            let outcome = (|| {
                let ta = TruncatedWittVector::teichmuller(&a, &ring, 6)?;
                let tb = TruncatedWittVector::teichmuller(&b, &ring, 6)?;
                Ok(ta.mul(&tb)? == TruncatedWittVector::teichmuller(&ring.mul(&a, &b), &ring, 6)?)
            })();
            c.record(outcome, || {
                format!("a={} b={}", ring.format(&a), ring.format(&b))
            });
        }
        out.push(c.done());

        let mut c = Check::new(format!("ghost_homomorphism[{ring}]"), seed);
        for _ in 0..100 {
            let depth = c.rng.gen_range(1..=8);
            let (Ok(u), Ok(v)) = (
                random_witt(&ring, depth, &mut c.rng),
                random_witt(&ring, depth, &mut c.rng),
            ) else {
                c.fail("could not build random vectors".into());
                continue;
            };
            let outcome = (|| {
                Ok(u.add(&v)?.ghost() == u.ghost().add(&v.ghost())?
                    && u.mul(&v)?.ghost() == u.ghost().mul(&v.ghost())?)
            })();
            c.record(outcome, || format!("u={} v={}", show(&u), show(&v)));
        }
        out.push(c.done());
    }

    let q = RingDescriptor::Rationals;
    let mut c = Check::new("ghost_inverse[Q]", seed);
    for depth in 1..=10 {
        for _ in 0..20 {
            let Ok(u) = random_witt(&q, depth, &mut c.rng) else {
                continue;
            };
            let outcome = TruncatedWittVector::ghost_inverse(&u.ghost()).map(|w| w == u);
            c.record(outcome, || format!("u={}", show(&u)));
        }
    }
    out.push(c.done());

    let mut c = Check::new("universal_polynomials", seed);
    let outcome = UniversalWittPolynomials::build(8).map(|polys| {
        let c1 = &polys.mul_polys()[0];
        let mut exps = vec![0u16; 16];
        exps[0] = 1;
        exps[8] = 1;
        c1.len() == 1 && c1.coeff(&exps) == BigInt::from(-1)
    });
    c.record(outcome, || "c_1 differs from -a_1 b_1".into());
    for _ in 0..100 {
        let depth = c.rng.gen_range(1..=8);
        let (Ok(u), Ok(v)) = (
            random_witt(&q, depth, &mut c.rng),
            random_witt(&q, depth, &mut c.rng),
        ) else {
            continue;
        };
        let outcome = (|| {
            let ghost_route = TruncatedWittVector::ghost_inverse(&u.ghost().mul(&v.ghost())?)?;
            Ok(u.mul(&v)? == ghost_route)
        })();
        c.record(outcome, || format!("u={} v={}", show(&u), show(&v)));
    }
    out.push(c.done());

    let mut c = Check::new("frobenius_verschiebung[Z]", seed);
    let z = RingDescriptor::Integers;
    for _ in 0..50 {
        let m = c.rng.gen_range(2..=4);
        let (Ok(u), Ok(v)) = (
            random_witt(&z, 8, &mut c.rng),
            random_witt(&z, 8, &mut c.rng),
        ) else {
            continue;
        };
        let outcome = (|| {
            let fu = u.frobenius(m)?;
            let multiplicative = u.mul(&v)?.frobenius(m)? == fu.mul(&v.frobenius(m)?)?;
            let additive = u.add(&v)?.frobenius(m)? == fu.add(&v.frobenius(m)?)?;
            let fv = u.verschiebung(m)?.frobenius(m)?;
            let times_m =
                TruncatedWittVector::from_integer(m as i64, &z, 8 / m)?.mul(&u.truncate(8 / m)?)?;
            Ok(multiplicative && additive && fv == times_m)
        })();
        c.record(outcome, || format!("m={m} u={} v={}", show(&u), show(&v)));
    }
    out.push(c.done());
    out
}

fn show(u: &TruncatedWittVector) -> String {
    crate::exactring::text::format_poly(&u.to_series())
}

fn random_fraction(rng: &mut impl Rng) -> Result<RationalWittVector> {
    let z = RingDescriptor::Integers;
    let side = |rng: &mut ChaCha8Rng| {
        let d = rng.gen_range(0..=4);
        let mut c = vec![1i64];
        c.extend((0..d).map(|_| rng.gen_range(-3..=3)));
        Polynomial::from_ints(&z, &c)
    };
    let mut local = ChaCha8Rng::seed_from_u64(rng.gen());
    let num = side(&mut local);
    let den = side(&mut local);
    RationalWittVector::new(num, den)
}

fn wrat_suite(seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let d = CROSS_CHECK_DEPTH;

    let mut c = Check::new("closure[Z]", seed);
    for _ in 0..100 {
        let (Ok(u), Ok(v)) = (random_fraction(&mut c.rng), random_fraction(&mut c.rng)) else {
            continue;
        };
        let outcome = (|| {
            let prod = u.mul(&v)?.embed(d)? == u.embed(d)?.mul(&v.embed(d)?)?;
            let sum = u.add(&v)?.embed(d)? == u.embed(d)?.add(&v.embed(d)?)?;
            Ok(prod && sum)
        })();
        c.record(outcome, || format!("u={u} v={v}"));
    }
    out.push(c.done());

    let mut c = Check::new("operators[Z]", seed);
    for _ in 0..30 {
        let m = c.rng.gen_range(2..=3);
        let Ok(u) = random_fraction(&mut c.rng) else {
            continue;
        };
        let outcome = (|| {
            let f =
                crate::wittrat::wr_frobenius(m, &u)?.embed(d / m)? == u.embed(d)?.frobenius(m)?;
            let v =
                crate::wittrat::wr_verschiebung(m, &u)?.embed(d)? == u.embed(d)?.verschiebung(m)?;
            Ok(f && v)
        })();
        c.record(outcome, || format!("m={m} u={u}"));
    }
    out.push(c.done());

    for p in [2u64, 3, 5] {
        let mut c = Check::new(format!("phi_{p}"), seed);
        let outcome = (|| {
            let phi = phi_p(p)?;
            let q = RingDescriptor::Rationals;
            let g = phi.ghost(2 * p as usize);
            let pattern = g.components().iter().enumerate().all(|(i, x)| {
                let want = if (i as u64 + 1) % p == 0 {
                    p as i64 - 1
                } else {
                    -1
                };
                q.from_int(want) == *x || RingDescriptor::Integers.from_int(want) == *x
            });
            let shifted = phi_p_minus_scalar_check(p, 2 * p as usize)?;
            let values = shifted.components().iter().enumerate().all(|(i, x)| {
                let want = if (i as u64 + 1) % p == 0 {
                    0
                } else {
                    -(p as i64)
                };
                q.from_int(want) == *x || RingDescriptor::Integers.from_int(want) == *x
            });
            let field = RingDescriptor::cyclotomic(p as u32)?;
            let lifted = crate::wittrat::base_change(&phi, &field)?;
            let mut sum = RationalWittVector::zero(&field);
            for i in 1..p {
                let z = Elem::Cyc(CyclotomicNumber::zeta_pow(p as u32, i as i64));
                sum = sum.add(&RationalWittVector::teichmuller(&z, &field)?)?;
            }
            Ok(pattern && values && sum == lifted)
        })();
        c.record(outcome, || format!("p={p}"));
        out.push(c.done());
    }
    out
}

fn lambda_groups() -> Vec<FgAbelianGroup> {
    ["rank=1", "rank=2", "rank=1;torsion=6", "torsion=2,4"]
        .iter()
        .map(|s| s.parse().expect("fixed groups"))
        .collect()
}

fn random_group_ring(
    g: &FgAbelianGroup,
    rng: &mut impl Rng,
    terms: usize,
    coeff: i64,
) -> Result<GroupRingElement> {
    let k = rng.gen_range(1..=terms);
    let t: Vec<(Vec<i64>, BigInt)> = (0..k)
        .map(|_| {
            let exp = (0..g.ngens()).map(|_| rng.gen_range(-2..=2)).collect();
            (exp, BigInt::from(rng.gen_range(-coeff..=coeff)))
        })
        .collect();
    GroupRingElement::from_terms(g, t)
}

fn lambda_suite(seed: u64) -> Vec<CheckResult> {
    let groups = lambda_groups();
    let primes = [2u64, 3, 5];
    let mut out = Vec::new();

    let mut c = Check::new("adams_commute", seed);
    for _ in 0..100 {
        let g = groups.choose(&mut c.rng).expect("nonempty");
        let (p, q) = (
            *primes.choose(&mut c.rng).unwrap(),
            *primes.choose(&mut c.rng).unwrap(),
        );
        let Ok(x) = random_group_ring(g, &mut c.rng, 4, 3) else {
            continue;
        };
        c.record(lambda_commute_check(p, q, &x), || {
            format!("p={p} q={q} x={x}")
        });
    }
    out.push(c.done());

    let mut c = Check::new("frobenius_congruence", seed);
    for _ in 0..200 {
        let g = groups.choose(&mut c.rng).expect("nonempty");
        let p = *primes.choose(&mut c.rng).unwrap();
        let Ok(x) = random_group_ring(g, &mut c.rng, 4, 3) else {
            continue;
        };
        c.record(
            frobenius_congruence_check(p, &x).map(|d| d.divisible_by(p)),
            || format!("p={p} x={x}"),
        );
    }
    out.push(c.done());

    let mut c = Check::new("frobenius_multiplicative", seed);
    for _ in 0..100 {
        let g = groups.choose(&mut c.rng).expect("nonempty");
        let p = *primes.choose(&mut c.rng).unwrap();
        let (Ok(x), Ok(y)) = (
            random_group_ring(g, &mut c.rng, 3, 3),
            random_group_ring(g, &mut c.rng, 3, 3),
        ) else {
            continue;
        };
        let outcome = (|| {
            let lhs = gr_frobenius_lift(p, &x.mul(&y)?)?;
            Ok(lhs == gr_frobenius_lift(p, &x)?.mul(&gr_frobenius_lift(p, &y)?)?)
        })();
        c.record(outcome, || format!("p={p} x={x} y={y}"));
    }
    out.push(c.done());

    let mut c = Check::new("to_witt_intertwines", seed);
    let assignments = lambda_assignments();
    for _ in 0..50 {
        let asg = assignments.choose(&mut c.rng).expect("nonempty");
        let p = *primes.choose(&mut c.rng).unwrap();
        let Ok(x) = random_group_ring(asg.group(), &mut c.rng, 3, 2) else {
            continue;
        };
        c.record(frobenius_compat_check(p, &x, asg), || {
            format!("p={p} ring={} x={x}", asg.ring())
        });
    }
    out.push(c.done());
    out
}

fn lambda_assignments() -> Vec<WittAssignment> {
    let z = RingDescriptor::Integers;
    let q4 = RingDescriptor::CyclotomicField(4);
    let cyc = |k: i64| Elem::Cyc(CyclotomicNumber::zeta_pow(4, k));
    let two = Elem::Cyc(CyclotomicNumber::from_int(4, 2));
    vec![
        WittAssignment::new("rank=1".parse().unwrap(), z.clone(), vec![z.from_int(-1)]).unwrap(),
        WittAssignment::new(
            "torsion=2".parse().unwrap(),
            z.clone(),
            vec![z.from_int(-1)],
        )
        .unwrap(),
        WittAssignment::new(
            "rank=1;torsion=4".parse().unwrap(),
            q4.clone(),
            vec![two, cyc(1)],
        )
        .unwrap(),
        WittAssignment::new(
            "rank=2".parse().unwrap(),
            RingDescriptor::Rationals,
            vec![
                RingDescriptor::Rationals.from_int(3),
                RingDescriptor::Rationals.from_int(-2),
            ],
        )
        .unwrap(),
    ]
}

/// Invariant factor chains `d_1 | d_2 | …` of length at most 3 with entries in `2..=12`.
pub(crate) fn small_torsion_chains() -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..3 {
        let mut next = Vec::new();
        for chain in &frontier {
            let last: &Vec<u64> = chain;
            for d in 2..=12u64 {
                if last.last().is_none_or(|&l| d % l == 0) {
                    let mut c = last.clone();
                    c.push(d);
                    next.push(c);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn random_unimodular(n: usize, rng: &mut impl Rng) -> IntegerMatrix {
    let mut m = IntegerMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let k = BigInt::from(rng.gen_range(-2..=2));
        let mut e = IntegerMatrix::identity(n);
        e.set(i, j, k);
        m = m.mul(&e).expect("square");
    }
    m
}

/// `#{x ∈ Z^k / L : m x ∈ L}` for the lattice spanned by the columns of `a`,
/// counted over HNF coset representatives.
fn killed_by(a: &IntegerMatrix, m: u64) -> Option<u64> {
    let h = crate::dualtop::hermite_normal_form(a).ok()?;
    let k = h.rows();
    let diag: Vec<u64> = (0..k)
        .map(|i| u64::try_from(h.get(i, i)).unwrap_or(0))
        .collect();
    let mut count = 0;
    let mut x = vec![0u64; k];
    loop {
        let v: Vec<BigInt> = x.iter().map(|&c| BigInt::from(c * m)).collect();
        if crate::dualtop::solve_lower_triangular(&h, &v).is_some() {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == k {
                return Some(count);
            }
            x[i] += 1;
            if x[i] < diag[i] {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

fn dual_suite(seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();

    let mut c = Check::new("ext_vs_cokernel", seed);
    for torsion in small_torsion_chains() {
        for rank in 0..=1 {
            let g = FgAbelianGroup::new(rank, torsion.clone()).expect("valid chain");
            let k = g.ngens();
            let u = random_unimodular(k, &mut c.rng);
            let v = random_unimodular(torsion.len(), &mut c.rng);
            let outcome = (|| {
                let scrambled = u.mul(&presentation_matrix(&g))?.mul(&v)?;
                let ext = ext_from_presentation(&scrambled)?;
                let expected = ext_to_z(&g);
                if ext != expected || ext != FgAbelianGroup::new(0, torsion.clone())? {
                    return Ok(false);
                }
                if rank > 0 || torsion.is_empty() {
                    return Ok(true);
                }
                // coset count of coker(Aᵀ) killed by m, against ∏ gcd(m, d_i)
                let at = scrambled.transpose();
                for m in 1..=12u64 {
                    let want: u64 = torsion.iter().map(|d| m.gcd(d)).product();
                    if killed_by(&at, m) != Some(want) {
                        return Ok(false);
                    }
                }
                Ok(true)
            })();
            c.record(outcome, || format!("group {g}"));
        }
    }
    out.push(c.done());

    let mut c = Check::new("overlattice_count_r2", seed);
    for n in 1..=30u64 {
        let outcome = enumerate_overlattices(2, n).map(|l| {
            let brute = subgroups_of_order_n(n);
            l.len() as u64 == brute && brute == sigma(n)
        });
        c.record(outcome, || format!("n={n}"));
    }
    out.push(c.done());

    let mut c = Check::new("deck_group_orders", seed);
    for (r, max) in [(1usize, 30u64), (2, 30), (3, 6)] {
        for n in 1..=max {
            let outcome = (|| {
                for lat in enumerate_overlattices(r, n)? {
                    if covering_deck_group(&lat)?.order() != Some(lat.index()) {
                        return Ok(false);
                    }
                }
                Ok(true)
            })();
            c.record(outcome, || format!("r={r} n={n}"));
        }
    }
    out.push(c.done());

    let mut c = Check::new("solenoid_chain", seed);
    let chain: Vec<u64> = (1..=8).map(|k| 1u64 << k).collect();
    let outcome = solenoid_stage_chain(&chain).map(|stages| {
        stages.iter().zip(&chain).all(|(s, &n)| {
            s.surjective && s.group.order() == Some(n) && s.limit_order == n && s.denominator == n
        })
    });
    c.record(outcome, || format!("chain {chain:?}"));
    out.push(c.done());
    out
}

/// Subgroups of order `n` in `(Z/n)²`, as sums of pairs of cyclic subgroups.
pub(crate) fn subgroups_of_order_n(n: u64) -> u64 {
    let n = n as usize;
    let idx = |a: usize, b: usize| a * n + b;
    let mut cyclic: BTreeSet<Vec<bool>> = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            let mut s = vec![false; n * n];
            let (mut x, mut y) = (0, 0);
            loop {
                s[idx(x, y)] = true;
                x = (x + a) % n;
                y = (y + b) % n;
                if x == 0 && y == 0 {
                    break;
                }
            }
            cyclic.insert(s);
        }
    }
    let cyclic: Vec<Vec<bool>> = cyclic.into_iter().collect();
    let members: Vec<Vec<usize>> = cyclic
        .iter()
        .map(|s| {
            s.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let mut found: BTreeSet<Vec<bool>> = BTreeSet::new();
    for i in 0..cyclic.len() {
        for j in i..cyclic.len() {
            if members[i].len() * members[j].len() < n
                || n % members[i].len() != 0
                || n % members[j].len() != 0
            {
                continue;
            }
            let mut s = vec![false; n * n];
            let mut size = 0;
            for &p in &members[i] {
                for &q in &members[j] {
                    let k = idx((p / n + q / n) % n, (p % n + q % n) % n);
                    if !s[k] {
                        s[k] = true;
                        size += 1;
                    }
                }
            }
            if size == n {
                found.insert(s);
            }
        }
    }
    found.len() as u64
}

fn cohom_suite(seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();

    let mut c = Check::new("cyclic_tables", seed);
    for k in 2..=8u64 {
        for n in 2..=8u64 {
            let outcome = (|| {
                let g = FiniteGroup::cyclic(k)?;
                let m = GModule::trivial(&g, FgAbelianGroup::cyclic(n));
                for p in 0..=2 {
                    let want = if p == 0 { n } else { k.gcd(&n) };
                    if *group_cohomology(&g, &m, p)?.invariants() != FgAbelianGroup::cyclic(want) {
                        return Ok(false);
                    }
                }
                Ok(true)
            })();
            c.record(outcome, || format!("k={k} n={n}"));
        }
    }
    for (k, n) in [(2u64, 4u64), (3, 3), (4, 6)] {
        let outcome = (|| {
            let g = FiniteGroup::cyclic(k)?;
            let m = GModule::trivial(&g, FgAbelianGroup::cyclic(n));
            Ok(*group_cohomology(&g, &m, 3)?.invariants() == FgAbelianGroup::cyclic(k.gcd(&n)))
        })();
        c.record(outcome, || format!("degree 3, k={k} n={n}"));
    }
    out.push(c.done());

    let mut c = Check::new("d_squared_zero", seed);
    for (g, m) in cohom_fixtures() {
        for p in 0..=2 {
            let outcome = (|| {
                let d0 = bar_differential(&g, &m, p)?;
                let d1 = bar_differential(&g, &m, p + 1)?;
                Ok(d1.mul(&d0)?.is_zero())
            })();
            c.record(outcome, || format!("group {:?} degree {p}", g.orders()));
        }
    }
    out.push(c.done());

    let mut c = Check::new("cup_graded_commutative", seed);
    let g = FiniteGroup::new(vec![2, 2]).expect("valid");
    let m = GModule::trivial(&g, FgAbelianGroup::cyclic(2));
    match group_cohomology(&g, &m, 2) {
        Ok(h2) => {
            for _ in 0..20 {
                let a: Vec<Vec<BigInt>> = (0..2)
                    .map(|_| vec![BigInt::from(c.rng.gen_range(0..2))])
                    .collect();
                let b: Vec<Vec<BigInt>> = (0..2)
                    .map(|_| vec![BigInt::from(c.rng.gen_range(0..2))])
                    .collect();
                let outcome = (|| {
                    let u = Cocycle::from_homomorphism(g.clone(), m.clone(), &a)?;
                    let v = Cocycle::from_homomorphism(g.clone(), m.clone(), &b)?;
                    let uv = cup_product(&u, &v, &BilinearPairing::scalar(), &m)?;
                    let vu = cup_product(&v, &u, &BilinearPairing::scalar(), &m)?;
                    h2.is_coboundary(&uv.add(&vu)?)
                })();
                c.record(outcome, || format!("u={a:?} v={b:?}"));
            }
        }
        Err(e) => c.fail(e.to_string()),
    }
    out.push(c.done());

    let mut c = Check::new("kummer_pairing", seed);
    let outcome = (|| {
        let ext = KummerExtension::with_integer_radicals(4, &[(2, 2), (3, 2)])?;
        let m = kummer_pairing_matrix(&ext, 2, None)?;
        Ok(m.entries == vec![vec![1, 0], vec![0, 1]] && m.is_invertible())
    })();
    c.record(outcome, || "radicals √2, √3 over Q(ζ4)".into());
    let outcome = (|| {
        let ext = KummerExtension::with_integer_radicals(4, &[(2, 2), (3, 2)])?;
        let two = CyclotomicNumber::from_int(4, 2);
        let three = CyclotomicNumber::from_int(4, 3);
        let lhs = galois_symbol(&ext, &two.mul(&three), 2)?;
        Ok(lhs == galois_symbol(&ext, &two, 2)?.add(&galois_symbol(&ext, &three, 2)?)?)
    })();
    c.record(outcome, || "∂(6) = ∂2 + ∂3".into());
    out.push(c.done());

    let mut c = Check::new("hilbert90", seed);
    let cfg = ResolventConfig {
        seed,
        ..ResolventConfig::default()
    };
    for n in [3u32, 5] {
        let Ok(ext) = KummerExtension::with_integer_radicals(n, &[(2, n)]) else {
            continue;
        };
        let sigma = ext.generator(0);
        for k in 0..n {
            let zeta = CyclotomicNumber::zeta_pow(n, k as i64);
            let outcome = (|| {
                let r = hilbert90_resolvent(&ext, &sigma, &zeta, &cfg)?;
                Ok(!r.alpha.is_zero()
                    && r.trials <= cfg.budget
                    && ext.apply(&sigma, &r.alpha)? == ext.scale(&r.alpha, &zeta))
            })();
            c.record(outcome, || format!("y^{n}=2, ζ=ζ_{n}^{k}"));
        }
    }
    out.push(c.done());
    out
}

fn cohom_fixtures() -> Vec<(FiniteGroup, GModule)> {
    let mut out = Vec::new();
    for (orders, module) in [
        (vec![3u64], "torsion=6"),
        (vec![2, 2], "rank=1"),
        (vec![4], "torsion=2,4"),
    ] {
        let g = FiniteGroup::new(orders).expect("valid");
        out.push((
            g.clone(),
            GModule::trivial(&g, module.parse().expect("valid")),
        ));
    }
    let g = FiniteGroup::cyclic(2).expect("valid");
    let sign = IntegerMatrix::from_rows(&[vec![-1]]).expect("valid");
    out.push((
        g.clone(),
        GModule::new(&g, FgAbelianGroup::free(1), vec![sign]).expect("valid action"),
    ));
    let swap = IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).expect("valid");
    out.push((
        g.clone(),
        GModule::new(&g, FgAbelianGroup::free(2), vec![swap]).expect("valid action"),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_subgroups() {
        assert_eq!(subgroups_of_order_n(1), 1);
        assert_eq!(subgroups_of_order_n(2), 3);
        assert_eq!(subgroups_of_order_n(4), 7);
        assert_eq!(subgroups_of_order_n(6), 12);
    }

    #[test]
    fn coset_counting() {
        let a = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 6]]).unwrap();
        assert_eq!(killed_by(&a, 1), Some(1));
        assert_eq!(killed_by(&a, 2), Some(4));
        assert_eq!(killed_by(&a, 3), Some(3));
        assert_eq!(killed_by(&a, 6), Some(12));
    }

    #[test]
    fn chains() {
        let c = small_torsion_chains();
        assert!(c.contains(&vec![2, 4, 12]));
        assert!(!c.iter().any(|v| v.windows(2).any(|w| w[1] % w[0] != 0)));
    }

    #[test]
    fn suites_are_deterministic() {
        let a = run_suite("cohom", 3).unwrap();
        let b = run_suite("cohom", 3).unwrap();
        assert_eq!(a, b);
        assert!(a.passed(), "{:?}", a);
        assert!(verify("nope", 1).is_err());
    }
}
