//! The `wittkit` command line.
//!
//! Exit status is 0 on success, 1 on a domain error (JSON on stderr) and 2 on a
//! usage error. Results go to stdout, diagnostics to stderr.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use serde_json::{json, Value};

use crate::dualtop::{
    covering_deck_group, enumerate_overlattices, ext_from_presentation, ext_to_z, pi0_path_dual,
    pi0_spec_group_algebra, smith_normal_form, solenoid_stage_chain, IntegerMatrix, Overlattice,
};
use crate::error::Error;
use crate::exactring::text::{
    format_elem, format_fraction, format_poly, parse_elem, parse_fraction, parse_poly,
};
use crate::exactring::{CyclotomicNumber, Elem, RingDescriptor};
use crate::grouplambda::{
    frobenius_congruence_check, gr_frobenius_lift, gr_mul, to_witt, FgAbelianGroup,
    GroupRingElement, WittAssignment,
};
use crate::kummercoh::{
    galois_symbol, group_cohomology, hilbert90_resolvent, kummer_pairing, kummer_pairing_matrix,
    Cocycle, FiniteGroup, GModule, GaloisElement, KummerExtension, ResolventConfig,
    RESOLVENT_SEED_VAR,
};
use crate::verify;
use crate::wittrat::{phi_p, RationalWittVector};
use crate::wittvec::{GhostVector, TruncatedWittVector};

/// Version of every JSON document written to stdout or stderr.
pub const SCHEMA_VERSION: u32 = 1;

const GRAMMAR: &str = "\
Value grammar:
  rings        Z | Q | Z/12 | Fp/7 | Qzeta/5 | Frac(<ring>)
  elements     integers, fractions p/q, or polynomials in z over Qzeta/n, e.g. 1+z^2
  series       ascending powers of t, e.g. \"1-2t+3t^2\"
  fractions    \"(<series>)/(<series>)\" or a bare series
  groups       \"rank=r;torsion=d1,d2\" with d1 | d2 | ...
  group ring   \"2[1,0]-[0,3]\", exponent vectors in brackets
  matrices     JSON row-major integer arrays, e.g. [[2,0],[0,6]]
Operands may be inline text, JSON documents, or @path to read a file.
Put `--` before operands that start with a minus sign, e.g. `witt ghostinv -- -3,5`.";

#[derive(Parser, Debug)]
#[command(name = "wittkit", version, about = "Exact Witt vector, Λ-ring, Pontryagin dual and Kummer computations", after_help = GRAMMAR)]
struct Cli {
    /// Write results as JSON documents.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Truncated big Witt vectors, written as series 1 + a_1 t + ... + a_N t^N.
    Witt(WittArgs),
    /// Rational Witt vectors, written as fractions of series with constant term 1.
    Wrat(WratArgs),
    /// Group rings Z[M] with their Frobenius lifts.
    Groupring(GroupringArgs),
    /// Finitely generated abelian groups, Ext and covering calculus.
    #[command(subcommand)]
    Abelian(AbelianCommand),
    /// Group cohomology and Kummer theory.
    #[command(subcommand)]
    Cohom(CohomCommand),
    /// Run the seeded property battery.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum WittOp {
    Add,
    Mul,
    Neg,
    Ghost,
    Ghostinv,
    Teich,
    Frob,
    Versch,
}

#[derive(Args, Debug)]
struct WittArgs {
    #[arg(value_enum)]
    op: WittOp,
    #[arg(long, default_value = "Z")]
    ring: String,
    /// Truncation depth N.
    #[arg(long)]
    depth: Option<usize>,
    /// Index of the Frobenius or Verschiebung operator.
    #[arg(long)]
    m: Option<usize>,
    /// Series, ghost components (comma separated) or a ring element for `teich`.
    #[arg(allow_negative_numbers = true)]
    operands: Vec<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum WratOp {
    Add,
    Mul,
    Neg,
    Frob,
    Versch,
    Ghost,
    Phi,
}

#[derive(Args, Debug)]
struct WratArgs {
    #[arg(value_enum)]
    op: WratOp,
    #[arg(long, default_value = "Z")]
    ring: String,
    /// Number of ghost components for `ghost`.
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Prime for `phi`.
    #[arg(long)]
    p: Option<u64>,
    #[arg(allow_negative_numbers = true)]
    operands: Vec<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GroupringOp {
    Mul,
    Frob,
    Towitt,
    Congruence,
}

#[derive(Args, Debug)]
struct GroupringArgs {
    #[arg(value_enum)]
    op: GroupringOp,
    /// The group M; may be omitted when operands are JSON.
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    p: Option<u64>,
    /// Target ring of `towitt`.
    #[arg(long)]
    ring: Option<String>,
    /// Comma-separated images of the generators of M for `towitt`.
    #[arg(long)]
    images: Option<String>,
    #[arg(allow_negative_numbers = true)]
    operands: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum AbelianCommand {
    /// Smith normal form of an integer matrix.
    Snf {
        #[arg(long)]
        matrix: String,
    },
    /// Ext(M, Z), from a group or a presentation matrix.
    Ext {
        #[arg(long, conflicts_with = "presentation")]
        group: Option<String>,
        #[arg(long)]
        presentation: Option<String>,
    },
    /// Components of the Pontryagin dual: Ext(M, Z).
    Pi0dual {
        #[arg(long)]
        group: String,
    },
    /// Components of Spec of the group algebra over C: the torsion of M.
    Pi0spec {
        #[arg(long)]
        group: String,
    },
    /// Overlattices of Z^r of a given index and their deck groups.
    Covers {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        index: u64,
    },
    /// Deck group of the cover given by an overlattice (1/k)·span(generators).
    Deck {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        denominator: u64,
        /// JSON list of integer vectors.
        #[arg(long)]
        generators: String,
    },
    /// Finite stages of the solenoid for a divisibility chain.
    Solenoid {
        /// Comma-separated chain, e.g. 2,4,8.
        #[arg(long)]
        chain: String,
    },
}

#[derive(Subcommand, Debug)]
enum CohomCommand {
    /// Cohomology of a finite abelian group.
    Table {
        /// Cyclic factor orders, e.g. "6" or "2,2".
        #[arg(long)]
        group: String,
        /// Module orders ("4", with 0 for Z) or a group "rank=r;torsion=...".
        #[arg(long)]
        module: String,
        /// Single degree; degrees 0 to 2 otherwise.
        #[arg(long)]
        degree: Option<usize>,
        /// JSON list of action matrices, one per group generator.
        #[arg(long)]
        action: Option<String>,
    },
    /// Kummer pairing, pairing matrix or Galois symbol.
    Kummer {
        #[command(flatten)]
        ext: ExtensionArgs,
        /// Galois element as comma-separated exponents.
        #[arg(long, requires = "alpha")]
        sigma: Option<String>,
        /// Radical element such as "y" or "2*y1*y2".
        #[arg(long)]
        alpha: Option<String>,
        /// Print the pairing matrix of the radicals.
        #[arg(long, conflicts_with_all = ["alpha", "symbol"])]
        matrix: bool,
        /// Base element whose Galois symbol is printed.
        #[arg(long, conflicts_with = "alpha")]
        symbol: Option<String>,
        /// Order of the roots of unity; defaults to the lcm of the radical exponents.
        #[arg(long)]
        n: Option<u32>,
    },
    /// Hilbert 90 by Lagrange resolvents: α with σ(α) = ζ^k α.
    Hilbert90 {
        #[command(flatten)]
        ext: ExtensionArgs,
        #[arg(long)]
        sigma: String,
        /// Exponent k of ζ = ζ_n^k, where n is the order of σ.
        #[arg(long, default_value_t = 1)]
        zeta: i64,
        #[arg(long, default_value_t = crate::kummercoh::DEFAULT_RESOLVENT_BUDGET)]
        budget: usize,
        /// Seed of the randomized trials; falls back to WITTKIT_RESOLVENT_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Args, Debug)]
struct ExtensionArgs {
    /// N such that the base field is Q(ζ_N).
    #[arg(long)]
    base_conductor: u32,
    /// Radical "a^(1/m)", repeatable.
    #[arg(long, required = true)]
    radical: Vec<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(Failure::Usage(msg.into()))
}

/// Runs the command line on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    let json = cli.json;
    match dispatch(cli.command, json) {
        Ok(Output { text, doc, status }) => {
            let body = if json {
                let mut doc = doc;
                if let Value::Object(map) = &mut doc {
                    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
                }
                format!("{}\n", serde_json::to_string(&doc).expect("serializable"))
            } else {
                text
            };
            let _ = write!(out, "{body}");
            status
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "error": { "kind": e.kind(), "message": e.to_string() },
            });
            let _ = writeln!(err, "{doc}");
            1
        }
    }
}

struct Output {
    text: String,
    doc: Value,
    status: i32,
}

impl Output {
    fn new(text: impl Into<String>, doc: Value) -> Self {
        let mut text = text.into();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        Output {
            text,
            doc,
            status: 0,
        }
    }
}

fn dispatch(cmd: Command, json: bool) -> CliResult<Output> {
    match cmd {
        Command::Witt(a) => witt(a),
        Command::Wrat(a) => wrat(a),
        Command::Groupring(a) => groupring(a),
        Command::Abelian(c) => abelian(c),
        Command::Cohom(c) => cohom(c),
        Command::Verify(a) => {
            let report = verify::verify(&a.suite, a.seed).map_err(|e| match e {
                Error::InvalidInput(m) => Failure::Usage(format!("--suite: {m}")),
                e => Failure::Domain(e),
            })?;
            let doc = serde_json::to_value(&report).expect("serializable");
            let mut o = Output::new(report.render(), doc);
            o.status = if report.passed() { 0 } else { 1 };
            let _ = json;
            Ok(o)
        }
    }
}

fn read_operand(s: &str) -> CliResult<String> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map(|t| t.trim().to_string())
            .or_else(|e| usage(format!("cannot read {path}: {e}"))),
        None => Ok(s.to_string()),
    }
}

fn as_json(s: &str) -> Option<Value> {
    let t = s.trim_start();
    if t.starts_with('{') {
        serde_json::from_str(t).ok()
    } else {
        None
    }
}

fn parse_ring(s: &str) -> CliResult<RingDescriptor> {
    s.parse().or_else(|e: Error| usage(format!("--ring: {e}")))
}

fn parse_group(flag: &str, s: &str) -> CliResult<FgAbelianGroup> {
    s.parse().or_else(|e: Error| usage(format!("{flag}: {e}")))
}

fn need<T: Copy>(flag: &str, v: Option<T>) -> CliResult<T> {
    v.map_or_else(|| usage(format!("{flag} is required")), Ok)
}

fn operands(ops: &[String], n: usize, what: &str) -> CliResult<Vec<String>> {
    if ops.len() != n {
        return usage(format!("{what} takes {n} operand(s), got {}", ops.len()));
    }
    ops.iter().map(|s| read_operand(s)).collect()
}

fn elem_strings(ring: &RingDescriptor, xs: &[Elem]) -> Vec<String> {
    xs.iter().map(|x| format_elem(ring, x)).collect()
}

fn parse_elem_list(ring: &RingDescriptor, v: &Value) -> CliResult<Vec<Elem>> {
    let arr = v
        .as_array()
        .map_or_else(|| usage("expected a JSON array"), Ok)?;
    arr.iter()
        .map(|x| {
            let s = match x {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                _ => return usage(format!("not a ring element: {x}")),
            };
            parse_elem(ring, &s).or_else(|e| usage(format!("operand: {e}")))
        })
        .collect()
}

fn witt_doc(u: &TruncatedWittVector) -> Value {
    json!({ "ring": u.ring().to_string(), "N": u.depth(), "tail": elem_strings(u.ring(), u.tail()) })
}

fn witt_output(u: &TruncatedWittVector) -> Output {
    Output::new(format_poly(&u.to_series()), witt_doc(u))
}

fn ghost_output(g: &GhostVector) -> Output {
    let comps = elem_strings(g.ring(), g.components());
    Output::new(
        comps.join(","),
        json!({ "ring": g.ring().to_string(), "N": g.depth(), "ghost": comps }),
    )
}

fn parse_witt(
    ring: &RingDescriptor,
    depth: Option<usize>,
    s: &str,
) -> CliResult<TruncatedWittVector> {
    if let Some(v) = as_json(s) {
        let ring = match v["ring"].as_str() {
            Some(r) => parse_ring(r)?,
            None => ring.clone(),
        };
        let tail = parse_elem_list(&ring, &v["tail"])?;
        if let Some(n) = v["N"].as_u64() {
            if n as usize != tail.len() {
                return usage("JSON Witt vector: N does not match the tail length");
            }
        }
        return Ok(TruncatedWittVector::new(ring, tail)?);
    }
    let depth = need("--depth", depth)?;
    let series = parse_poly(ring, s).or_else(|e| usage(format!("operand `{s}`: {e}")))?;
    Ok(TruncatedWittVector::from_series(&series, depth)?)
}

fn witt(a: WittArgs) -> CliResult<Output> {
    let ring = parse_ring(&a.ring)?;
    let one = |ops: &[String]| -> CliResult<TruncatedWittVector> {
        let o = operands(ops, 1, "this operation")?;
        parse_witt(&ring, a.depth, &o[0])
    };
    let two = |ops: &[String]| -> CliResult<(TruncatedWittVector, TruncatedWittVector)> {
        let o = operands(ops, 2, "this operation")?;
        Ok((
            parse_witt(&ring, a.depth, &o[0])?,
            parse_witt(&ring, a.depth, &o[1])?,
        ))
    };
    Ok(match a.op {
        WittOp::Add => {
            let (u, v) = two(&a.operands)?;
            witt_output(&u.add(&v)?)
        }
        WittOp::Mul => {
            let (u, v) = two(&a.operands)?;
            witt_output(&u.mul(&v)?)
        }
        WittOp::Neg => witt_output(&one(&a.operands)?.neg()),
        WittOp::Ghost => ghost_output(&one(&a.operands)?.ghost()),
        WittOp::Ghostinv => {
            let o = operands(&a.operands, 1, "ghostinv")?;
            let doc = as_json(&o[0]).or_else(|| {
                o[0].trim_start()
                    .starts_with('[')
                    .then(|| serde_json::from_str(&o[0]).ok())
                    .flatten()
            });
            let comps = match doc {
                Some(v) => parse_elem_list(&ring, v.get("ghost").unwrap_or(&v))?,
                None => o[0]
                    .split(',')
                    .map(|c| {
                        parse_elem(&ring, c.trim())
                            .or_else(|e| usage(format!("ghost component `{c}`: {e}")))
                    })
                    .collect::<CliResult<_>>()?,
            };
            if let Some(d) = a.depth {
                if d != comps.len() {
                    return usage(format!(
                        "--depth {d} does not match {} ghost components",
                        comps.len()
                    ));
                }
            }
            witt_output(&TruncatedWittVector::ghost_inverse(&GhostVector::new(
                ring.clone(),
                comps,
            )?)?)
        }
        WittOp::Teich => {
            let o = operands(&a.operands, 1, "teich")?;
            let x = parse_elem(&ring, &o[0]).or_else(|e| usage(format!("operand: {e}")))?;
            witt_output(&TruncatedWittVector::teichmuller(
                &x,
                &ring,
                need("--depth", a.depth)?,
            )?)
        }
        WittOp::Frob => witt_output(&one(&a.operands)?.frobenius(need("--m", a.m)?)?),
        WittOp::Versch => witt_output(&one(&a.operands)?.verschiebung(need("--m", a.m)?)?),
    })
}

fn wrat_doc(u: &RationalWittVector) -> Value {
    let r = u.ring();
    json!({
        "ring": r.to_string(),
        "num": elem_strings(r, u.num().coeffs()),
        "den": elem_strings(r, u.den().coeffs()),
    })
}

fn wrat_output(u: &RationalWittVector) -> Output {
    Output::new(format_fraction(u.num(), u.den()), wrat_doc(u))
}

fn parse_wrat(ring: &RingDescriptor, s: &str) -> CliResult<RationalWittVector> {
    if let Some(v) = as_json(s) {
        let ring = match v["ring"].as_str() {
            Some(r) => parse_ring(r)?,
            None => ring.clone(),
        };
        let num =
            crate::exactring::Polynomial::new(ring.clone(), parse_elem_list(&ring, &v["num"])?)?;
        let den =
            crate::exactring::Polynomial::new(ring.clone(), parse_elem_list(&ring, &v["den"])?)?;
        return Ok(RationalWittVector::new(num, den)?);
    }
    let (num, den) = parse_fraction(ring, s).or_else(|e| usage(format!("operand `{s}`: {e}")))?;
    Ok(RationalWittVector::new(num, den)?)
}

fn wrat(a: WratArgs) -> CliResult<Output> {
    let ring = parse_ring(&a.ring)?;
    let one = |ops: &[String]| -> CliResult<RationalWittVector> {
        let o = operands(ops, 1, "this operation")?;
        parse_wrat(&ring, &o[0])
    };
    let two = |ops: &[String]| -> CliResult<(RationalWittVector, RationalWittVector)> {
        let o = operands(ops, 2, "this operation")?;
        Ok((parse_wrat(&ring, &o[0])?, parse_wrat(&ring, &o[1])?))
    };
    Ok(match a.op {
        WratOp::Add => {
            let (u, v) = two(&a.operands)?;
            wrat_output(&u.add(&v)?)
        }
        WratOp::Mul => {
            let (u, v) = two(&a.operands)?;
            wrat_output(&u.mul(&v)?)
        }
        WratOp::Neg => wrat_output(&one(&a.operands)?.neg()),
        WratOp::Frob => wrat_output(&crate::wittrat::wr_frobenius(
            need("--m", a.m)?,
            &one(&a.operands)?,
        )?),
        WratOp::Versch => wrat_output(&crate::wittrat::wr_verschiebung(
            need("--m", a.m)?,
            &one(&a.operands)?,
        )?),
        WratOp::Ghost => ghost_output(&one(&a.operands)?.ghost(need("--depth", a.depth)?)),
        WratOp::Phi => {
            operands(&a.operands, 0, "phi")?;
            let phi = phi_p(need("--p", a.p)?)?;
            let phi = if ring == RingDescriptor::Integers {
                phi
            } else {
                crate::wittrat::base_change(&phi, &ring)?
            };
            wrat_output(&phi)
        }
    })
}

fn parse_group_ring(group: Option<&FgAbelianGroup>, s: &str) -> CliResult<GroupRingElement> {
    if let Some(v) = as_json(s) {
        let x = GroupRingElement::from_json(&v)?;
        if let Some(g) = group {
            if x.group() != g {
                return Err(Error::GroupMismatch {
                    left: x.group().to_string(),
                    right: g.to_string(),
                }
                .into());
            }
        }
        return Ok(x);
    }
    let g = group.map_or_else(|| usage("--group is required for text operands"), Ok)?;
    GroupRingElement::parse(g, s).or_else(|e| usage(format!("operand `{s}`: {e}")))
}

fn group_ring_output(x: &GroupRingElement) -> Output {
    Output::new(x.to_string(), x.to_json())
}

fn groupring(a: GroupringArgs) -> CliResult<Output> {
    let group = a
        .group
        .as_deref()
        .map(|g| parse_group("--group", g))
        .transpose()?;
    match a.op {
        GroupringOp::Mul => {
            let o = operands(&a.operands, 2, "mul")?;
            let x = parse_group_ring(group.as_ref(), &o[0])?;
            let y = parse_group_ring(Some(x.group()), &o[1])?;
            Ok(group_ring_output(&gr_mul(&x, &y)?))
        }
        GroupringOp::Frob => {
            let o = operands(&a.operands, 1, "frob")?;
            let x = parse_group_ring(group.as_ref(), &o[0])?;
            Ok(group_ring_output(&gr_frobenius_lift(
                need("--p", a.p)?,
                &x,
            )?))
        }
        GroupringOp::Congruence => {
            let o = operands(&a.operands, 1, "congruence")?;
            let x = parse_group_ring(group.as_ref(), &o[0])?;
            let p = need("--p", a.p)?;
            let d = frobenius_congruence_check(p, &x)?;
            let divisible = d.divisible_by(p);
            let text = format!("{d}\ndivisible by {p}: {divisible}");
            Ok(Output::new(
                text,
                json!({ "difference": d.to_json(), "p": p, "divisible": divisible }),
            ))
        }
        GroupringOp::Towitt => {
            let o = operands(&a.operands, 1, "towitt")?;
            let x = parse_group_ring(group.as_ref(), &o[0])?;
            let ring = parse_ring(a.ring.as_deref().unwrap_or("Z"))?;
            let images = match a.images.as_deref() {
                Some(s) if !s.trim().is_empty() => s
                    .split(',')
                    .map(|c| {
                        parse_elem(&ring, c.trim()).or_else(|e| usage(format!("--images: {e}")))
                    })
                    .collect::<CliResult<Vec<_>>>()?,
                _ => Vec::new(),
            };
            let asg = WittAssignment::new(x.group().clone(), ring, images)?;
            Ok(wrat_output(&to_witt(&x, &asg)?))
        }
    }
}

fn parse_matrix(flag: &str, s: &str) -> CliResult<IntegerMatrix> {
    let s = read_operand(s)?;
    let rows: Vec<Vec<i64>> =
        serde_json::from_str(&s).or_else(|e| usage(format!("{flag}: {e}")))?;
    if rows.is_empty() {
        return usage(format!("{flag}: empty matrix"));
    }
    IntegerMatrix::from_rows(&rows).or_else(|e| usage(format!("{flag}: {e}")))
}

fn group_output(g: &FgAbelianGroup) -> Output {
    Output::new(
        g.to_string(),
        serde_json::to_value(g).expect("serializable"),
    )
}

fn abelian(c: AbelianCommand) -> CliResult<Output> {
    match c {
        AbelianCommand::Snf { matrix } => {
            let a = parse_matrix("--matrix", &matrix)?;
            let snf = smith_normal_form(&a);
            let diag = snf.diagonal();
            let coker = FgAbelianGroup::from_presentation(&a)?;
            let d: Vec<String> = diag.iter().map(BigInt::to_string).collect();
            let text = format!("diagonal: {}\ncokernel: {coker}", d.join(","));
            let doc = json!({
                "diagonal": diag.iter().map(crate::json::bigint).collect::<Vec<_>>(),
                "u": snf.u, "v": snf.v, "d": snf.d,
                "cokernel": coker,
            });
            Ok(Output::new(text, doc))
        }
        AbelianCommand::Ext {
            group,
            presentation,
        } => match (group, presentation) {
            (Some(g), None) => Ok(group_output(&ext_to_z(&parse_group("--group", &g)?))),
            (None, Some(p)) => Ok(group_output(&ext_from_presentation(&parse_matrix(
                "--presentation",
                &p,
            )?)?)),
            _ => usage("one of --group or --presentation is required"),
        },
        AbelianCommand::Pi0dual { group } => Ok(group_output(&pi0_path_dual(&parse_group(
            "--group", &group,
        )?))),
        AbelianCommand::Pi0spec { group } => Ok(group_output(&pi0_spec_group_algebra(
            &parse_group("--group", &group)?,
        ))),
        AbelianCommand::Covers { rank, index } => {
            let lattices = enumerate_overlattices(rank, index)?;
            let mut text = format!("{} overlattices of index {index}\n", lattices.len());
            let mut docs = Vec::new();
            for lat in &lattices {
                let deck = covering_deck_group(lat)?;
                let rows: Vec<String> = lat
                    .numerators()
                    .to_rows()
                    .iter()
                    .map(|r| {
                        format!(
                            "[{}]",
                            r.iter()
                                .map(BigInt::to_string)
                                .collect::<Vec<_>>()
                                .join(",")
                        )
                    })
                    .collect();
                text.push_str(&format!("(1/{index})[{}] deck {deck}\n", rows.join(",")));
                docs.push(json!({ "numerators": lat.numerators(), "deck": deck }));
            }
            Ok(Output::new(
                text,
                json!({ "rank": rank, "index": index, "count": lattices.len(), "lattices": docs }),
            ))
        }
        AbelianCommand::Deck {
            rank,
            denominator,
            generators,
        } => {
            let gens: Vec<Vec<i64>> = serde_json::from_str(&read_operand(&generators)?)
                .or_else(|e| usage(format!("--generators: {e}")))?;
            let lat = Overlattice::from_generators(rank, denominator, &gens)?;
            let deck = covering_deck_group(&lat)?;
            let text = format!("index {}\ndeck {deck}", lat.index());
            Ok(Output::new(
                text,
                json!({ "index": lat.index(), "numerators": lat.numerators(), "deck": deck }),
            ))
        }
        AbelianCommand::Solenoid { chain } => {
            let chain: Vec<u64> = chain
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse()
                        .or_else(|_| usage(format!("--chain: bad entry `{s}`")))
                })
                .collect::<CliResult<_>>()?;
            let stages = solenoid_stage_chain(&chain)?;
            let mut text = String::new();
            for s in &stages {
                let t = s.transition.map_or("-".to_string(), |t| t.to_string());
                text.push_str(&format!(
                    "n={} group {} transition {t} surjective {} limit {}\n",
                    s.denominator, s.group, s.surjective, s.limit_order
                ));
            }
            Ok(Output::new(text, json!({ "stages": stages })))
        }
    }
}

fn parse_orders(flag: &str, s: &str) -> CliResult<Vec<u64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .or_else(|_| usage(format!("{flag}: bad entry `{t}`")))
        })
        .collect()
}

fn parse_module(s: &str) -> CliResult<FgAbelianGroup> {
    if s.contains('=') {
        return parse_group("--module", s);
    }
    let orders = parse_orders("--module", s)?;
    let mut g = FgAbelianGroup::trivial();
    for d in orders {
        let part = match d {
            0 => FgAbelianGroup::free(1),
            1 => FgAbelianGroup::trivial(),
            d => FgAbelianGroup::cyclic(d),
        };
        g = g.direct_sum(&part);
    }
    Ok(g)
}

fn cocycle_doc(z: &Cocycle) -> Value {
    let values: Vec<Vec<Value>> = z
        .values()
        .iter()
        .map(|v| v.iter().map(crate::json::bigint).collect())
        .collect();
    json!({ "degree": z.degree(), "values": values })
}

fn parse_extension(a: &ExtensionArgs) -> CliResult<KummerExtension> {
    let ring = RingDescriptor::cyclotomic(a.base_conductor)
        .or_else(|e| usage(format!("--base-conductor: {e}")))?;
    let mut radicals = Vec::new();
    for r in &a.radical {
        let bad = || Failure::Usage(format!("--radical: expected `a^(1/m)`, got `{r}`"));
        let pos = r.rfind("^(").ok_or_else(bad)?;
        let (base, exp) = (&r[..pos], &r[pos + 2..]);
        let m = exp
            .strip_suffix(')')
            .and_then(|e| e.trim().strip_prefix("1/"))
            .ok_or_else(bad)?;
        let m: u32 = m.trim().parse().map_err(|_| bad())?;
        let base = base.trim();
        let base = base
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(base);
        let a = parse_elem(&ring, base).or_else(|e| usage(format!("--radical: {e}")))?;
        let a = a.as_cyc().cloned().ok_or_else(bad)?;
        radicals.push((a, m));
    }
    Ok(KummerExtension::new(a.base_conductor, radicals)?)
}

fn parse_sigma(ext: &KummerExtension, s: &str) -> CliResult<GaloisElement> {
    let e: Vec<u32> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .or_else(|_| usage(format!("--sigma: bad entry `{t}`")))
        })
        .collect::<CliResult<_>>()?;
    if e.len() != ext.radicals().len() {
        return usage(format!(
            "--sigma needs {} exponent(s)",
            ext.radicals().len()
        ));
    }
    Ok(GaloisElement::new(e))
}

fn cohom(c: CohomCommand) -> CliResult<Output> {
    match c {
        CohomCommand::Table {
            group,
            module,
            degree,
            action,
        } => {
            let g = if group.contains('=') {
                FiniteGroup::from_fg(&parse_group("--group", &group)?)?
            } else {
                FiniteGroup::new(parse_orders("--group", &group)?)?
            };
            let a = parse_module(&module)?;
            let m = match action {
                Some(s) => {
                    let mats: Vec<Vec<Vec<i64>>> = serde_json::from_str(&read_operand(&s)?)
                        .or_else(|e| usage(format!("--action: {e}")))?;
                    let mats = mats
                        .iter()
                        .map(|r| {
                            IntegerMatrix::from_rows(r).or_else(|e| usage(format!("--action: {e}")))
                        })
                        .collect::<CliResult<_>>()?;
                    GModule::new(&g, a, mats)?
                }
                None => GModule::trivial(&g, a),
            };
            let degrees: Vec<usize> = match degree {
                Some(p) => vec![p],
                None => (0..=2).collect(),
            };
            let mut text = String::new();
            let mut docs = Vec::new();
            for p in degrees {
                let h = group_cohomology(&g, &m, p)?;
                text.push_str(&format!("H^{p} = {}\n", h.invariants()));
                docs.push(json!({
                    "degree": p,
                    "invariants": h.invariants(),
                    "representatives": h.representatives().iter().map(cocycle_doc).collect::<Vec<_>>(),
                }));
            }
            Ok(Output::new(
                text,
                json!({ "group": g.orders(), "module": m.module(), "action": m.action(), "cohomology": docs }),
            ))
        }
        CohomCommand::Kummer {
            ext,
            sigma,
            alpha,
            matrix,
            symbol,
            n,
        } => {
            let ext = parse_extension(&ext)?;
            let n = n.unwrap_or_else(|| ext.exponents().iter().fold(1, |acc, m| acc.lcm(m)));
            if matrix {
                let pm = kummer_pairing_matrix(&ext, n, None)?;
                let rows: Vec<String> = pm
                    .entries
                    .iter()
                    .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
                    .collect();
                let inv = pm.is_invertible();
                let text = format!("{}\ninvertible mod {n}: {inv}", rows.join("\n"));
                return Ok(Output::new(
                    text,
                    json!({ "modulus": n, "entries": pm.entries, "invertible": inv }),
                ));
            }
            if let Some(s) = symbol {
                let ring = RingDescriptor::CyclotomicField(ext.conductor());
                let a = parse_elem(&ring, &s).or_else(|e| usage(format!("--symbol: {e}")))?;
                let a = a
                    .as_cyc()
                    .cloned()
                    .unwrap_or_else(|| CyclotomicNumber::zero(ext.conductor()));
                let z = galois_symbol(&ext, &a, n)?;
                let g = z.group().clone();
                let mut text = String::new();
                for (i, v) in z.values().iter().enumerate() {
                    let e: Vec<String> = g.element(i).iter().map(u64::to_string).collect();
                    let val = v.first().map_or("0".to_string(), BigInt::to_string);
                    text.push_str(&format!("σ({}) ↦ {val}\n", e.join(",")));
                }
                return Ok(Output::new(
                    text,
                    json!({ "modulus": n, "symbol": cocycle_doc(&z) }),
                ));
            }
            let (Some(sigma), Some(alpha)) = (sigma, alpha) else {
                return usage("one of --alpha (with --sigma), --matrix or --symbol is required");
            };
            let sigma = parse_sigma(&ext, &sigma)?;
            let alpha = ext
                .parse(&alpha)
                .or_else(|e| usage(format!("--alpha: {e}")))?;
            let c = kummer_pairing(&ext, &sigma, &alpha, n)?;
            Ok(Output::new(
                c.to_string(),
                json!({ "modulus": n, "exponent": c }),
            ))
        }
        CohomCommand::Hilbert90 {
            ext,
            sigma,
            zeta,
            budget,
            seed,
        } => {
            let ext = parse_extension(&ext)?;
            let sigma = parse_sigma(&ext, &sigma)?;
            let n = ext.galois_order(&sigma);
            let zeta_elem = ext.root_of_unity(n as u32, zeta)?;
            let mut cfg = ResolventConfig::from_env();
            cfg.budget = budget;
            if let Some(s) = seed {
                cfg.seed = s;
            } else if std::env::var(RESOLVENT_SEED_VAR)
                .is_ok_and(|v| v.trim().parse::<u64>().is_err())
            {
                return usage(format!("{RESOLVENT_SEED_VAR} must be an unsigned integer"));
            }
            let r = hilbert90_resolvent(&ext, &sigma, &zeta_elem, &cfg)?;
            let text = format!("{}\ntrials {}", ext.format(&r.alpha), r.trials);
            Ok(Output::new(
                text,
                json!({
                    "order": n,
                    "zeta_power": zeta.rem_euclid(n as i64),
                    "alpha": ext.format(&r.alpha),
                    "theta": ext.format(&r.theta),
                    "trials": r.trials,
                    "seed": cfg.seed,
                }),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("wittkit").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn witt_commands() {
        assert_eq!(
            call(&["witt", "mul", "--ring", "Z", "--depth", "4", "1-2t", "1-3t"]).1,
            "1-6t\n"
        );
        assert_eq!(
            call(&["witt", "add", "--depth", "3", "1-2t", "1+t"]).1,
            "1-t-2t^2\n"
        );
        assert_eq!(
            call(&["witt", "teich", "--ring", "Z/12", "--depth", "2", "5"]).1,
            "1+7t\n"
        );
        let (_, ghost, _) = call(&["witt", "ghost", "--ring", "Q", "--depth", "3", "1-2t"]);
        assert_eq!(ghost, "2,4,8\n");
        assert_eq!(
            call(&["witt", "ghostinv", "--ring", "Q", "2,4,8"]).1,
            "1-2t\n"
        );
        let (code, out, _) = call(&["--json", "witt", "neg", "--depth", "2", "1-t"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["N"], 2);
        let back = call(&["witt", "neg", out.trim()]).1;
        assert_eq!(back, "1-t\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            call(&["witt", "mul", "--ring", "R", "--depth", "2", "1", "1"]).0,
            2
        );
        assert_eq!(call(&["witt", "frob", "--depth", "2", "1-t"]).0, 2);
        assert_eq!(call(&["nonsense"]).0, 2);
        let (code, _, err) = call(&["witt", "ghostinv", "--ring", "Z", "1,2"]);
        assert_eq!(code, 1);
        let e: Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(e["error"]["kind"], "unsupported");
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn abelian_commands() {
        assert_eq!(
            call(&["abelian", "ext", "--group", "rank=0;torsion=4,12"]).1,
            "torsion=4,12\n"
        );
        assert_eq!(call(&["abelian", "ext", "--group", "rank=2"]).1, "rank=0\n");
        assert_eq!(
            call(&["abelian", "pi0spec", "--group", "rank=1;torsion=3"]).1,
            "torsion=3\n"
        );
        let (_, out, _) = call(&["abelian", "covers", "--rank", "2", "--index", "2"]);
        assert!(out.starts_with("3 overlattices"));
        let (_, out, _) = call(&["abelian", "snf", "--matrix", "[[2,4],[6,8]]"]);
        assert_eq!(out, "diagonal: 2,4\ncokernel: torsion=2,4\n");
        let (_, out, _) = call(&[
            "abelian",
            "deck",
            "--rank",
            "2",
            "--denominator",
            "2",
            "--generators",
            "[[1,1]]",
        ]);
        assert!(out.ends_with("deck torsion=2\n"));
    }

    #[test]
    fn cohom_commands() {
        let (_, out, _) = call(&[
            "cohom", "table", "--group", "6", "--module", "4", "--degree", "2",
        ]);
        assert_eq!(out, "H^2 = torsion=2\n");
        let (_, out, _) = call(&[
            "cohom",
            "kummer",
            "--base-conductor",
            "3",
            "--radical",
            "2^(1/3)",
            "--sigma",
            "1",
            "--alpha",
            "y",
        ]);
        assert_eq!(out, "1\n");
        let (_, out, _) = call(&[
            "cohom",
            "kummer",
            "--base-conductor",
            "4",
            "--radical",
            "2^(1/2)",
            "--radical",
            "3^(1/2)",
            "--matrix",
        ]);
        assert_eq!(out, "1 0\n0 1\ninvertible mod 2: true\n");
        let (code, out, _) = call(&[
            "cohom",
            "hilbert90",
            "--base-conductor",
            "3",
            "--radical",
            "2^(1/3)",
            "--sigma",
            "1",
            "--zeta",
            "2",
        ]);
        assert_eq!(code, 0);
        assert!(out.starts_with("y^2"));
    }

    #[test]
    fn groupring_commands() {
        let (_, out, _) = call(&[
            "groupring",
            "mul",
            "--group",
            "rank=1",
            "[1]+[0]",
            "[1]-[0]",
        ]);
        assert_eq!(out, "-[0]+[2]\n");
        let (_, out, _) = call(&[
            "groupring",
            "towitt",
            "--group",
            "rank=1",
            "--images=-1",
            "[1]",
        ]);
        assert_eq!(out, "(1+t)/(1)\n");
        let (_, out, _) = call(&[
            "groupring",
            "congruence",
            "--group",
            "rank=1",
            "--p",
            "3",
            "[0]+[1]",
        ]);
        assert!(out.ends_with("divisible by 3: true\n"));
    }
}
