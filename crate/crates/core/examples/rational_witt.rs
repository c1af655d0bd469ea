//! Rational Witt vectors: exact quotients of polynomials with constant term 1.

use wittkit::exactring::text::{format_elem, parse_fraction};
use wittkit::exactring::RingDescriptor;
use wittkit::wittrat::{phi_p, phi_p_minus_scalar_check, RationalWittVector};

fn parse(ring: &RingDescriptor, s: &str) -> wittkit::Result<RationalWittVector> {
    let (n, d) = parse_fraction(ring, s)?;
    RationalWittVector::new(n, d)
}

fn main() -> wittkit::Result<()> {
    let z = RingDescriptor::Integers;
    let u = parse(&z, "(1-t)/(1+t)")?;
    let v = parse(&z, "1-2t+t^2")?;
    println!("u       = {u}");
    println!("v       = {v}");
    println!("u + v   = {}", u.add(&v)?);
    println!("u * v   = {}", u.mul(&v)?);
    println!("-u      = {}", u.neg());

    // The product agrees with the truncated product after expansion.
    let depth = 8;
    let lhs = u.mul(&v)?.embed(depth)?;
    let rhs = u.embed(depth)?.mul(&v.embed(depth)?)?;
    println!(
        "embedding respects products to depth {depth}: {}",
        lhs == rhs
    );

    for p in [2, 3, 5] {
        let phi = phi_p(p)?;
        let ghost: Vec<String> = phi
            .ghost(2 * p as usize)
            .components()
            .iter()
            .map(|c| format_elem(&z, c))
            .collect();
        let diff: Vec<String> = phi_p_minus_scalar_check(p, 2 * p as usize)?
            .components()
            .iter()
            .map(|c| format_elem(&z, c))
            .collect();
        println!("phi_{p} = {phi}");
        println!("  ghost          {}", ghost.join(","));
        println!("  minus [{p}]     {}", diff.join(","));
    }
    Ok(())
}
