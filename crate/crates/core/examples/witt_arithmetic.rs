//! Truncated big Witt vectors over several coefficient rings.

use wittkit::exactring::text::{format_elem, format_poly, parse_poly};
use wittkit::exactring::RingDescriptor;
use wittkit::wittvec::TruncatedWittVector;

fn show(label: &str, w: &TruncatedWittVector) {
    println!("{label:>12}: {}", format_poly(&w.to_series()));
}

fn main() -> wittkit::Result<()> {
    let z: RingDescriptor = "Z".parse()?;
    let depth = 6;

    // Teichmüller lifts multiply like their arguments.
    let a = TruncatedWittVector::teichmuller(&z.from_int(2), &z, depth)?;
    let b = TruncatedWittVector::teichmuller(&z.from_int(-3), &z, depth)?;
    show("[2]", &a);
    show("[-3]", &b);
    show("[2]*[-3]", &a.mul(&b)?);

    let u = TruncatedWittVector::from_series(&parse_poly(&z, "1+t-2t^3")?, depth)?;
    let v = TruncatedWittVector::from_series(&parse_poly(&z, "1-t^2+t^5")?, depth)?;
    show("u", &u);
    show("v", &v);
    show("u+v", &u.add(&v)?);
    show("u*v", &u.mul(&v)?);
    show("-u", &u.neg());

    let gh = u.ghost();
    let comps: Vec<String> = gh.components().iter().map(|c| format_elem(&z, c)).collect();
    println!("{:>12}: {}", "ghost(u)", comps.join(","));

    show("F_2 u", &u.frobenius(2)?);
    show("V_2 u", &u.verschiebung(2)?);

    // The same product computed modulo 4 and in F_5.
    for name in ["Z/4", "Fp/5"] {
        let r: RingDescriptor = name.parse()?;
        let u = TruncatedWittVector::from_series(&parse_poly(&r, "1+t-2t^3")?, depth)?;
        let v = TruncatedWittVector::from_series(&parse_poly(&r, "1-t^2+t^5")?, depth)?;
        show(&format!("u*v over {name}"), &u.mul(&v)?);
    }
    Ok(())
}
