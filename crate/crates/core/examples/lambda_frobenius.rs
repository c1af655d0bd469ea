//! Adams operations on the group ring Z[M] and its map into rational Witt vectors.

use wittkit::exactring::RingDescriptor;
use wittkit::grouplambda::{
    frobenius_compat_check, frobenius_congruence_check, gr_frobenius_lift, lambda_commute_check,
    to_witt, FgAbelianGroup, GroupRingElement, WittAssignment,
};

fn main() -> wittkit::Result<()> {
    let m: FgAbelianGroup = "rank=1;torsion=3".parse()?;
    let x = GroupRingElement::parse(&m, "2[1,0]-[0,1]+[2,2]")?;
    println!("M = {m}");
    println!("x = {x}");
    for p in [2u64, 3, 5] {
        let phi = gr_frobenius_lift(p, &x)?;
        let diff = frobenius_congruence_check(p, &x)?;
        println!("psi^{p}(x) = {phi}");
        println!(
            "  psi^{p}(x) - x^{p} divisible by {p}: {}",
            diff.divisible_by(p)
        );
    }
    println!(
        "psi^2 psi^3 = psi^3 psi^2 on x: {}",
        lambda_commute_check(2, 3, &x)?
    );

    let free = FgAbelianGroup::free(1);
    let ring = RingDescriptor::Integers;
    let asg = WittAssignment::new(free.clone(), ring.clone(), vec![ring.from_int(-1)])?;
    let y = GroupRingElement::parse(&free, "[1]+[2]")?;
    println!("image of {y} with g -> -1: {}", to_witt(&y, &asg)?);
    for p in [2u64, 3] {
        println!(
            "  intertwines psi^{p} and F_{p}: {}",
            frobenius_compat_check(p, &y, &asg)?
        );
    }
    Ok(())
}
