//! Kummer pairings and Hilbert 90 resolvents over cyclotomic fields.

use wittkit::exactring::CyclotomicNumber;
use wittkit::kummercoh::{
    galois_symbol, hilbert90_resolvent, kummer_pairing, kummer_pairing_matrix,
    nth_root_in_extension, KummerExtension, ResolventConfig,
};

fn main() -> wittkit::Result<()> {
    // Q(zeta_3)(2^(1/3))
    let ext = KummerExtension::with_integer_radicals(3, &[(2, 3)])?;
    let sigma = ext.generator(0);
    let y = ext.y(0);
    for k in 0..3u64 {
        let a = ext.pow(&y, k);
        println!(
            "<sigma, {}> = {}",
            ext.format(&a),
            kummer_pairing(&ext, &sigma, &a, 3)?
        );
    }
    let m = kummer_pairing_matrix(&ext, 3, None)?;
    println!(
        "pairing matrix {:?}, invertible: {}",
        m.entries,
        m.is_invertible()
    );

    // Two radicals of 2 and 8 over Q(i) generate the same square class.
    let two = KummerExtension::with_integer_radicals(4, &[(2, 2)])?;
    let y = two.y(0);
    let dependent = [y.clone(), two.scale(&y, &CyclotomicNumber::from_int(4, 2))];
    let m = kummer_pairing_matrix(&two, 2, Some(&dependent))?;
    println!(
        "sqrt 2 and sqrt 8: {:?}, dependent rows: {}",
        m.entries,
        m.has_dependent_rows()
    );

    let root = nth_root_in_extension(&two, &CyclotomicNumber::from_int(4, 8), 2)?;
    println!("a square root of 8: {}", two.format(&root));
    let sym = galois_symbol(&two, &CyclotomicNumber::from_int(4, 2), 2)?;
    println!("symbol of 2: {:?}", sym.values());

    // A resolvent alpha with sigma(alpha) = zeta * alpha in Q(zeta_5)(2^(1/5)).
    let ext = KummerExtension::with_integer_radicals(5, &[(2, 5)])?;
    let sigma = ext.generator(0);
    let zeta = CyclotomicNumber::zeta_pow(5, 2);
    let r = hilbert90_resolvent(&ext, &sigma, &zeta, &ResolventConfig::default())?;
    println!("theta = {}", ext.format(&r.theta));
    println!(
        "alpha = {} after {} trial(s)",
        ext.format(&r.alpha),
        r.trials
    );
    let lhs = ext.apply(&sigma, &r.alpha)?;
    let rhs = ext.mul(&ext.constant(zeta), &r.alpha);
    println!("sigma(alpha) = zeta alpha: {}", lhs == rhs);
    Ok(())
}
