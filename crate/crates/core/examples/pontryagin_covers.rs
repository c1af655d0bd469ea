//! Ext against Z, finite covers of tori and the solenoid tower.

use wittkit::dualtop::{
    covering_deck_group, deck_surjection, enumerate_overlattices, ext_from_presentation, ext_to_z,
    hom_to_z, pi0_path_dual, pi0_spec_group_algebra, sigma, smith_normal_form,
    solenoid_stage_chain, IntegerMatrix, Overlattice,
};
use wittkit::grouplambda::FgAbelianGroup;

fn main() -> wittkit::Result<()> {
    let a = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]])?;
    let snf = smith_normal_form(&a);
    println!("presentation\n{a}");
    println!(
        "Smith diagonal {:?}",
        snf.diagonal()
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
    );
    println!("Ext(coker, Z) = {}", ext_from_presentation(&a)?);

    let m: FgAbelianGroup = "rank=2;torsion=2,6".parse()?;
    println!("M = {m}");
    println!("  Hom(M, Z)        = {}", hom_to_z(&m));
    println!("  Ext(M, Z)        = {}", ext_to_z(&m));
    println!("  pi0 of dual      = {}", pi0_path_dual(&m));
    println!("  pi0 of Spec Q[M] = {}", pi0_spec_group_algebra(&m));

    for n in 1..=6u64 {
        let covers = enumerate_overlattices(2, n)?;
        println!(
            "degree {n} covers of the 2-torus: {} (sigma = {})",
            covers.len(),
            sigma(n)
        );
    }

    let small = Overlattice::from_generators(2, 2, &[vec![1, 0]])?;
    let large = Overlattice::from_generators(2, 4, &[vec![1, 0], vec![0, 2]])?;
    println!(
        "deck group of small cover: {}",
        covering_deck_group(&small)?
    );
    println!(
        "deck group of large cover: {}",
        covering_deck_group(&large)?
    );
    let s = deck_surjection(&small, &large)?;
    println!(
        "restriction {} -> {} surjective: {}, kernel order {}",
        s.source, s.target, s.surjective, s.kernel_order
    );

    for stage in solenoid_stage_chain(&[2, 4, 8, 16])? {
        println!(
            "stage 1/{}: {} transition {:?} limit order {}",
            stage.denominator, stage.group, stage.transition, stage.limit_order
        );
    }
    Ok(())
}
