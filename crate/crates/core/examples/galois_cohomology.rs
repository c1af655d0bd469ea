//! Cohomology of finite abelian groups with coefficients in small modules.

use wittkit::dualtop::IntegerMatrix;
use wittkit::grouplambda::FgAbelianGroup;
use wittkit::kummercoh::{group_cohomology, FiniteGroup, GModule};

fn main() -> wittkit::Result<()> {
    let c6 = FiniteGroup::cyclic(6)?;
    let z4 = GModule::trivial(&c6, FgAbelianGroup::cyclic(4));
    for p in 0..=3 {
        println!(
            "H^{p}(C6, Z/4) = {}",
            group_cohomology(&c6, &z4, p)?.invariants()
        );
    }

    let c2 = FiniteGroup::cyclic(2)?;
    let sign = GModule::new(
        &c2,
        FgAbelianGroup::free(1),
        vec![IntegerMatrix::from_rows(&[vec![-1]])?],
    )?;
    for p in 0..=3 {
        println!(
            "H^{p}(C2, Z with sign) = {}",
            group_cohomology(&c2, &sign, p)?.invariants()
        );
    }

    let klein = FiniteGroup::new(vec![2, 2])?;
    let z = GModule::trivial(&klein, FgAbelianGroup::free(1));
    for p in 0..=2 {
        println!(
            "H^{p}(C2 x C2, Z) = {}",
            group_cohomology(&klein, &z, p)?.invariants()
        );
    }
    Ok(())
}
