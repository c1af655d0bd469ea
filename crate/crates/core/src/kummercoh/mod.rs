//! Galois computations at desk scale: Kummer extensions of cyclotomic fields, the
//! Kummer pairing, Hilbert 90 via Lagrange resolvents, and cohomology of finite
//! abelian groups with cup products and Kummer symbols.

mod cohomology;
mod kummer;

pub use cohomology::{
    bar_differential, cup_product, group_cohomology, BilinearPairing, Cocycle, CohomologyGroup,
    FiniteGroup, GModule, MAX_COCHAIN_SIZE, MAX_DEGREE, MAX_GROUP_ORDER,
};
pub use kummer::{
    galois_symbol, hilbert90_resolvent, kummer_pairing, kummer_pairing_matrix,
    nth_root_in_extension, GaloisElement, KummerElement, KummerExtension, PairingMatrix, Resolvent,
    ResolventConfig, DEFAULT_RESOLVENT_BUDGET, RESOLVENT_SEED_VAR,
};
