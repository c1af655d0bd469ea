//! Finitely generated abelian groups seen through their Pontryagin duals: `Hom` and
//! `Ext` into `Z`, component groups, finite covers of dual tori as overlattices,
//! and finite stages of solenoid inverse limits.

mod matrix;

pub use matrix::{
    echelon_basis, hermite_normal_form, kernel_mod, smith_normal_form, solve_lower_triangular,
    IntegerMatrix, SmithDecomposition, SparseRow,
};

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grouplambda::FgAbelianGroup;

/// Relation matrix of `M`: one generator per coordinate, one relation column
/// `d_i e_i` per invariant factor.
pub fn presentation_matrix(m: &FgAbelianGroup) -> IntegerMatrix {
    let n = m.ngens();
    let k = m.torsion().len();
    let mut a = IntegerMatrix::zeros(n, k);
    for (j, &d) in m.torsion().iter().enumerate() {
        a.set(m.free_rank() + j, j, BigInt::from(d));
    }
    a
}

/// `Ext(M, Z)` for `M = coker(A)` with `A` injective: the cokernel of `A^T`.
pub fn ext_from_presentation(a: &IntegerMatrix) -> Result<FgAbelianGroup> {
    let rank = smith_normal_form(a)
        .diagonal()
        .iter()
        .filter(|d| !d.is_zero())
        .count();
    if rank != a.cols() {
        return Err(Error::InvalidInput(
            "relation matrix must have independent columns".into(),
        ));
    }
    FgAbelianGroup::from_presentation(&a.transpose())
}

/// `Hom(M, Z)` for `M = coker(A)`: free of rank `#generators - rank(A)`.
pub fn hom_from_presentation(a: &IntegerMatrix) -> FgAbelianGroup {
    let rank = smith_normal_form(a)
        .diagonal()
        .iter()
        .filter(|d| !d.is_zero())
        .count();
    FgAbelianGroup::free(a.rows() - rank)
}

pub fn ext_to_z(m: &FgAbelianGroup) -> FgAbelianGroup {
    ext_from_presentation(&presentation_matrix(m)).expect("diagonal relations are independent")
}

pub fn hom_to_z(m: &FgAbelianGroup) -> FgAbelianGroup {
    hom_from_presentation(&presentation_matrix(m))
}

/// Path components of the Pontryagin dual `M^∨`, i.e. `Ext(M, Z)`.
pub fn pi0_path_dual(m: &FgAbelianGroup) -> FgAbelianGroup {
    ext_to_z(m)
}

/// Connected components of `Spec` of the group algebra, i.e. the dual of `M_tors`,
/// reported by its invariant factors.
pub fn pi0_spec_group_algebra(m: &FgAbelianGroup) -> FgAbelianGroup {
    let tors = m.torsion_part();
    // a finite group and its dual share invariant factors: Hom(T, Q/Z) = Ext(T, Z)
    ext_to_z(&tors)
}

/// An intermediate lattice `Z^r ⊆ N ⊆ (1/n) Z^r` of index `n`, stored as the
/// column Hermite form `H` of `nN ⊆ Z^r`, so that `N = (1/n) H Z^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Overlattice {
    rank: usize,
    index: u64,
    numerators: IntegerMatrix,
}

impl Overlattice {
    /// Builds `N` from rational generators given as integer numerators over `n`;
    /// `Z^r` is added automatically.
    pub fn from_generators(rank: usize, denominator: u64, generators: &[Vec<i64>]) -> Result<Self> {
        if rank == 0 || denominator == 0 {
            return Err(Error::InvalidInput(
                "rank and denominator must be positive".into(),
            ));
        }
        let n = BigInt::from(denominator);
        let mut cols: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|g| {
                if g.len() == rank {
                    Ok(g.iter().map(|&x| BigInt::from(x)).collect())
                } else {
                    Err(Error::InvalidInput(format!(
                        "generator {g:?} must have {rank} coordinates"
                    )))
                }
            })
            .collect::<Result<_>>()?;
        for i in 0..rank {
            let mut e = vec![BigInt::zero(); rank];
            e[i] = n.clone();
            cols.push(e);
        }
        let h = hermite_normal_form(&IntegerMatrix::from_columns(rank, &cols))?;
        let det = h.det()?;
        let nr = n.pow(rank as u32);
        let index =
            u64::try_from(&nr / &det).map_err(|_| Error::TooLarge("overlattice index".into()))?;
        // index·N ⊆ Z^r because N/Z^r has exponent dividing its order
        let idx = BigInt::from(index);
        let cols = (0..rank)
            .map(|j| {
                h.column(j)
                    .iter()
                    .map(|x| {
                        let (q, rem) = (x * &idx).div_rem(&n);
                        if rem.is_zero() {
                            Ok(q)
                        } else {
                            Err(Error::CrossCheck(
                                "overlattice numerators are not integral".into(),
                            ))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let numerators = hermite_normal_form(&IntegerMatrix::from_columns(rank, &cols))?;
        Ok(Overlattice {
            rank,
            index,
            numerators,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `[N : Z^r]`.
    pub fn index(&self) -> u64 {
        self.index
    }

    /// The Hermite form `H` with `N = (1/index) H Z^r`.
    pub fn numerators(&self) -> &IntegerMatrix {
        &self.numerators
    }

    /// Basis vectors of `N` (columns of `H / index`).
    pub fn basis(&self) -> Vec<Vec<BigRational>> {
        let n = BigInt::from(self.index);
        (0..self.rank)
            .map(|j| {
                self.numerators
                    .column(j)
                    .into_iter()
                    .map(|x| BigRational::new(x, n.clone()))
                    .collect()
            })
            .collect()
    }

    /// Whether the rational vector `num / index` lies in `N`.
    fn contains_scaled(&self, num: &[BigInt]) -> bool {
        solve_lower_triangular(&self.numerators, num).is_some()
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        let n = BigInt::from(self.index);
        let scaled: Vec<BigRational> = v
            .iter()
            .map(|x| x * BigRational::from_integer(n.clone()))
            .collect();
        if scaled.iter().any(|x| !x.is_integer()) {
            return false;
        }
        self.contains_scaled(&scaled.iter().map(|x| x.to_integer()).collect::<Vec<_>>())
    }

    /// Whether `self ⊆ other`.
    pub fn is_sublattice_of(&self, other: &Self) -> bool {
        self.rank == other.rank && self.basis().iter().all(|b| other.contains(b))
    }
}

/// All overlattices of `Z^r` of index `n`, each once, in a fixed order.
pub fn enumerate_overlattices(r: usize, n: u64) -> Result<Vec<Overlattice>> {
    if r == 0 || n == 0 {
        return Err(Error::InvalidInput(
            "rank and index must be positive".into(),
        ));
    }
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let target = BigInt::from(n).pow(r as u32 - 1);
    let mut out = Vec::new();
    let mut diag = vec![0u64; r];
    enumerate_diagonals(&divisors, &target, 0, &mut diag, &mut |d| {
        for h in hermite_forms_with_diagonal(d) {
            let nb = BigInt::from(n);
            let contains_n_zr = (0..r).all(|k| {
                let mut e = vec![BigInt::zero(); r];
                e[k] = nb.clone();
                solve_lower_triangular(&h, &e).is_some()
            });
            if contains_n_zr {
                out.push(Overlattice {
                    rank: r,
                    index: n,
                    numerators: h,
                });
            }
        }
    });
    Ok(out)
}

fn enumerate_diagonals(
    divisors: &[u64],
    target: &BigInt,
    i: usize,
    diag: &mut Vec<u64>,
    f: &mut impl FnMut(&[u64]),
) {
    if i == diag.len() {
        let prod: BigInt = diag.iter().map(|&d| BigInt::from(d)).product();
        if &prod == target {
            f(diag);
        }
        return;
    }
    for &d in divisors {
        diag[i] = d;
        enumerate_diagonals(divisors, target, i + 1, diag, f);
    }
}

fn hermite_forms_with_diagonal(diag: &[u64]) -> Vec<IntegerMatrix> {
    let r = diag.len();
    let slots: Vec<(usize, usize)> = (0..r).flat_map(|i| (0..i).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut vals = vec![0u64; slots.len()];
    loop {
        let mut h =
            IntegerMatrix::diagonal(&diag.iter().map(|&d| BigInt::from(d)).collect::<Vec<_>>());
        for (&(i, j), &v) in slots.iter().zip(&vals) {
            h.set(i, j, BigInt::from(v));
        }
        out.push(h);
        // odometer over 0 ≤ h_ij < h_ii
        let mut k = 0;
        loop {
            if k == slots.len() {
                return out;
            }
            vals[k] += 1;
            if vals[k] < diag[slots[k].0] {
                break;
            }
            vals[k] = 0;
            k += 1;
        }
    }
}

/// The deck group of `N^∨ → (Z^r)^∨`, dual to `N / Z^r`.
pub fn covering_deck_group(lat: &Overlattice) -> Result<FgAbelianGroup> {
    let r = lat.rank;
    let n = BigInt::from(lat.index);
    // generators: columns of H; relations: n e_k written in that basis
    let cols: Vec<Vec<BigInt>> = (0..r)
        .map(|k| {
            let mut e = vec![BigInt::zero(); r];
            e[k] = n.clone();
            solve_lower_triangular(&lat.numerators, &e).expect("n Z^r lies in nN")
        })
        .collect();
    FgAbelianGroup::from_presentation(&IntegerMatrix::from_columns(r, &cols))
}

/// The restriction of deck groups induced by `N ⊆ N'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeckSurjection {
    pub source: FgAbelianGroup,
    pub target: FgAbelianGroup,
    pub kernel_order: u64,
    pub surjective: bool,
}

/// For `N ⊆ N'`, the map `(N'/Z^r)^∨ → (N/Z^r)^∨`. It is surjective exactly when
/// `N/Z^r → N'/Z^r` is injective, which is checked by enumerating `N/Z^r`.
pub fn deck_surjection(small: &Overlattice, large: &Overlattice) -> Result<DeckSurjection> {
    if !small.is_sublattice_of(large) {
        return Err(Error::InvalidInput(
            "first overlattice is not contained in the second".into(),
        ));
    }
    let r = small.rank;
    let n = small.index as i64;
    let mut kernel = 0u64;
    let mut size = 0u64;
    let mut v = vec![0i64; r];
    loop {
        let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        if small.contains_scaled(&big) {
            size += 1;
            // v/n is zero in N'/Z^r iff it is integral
            if v.iter().all(|&x| x % n == 0) {
                kernel += 1;
            }
        }
        let mut k = 0;
        while k < r {
            v[k] += 1;
            if v[k] < n {
                break;
            }
            v[k] = 0;
            k += 1;
        }
        if k == r {
            break;
        }
    }
    debug_assert_eq!(size, small.index);
    let source = covering_deck_group(large)?;
    let target = covering_deck_group(small)?;
    let kernel_order = large.index / small.index;
    Ok(DeckSurjection {
        source,
        target,
        kernel_order,
        surjective: kernel == 1,
    })
}

/// One finite stage `Ext((1/n)Z/Z, Z) ≅ Z/n` of the solenoid chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolenoidStage {
    pub denominator: u64,
    pub group: FgAbelianGroup,
    /// Image of the generator `1 ∈ Z/n_j` in the previous stage.
    pub transition: Option<u64>,
    pub surjective: bool,
    /// Number of compatible sequences in the inverse system truncated at this stage.
    pub limit_order: u64,
}

pub fn solenoid_stage_chain(denominators: &[u64]) -> Result<Vec<SolenoidStage>> {
    if denominators.is_empty() || denominators.contains(&0) {
        return Err(Error::InvalidInput("denominators must be positive".into()));
    }
    if let Some(w) = denominators.windows(2).find(|w| w[1] % w[0] != 0) {
        return Err(Error::InvalidInput(format!(
            "{} does not divide {}",
            w[0], w[1]
        )));
    }
    let mut out: Vec<SolenoidStage> = Vec::new();
    let mut counts: Vec<u64> = Vec::new();
    for &n in denominators {
        let group = ext_to_z(&FgAbelianGroup::cyclic(n));
        let Some(prev) = out.last() else {
            counts = vec![1; n as usize];
            out.push(SolenoidStage {
                denominator: n,
                group,
                transition: None,
                surjective: true,
                limit_order: n,
            });
            continue;
        };
        let m = prev.denominator;
        // a character with χ(1/n) = a/n restricts to χ(1/m) = (n/m)·a/n on (1/m)Z/Z
        let restrict = |a: u64| -> u64 {
            let q = BigRational::new(BigInt::from((n / m) * a), BigInt::from(n))
                * BigRational::from_integer(m.into());
            let v = q.to_integer();
            u64::try_from(v.mod_floor(&BigInt::from(m))).expect("reduced")
        };
        let image: BTreeSet<u64> = (0..n).map(restrict).collect();
        let new_counts: Vec<u64> = (0..n).map(|a| counts[restrict(a) as usize]).collect();
        let limit_order = new_counts.iter().sum();
        counts = new_counts;
        out.push(SolenoidStage {
            denominator: n,
            group,
            transition: Some(restrict(1)),
            surjective: image.len() as u64 == m,
            limit_order,
        });
    }
    Ok(out)
}

/// Sum of divisors.
pub fn sigma(n: u64) -> u64 {
    (1..=n).filter(|d| n % d == 0).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(rank: usize, torsion: &[u64]) -> FgAbelianGroup {
        FgAbelianGroup::new(rank, torsion.to_vec()).unwrap()
    }

    #[test]
    fn ext_and_hom() {
        assert!(ext_to_z(&FgAbelianGroup::free(1)).is_trivial());
        assert_eq!(
            ext_to_z(&FgAbelianGroup::cyclic(5)),
            FgAbelianGroup::cyclic(5)
        );
        let m = g(1, &[4, 12]);
        assert_eq!(ext_to_z(&m), g(0, &[4, 12]));
        assert_eq!(hom_to_z(&m), FgAbelianGroup::free(1));
    }

    #[test]
    fn component_groups() {
        assert!(pi0_path_dual(&FgAbelianGroup::free(2)).is_trivial());
        assert_eq!(
            pi0_path_dual(&FgAbelianGroup::cyclic(4)),
            FgAbelianGroup::cyclic(4)
        );
        assert_eq!(pi0_path_dual(&g(1, &[4])), FgAbelianGroup::cyclic(4));
        assert!(pi0_spec_group_algebra(&FgAbelianGroup::free(3)).is_trivial());
        assert_eq!(
            pi0_spec_group_algebra(&FgAbelianGroup::cyclic(6)),
            FgAbelianGroup::cyclic(6)
        );
        assert_eq!(pi0_spec_group_algebra(&g(1, &[2, 4])), g(0, &[2, 4]));
    }

    #[test]
    fn overlattice_counts() {
        for k in 1..=6 {
            let all = enumerate_overlattices(1, k).unwrap();
            assert_eq!(all.len(), 1);
            assert_eq!(
                covering_deck_group(&all[0]).unwrap(),
                FgAbelianGroup::cyclic(k)
            );
        }
        assert_eq!(enumerate_overlattices(2, 2).unwrap().len(), 3);
        assert_eq!(enumerate_overlattices(2, 6).unwrap().len(), 12);
        assert_eq!(enumerate_overlattices(3, 2).unwrap().len(), 7);
    }

    #[test]
    fn deck_groups() {
        let half = Overlattice::from_generators(2, 2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(half.index(), 4);
        assert_eq!(covering_deck_group(&half).unwrap(), g(0, &[2, 2]));
        let quarter = Overlattice::from_generators(2, 4, &[vec![1, 0]]).unwrap();
        assert_eq!(quarter.index(), 4);
        assert_eq!(
            covering_deck_group(&quarter).unwrap(),
            FgAbelianGroup::cyclic(4)
        );
    }

    #[test]
    fn deck_functoriality() {
        let small = Overlattice::from_generators(2, 2, &[vec![1, 0]]).unwrap();
        let large = Overlattice::from_generators(2, 4, &[vec![1, 0], vec![0, 2]]).unwrap();
        let map = deck_surjection(&small, &large).unwrap();
        assert!(map.surjective);
        assert_eq!(map.kernel_order, 4);
        assert!(deck_surjection(&large, &small).is_err());
    }

    #[test]
    fn solenoid_chains() {
        let one = solenoid_stage_chain(&[1]).unwrap();
        assert!(one[0].group.is_trivial());
        let chain = solenoid_stage_chain(&[2, 4, 8]).unwrap();
        assert!(chain.iter().all(|s| s.surjective));
        assert_eq!(chain[1].transition, Some(1));
        let chain = solenoid_stage_chain(&[1, 2, 6, 24]).unwrap();
        let orders: Vec<u64> = chain.iter().map(|s| s.group.order().unwrap()).collect();
        assert_eq!(orders, vec![1, 2, 6, 24]);
        assert_eq!(
            chain.iter().map(|s| s.limit_order).collect::<Vec<_>>(),
            orders
        );
        assert!(solenoid_stage_chain(&[2, 3]).is_err());
    }
}
