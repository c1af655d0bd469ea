//! Cohomology of finite abelian groups with coefficients in finitely generated
//! modules, computed from the inhomogeneous bar complex.
//!
//! A `p`-cochain is a function `G^p → A`, stored densely as an integer vector of
//! length `|G|^p · s` where `s` is the number of coordinates of `A`; torsion
//! coordinates are read modulo their invariant factor.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::dualtop::{kernel_mod, smith_normal_form, IntegerMatrix, SparseRow};
use crate::error::{Error, Result};
use crate::grouplambda::FgAbelianGroup;

/// Largest allowed group order.
pub const MAX_GROUP_ORDER: u64 = 64;
/// Largest allowed cochain degree.
pub const MAX_DEGREE: usize = 3;
/// Largest number of coordinates of a cochain in degree `p + 1`.
pub const MAX_COCHAIN_SIZE: usize = 40_000;

/// A finite abelian group `Z/n_1 × … × Z/n_k`, elements indexed in mixed radix
/// with the first factor varying slowest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteGroup {
    orders: Vec<u64>,
}

impl FiniteGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidGroup("cyclic factors must be finite".into()));
        }
        let size: u64 = orders.iter().product();
        if size > MAX_GROUP_ORDER {
            return Err(Error::TooLarge(format!(
                "group order {size} exceeds {MAX_GROUP_ORDER}"
            )));
        }
        Ok(FiniteGroup { orders })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn from_fg(g: &FgAbelianGroup) -> Result<Self> {
        if !g.is_finite() {
            return Err(Error::InvalidGroup(format!("{g} is infinite")));
        }
        Self::new(g.torsion().to_vec())
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn ngens(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product::<u64>() as usize
    }

    pub fn element(&self, idx: usize) -> Vec<u64> {
        let mut rest = idx as u64;
        let mut out = vec![0; self.orders.len()];
        for (i, &n) in self.orders.iter().enumerate().rev() {
            out[i] = rest % n;
            rest /= n;
        }
        out
    }

    pub fn index(&self, e: &[u64]) -> usize {
        e.iter()
            .zip(&self.orders)
            .fold(0u64, |acc, (&x, &n)| acc * n + x % n) as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.element(a), self.element(b));
        let s: Vec<u64> = x
            .iter()
            .zip(&y)
            .zip(&self.orders)
            .map(|((p, q), n)| (p + q) % n)
            .collect();
        self.index(&s)
    }

    pub fn generator(&self, i: usize) -> usize {
        let mut e = vec![0; self.orders.len()];
        e[i] = 1;
        self.index(&e)
    }
}

/// A finitely generated abelian group with a `G`-action, one integer matrix per
/// generator of `G` acting on coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GModule {
    module: FgAbelianGroup,
    action: Vec<IntegerMatrix>,
    #[serde(skip)]
    element_action: Vec<IntegerMatrix>,
}

impl GModule {
    pub fn trivial(group: &FiniteGroup, module: FgAbelianGroup) -> Self {
        let s = module.ngens();
        let action = vec![IntegerMatrix::identity(s); group.ngens()];
        Self::new(group, module, action).expect("the trivial action is valid")
    }

    /// Validates that every matrix preserves the torsion relations, has the order
    /// of its generator, and that the matrices commute, all modulo the relations.
    pub fn new(
        group: &FiniteGroup,
        module: FgAbelianGroup,
        action: Vec<IntegerMatrix>,
    ) -> Result<Self> {
        let s = module.ngens();
        if action.len() != group.ngens() {
            return Err(Error::InvalidAction(format!(
                "{} generator matrices expected",
                group.ngens()
            )));
        }
        if action.iter().any(|a| a.rows() != s || a.cols() != s) {
            return Err(Error::InvalidAction(format!(
                "action matrices must be {s}x{s}"
            )));
        }
        let md = |i: usize| BigInt::from(module.modulus(i));
        for a in &action {
            for j in 0..s {
                for i in 0..s {
                    let image = a.get(i, j) * md(j);
                    let ok = if md(i).is_zero() {
                        image.is_zero()
                    } else {
                        image.is_multiple_of(&md(i))
                    };
                    if !ok {
                        return Err(Error::InvalidAction(
                            "action does not preserve the torsion relations".into(),
                        ));
                    }
                }
            }
        }
        let congruent = |x: &IntegerMatrix, y: &IntegerMatrix| {
            (0..s).all(|i| {
                (0..s).all(|j| {
                    let d = x.get(i, j) - y.get(i, j);
                    if md(i).is_zero() {
                        d.is_zero()
                    } else {
                        d.is_multiple_of(&md(i))
                    }
                })
            })
        };
        for (a, &n) in action.iter().zip(group.orders()) {
            let mut p = IntegerMatrix::identity(s);
            for _ in 0..n {
                p = reduce_rows(&module, &p.mul(a)?);
            }
            if !congruent(&p, &IntegerMatrix::identity(s)) {
                return Err(Error::InvalidAction(format!(
                    "generator matrix does not have order dividing {n}"
                )));
            }
        }
        for a in &action {
            for b in &action {
                if !congruent(&a.mul(b)?, &b.mul(a)?) {
                    return Err(Error::InvalidAction(
                        "generator matrices do not commute".into(),
                    ));
                }
            }
        }
        let mut element_action = Vec::with_capacity(group.order());
        for idx in 0..group.order() {
            let e = group.element(idx);
            let mut m = IntegerMatrix::identity(s);
            for (a, &k) in action.iter().zip(&e) {
                for _ in 0..k {
                    m = reduce_rows(&module, &m.mul(a)?);
                }
            }
            element_action.push(m);
        }
        Ok(GModule {
            module,
            action,
            element_action,
        })
    }

    pub fn module(&self) -> &FgAbelianGroup {
        &self.module
    }

    pub fn action(&self) -> &[IntegerMatrix] {
        &self.action
    }

    /// The matrix by which the group element with index `g` acts.
    pub fn element_matrix(&self, g: usize) -> &IntegerMatrix {
        &self.element_action[g]
    }

    pub fn is_trivial(&self) -> bool {
        let s = self.module.ngens();
        self.action.iter().all(|a| *a == IntegerMatrix::identity(s))
    }

    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        reduce_vec(&self.module, v)
    }
}

fn reduce_vec(module: &FgAbelianGroup, v: &[BigInt]) -> Vec<BigInt> {
    v.iter()
        .enumerate()
        .map(|(i, x)| match module.modulus(i) {
            0 => x.clone(),
            d => x.mod_floor(&BigInt::from(d)),
        })
        .collect()
}

fn reduce_rows(module: &FgAbelianGroup, m: &IntegerMatrix) -> IntegerMatrix {
    let mut out = m.clone();
    for i in 0..m.rows() {
        let d = module.modulus(i);
        if d != 0 {
            for j in 0..m.cols() {
                out.set(i, j, m.get(i, j).mod_floor(&BigInt::from(d)));
            }
        }
    }
    out
}

fn tuples(n: usize, p: usize) -> usize {
    n.pow(p as u32)
}

fn split_tuple(n: usize, p: usize, mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; p];
    for i in (0..p).rev() {
        out[i] = idx % n;
        idx /= n;
    }
    out
}

fn join_tuple(n: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &x| acc * n + x)
}

/// Rows of the bar differential `d^p: C^p → C^{p+1}`:
/// `(dφ)(g_1..g_{p+1}) = g_1 φ(g_2..) + Σ (-1)^i φ(.., g_i g_{i+1}, ..) + (-1)^{p+1} φ(g_1..g_p)`.
fn differential_rows(group: &FiniteGroup, m: &GModule, p: usize) -> Vec<SparseRow> {
    let n = group.order();
    let s = m.module.ngens();
    let mut rows = Vec::with_capacity(tuples(n, p + 1) * s);
    for t in 0..tuples(n, p + 1) {
        let g = split_tuple(n, p + 1, t);
        for c in 0..s {
            let mut row: Vec<(usize, BigInt)> = Vec::new();
            let act = m.element_matrix(g[0]);
            let tail = join_tuple(n, &g[1..]);
            for j in 0..s {
                let a = act.get(c, j);
                if !a.is_zero() {
                    row.push((tail * s + j, a.clone()));
                }
            }
            for i in 1..=p {
                let mut h = g.clone();
                let merged = group.mul(h[i - 1], h[i]);
                h.splice(i - 1..=i, [merged]);
                let sign = if i % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                row.push((join_tuple(n, &h) * s + c, sign));
            }
            let sign = if (p + 1) % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            row.push((join_tuple(n, &g[..p]) * s + c, sign));
            rows.push(merge_row(row));
        }
    }
    rows
}

fn merge_row(mut row: SparseRow) -> SparseRow {
    row.sort_by_key(|(j, _)| *j);
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for (j, a) in row {
        match out.last_mut() {
            Some((k, b)) if *k == j => *b += a,
            _ => out.push((j, a)),
        }
    }
    out.retain(|(_, a)| !a.is_zero());
    out
}

fn check_size(group: &FiniteGroup, m: &GModule, p: usize) -> Result<()> {
    if p > MAX_DEGREE {
        return Err(Error::TooLarge(format!("degree {p} exceeds {MAX_DEGREE}")));
    }
    let size = (group.order() as u128).pow(p as u32 + 1) * m.module.ngens().max(1) as u128;
    if size > MAX_COCHAIN_SIZE as u128 {
        return Err(Error::TooLarge(format!(
            "cochains of size {size} exceed {MAX_COCHAIN_SIZE}"
        )));
    }
    Ok(())
}

/// The bar differential `d^p` as a dense integer matrix (unreduced lift).
pub fn bar_differential(group: &FiniteGroup, m: &GModule, p: usize) -> Result<IntegerMatrix> {
    check_size(group, m, p)?;
    let n = group.order();
    let s = m.module.ngens();
    let rows = differential_rows(group, m, p);
    let mut out = IntegerMatrix::zeros(rows.len(), tuples(n, p) * s);
    for (i, row) in rows.iter().enumerate() {
        for (j, a) in row {
            out.set(i, *j, a.clone());
        }
    }
    Ok(out)
}

/// A `p`-cochain that satisfies the cocycle condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cocycle {
    degree: usize,
    group: FiniteGroup,
    module: GModule,
    /// `values[t]` is the value on the `t`-th tuple of group elements.
    #[serde(serialize_with = "crate::json::serialize_bigint_table")]
    values: Vec<Vec<BigInt>>,
}

impl Cocycle {
    pub fn new(
        degree: usize,
        group: FiniteGroup,
        module: GModule,
        values: Vec<Vec<BigInt>>,
    ) -> Result<Self> {
        check_size(&group, &module, degree)?;
        let s = module.module.ngens();
        if values.len() != tuples(group.order(), degree) || values.iter().any(|v| v.len() != s) {
            return Err(Error::InvalidInput(
                "cochain table has the wrong shape".into(),
            ));
        }
        let values: Vec<Vec<BigInt>> = values.iter().map(|v| module.reduce(v)).collect();
        let flat: Vec<BigInt> = values.iter().flatten().cloned().collect();
        let rows = differential_rows(&group, &module, degree);
        for (i, row) in rows.iter().enumerate() {
            let v: BigInt = row.iter().map(|(j, a)| a * &flat[*j]).sum();
            let d = module.module.modulus(i % s.max(1));
            let ok = if d == 0 {
                v.is_zero()
            } else {
                v.is_multiple_of(&BigInt::from(d))
            };
            if !ok {
                return Err(Error::NotACocycle);
            }
        }
        Ok(Cocycle {
            degree,
            group,
            module,
            values,
        })
    }

    pub fn zero(degree: usize, group: FiniteGroup, module: GModule) -> Result<Self> {
        let s = module.module.ngens();
        let values = vec![vec![BigInt::zero(); s]; tuples(group.order(), degree)];
        Self::new(degree, group, module, values)
    }

    /// A homomorphism `G → A` (a 1-cocycle for the trivial action) from the images
    /// of the generators.
    pub fn from_homomorphism(
        group: FiniteGroup,
        module: GModule,
        images: &[Vec<BigInt>],
    ) -> Result<Self> {
        if images.len() != group.ngens() {
            return Err(Error::InvalidInput(format!(
                "{} generator images expected",
                group.ngens()
            )));
        }
        let s = module.module.ngens();
        let values = (0..group.order())
            .map(|g| {
                let e = group.element(g);
                let mut acc = vec![BigInt::zero(); s];
                for (img, &k) in images.iter().zip(&e) {
                    for (a, x) in acc.iter_mut().zip(img) {
                        *a += x * BigInt::from(k);
                    }
                }
                acc
            })
            .collect();
        Self::new(1, group, module, values)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn values(&self) -> &[Vec<BigInt>] {
        &self.values
    }

    /// The value on a tuple of group-element indices.
    pub fn value(&self, tuple: &[usize]) -> &[BigInt] {
        &self.values[join_tuple(self.group.order(), tuple)]
    }

    fn flat(&self) -> Vec<BigInt> {
        self.values.iter().flatten().cloned().collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.group != other.group || self.module != other.module || self.degree != other.degree {
            return Err(Error::InvalidInput(
                "cocycles live in different complexes".into(),
            ));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Self::new(self.degree, self.group.clone(), self.module.clone(), values)
    }

    pub fn neg(&self) -> Self {
        let values = self
            .values
            .iter()
            .map(|v| {
                self.module
                    .reduce(&v.iter().map(|x| -x).collect::<Vec<_>>())
            })
            .collect();
        Cocycle {
            degree: self.degree,
            group: self.group.clone(),
            module: self.module.clone(),
            values,
        }
    }
}

/// `H^p(G, A)` together with the data to name classes.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    degree: usize,
    group: FiniteGroup,
    module: GModule,
    invariants: FgAbelianGroup,
    /// Echelon basis of the cocycle lattice and its pivot columns.
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    /// `U` from the Smith form of the relation matrix, and the diagonal.
    u: IntegerMatrix,
    diag: Vec<BigInt>,
    /// Smith rows that survive, in the coordinate order of `invariants`.
    factor_rows: Vec<usize>,
    representatives: Vec<Cocycle>,
}

impl CohomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The group itself, as invariant factors.
    pub fn invariants(&self) -> &FgAbelianGroup {
        &self.invariants
    }

    /// One representative cocycle per generator of [`invariants`](Self::invariants).
    pub fn representatives(&self) -> &[Cocycle] {
        &self.representatives
    }

    /// Coordinates of the class of a cocycle, reduced modulo the invariant factors.
    pub fn class_of(&self, z: &Cocycle) -> Result<Vec<BigInt>> {
        if z.degree != self.degree || z.group != self.group || z.module != self.module {
            return Err(Error::InvalidInput(
                "cocycle does not belong to this complex".into(),
            ));
        }
        let coords = lattice_coords(&self.basis, &self.pivots, &z.flat())
            .ok_or_else(|| Error::CrossCheck("cocycle is not in the cocycle lattice".into()))?;
        let ucoords = self.u.mul_vec(&coords);
        Ok(self
            .factor_rows
            .iter()
            .map(|&r| {
                let d = self.diag.get(r).cloned().unwrap_or_default();
                if d.is_zero() {
                    ucoords[r].clone()
                } else {
                    ucoords[r].mod_floor(&d)
                }
            })
            .collect())
    }

    pub fn is_coboundary(&self, z: &Cocycle) -> Result<bool> {
        Ok(self.class_of(z)?.iter().all(Zero::is_zero))
    }
}

fn lattice_coords(basis: &[Vec<BigInt>], pivots: &[usize], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = v.to_vec();
    let mut out = Vec::with_capacity(basis.len());
    for (b, &c) in basis.iter().zip(pivots) {
        let (q, r) = rest[c].div_rem(&b[c]);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (x, y) in rest.iter_mut().zip(b) {
                *x -= &q * y;
            }
        }
        out.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(out)
}

/// `H^p(G, A)` for `p ≤ 3`, as invariant factors with representative cocycles.
pub fn group_cohomology(
    group: &FiniteGroup,
    module: &GModule,
    p: usize,
) -> Result<CohomologyGroup> {
    check_size(group, module, p)?;
    let n = group.order();
    let s = module.module.ngens();
    let dim = tuples(n, p) * s;
    let rows = differential_rows(group, module, p);
    let moduli: Vec<BigInt> = (0..rows.len())
        .map(|i| BigInt::from(module.module.modulus(i % s.max(1))))
        .collect();
    let basis = kernel_mod(dim, &rows, &moduli);
    let pivots: Vec<usize> = basis
        .iter()
        .map(|b| {
            b.iter()
                .position(|x| !x.is_zero())
                .expect("nonzero basis vector")
        })
        .collect();
    // generators of B^p + L^p
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    if p > 0 {
        let prev = differential_rows(group, module, p - 1);
        let pdim = tuples(n, p - 1) * s;
        let mut cols = vec![vec![BigInt::zero(); dim]; pdim];
        for (i, row) in prev.iter().enumerate() {
            for (j, a) in row {
                cols[*j][i] = a.clone();
            }
        }
        gens.extend(cols);
    }
    for i in 0..dim {
        let d = module.module.modulus(i % s.max(1));
        if d != 0 {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(d);
            gens.push(e);
        }
    }
    let m = basis.len();
    let coord_cols: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| {
            lattice_coords(&basis, &pivots, g)
                .ok_or_else(|| Error::CrossCheck("coboundary outside cocycles".into()))
        })
        .collect::<Result<_>>()?;
    let rel = IntegerMatrix::from_columns(m, &coord_cols);
    let snf = smith_normal_form(&rel);
    let mut diag = snf.diagonal();
    diag.resize(m, BigInt::zero());
    let mut free_rows = Vec::new();
    let mut tors_rows = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        if d.is_zero() {
            free_rows.push(i);
        } else if !d.is_one() {
            tors_rows.push(i);
        }
    }
    let torsion: Vec<u64> = tors_rows
        .iter()
        .map(|&i| u64::try_from(&diag[i]).map_err(|_| Error::TooLarge("invariant factor".into())))
        .collect::<Result<_>>()?;
    let invariants = FgAbelianGroup::new(free_rows.len(), torsion)?;
    let factor_rows: Vec<usize> = free_rows.into_iter().chain(tors_rows).collect();
    let representatives = factor_rows
        .iter()
        .map(|&r| {
            let coeffs = snf.u_inv.column(r);
            let mut v = vec![BigInt::zero(); dim];
            for (c, b) in coeffs.iter().zip(&basis) {
                if !c.is_zero() {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x += c * y;
                    }
                }
            }
            let values = v.chunks(s.max(1)).map(|c| c.to_vec()).collect();
            Cocycle::new(p, group.clone(), module.clone(), values)
        })
        .collect::<Result<_>>()?;
    Ok(CohomologyGroup {
        degree: p,
        group: group.clone(),
        module: module.clone(),
        invariants,
        basis,
        pivots,
        u: snf.u,
        diag,
        factor_rows,
        representatives,
    })
}

/// A bilinear map `A × B → C` given by the images of pairs of coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearPairing {
    /// `table[i][j]` is the image of `(e_i, f_j)` in the coordinates of `C`.
    table: Vec<Vec<Vec<BigInt>>>,
}

impl BilinearPairing {
    pub fn new(table: Vec<Vec<Vec<BigInt>>>) -> Self {
        BilinearPairing { table }
    }

    /// Multiplication `Z/a × Z/b → Z/c` on single coordinates.
    pub fn scalar() -> Self {
        BilinearPairing {
            table: vec![vec![vec![BigInt::one()]]],
        }
    }

    pub fn apply(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let s = self
            .table
            .first()
            .and_then(|r| r.first())
            .map_or(0, Vec::len);
        let mut out = vec![BigInt::zero(); s];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    *o += x * y * t;
                }
            }
        }
        out
    }

    fn check(&self, a: &FgAbelianGroup, b: &FgAbelianGroup, c: &FgAbelianGroup) -> Result<()> {
        let bad = || Error::InvalidInput("pairing table does not match the modules".into());
        if self.table.len() != a.ngens() || self.table.iter().any(|r| r.len() != b.ngens()) {
            return Err(bad());
        }
        if self.table.iter().flatten().any(|v| v.len() != c.ngens()) {
            return Err(bad());
        }
        let in_relations = |v: &[BigInt]| {
            v.iter().enumerate().all(|(k, x)| match c.modulus(k) {
                0 => x.is_zero(),
                d => x.is_multiple_of(&BigInt::from(d)),
            })
        };
        for i in 0..a.ngens() {
            for j in 0..b.ngens() {
                let t = &self.table[i][j];
                for d in [a.modulus(i), b.modulus(j)] {
                    let scaled: Vec<BigInt> = t.iter().map(|x| x * BigInt::from(d)).collect();
                    if d != 0 && !in_relations(&scaled) {
                        return Err(Error::InvalidInput(
                            "pairing does not respect torsion".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `(u ∪ v)(g, h) = pairing(u(g), g·v(h))`.
pub fn cup_product(
    u: &Cocycle,
    v: &Cocycle,
    pairing: &BilinearPairing,
    target: &GModule,
) -> Result<Cocycle> {
    if u.degree != 1 || v.degree != 1 {
        return Err(Error::InvalidInput(
            "cup product is implemented for degree-1 cocycles".into(),
        ));
    }
    if u.group != v.group {
        return Err(Error::InvalidInput("cocycles over different groups".into()));
    }
    pairing.check(&u.module.module, &v.module.module, &target.module)?;
    let group = u.group.clone();
    let n = group.order();
    let mut values = Vec::with_capacity(n * n);
    for g in 0..n {
        for h in 0..n {
            let moved = v.module.element_matrix(g).mul_vec(v.value(&[h]));
            values.push(pairing.apply(u.value(&[g]), &moved));
        }
    }
    Cocycle::new(2, group, target.clone(), values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivial(k: u64, n: u64) -> (FiniteGroup, GModule) {
        let g = FiniteGroup::cyclic(k).unwrap();
        let m = GModule::trivial(&g, FgAbelianGroup::cyclic(n));
        (g, m)
    }

    fn h(k: u64, n: u64, p: usize) -> FgAbelianGroup {
        let (g, m) = trivial(k, n);
        group_cohomology(&g, &m, p).unwrap().invariants().clone()
    }

    #[test]
    fn cyclic_groups() {
        assert_eq!(h(3, 4, 0), FgAbelianGroup::cyclic(4));
        assert!(h(2, 0, 1).is_trivial());
        assert_eq!(h(2, 0, 2), FgAbelianGroup::cyclic(2));
        for (k, n) in [(2, 4), (6, 4), (3, 5)] {
            let d = num_integer::gcd(k, n);
            assert_eq!(h(k, n, 1), FgAbelianGroup::cyclic(d));
            assert_eq!(h(k, n, 2), FgAbelianGroup::cyclic(d));
        }
        assert_eq!(h(2, 2, 3), FgAbelianGroup::cyclic(2));
    }

    #[test]
    fn differentials_compose_to_zero() {
        let g = FiniteGroup::new(vec![2, 2]).unwrap();
        let m = GModule::trivial(&g, FgAbelianGroup::free(1));
        for p in 0..2 {
            let d0 = bar_differential(&g, &m, p).unwrap();
            let d1 = bar_differential(&g, &m, p + 1).unwrap();
            assert!(d1.mul(&d0).unwrap().is_zero());
        }
    }

    #[test]
    fn sign_action() {
        // Z/2 acting on Z by -1: H^1 = Z/2, H^2 = 0
        let g = FiniteGroup::cyclic(2).unwrap();
        let act = vec![IntegerMatrix::from_rows(&[vec![-1]]).unwrap()];
        let m = GModule::new(&g, FgAbelianGroup::free(1), act).unwrap();
        assert_eq!(
            group_cohomology(&g, &m, 0).unwrap().invariants(),
            &FgAbelianGroup::trivial()
        );
        assert_eq!(
            group_cohomology(&g, &m, 1).unwrap().invariants(),
            &FgAbelianGroup::cyclic(2)
        );
        assert!(group_cohomology(&g, &m, 2)
            .unwrap()
            .invariants()
            .is_trivial());
    }

    #[test]
    fn invalid_actions() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let act = vec![IntegerMatrix::from_rows(&[vec![2]]).unwrap()];
        assert!(matches!(
            GModule::new(&g, FgAbelianGroup::free(1), act),
            Err(Error::InvalidAction(_))
        ));
        let g2 = FiniteGroup::new(vec![2, 2]).unwrap();
        let a = IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        let b = IntegerMatrix::from_rows(&[vec![1, 0], vec![0, -1]]).unwrap();
        assert!(matches!(
            GModule::new(&g2, FgAbelianGroup::free(2), vec![a, b]),
            Err(Error::InvalidAction(_))
        ));
    }

    #[test]
    fn representatives_and_classes() {
        let (g, m) = trivial(4, 6);
        let h2 = group_cohomology(&g, &m, 2).unwrap();
        assert_eq!(h2.invariants(), &FgAbelianGroup::cyclic(2));
        let rep = &h2.representatives()[0];
        assert_eq!(h2.class_of(rep).unwrap(), vec![BigInt::one()]);
        let twice = rep.add(rep).unwrap();
        assert!(h2.is_coboundary(&twice).unwrap());
        let mut bad = vec![vec![BigInt::zero()]; 16];
        bad[5] = vec![BigInt::one()];
        assert!(matches!(
            Cocycle::new(2, g, m, bad),
            Err(Error::NotACocycle)
        ));
    }

    #[test]
    fn cup_squares() {
        let (g, m) = trivial(2, 2);
        let u = Cocycle::from_homomorphism(g.clone(), m.clone(), &[vec![BigInt::one()]]).unwrap();
        let sq = cup_product(&u, &u, &BilinearPairing::scalar(), &m).unwrap();
        let h2 = group_cohomology(&g, &m, 2).unwrap();
        assert_eq!(h2.class_of(&sq).unwrap(), vec![BigInt::one()]);
        let zero = Cocycle::zero(1, g.clone(), m.clone()).unwrap();
        let z = cup_product(&zero, &u, &BilinearPairing::scalar(), &m).unwrap();
        assert!(z.values().iter().flatten().all(Zero::is_zero));
    }

    #[test]
    fn size_limits() {
        let (g, m) = trivial(8, 2);
        assert!(matches!(
            group_cohomology(&g, &m, 4),
            Err(Error::TooLarge(_))
        ));
        assert!(matches!(
            FiniteGroup::new(vec![8, 9]),
            Err(Error::TooLarge(_))
        ));
    }
}
