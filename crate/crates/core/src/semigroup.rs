//! Finite semigroups as validated multiplication tables.
//!
//! Elements are `0..n-1`; `table[i][j]` is the product of `i` (left factor)
//! and `j` (right factor). All values are immutable after validation, so
//! every operation here is a pure function.

use crate::error::AlgebraError;
use serde::{Deserialize, Serialize};

/// Largest order accepted by table constructors.
pub const MAX_TABLE_ORDER: usize = 4096;

/// Largest order for which the factorial canonical-form search is attempted.
pub const MAX_CANONICAL_ORDER: usize = 8;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "SemigroupRepr", into = "SemigroupRepr")]
pub struct Semigroup {
    order: usize,
    table: Vec<usize>, // row-major, length order^2
    name: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct SemigroupRepr {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

impl TryFrom<SemigroupRepr> for Semigroup {
    type Error = AlgebraError;
    fn try_from(repr: SemigroupRepr) -> Result<Self, AlgebraError> {
        if repr.table.len() != repr.order {
            return Err(AlgebraError::NotSquare {
                row: 0,
                len: repr.table.len(),
                expected: repr.order,
            });
        }
        let s = Semigroup::from_rows(&repr.table)?;
        Ok(match repr.name {
            Some(name) => s.with_name(name),
            None => s,
        })
    }
}

impl From<Semigroup> for SemigroupRepr {
    fn from(s: Semigroup) -> Self {
        SemigroupRepr {
            order: s.order,
            table: s.rows(),
            name: s.name,
        }
    }
}

impl PartialEq for Semigroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}
impl Eq for Semigroup {}

impl Semigroup {
    /// Validates closure and associativity of a square table.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, AlgebraError> {
        let n = rows.len();
        if n == 0 || n > MAX_TABLE_ORDER {
            return Err(AlgebraError::OrderTooLarge {
                order: n,
                cap: MAX_TABLE_ORDER,
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(AlgebraError::NotSquare {
                    row: i,
                    len: row.len(),
                    expected: n,
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(AlgebraError::NotClosed {
                        row: i,
                        col: j,
                        value: v,
                        order: n,
                    });
                }
                table.push(v);
            }
        }
        let s = Semigroup {
            order: n,
            table,
            name: None,
        };
        s.check_associative()?;
        Ok(s)
    }

    /// Builds from a flat row-major table without re-validation.
    ///
    /// Callers must guarantee closure and associativity; debug builds recheck.
    pub(crate) fn from_flat_unchecked(order: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let s = Semigroup {
            order,
            table,
            name: None,
        };
        debug_assert!(s.check_associative().is_ok());
        s
    }

    fn check_associative(&self) -> Result<(), AlgebraError> {
        let n = self.order;
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(i, j);
                for k in 0..n {
                    let left = self.mul(ij, k);
                    let right = self.mul(i, self.mul(j, k));
                    if left != right {
                        return Err(AlgebraError::NotAssociative {
                            i,
                            j,
                            k,
                            left,
                            right,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial() -> Self {
        Semigroup {
            order: 1,
            table: vec![0],
            name: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| self.table[i * self.order..(i + 1) * self.order].to_vec())
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    /// Direct product; element `(i, j)` is encoded as `i * |T| + j`.
    pub fn product(&self, other: &Semigroup) -> Semigroup {
        let n = self.order * other.order;
        let mut table = vec![0usize; n * n];
        for a1 in 0..self.order {
            for a2 in 0..other.order {
                let a = a1 * other.order + a2;
                for b1 in 0..self.order {
                    for b2 in 0..other.order {
                        let b = b1 * other.order + b2;
                        table[a * n + b] = self.mul(a1, b1) * other.order + other.mul(a2, b2);
                    }
                }
            }
        }
        Semigroup::from_flat_unchecked(n, table)
    }

    /// Reverses the multiplication. An involution.
    pub fn opposite(&self) -> Semigroup {
        let n = self.order;
        let mut table = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = self.mul(j, i);
            }
        }
        Semigroup::from_flat_unchecked(n, table)
    }

    pub fn identity(&self) -> Option<usize> {
        (0..self.order)
            .find(|&u| (0..self.order).all(|x| self.mul(u, x) == x && self.mul(x, u) == x))
    }

    pub fn is_monoid(&self) -> bool {
        self.identity().is_some()
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.order).filter(|&x| self.mul(x, x) == x).collect()
    }

    /// Adjoins an external identity as the new last element.
    ///
    /// `AdjoinMode::Bullet` returns the semigroup itself when it already is a
    /// monoid.
    pub fn adjoin_identity(&self, mode: AdjoinMode) -> Semigroup {
        if mode == AdjoinMode::Bullet && self.is_monoid() {
            return self.clone();
        }
        let n = self.order + 1;
        let id = self.order;
        let mut table = vec![0usize; n * n];
        for i in 0..self.order {
            for j in 0..self.order {
                table[i * n + j] = self.mul(i, j);
            }
        }
        for x in 0..n {
            table[id * n + x] = x;
            table[x * n + id] = x;
        }
        Semigroup::from_flat_unchecked(n, table)
    }

    /// Smallest multiplicatively closed superset of `seed`.
    pub fn closure(&self, seed: &[usize]) -> Result<Vec<usize>, AlgebraError> {
        if seed.is_empty() {
            return Err(AlgebraError::EmptySeed);
        }
        let mut in_set = vec![false; self.order];
        let mut worklist: Vec<usize> = Vec::new();
        for &x in seed {
            if x >= self.order {
                return Err(AlgebraError::BadElement(x));
            }
            if !in_set[x] {
                in_set[x] = true;
                worklist.push(x);
            }
        }
        let mut members = worklist.clone();
        while let Some(x) = worklist.pop() {
            for idx in 0..members.len() {
                let y = members[idx];
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if !in_set[p] {
                        in_set[p] = true;
                        members.push(p);
                        worklist.push(p);
                    }
                }
            }
        }
        members.sort_unstable();
        Ok(members)
    }

    /// Induced subsemigroup on a closed element set.
    ///
    /// Returns the new semigroup plus the list mapping new indices back to
    /// elements of `self`.
    pub fn subsemigroup(&self, elements: &[usize]) -> (Semigroup, Vec<usize>) {
        let mut elems = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let mut index_of = vec![usize::MAX; self.order];
        for (i, &x) in elems.iter().enumerate() {
            index_of[x] = i;
        }
        let m = elems.len();
        let mut table = vec![0usize; m * m];
        for (i, &x) in elems.iter().enumerate() {
            for (j, &y) in elems.iter().enumerate() {
                let p = index_of[self.mul(x, y)];
                assert!(p != usize::MAX, "element set is not closed");
                table[i * m + j] = p;
            }
        }
        (Semigroup::from_flat_unchecked(m, table), elems)
    }

    /// Collapses a two-sided ideal to a single zero element (new index 0).
    pub fn rees_quotient(&self, ideal: &[usize]) -> Result<Semigroup, AlgebraError> {
        if ideal.is_empty() {
            return Err(AlgebraError::EmptySeed);
        }
        let mut in_ideal = vec![false; self.order];
        for &x in ideal {
            if x >= self.order {
                return Err(AlgebraError::BadElement(x));
            }
            in_ideal[x] = true;
        }
        for x in 0..self.order {
            for i in 0..self.order {
                if in_ideal[i] {
                    for p in [(x, i), (i, x)] {
                        let v = self.mul(p.0, p.1);
                        if !in_ideal[v] {
                            return Err(AlgebraError::NotAnIdeal {
                                left: p.0,
                                right: p.1,
                                product: v,
                            });
                        }
                    }
                }
            }
        }
        // index 0 is the collapsed zero; survivors keep their relative order
        let mut new_index = vec![0usize; self.order];
        let mut next = 1;
        for x in 0..self.order {
            if !in_ideal[x] {
                new_index[x] = next;
                next += 1;
            }
        }
        let n = next;
        let mut table = vec![0usize; n * n];
        let survivors: Vec<usize> = (0..self.order).filter(|&x| !in_ideal[x]).collect();
        for &x in &survivors {
            for &y in &survivors {
                let p = self.mul(x, y);
                table[new_index[x] * n + new_index[y]] = if in_ideal[p] { 0 } else { new_index[p] };
            }
        }
        Ok(Semigroup::from_flat_unchecked(n, table))
    }

    /// `x^k` for `k >= 1`.
    pub fn power(&self, x: usize, k: usize) -> usize {
        assert!(k >= 1, "power exponent must be positive");
        let mut acc = x;
        for _ in 1..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// Index and period of the monogenic subsemigroup generated by `x`:
    /// the powers `x^1, .., x^{index+period-1}` are pairwise distinct and
    /// `x^{index+period} = x^{index}`.
    pub fn index_period(&self, x: usize) -> (usize, usize) {
        let mut first_seen = vec![usize::MAX; self.order];
        let mut p = x;
        let mut exp = 1usize;
        loop {
            if first_seen[p] != usize::MAX {
                let index = first_seen[p];
                return (index, exp - index);
            }
            first_seen[p] = exp;
            p = self.mul(p, x);
            exp += 1;
        }
    }

    /// The unique idempotent in the monogenic subsemigroup generated by `x`.
    pub fn omega_power(&self, x: usize) -> usize {
        let (index, period) = self.index_period(x);
        let mut m = period * index.div_ceil(period);
        if m == 0 {
            m = period;
        }
        self.power(x, m)
    }

    /// Relabels elements; `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> Semigroup {
        let n = self.order;
        assert_eq!(perm.len(), n);
        let mut table = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                table[perm[i] * n + perm[j]] = perm[self.mul(i, j)];
            }
        }
        Semigroup::from_flat_unchecked(n, table)
    }

    /// Canonical key: lexicographic minimum of the flattened table over all
    /// relabelings. Keys are equal exactly when the semigroups are isomorphic
    /// (mode `Iso`) or isomorphic-or-anti-isomorphic (mode `IsoAntiIso`).
    pub fn canonical_key(&self, mode: CanonicalMode) -> Vec<u8> {
        assert!(
            self.order <= MAX_CANONICAL_ORDER,
            "canonical key is a factorial search, order {} exceeds {}",
            self.order,
            MAX_CANONICAL_ORDER
        );
        let key = min_key_over_perms(self.order, |i, j| self.mul(i, j));
        match mode {
            CanonicalMode::Iso => key,
            CanonicalMode::IsoAntiIso => {
                let op = min_key_over_perms(self.order, |i, j| self.mul(j, i));
                key.min(op)
            }
        }
    }

    /// Rebuilds the key-minimal representative from a canonical key.
    pub fn from_canonical_key(order: usize, key: &[u8]) -> Result<Semigroup, AlgebraError> {
        let rows: Vec<Vec<usize>> = (0..order)
            .map(|i| {
                key[i * order..(i + 1) * order]
                    .iter()
                    .map(|&b| b as usize)
                    .collect()
            })
            .collect();
        Semigroup::from_rows(&rows)
    }

    pub fn is_isomorphic(&self, other: &Semigroup) -> bool {
        self.order == other.order
            && self.canonical_key(CanonicalMode::Iso) == other.canonical_key(CanonicalMode::Iso)
    }

    pub fn is_equivalent(&self, other: &Semigroup) -> bool {
        self.order == other.order
            && self.canonical_key(CanonicalMode::IsoAntiIso)
                == other.canonical_key(CanonicalMode::IsoAntiIso)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdjoinMode {
    /// Always adjoin a fresh identity.
    Always,
    /// Adjoin only when the semigroup is not already a monoid.
    Bullet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CanonicalMode {
    Iso,
    #[serde(rename = "equiv")]
    IsoAntiIso,
}

pub fn key_to_hex(key: &[u8]) -> String {
    let mut s = String::with_capacity(key.len() * 2);
    for b in key {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

fn min_key_over_perms(n: usize, mul: impl Fn(usize, usize) -> usize) -> Vec<u8> {
    let mut best: Option<Vec<u8>> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut inv = vec![0usize; n];
    permute(&mut perm, 0, &mut |perm| {
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        match &mut best {
            None => {
                let mut key = vec![0u8; n * n];
                for i in 0..n {
                    for j in 0..n {
                        key[i * n + j] = perm[mul(inv[i], inv[j])] as u8;
                    }
                }
                best = Some(key);
            }
            Some(best_key) => {
                // lexicographic comparison with early abort
                let mut better = false;
                'outer: for i in 0..n {
                    for j in 0..n {
                        let v = perm[mul(inv[i], inv[j])] as u8;
                        let b = best_key[i * n + j];
                        if v > b {
                            return;
                        }
                        if v < b {
                            better = true;
                            break 'outer;
                        }
                    }
                }
                if better {
                    for i in 0..n {
                        for j in 0..n {
                            best_key[i * n + j] = perm[mul(inv[i], inv[j])] as u8;
                        }
                    }
                }
            }
        }
    });
    best.unwrap()
}

fn permute(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn validates_b2_table() {
        let b2 = catalog::build_named("B2").unwrap();
        assert_eq!(b2.order(), 5);
        // aba = a with a = index 1, b = index 4
        assert_eq!(b2.mul(b2.mul(1, 4), 1), 1);
    }

    #[test]
    fn order_one_table_is_valid() {
        assert!(Semigroup::from_rows(&[vec![0]]).is_ok());
    }

    #[test]
    fn rejects_non_associative_table() {
        // first violating triple in scan order: (0*0)*1 = 0 but 0*(0*1) = 1
        let err = Semigroup::from_rows(&[vec![1, 0], vec![0, 0]]).unwrap_err();
        assert_eq!(
            err,
            AlgebraError::NotAssociative {
                i: 0,
                j: 0,
                k: 1,
                left: 0,
                right: 1
            }
        );
    }

    #[test]
    fn rejects_out_of_range_entry() {
        let err = Semigroup::from_rows(&[vec![0, 2], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, AlgebraError::NotClosed { value: 2, .. }));
    }

    #[test]
    fn product_of_z2_and_z3_is_z6() {
        let z2 = catalog::build_named("Z2").unwrap();
        let z3 = catalog::build_named("Z3").unwrap();
        let z6 = catalog::build_named("Z6").unwrap();
        assert_eq!(
            z2.product(&z3).canonical_key(CanonicalMode::Iso),
            z6.canonical_key(CanonicalMode::Iso)
        );
    }

    #[test]
    fn product_with_trivial_is_identity() {
        let s = catalog::build_named("A0").unwrap();
        assert!(s.product(&Semigroup::trivial()).is_isomorphic(&s));
    }

    #[test]
    fn opposite_is_involution() {
        for name in ["B2", "A0", "l3", "W", "Z6"] {
            let s = catalog::build_named(name).unwrap();
            assert_eq!(s.opposite().opposite(), s);
        }
    }

    #[test]
    fn opposite_of_commutative_is_itself() {
        let z6 = catalog::build_named("Z6").unwrap();
        assert_eq!(z6.opposite(), z6);
    }

    #[test]
    fn adjoin_identity_modes() {
        let n1 = catalog::build_named("N1").unwrap();
        let sl2 = catalog::build_named("Sl2").unwrap();
        assert!(n1.adjoin_identity(AdjoinMode::Always).is_isomorphic(&sl2));
        let z2 = catalog::build_named("Z2").unwrap();
        assert_eq!(z2.adjoin_identity(AdjoinMode::Bullet), z2);
        let l2 = catalog::build_named("L2").unwrap();
        assert_eq!(l2.adjoin_identity(AdjoinMode::Bullet).order(), 3);
    }

    #[test]
    fn closure_examples() {
        let b2 = catalog::build_named("B2").unwrap();
        // a = 1, b = 4 generate everything
        assert_eq!(b2.closure(&[1, 4]).unwrap(), vec![0, 1, 2, 3, 4]);
        let a0 = catalog::build_named("A0").unwrap();
        // e = 3 is idempotent; fe = 1 squares to zero
        assert_eq!(a0.closure(&[3]).unwrap(), vec![3]);
        assert_eq!(a0.closure(&[1]).unwrap(), vec![0, 1]);
    }

    #[test]
    fn rees_quotient_examples() {
        let n3 = catalog::build_named("N3").unwrap();
        // ideal {0, a^2}
        let q = n3.rees_quotient(&[0, 2]).unwrap();
        let n2 = catalog::build_named("N2").unwrap();
        assert!(q.is_isomorphic(&n2));
        let s = catalog::build_named("B2").unwrap();
        let all: Vec<usize> = (0..s.order()).collect();
        assert_eq!(s.rees_quotient(&all).unwrap().order(), 1);
        let err = s.rees_quotient(&[1]).unwrap_err();
        assert!(matches!(err, AlgebraError::NotAnIdeal { .. }));
    }

    #[test]
    fn omega_power_examples() {
        let n3 = catalog::build_named("N3").unwrap();
        assert_eq!(n3.omega_power(1), 0); // a^3 = 0
        let z6 = catalog::build_named("Z6").unwrap();
        assert_eq!(z6.omega_power(1), 0); // g^6 = 1 at index 0
        let a0 = catalog::build_named("A0").unwrap();
        assert_eq!(a0.omega_power(1), 0); // (fe)^2 = 0
    }

    #[test]
    fn index_period_on_groups_and_nilpotents() {
        let z6 = catalog::build_named("Z6").unwrap();
        assert_eq!(z6.index_period(1), (1, 6));
        let n3 = catalog::build_named("N3").unwrap();
        assert_eq!(n3.index_period(1), (3, 1));
    }

    #[test]
    fn canonical_key_separates_l2_r2_under_iso_only() {
        let l2 = catalog::build_named("L2").unwrap();
        let r2 = catalog::build_named("R2").unwrap();
        assert_ne!(
            l2.canonical_key(CanonicalMode::Iso),
            r2.canonical_key(CanonicalMode::Iso)
        );
        assert_eq!(
            l2.canonical_key(CanonicalMode::IsoAntiIso),
            r2.canonical_key(CanonicalMode::IsoAntiIso)
        );
    }

    #[test]
    fn canonical_key_is_relabeling_invariant() {
        let z2 = catalog::build_named("Z2").unwrap();
        let relabeled = z2.relabel(&[1, 0]);
        assert_eq!(
            relabeled.canonical_key(CanonicalMode::Iso),
            z2.canonical_key(CanonicalMode::Iso)
        );
    }
}
