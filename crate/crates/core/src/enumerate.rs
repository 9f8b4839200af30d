//! Exhaustive generation of the semigroups of a given small order, up to
//! isomorphism or up to isomorphism-and-anti-isomorphism.
//!
//! The search fills the n-by-n table cell by cell in row-major order and
//! prunes a partial table as soon as some fully determined triple violates
//! associativity. Completed tables are deduplicated by canonical key; the
//! key set is the only thing retained, so memory stays at about 2000 keys
//! at order 5 (plus per-worker search state).

use crate::error::AlgebraError;
use crate::semigroup::{key_to_hex, CanonicalMode, Semigroup};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashSet;

pub const DEFAULT_MAX_ORDER: usize = 5;
const HARD_MAX_ORDER: usize = 6;
pub const MAX_ORDER_ENV: &str = "SGFORGE_MAX_ORDER";

/// The enumeration cap: `SGFORGE_MAX_ORDER` when set, else 5. Values above
/// 6 are clamped (the search space cliff is steep).
pub fn configured_max_order() -> usize {
    std::env::var(MAX_ORDER_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
        .min(HARD_MAX_ORDER)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnumerationCounts {
    pub labeled: u64,
    pub up_to_iso: usize,
    pub up_to_equivalence: usize,
}

#[derive(Debug, Clone)]
pub struct EnumerationResult {
    pub order: usize,
    pub mode: CanonicalMode,
    /// Key-minimal representatives in the requested mode, sorted by key.
    pub classes: Vec<Semigroup>,
    pub counts: EnumerationCounts,
}

impl EnumerationResult {
    pub fn keys_hex(&self) -> Vec<String> {
        self.classes
            .iter()
            .map(|s| key_to_hex(&s.canonical_key(self.mode)))
            .collect()
    }
}

/// Enumerates all semigroups of the given order up to the requested
/// equivalence. Deterministic regardless of worker count.
pub fn enumerate_semigroups(
    order: usize,
    mode: CanonicalMode,
) -> Result<EnumerationResult, AlgebraError> {
    let cap = configured_max_order();
    if order == 0 || order > cap {
        return Err(AlgebraError::OrderTooLarge { order, cap });
    }
    let (labeled, iso_keys) = search_all(order);

    let mut iso_sorted: Vec<Vec<u8>> = iso_keys.into_iter().collect();
    iso_sorted.sort_unstable();
    let up_to_iso = iso_sorted.len();

    let mut class_keys: Vec<Vec<u8>> = match mode {
        CanonicalMode::Iso => iso_sorted,
        CanonicalMode::IsoAntiIso => {
            let mut equiv: Vec<Vec<u8>> = iso_sorted
                .iter()
                .map(|k| {
                    let s = Semigroup::from_canonical_key(order, k).expect("canonical key");
                    s.canonical_key(CanonicalMode::IsoAntiIso)
                })
                .collect();
            equiv.sort_unstable();
            equiv.dedup();
            equiv
        }
    };
    class_keys.dedup();
    let up_to_equivalence = match mode {
        CanonicalMode::IsoAntiIso => class_keys.len(),
        CanonicalMode::Iso => {
            let mut equiv: Vec<Vec<u8>> = class_keys
                .iter()
                .map(|k| {
                    let s = Semigroup::from_canonical_key(order, k).expect("canonical key");
                    s.canonical_key(CanonicalMode::IsoAntiIso)
                })
                .collect();
            equiv.sort_unstable();
            equiv.dedup();
            equiv.len()
        }
    };

    let classes: Vec<Semigroup> = class_keys
        .iter()
        .map(|k| Semigroup::from_canonical_key(order, k).expect("canonical key"))
        .collect();
    Ok(EnumerationResult {
        order,
        mode,
        counts: EnumerationCounts {
            labeled,
            up_to_iso,
            up_to_equivalence,
        },
        classes,
    })
}

/// Runs the table search, returning the number of completed (labeled)
/// tables and the set of iso-canonical keys.
fn search_all(order: usize) -> (u64, HashSet<Vec<u8>>) {
    if order == 1 {
        return (1, HashSet::from([vec![0u8]]));
    }
    // partition the search by the first row
    let prefixes: Vec<Vec<u8>> = (0..order.pow(order as u32))
        .map(|mut c| {
            let mut row = vec![0u8; order];
            for j in (0..order).rev() {
                row[j] = (c % order) as u8;
                c /= order;
            }
            row
        })
        .collect();

    let results: Vec<(u64, HashSet<Vec<u8>>)> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut table = vec![u8::MAX; order * order];
            let mut state = SearchState {
                labeled: 0,
                keys: HashSet::new(),
            };
            let mut ok = true;
            for (j, &v) in prefix.iter().enumerate() {
                table[j] = v;
                if !check_cell(&table, order, 0, j) {
                    ok = false;
                    break;
                }
            }
            if ok {
                fill(&mut table, order, order, &mut state);
            }
            (state.labeled, state.keys)
        })
        .collect();

    let mut labeled = 0u64;
    let mut keys = HashSet::new();
    for (l, k) in results {
        labeled += l;
        keys.extend(k);
    }
    (labeled, keys)
}

struct SearchState {
    labeled: u64,
    keys: HashSet<Vec<u8>>,
}

fn fill(table: &mut [u8], n: usize, cell: usize, state: &mut SearchState) {
    if cell == n * n {
        state.labeled += 1;
        let key = canonical_key_fast(table, n);
        state.keys.insert(key);
        return;
    }
    let (i, j) = (cell / n, cell % n);
    for v in 0..n as u8 {
        table[cell] = v;
        if check_cell(table, n, i, j) {
            fill(table, n, cell + 1, state);
        }
    }
    table[cell] = u8::MAX;
}

/// Checks every associativity triple that the just-assigned cell `(i, j)`
/// could complete. A triple `(a, b, c)` is testable once `ab`, `bc`,
/// `(ab)c`, and `a(bc)` are all assigned.
fn check_cell(table: &[u8], n: usize, i: usize, j: usize) -> bool {
    let get = |a: usize, b: usize| table[a * n + b];
    let check = |a: usize, b: usize, c: usize| -> bool {
        let ab = get(a, b);
        if ab == u8::MAX {
            return true;
        }
        let bc = get(b, c);
        if bc == u8::MAX {
            return true;
        }
        let left = get(ab as usize, c);
        let right = get(a, bc as usize);
        left == u8::MAX || right == u8::MAX || left == right
    };
    // (i, j) as the pair (a, b)
    for c in 0..n {
        if !check(i, j, c) {
            return false;
        }
    }
    // (i, j) as the pair (b, c)
    for a in 0..n {
        if !check(a, i, j) {
            return false;
        }
    }
    // (i, j) as ((ab), c): scan pairs with value ab = i
    for a in 0..n {
        for b in 0..n {
            if get(a, b) == i as u8 && !check(a, b, j) {
                return false;
            }
        }
    }
    // (i, j) as (a, (bc)): scan pairs with value bc = j
    for b in 0..n {
        for c in 0..n {
            if get(b, c) == j as u8 && !check(i, b, c) {
                return false;
            }
        }
    }
    true
}

/// Canonical key of a completed table, by direct permutation minimization.
fn canonical_key_fast(table: &[u8], n: usize) -> Vec<u8> {
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            table[i * n..(i + 1) * n]
                .iter()
                .map(|&b| b as usize)
                .collect()
        })
        .collect();
    let s = Semigroup::from_rows(&rows).expect("search output is associative");
    s.canonical_key(CanonicalMode::Iso)
}
