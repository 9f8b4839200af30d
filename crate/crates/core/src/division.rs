//! Division of finite semigroups: `S` divides `T` when `S` is a homomorphic
//! image of a subsemigroup of `T`.

use crate::semigroup::Semigroup;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

#[derive(Debug, Clone, Copy)]
pub struct DivisionConfig {
    /// Up to this order of `T` the search is exhaustive and `No` is a proof.
    pub exact_bound: usize,
    /// Generator-tuple cap in heuristic mode.
    pub max_generators: usize,
}

impl Default for DivisionConfig {
    fn default() -> Self {
        DivisionConfig {
            exact_bound: 20,
            max_generators: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum DivisionVerdict {
    Yes { witness: DivisionWitness },
    No,
    Inconclusive,
}

impl DivisionVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, DivisionVerdict::Yes { .. })
    }
}

/// Witness for `S < T`: generators of a subsemigroup `U` of `T` and the
/// surjection `U -> S`, stored element-by-element along `subsemigroup`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisionWitness {
    pub generators: Vec<usize>,
    pub subsemigroup: Vec<usize>,
    pub map: Vec<usize>,
}

impl DivisionWitness {
    /// Re-checks that the witness proves the division.
    pub fn replays(&self, s: &Semigroup, t: &Semigroup) -> bool {
        let Ok(closure) = t.closure(&self.generators) else {
            return false;
        };
        if closure != self.subsemigroup || self.map.len() != self.subsemigroup.len() {
            return false;
        }
        let index_of = |x: usize| self.subsemigroup.binary_search(&x).ok();
        for (i, &x) in self.subsemigroup.iter().enumerate() {
            for (j, &y) in self.subsemigroup.iter().enumerate() {
                let Some(p) = index_of(t.mul(x, y)) else {
                    return false;
                };
                if s.mul(self.map[i], self.map[j]) != self.map[p] {
                    return false;
                }
            }
        }
        let image: HashSet<usize> = self.map.iter().copied().collect();
        image.len() == s.order()
    }
}

/// Smallest size of a generating set of `s`.
pub fn min_generating_size(s: &Semigroup) -> usize {
    let n = s.order();
    for k in 1..=n {
        let mut found = false;
        combinations(n, k, &mut |combo| {
            if found {
                return;
            }
            if s.closure(combo).map(|c| c.len()) == Ok(n) {
                found = true;
            }
        });
        if found {
            return k;
        }
    }
    n
}

/// Decides `S < T` within the configured search limits.
///
/// Exact mode (`|T| <= exact_bound`) enumerates every subsemigroup generated
/// by at most `min_generating_size(S)` elements, which suffices for
/// completeness, so `No` is a definite answer there. Heuristic mode caps
/// generator tuples and answers `Inconclusive` when the bound is exhausted.
pub fn divides(s: &Semigroup, t: &Semigroup, cfg: &DivisionConfig) -> DivisionVerdict {
    if s.order() == 1 {
        let u = t.closure(&[0]).unwrap();
        return DivisionVerdict::Yes {
            witness: DivisionWitness {
                generators: vec![0],
                map: vec![0; u.len()],
                subsemigroup: u,
            },
        };
    }
    let exact = t.order() <= cfg.exact_bound;
    let gen_cap = if exact {
        min_generating_size(s).min(t.order())
    } else {
        cfg.max_generators.min(t.order())
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut verdict: Option<DivisionVerdict> = None;
    for k in 1..=gen_cap {
        combinations(t.order(), k, &mut |combo| {
            if verdict.is_some() {
                return;
            }
            let u = t.closure(combo).unwrap();
            if u.len() < s.order() || !seen.insert(u.clone()) {
                return;
            }
            if let Some(map) = find_surjection(t, &u, combo, s) {
                verdict = Some(DivisionVerdict::Yes {
                    witness: DivisionWitness {
                        generators: combo.to_vec(),
                        subsemigroup: u,
                        map,
                    },
                });
            }
        });
        if verdict.is_some() {
            break;
        }
    }
    verdict.unwrap_or(if exact {
        DivisionVerdict::No
    } else {
        DivisionVerdict::Inconclusive
    })
}

/// Searches for a surjective homomorphism from the subsemigroup of `t` on
/// `u_elems` (generated by `gens`) onto `s`. Returns the image of each
/// element of `u_elems` in order.
fn find_surjection(
    t: &Semigroup,
    u_elems: &[usize],
    gens: &[usize],
    s: &Semigroup,
) -> Option<Vec<usize>> {
    let m = u_elems.len();
    let index_of = |x: usize| u_elems.binary_search(&x).unwrap();
    // local multiplication table of U
    let mut mul = vec![0usize; m * m];
    for i in 0..m {
        for j in 0..m {
            mul[i * m + j] = index_of(t.mul(u_elems[i], u_elems[j]));
        }
    }
    let gen_idx: Vec<usize> = gens.iter().map(|&g| index_of(g)).collect();
    let mut img = vec![usize::MAX; m];
    dfs_assign(&mul, m, &gen_idx, 0, &mut img, s)
}

fn dfs_assign(
    mul: &[usize],
    m: usize,
    gens: &[usize],
    next: usize,
    img: &mut [usize],
    s: &Semigroup,
) -> Option<Vec<usize>> {
    if next == gens.len() {
        // U = <gens>, so propagation has determined every image by now
        debug_assert!(img.iter().all(|&v| v != usize::MAX));
        let image: HashSet<usize> = img.iter().copied().collect();
        if image.len() == s.order() {
            return Some(img.to_vec());
        }
        return None;
    }
    let g = gens[next];
    let saved: Vec<usize> = img.to_vec();
    for target in 0..s.order() {
        if saved[g] != usize::MAX && saved[g] != target {
            continue;
        }
        img.copy_from_slice(&saved);
        img[g] = target;
        if propagate(mul, m, img, s) {
            if let Some(found) = dfs_assign(mul, m, gens, next + 1, img, s) {
                return Some(found);
            }
        }
    }
    img.copy_from_slice(&saved);
    None
}

/// Closes the partial map under products; false on conflict.
fn propagate(mul: &[usize], m: usize, img: &mut [usize], s: &Semigroup) -> bool {
    loop {
        let mut changed = false;
        for i in 0..m {
            if img[i] == usize::MAX {
                continue;
            }
            for j in 0..m {
                if img[j] == usize::MAX {
                    continue;
                }
                let p = mul[i * m + j];
                let want = s.mul(img[i], img[j]);
                if img[p] == usize::MAX {
                    img[p] = want;
                    changed = true;
                } else if img[p] != want {
                    return false;
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

/// Visits all k-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k > n || k == 0 {
        return;
    }
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        visit(&combo);
        let mut i = k as isize - 1;
        while i >= 0 && combo[i as usize] == n - k + i as usize {
            i -= 1;
        }
        if i < 0 {
            return;
        }
        let i = i as usize;
        combo[i] += 1;
        for j in i + 1..k {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn cfg() -> DivisionConfig {
        DivisionConfig::default()
    }

    #[test]
    fn n2_divides_a0() {
        let n2 = catalog::build_named("N2").unwrap();
        let a0 = catalog::build_named("A0").unwrap();
        let v = divides(&n2, &a0, &cfg());
        let DivisionVerdict::Yes { witness } = &v else {
            panic!("expected Yes, got {v:?}");
        };
        assert!(witness.replays(&n2, &a0));
    }

    #[test]
    fn z2_divides_z4_but_z3_does_not_divide_z2() {
        let z2 = catalog::build_named("Z2").unwrap();
        let z3 = catalog::build_named("Z3").unwrap();
        let z4 = catalog::build_named("Z4").unwrap();
        assert!(divides(&z2, &z4, &cfg()).is_yes());
        assert_eq!(divides(&z3, &z2, &cfg()), DivisionVerdict::No);
    }

    #[test]
    fn divides_is_reflexive_and_transitive_on_small_catalog() {
        let names = ["Z2", "N2", "L2", "Sl2", "l3", "A0", "B2"];
        let sgs: Vec<_> = names
            .iter()
            .map(|n| catalog::build_named(n).unwrap())
            .collect();
        for s in &sgs {
            assert!(divides(s, s, &cfg()).is_yes());
        }
        for s in &sgs {
            for t in &sgs {
                for u in &sgs {
                    if divides(s, t, &cfg()).is_yes() && divides(t, u, &cfg()).is_yes() {
                        assert!(
                            divides(s, u, &cfg()).is_yes(),
                            "transitivity failed: {:?} {:?} {:?}",
                            s.name(),
                            t.name(),
                            u.name()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn min_generating_sizes() {
        assert_eq!(min_generating_size(&catalog::build_named("Z6").unwrap()), 1);
        assert_eq!(min_generating_size(&catalog::build_named("B2").unwrap()), 2);
        assert_eq!(min_generating_size(&catalog::build_named("L2").unwrap()), 2);
    }

    #[test]
    fn heuristic_mode_reports_yes_or_inconclusive() {
        let cfg = DivisionConfig {
            exact_bound: 3,
            max_generators: 2,
        };
        let z2 = catalog::build_named("Z2").unwrap();
        let z4 = catalog::build_named("Z4").unwrap();
        assert!(divides(&z2, &z4, &cfg).is_yes());
        let z3 = catalog::build_named("Z3").unwrap();
        assert_eq!(divides(&z3, &z4, &cfg), DivisionVerdict::Inconclusive);
    }
}
