//! Green's relations and the kernel (minimal two-sided ideal).

use crate::congruence::Partition;
use crate::semigroup::Semigroup;
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GreenRelation {
    L,
    R,
    J,
    H,
}

/// `S^1 x`: the principal left ideal of `x`, with an implicit identity so
/// that `x` always belongs.
fn left_ideal(s: &Semigroup, x: usize) -> Vec<bool> {
    let mut set = vec![false; s.order()];
    set[x] = true;
    for a in s.elements() {
        set[s.mul(a, x)] = true;
    }
    set
}

fn right_ideal(s: &Semigroup, x: usize) -> Vec<bool> {
    let mut set = vec![false; s.order()];
    set[x] = true;
    for a in s.elements() {
        set[s.mul(x, a)] = true;
    }
    set
}

fn two_sided_ideal(s: &Semigroup, x: usize) -> Vec<bool> {
    let mut set = vec![false; s.order()];
    set[x] = true;
    for a in s.elements() {
        set[s.mul(a, x)] = true;
        let xa = s.mul(x, a);
        set[xa] = true;
        for b in s.elements() {
            set[s.mul(b, xa)] = true;
        }
    }
    set
}

fn partition_by_key(s: &Semigroup, key: impl Fn(usize) -> Vec<bool>) -> Partition {
    let mut block_of = vec![0usize; s.order()];
    let mut seen: HashMap<Vec<bool>, usize> = HashMap::new();
    for x in s.elements() {
        let k = key(x);
        let next = seen.len();
        block_of[x] = *seen.entry(k).or_insert(next);
    }
    Partition::from_block_ids(&block_of)
}

pub fn green_partition(s: &Semigroup, relation: GreenRelation) -> Partition {
    match relation {
        GreenRelation::L => partition_by_key(s, |x| left_ideal(s, x)),
        GreenRelation::R => partition_by_key(s, |x| right_ideal(s, x)),
        GreenRelation::J => partition_by_key(s, |x| two_sided_ideal(s, x)),
        GreenRelation::H => {
            green_partition(s, GreenRelation::L).meet(&green_partition(s, GreenRelation::R))
        }
    }
}

/// The kernel: the least two-sided ideal, always nonempty for finite
/// semigroups. It is the smallest principal two-sided ideal.
pub fn minimal_ideal(s: &Semigroup) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for x in s.elements() {
        let set = two_sided_ideal(s, x);
        let members: Vec<usize> = (0..s.order()).filter(|&y| set[y]).collect();
        if best.as_ref().is_none_or(|b| members.len() < b.len()) {
            best = Some(members);
        }
    }
    best.unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn j_classes_of_b2() {
        // matrix-unit oracle: the nonzero elements form a single J-class
        let b2 = catalog::build_named("B2").unwrap();
        let j = green_partition(&b2, GreenRelation::J);
        let blocks = j.blocks();
        assert_eq!(blocks.len(), 2);
        assert!(blocks.contains(&vec![0]));
        assert!(blocks.contains(&vec![1, 2, 3, 4]));
    }

    #[test]
    fn l_classes_of_b2() {
        // columns of the matrix-unit picture: {0}, {a, ba}, {b, ab}
        let b2 = catalog::build_named("B2").unwrap();
        let l = green_partition(&b2, GreenRelation::L);
        let blocks = l.blocks();
        assert_eq!(blocks.len(), 3);
        assert!(blocks.contains(&vec![0]));
        assert!(blocks.contains(&vec![1, 3]));
        assert!(blocks.contains(&vec![2, 4]));
    }

    #[test]
    fn any_relation_on_a_group_is_universal() {
        let z6 = catalog::build_named("Z6").unwrap();
        for rel in [
            GreenRelation::L,
            GreenRelation::R,
            GreenRelation::J,
            GreenRelation::H,
        ] {
            assert_eq!(green_partition(&z6, rel).num_blocks(), 1);
        }
    }

    #[test]
    fn minimal_ideal_examples() {
        let b2 = catalog::build_named("B2").unwrap();
        assert_eq!(minimal_ideal(&b2), vec![0]);
        let z2bar = catalog::build_named("Z2bar").unwrap();
        assert_eq!(minimal_ideal(&z2bar), vec![2, 3]);
        let z6 = catalog::build_named("Z6").unwrap();
        assert_eq!(minimal_ideal(&z6).len(), 6);
    }

    #[test]
    fn minimal_ideal_is_an_ideal_without_proper_subideal() {
        for name in ["B2", "A2", "W", "LZbar", "N2bar", "l3"] {
            let s = catalog::build_named(name).unwrap();
            let k = minimal_ideal(&s);
            let in_k = |x: usize| k.binary_search(&x).is_ok();
            for &x in &k {
                for a in s.elements() {
                    assert!(in_k(s.mul(a, x)) && in_k(s.mul(x, a)));
                }
            }
            // every element of the kernel generates the whole kernel
            for &x in &k {
                let set = two_sided_ideal(&s, x);
                let members: Vec<usize> = (0..s.order()).filter(|&y| set[y]).collect();
                assert_eq!(members, k);
            }
        }
    }
}
