//! Faithful right actions and the action-based operators: the right regular
//! representation, the augmentation `bar` (adjoin all constant maps), its
//! left-handed dual `flat`, and the action on L-classes of the kernel.

use crate::error::AlgebraError;
use crate::green::{green_partition, minimal_ideal, GreenRelation};
use crate::semigroup::{AdjoinMode, Semigroup};
use serde::{Deserialize, Serialize};

/// A set of total maps on `0..degree`, closed under left-to-right
/// composition (the argument is written on the left: `x (fg) = ((x)f)g`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformationSemigroup {
    pub degree: usize,
    pub maps: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_tags: Option<Vec<String>>,
}

impl TransformationSemigroup {
    pub fn compose(&self, f: &[usize], g: &[usize]) -> Vec<usize> {
        f.iter().map(|&x| g[x]).collect()
    }

    fn index_of(&self, map: &[usize]) -> Option<usize> {
        self.maps.iter().position(|m| m == map)
    }

    /// The abstract semigroup of the maps, in their stored order.
    pub fn to_semigroup(&self) -> Semigroup {
        let n = self.maps.len();
        let mut table = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                let composed = self.compose(&self.maps[i], &self.maps[j]);
                table[i * n + j] = self
                    .index_of(&composed)
                    .expect("map set is not closed under composition");
            }
        }
        Semigroup::from_rows(
            &(0..n)
                .map(|i| table[i * n..(i + 1) * n].to_vec())
                .collect::<Vec<_>>(),
        )
        .expect("composition is associative")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AugmentMode {
    Bar,
    Flat,
}

/// The right regular representation of `S` acting on `S^•` (that is, `S`
/// itself when `S` is a monoid, `S^I` otherwise). Always faithful.
pub fn right_regular(s: &Semigroup) -> TransformationSemigroup {
    let carrier = s.adjoin_identity(AdjoinMode::Bullet);
    let degree = carrier.order();
    let maps: Vec<Vec<usize>> = (0..s.order())
        .map(|t| (0..degree).map(|x| carrier.mul(x, t)).collect())
        .collect();
    TransformationSemigroup {
        degree,
        maps,
        generator_tags: Some((0..s.order()).map(|t| t.to_string()).collect()),
    }
}

/// The right translation action on the smallest faithful carrier: `S`
/// itself when distinct elements already translate differently, else `S^•`.
/// This is the carrier on which the reference augmentation tables are
/// computed.
pub fn faithful_right_action(s: &Semigroup) -> TransformationSemigroup {
    let maps_on_self: Vec<Vec<usize>> = (0..s.order())
        .map(|t| (0..s.order()).map(|x| s.mul(x, t)).collect())
        .collect();
    let mut sorted = maps_on_self.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() == s.order() {
        TransformationSemigroup {
            degree: s.order(),
            maps: maps_on_self,
            generator_tags: Some((0..s.order()).map(|t| t.to_string()).collect()),
        }
    } else {
        right_regular(s)
    }
}

/// `bar`: the abstract semigroup of the right translation action together
/// with all constant maps on its carrier, deduplicated as functions.
/// `flat` is the dual: `opposite(bar(opposite(S)))`.
pub fn augment(s: &Semigroup, mode: AugmentMode) -> Semigroup {
    match mode {
        AugmentMode::Bar => {
            let rr = faithful_right_action(s);
            let mut maps = rr.maps.clone();
            for x in 0..rr.degree {
                let constant = vec![x; rr.degree];
                if !maps.contains(&constant) {
                    maps.push(constant);
                }
            }
            let ts = TransformationSemigroup {
                degree: rr.degree,
                maps,
                generator_tags: None,
            };
            let out = ts.to_semigroup();
            match s.name() {
                Some(n) => out.with_name(format!("bar({n})")),
                None => out,
            }
        }
        AugmentMode::Flat => {
            let out = augment(&s.opposite(), AugmentMode::Bar).opposite();
            match s.name() {
                Some(n) => out.with_name(format!("flat({n})")),
                None => out,
            }
        }
    }
}

/// The faithful quotient of `T` acting on the right of the L-classes of its
/// minimal ideal.
pub fn rlm(t: &Semigroup) -> Semigroup {
    let kernel = minimal_ideal(t);
    let l = green_partition(t, GreenRelation::L);
    // L-classes meeting the kernel are contained in it
    let mut class_ids: Vec<usize> = kernel.iter().map(|&x| l.block_id(x)).collect();
    class_ids.sort_unstable();
    class_ids.dedup();
    let class_index = |x: usize| -> usize {
        class_ids
            .binary_search(&l.block_id(x))
            .expect("kernel element must lie in a kernel L-class")
    };
    let reps: Vec<usize> = class_ids
        .iter()
        .map(|&cid| {
            kernel
                .iter()
                .copied()
                .find(|&x| l.block_id(x) == cid)
                .unwrap()
        })
        .collect();
    let mut maps: Vec<Vec<usize>> = Vec::new();
    for s in t.elements() {
        let map: Vec<usize> = reps.iter().map(|&r| class_index(t.mul(r, s))).collect();
        debug_assert!(kernel
            .iter()
            .all(|&x| class_index(t.mul(x, s)) == map[class_index(x)]));
        if !maps.contains(&map) {
            maps.push(map);
        }
    }
    let ts = TransformationSemigroup {
        degree: reps.len(),
        maps,
        generator_tags: None,
    };
    ts.to_semigroup()
}

/// Applies the pattern of `bar`/`flat` operators cyclically, starting from
/// the seed, and returns the whole chain `[seed, op1(seed), ...]`.
pub fn hierarchy_iterate(
    seed: &Semigroup,
    pattern: &[AugmentMode],
    depth: usize,
    order_cap: usize,
) -> Result<Vec<Semigroup>, AlgebraError> {
    assert!(!pattern.is_empty(), "pattern must be nonempty");
    let mut chain = vec![seed.clone()];
    for step in 0..depth {
        let next = augment(chain.last().unwrap(), pattern[step % pattern.len()]);
        if next.order() > order_cap {
            return Err(AlgebraError::SizeLimitExceeded {
                order: next.order(),
                cap: order_cap,
            });
        }
        chain.push(next);
    }
    Ok(chain)
}

pub const DEFAULT_HIERARCHY_CAP: usize = 64;
