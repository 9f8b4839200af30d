//! Partitions, principal congruences, and the subdirect-indecomposability test.

use crate::semigroup::Semigroup;
use serde::{Deserialize, Serialize};

/// A partition of `0..n`, with block ids normalized by first occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    block_of: Vec<usize>,
}

impl Partition {
    pub fn from_block_ids(ids: &[usize]) -> Partition {
        let mut remap = vec![usize::MAX; ids.len()];
        let mut next = 0;
        let mut block_of = Vec::with_capacity(ids.len());
        for &b in ids {
            if remap[b] == usize::MAX {
                remap[b] = next;
                next += 1;
            }
            block_of.push(remap[b]);
        }
        Partition { block_of }
    }

    pub fn discrete(n: usize) -> Partition {
        Partition {
            block_of: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn block_id(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn num_blocks(&self) -> usize {
        self.block_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    /// True when every block is a singleton.
    pub fn is_discrete(&self) -> bool {
        self.num_blocks() == self.len()
    }

    pub fn is_universal(&self) -> bool {
        self.num_blocks() <= 1
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (x, &b) in self.block_of.iter().enumerate() {
            blocks[b].push(x);
        }
        blocks
    }

    /// Common refinement: x ~ y iff they agree in both partitions.
    pub fn meet(&self, other: &Partition) -> Partition {
        assert_eq!(self.len(), other.len());
        let mut seen = std::collections::HashMap::new();
        let mut ids = Vec::with_capacity(self.len());
        for x in 0..self.len() {
            let key = (self.block_of[x], other.block_of[x]);
            let next = seen.len();
            ids.push(*seen.entry(key).or_insert(next));
        }
        Partition::from_block_ids(&ids)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        self.parent[rx.max(ry)] = rx.min(ry);
        true
    }
}

/// Smallest congruence identifying every given pair, computed by closing
/// under left/right translations; transitivity comes from the union-find.
pub fn congruence_closure(s: &Semigroup, pairs: &[(usize, usize)]) -> Partition {
    let mut uf = UnionFind::new(s.order());
    let mut stack: Vec<(usize, usize)> = pairs.to_vec();
    while let Some((x, y)) = stack.pop() {
        if !uf.union(x, y) {
            continue;
        }
        for t in s.elements() {
            stack.push((s.mul(x, t), s.mul(y, t)));
            stack.push((s.mul(t, x), s.mul(t, y)));
        }
    }
    let ids: Vec<usize> = (0..s.order()).map(|x| uf.find(x)).collect();
    Partition::from_block_ids(&ids)
}

/// The principal congruence `theta(a, b)`.
pub fn principal_congruence(s: &Semigroup, a: usize, b: usize) -> Partition {
    congruence_closure(s, &[(a, b)])
}

/// Checks whether the partition is compatible with multiplication.
pub fn is_congruence(s: &Semigroup, p: &Partition) -> bool {
    for a in s.elements() {
        for b in s.elements() {
            if !p.same_block(a, b) {
                continue;
            }
            for t in s.elements() {
                if !p.same_block(s.mul(a, t), s.mul(b, t))
                    || !p.same_block(s.mul(t, a), s.mul(t, b))
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Subdirect indecomposability: the intersection of all principal
/// congruences `theta(a, b)` over pairs `a != b` is nontrivial, i.e. there
/// is a unique minimal nontrivial congruence.
pub fn is_sdi(s: &Semigroup) -> bool {
    let n = s.order();
    if n == 1 {
        return false;
    }
    let mut meet: Option<Partition> = None;
    for a in 0..n {
        for b in a + 1..n {
            let theta = principal_congruence(s, a, b);
            meet = Some(match meet {
                None => theta,
                Some(m) => m.meet(&theta),
            });
            if meet.as_ref().unwrap().is_discrete() {
                return false;
            }
        }
    }
    !meet.unwrap().is_discrete()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn sl2_is_sdi() {
        let sl2 = catalog::build_named("Sl2").unwrap();
        assert!(is_sdi(&sl2));
    }

    #[test]
    fn z6_is_not_sdi() {
        // theta from the Z2 and Z3 quotients intersect trivially
        let z6 = catalog::build_named("Z6").unwrap();
        assert!(!is_sdi(&z6));
    }

    #[test]
    fn principal_congruences_are_congruences() {
        for name in ["B2", "W", "A0", "Z6", "LZbar"] {
            let s = catalog::build_named(name).unwrap();
            for a in s.elements() {
                for b in s.elements() {
                    let theta = principal_congruence(&s, a, b);
                    assert!(is_congruence(&s, &theta));
                    assert!(theta.same_block(a, b));
                }
            }
        }
    }

    #[test]
    fn principal_congruence_is_smallest() {
        // every congruence containing (a,b) contains theta(a,b): spot-check
        // against all partitions of B0 that are congruences
        let s = catalog::build_named("B0").unwrap();
        let theta = principal_congruence(&s, 1, 0);
        // the Rees quotient by {0, a} identifies exactly 0 and a
        assert_eq!(theta.num_blocks(), 3);
        assert!(theta.same_block(0, 1));
        assert!(!theta.same_block(2, 3));
    }

    #[test]
    fn meet_of_partitions() {
        let p = Partition::from_block_ids(&[0, 0, 1, 1]);
        let q = Partition::from_block_ids(&[0, 1, 1, 1]);
        let m = p.meet(&q);
        assert_eq!(m.blocks(), vec![vec![0], vec![1], vec![2, 3]]);
    }
}
