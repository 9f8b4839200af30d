//! Evaluation of terms in finite semigroups and the decision procedures
//! built on it: identity and pseudoidentity satisfaction, local-monoid
//! membership, and identity-separation search.

use crate::error::EvalError;
use crate::green::minimal_ideal;
use crate::semigroup::Semigroup;
use crate::term::{Exponent, Letter, OmegaTerm, Pseudoidentity, Word};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// A valuation of letters by elements, plus the element chosen for the
/// kernel idempotent symbol when one occurs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    #[serde(with = "letter_map")]
    pub map: BTreeMap<Letter, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel_choice: Option<usize>,
}

mod letter_map {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<Letter, usize>,
        ser: S,
    ) -> Result<S::Ok, S::Error> {
        let string_map: BTreeMap<String, usize> =
            map.iter().map(|(k, &v)| (k.to_string(), v)).collect();
        serde::Serialize::serialize(&string_map, ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> Result<BTreeMap<Letter, usize>, D::Error> {
        let string_map: BTreeMap<String, usize> = serde::Deserialize::deserialize(de)?;
        let mut map = BTreeMap::new();
        for (k, v) in string_map {
            let term = crate::term::parse_term(&k).map_err(serde::de::Error::custom)?;
            let OmegaTerm::Letter(l) = term else {
                return Err(serde::de::Error::custom(format!("'{k}' is not a letter")));
            };
            map.insert(l, v);
        }
        Ok(map)
    }
}

impl Assignment {
    pub fn new(map: BTreeMap<Letter, usize>) -> Self {
        Assignment {
            map,
            kernel_choice: None,
        }
    }
}

/// Evaluates a term under an assignment.
///
/// Products are taken left to right; `x^w` is the idempotent power;
/// `x^(w+k)` multiplies it by `x^k` reduced modulo the period; `x^[P']`
/// yields the generator of the P-primary component of the cyclic group
/// generated by `x^(w+1)`.
pub fn eval_term(s: &Semigroup, term: &OmegaTerm, a: &Assignment) -> Result<usize, EvalError> {
    match term {
        OmegaTerm::Letter(l) => a
            .map
            .get(l)
            .copied()
            .ok_or_else(|| EvalError::MissingLetter(l.to_string()))
            .and_then(|v| {
                if v < s.order() {
                    Ok(v)
                } else {
                    Err(EvalError::BadElement(v))
                }
            }),
        OmegaTerm::KernelIdempotent => match a.kernel_choice {
            Some(f) if f < s.order() => {
                if s.mul(f, f) != f {
                    return Err(EvalError::InvalidKernelChoice(f));
                }
                Ok(f)
            }
            Some(f) => Err(EvalError::BadElement(f)),
            None => Err(EvalError::MissingKernelChoice),
        },
        OmegaTerm::Concat(children) => {
            let mut acc: Option<usize> = None;
            for c in children {
                if c.is_effectively_empty() {
                    continue;
                }
                let v = eval_term(s, c, a)?;
                acc = Some(match acc {
                    None => v,
                    Some(p) => s.mul(p, v),
                });
            }
            acc.ok_or(EvalError::BadElement(0))
        }
        OmegaTerm::Power(base, exp) => {
            let v = eval_term(s, base, a)?;
            Ok(eval_power(s, v, exp))
        }
    }
}

fn eval_power(s: &Semigroup, v: usize, exp: &Exponent) -> usize {
    match exp {
        Exponent::Int(k) => {
            assert!(*k >= 1, "zero powers are skipped by the enclosing product");
            s.power(v, *k as usize)
        }
        Exponent::OmegaPlus(k) => {
            let w = s.omega_power(v);
            let (_, period) = s.index_period(v);
            let r = (*k).rem_euclid(period as i32) as usize;
            if r == 0 {
                w
            } else {
                s.mul(w, s.power(v, r))
            }
        }
        Exponent::PiOmega(primes) => {
            let e = s.omega_power(v);
            let y = s.mul(e, v); // v^(w+1), a generator of the group part
            let m = s.index_period(v).1;
            let m_p = primary_part(m, primes);
            let m_rest = m / m_p;
            // the unique t (mod m) with t = 1 (mod m_p) and t = 0 (mod m_rest)
            let mut t = 0;
            for i in 0..m_p {
                let cand = i * m_rest;
                if cand % m_p == 1 % m_p {
                    t = cand;
                    break;
                }
            }
            if t == 0 {
                e
            } else {
                s.mul(e, s.power(y, t))
            }
        }
    }
}

/// Largest divisor of `m` supported on the given primes.
fn primary_part(m: usize, primes: &std::collections::BTreeSet<u32>) -> usize {
    let mut part = 1;
    let mut rest = m;
    for &p in primes {
        let p = p as usize;
        while rest.is_multiple_of(p) {
            rest /= p;
            part *= p;
        }
    }
    part
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatisfactionReport {
    pub satisfied: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// A violating valuation together with the two side values it produces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub assignment: Assignment,
    pub lhs_value: usize,
    pub rhs_value: usize,
}

impl Witness {
    pub fn replays(&self, s: &Semigroup, p: &Pseudoidentity) -> bool {
        let lhs = eval_term(s, &p.lhs, &self.assignment);
        let rhs = eval_term(s, &p.rhs, &self.assignment);
        lhs == Ok(self.lhs_value) && rhs == Ok(self.rhs_value) && self.lhs_value != self.rhs_value
    }
}

/// Decides whether `s` satisfies the pseudoidentity by exhausting all
/// `|S|^letters` assignments. When the kernel idempotent occurs, every
/// idempotent of the minimal ideal of the subsemigroup generated by the
/// assigned letter images is tried for it.
pub fn satisfies(s: &Semigroup, p: &Pseudoidentity) -> SatisfactionReport {
    if p.is_plain() {
        return satisfies_plain(s, p);
    }
    let letters: Vec<Letter> = p.alphabet().into_iter().collect();
    let uses_kernel = p.uses_kernel();
    let mut values = vec![0usize; letters.len()];
    loop {
        let map: BTreeMap<Letter, usize> = letters
            .iter()
            .copied()
            .zip(values.iter().copied())
            .collect();
        let kernel_choices: Vec<Option<usize>> = if uses_kernel {
            kernel_idempotents(s, &values)
                .into_iter()
                .map(Some)
                .collect()
        } else {
            vec![None]
        };
        for kc in kernel_choices {
            let a = Assignment {
                map: map.clone(),
                kernel_choice: kc,
            };
            let lhs = eval_term(s, &p.lhs, &a).expect("validated term evaluates");
            let rhs = eval_term(s, &p.rhs, &a).expect("validated term evaluates");
            if lhs != rhs {
                return SatisfactionReport {
                    satisfied: false,
                    witness: Some(Witness {
                        assignment: a,
                        lhs_value: lhs,
                        rhs_value: rhs,
                    }),
                };
            }
        }
        if !advance(&mut values, s.order()) {
            break;
        }
    }
    SatisfactionReport {
        satisfied: true,
        witness: None,
    }
}

/// Idempotents of the minimal ideal of the subsemigroup generated by the
/// given elements, as elements of the ambient semigroup.
pub fn kernel_idempotents(s: &Semigroup, generators: &[usize]) -> Vec<usize> {
    let closed = s.closure(generators).expect("nonempty generator list");
    let (sub, elems) = s.subsemigroup(&closed);
    minimal_ideal(&sub)
        .into_iter()
        .map(|i| elems[i])
        .filter(|&f| s.mul(f, f) == f)
        .collect()
}

fn satisfies_plain(s: &Semigroup, p: &Pseudoidentity) -> SatisfactionReport {
    let letters: Vec<Letter> = p.alphabet().into_iter().collect();
    let slot_of: BTreeMap<Letter, usize> = letters
        .iter()
        .copied()
        .enumerate()
        .map(|(i, l)| (l, i))
        .collect();
    let compile = |t: &OmegaTerm| -> Vec<usize> {
        t.as_plain_word()
            .expect("plain term expands")
            .0
            .iter()
            .map(|l| slot_of[l])
            .collect()
    };
    let lhs = compile(&p.lhs);
    let rhs = compile(&p.rhs);
    let mut values = vec![0usize; letters.len()];
    loop {
        let eval = |word: &[usize]| -> usize {
            let mut acc = values[word[0]];
            for &slot in &word[1..] {
                acc = s.mul(acc, values[slot]);
            }
            acc
        };
        let l = eval(&lhs);
        let r = eval(&rhs);
        if l != r {
            let map = letters
                .iter()
                .copied()
                .zip(values.iter().copied())
                .collect();
            return SatisfactionReport {
                satisfied: false,
                witness: Some(Witness {
                    assignment: Assignment::new(map),
                    lhs_value: l,
                    rhs_value: r,
                }),
            };
        }
        if !advance(&mut values, s.order()) {
            break;
        }
    }
    SatisfactionReport {
        satisfied: true,
        witness: None,
    }
}

/// Advances a base-`radix` odometer in lexicographic order (leftmost digit
/// most significant). Returns false when the odometer wraps.
fn advance(values: &mut [usize], radix: usize) -> bool {
    for v in values.iter_mut().rev() {
        *v += 1;
        if *v < radix {
            return true;
        }
        *v = 0;
    }
    false
}

pub fn satisfies_all(s: &Semigroup, pids: &[Pseudoidentity]) -> bool {
    pids.iter().all(|p| satisfies(s, p).satisfied)
}

pub fn violates_all(s: &Semigroup, pids: &[Pseudoidentity]) -> bool {
    pids.iter().all(|p| !satisfies(s, p).satisfied)
}

/// True when every local monoid `uSu` (over idempotents `u`) satisfies `p`.
pub fn in_local(s: &Semigroup, p: &Pseudoidentity) -> bool {
    for u in s.idempotents() {
        let mut elems: Vec<usize> = s.elements().map(|x| s.mul(s.mul(u, x), u)).collect();
        elems.sort_unstable();
        elems.dedup();
        let (local, _) = s.subsemigroup(&elems);
        if !satisfies(&local, p).satisfied {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, Copy)]
pub struct SearchBounds {
    pub max_letters: usize,
    pub max_length: usize,
    /// Random pairs tried after the exhaustive phase.
    pub samples: usize,
    pub seed: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_letters: 3,
            max_length: 8,
            samples: 0,
            seed: 0x5eed,
        }
    }
}

const SEARCH_LETTERS: [char; 6] = ['x', 'y', 'z', 't', 'p', 'q'];

/// Searches for an identity satisfied by `a` and violated by `b`.
///
/// Exhausts all word pairs up to the bounds (two words form an identity of
/// `a` exactly when their evaluation vectors over `a` agree), then tries
/// random longer pairs. `None` means no separator was found within bounds,
/// never that the generated pseudovarieties coincide.
pub fn separation_search(
    a: &Semigroup,
    b: &Semigroup,
    bounds: &SearchBounds,
) -> Option<Pseudoidentity> {
    let k = bounds.max_letters.min(SEARCH_LETTERS.len());
    let assignments_a = a.order().checked_pow(k as u32)?;
    let assignments_b = b.order().checked_pow(k as u32)?;
    assert!(
        assignments_a <= 2_000_000 && assignments_b <= 2_000_000,
        "separation bounds too large"
    );
    let letters: Vec<Letter> = SEARCH_LETTERS[..k]
        .iter()
        .map(|&c| Letter::new(c))
        .collect();
    let asg_a = all_assignments(a.order(), k);
    let asg_b = all_assignments(b.order(), k);

    // evaluation vectors, extended letter by letter along the prefix tree
    type Key = Vec<u8>;
    let mut buckets: HashMap<Key, Vec<(Key, Vec<u8>)>> = HashMap::new();
    let mut level: Vec<(Vec<u8>, Key, Key)> = (0..k)
        .map(|l| {
            let va: Key = asg_a.iter().map(|asg| asg[l] as u8).collect();
            let vb: Key = asg_b.iter().map(|asg| asg[l] as u8).collect();
            (vec![l as u8], va, vb)
        })
        .collect();
    for _length in 1..=bounds.max_length {
        for (word, va, vb) in &level {
            let bucket = buckets.entry(va.clone()).or_default();
            let mut known = false;
            for (vb2, word2) in bucket.iter() {
                if vb2 == vb {
                    known = true;
                    continue;
                }
                // same vector over a, different over b: separator found
                let u = word_from_indices(word2, &letters);
                let v = word_from_indices(word, &letters);
                return Some(
                    Pseudoidentity::new(OmegaTerm::from_word(&u), OmegaTerm::from_word(&v))
                        .expect("nonempty words form a pseudoidentity"),
                );
            }
            if !known {
                bucket.push((vb.clone(), word.clone()));
            }
        }
        if _length == bounds.max_length {
            break;
        }
        let mut next = Vec::with_capacity(level.len() * k);
        for (word, va, vb) in &level {
            for l in 0..k {
                let mut w = word.clone();
                w.push(l as u8);
                let va2: Key = va
                    .iter()
                    .zip(asg_a.iter())
                    .map(|(&acc, asg)| a.mul(acc as usize, asg[l]) as u8)
                    .collect();
                let vb2: Key = vb
                    .iter()
                    .zip(asg_b.iter())
                    .map(|(&acc, asg)| b.mul(acc as usize, asg[l]) as u8)
                    .collect();
                next.push((w, va2, vb2));
            }
        }
        level = next;
    }

    // random phase
    let mut rng = StdRng::seed_from_u64(bounds.seed);
    for _ in 0..bounds.samples {
        let len_u = rng.gen_range(1..=bounds.max_length * 2);
        let len_v = rng.gen_range(1..=bounds.max_length * 2);
        let u: Vec<u8> = (0..len_u).map(|_| rng.gen_range(0..k) as u8).collect();
        let v: Vec<u8> = (0..len_v).map(|_| rng.gen_range(0..k) as u8).collect();
        let wu = word_from_indices(&u, &letters);
        let wv = word_from_indices(&v, &letters);
        let p = Pseudoidentity::new(OmegaTerm::from_word(&wu), OmegaTerm::from_word(&wv))
            .expect("nonempty words");
        if satisfies(a, &p).satisfied && !satisfies(b, &p).satisfied {
            return Some(p);
        }
    }
    None
}

fn all_assignments(order: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(order.pow(k as u32));
    let mut values = vec![0usize; k];
    loop {
        out.push(values.clone());
        if !advance(&mut values, order) {
            break;
        }
    }
    out
}

fn word_from_indices(indices: &[u8], letters: &[Letter]) -> Word {
    Word(indices.iter().map(|&i| letters[i as usize]).collect())
}
