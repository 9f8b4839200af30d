//! Cross-module invariants: canonical-form stability, division
//! monotonicity, operator compatibility, quotient invariance, and the
//! classifier's internal coherence.

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use sgforge_core::catalog::{self, build_named, exclusion_records};
use sgforge_core::classify::{classify_small_orders, Verdict};
use sgforge_core::division::{divides, DivisionConfig};
use sgforge_core::enumerate::enumerate_semigroups;
use sgforge_core::green::minimal_ideal;
use sgforge_core::satisfy::{satisfies, separation_search, SearchBounds};
use sgforge_core::semigroup::{CanonicalMode, Semigroup};
use sgforge_core::term::{parse_term, word_stats, Exponent, Letter, OmegaTerm, Word};
use sgforge_core::transform::{augment, AugmentMode};
use std::collections::HashMap;

#[test]
fn canonical_key_is_invariant_under_100_random_relabelings() {
    let mut rng = StdRng::seed_from_u64(41);
    for name in ["B2", "A0", "W", "LZbar", "Z6", "l3"] {
        let s = build_named(name).unwrap();
        let reference = s.canonical_key(CanonicalMode::Iso);
        let mut perm: Vec<usize> = (0..s.order()).collect();
        for _ in 0..100 {
            perm.shuffle(&mut rng);
            let relabeled = s.relabel(&perm);
            assert_eq!(
                relabeled.canonical_key(CanonicalMode::Iso),
                reference,
                "{name}"
            );
        }
    }
}

#[test]
fn product_is_associative_up_to_isomorphism() {
    let s = build_named("Z2").unwrap();
    let t = build_named("L2").unwrap();
    let u = build_named("Sl2").unwrap();
    let left = s.product(&t).product(&u);
    let right = s.product(&t.product(&u));
    assert_eq!(
        left.canonical_key(CanonicalMode::Iso),
        right.canonical_key(CanonicalMode::Iso)
    );
}

#[test]
fn division_is_monotone_for_satisfaction() {
    // S < T implies every catalog pseudoidentity satisfied by T holds in S
    let cfg = DivisionConfig::default();
    let pairs = [("N2", "A0"), ("Z2", "Z4"), ("B0", "B2"), ("l3", "A0")];
    for (s_name, t_name) in pairs {
        let s = build_named(s_name).unwrap();
        let t = build_named(t_name).unwrap();
        assert!(divides(&s, &t, &cfg).is_yes(), "{s_name} < {t_name}");
        for rec in exclusion_records() {
            if satisfies(&t, &rec.pid).satisfied {
                assert!(
                    satisfies(&s, &rec.pid).satisfied,
                    "{s_name} must inherit {} from {t_name}",
                    rec.citation
                );
            }
        }
    }
}

#[test]
fn division_is_preserved_by_augmentation() {
    let cfg = DivisionConfig {
        exact_bound: 24,
        max_generators: 4,
    };
    for (s_name, t_name) in [("N2", "A0"), ("Z2", "Z4"), ("Sl2", "A0"), ("N2", "N3")] {
        let s = build_named(s_name).unwrap();
        let t = build_named(t_name).unwrap();
        assert!(divides(&s, &t, &cfg).is_yes());
        let bar_s = augment(&s, AugmentMode::Bar);
        let bar_t = augment(&t, AugmentMode::Bar);
        assert!(
            divides(&bar_s, &bar_t, &cfg).is_yes(),
            "bar({s_name}) should divide bar({t_name})"
        );
    }
}

#[test]
fn augmentation_of_a_product_divides_the_product_of_augmentations() {
    let cfg = DivisionConfig {
        exact_bound: 26,
        max_generators: 4,
    };
    for (s_name, t_name) in [("Z2", "Z2"), ("Sl2", "R2"), ("N2", "L2")] {
        let s = build_named(s_name).unwrap();
        let t = build_named(t_name).unwrap();
        let bar_prod = augment(&s.product(&t), AugmentMode::Bar);
        let prod_bars = augment(&s, AugmentMode::Bar).product(&augment(&t, AugmentMode::Bar));
        assert!(
            divides(&bar_prod, &prod_bars, &cfg).is_yes(),
            "bar({s_name} x {t_name}) should divide bar({s_name}) x bar({t_name})"
        );
    }
}

#[test]
fn rees_quotients_inherit_satisfaction() {
    // homomorphic images satisfy everything the source satisfies
    let subjects = [("B2", vec![0]), ("N3", vec![0, 2]), ("A2", vec![0])];
    for (name, ideal) in subjects {
        let s = build_named(name).unwrap();
        let q = s.rees_quotient(&ideal).unwrap();
        for rec in exclusion_records() {
            if satisfies(&s, &rec.pid).satisfied {
                assert!(
                    satisfies(&q, &rec.pid).satisfied,
                    "{name}/{ideal:?} must inherit {}",
                    rec.citation
                );
            }
        }
    }
}

#[test]
fn violated_records_have_replaying_witnesses() {
    for rec in exclusion_records() {
        if !rec.constructible || rec.local {
            continue;
        }
        let s = build_named(&rec.name).unwrap();
        let report = satisfies(&s, &rec.pid);
        assert!(!report.satisfied, "{} violates its pid", rec.name);
        let witness = report.witness.expect("violated reports carry witnesses");
        assert!(
            witness.replays(&s, &rec.pid),
            "witness for {} replays",
            rec.name
        );
    }
}

#[test]
fn enumeration_covers_the_catalog_of_small_orders() {
    let mut keys_by_order: HashMap<usize, Vec<Vec<u8>>> = HashMap::new();
    for order in 2..=5 {
        let r = enumerate_semigroups(order, CanonicalMode::IsoAntiIso).unwrap();
        keys_by_order.insert(
            order,
            r.classes
                .iter()
                .map(|s| s.canonical_key(CanonicalMode::IsoAntiIso))
                .collect(),
        );
    }
    for name in [
        "Z2", "N2", "Sl2", "L2", "R2", "Z3", "N3", "l3", "N2I", "L2I", "Z4", "N4", "A0", "B0",
        "Z2bar", "N2bar", "N3I", "Z5", "N5", "A2", "B2", "elB", "elBop", "W", "LZbar", "B0I",
        "A0I", "N2barI",
    ] {
        let s = build_named(name).unwrap();
        let key = s.canonical_key(CanonicalMode::IsoAntiIso);
        assert!(
            keys_by_order[&s.order()].contains(&key),
            "{name} missing from order-{} classes",
            s.order()
        );
    }
}

#[test]
fn same_target_members_are_equationally_indistinguishable() {
    // ji classes sharing a target generate the same pseudovariety, so no
    // identity within bounds separates them in either direction
    let summary = classify_small_orders(4).unwrap();
    let mut by_target: HashMap<String, Vec<Semigroup>> = HashMap::new();
    for rec in &summary.records {
        if let Verdict::Ji { target } = &rec.verdict {
            let order = rec.order;
            let key: Vec<u8> = hex_to_key(&rec.canonical_key);
            let s = Semigroup::from_canonical_key(order, &key).unwrap();
            by_target.entry(target.clone()).or_default().push(s);
        }
    }
    let bounds = SearchBounds {
        max_letters: 3,
        max_length: 6,
        samples: 0,
        seed: 3,
    };
    let mut rng = StdRng::seed_from_u64(99);
    for (target, members) in by_target {
        if members.len() < 2 {
            continue;
        }
        for _ in 0..10 {
            let a = &members[rng.gen_range(0..members.len())];
            let b = &members[rng.gen_range(0..members.len())];
            assert!(
                separation_search(a, b, &bounds).is_none(),
                "members of [[{target}]] separated"
            );
            assert!(separation_search(b, a, &bounds).is_none());
        }
    }
}

fn hex_to_key(hex: &str) -> Vec<u8> {
    (0..hex.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(&hex[i..i + 2], 16).unwrap())
        .collect()
}

#[test]
fn ji_verdicts_replay_against_the_target_basis_records() {
    // a ji verdict asserts the generated pseudovariety equals the target's,
    // so the semigroup must satisfy the target's basis and violate its
    // maximal-subpseudovariety witness; this covers all 241 ji classes
    let summary = classify_small_orders(5).unwrap();
    for rec in &summary.records {
        let Verdict::Ji { target } = &rec.verdict else {
            continue;
        };
        let s = Semigroup::from_canonical_key(rec.order, &hex_to_key(&rec.canonical_key)).unwrap();
        let basis = catalog::basis_records()
            .iter()
            .find(|b| &b.name == target)
            .unwrap_or_else(|| panic!("no basis record for target {target}"));
        assert!(
            sgforge_core::satisfies_all(&s, &basis.sigma),
            "{} (order {}) must satisfy the {target} basis",
            rec.canonical_key,
            rec.order
        );
        assert!(
            !satisfies(&s, &basis.epsilon).satisfied,
            "{} must violate the {target} witness identity",
            rec.canonical_key
        );
    }
}

#[test]
fn ji_members_are_indistinguishable_from_their_named_target() {
    let summary = classify_small_orders(4).unwrap();
    let bounds = SearchBounds {
        max_letters: 3,
        max_length: 6,
        samples: 0,
        seed: 11,
    };
    for rec in &summary.records {
        let Verdict::Ji { target } = &rec.verdict else {
            continue;
        };
        let s = Semigroup::from_canonical_key(rec.order, &hex_to_key(&rec.canonical_key)).unwrap();
        let t = build_named(target).unwrap();
        assert!(
            separation_search(&s, &t, &bounds).is_none(),
            "{} separated from its target {target}",
            rec.canonical_key
        );
        assert!(
            separation_search(&t, &s, &bounds).is_none(),
            "{target} separated from its member {}",
            rec.canonical_key
        );
    }
}

#[test]
fn classification_is_duality_coherent_on_all_small_classes() {
    use sgforge_core::catalog::dual_name;
    use sgforge_core::classify::classify_one;
    for order in 2..=3 {
        let enumeration = enumerate_semigroups(order, CanonicalMode::IsoAntiIso).unwrap();
        for s in &enumeration.classes {
            let rec = classify_one(s).unwrap();
            let rec_op = classify_one(&s.opposite()).unwrap();
            match (&rec.verdict, &rec_op.verdict) {
                (Verdict::Ji { target }, Verdict::Ji { target: op_target }) => {
                    assert_eq!(&dual_name(target), op_target);
                }
                (Verdict::NonJi { .. }, Verdict::NonJi { .. }) => {}
                other => panic!("mismatched verdict pair {other:?}"),
            }
        }
    }
}

#[test]
fn rlm_of_augmented_semigroups_is_faithful_and_stable() {
    for name in ["Z2", "N2", "L2", "l3"] {
        let bar = augment(&build_named(name).unwrap(), AugmentMode::Bar);
        let r = sgforge_core::rlm(&bar);
        // bar(S) already acts faithfully on its kernel of right zeroes
        assert_eq!(r.order(), bar.order(), "rlm keeps bar({name}) intact");
        assert_eq!(minimal_ideal(&r).len(), minimal_ideal(&bar).len());
    }
}

fn arb_letter() -> impl Strategy<Value = Letter> {
    (
        prop::sample::select(vec!['a', 'b', 'c', 'x', 'y', 'z']),
        prop::option::of(0u32..10),
    )
        .prop_map(|(base, sub)| Letter { base, sub })
        .prop_filter("bare e and w are reserved", |l| {
            !(l.sub.is_none() && (l.base == 'e' || l.base == 'w'))
        })
}

fn arb_exponent() -> impl Strategy<Value = Exponent> {
    prop_oneof![
        (1u32..6).prop_map(Exponent::Int),
        (-2i32..4).prop_map(Exponent::OmegaPlus),
        prop::collection::btree_set(prop::sample::select(vec![2u32, 3, 5, 7]), 0..3)
            .prop_map(Exponent::PiOmega),
    ]
}

fn arb_term() -> impl Strategy<Value = OmegaTerm> {
    let leaf = prop_oneof![
        arb_letter().prop_map(OmegaTerm::Letter),
        Just(OmegaTerm::KernelIdempotent),
    ];
    leaf.prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..4).prop_map(OmegaTerm::concat),
            (inner, arb_exponent()).prop_map(|(t, e)| OmegaTerm::Power(Box::new(t), e)),
        ]
    })
}

fn order3_classes() -> &'static Vec<Semigroup> {
    use std::sync::OnceLock;
    static CLASSES: OnceLock<Vec<Semigroup>> = OnceLock::new();
    CLASSES.get_or_init(|| {
        enumerate_semigroups(3, CanonicalMode::IsoAntiIso)
            .unwrap()
            .classes
    })
}

fn arb_plain_word() -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(vec!['x', 'y', 'z']), 1..6)
        .prop_map(|cs| Word(cs.into_iter().map(Letter::new).collect()))
}

proptest! {
    /// The compiled word-satisfaction path agrees with direct recursive
    /// evaluation over every assignment.
    #[test]
    fn plain_satisfaction_agrees_with_direct_evaluation(
        class in 0usize..18,
        lhs in arb_plain_word(),
        rhs in arb_plain_word(),
    ) {
        use sgforge_core::satisfy::Assignment;
        use sgforge_core::eval_term;
        let s = &order3_classes()[class];
        let pid = sgforge_core::Pseudoidentity::new(
            OmegaTerm::from_word(&lhs),
            OmegaTerm::from_word(&rhs),
        ).unwrap();
        let fast = satisfies(s, &pid).satisfied;
        let letters: Vec<Letter> = pid.alphabet().into_iter().collect();
        let mut direct = true;
        let mut values = vec![0usize; letters.len()];
        'outer: loop {
            let a = Assignment::new(letters.iter().copied().zip(values.iter().copied()).collect());
            if eval_term(s, &pid.lhs, &a).unwrap() != eval_term(s, &pid.rhs, &a).unwrap() {
                direct = false;
                break;
            }
            for slot in (0..values.len()).rev() {
                values[slot] += 1;
                if values[slot] < s.order() {
                    continue 'outer;
                }
                values[slot] = 0;
            }
            break;
        }
        prop_assert_eq!(fast, direct);
    }

    #[test]
    fn parse_of_format_is_identity(t in arb_term()) {
        let printed = t.to_string();
        let reparsed = parse_term(&printed).unwrap();
        prop_assert_eq!(reparsed, t);
    }

    #[test]
    fn format_of_parse_is_idempotent(t in arb_term()) {
        let first = t.to_string();
        let second = parse_term(&first).unwrap().to_string();
        prop_assert_eq!(first, second);
    }

    #[test]
    fn word_stats_invariants(letters in prop::collection::vec(arb_letter(), 1..12)) {
        let w = Word(letters);
        let st = word_stats(&w);
        prop_assert_eq!(st.ini.len(), st.con.len());
        prop_assert_eq!(st.fin.len(), st.con.len());
        prop_assert!(st.con.len() <= w.len());
        prop_assert_eq!(st.occ.values().sum::<usize>(), w.len());
    }

    #[test]
    fn omega_power_is_idempotent_in_the_monogenic_subsemigroup(
        seed in 0usize..6,
        name in prop::sample::select(vec!["B2", "A2", "W", "Z6", "elB", "N2barI"]),
    ) {
        let s = build_named(name).unwrap();
        let x = seed % s.order();
        let w = s.omega_power(x);
        prop_assert_eq!(s.mul(w, w), w);
        let orbit = s.closure(&[x]).unwrap();
        prop_assert!(orbit.contains(&w));
    }
}

#[test]
fn catalog_identities_parse_and_roundtrip() {
    for rec in exclusion_records() {
        let printed = rec.pid.to_string();
        let reparsed = sgforge_core::term::Pseudoidentity::parse(&printed).unwrap();
        assert_eq!(reparsed, rec.pid);
    }
    for rec in catalog::basis_records() {
        for p in rec.sigma.iter().chain([&rec.epsilon]) {
            let reparsed = sgforge_core::term::Pseudoidentity::parse(&p.to_string()).unwrap();
            assert_eq!(&reparsed, p);
        }
    }
    for cond in catalog::conditions() {
        for p in cond.satisfy.iter().chain(&cond.violate) {
            assert!(
                p.is_plain(),
                "{}: condition identities are plain words",
                cond.id
            );
        }
    }
}
