mod common;

use common::*;
use ideal_lab::ops::complement;
use ideal_lab::semigroup::transition_semigroup;
use ideal_lab::witnesses::is_right_ideal_structural;
use ideal_lab::*;
use proptest::prelude::*;

fn arb_dfa(max_n: usize, k: usize) -> impl Strategy<Value = Dfa> {
    (1..=max_n).prop_flat_map(move |n| {
        (
            proptest::collection::vec(proptest::collection::vec(0..n, n), k),
            0..n,
            proptest::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(rows, initial, flags)| {
                let delta = rows
                    .into_iter()
                    .map(|r| Transformation::from_images(r).unwrap())
                    .collect();
                let finals = (0..n).filter(|&q| flags[q]);
                Dfa::with_states(n, LETTERS[..k].to_vec(), delta, initial, finals).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_ignores_generator_order(d in arb_dfa(4, 3), rot in 0usize..3) {
        let mut gens = d.transformations().to_vec();
        gens.rotate_left(rot);
        gens.reverse();
        let a = semigroup::closure(d.transformations(), 1000).unwrap();
        let b = semigroup::closure(&gens, 1000).unwrap();
        prop_assert_eq!(a.size(), b.size());
        prop_assert!(a.elements().iter().all(|t| b.contains(t)));
    }

    #[test]
    fn witness_words_compose_to_elements(d in arb_dfa(4, 2)) {
        let s = transition_semigroup(&d, 1000).unwrap();
        for (i, t) in s.elements().iter().enumerate() {
            let w = s.witness_word(i);
            prop_assert!(!w.is_empty());
            prop_assert_eq!(&d.word_transformation(&w), t);
        }
    }

    #[test]
    fn de_morgan_complexities(d1 in arb_dfa(5, 2), d2 in arb_dfa(5, 2)) {
        let union = boolean_product(&d2, &complement(&d1), BoolOp::Union).unwrap();
        let diff = boolean_product(&d1, &d2, BoolOp::Difference).unwrap();
        prop_assert_eq!(complexity(&union), complexity(&diff));
        prop_assert!(isomorphic(&minimize(&complement(&union)), &diff).unwrap());
    }

    #[test]
    fn right_ideal_checks_agree(d in arb_dfa(5, 2)) {
        prop_assert_eq!(is_right_ideal_structural(&d), check_ideal(&d, IdealClass::Right));
    }

    #[test]
    fn minimization_is_idempotent_and_canonical(d in arb_dfa(6, 3)) {
        let m = minimize(&d);
        prop_assert_eq!(minimize(&m).clone(), m.clone());
        prop_assert_eq!(m.canonical().into_dfa(), m.clone());
        prop_assert!(same_words(&d, &m, 6));
    }

    #[test]
    fn atoms_are_disjoint_and_cover(d in arb_dfa(5, 2)) {
        let d = minimize(&d);
        let atoms = enumerate_atoms(&d).unwrap();
        for w in words(2, 8) {
            let hits = atoms
                .iter()
                .filter(|a| a.subset.mask() == word_atom(&d, &w))
                .count();
            prop_assert_eq!(hits, 1);
        }
    }
}

fn witnesses() -> Vec<(IdealClass, Dfa)> {
    let mut out = Vec::new();
    for class in IdealClass::ALL {
        for n in class.min_n()..=6 {
            out.push((class, StreamClass::from(class).witness(n).unwrap()));
        }
    }
    out
}

#[test]
fn witnesses_are_minimal_ideals() {
    for (class, d) in witnesses() {
        assert!(is_minimal(&d), "{class} n={}", d.state_count());
        assert!(check_ideal(&d, class));
        assert_eq!(table_filling_complexity(&d), d.state_count());
    }
    for n in 3..=6 {
        assert!(is_minimal(&regular_witness(n).unwrap()));
    }
}

#[test]
fn dropping_a_letter_shrinks_the_semigroup() {
    for (class, d) in witnesses() {
        let n = d.state_count();
        if class == IdealClass::Right && n < 4 || class != IdealClass::Right && n < 5 {
            continue;
        }
        let full = syntactic_semigroup_size(&d).unwrap();
        for drop in 0..d.alphabet().len() {
            let slots = d
                .alphabet()
                .iter()
                .enumerate()
                .map(|(i, &c)| (i != drop).then_some(c))
                .collect();
            let sub = apply_dialect(&d, &PartialPermutation::new(slots).unwrap()).unwrap();
            let size = syntactic_semigroup_size(&sub).unwrap();
            assert!(
                size < full,
                "{class} n={n} without letter {drop}: {size} >= {full}"
            );
        }
    }
}

#[test]
fn relettering_preserves_measures() {
    for (_, d) in witnesses() {
        let mut letters = d.alphabet().to_vec();
        letters.rotate_left(1);
        let pi = PartialPermutation::new(letters.into_iter().map(Some).collect()).unwrap();
        let e = apply_dialect(&d, &pi).unwrap().sorted_alphabet();
        assert_eq!(complexity(&e), complexity(&d));
        assert_eq!(
            syntactic_semigroup_size(&e).unwrap(),
            syntactic_semigroup_size(&d).unwrap()
        );
        let mut ca: Vec<_> = enumerate_atoms(&d)
            .unwrap()
            .iter()
            .map(|a| (a.subset.mask(), a.complexity))
            .collect();
        let mut cb: Vec<_> = enumerate_atoms(&e)
            .unwrap()
            .iter()
            .map(|a| (a.subset.mask(), a.complexity))
            .collect();
        ca.sort();
        cb.sort();
        assert_eq!(ca, cb);
    }
}
