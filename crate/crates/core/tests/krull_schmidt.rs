mod common;

use std::sync::Arc;

use arquiver::decomp::{
    decompose, find_isomorphism, indecomposables_isomorphic, is_indecomposable, SearchConfig,
};
use arquiver::dsl::eval_str;
use arquiver::repmod::{direct_sum, hom_basis, linear_combination};
use arquiver::{ModuleHom, MonomialAlgebra, Representation};
use common::*;
use proptest::prelude::*;
use rand::Rng;

/// Indecomposables of the two-vertex algebra, written as module expressions.
const KNOWN: &[&str] = &[
    "S(1)",
    "S(2)",
    "P(1)",
    "P(2)",
    "I(1)",
    "quot(x + z)",
    "qsoc(P(2))",
    "quot(x + y + z)",
    "rad(P(2))",
    "quot(x^2, e2)",
];

fn known(a: &Arc<MonomialAlgebra>) -> Vec<Representation> {
    KNOWN.iter().map(|e| eval_str(a, e).unwrap()).collect()
}

/// Counts idempotents of `End(m)` by enumerating every endomorphism.
fn brute_force_idempotents(m: &Representation) -> usize {
    let basis = hom_basis(m, m).unwrap();
    let p = m.field().modulus() as usize;
    let total = p.pow(basis.len() as u32);
    let mut count = 0;
    for mut code in 0..total {
        let coeffs: Vec<u32> = (0..basis.len())
            .map(|_| {
                let c = (code % p) as u32;
                code /= p;
                c
            })
            .collect();
        let e = linear_combination(m, m, &basis, &coeffs);
        if e.then(&e) == e {
            count += 1;
        }
    }
    count
}

#[test]
fn the_known_modules_are_indecomposable_by_brute_force() {
    for p in [2, 3] {
        let a = paper(p);
        for (m, name) in known(&a).iter().zip(KNOWN) {
            // only 0 and 1 are idempotent in a local ring
            assert_eq!(brute_force_idempotents(m), 2, "{name} over GF({p})");
            assert!(
                is_indecomposable(m, &SearchConfig::default()).unwrap(),
                "{name}"
            );
        }
        let ms = known(&a);
        for i in 0..ms.len() {
            for j in 0..ms.len() {
                let iso = indecomposables_isomorphic(&ms[i], &ms[j])
                    .unwrap()
                    .is_some();
                assert_eq!(iso, i == j, "{} vs {}", KNOWN[i], KNOWN[j]);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decompose_matches_brute_force_on_random_modules(seed in any::<u64>(), pick in 0usize..5) {
        let a = &algebras()[pick];
        let m = random_module(a, 5, &mut rng(seed));
        let d = hom_basis(&m, &m).unwrap().len() as u32;
        prop_assume!((a.field().modulus() as u64).pow(d) <= 20_000);
        let ind = is_indecomposable(&m, &SearchConfig::default()).unwrap();
        prop_assert_eq!(ind, brute_force_idempotents(&m) == 2);
    }

    #[test]
    fn decompose_and_reassemble(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3, 5])) {
        let a = paper(p);
        let pool = known(&a);
        let mut r = rng(seed);
        let picks: Vec<usize> = (0..r.gen_range(2..=4)).map(|_| r.gen_range(0..pool.len())).collect();
        let parts: Vec<Representation> = picks.iter().map(|&k| pool[k].clone()).collect();
        let (m, _) = random_base_change(&direct_sum(&a, &parts).unwrap().module, &mut r);

        let dec = decompose(&m, &SearchConfig::default()).unwrap();
        prop_assert!(dec.verify());
        prop_assert_eq!(dec.total_summands(), parts.len());
        let mut want: Vec<Vec<usize>> = parts.iter().map(|x| x.dims().to_vec()).collect();
        let mut got = dec.dimension_vectors();
        want.sort();
        got.sort();
        prop_assert_eq!(got, want);
        for s in &dec.summands {
            let matches = parts
                .iter()
                .filter(|x| indecomposables_isomorphic(&s.module, x).unwrap().is_some())
                .count();
            prop_assert_eq!(matches, s.multiplicity);
        }

        let mut reassembled = Vec::new();
        for s in &dec.summands {
            reassembled.extend(std::iter::repeat_n(s.module.clone(), s.multiplicity));
        }
        let back = direct_sum(&a, &reassembled).unwrap().module;
        let iso: ModuleHom = find_isomorphism(&back, &m, &SearchConfig::default()).unwrap().unwrap();
        prop_assert!(iso.is_isomorphism());
    }

    #[test]
    fn summand_multisets_do_not_depend_on_the_seed(seed in any::<u64>(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = paper(3);
        let pool = known(&a);
        let mut r = rng(seed);
        let parts: Vec<Representation> = (0..3).map(|_| pool[r.gen_range(0..pool.len())].clone()).collect();
        let (m, _) = random_base_change(&direct_sum(&a, &parts).unwrap().module, &mut r);
        let d1 = decompose(&m, &SearchConfig::with_seed(s1)).unwrap();
        let d2 = decompose(&m, &SearchConfig::with_seed(s2)).unwrap();
        prop_assert_eq!(d1.dimension_vectors(), d2.dimension_vectors());
        for (x, y) in d1.summands.iter().zip(&d2.summands) {
            prop_assert_eq!(x.multiplicity, y.multiplicity);
            prop_assert!(indecomposables_isomorphic(&x.module, &y.module).unwrap().is_some());
        }
    }
}
