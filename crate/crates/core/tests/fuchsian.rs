mod common;

use common::{brute_force_actions, canonical_action, sig};
use geoembed_core::fuchsian::*;
use geoembed_core::homs::epi_search;
use geoembed_core::library;
use proptest::prelude::*;

fn chi_h(a: &CosetAction) -> Rational {
    subgroup_signature(a).unwrap().orbifold_euler_char()
}

#[test]
fn degree_two_action_of_238_has_stabilizer_334() {
    let a = CosetAction::new(
        sig("(0;2,3,8)"),
        vec![
            geoembed_core::Permutation::from_images(vec![1, 0]).unwrap(),
            geoembed_core::Permutation::identity(2),
        ],
    )
    .unwrap();
    assert_eq!(subgroup_signature(&a).unwrap(), sig("(0;3,3,4)"));
    assert_eq!(chi_h(&a), Rational::from_integer(2) * sig("(0;2,3,8)").orbifold_euler_char());
}

#[test]
fn low_index_matches_brute_force() {
    for (s, max) in [("(0;2,3,7)", 5), ("(0;2,4,5)", 5), ("(0;3,3,4)", 4), ("(0;2,2,2,3)", 3), ("(1;)", 3), ("(0;2,3,8)", 5)] {
        let s = sig(s);
        let acts = low_index_actions(&s, max);
        for n in 1..=max {
            let mut got: Vec<_> = acts.iter().filter(|a| a.degree() == n).map(canonical_action).collect();
            got.sort();
            assert_eq!(got, brute_force_actions(&s, n), "{s} degree {n}");
        }
    }
}

#[test]
fn low_index_is_deterministic() {
    let s = sig("(0;2,3,8)");
    assert_eq!(low_index_actions(&s, 6), low_index_actions(&s, 6));
}

#[test]
fn hurwitz_identity_for_psl_quotients() {
    let s = sig("(0;2,3,7)");
    for p in [7u64, 8, 13, 29, 43] {
        let Ok(g) = library::psl2(p) else { continue };
        for h in epi_search(&s, &g).unwrap() {
            let n = h.codomain().order();
            let genus = s.quotient_genus(n).unwrap();
            assert_eq!(n, 84 * (genus as u128 - 1));
        }
    }
}

#[test]
fn core_of_regular_action_is_the_kernel() {
    let h = epi_search(&sig("(0;2,3,7)"), &library::psl2(7).unwrap()).unwrap().remove(0);
    let a = h.regular_action().unwrap();
    let core = normal_core(&a).unwrap();
    assert_eq!((core.core_index, core.stabilizer_image_order), (168, 1));
    assert_eq!(subgroup_signature(&a).unwrap(), sig("(3;)"));
}

fn triangle() -> impl Strategy<Value = FuchsianSignature> {
    (2u32..=8, 2u32..=8, 2u32..=8)
        .prop_filter_map("hyperbolic", |(p, q, r)| FuchsianSignature::triangle(p, q, r).ok().filter(|s| s.is_hyperbolic()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn riemann_hurwitz_on_every_small_action(s in triangle()) {
        for a in low_index_actions(&s, 5) {
            let h = subgroup_signature(&a).unwrap();
            prop_assert_eq!(-h.orbifold_euler_char(), Rational::from_integer(a.degree() as i64) * -s.orbifold_euler_char());
            if h.periods().is_empty() {
                prop_assert!(h.genus() >= 2);
                prop_assert!(a.has_torsion_free_stabilizer());
            }
            prop_assert!(h.periods().windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn braid_reordering_keeps_the_action(i in 0usize..3) {
        let s = sig("(0;2,3,7)");
        let h = epi_search(&s, &library::psl2(13).unwrap()).unwrap().remove(0);
        let v = s.presentation().vector_images(h.images()).unwrap();
        let order: Vec<usize> = (0..3).map(|k| (k + i) % 3).collect();
        let w = reorder_vector(&v, &order);
        let prod = w.iter().skip(1).fold(w[0].clone(), |acc, p| acc.compose(p));
        prop_assert!(prod.is_identity());
        for (k, &j) in order.iter().enumerate() {
            prop_assert_eq!(w[k].order(), v[j].order());
        }
    }
}
