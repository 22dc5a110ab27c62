use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use silting::bijections::{verify_all, Classification, ClassificationReport, VerifyOptions, CHECK_NAMES};
use silting::fixtures;
use silting::twoterm::{bongartz_complete, complexes_isomorphic, decompose_complex, is_presilting, TwoTermComplex};
use silting::Algebra;

fn verified(alg: &Arc<Algebra>) -> ClassificationReport {
    let r = verify_all(alg, "t", VerifyOptions::default()).unwrap();
    assert!(r.all_passed(), "{:#?}", r.checks);
    r
}

/// Catalan number `C_k`, computed from the binomial formula.
fn catalan(k: u64) -> u64 {
    (0..k).fold(1u64, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

#[test]
fn catalan_oracle() {
    assert_eq!((0..6).map(catalan).collect::<Vec<_>>(), vec![1, 1, 2, 5, 14, 42]);
}

/// Linear A_n has `C_{n+1}` objects in each classification and every
/// indecomposable is τ-rigid.
#[test]
fn linear_quivers_match_catalan() {
    for (alg, n) in [(fixtures::one(), 1u64), (fixtures::a2(), 2), (fixtures::a3(), 3)] {
        let c = verified(&alg).counts;
        let want = catalan(n + 1) as usize;
        assert_eq!((c.support_tau_tilting_pairs, c.two_term_silting, c.torsion_classes), (want, want, want));
        let ind = (n * (n + 1) / 2) as usize;
        assert_eq!((c.indecomposables, c.tau_rigid_indecomposables), (ind, ind));
        assert_eq!(c.presilting_indecomposables, ind + n as usize);
    }
}

/// Local algebra: only 0 and the regular module, so two of everything.
#[test]
fn dual_numbers() {
    let c = verified(&fixtures::dual()).counts;
    assert_eq!((c.indecomposables, c.tau_rigid_indecomposables, c.presilting_indecomposables), (2, 1, 2));
    assert_eq!((c.support_tau_tilting_pairs, c.two_term_silting, c.torsion_classes), (2, 2, 2));
}

#[test]
fn a3_radical_square_zero() {
    let c = verified(&fixtures::a3_rad2()).counts;
    assert_eq!(c.indecomposables, 5);
    assert_eq!(c.presilting_indecomposables, 8);
    assert_eq!((c.support_tau_tilting_pairs, c.two_term_silting, c.torsion_classes), (12, 12, 12));
}

#[test]
fn a2_listings() {
    let c = Classification::new(&fixtures::a2()).unwrap();
    let silting: Vec<String> = c.silting.iter().map(|s| c.silting_label(s)).collect();
    assert!(silting.contains(&"P2->P1 + P2->0".to_string()));
    assert!(silting.contains(&"P1->0 + P2->0".to_string()));
    assert!(silting.contains(&"0->P1 + 0->P2".to_string()));
    let pairs: Vec<String> = c.pairs.iter().map(|(id, _)| c.pair_label(id)).collect();
    assert!(pairs.contains(&"M=S1; E={2}".to_string()));
    assert!(pairs.contains(&"M=0; E={1,2}".to_string()));
}

#[test]
fn report_has_the_seven_checks() {
    let r = verified(&fixtures::a2());
    let names: Vec<&str> = r.checks.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, CHECK_NAMES);
    let json = serde_json::to_value(&r).unwrap();
    for key in ["algebra", "field", "counts", "objects", "checks"] {
        assert!(json.get(key).is_some(), "{key}");
    }
    assert_eq!(json["objects"]["silting"].as_array().unwrap().len(), 5);
}

#[test]
fn seeds_do_not_change_reports() {
    let alg = fixtures::a3();
    let a = serde_json::to_string(&verify_all(&alg, "a3", VerifyOptions { mu: 2, seed: 0 }).unwrap()).unwrap();
    let b = serde_json::to_string(&verify_all(&alg, "a3", VerifyOptions { mu: 2, seed: 99 }).unwrap()).unwrap();
    assert_eq!(a, b);
}

fn pool(k: usize) -> Vec<TwoTermComplex> {
    static POOLS: OnceLock<Vec<Vec<TwoTermComplex>>> = OnceLock::new();
    POOLS.get_or_init(|| {
        [fixtures::a2(), fixtures::a3(), fixtures::a3_rad2()]
            .iter()
            .map(|alg| Classification::new(alg).unwrap().complexes.complexes)
            .collect()
    })[k % 3]
        .clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Presilting is a pairwise condition and any presilting set completes to a
    /// silting object containing it.
    #[test]
    fn presilting_sets_complete(k in 0usize..3, mask in 1u32..512) {
        let us = pool(k);
        let sub: Vec<TwoTermComplex> =
            us.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, u)| u.clone()).collect();
        prop_assume!(!sub.is_empty());
        let pairwise = sub.iter().all(|a| sub.iter().all(|b| is_presilting(&[a.clone(), b.clone()])));
        prop_assert_eq!(is_presilting(&sub), pairwise);
        if pairwise {
            let sum = TwoTermComplex::direct_sum(sub[0].algebra(), &sub.iter().collect::<Vec<_>>());
            let done = bongartz_complete(&sum).unwrap();
            let parts = decompose_complex(&done).unwrap();
            for u in &sub {
                prop_assert!(parts.iter().any(|(x, _)| complexes_isomorphic(x, u)));
            }
            prop_assert_eq!(parts.len(), sub[0].algebra().num_vertices());
        }
    }
}
