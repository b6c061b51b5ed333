use kunneth_core::fgab::{FgGroup, Int};
use kunneth_core::fixtures::{
    aligned_family, direct_sum_instance, dp_truncation, plant_defect, random_aligned,
    random_instance, DefectKind, DpTruncation, FixtureError, LatticeSpec, RandomBounds,
};
use kunneth_core::kunneth::validate::IDEAL_EXACTNESS;
use kunneth_core::kunneth::{check_coherence, check_family_coherence, validate_instance};

fn diamond_spec() -> LatticeSpec {
    // poset {a, b} unordered: down-sets 0, a, b, ab
    LatticeSpec::from_poset(2, &[], &[0, 1], &[0, 1])
}

#[test]
fn diamond_spec_shape() {
    let s = diamond_spec();
    assert_eq!(s.nodes, vec!["0", "a", "b", "ab"]);
    assert_eq!(s.covers.len(), 4);
    assert_eq!(s.k1[3], vec![0, 1]);
}

#[test]
fn aligned_diamond_validates() {
    let parts = [FgGroup::cyclic(4), FgGroup::cyclic(6)];
    let a = direct_sum_instance(2, &parts, &Int::from(2), &diamond_spec()).unwrap();
    let r = validate_instance(&a.instance);
    assert!(r.all_passed(), "{r}");
    assert_eq!(a.instance.kn().order(), Some(Int::from(16)));
}

#[test]
fn non_monotone_spec_is_rejected() {
    let mut s = LatticeSpec::chain(2, &[0], &[]);
    s.k0 = vec![vec![0], vec![]];
    let err = direct_sum_instance(1, &[], &Int::from(2), &s).unwrap_err();
    assert!(matches!(err, FixtureError::NonMonotone(_, _)));
}

#[test]
fn random_instances_validate_and_are_deterministic() {
    let b = RandomBounds::default();
    for seed in 0..40 {
        let inst = random_instance(seed, &b);
        let r = validate_instance(&inst);
        assert!(r.all_passed(), "seed {seed}: {r}");
        assert!(inst.lattice.len() <= b.max_nodes);
        assert!(inst.kn().order().unwrap() <= Int::from(b.max_kn_order));
        assert_eq!(inst, random_instance(seed, &b));
    }
}

#[test]
fn untwisted_random_instance_is_aligned() {
    let b = RandomBounds {
        twist: false,
        relabel: false,
        ..RandomBounds::default()
    };
    for seed in 0..10 {
        assert_eq!(random_instance(seed, &b), random_aligned(seed, &b).instance);
    }
}

#[test]
fn defects_fail_exactly_their_check() {
    let b = RandomBounds::default();
    let mut seen_purity = false;
    for seed in 0..25 {
        let inst = random_instance(seed, &b);
        for kind in DefectKind::ALL {
            match plant_defect(&inst, kind) {
                Ok(bad) => {
                    let failed = validate_instance(&bad).failed_checks();
                    let want: Vec<String> = kind.target_check().into_iter().map(String::from).collect();
                    assert_eq!(failed, want, "seed {seed}, {kind}");
                    if kind == DefectKind::BreakPurity {
                        seen_purity = true;
                    }
                }
                Err(FixtureError::NotApplicable(_)) => {
                    assert_eq!(kind, DefectKind::BreakPurity);
                    assert!(inst.data.k1.invariant_factors().is_empty());
                }
                Err(e) => panic!("seed {seed}, {kind}: {e}"),
            }
        }
    }
    assert!(seen_purity);
}

#[test]
fn no_defect_is_identity() {
    let inst = random_instance(3, &RandomBounds::default());
    assert_eq!(plant_defect(&inst, DefectKind::None).unwrap(), inst);
}

#[test]
fn defect_kind_names_round_trip() {
    for kind in DefectKind::ALL {
        assert_eq!(kind.name().parse::<DefectKind>().unwrap(), kind);
    }
    assert!("break-everything".parse::<DefectKind>().is_err());
}

#[test]
fn dp_valid_depths_pass() {
    for p in [2, 3] {
        for m in 1..=3 {
            for k in 0..m {
                let inst = dp_truncation(p, m, k).unwrap();
                let r = validate_instance(&inst);
                assert!(r.all_passed(), "p={p} m={m} k={k}: {r}");
                assert_eq!(inst.data.k1, FgGroup::cyclic(p));
            }
        }
    }
}

#[test]
fn dp_over_deep_ideal_fails_exactness() {
    for p in [2, 3] {
        for m in 1..=3 {
            let inst = dp_truncation(p, m, m).unwrap();
            let r = validate_instance(&inst);
            assert_eq!(r.failed_checks(), vec![IDEAL_EXACTNESS.to_string()], "p={p} m={m}");
            let f = r.first_failure(IDEAL_EXACTNESS).unwrap();
            assert_eq!(f.scope, format!("I{m}"));
            let w = f.witness.as_ref().unwrap();
            assert_eq!(w.group, "K1");
            assert_eq!(w.element, vec![1]);
        }
    }
}

#[test]
fn dp_params_are_checked() {
    assert!(DpTruncation::new(4, 1, 0).is_err());
    assert!(DpTruncation::new(2, 0, 0).is_err());
    assert!(DpTruncation::new(2, 1, 2).is_err());
}

#[test]
fn dp_feasible_counts() {
    assert_eq!(DpTruncation::new(2, 1, 0).unwrap().feasible_count(), 2);
    assert_eq!(DpTruncation::new(3, 3, 0).unwrap().feasible_count(), 3u64.pow(5));
    assert_eq!(DpTruncation::new(3, 3, 3).unwrap().feasible_count(), 0);
}

#[test]
fn aligned_families_are_coherent() {
    let parts = [FgGroup::cyclic(8), FgGroup::cyclic(12), FgGroup::free(1)];
    let spec = LatticeSpec::chain(3, &[1], &[1, 2, 2]);
    for chain in [[2u64, 4, 8], [2, 6, 12]] {
        let inst = aligned_family(1, &parts, &chain, &spec).unwrap();
        let fam = inst.family.as_ref().unwrap();
        let r = check_coherence(fam).unwrap();
        assert!(r.all_passed(), "{chain:?}: {r}");
        assert!(check_family_coherence(fam).unwrap());
        assert!(validate_instance(&inst).all_passed());
    }
}
