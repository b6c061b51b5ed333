use kunneth_core::fgab::{FgGroup, GroupHom, Int};
use kunneth_core::fixtures::{
    aligned_family, dp_truncation, plant_defect, random_instance, DefectKind, LatticeSpec, RandomBounds,
};
use kunneth_core::io::*;
use kunneth_core::splitter::{build_ideal_splitting, lift_isomorphism};

fn round_trip(text: &str) {
    let inst = parse_instance(text).unwrap();
    assert_eq!(instance_to_json(&inst).unwrap(), text);
}

#[test]
fn generated_instances_round_trip_byte_for_byte() {
    let b = RandomBounds::default();
    for seed in 0..30 {
        let inst = random_instance(seed, &b);
        let text = instance_to_json(&inst).unwrap();
        assert_eq!(parse_instance(&text).unwrap(), inst);
        round_trip(&text);
        for kind in DefectKind::ALL {
            if let Ok(bad) = plant_defect(&inst, kind) {
                round_trip(&instance_to_json(&bad).unwrap());
            }
        }
    }
    for (p, m, k) in [(2, 1, 0), (3, 2, 1), (2, 1, 1)] {
        round_trip(&instance_to_json(&dp_truncation(p, m, k).unwrap()).unwrap());
    }
}

#[test]
fn family_block_round_trips() {
    let parts = [FgGroup::cyclic(8), FgGroup::cyclic(12)];
    let spec = LatticeSpec::chain(3, &[1], &[1, 2]);
    let inst = aligned_family(1, &parts, &[2, 6, 12], &spec).unwrap();
    let text = instance_to_json(&inst).unwrap();
    assert!(text.contains("coherent_family"));
    let back = parse_instance(&text).unwrap();
    assert_eq!(back, inst);
    round_trip(&text);
}

#[test]
fn splitting_files_round_trip() {
    let b = RandomBounds::default();
    for seed in 0..20 {
        let inst = random_instance(seed, &b);
        let fam = build_ideal_splitting(&inst).unwrap();
        let text = splitting_to_json(&inst, &fam).unwrap();
        let back = parse_splitting(&text, &inst).unwrap();
        assert_eq!(back, fam);
        assert_eq!(splitting_to_json(&inst, &back).unwrap(), text);
    }
}

#[test]
fn iso_files_round_trip() {
    let inst = random_instance(2, &RandomBounds::default());
    let pairing: Vec<(String, String)> = inst.lattice.ids().iter().map(|s| (s.clone(), s.clone())).collect();
    let iso = lift_isomorphism(
        &inst,
        &inst,
        &GroupHom::identity(&inst.data.k0),
        &GroupHom::identity(&inst.data.k1),
        &pairing,
    )
    .unwrap();
    let text = iso_to_json(&iso).unwrap();
    let rec = parse_iso_record(&text).unwrap();
    let (phi0, phi1, pairs) = iso_inputs(&rec, &inst, &inst).unwrap();
    assert_eq!(phi0, iso.phi0);
    assert_eq!(phi1, iso.phi1);
    assert_eq!(pairs, pairing);
    assert_eq!(to_canonical_json(&rec), text);
}

fn mutate(text: &str, from: &str, to: &str) -> String {
    assert!(text.contains(from), "{from}");
    text.replacen(from, to, 1)
}

#[test]
fn malformed_inputs_are_rejected() {
    let inst = dp_truncation(2, 1, 0).unwrap();
    let text = instance_to_json(&inst).unwrap();
    assert!(matches!(parse_instance("{"), Err(IoError::Json(_))));
    assert!(matches!(parse_instance(&mutate(&text, "\"1\"", "\"2\"")), Err(IoError::Schema(_))));
    // rho_tilde declared 3x2 but given as 4 rows
    let bad_shape = mutate(&text, "\"rows\": 3", "\"rows\": 4");
    assert!(parse_instance(&bad_shape).is_err());
    let extra = mutate(&text, "\"n\": 2", "\"n\": 2,\n  \"extra\": 0");
    assert!(matches!(parse_instance(&extra), Err(IoError::Json(_))));
    let bad_factor = mutate(&text, "\"invariant_factors\": [2]", "\"invariant_factors\": [1]");
    assert!(matches!(parse_instance(&bad_factor), Err(IoError::Group(_))));
    let bad_n = mutate(&text, "\"n\": 2", "\"n\": 1");
    assert!(parse_instance(&bad_n).is_err());
}

#[test]
fn dp_fixture_text_is_stable() {
    let a = instance_to_json(&dp_truncation(2, 1, 0).unwrap()).unwrap();
    let b = instance_to_json(&dp_truncation(2, 1, 0).unwrap()).unwrap();
    assert_eq!(a, b);
    assert!(a.starts_with("{\n  \"groups\""));
    assert!(a.ends_with("}\n"));
    let inst = parse_instance(&a).unwrap();
    assert_eq!(inst.n(), &Int::from(2));
}
