use crate::fgab::{Element, Subgroup};
use crate::report::{ValidationReport, Witness};

use super::KunnethInstance;

pub const K0_TORSION_FREE: &str = "k0-torsion-free";
pub const LATTICE_ORDER: &str = "lattice-order";
pub const MONOTONICITY: &str = "monotonicity";
pub const NATURALITY: &str = "naturality";
pub const IDEAL_EXACTNESS: &str = "ideal-exactness";
pub const PURITY: &str = "purity";
pub const LATTICE_LAW: &str = "lattice-law";
pub const DISTRIBUTIVITY: &str = "distributivity";

/// Check families in report order.
pub const CHECK_ORDER: [&str; 8] = [
    K0_TORSION_FREE,
    LATTICE_ORDER,
    MONOTONICITY,
    NATURALITY,
    IDEAL_EXACTNESS,
    PURITY,
    LATTICE_LAW,
    DISTRIBUTIVITY,
];

type Outcome = Result<(), (String, Option<Witness>)>;

/// First canonical generator of `a` outside `b`.
pub(crate) fn first_outside(a: &Subgroup, b: &Subgroup) -> Option<Element> {
    a.generators().iter().find(|g| !b.contains(g)).cloned()
}

fn contained(a: &Subgroup, b: &Subgroup, what: &str, group: &str) -> Outcome {
    match first_outside(a, b) {
        None => Ok(()),
        Some(x) => Err((what.to_string(), Some(Witness::new(group, &x)))),
    }
}

fn equal(a: &Subgroup, b: &Subgroup, what: &str, group: &str) -> Outcome {
    contained(a, b, what, group)?;
    contained(b, a, what, group)
}

/// Runs every structural check, in the fixed order of [`CHECK_ORDER`].
pub fn validate_instance(inst: &KunnethInstance) -> ValidationReport {
    let mut r = ValidationReport::new();
    let lat = &inst.lattice;
    let name = |i: usize| lat.id(i).to_string();

    // k0-torsion-free
    let k0 = &inst.data.k0;
    if k0.is_torsion_free() {
        r.pass(K0_TORSION_FREE, "K0");
    } else {
        r.fail(
            K0_TORSION_FREE,
            "K0",
            format!("K0 = {k0} has torsion"),
            Some(Witness::new("K0", &k0.generator(0))),
        );
    }

    // lattice-order
    match lat.lattice_witness() {
        None if !lat.is_empty() => r.pass(LATTICE_ORDER, "lattice"),
        None => r.fail(LATTICE_ORDER, "lattice", "no nodes", None),
        Some((a, b)) => r.fail(
            LATTICE_ORDER,
            "lattice",
            format!("{} and {} lack a join or meet", name(a), name(b)),
            None,
        ),
    }
    match lat.bottom() {
        None => r.fail(LATTICE_ORDER, "bottom", "no least element", None),
        Some(b) => {
            let node = inst.ideal(b);
            let outcome = [
                (&node.k0, "K0"),
                (&node.k1, "K1"),
                (&node.kn, "Kn"),
            ]
            .into_iter()
            .find(|(s, _)| !s.is_zero())
            .map_or(Ok(()), |(s, g)| {
                Err((
                    format!("bottom ideal {} has non-zero {g}", node.id),
                    Some(Witness::new(g, &s.generators()[0])),
                ))
            });
            r.record(LATTICE_ORDER, "bottom", outcome);
        }
    }
    match lat.top() {
        None => r.fail(LATTICE_ORDER, "top", "no greatest element", None),
        Some(t) => {
            let node = inst.ideal(t);
            let outcome = [
                (&node.k0, "K0"),
                (&node.k1, "K1"),
                (&node.kn, "Kn"),
            ]
            .into_iter()
            .find(|(s, _)| !s.is_whole())
            .map_or(Ok(()), |(s, g)| {
                let whole = Subgroup::whole(s.ambient());
                Err((
                    format!("top ideal {} does not carry all of {g}", node.id),
                    first_outside(&whole, s).map(|x| Witness::new(g, &x)),
                ))
            });
            r.record(LATTICE_ORDER, "top", outcome);
        }
    }

    // monotonicity
    for &(a, b) in lat.covers() {
        let (x, y) = (inst.ideal(a), inst.ideal(b));
        let scope = format!("{} <= {}", x.id, y.id);
        let outcome = contained(&x.k0, &y.k0, "K0 not monotone", &format!("K0({})", x.id))
            .and_then(|_| contained(&x.k1, &y.k1, "K1 not monotone", &format!("K1({})", x.id)))
            .and_then(|_| contained(&x.kn, &y.kn, "Kn not monotone", &format!("Kn({})", x.id)));
        r.record(MONOTONICITY, scope, outcome);
    }

    // naturality
    for i in 0..lat.len() {
        let node = inst.ideal(i);
        let rho_img = inst.rho_image(i);
        let beta_img = inst.beta().image_of(&node.kn).expect("same ambient");
        let outcome = contained(&rho_img, &node.kn, "rho~ does not preserve the ideal", "Kn")
            .and_then(|_| contained(&beta_img, &node.k1, "beta~ does not preserve the ideal", "K1"));
        r.record(NATURALITY, node.id.clone(), outcome);
    }

    // ideal-exactness, the whole row first
    r.record(IDEAL_EXACTNESS, "whole", whole_row_exactness(inst));
    for i in 0..lat.len() {
        r.record(IDEAL_EXACTNESS, name(i), ideal_row_exactness(inst, i));
    }

    // purity
    for i in 0..lat.len() {
        let node = inst.ideal(i);
        let outcome = if !node.k0.is_pure() {
            Err((format!("K0({}) is not pure in K0", node.id), None))
        } else if !node.k1.is_pure() {
            Err((format!("K1({}) is not pure in K1", node.id), None))
        } else {
            Ok(())
        };
        r.record(PURITY, node.id.clone(), outcome);
    }

    // lattice-law on incomparable pairs; comparable pairs reduce to monotonicity
    for a in 0..lat.len() {
        for b in a + 1..lat.len() {
            if lat.leq(a, b) || lat.leq(b, a) {
                continue;
            }
            let (Some(m), Some(j)) = (lat.meet(a, b), lat.join(a, b)) else {
                continue;
            };
            let scope = format!("{}, {}", name(a), name(b));
            r.record(LATTICE_LAW, scope, lattice_law(inst, a, b, m, j));
        }
    }

    // distributivity
    match lat.distributivity_witness() {
        None => r.pass(DISTRIBUTIVITY, "lattice"),
        Some((a, b, c)) => r.fail(
            DISTRIBUTIVITY,
            "lattice",
            format!("{} ∧ ({} ∨ {}) differs from the distributed form", name(a), name(b), name(c)),
            None,
        ),
    }
    r
}

fn whole_row_exactness(inst: &KunnethInstance) -> Outcome {
    let rho = inst.rho();
    let beta = inst.beta();
    let ker_rho = rho.kernel();
    if let Some(x) = ker_rho.generators().first() {
        return Err(("rho~ is not injective".into(), Some(Witness::new("K0/n", x))));
    }
    let br = beta.compose(rho).expect("composable");
    if let Some(j) = (0..br.domain().dim()).find(|&j| !br.codomain().is_zero(&br.image_of_generator(j))) {
        return Err((
            "beta~ rho~ is non-zero".into(),
            Some(Witness::new("K0/n", &rho.domain().generator(j))),
        ));
    }
    equal(&beta.kernel(), &rho.image(), "ker beta~ differs from im rho~", "Kn")?;
    let t = inst.k1_torsion();
    equal(&beta.image(), &t, "im beta~ differs from K1[n]", "K1")
}

fn ideal_row_exactness(inst: &KunnethInstance, i: usize) -> Outcome {
    let node = inst.ideal(i);
    let a = inst.k0_reduced(i);
    let lost = inst.rho().kernel().meet(&a).expect("same ambient");
    if let Some(x) = lost.generators().first() {
        return Err((
            format!("rho~ is not injective on K0({})/n", node.id),
            Some(Witness::new("K0/n", x)),
        ));
    }
    let ker = inst.beta().kernel().meet(&node.kn).expect("same ambient");
    contained(
        &ker,
        &inst.rho_image(i),
        &format!("ker beta~ in Kn({}) exceeds the image of K0({})", node.id, node.id),
        "Kn",
    )?;
    let img = inst.beta().image_of(&node.kn).expect("same ambient");
    contained(
        &inst.k1_torsion_of(i),
        &img,
        &format!("beta~ does not map Kn({}) onto K1({})[n]", node.id, node.id),
        "K1",
    )
}

fn lattice_law(inst: &KunnethInstance, a: usize, b: usize, m: usize, j: usize) -> Outcome {
    let (x, y) = (inst.ideal(a), inst.ideal(b));
    let (mm, jj) = (inst.ideal(m), inst.ideal(j));
    let parts: [(&Subgroup, &Subgroup, &Subgroup, &Subgroup, &str); 3] = [
        (&x.k0, &y.k0, &mm.k0, &jj.k0, "K0"),
        (&x.k1, &y.k1, &mm.k1, &jj.k1, "K1"),
        (&x.kn, &y.kn, &mm.kn, &jj.kn, "Kn"),
    ];
    for (sx, sy, sm, sj, g) in parts {
        let meet = sx.meet(sy).expect("same ambient");
        equal(&meet, sm, &format!("{g}({}) is not the intersection", mm.id), g)?;
        let join = sx.join(sy).expect("same ambient");
        equal(&join, sj, &format!("{g}({}) is not the sum", jj.id), g)?;
    }
    Ok(())
}
