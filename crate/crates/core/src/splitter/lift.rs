//! Lifting `(φ0, φ1)` to `φ: Kn(A) -> Kn(B)` through ideal splittings:
//! `φ(ρ̃(u) + σ(v)) = ρ̃(φ0⊗1 · u) + τ(φ1 v)`.

use crate::fgab::{tensor_hom, GroupHom, Subgroup, SubgroupHom};
use crate::kunneth::KunnethInstance;

use super::build::build_ideal_splitting;
use super::{SplitResult, SplitterError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexIso {
    pub phi0: GroupHom,
    pub phi: GroupHom,
    pub phi1: GroupHom,
    /// `(id in A, id in B)`, in the node order of `A`.
    pub pairing: Vec<(String, String)>,
}

/// Node map `A -> B` from a pairing table; must be a bijection preserving
/// and reflecting the order.
fn resolve_pairing(a: &KunnethInstance, b: &KunnethInstance, pairing: &[(String, String)]) -> SplitResult<Vec<usize>> {
    let (la, lb) = (&a.lattice, &b.lattice);
    let bad = |ideal: &str, detail: &str| SplitterError::PairingNotRespected {
        ideal: ideal.to_string(),
        detail: detail.to_string(),
    };
    if la.len() != lb.len() {
        return Err(bad("*", "lattices have different sizes"));
    }
    let mut map: Vec<Option<usize>> = vec![None; la.len()];
    let mut hit = vec![false; lb.len()];
    for (x, y) in pairing {
        let i = la.index(x).map_err(|_| bad(x, "not a node of the first instance"))?;
        let j = lb.index(y).map_err(|_| bad(y, "not a node of the second instance"))?;
        if map[i].is_some() || hit[j] {
            return Err(bad(x, "paired twice"));
        }
        map[i] = Some(j);
        hit[j] = true;
    }
    let map: Vec<usize> = map
        .into_iter()
        .enumerate()
        .map(|(i, m)| m.ok_or_else(|| bad(la.id(i), "unpaired")))
        .collect::<SplitResult<_>>()?;
    for i in 0..la.len() {
        for k in 0..la.len() {
            if la.leq(i, k) != lb.leq(map[i], map[k]) {
                return Err(bad(la.id(i), &format!("order with {} is not preserved", la.id(k))));
            }
        }
    }
    Ok(map)
}

/// Builds both splittings with the default strategy, then lifts.
pub fn lift_isomorphism(
    a: &KunnethInstance,
    b: &KunnethInstance,
    phi0: &GroupHom,
    phi1: &GroupHom,
    pairing: &[(String, String)],
) -> SplitResult<ComplexIso> {
    check_hypotheses(a, b, phi0, phi1, pairing)?;
    let sa = build_ideal_splitting(a)?;
    let sb = build_ideal_splitting(b)?;
    let (sigma, tau) = (sa.top(a).expect("top"), sb.top(b).expect("top"));
    lift_with_splittings(a, b, phi0, phi1, pairing, sigma, tau)
}

fn check_hypotheses(
    a: &KunnethInstance,
    b: &KunnethInstance,
    phi0: &GroupHom,
    phi1: &GroupHom,
    pairing: &[(String, String)],
) -> SplitResult<Vec<usize>> {
    if phi0.domain() != &a.data.k0 || phi0.codomain() != &b.data.k0 || !phi0.is_isomorphism() {
        return Err(SplitterError::NotAnIsomorphism("phi0"));
    }
    if phi1.domain() != &a.data.k1 || phi1.codomain() != &b.data.k1 || !phi1.is_isomorphism() {
        return Err(SplitterError::NotAnIsomorphism("phi1"));
    }
    if a.n() != b.n() {
        return Err(SplitterError::LiftCheck("coefficients differ".into()));
    }
    let map = resolve_pairing(a, b, pairing)?;
    for (i, &j) in map.iter().enumerate() {
        let (x, y) = (a.ideal(i), b.ideal(j));
        let bad = |g: &str| SplitterError::PairingNotRespected {
            ideal: x.id.clone(),
            detail: format!("phi applied to {g}({}) is not {g}({})", x.id, y.id),
        };
        if phi0.image_of(&x.k0)? != y.k0 {
            return Err(bad("K0"));
        }
        if phi1.image_of(&x.k1)? != y.k1 {
            return Err(bad("K1"));
        }
    }
    Ok(map)
}

/// The lift through given top splittings `σ` of `A` and `τ` of `B`, checked
/// for commutation, invertibility, and ideal preservation both ways.
pub fn lift_with_splittings(
    a: &KunnethInstance,
    b: &KunnethInstance,
    phi0: &GroupHom,
    phi1: &GroupHom,
    pairing: &[(String, String)],
    sigma: &SubgroupHom,
    tau: &SubgroupHom,
) -> SplitResult<ComplexIso> {
    let map = check_hypotheses(a, b, phi0, phi1, pairing)?;
    let n = a.n();
    let phi0_n = tensor_hom(phi0, n);
    let (kna, knb) = (a.kn(), b.kn());
    let mut images = Vec::with_capacity(kna.dim());
    for j in 0..kna.dim() {
        let x = kna.generator(j);
        let v = a.beta().apply(&x);
        let rest = kna.sub(&x, &sigma.eval(&v)?);
        let u = a
            .rho()
            .lift(&rest)
            .ok_or_else(|| SplitterError::LiftCheck("x - sigma(beta~ x) is not in im rho~".into()))?;
        let left = b.rho().apply(&phi0_n.apply(&u));
        let right = tau.eval(&phi1.apply(&v))?;
        images.push(knb.add(&left, &right));
    }
    let phi = GroupHom::from_images(kna.clone(), knb.clone(), images)?;

    if phi.compose(a.rho())? != b.rho().compose(&phi0_n)? {
        return Err(SplitterError::LiftCheck("phi rho~_A = rho~_B (phi0 ⊗ 1)".into()));
    }
    if b.beta().compose(&phi)? != phi1.compose(a.beta())? {
        return Err(SplitterError::LiftCheck("beta~_B phi = phi1 beta~_A".into()));
    }
    let inv = phi.inverse().ok_or(SplitterError::NotAnIsomorphism("phi"))?;
    for (i, &j) in map.iter().enumerate() {
        let (x, y): (&Subgroup, &Subgroup) = (&a.ideal(i).kn, &b.ideal(j).kn);
        if &phi.image_of(x)? != y || &inv.image_of(y)? != x {
            return Err(SplitterError::PairingNotRespected {
                ideal: a.lattice.id(i).to_string(),
                detail: format!("phi(Kn({})) is not Kn({})", a.lattice.id(i), b.lattice.id(j)),
            });
        }
    }
    let pairing = (0..a.lattice.len())
        .map(|i| (a.lattice.id(i).to_string(), b.lattice.id(map[i]).to_string()))
        .collect();
    Ok(ComplexIso {
        phi0: phi0.clone(),
        phi,
        phi1: phi1.clone(),
        pairing,
    })
}
