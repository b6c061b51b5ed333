//! Moving instances along isomorphisms, and the random maps used to do so.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::fgab::{tensor_hom, Element, FgGroup, GroupHom, Int, Matrix};
use crate::kunneth::{CoeffGroup, IdealNode, KData, KunnethInstance};

use super::FixtureError;

/// Uniform element of a finite group; free coordinates drawn from `-2..=2`.
pub fn random_element<R: Rng>(g: &FgGroup, rng: &mut R) -> Element {
    g.moduli()
        .iter()
        .map(|d| {
            if d.is_zero() {
                Int::from(rng.gen_range(-2i64..=2))
            } else {
                let top = u64::try_from(d).expect("small modulus");
                Int::from(rng.gen_range(0..top))
            }
        })
        .collect()
}

/// A random hom into a finite codomain.
pub fn random_hom<R: Rng>(domain: &FgGroup, codomain: &FgGroup, rng: &mut R) -> GroupHom {
    let e = codomain.torsion_exponent();
    let images = domain
        .moduli()
        .iter()
        .map(|d| {
            let r = random_element(codomain, rng);
            if d.is_zero() || !codomain.is_finite() {
                if codomain.is_finite() {
                    r
                } else {
                    codomain.zero()
                }
            } else {
                codomain.scale(&(&e / e.gcd(d)), &r)
            }
        })
        .collect();
    GroupHom::from_images(domain.clone(), codomain.clone(), images).expect("orders respected")
}

/// Product of `steps` random elementary automorphisms: unit rescalings of a
/// generator and shears `e_j -> e_j + c e_i` that respect the relations.
pub fn random_automorphism<R: Rng>(g: &FgGroup, rng: &mut R, steps: usize) -> GroupHom {
    let k = g.dim();
    let mut m = Matrix::identity(k);
    if k == 0 {
        return GroupHom::identity(g);
    }
    let moduli = g.moduli();
    for _ in 0..steps {
        let mut e = Matrix::identity(k);
        let j = rng.gen_range(0..k);
        let i = rng.gen_range(0..k);
        if i == j || rng.gen_bool(0.25) {
            let d = &moduli[j];
            let u = if d.is_zero() {
                Int::from(if rng.gen_bool(0.5) { 1 } else { -1 })
            } else {
                let units: Vec<i64> = (1..d_small(d)).filter(|u| Int::from(*u).gcd(d).is_one()).collect();
                Int::from(units[rng.gen_range(0..units.len())])
            };
            e[(j, j)] = u;
        } else {
            // e_j -> e_j + c e_i needs d_j c e_i = 0
            let (dj, di) = (&moduli[j], &moduli[i]);
            let c = if di.is_zero() {
                if dj.is_zero() {
                    Int::from(rng.gen_range(-2i64..=2))
                } else {
                    Int::zero()
                }
            } else {
                let step = di / di.gcd(dj);
                &step * Int::from(rng.gen_range(0i64..4))
            };
            e[(i, j)] = c;
        }
        m = m.mul(&e);
    }
    let f = GroupHom::new(g.clone(), g.clone(), m).expect("elementary maps are homs");
    debug_assert!(f.is_isomorphism());
    f
}

fn d_small(d: &Int) -> i64 {
    i64::try_from(d.abs()).expect("small modulus")
}

/// `inst` carried along `(φ0, φ, φ1)`: groups become the codomains, ideal
/// subgroups their images, and `ρ̃' = φρ̃(φ0⊗1)⁻¹`, `β̃' = φ1β̃φ⁻¹`.
pub fn transport(
    inst: &KunnethInstance,
    phi0: &GroupHom,
    phi: &GroupHom,
    phi1: &GroupHom,
) -> Result<KunnethInstance, FixtureError> {
    let bad = |w: &str| FixtureError::BadParams(format!("{w} is not an automorphism of the right group"));
    if phi0.domain() != &inst.data.k0 || !phi0.is_isomorphism() {
        return Err(bad("phi0"));
    }
    if phi.domain() != inst.kn() || !phi.is_isomorphism() {
        return Err(bad("phi"));
    }
    if phi1.domain() != &inst.data.k1 || !phi1.is_isomorphism() {
        return Err(bad("phi1"));
    }
    let n = inst.n();
    let phi0_n_inv = tensor_hom(phi0, n).inverse().expect("iso");
    let rho = phi.compose(inst.rho())?.compose(&phi0_n_inv)?;
    let beta = phi1.compose(inst.beta())?.compose(&phi.inverse().expect("iso"))?;
    let data = KData {
        k0: phi0.codomain().clone(),
        k1: phi1.codomain().clone(),
    };
    let coeff = CoeffGroup::new(&data, n.clone(), phi.codomain().clone(), rho, beta)?;
    let ideals = inst
        .ideals
        .iter()
        .map(|node| -> Result<IdealNode, FixtureError> {
            Ok(IdealNode {
                id: node.id.clone(),
                k0: phi0.image_of(&node.k0)?,
                k1: phi1.image_of(&node.k1)?,
                kn: phi.image_of(&node.kn)?,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(KunnethInstance::new(data, coeff, inst.lattice.clone(), ideals)?)
}

/// `α = id + ρ̃ h β̃` for `h: K1[n] -> K0⊗Z/n` (on the canonical group of
/// `K1[n]`). `α` fixes `im ρ̃` pointwise and satisfies `β̃α = β̃`.
pub fn twist_automorphism(inst: &KunnethInstance, h: &GroupHom) -> Result<GroupHom, FixtureError> {
    let t = inst.k1_torsion();
    let beta_t = inst
        .beta()
        .corestrict(&t)
        .map_err(|_| FixtureError::Internal("beta~ does not land in K1[n]".into()))?;
    let shift = inst.rho().compose(h)?.compose(&beta_t)?;
    Ok(GroupHom::identity(inst.kn()).add(&shift)?)
}

/// Twists the ideal subgroups of `Kn` by [`twist_automorphism`].
pub fn twist(inst: &KunnethInstance, h: &GroupHom) -> Result<KunnethInstance, FixtureError> {
    let alpha = twist_automorphism(inst, h)?;
    transport(
        inst,
        &GroupHom::identity(&inst.data.k0),
        &alpha,
        &GroupHom::identity(&inst.data.k1),
    )
}
