//! The functors `- ⊗ Z/n`, `-[n]` and `tor`, with their action on homs.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::group::FgGroup;
use super::hom::GroupHom;
use super::matrix::{reduce, Int, Matrix};
use super::subgroup::Subgroup;

/// `G ⊗ Z/n` together with the reduction `π: G -> G ⊗ Z/n`.
///
/// Coordinate `i` of `G` maps to `Z/gcd(d_i, n)` (free coordinates to `Z/n`);
/// coordinates that collapse to `Z/1` are dropped. The surviving moduli are
/// already a divisor chain, so no Smith step is needed.
pub fn tensor_zmod(g: &FgGroup, n: &Int) -> (FgGroup, GroupHom) {
    assert!(n.is_positive(), "coefficient must be positive");
    let kept = tensor_kept(g, n);
    let factors: Vec<Int> = kept.iter().map(|(_, m)| m.clone()).collect();
    let t = FgGroup::new(factors, 0).expect("gcds form a chain");
    let mut m = Matrix::zeros(kept.len(), g.dim());
    for (k, (i, _)) in kept.iter().enumerate() {
        m[(k, *i)] = Int::one();
    }
    let pi = GroupHom::new(g.clone(), t.clone(), m).expect("reduction is a hom");
    (t, pi)
}

fn tensor_kept(g: &FgGroup, n: &Int) -> Vec<(usize, Int)> {
    g.moduli()
        .iter()
        .enumerate()
        .map(|(i, d)| (i, if d.is_zero() { n.clone() } else { d.gcd(n) }))
        .filter(|(_, m)| !m.is_one())
        .collect()
}

/// `f ⊗ id: G ⊗ Z/n -> G' ⊗ Z/n`.
pub fn tensor_hom(f: &GroupHom, n: &Int) -> GroupHom {
    let (src, _) = tensor_zmod(f.domain(), n);
    let (dst, pi_dst) = tensor_zmod(f.codomain(), n);
    let images = tensor_kept(f.domain(), n)
        .iter()
        .map(|(j, _)| pi_dst.apply(&f.image_of_generator(*j)))
        .collect();
    GroupHom::from_images(src, dst, images).expect("tensoring preserves homs")
}

/// `G[n] = { g : n g = 0 }`.
pub fn n_torsion(g: &FgGroup, n: &Int) -> Subgroup {
    assert!(n.is_positive(), "coefficient must be positive");
    let gens = g
        .invariant_factors()
        .iter()
        .enumerate()
        .map(|(i, d)| g.scale(&(d / d.gcd(n)), &g.generator(i)))
        .collect();
    Subgroup::new(g.clone(), gens).expect("coordinate vectors")
}

/// The torsion subgroup.
pub fn torsion(g: &FgGroup) -> Subgroup {
    let gens = (0..g.torsion_rank()).map(|i| g.generator(i)).collect();
    Subgroup::new(g.clone(), gens).expect("coordinate vectors")
}

/// Restriction of `f` to `s -> t` as a hom between the canonical groups of
/// the two subgroups; `None` if `f(s)` is not inside `t`.
pub fn restrict(f: &GroupHom, s: &Subgroup, t: &Subgroup) -> Option<GroupHom> {
    let src = s.structure();
    let images = (0..src.group.dim())
        .map(|j| t.coords(&f.apply(&src.inclusion.image_of_generator(j))).ok())
        .collect::<Option<Vec<_>>>()?;
    GroupHom::from_images(src.group.clone(), t.structure().group.clone(), images).ok()
}

/// `f[n]: G[n] -> G'[n]`.
pub fn n_torsion_hom(f: &GroupHom, n: &Int) -> GroupHom {
    restrict(f, &n_torsion(f.domain(), n), &n_torsion(f.codomain(), n))
        .expect("homs preserve n-torsion")
}

/// Residue of `x` modulo each coordinate of `g`; convenience for callers
/// building elements from raw integers.
pub fn element_from_i64(g: &FgGroup, x: &[i64]) -> Vec<Int> {
    g.moduli()
        .iter()
        .zip(x)
        .map(|(d, v)| reduce(&Int::from(*v), d))
        .collect()
}
