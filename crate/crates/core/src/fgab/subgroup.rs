use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_traits::Zero;

use super::error::{GroupError, GroupResult};
use super::group::{group_from_presentation, Element, FgGroup, Presented};
use super::hom::GroupHom;
use super::matrix::{Int, Matrix};
use super::smith::{hnf, hnf_solve, kernel as int_kernel};
use super::partial::{extend_hom, SubgroupHom};

/// Subgroup of an ambient [`FgGroup`].
///
/// Internally the subgroup is the lattice `L` of integer coordinate vectors
/// that represent its elements (so `L` always contains the relation lattice of
/// the ambient group). `L` is kept in Hermite normal form, which makes
/// equality a matrix comparison; the canonical generators are the reduced
/// non-zero rows of that basis.
#[derive(Clone)]
pub struct Subgroup {
    ambient: FgGroup,
    lattice: Matrix,
    generators: Vec<Element>,
    structure: OnceLock<Arc<SubgroupStructure>>,
}

/// A subgroup viewed as an abstract group in its own right.
#[derive(Clone, Debug)]
pub struct SubgroupStructure {
    /// Canonical form of the subgroup.
    pub group: FgGroup,
    /// Embedding of `group` into the ambient group.
    pub inclusion: GroupHom,
    presented: Presented,
}

impl Subgroup {
    pub fn new(ambient: FgGroup, gens: Vec<Element>) -> GroupResult<Self> {
        for g in &gens {
            ambient.check(g)?;
        }
        let mut rows: Vec<Vec<Int>> = gens.iter().map(|g| ambient.reduce(g)).collect();
        rows.extend(ambient.relation_rows().row_vecs());
        let lattice = hnf(&Matrix::from_rows(ambient.dim(), rows));
        let generators = lattice
            .row_vecs()
            .into_iter()
            .map(|r| ambient.reduce(&r))
            .filter(|r| r.iter().any(|v| !v.is_zero()))
            .collect();
        Ok(Subgroup {
            ambient,
            lattice,
            generators,
            structure: OnceLock::new(),
        })
    }

    pub fn zero(ambient: &FgGroup) -> Self {
        Subgroup::new(ambient.clone(), Vec::new()).expect("no generators")
    }

    pub fn whole(ambient: &FgGroup) -> Self {
        let gens = (0..ambient.dim()).map(|i| ambient.generator(i)).collect();
        Subgroup::new(ambient.clone(), gens).expect("unit vectors")
    }

    pub fn ambient(&self) -> &FgGroup {
        &self.ambient
    }

    /// Canonical generators; two equal subgroups have identical lists.
    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    /// Hermite basis of the lattice of representatives.
    pub fn lattice_basis(&self) -> &Matrix {
        &self.lattice
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.lattice == Matrix::identity(self.ambient.dim())
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        x.len() == self.ambient.dim() && hnf_solve(&self.lattice, &self.ambient.reduce(x)).is_some()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.ambient == other.ambient && self.generators.iter().all(|g| other.contains(g))
    }

    fn same_ambient(&self, other: &Subgroup) -> GroupResult<()> {
        if self.ambient != other.ambient {
            return Err(GroupError::AmbientMismatch);
        }
        Ok(())
    }

    /// Subgroup generated by both.
    pub fn join(&self, other: &Subgroup) -> GroupResult<Subgroup> {
        self.same_ambient(other)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Subgroup::new(self.ambient.clone(), gens)
    }

    /// Intersection, computed from the integer solutions of `a B1 = b B2`.
    pub fn meet(&self, other: &Subgroup) -> GroupResult<Subgroup> {
        self.same_ambient(other)?;
        let b1t = self.lattice.transpose();
        let b2t = other.lattice.transpose();
        let a = b1t.hstack(&b2t.scale(&Int::from(-1)));
        let k1 = self.lattice.rows();
        let gens = int_kernel(&a)
            .row_vecs()
            .into_iter()
            .map(|r| self.ambient.reduce(&b1t.mul_vec(&r[..k1])))
            .collect();
        Subgroup::new(self.ambient.clone(), gens)
    }

    pub fn order(&self) -> Option<Int> {
        self.structure().group.order()
    }

    /// The subgroup as an abstract group, with its embedding.
    pub fn structure(&self) -> &SubgroupStructure {
        self.structure.get_or_init(|| Arc::new(self.compute_structure()))
    }

    fn compute_structure(&self) -> SubgroupStructure {
        let k = self.lattice.rows();
        let rel_rows: Vec<Vec<Int>> = self
            .ambient
            .relation_rows()
            .row_vecs()
            .iter()
            .map(|r| hnf_solve(&self.lattice, r).expect("lattice contains the relations"))
            .collect();
        let presented = group_from_presentation(&Matrix::from_rows(k, rel_rows));
        let images = presented
            .from_canon
            .col_vecs()
            .iter()
            .map(|c| self.ambient.reduce(&self.lattice.transpose().mul_vec(c)))
            .collect();
        let inclusion =
            GroupHom::from_images(presented.group.clone(), self.ambient.clone(), images)
                .expect("subgroup embedding is a hom");
        SubgroupStructure {
            group: presented.group.clone(),
            inclusion,
            presented,
        }
    }

    /// Coordinates of a member in the canonical group of the subgroup.
    pub fn coords(&self, x: &[Int]) -> GroupResult<Element> {
        self.ambient.check(x)?;
        let y = hnf_solve(&self.lattice, &self.ambient.reduce(x))
            .ok_or_else(|| GroupError::NotAMember(format!("{x:?}")))?;
        Ok(self.structure().presented.canon(&y))
    }

    /// Inclusion between the canonical groups of `self ⊆ bigger`.
    pub fn inclusion_into(&self, bigger: &Subgroup) -> GroupResult<GroupHom> {
        self.same_ambient(bigger)?;
        let own = self.structure();
        let images = (0..own.group.dim())
            .map(|j| bigger.coords(&own.inclusion.image_of_generator(j)))
            .collect::<GroupResult<Vec<_>>>()
            .map_err(|_| GroupError::NotContained)?;
        GroupHom::from_images(own.group.clone(), bigger.structure().group.clone(), images)
    }

    /// `G[n] ∩ self`, i.e. the `n`-torsion of the subgroup.
    pub fn n_torsion(&self, n: &Int) -> Subgroup {
        let own = self.structure();
        let inner = super::functor::n_torsion(&own.group, n);
        let gens = inner
            .generators()
            .iter()
            .map(|g| own.inclusion.apply(g))
            .collect();
        Subgroup::new(self.ambient.clone(), gens).expect("ambient elements")
    }

    /// Purity via the summand criterion: a retraction `G -> H` restricting to
    /// the identity on `H` exists.
    pub fn is_pure(&self) -> bool {
        self.retraction().is_some()
    }

    /// A hom `G -> H` (into the canonical group of `H`) that is the identity on
    /// `H`, if one exists.
    pub fn retraction(&self) -> Option<GroupHom> {
        let own = self.structure();
        let id = SubgroupHom::new(self.clone(), GroupHom::identity(&own.group)).ok()?;
        extend_hom(&id)
    }

    /// `G / H` with its projection.
    pub fn quotient(&self) -> (FgGroup, GroupHom) {
        let pres = group_from_presentation(&self.lattice);
        let proj = GroupHom::new(self.ambient.clone(), pres.group.clone(), pres.to_canon)
            .expect("projection is a hom");
        (pres.group, proj)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.lattice == other.lattice
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.lattice.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("({})", g.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "<{}> in {}", gens.join(", "), self.ambient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::matrix::int;

    fn z() -> FgGroup {
        FgGroup::free(1)
    }

    fn multiples(k: i64) -> Subgroup {
        Subgroup::new(z(), vec![vec![int(k)]]).unwrap()
    }

    #[test]
    fn meet_with_whole_is_identity() {
        let h = multiples(4);
        assert_eq!(h.meet(&Subgroup::whole(&z())).unwrap(), h);
    }

    #[test]
    fn join_and_meet_in_z() {
        assert!(multiples(2).join(&multiples(3)).unwrap().is_whole());
        assert_eq!(multiples(2).meet(&multiples(3)).unwrap(), multiples(6));
    }

    #[test]
    fn equality_ignores_generating_set() {
        let g = FgGroup::from_i64(&[2, 4], 0).unwrap();
        let a = Subgroup::new(g.clone(), vec![vec![int(1), int(2)], vec![int(0), int(2)]]).unwrap();
        let b = Subgroup::new(g.clone(), vec![vec![int(1), int(0)], vec![int(1), int(2)]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.generators(), b.generators());
    }

    #[test]
    fn structure_of_subgroup() {
        let g = FgGroup::from_i64(&[4], 1).unwrap();
        let h = Subgroup::new(g.clone(), vec![vec![int(2), int(0)], vec![int(0), int(3)]]).unwrap();
        let s = h.structure();
        assert_eq!(s.group, FgGroup::from_i64(&[2], 1).unwrap());
        assert!(s.inclusion.is_injective());
        assert_eq!(s.inclusion.image(), h);
        let c = h.coords(&[int(2), int(6)]).unwrap();
        assert_eq!(s.inclusion.apply(&c), vec![int(2), int(6)]);
        assert!(h.coords(&[int(1), int(0)]).is_err());
    }

    #[test]
    fn purity_examples() {
        // 2Z in Z is not pure
        assert!(!multiples(2).is_pure());
        // torsion subgroup is pure
        let g = FgGroup::from_i64(&[2], 1).unwrap();
        let tor = Subgroup::new(g.clone(), vec![vec![int(1), int(0)]]).unwrap();
        assert!(tor.is_pure());
        // <(1bar, 1)> in Z/2 + Z has complement <(1bar, 0)>
        let diag = Subgroup::new(g.clone(), vec![vec![int(1), int(1)]]).unwrap();
        assert!(diag.is_pure());
        // 2(Z/4) in Z/4 is not pure
        let z4 = FgGroup::from_i64(&[4], 0).unwrap();
        assert!(!Subgroup::new(z4, vec![vec![int(2)]]).unwrap().is_pure());
    }

    #[test]
    fn quotient_examples() {
        // (Z + Z/2) / <(1, 1bar)> = Z/2, written in canonical order (Z/2, Z)
        let g = FgGroup::from_i64(&[2], 1).unwrap();
        let h = Subgroup::new(g.clone(), vec![vec![int(1), int(1)]]).unwrap();
        let (q, proj) = h.quotient();
        assert_eq!(q, FgGroup::cyclic(2));
        assert!(proj.is_surjective());
        assert_eq!(proj.kernel(), h);
    }

    #[test]
    fn inclusion_between_subgroups() {
        let g = FgGroup::from_i64(&[8], 0).unwrap();
        let small = Subgroup::new(g.clone(), vec![vec![int(4)]]).unwrap();
        let big = Subgroup::new(g.clone(), vec![vec![int(2)]]).unwrap();
        let inc = small.inclusion_into(&big).unwrap();
        assert!(inc.is_injective());
        assert!(big.inclusion_into(&small).is_err());
    }
}
