use super::error::{GroupError, GroupResult};
use super::group::{Element, FgGroup};
use super::hom::GroupHom;
use super::matrix::{Int, Matrix};
use super::solve::Congruences;
use super::subgroup::Subgroup;

/// A hom defined on a subgroup `H ⊆ G`, stored on the canonical group of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupHom {
    domain: Subgroup,
    map: GroupHom,
}

impl SubgroupHom {
    pub fn new(domain: Subgroup, map: GroupHom) -> GroupResult<Self> {
        if map.domain() != &domain.structure().group {
            return Err(GroupError::AmbientMismatch);
        }
        Ok(SubgroupHom { domain, map })
    }

    /// Restriction of a hom on the whole ambient group.
    pub fn restrict(f: &GroupHom, domain: &Subgroup) -> GroupResult<Self> {
        if f.domain() != domain.ambient() {
            return Err(GroupError::AmbientMismatch);
        }
        let map = f.compose(&domain.structure().inclusion)?;
        Ok(SubgroupHom {
            domain: domain.clone(),
            map,
        })
    }

    /// From images of the canonical generators of `domain`, given as
    /// ambient elements. Fails when the images violate a relation.
    pub fn from_ambient_images(
        domain: Subgroup,
        codomain: FgGroup,
        images: Vec<Element>,
    ) -> GroupResult<Self> {
        let map = GroupHom::from_images(domain.structure().group.clone(), codomain, images)
            .map_err(|e| match e {
                GroupError::NotAHom { generator } => {
                    GroupError::NotWellDefined(format!("generator {generator}"))
                }
                other => other,
            })?;
        Ok(SubgroupHom { domain, map })
    }

    /// From images of `domain.generators()` (the canonical generator list),
    /// as stored in files. Fails when no hom takes these values.
    pub fn from_generator_images(
        domain: Subgroup,
        codomain: FgGroup,
        images: &[Element],
    ) -> GroupResult<Self> {
        let gens = domain.generators();
        if images.len() != gens.len() {
            return Err(GroupError::DimensionMismatch {
                expected: gens.len(),
                found: images.len(),
            });
        }
        let mut sys = HomSystem::new(&domain.structure().group, &codomain);
        for (g, y) in gens.iter().zip(images) {
            codomain.check(y)?;
            sys.require_value(&domain.coords(g)?, y);
        }
        let map = sys
            .solve()
            .ok_or_else(|| GroupError::NotWellDefined("generator images".into()))?;
        Ok(SubgroupHom { domain, map })
    }

    /// Images of `domain.generators()`.
    pub fn generator_images(&self) -> Vec<Element> {
        self.domain
            .generators()
            .iter()
            .map(|g| self.eval(g).expect("generators are members"))
            .collect()
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgGroup {
        self.map.codomain()
    }

    pub fn map(&self) -> &GroupHom {
        &self.map
    }

    pub fn eval(&self, x: &[Int]) -> GroupResult<Element> {
        Ok(self.map.apply(&self.domain.coords(x)?))
    }

    /// Does the full hom `f` restrict to `self`?
    pub fn is_restriction_of(&self, f: &GroupHom) -> bool {
        f.domain() == self.domain.ambient()
            && f.codomain() == self.codomain()
            && f.compose(&self.domain.structure().inclusion).as_ref() == Ok(&self.map)
    }
}

/// Linear system whose unknown is a hom `F: G -> H`, one block of unknowns
/// per generator of `G`. Solutions are lexicographically least in the tuple
/// `(F(e_0), F(e_1), …)` whenever `H` is finite.
#[derive(Clone, Debug)]
pub struct HomSystem {
    domain: FgGroup,
    codomain: FgGroup,
    eqs: Congruences,
}

impl HomSystem {
    pub fn new(domain: &FgGroup, codomain: &FgGroup) -> Self {
        let q = codomain.dim();
        let mut eqs = Congruences::for_group_blocks(codomain, domain.dim());
        for (j, d) in domain.invariant_factors().iter().enumerate() {
            let m = Matrix::identity(q).scale(d);
            eqs.push_group_eq(codomain, &[(j * q, &m)], &codomain.zero());
        }
        HomSystem {
            domain: domain.clone(),
            codomain: codomain.clone(),
            eqs,
        }
    }

    /// `g(F(x)) = z`, where `g: H -> K` is fixed.
    pub fn require_composite(&mut self, g: &GroupHom, x: &[Int], z: &[Int]) {
        assert_eq!(g.domain(), &self.codomain);
        let q = self.codomain.dim();
        let mats: Vec<Matrix> = x.iter().map(|xj| g.matrix().scale(xj)).collect();
        let terms: Vec<(usize, &Matrix)> =
            mats.iter().enumerate().map(|(j, m)| (j * q, m)).collect();
        self.eqs.push_group_eq(g.codomain(), &terms, z);
    }

    /// `F(x) = y`.
    pub fn require_value(&mut self, x: &[Int], y: &[Int]) {
        let id = GroupHom::identity(&self.codomain);
        self.require_composite(&id, x, y);
    }

    /// `F(x) ∈ s`.
    pub fn require_member(&mut self, x: &[Int], s: &Subgroup) {
        let (quot, proj) = s.quotient();
        self.require_composite(&proj, x, &quot.zero());
    }

    pub fn solve(&self) -> Option<GroupHom> {
        let q = self.codomain.dim();
        if q == 0 {
            return Some(GroupHom::zero(&self.domain, &self.codomain));
        }
        let sol = self.eqs.solve()?;
        let images = sol
            .blocks(q)
            .into_iter()
            .map(|b| self.codomain.reduce(&b))
            .collect();
        GroupHom::from_images(self.domain.clone(), self.codomain.clone(), images).ok()
    }
}

/// A hom on all of `G` restricting to `f`, lexicographically least in the
/// generator-image tuple when the codomain is finite; `None` if no extension
/// exists.
pub fn extend_hom(f: &SubgroupHom) -> Option<GroupHom> {
    let mut sys = HomSystem::new(f.domain.ambient(), f.codomain());
    let inc = &f.domain.structure().inclusion;
    for l in 0..inc.domain().dim() {
        sys.require_value(&inc.image_of_generator(l), &f.map.image_of_generator(l));
    }
    sys.solve()
}
