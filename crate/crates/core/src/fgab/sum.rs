use super::group::{group_from_presentation, Element, FgGroup};
use super::hom::GroupHom;
use super::matrix::{Int, Matrix};

/// Canonical form of `G_1 ⊕ … ⊕ G_k` with its injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FgGroup,
    pub parts: Vec<FgGroup>,
    injections: Vec<GroupHom>,
    projections: Vec<GroupHom>,
    /// Block coordinates -> canonical coordinates.
    to_canon: Matrix,
}

impl DirectSum {
    pub fn new(parts: Vec<FgGroup>) -> Self {
        let refs: Vec<&FgGroup> = parts.iter().collect();
        let pres = group_from_presentation(&FgGroup::block_relations(&refs));
        let group = pres.group.clone();
        let mut injections = Vec::with_capacity(parts.len());
        let mut projections = Vec::with_capacity(parts.len());
        let mut offset = 0;
        for g in &parts {
            let cols: Vec<usize> = (offset..offset + g.dim()).collect();
            let inj = GroupHom::new(g.clone(), group.clone(), pres.to_canon.select_cols(&cols))
                .expect("injection is a hom");
            let proj = GroupHom::new(group.clone(), g.clone(), pres.from_canon.select_rows(&cols))
                .expect("projection is a hom");
            injections.push(inj);
            projections.push(proj);
            offset += g.dim();
        }
        DirectSum {
            group,
            parts,
            injections,
            projections,
            to_canon: pres.to_canon,
        }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn injection(&self, i: usize) -> &GroupHom {
        &self.injections[i]
    }

    pub fn projection(&self, i: usize) -> &GroupHom {
        &self.projections[i]
    }

    /// Canonical element with the given components.
    pub fn element(&self, components: &[Element]) -> Element {
        let flat: Vec<Int> = components.iter().flatten().cloned().collect();
        self.group.reduce(&self.to_canon.mul_vec(&flat))
    }

    /// Components of a canonical element.
    pub fn components(&self, x: &[Int]) -> Vec<Element> {
        self.projections.iter().map(|p| p.apply(x)).collect()
    }

    /// The hom out of the sum that is `maps[i]` on summand `i`.
    pub fn copair(&self, codomain: &FgGroup, maps: &[GroupHom]) -> GroupHom {
        assert_eq!(maps.len(), self.len());
        let images = (0..self.group.dim())
            .map(|j| {
                let x = self.group.generator(j);
                let mut acc = codomain.zero();
                for (i, f) in maps.iter().enumerate() {
                    acc = codomain.add(&acc, &f.apply(&self.projections[i].apply(&x)));
                }
                acc
            })
            .collect();
        GroupHom::from_images(self.group.clone(), codomain.clone(), images)
            .expect("copairing of homs is a hom")
    }

    /// The hom into the sum with components `maps[i]`.
    pub fn pair(&self, domain: &FgGroup, maps: &[GroupHom]) -> GroupHom {
        assert_eq!(maps.len(), self.len());
        let images = (0..domain.dim())
            .map(|j| {
                let comps: Vec<Element> =
                    maps.iter().map(|f| f.image_of_generator(j)).collect();
                self.element(&comps)
            })
            .collect();
        GroupHom::from_images(domain.clone(), self.group.clone(), images)
            .expect("pairing of homs is a hom")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::matrix::int;

    #[test]
    fn z2_plus_z3_is_z6() {
        let s = DirectSum::new(vec![FgGroup::cyclic(2), FgGroup::cyclic(3)]);
        assert_eq!(s.group, FgGroup::cyclic(6));
        let x = s.element(&[vec![int(1)], vec![int(2)]]);
        assert_eq!(s.components(&x), vec![vec![int(1)], vec![int(2)]]);
        for i in 0..2 {
            let id = s.projection(i).compose(s.injection(i)).unwrap();
            assert_eq!(id, GroupHom::identity(&s.parts[i]));
        }
    }

    #[test]
    fn empty_sum_is_trivial() {
        let s = DirectSum::new(Vec::new());
        assert!(s.group.is_trivial());
    }
}
