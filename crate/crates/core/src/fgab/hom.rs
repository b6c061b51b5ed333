use super::error::{GroupError, GroupResult};
use super::group::{Element, FgGroup};
use super::matrix::{reduce, Int, Matrix};
use super::smith::kernel as int_kernel;
use super::solve::Congruences;
use super::subgroup::Subgroup;

/// Homomorphism between canonical groups, stored as a matrix whose `j`-th
/// column is the image of the `j`-th domain generator. Torsion rows are kept
/// reduced, so equal maps have equal matrices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupHom {
    domain: FgGroup,
    codomain: FgGroup,
    matrix: Matrix,
}

fn reduce_rows(codomain: &FgGroup, m: &mut Matrix) {
    for i in 0..codomain.torsion_rank() {
        let d = codomain.modulus(i);
        for j in 0..m.cols() {
            let v = reduce(&m[(i, j)], &d);
            m[(i, j)] = v;
        }
    }
}

impl GroupHom {
    pub fn new(domain: FgGroup, codomain: FgGroup, mut matrix: Matrix) -> GroupResult<Self> {
        if matrix.rows() != codomain.dim() {
            return Err(GroupError::DimensionMismatch {
                expected: codomain.dim(),
                found: matrix.rows(),
            });
        }
        if matrix.cols() != domain.dim() {
            return Err(GroupError::DimensionMismatch {
                expected: domain.dim(),
                found: matrix.cols(),
            });
        }
        reduce_rows(&codomain, &mut matrix);
        for (j, d) in domain.invariant_factors().iter().enumerate() {
            let col = matrix.col(j);
            if !codomain.is_zero(&codomain.scale(d, &col)) {
                return Err(GroupError::NotAHom { generator: j });
            }
        }
        Ok(GroupHom {
            domain,
            codomain,
            matrix,
        })
    }

    /// Builds a hom from the images of the domain generators.
    pub fn from_images(
        domain: FgGroup,
        codomain: FgGroup,
        images: Vec<Element>,
    ) -> GroupResult<Self> {
        if images.len() != domain.dim() {
            return Err(GroupError::DimensionMismatch {
                expected: domain.dim(),
                found: images.len(),
            });
        }
        for im in &images {
            codomain.check(im)?;
        }
        let m = Matrix::from_cols(codomain.dim(), images);
        GroupHom::new(domain, codomain, m)
    }

    pub fn identity(g: &FgGroup) -> Self {
        GroupHom {
            domain: g.clone(),
            codomain: g.clone(),
            matrix: Matrix::identity(g.dim()),
        }
    }

    pub fn zero(domain: &FgGroup, codomain: &FgGroup) -> Self {
        GroupHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: Matrix::zeros(codomain.dim(), domain.dim()),
        }
    }

    /// Multiplication by `k` on `g`.
    pub fn scalar(g: &FgGroup, k: &Int) -> Self {
        let mut m = Matrix::identity(g.dim()).scale(k);
        reduce_rows(g, &mut m);
        GroupHom {
            domain: g.clone(),
            codomain: g.clone(),
            matrix: m,
        }
    }

    pub fn domain(&self) -> &FgGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn image_of_generator(&self, j: usize) -> Element {
        self.matrix.col(j)
    }

    pub fn apply(&self, x: &[Int]) -> Element {
        self.codomain.reduce(&self.matrix.mul_vec(x))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GroupHom) -> GroupResult<GroupHom> {
        if first.codomain != self.domain {
            return Err(GroupError::NotComposable);
        }
        let mut m = self.matrix.mul(&first.matrix);
        reduce_rows(&self.codomain, &mut m);
        Ok(GroupHom {
            domain: first.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: m,
        })
    }

    pub fn add(&self, other: &GroupHom) -> GroupResult<GroupHom> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(GroupError::NotComposable);
        }
        let mut m = self.matrix.add(&other.matrix);
        reduce_rows(&self.codomain, &mut m);
        Ok(GroupHom {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: m,
        })
    }

    pub fn scale(&self, k: &Int) -> GroupHom {
        let mut m = self.matrix.scale(k);
        reduce_rows(&self.codomain, &mut m);
        GroupHom {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: m,
        }
    }

    pub fn neg(&self) -> GroupHom {
        self.scale(&Int::from(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn kernel(&self) -> Subgroup {
        let m = self.domain.dim();
        let k = self.codomain.torsion_rank();
        let mut a = self.matrix.hstack(&Matrix::zeros(self.codomain.dim(), k));
        for i in 0..k {
            a[(i, m + i)] = -self.codomain.modulus(i);
        }
        let gens = int_kernel(&a)
            .row_vecs()
            .into_iter()
            .map(|r| self.domain.reduce(&r[..m]))
            .collect();
        Subgroup::new(self.domain.clone(), gens).expect("kernel vectors have domain shape")
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::new(self.codomain.clone(), self.matrix.col_vecs())
            .expect("columns have codomain shape")
    }

    /// Image of a subgroup of the domain.
    pub fn image_of(&self, h: &Subgroup) -> GroupResult<Subgroup> {
        if h.ambient() != &self.domain {
            return Err(GroupError::AmbientMismatch);
        }
        let gens = h.generators().iter().map(|g| self.apply(g)).collect();
        Subgroup::new(self.codomain.clone(), gens)
    }

    /// Full preimage of a subgroup of the codomain.
    pub fn preimage_of(&self, s: &Subgroup) -> GroupResult<Subgroup> {
        if s.ambient() != &self.codomain {
            return Err(GroupError::AmbientMismatch);
        }
        let m = self.domain.dim();
        let basis = s.lattice_basis();
        // M x - B^T z = 0
        let a = self.matrix.hstack(&basis.transpose().scale(&Int::from(-1)));
        let gens = int_kernel(&a)
            .row_vecs()
            .into_iter()
            .map(|r| self.domain.reduce(&r[..m]))
            .collect();
        Subgroup::new(self.domain.clone(), gens)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_whole()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Some `x` with `self(x) == y`, lexicographically least when the domain is
    /// finite.
    pub fn lift(&self, y: &[Int]) -> Option<Element> {
        let mut c = Congruences::for_group_blocks(&self.domain, 1);
        c.push_group_eq(&self.codomain, &[(0, &self.matrix)], &self.codomain.reduce(y));
        c.solve().map(|s| self.domain.reduce(&s.particular))
    }

    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_isomorphism() {
            return None;
        }
        let images = (0..self.codomain.dim())
            .map(|i| self.lift(&self.codomain.generator(i)))
            .collect::<Option<Vec<_>>>()?;
        GroupHom::from_images(self.codomain.clone(), self.domain.clone(), images).ok()
    }

    /// Restricts the codomain to a subgroup containing the image, returning a
    /// hom into the canonical group of that subgroup.
    pub fn corestrict(&self, s: &Subgroup) -> GroupResult<GroupHom> {
        if s.ambient() != &self.codomain {
            return Err(GroupError::AmbientMismatch);
        }
        let images = (0..self.domain.dim())
            .map(|j| s.coords(&self.image_of_generator(j)))
            .collect::<GroupResult<Vec<_>>>()?;
        GroupHom::from_images(self.domain.clone(), s.structure().group.clone(), images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::matrix::int;

    fn z(d: i64) -> FgGroup {
        FgGroup::from_i64(&[d], 0).unwrap()
    }

    #[test]
    fn rejects_non_hom() {
        // Z/2 -> Z/4, 1 -> 1 is not a hom
        assert!(GroupHom::new(z(2), z(4), Matrix::from_i64(1, 1, &[1])).is_err());
        assert!(GroupHom::new(z(2), z(4), Matrix::from_i64(1, 1, &[2])).is_ok());
        // Z/2 -> Z must be zero
        assert!(GroupHom::new(z(2), FgGroup::free(1), Matrix::from_i64(1, 1, &[1])).is_err());
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let f = GroupHom::zero(&z(4), &z(4));
        assert!(f.kernel().is_whole());
    }

    #[test]
    fn image_of_times_two() {
        let f = GroupHom::scalar(&FgGroup::free(1), &int(2));
        let two_z = Subgroup::new(FgGroup::free(1), vec![vec![int(2)]]).unwrap();
        assert_eq!(f.image(), two_z);
        assert!(f.is_injective());
        assert!(!f.is_surjective());
    }

    #[test]
    fn inverse_of_unit_scaling() {
        let f = GroupHom::scalar(&z(5), &int(2));
        let g = f.inverse().unwrap();
        assert_eq!(g.compose(&f).unwrap(), GroupHom::identity(&z(5)));
    }

    #[test]
    fn preimage_of_subgroup() {
        // x -> 2x on Z/8, preimage of <4> is <2>
        let g = z(8);
        let f = GroupHom::scalar(&g, &int(2));
        let s = Subgroup::new(g.clone(), vec![vec![int(4)]]).unwrap();
        let pre = f.preimage_of(&s).unwrap();
        assert_eq!(pre, Subgroup::new(g, vec![vec![int(2)]]).unwrap());
    }
}
