//! Exact sequences, purity, and splittings of short exact sequences.

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::fgab::{
    Element, FgGroup, GroupError, GroupHom, HomSystem, Int, Subgroup, SubgroupHom,
};

/// Default bound on `|C|` for exhaustive splitting enumeration.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 256;

/// Hard cap on the number of candidate tuples an enumeration may visit.
const MAX_CANDIDATE_TUPLES: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("maps {0} and {1} are not composable")]
    NotComposable(usize, usize),
    #[error("position {position} out of range for a complex with {len} groups")]
    OutOfRange { position: usize, len: usize },
    #[error("sequence is not exact at position {0}")]
    NotExact(usize),
    #[error("composite of consecutive maps {0} and {1} is non-zero")]
    NotAComplex(usize, usize),
    #[error("enumeration refused: {0}")]
    SizeBoundExceeded(String),
    #[error("partial map is not a splitting over its domain")]
    PartialNotASplitting,
    #[error(transparent)]
    Group(#[from] GroupError),
}

pub type SequenceResult<T> = Result<T, SequenceError>;

/// `groups[0] -> groups[1] -> …` with `maps[i]: groups[i] -> groups[i+1]`.
#[derive(Clone, Debug)]
pub struct Complex {
    groups: Vec<FgGroup>,
    maps: Vec<GroupHom>,
}

impl Complex {
    /// A chain of composable maps; the groups are read off the maps.
    pub fn new(maps: Vec<GroupHom>) -> SequenceResult<Self> {
        if maps.is_empty() {
            return Ok(Complex {
                groups: Vec::new(),
                maps,
            });
        }
        for i in 1..maps.len() {
            if maps[i - 1].codomain() != maps[i].domain() {
                return Err(SequenceError::NotComposable(i - 1, i));
            }
        }
        let mut groups: Vec<FgGroup> = maps.iter().map(|f| f.domain().clone()).collect();
        groups.push(maps.last().expect("non-empty").codomain().clone());
        Ok(Complex { groups, maps })
    }

    /// As [`Complex::new`], also requiring consecutive composites to vanish.
    pub fn new_complex(maps: Vec<GroupHom>) -> SequenceResult<Self> {
        let c = Complex::new(maps)?;
        for i in 1..c.maps.len() {
            if !c.maps[i].compose(&c.maps[i - 1])?.is_zero() {
                return Err(SequenceError::NotAComplex(i - 1, i));
            }
        }
        Ok(c)
    }

    pub fn groups(&self) -> &[FgGroup] {
        &self.groups
    }

    pub fn maps(&self) -> &[GroupHom] {
        &self.maps
    }

    /// Exactness at `groups[position]`. The ends are bordered by zero groups,
    /// so position 0 asks for injectivity and the last for surjectivity.
    pub fn is_exact(&self, position: usize) -> SequenceResult<bool> {
        if position >= self.groups.len() {
            return Err(SequenceError::OutOfRange {
                position,
                len: self.groups.len(),
            });
        }
        let g = &self.groups[position];
        let ker = match self.maps.get(position) {
            Some(f) => f.kernel(),
            None => Subgroup::whole(g),
        };
        let im = match position.checked_sub(1) {
            Some(i) => self.maps[i].image(),
            None => Subgroup::zero(g),
        };
        Ok(ker == im)
    }
}

/// `0 -> A -> B -> C -> 0`.
#[derive(Clone, Debug)]
pub struct ShortExact {
    left: GroupHom,
    right: GroupHom,
}

impl ShortExact {
    /// Builds and validates the sequence.
    pub fn new(left: GroupHom, right: GroupHom) -> SequenceResult<Self> {
        let s = ShortExact::unchecked(left, right)?;
        s.validate()?;
        Ok(s)
    }

    /// Only checks composability; see [`ShortExact::validate`].
    pub fn unchecked(left: GroupHom, right: GroupHom) -> SequenceResult<Self> {
        if left.codomain() != right.domain() {
            return Err(SequenceError::NotComposable(0, 1));
        }
        Ok(ShortExact { left, right })
    }

    pub fn validate(&self) -> SequenceResult<()> {
        let c = self.complex();
        for p in 0..3 {
            if !c.is_exact(p)? {
                return Err(SequenceError::NotExact(p));
            }
        }
        Ok(())
    }

    pub fn complex(&self) -> Complex {
        Complex::new(vec![self.left.clone(), self.right.clone()]).expect("composable")
    }

    pub fn left(&self) -> &GroupHom {
        &self.left
    }

    pub fn right(&self) -> &GroupHom {
        &self.right
    }

    pub fn a(&self) -> &FgGroup {
        self.left.domain()
    }

    pub fn b(&self) -> &FgGroup {
        self.left.codomain()
    }

    pub fn c(&self) -> &FgGroup {
        self.right.codomain()
    }

    /// Does `right ∘ sigma = id_C` hold?
    pub fn is_splitting(&self, sigma: &GroupHom) -> bool {
        sigma.domain() == self.c()
            && sigma.codomain() == self.b()
            && self.right.compose(sigma).as_ref() == Ok(&GroupHom::identity(self.c()))
    }

    /// Does `right ∘ partial` equal the inclusion of its domain?
    pub fn is_partial_splitting(&self, partial: &SubgroupHom) -> bool {
        if partial.domain().ambient() != self.c() || partial.codomain() != self.b() {
            return false;
        }
        self.right.compose(partial.map()).as_ref() == Ok(&partial.domain().structure().inclusion)
    }
}

/// True iff the image of the left map is pure in the middle group.
pub fn is_pure_exact(s: &ShortExact) -> SequenceResult<bool> {
    s.validate()?;
    Ok(s.left.image().is_pure())
}

/// Every `sigma: C -> B` with `right ∘ sigma = id`, in lexicographic order of
/// the generator-image tuple.
pub fn enumerate_splittings(s: &ShortExact, bound: u64) -> SequenceResult<Vec<GroupHom>> {
    let order_c = s
        .c()
        .order()
        .ok_or_else(|| SequenceError::SizeBoundExceeded("C is infinite".into()))?;
    if order_c > Int::from(bound) {
        return Err(SequenceError::SizeBoundExceeded(format!(
            "|C| = {order_c} exceeds {bound}"
        )));
    }
    let a_elems = s
        .a()
        .elements(MAX_CANDIDATE_TUPLES)
        .map_err(|e| SequenceError::SizeBoundExceeded(e.to_string()))?;
    let lifts: Vec<Element> = (0..s.c().dim())
        .map(|j| s.right.lift(&s.c().generator(j)))
        .collect::<Option<_>>()
        .ok_or(SequenceError::NotExact(2))?;
    let mut candidates: Vec<Vec<Element>> = Vec::with_capacity(lifts.len());
    let mut total: u64 = 1;
    for (j, x) in lifts.iter().enumerate() {
        let d = s.c().modulus(j);
        let mut cand: Vec<Element> = a_elems
            .iter()
            .map(|a| s.b().add(x, &s.left.apply(a)))
            .filter(|y| s.b().is_zero(&s.b().scale(&d, y)))
            .collect();
        cand.sort();
        total = total.saturating_mul(cand.len() as u64);
        candidates.push(cand);
    }
    if total > MAX_CANDIDATE_TUPLES {
        return Err(SequenceError::SizeBoundExceeded(format!(
            "{total} candidate splittings"
        )));
    }
    let mut out = Vec::with_capacity(total.to_usize().unwrap_or(0));
    let mut idx = vec![0usize; candidates.len()];
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(out);
    }
    loop {
        let images = idx
            .iter()
            .enumerate()
            .map(|(j, &k)| candidates[j][k].clone())
            .collect();
        out.push(GroupHom::from_images(s.c().clone(), s.b().clone(), images)?);
        let mut j = candidates.len();
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < candidates[j].len() {
                break;
            }
            idx[j] = 0;
        }
    }
}

/// A splitting agreeing with `partial` on its domain, found by one linear
/// solve; `Ok(None)` when no such splitting exists.
pub fn find_splitting_constrained(
    s: &ShortExact,
    partial: Option<&SubgroupHom>,
) -> SequenceResult<Option<GroupHom>> {
    let mut sys = HomSystem::new(s.c(), s.b());
    if let Some(p) = partial {
        if !s.is_partial_splitting(p) {
            return Err(SequenceError::PartialNotASplitting);
        }
        let inc = &p.domain().structure().inclusion;
        for l in 0..inc.domain().dim() {
            sys.require_value(&inc.image_of_generator(l), &p.map().image_of_generator(l));
        }
    }
    for j in 0..s.c().dim() {
        let e = s.c().generator(j);
        sys.require_composite(&s.right, &e, &e);
    }
    Ok(sys.solve())
}

/// Splitting by growing a complement: start from `D = im partial` and, for
/// each generator of `C` in turn, adjoin the first lift (in lexicographic
/// order of the `A`-offset) that keeps `D ∩ im(left) = 0`. Returns `None`
/// when some generator has no admissible lift; this strategy is incomplete.
pub fn greedy_splitting(
    s: &ShortExact,
    partial: Option<&SubgroupHom>,
) -> SequenceResult<Option<GroupHom>> {
    let im_left = s.left.image();
    let mut d = match partial {
        Some(p) => {
            if !s.is_partial_splitting(p) {
                return Err(SequenceError::PartialNotASplitting);
            }
            p.map().image()
        }
        None => Subgroup::zero(s.b()),
    };
    let a_elems = s
        .a()
        .elements(MAX_CANDIDATE_TUPLES)
        .map_err(|e| SequenceError::SizeBoundExceeded(e.to_string()))?;
    for j in 0..s.c().dim() {
        let c = s.c().generator(j);
        let covered = s.right.image_of(&d)?;
        if covered.contains(&c) {
            continue;
        }
        let x = s.right.lift(&c).ok_or(SequenceError::NotExact(2))?;
        let mut grown = None;
        for a in &a_elems {
            let y = s.b().add(&x, &s.left.apply(a));
            let cand = d.join(&Subgroup::new(s.b().clone(), vec![y])?)?;
            if cand.meet(&im_left)?.is_zero() {
                grown = Some(cand);
                break;
            }
        }
        match grown {
            Some(g) => d = g,
            None => return Ok(None),
        }
    }
    // right|_D is an isomorphism D -> C
    let restricted = s.right.compose(&d.structure().inclusion)?;
    if !restricted.is_isomorphism() {
        return Ok(None);
    }
    let inv = restricted.inverse().expect("isomorphism");
    Ok(Some(d.structure().inclusion.compose(&inv)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::{int, Matrix};

    fn hom(d: &FgGroup, c: &FgGroup, r: usize, k: usize, e: &[i64]) -> GroupHom {
        GroupHom::new(d.clone(), c.clone(), Matrix::from_i64(r, k, e)).unwrap()
    }

    #[test]
    fn identity_is_exact_in_the_middle() {
        let g = FgGroup::from_i64(&[2], 1).unwrap();
        let c = Complex::new(vec![GroupHom::identity(&g)]).unwrap();
        assert!(c.is_exact(0).unwrap());
        assert!(c.is_exact(1).unwrap());
        assert!(c.is_exact(2).is_err());
    }

    #[test]
    fn times_two_sequences() {
        let z = FgGroup::free(1);
        let z2 = FgGroup::cyclic(2);
        let z4 = FgGroup::cyclic(4);
        let s = ShortExact::new(hom(&z, &z, 1, 1, &[2]), hom(&z, &z2, 1, 1, &[1])).unwrap();
        assert!(!is_pure_exact(&s).unwrap());
        let bad = Complex::new(vec![hom(&z, &z, 1, 1, &[2]), hom(&z, &z4, 1, 1, &[1])]).unwrap();
        assert!(bad.is_exact(0).unwrap());
        assert!(!bad.is_exact(1).unwrap());
        assert!(bad.is_exact(2).unwrap());
    }

    #[test]
    fn summand_sequence_is_pure() {
        let z2 = FgGroup::cyclic(2);
        let z = FgGroup::free(1);
        let b = FgGroup::from_i64(&[2], 1).unwrap();
        let s = ShortExact::new(hom(&z2, &b, 2, 1, &[1, 0]), hom(&b, &z, 1, 2, &[0, 1])).unwrap();
        assert!(is_pure_exact(&s).unwrap());
    }

    #[test]
    fn splitting_counts() {
        let z2 = FgGroup::cyclic(2);
        let z4 = FgGroup::cyclic(4);
        let nonsplit = ShortExact::new(hom(&z2, &z4, 1, 1, &[2]), hom(&z4, &z2, 1, 1, &[1])).unwrap();
        assert!(enumerate_splittings(&nonsplit, 256).unwrap().is_empty());
        assert_eq!(find_splitting_constrained(&nonsplit, None).unwrap(), None);

        let v = FgGroup::from_i64(&[2, 2], 0).unwrap();
        let split = ShortExact::new(hom(&z2, &v, 2, 1, &[1, 0]), hom(&v, &z2, 1, 2, &[0, 1])).unwrap();
        let all = enumerate_splittings(&split, 256).unwrap();
        assert_eq!(all.len(), 2);
        let found = find_splitting_constrained(&split, None).unwrap().unwrap();
        assert_eq!(found, all[0]);
        assert!(split.is_splitting(&found));
        let greedy = greedy_splitting(&split, None).unwrap().unwrap();
        assert!(split.is_splitting(&greedy));

        let zero = FgGroup::trivial();
        let trivial_c = ShortExact::new(GroupHom::identity(&z2), GroupHom::zero(&z2, &zero)).unwrap();
        assert_eq!(enumerate_splittings(&trivial_c, 256).unwrap().len(), 1);
    }

    #[test]
    fn constrained_splitting_respects_partial() {
        let z2 = FgGroup::cyclic(2);
        let v = FgGroup::from_i64(&[2, 2], 0).unwrap();
        let split = ShortExact::new(hom(&z2, &v, 2, 1, &[1, 0]), hom(&v, &z2, 1, 2, &[0, 1])).unwrap();
        let whole = Subgroup::whole(&z2);
        let tau = SubgroupHom::from_ambient_images(whole, v.clone(), vec![vec![int(1), int(1)]])
            .unwrap();
        let s = find_splitting_constrained(&split, Some(&tau)).unwrap().unwrap();
        assert_eq!(s.image_of_generator(0), vec![int(1), int(1)]);
        let bad = SubgroupHom::from_ambient_images(
            Subgroup::whole(&z2),
            v.clone(),
            vec![vec![int(1), int(0)]],
        )
        .unwrap();
        assert!(find_splitting_constrained(&split, Some(&bad)).is_err());
    }
}
