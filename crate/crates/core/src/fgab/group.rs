use std::fmt;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::error::{GroupError, GroupResult};
use super::matrix::{int, reduce, Int, Matrix};
use super::smith::smith;

/// Coordinate vector of a group element: torsion coordinates first (reduced
/// modulo the matching invariant factor), then free coordinates.
pub type Element = Vec<Int>;

/// Finitely generated abelian group `Z/d_1 + ... + Z/d_k + Z^r` in
/// invariant-factor form (`d_1 | d_2 | ... | d_k`, every `d_i >= 2`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FgGroup {
    factors: Vec<Int>,
    free_rank: usize,
}

impl FgGroup {
    pub fn new(factors: Vec<Int>, free_rank: usize) -> GroupResult<Self> {
        for d in &factors {
            if *d < int(2) {
                return Err(GroupError::InvalidFactors(format!(
                    "factor {d} is below 2"
                )));
            }
        }
        for w in factors.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(GroupError::InvalidFactors(format!(
                    "{} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(FgGroup { factors, free_rank })
    }

    pub fn from_i64(factors: &[i64], free_rank: usize) -> GroupResult<Self> {
        FgGroup::new(factors.iter().map(|&d| int(d)).collect(), free_rank)
    }

    pub fn trivial() -> Self {
        FgGroup {
            factors: vec![],
            free_rank: 0,
        }
    }

    pub fn free(rank: usize) -> Self {
        FgGroup {
            factors: vec![],
            free_rank: rank,
        }
    }

    /// `Z/d`; `d == 0` gives `Z`, `d == 1` the trivial group.
    pub fn cyclic(d: u64) -> Self {
        match d {
            0 => FgGroup::free(1),
            1 => FgGroup::trivial(),
            _ => FgGroup {
                factors: vec![Int::from(d)],
                free_rank: 0,
            },
        }
    }

    pub fn invariant_factors(&self) -> &[Int] {
        &self.factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_rank(&self) -> usize {
        self.factors.len()
    }

    /// Number of coordinates of an element.
    pub fn dim(&self) -> usize {
        self.factors.len() + self.free_rank
    }

    /// Modulus of each coordinate, `0` for free coordinates.
    pub fn moduli(&self) -> Vec<Int> {
        let mut m = self.factors.clone();
        m.extend(std::iter::repeat_n(Int::zero(), self.free_rank));
        m
    }

    pub fn modulus(&self, i: usize) -> Int {
        self.factors.get(i).cloned().unwrap_or_else(Int::zero)
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_torsion_free(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> Option<Int> {
        self.is_finite().then(|| self.factors.iter().product())
    }

    /// Exponent of the torsion subgroup (1 for a torsion-free group).
    pub fn torsion_exponent(&self) -> Int {
        self.factors.last().cloned().unwrap_or_else(Int::one)
    }

    pub fn zero(&self) -> Element {
        vec![Int::zero(); self.dim()]
    }

    /// The `i`-th canonical generator.
    pub fn generator(&self, i: usize) -> Element {
        let mut e = self.zero();
        e[i] = Int::one();
        e
    }

    pub fn check(&self, x: &[Int]) -> GroupResult<()> {
        if x.len() != self.dim() {
            return Err(GroupError::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        Ok(())
    }

    pub fn reduce(&self, x: &[Int]) -> Element {
        debug_assert_eq!(x.len(), self.dim());
        x.iter()
            .enumerate()
            .map(|(i, v)| match self.factors.get(i) {
                Some(d) => v.mod_floor(d),
                None => v.clone(),
            })
            .collect()
    }

    pub fn is_reduced(&self, x: &[Int]) -> bool {
        x.len() == self.dim() && self.reduce(x) == x
    }

    pub fn is_zero(&self, x: &[Int]) -> bool {
        self.reduce(x).iter().all(Zero::is_zero)
    }

    pub fn add(&self, x: &[Int], y: &[Int]) -> Element {
        let s: Vec<Int> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.reduce(&s)
    }

    pub fn sub(&self, x: &[Int], y: &[Int]) -> Element {
        let s: Vec<Int> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.reduce(&s)
    }

    pub fn neg(&self, x: &[Int]) -> Element {
        let s: Vec<Int> = x.iter().map(|a| -a).collect();
        self.reduce(&s)
    }

    pub fn scale(&self, k: &Int, x: &[Int]) -> Element {
        let s: Vec<Int> = x.iter().map(|a| k * a).collect();
        self.reduce(&s)
    }

    /// Order of an element; `None` when it has infinite order.
    pub fn element_order(&self, x: &[Int]) -> Option<Int> {
        let x = self.reduce(x);
        if x[self.factors.len()..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let mut ord = Int::one();
        for (d, v) in self.factors.iter().zip(&x) {
            let g = d.gcd(v);
            ord = ord.lcm(&(d / g));
        }
        Some(ord)
    }

    /// Rows `d_i e_i`, one per torsion coordinate.
    pub fn relation_rows(&self) -> Matrix {
        let n = self.dim();
        let rows = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut r = vec![Int::zero(); n];
                r[i] = d.clone();
                r
            })
            .collect();
        Matrix::from_rows(n, rows)
    }

    /// All elements in lexicographic coordinate order, refusing groups larger
    /// than `bound`.
    pub fn elements(&self, bound: u64) -> GroupResult<Vec<Element>> {
        let order = self.order().ok_or(GroupError::Infinite)?;
        let count = order
            .to_u64()
            .filter(|&c| c <= bound)
            .ok_or_else(|| GroupError::TooLarge {
                order: order.to_string(),
                bound,
            })?;
        let mut out = Vec::with_capacity(count as usize);
        let mut cur = self.zero();
        for _ in 0..count {
            out.push(cur.clone());
            for i in (0..self.factors.len()).rev() {
                cur[i] += 1;
                if cur[i] < self.factors[i] {
                    break;
                }
                cur[i] = Int::zero();
            }
        }
        Ok(out)
    }

    /// Direct sum as a presented group; see [`crate::fgab::DirectSum`] for the
    /// canonical form with injections.
    pub(crate) fn block_relations(parts: &[&FgGroup]) -> Matrix {
        let total: usize = parts.iter().map(|g| g.dim()).sum();
        let mut rows = Vec::new();
        let mut offset = 0;
        for g in parts {
            for (i, d) in g.factors.iter().enumerate() {
                let mut r = vec![Int::zero(); total];
                r[offset + i] = d.clone();
                rows.push(r);
            }
            offset += g.dim();
        }
        Matrix::from_rows(total, rows)
    }
}

impl fmt::Debug for FgGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FgGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A group given by generators and relations, brought into canonical form.
#[derive(Clone, Debug)]
pub struct Presented {
    pub group: FgGroup,
    /// Canonical coordinates of each presentation generator (columns).
    pub to_canon: Matrix,
    /// Presentation coordinates of each canonical generator (columns).
    pub from_canon: Matrix,
}

impl Presented {
    /// Canonical coordinates of a vector in presentation coordinates.
    pub fn canon(&self, x: &[Int]) -> Element {
        self.group.reduce(&self.to_canon.mul_vec(x))
    }
}

/// Cokernel of `rel` (one row per relation, one column per generator) in
/// invariant-factor form.
pub fn group_from_presentation(rel: &Matrix) -> Presented {
    let g = rel.cols();
    let s = smith(rel);
    let modulus = |i: usize| {
        if i < s.rank {
            s.d[(i, i)].clone()
        } else {
            Int::zero()
        }
    };
    let kept: Vec<usize> = (0..g).filter(|&i| !modulus(i).is_one()).collect();
    let factors: Vec<Int> = kept
        .iter()
        .filter(|&&i| i < s.rank)
        .map(|&i| modulus(i))
        .collect();
    let free_rank = kept.len() - factors.len();
    let group = FgGroup::new(factors, free_rank).expect("Smith diagonal is a divisor chain");
    let mut to_canon = Matrix::zeros(kept.len(), g);
    let mut from_canon = Matrix::zeros(g, kept.len());
    for (k, &i) in kept.iter().enumerate() {
        for l in 0..g {
            to_canon[(k, l)] = s.v[(l, i)].clone();
            from_canon[(l, k)] = s.v_inv[(i, l)].clone();
        }
    }
    for k in 0..group.torsion_rank() {
        let d = group.modulus(k);
        for l in 0..g {
            to_canon[(k, l)] = reduce(&to_canon[(k, l)], &d);
        }
    }
    Presented {
        group,
        to_canon,
        from_canon,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_factors() {
        assert!(FgGroup::from_i64(&[2, 3], 0).is_err());
        assert!(FgGroup::from_i64(&[1], 0).is_err());
        assert!(FgGroup::from_i64(&[0], 0).is_err());
        assert!(FgGroup::from_i64(&[2, 4], 1).is_ok());
    }

    #[test]
    fn presentation_diag_two_zero() {
        let p = group_from_presentation(&Matrix::from_i64(2, 2, &[2, 0, 0, 0]));
        assert_eq!(p.group, FgGroup::from_i64(&[2], 1).unwrap());
    }

    #[test]
    fn presentation_empty_relations() {
        let p = group_from_presentation(&Matrix::zeros(0, 3));
        assert_eq!(p.group, FgGroup::free(3));
    }

    #[test]
    fn presentation_four_two_two_four() {
        // SNF oracle: d1 = 2, d1*d2 = 12
        let p = group_from_presentation(&Matrix::from_i64(2, 2, &[4, 2, 2, 4]));
        assert_eq!(p.group, FgGroup::from_i64(&[2, 6], 0).unwrap());
        let id = p.to_canon.mul(&p.from_canon);
        for j in 0..2 {
            assert_eq!(p.group.reduce(&id.col(j)), p.group.generator(j));
        }
    }

    #[test]
    fn coprime_factors_merge() {
        let p = group_from_presentation(&Matrix::diagonal(&[int(2), int(3)]));
        assert_eq!(p.group, FgGroup::from_i64(&[6], 0).unwrap());
    }

    #[test]
    fn element_arithmetic() {
        let g = FgGroup::from_i64(&[4], 1).unwrap();
        let x = vec![int(3), int(-2)];
        assert_eq!(g.add(&x, &x), vec![int(2), int(-4)]);
        assert_eq!(g.element_order(&[int(2), int(0)]), Some(int(2)));
        assert_eq!(g.element_order(&x), None);
        assert_eq!(g.to_string(), "Z/4 + Z");
    }

    #[test]
    fn enumerates_elements() {
        let g = FgGroup::from_i64(&[2, 4], 0).unwrap();
        let els = g.elements(100).unwrap();
        assert_eq!(els.len(), 8);
        assert_eq!(els[1], vec![int(0), int(1)]);
        assert!(g.elements(4).is_err());
        assert!(FgGroup::free(1).elements(10).is_err());
    }
}
