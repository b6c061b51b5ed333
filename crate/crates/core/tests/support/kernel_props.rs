//! Kernel property checks with their brute-force oracles. Shared by the
//! core property suite and the acceptance target.

#![allow(dead_code)]

use std::collections::HashMap;

use kunneth_core::fgab::{
    group_from_presentation, n_torsion, n_torsion_hom, smith, tensor_hom, tensor_zmod, Element, FgGroup,
    GroupHom, Int, Matrix, Subgroup,
};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub const CASES: u32 = 1000;
pub const PURITY_ORDER: u64 = 512;
/// Every subgroup of every group up to this order is checked.
pub const EXHAUSTIVE_ORDER: u64 = 64;

/// Integer matrix as `(rows, cols, entries)`.
pub fn matrix_strategy() -> impl Strategy<Value = Matrix> {
    (1usize..=5, 1usize..=5)
        .prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-30i64..=30, r * c)))
        .prop_map(|(r, c, e)| Matrix::from_i64(r, c, &e))
}

fn is_identity(m: &Matrix) -> bool {
    m.rows() == m.cols() && *m == Matrix::identity(m.rows())
}

pub fn check_snf(m: &Matrix) -> Result<(), TestCaseError> {
    let s = smith(m);
    prop_assert_eq!(s.u.mul(m).mul(&s.v), s.d.clone());
    prop_assert!(is_identity(&s.u.mul(&s.u_inv)) && is_identity(&s.u_inv.mul(&s.u)));
    prop_assert!(is_identity(&s.v.mul(&s.v_inv)) && is_identity(&s.v_inv.mul(&s.v)));
    prop_assert!(s.u.determinant().abs().is_one());
    prop_assert!(s.v.determinant().abs().is_one());
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j {
                prop_assert!(s.d[(i, j)].is_zero(), "off-diagonal entry at ({i}, {j})");
            }
        }
    }
    let diag = s.diagonal();
    for (i, d) in diag.iter().enumerate() {
        prop_assert!(!d.is_negative());
        prop_assert_eq!(i < s.rank, !d.is_zero(), "rank {} vs diagonal {:?}", s.rank, diag);
    }
    for w in diag[..s.rank].windows(2) {
        prop_assert!(w[1].is_multiple_of(&w[0]), "chain broken: {:?}", diag);
    }
    Ok(())
}

/// Group from a diagonal presentation plus free rank.
pub fn group_strategy(max_free: usize) -> impl Strategy<Value = FgGroup> {
    (prop::collection::vec(1i64..=16, 0..=4), 0..=max_free).prop_map(|(d, free)| {
        let mut diag: Vec<Int> = d.into_iter().map(Int::from).collect();
        diag.extend(std::iter::repeat_n(Int::zero(), free));
        group_from_presentation(&Matrix::diagonal(&diag)).group
    })
}

pub fn finite_group_strategy(max_order: u64) -> impl Strategy<Value = FgGroup> {
    group_strategy(0).prop_filter("order bound", move |g| g.order().unwrap() <= Int::from(max_order))
}

fn element_from_seed(g: &FgGroup, seed: &[i64]) -> Element {
    let raw: Vec<Int> = (0..g.dim()).map(|i| Int::from(seed[i % seed.len()] * (i as i64 + 1))).collect();
    g.reduce(&raw)
}

/// Finite group with a subgroup on up to three random generators.
pub fn subgroup_strategy() -> impl Strategy<Value = (FgGroup, Vec<Element>)> {
    (
        finite_group_strategy(PURITY_ORDER),
        prop::collection::vec(prop::collection::vec(-40i64..=40, 1..=4), 0..=3),
    )
        .prop_map(|(g, seeds)| {
            let gens = seeds.iter().map(|s| element_from_seed(&g, s)).collect();
            (g, gens)
        })
}

/// Element-level model of a finite group.
pub struct Table {
    pub group: FgGroup,
    pub elements: Vec<Element>,
    index: HashMap<Element, usize>,
    exponent: u64,
}

impl Table {
    pub fn new(g: &FgGroup) -> Table {
        let elements = g.elements(PURITY_ORDER).expect("small finite group");
        let index = elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        Table {
            group: g.clone(),
            exponent: g.torsion_exponent().to_u64().unwrap(),
            elements,
            index,
        }
    }

    pub fn idx(&self, x: &[Int]) -> usize {
        self.index[&self.group.reduce(x)]
    }

    fn multiple(&self, m: u64, i: usize) -> usize {
        self.idx(&self.group.scale(&Int::from(m), &self.elements[i]))
    }

    /// Membership vector of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[Element]) -> Vec<bool> {
        let mut member = vec![false; self.elements.len()];
        member[0] = true;
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for g in gens {
                let j = self.idx(&self.group.add(&self.elements[i], g));
                if !member[j] {
                    member[j] = true;
                    frontier.push(j);
                }
            }
        }
        member
    }

    /// `H` is pure iff `mG ∩ H = mH` for every `m` up to the exponent.
    pub fn brute_pure(&self, h: &[bool]) -> bool {
        (2..=self.exponent.max(1)).all(|m| {
            let mut in_mh = vec![false; h.len()];
            for (i, &x) in h.iter().enumerate() {
                if x {
                    in_mh[self.multiple(m, i)] = true;
                }
            }
            (0..h.len()).all(|i| {
                let y = self.multiple(m, i);
                !h[y] || in_mh[y]
            })
        })
    }
}

pub fn check_purity(g: &FgGroup, gens: &[Element]) -> Result<(), TestCaseError> {
    let t = Table::new(g);
    let h = t.closure(gens);
    let s = Subgroup::new(g.clone(), gens.to_vec()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let size = h.iter().filter(|&&b| b).count();
    prop_assert_eq!(s.order().unwrap(), Int::from(size));
    prop_assert_eq!(s.is_pure(), t.brute_pure(&h), "{} with generators {:?}", g, gens);
    Ok(())
}

/// Every subgroup of `g`, each with a generating list.
pub fn all_subgroups(t: &Table) -> Vec<(Vec<bool>, Vec<Element>)> {
    let mut seen: HashMap<Vec<bool>, ()> = HashMap::new();
    let zero = t.closure(&[]);
    seen.insert(zero.clone(), ());
    let mut out = vec![(zero, Vec::new())];
    let mut k = 0;
    while k < out.len() {
        let (set, gens) = out[k].clone();
        for (i, x) in t.elements.iter().enumerate() {
            if set[i] {
                continue;
            }
            let mut more = gens.clone();
            more.push(x.clone());
            let bigger = t.closure(&more);
            if seen.insert(bigger.clone(), ()).is_none() {
                out.push((bigger, more));
            }
        }
        k += 1;
    }
    out
}

/// Groups in invariant-factor form of order at most `bound`.
pub fn groups_up_to(bound: u64) -> Vec<FgGroup> {
    fn go(prev: u64, left: u64, acc: &mut Vec<u64>, out: &mut Vec<FgGroup>) {
        out.push(FgGroup::from_i64(&acc.iter().map(|&d| d as i64).collect::<Vec<_>>(), 0).unwrap());
        let mut d = prev;
        while d <= left {
            acc.push(d);
            go(d, left / d, acc, out);
            acc.pop();
            d += prev;
        }
    }
    let mut out = Vec::new();
    let mut acc = Vec::new();
    // first factor any d >= 2; later factors multiples of the previous
    out.push(FgGroup::trivial());
    for d in 2..=bound {
        acc.push(d);
        go(d, bound / d, &mut acc, &mut out);
        acc.pop();
    }
    out
}

/// A hom on canonical generators: torsion generators go to elements killed
/// by their order, free generators anywhere.
pub fn hom_from_seed(a: &FgGroup, b: &FgGroup, seed: &[i64]) -> GroupHom {
    let e = b.torsion_exponent();
    let images = a
        .moduli()
        .iter()
        .enumerate()
        .map(|(j, d)| {
            let raw: Vec<Int> = (0..b.dim()).map(|i| Int::from(seed[(i + 3 * j) % seed.len()])).collect();
            let y = b.reduce(&raw);
            if d.is_zero() {
                y
            } else {
                let mut y = b.scale(&(&e / e.gcd(d)), &y);
                for (i, c) in y.iter_mut().enumerate() {
                    if i >= b.torsion_rank() {
                        *c = Int::zero();
                    }
                }
                y
            }
        })
        .collect();
    GroupHom::from_images(a.clone(), b.clone(), images).expect("orders respected")
}

pub type Chain = (FgGroup, FgGroup, FgGroup, Vec<i64>, Vec<i64>, u64);

/// Three groups, two composable homs and a coefficient.
pub fn chain_strategy() -> impl Strategy<Value = Chain> {
    (
        group_strategy(2),
        group_strategy(2),
        group_strategy(2),
        prop::collection::vec(-20i64..=20, 1..=8),
        prop::collection::vec(-20i64..=20, 1..=8),
        2u64..=12,
    )
}

fn same(f: &GroupHom, g: &GroupHom) -> bool {
    f.domain() == g.domain()
        && f.codomain() == g.codomain()
        && (0..f.domain().dim()).all(|j| {
            f.codomain().reduce(&f.image_of_generator(j)) == g.codomain().reduce(&g.image_of_generator(j))
        })
}

pub fn check_functor_laws(c: &Chain) -> Result<(), TestCaseError> {
    let (a, b, cc, s1, s2, n) = c;
    let n = Int::from(*n);
    let f = hom_from_seed(a, b, s1);
    let g = hom_from_seed(b, cc, s2);
    let gf = g.compose(&f).unwrap();

    // - ⊗ Z/n
    prop_assert!(same(&tensor_hom(&GroupHom::identity(a), &n), &GroupHom::identity(&tensor_zmod(a, &n).0)));
    prop_assert!(same(&tensor_hom(&gf, &n), &tensor_hom(&g, &n).compose(&tensor_hom(&f, &n)).unwrap()));
    let (_, pa) = tensor_zmod(a, &n);
    let (_, pb) = tensor_zmod(b, &n);
    prop_assert!(same(&tensor_hom(&f, &n).compose(&pa).unwrap(), &pb.compose(&f).unwrap()));
    let (ta, _) = tensor_zmod(a, &n);
    for x in ta.moduli() {
        prop_assert!(x.is_positive() && n.is_multiple_of(&x));
    }

    // -[n]
    let ia = n_torsion(a, &n);
    let ib = n_torsion(b, &n);
    prop_assert!(same(&n_torsion_hom(&GroupHom::identity(a), &n), &GroupHom::identity(&ia.structure().group)));
    prop_assert!(same(&n_torsion_hom(&gf, &n), &n_torsion_hom(&g, &n).compose(&n_torsion_hom(&f, &n)).unwrap()));
    let lhs = ib.structure().inclusion.compose(&n_torsion_hom(&f, &n)).unwrap();
    let rhs = f.compose(&ia.structure().inclusion).unwrap();
    prop_assert!(same(&lhs, &rhs));
    for x in ia.generators() {
        prop_assert!(a.is_zero(&a.scale(&n, x)));
    }
    Ok(())
}
