//! Checks on a splitting family that do not trust its construction, and the
//! exhaustive oracle.

use crate::fgab::{GroupHom, SubgroupHom};
use crate::kunneth::KunnethInstance;
use crate::report::{ValidationReport, Witness};
use crate::sequences::{enumerate_splittings, SequenceError};

use super::build::SplittingFamily;
use super::SplitResult;

pub const SHAPE: &str = "shape";
pub const SPLITTING: &str = "splitting";
pub const CONTAINMENT: &str = "containment";
pub const COHERENCE: &str = "coherence";

/// Oracle limit on `|Kn|`.
pub const DEFAULT_ORACLE_BOUND: u64 = 256;

/// Splitting identity and containment per ideal, then agreement on every
/// comparable pair `J < I`: `σ_I = σ_J` on `K1(J)[n]`.
pub fn verify_ideal_splitting(inst: &KunnethInstance, fam: &SplittingFamily) -> ValidationReport {
    let mut r = ValidationReport::new();
    let lat = &inst.lattice;
    if fam.ids != lat.ids() || fam.sigmas.len() != lat.len() {
        r.fail(SHAPE, "family", "ideal ids do not match the lattice", None);
        return r;
    }
    let mut usable = vec![true; lat.len()];
    for i in 0..lat.len() {
        let id = lat.id(i);
        let s = &fam.sigmas[i];
        if s.domain() != &inst.k1_torsion_of(i) || s.codomain() != inst.kn() {
            r.fail(SHAPE, id, format!("sigma_{id} is not a map K1({id})[n] -> Kn"), None);
            usable[i] = false;
            continue;
        }
        r.pass(SHAPE, id);
        let inc = &s.domain().structure().inclusion;
        let bad = (0..inc.domain().dim()).find(|&j| {
            inst.beta().apply(&s.map().image_of_generator(j)) != inc.image_of_generator(j)
        });
        match bad {
            None => r.pass(SPLITTING, id),
            Some(j) => r.fail(
                SPLITTING,
                id,
                format!("beta~ sigma_{id} is not the identity"),
                Some(Witness::new("K1", &inc.image_of_generator(j))),
            ),
        }
        let kn_i = &inst.ideal(i).kn;
        let out = (0..inc.domain().dim()).find(|&j| !kn_i.contains(&s.map().image_of_generator(j)));
        match out {
            None => r.pass(CONTAINMENT, id),
            Some(j) => r.fail(
                CONTAINMENT,
                id,
                format!("sigma_{id} leaves Kn({id})"),
                Some(Witness::new("K1", &inc.image_of_generator(j))),
            ),
        }
    }
    for i in 0..lat.len() {
        for j in lat.below(i) {
            if !usable[i] || !usable[j] {
                continue;
            }
            let scope = format!("{} < {}", lat.id(j), lat.id(i));
            let (big, small) = (&fam.sigmas[i], &fam.sigmas[j]);
            let inc = &small.domain().structure().inclusion;
            let differ = (0..inc.domain().dim()).find_map(|k| {
                let y = inc.image_of_generator(k);
                let agree = big.eval(&y).ok() == Some(small.map().image_of_generator(k));
                (!agree).then_some(y)
            });
            match differ {
                None => r.pass(COHERENCE, scope),
                Some(y) => r.fail(
                    COHERENCE,
                    scope,
                    format!("sigma_{} and sigma_{} differ", lat.id(i), lat.id(j)),
                    Some(Witness::new("K1", &y)),
                ),
            }
        }
    }
    r
}

/// First ideal whose `K1(I)[n]` is not mapped into `Kn(I)` by `sigma`
/// (a splitting on `K1[n]`).
pub fn respects_ideals(inst: &KunnethInstance, sigma: &SubgroupHom) -> Option<usize> {
    (0..inst.lattice.len()).find(|&i| {
        let kn_i = &inst.ideal(i).kn;
        inst.k1_torsion_of(i)
            .generators()
            .iter()
            .any(|y| sigma.eval(y).map_or(true, |v| !kn_i.contains(&v)))
    })
}

/// Every ideal-respecting splitting on `K1[n]`, by exhaustive enumeration of
/// the whole row's splittings, in lexicographic order. Errors when `|Kn|`
/// exceeds `bound` or the row is not exact.
pub fn ideal_respecting_splittings(inst: &KunnethInstance, bound: u64) -> SplitResult<Vec<SubgroupHom>> {
    let order = inst
        .kn()
        .order()
        .ok_or_else(|| SequenceError::SizeBoundExceeded("Kn is infinite".into()))?;
    if order > bound.into() {
        return Err(SequenceError::SizeBoundExceeded(format!("|Kn| = {order} exceeds {bound}")).into());
    }
    let seq = inst.top_sequence()?;
    let t = inst.k1_torsion();
    let all = enumerate_splittings(&seq, bound)?;
    let mut out = Vec::new();
    for s in all {
        let sigma = SubgroupHom::new(t.clone(), s)?;
        if respects_ideals(inst, &sigma).is_none() {
            out.push(sigma);
        }
    }
    Ok(out)
}

/// Oracle comparison for one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub feasible: usize,
    pub builder_succeeded: bool,
    pub builder_in_feasible_set: bool,
}

impl OracleVerdict {
    pub fn agrees(&self) -> bool {
        (self.feasible > 0) == self.builder_succeeded && (!self.builder_succeeded || self.builder_in_feasible_set)
    }
}

/// Compares the builder's top splitting (if any) against exhaustive search.
pub fn oracle_feasible(
    inst: &KunnethInstance,
    built: Option<&SplittingFamily>,
    bound: u64,
) -> SplitResult<OracleVerdict> {
    let feasible = ideal_respecting_splittings(inst, bound)?;
    let top: Option<GroupHom> = built.and_then(|f| f.top(inst)).map(|s| s.map().clone());
    let in_set = top.as_ref().is_some_and(|m| feasible.iter().any(|f| f.map() == m));
    Ok(OracleVerdict {
        feasible: feasible.len(),
        builder_succeeded: built.is_some(),
        builder_in_feasible_set: in_set,
    })
}
