//! Aligned instances at several coefficients with their natural maps.

use crate::fgab::{FgGroup, Int};
use crate::kunneth::{CoeffLevel, CoherentFamily, KunnethInstance};

use super::aligned::{direct_sum_instance, LatticeSpec};
use super::FixtureError;

/// The aligned instance at `coefficients[0]`, carrying the family of all
/// aligned levels with their coordinate sections and the induced `κ`, `λ`.
pub fn aligned_family(
    k0_rank: usize,
    k1_parts: &[FgGroup],
    coefficients: &[u64],
    spec: &LatticeSpec,
) -> Result<KunnethInstance, FixtureError> {
    let first = *coefficients
        .first()
        .ok_or_else(|| FixtureError::BadParams("no coefficients".into()))?;
    let mut levels = Vec::with_capacity(coefficients.len());
    let mut base = None;
    for &n in coefficients {
        let a = direct_sum_instance(k0_rank, k1_parts, &Int::from(n), spec)?;
        levels.push(CoeffLevel {
            coeff: a.instance.coeff.clone(),
            sigma: Some(a.section.clone()),
        });
        if n == first {
            base = Some(a.instance);
        }
    }
    let base = base.expect("first coefficient visited");
    let family = CoherentFamily::natural(base.data.clone(), levels)?;
    Ok(base.with_family(family))
}
