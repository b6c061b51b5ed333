//! Mutations that break exactly one structural hypothesis.
//!
//! Every defect extends the lattice above the old top by a few new nodes
//! carrying extra cyclic summands in `K1` and `Kn` (with `β̃` defined on the
//! new `Kn` summands), so the old part of the instance is untouched and the
//! failure is confined to the new nodes.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::fgab::{DirectSum, Element, FgGroup, GroupHom, Int, Subgroup};
use crate::kunneth::validate as checks;
use crate::kunneth::{CoeffGroup, IdealNode, KunnethInstance};
use crate::lattice::IdealLattice;

use super::FixtureError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DefectKind {
    None,
    BreakExactness,
    BreakPurity,
    BreakLatticeLaw,
    BreakNaturality,
    BreakDistributivity,
}

impl DefectKind {
    pub const ALL: [DefectKind; 6] = [
        DefectKind::None,
        DefectKind::BreakExactness,
        DefectKind::BreakPurity,
        DefectKind::BreakLatticeLaw,
        DefectKind::BreakNaturality,
        DefectKind::BreakDistributivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DefectKind::None => "none",
            DefectKind::BreakExactness => "break-exactness",
            DefectKind::BreakPurity => "break-purity",
            DefectKind::BreakLatticeLaw => "break-lattice-law",
            DefectKind::BreakNaturality => "break-naturality",
            DefectKind::BreakDistributivity => "break-distributivity",
        }
    }

    /// The validation check this defect is designed to fail.
    pub fn target_check(self) -> Option<&'static str> {
        match self {
            DefectKind::None => None,
            DefectKind::BreakExactness => Some(checks::IDEAL_EXACTNESS),
            DefectKind::BreakPurity => Some(checks::PURITY),
            DefectKind::BreakLatticeLaw => Some(checks::LATTICE_LAW),
            DefectKind::BreakNaturality => Some(checks::NATURALITY),
            DefectKind::BreakDistributivity => Some(checks::DISTRIBUTIVITY),
        }
    }
}

impl fmt::Display for DefectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DefectKind {
    type Err = FixtureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DefectKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| FixtureError::BadParams(format!("unknown defect kind {s:?}")))
    }
}

fn smallest_prime_factor(x: u64) -> Option<u64> {
    (2..=x).find(|d| x.is_multiple_of(*d))
}

/// New node above the old top: generators over the extra summands.
struct NewNode {
    id: &'static str,
    x1: Vec<Vec<i64>>,
    xn: Vec<Vec<i64>>,
}

struct Extension {
    x1: Vec<u64>,
    xn: Vec<u64>,
    /// Per `xn` summand: image coefficients over the `x1` summands.
    beta: Vec<Vec<i64>>,
    nodes: Vec<NewNode>,
    /// Cover edges; `"^"` stands for the old top.
    covers: Vec<(&'static str, &'static str)>,
}

const NEW_TOP: &str = "x-top";

fn extend(inst: &KunnethInstance, ext: Extension) -> Result<KunnethInstance, FixtureError> {
    let old_top = inst
        .top()
        .ok_or_else(|| FixtureError::NotApplicable("instance has no top".into()))?;
    let old_top_id = inst.lattice.id(old_top).to_string();
    let cyc = |d: &u64| FgGroup::cyclic(*d);

    let mut k1_parts = vec![inst.data.k1.clone()];
    k1_parts.extend(ext.x1.iter().map(cyc));
    let k1_sum = DirectSum::new(k1_parts);
    let mut kn_parts = vec![inst.kn().clone()];
    kn_parts.extend(ext.xn.iter().map(cyc));
    let kn_sum = DirectSum::new(kn_parts);
    let (k1, kn) = (k1_sum.group.clone(), kn_sum.group.clone());

    let x1_elem = |coeffs: &[i64]| -> Element {
        let mut comps = vec![inst.data.k1.zero()];
        comps.extend(coeffs.iter().map(|c| vec![Int::from(*c)]));
        k1_sum.element(&comps)
    };
    let xn_elem = |coeffs: &[i64]| -> Element {
        let mut comps = vec![inst.kn().zero()];
        comps.extend(coeffs.iter().map(|c| vec![Int::from(*c)]));
        kn_sum.element(&comps)
    };

    let rho = kn_sum.injection(0).compose(inst.rho())?;
    let mut pieces = vec![k1_sum.injection(0).compose(inst.beta())?];
    for (j, coeffs) in ext.beta.iter().enumerate() {
        let src = &kn_sum.parts[j + 1];
        pieces.push(GroupHom::from_images(src.clone(), k1.clone(), vec![x1_elem(coeffs)])?);
    }
    let beta = kn_sum.copair(&k1, &pieces);
    let data = crate::kunneth::KData {
        k0: inst.data.k0.clone(),
        k1: k1.clone(),
    };
    let coeff = CoeffGroup::new(&data, inst.n().clone(), kn.clone(), rho, beta)?;

    let mut ideals: Vec<IdealNode> = inst
        .ideals
        .iter()
        .map(|node| -> Result<IdealNode, FixtureError> {
            Ok(IdealNode {
                id: node.id.clone(),
                k0: node.k0.clone(),
                k1: k1_sum.injection(0).image_of(&node.k1)?,
                kn: kn_sum.injection(0).image_of(&node.kn)?,
            })
        })
        .collect::<Result<_, _>>()?;
    let base = ideals[old_top].clone();
    let unit = |len: usize, i: usize| -> Vec<i64> { (0..len).map(|j| (i == j) as i64).collect() };
    let top_node = NewNode {
        id: NEW_TOP,
        x1: (0..ext.x1.len()).map(|i| unit(ext.x1.len(), i)).collect(),
        xn: (0..ext.xn.len()).map(|i| unit(ext.xn.len(), i)).collect(),
    };
    for nn in ext.nodes.iter().chain(std::iter::once(&top_node)) {
        if inst.lattice.index(nn.id).is_ok() {
            return Err(FixtureError::NotApplicable(format!("node id {:?} already in use", nn.id)));
        }
        let mut g1 = base.k1.generators().to_vec();
        g1.extend(nn.x1.iter().map(|c| x1_elem(c)));
        let mut gn = base.kn.generators().to_vec();
        gn.extend(nn.xn.iter().map(|c| xn_elem(c)));
        ideals.push(IdealNode {
            id: nn.id.to_string(),
            k0: base.k0.clone(),
            k1: Subgroup::new(k1.clone(), g1)?,
            kn: Subgroup::new(kn.clone(), gn)?,
        });
    }

    let mut ids: Vec<String> = inst.lattice.ids().to_vec();
    ids.extend(ext.nodes.iter().map(|n| n.id.to_string()));
    ids.push(NEW_TOP.to_string());
    let mut covers: Vec<(String, String)> = inst
        .lattice
        .covers()
        .iter()
        .map(|&(a, b)| (inst.lattice.id(a).to_string(), inst.lattice.id(b).to_string()))
        .collect();
    let resolve = |s: &str| if s == "^" { old_top_id.clone() } else { s.to_string() };
    covers.extend(ext.covers.iter().map(|(a, b)| (resolve(a), resolve(b))));
    let lattice = IdealLattice::new(&ids, &covers)?;
    Ok(KunnethInstance::new(data, coeff, lattice, ideals)?)
}

/// Returns a copy of `inst` failing exactly `kind.target_check()`, provided
/// `inst` itself is valid.
pub fn plant_defect(inst: &KunnethInstance, kind: DefectKind) -> Result<KunnethInstance, FixtureError> {
    let n = inst
        .n()
        .to_u64()
        .ok_or_else(|| FixtureError::BadParams("coefficient too large".into()))?;
    let q = smallest_prime_factor(n).expect("n >= 2");
    let chain = |id: &'static str| vec![("^", id), (id, NEW_TOP)];
    let ext = match kind {
        DefectKind::None => return Ok(inst.clone()),
        DefectKind::BreakExactness => Extension {
            x1: vec![q],
            xn: vec![q],
            beta: vec![vec![1]],
            nodes: vec![NewNode {
                id: "x-M",
                x1: vec![vec![1]],
                xn: vec![],
            }],
            covers: chain("x-M"),
        },
        DefectKind::BreakNaturality => Extension {
            x1: vec![q],
            xn: vec![q],
            beta: vec![vec![1]],
            nodes: vec![NewNode {
                id: "x-M",
                x1: vec![],
                xn: vec![vec![1]],
            }],
            covers: chain("x-M"),
        },
        DefectKind::BreakPurity => {
            let k1 = &inst.data.k1;
            let top = k1
                .invariant_factors()
                .last()
                .ok_or_else(|| FixtureError::NotApplicable("K1 is torsion free".into()))?;
            let p = smallest_prime_factor(top.to_u64().expect("small factor")).expect(">= 2");
            let p2 = p * p;
            let g = p2.gcd(&n);
            // X1 = Z/p^2 with the impure subgroup pZ/p^2; Xn = X1[n]
            let (xn, beta, s) = if g == 1 {
                (vec![], vec![], vec![])
            } else {
                let s = if g == p2 { vec![vec![p as i64]] } else { vec![vec![1]] };
                (vec![g], vec![vec![(p2 / g) as i64]], s)
            };
            Extension {
                x1: vec![p2],
                xn,
                beta,
                nodes: vec![NewNode {
                    id: "x-M",
                    x1: vec![vec![p as i64]],
                    xn: s,
                }],
                covers: chain("x-M"),
            }
        }
        DefectKind::BreakLatticeLaw => Extension {
            x1: vec![q],
            xn: vec![q],
            beta: vec![vec![1]],
            nodes: vec![
                NewNode {
                    id: "x-I1",
                    x1: vec![vec![1]],
                    xn: vec![vec![1]],
                },
                NewNode {
                    id: "x-I2",
                    x1: vec![vec![1]],
                    xn: vec![vec![1]],
                },
            ],
            covers: vec![("^", "x-I1"), ("^", "x-I2"), ("x-I1", NEW_TOP), ("x-I2", NEW_TOP)],
        },
        DefectKind::BreakDistributivity => {
            let line = |id: &'static str, v: Vec<i64>| NewNode {
                id,
                x1: vec![v.clone()],
                xn: vec![v],
            };
            Extension {
                x1: vec![q, q],
                xn: vec![q, q],
                beta: vec![vec![1, 0], vec![0, 1]],
                nodes: vec![
                    line("x-L1", vec![1, 0]),
                    line("x-L2", vec![0, 1]),
                    line("x-L3", vec![1, 1]),
                ],
                covers: vec![
                    ("^", "x-L1"),
                    ("^", "x-L2"),
                    ("^", "x-L3"),
                    ("x-L1", NEW_TOP),
                    ("x-L2", NEW_TOP),
                    ("x-L3", NEW_TOP),
                ],
            }
        }
    };
    extend(inst, ext)
}
