//! Direct-sum ("aligned") instances: `Kn = K0⊗Z/n ⊕ ⊕_t Z/(d_t, n)` with
//! ideals spanned by coordinate summands.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::fgab::{tensor_zmod, DirectSum, FgGroup, GroupHom, Int, Subgroup};
use crate::kunneth::{CoeffGroup, IdealNode, KData, KunnethInstance};
use crate::lattice::IdealLattice;

use super::FixtureError;

/// Ideal lattice plus the summands each ideal contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSpec {
    pub nodes: Vec<String>,
    pub covers: Vec<(String, String)>,
    /// Per node: indices of `K0 = Z^r` coordinates.
    pub k0: Vec<Vec<usize>>,
    /// Per node: indices into the `K1` summand list.
    pub k1: Vec<Vec<usize>>,
}

impl LatticeSpec {
    /// Down-set lattice of a poset on `0..size` (`relations` are `a < b`).
    /// Summand `s` of `K0` (resp. `K1`) sits at poset element `k0_at[s]`
    /// (resp. `k1_at[s]`) and belongs to every down-set containing it.
    /// Down-sets are named by their elements as letters, `"0"` for the
    /// empty one.
    pub fn from_poset(
        size: usize,
        relations: &[(usize, usize)],
        k0_at: &[usize],
        k1_at: &[usize],
    ) -> LatticeSpec {
        assert!(size <= 26);
        let mut below = vec![vec![false; size]; size];
        for (i, row) in below.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in relations {
            below[a][b] = true;
        }
        for k in 0..size {
            for i in 0..size {
                for j in 0..size {
                    if below[i][k] && below[k][j] {
                        below[i][j] = true;
                    }
                }
            }
        }
        let mut downsets: Vec<Vec<usize>> = Vec::new();
        for mask in 0u32..(1 << size) {
            let members: Vec<usize> = (0..size).filter(|&i| mask & (1 << i) != 0).collect();
            let closed = members
                .iter()
                .all(|&b| (0..size).all(|a| !below[a][b] || mask & (1 << a) != 0));
            if closed {
                downsets.push(members);
            }
        }
        let name = |d: &[usize]| -> String {
            if d.is_empty() {
                "0".into()
            } else {
                d.iter().map(|&i| (b'a' + i as u8) as char).collect()
            }
        };
        let nodes: Vec<String> = downsets.iter().map(|d| name(d)).collect();
        let mut covers = Vec::new();
        for x in &downsets {
            for y in &downsets {
                if y.len() == x.len() + 1 && x.iter().all(|e| y.contains(e)) {
                    covers.push((name(x), name(y)));
                }
            }
        }
        let pick = |at: &[usize], d: &[usize]| -> Vec<usize> {
            (0..at.len()).filter(|&s| d.contains(&at[s])).collect()
        };
        LatticeSpec {
            k0: downsets.iter().map(|d| pick(k0_at, d)).collect(),
            k1: downsets.iter().map(|d| pick(k1_at, d)).collect(),
            nodes,
            covers,
        }
    }

    /// Single chain `0 < 1 < … < len-1`, named `"I0"…`; summands enter at
    /// the given level.
    pub fn chain(len: usize, k0_at: &[usize], k1_at: &[usize]) -> LatticeSpec {
        let nodes: Vec<String> = (0..len).map(|i| format!("I{i}")).collect();
        let covers = (1..len)
            .map(|i| (nodes[i - 1].clone(), nodes[i].clone()))
            .collect();
        let pick = |at: &[usize], lvl: usize| (0..at.len()).filter(|&s| at[s] <= lvl).collect();
        LatticeSpec {
            k0: (0..len).map(|l| pick(k0_at, l)).collect(),
            k1: (0..len).map(|l| pick(k1_at, l)).collect(),
            nodes,
            covers,
        }
    }
}

/// An aligned instance together with its coordinate section.
#[derive(Clone, Debug)]
pub struct Aligned {
    pub instance: KunnethInstance,
    /// `σ: K1[n] -> Kn` onto the `K1[n]` block, on the canonical group of `K1[n]`.
    pub section: GroupHom,
    /// `Kn` as `K0⊗Z/n` followed by one cyclic block per torsion `K1` summand
    /// meeting `n`.
    pub kn_sum: DirectSum,
    pub k1_sum: DirectSum,
}

/// Builds the aligned instance for `K0 = Z^k0_rank` and `K1 = ⊕ k1_parts`.
/// Each part must be cyclic (`Z/d`) or `Z`.
pub fn direct_sum_instance(
    k0_rank: usize,
    k1_parts: &[FgGroup],
    n: &Int,
    spec: &LatticeSpec,
) -> Result<Aligned, FixtureError> {
    if n < &Int::from(2) {
        return Err(FixtureError::BadParams(format!("coefficient {n} < 2")));
    }
    for p in k1_parts {
        if p.dim() != 1 {
            return Err(FixtureError::BadParams(format!("K1 summand {p} is not cyclic")));
        }
    }
    if spec.k0.len() != spec.nodes.len() || spec.k1.len() != spec.nodes.len() {
        return Err(FixtureError::BadParams("spec rows do not match nodes".into()));
    }
    let lattice = IdealLattice::new(&spec.nodes, &spec.covers)?;
    for (lo, hi) in &spec.covers {
        let (a, b) = (pos(spec, lo), pos(spec, hi));
        let sub = |x: &Vec<usize>, y: &Vec<usize>| x.iter().all(|e| y.contains(e));
        if !sub(&spec.k0[a], &spec.k0[b]) || !sub(&spec.k1[a], &spec.k1[b]) {
            return Err(FixtureError::NonMonotone(lo.clone(), hi.clone()));
        }
    }

    let k0 = FgGroup::free(k0_rank);
    let k1_sum = DirectSum::new(k1_parts.to_vec());
    let k1 = k1_sum.group.clone();
    let (k0n, pi) = tensor_zmod(&k0, n);

    // torsion K1 summands that survive in K1[n]
    let blocks: Vec<(usize, Int, Int)> = k1_parts
        .iter()
        .enumerate()
        .filter_map(|(t, p)| {
            let d = p.modulus(0);
            if d.is_zero() {
                return None;
            }
            let g = d.gcd(n);
            (!g.is_one()).then(|| (t, g.clone(), &d / &g))
        })
        .collect();
    let mut kn_parts = vec![k0n.clone()];
    kn_parts.extend(blocks.iter().map(|(_, g, _)| FgGroup::new(vec![g.clone()], 0).unwrap()));
    let kn_sum = DirectSum::new(kn_parts);
    let kn = kn_sum.group.clone();

    let rho = kn_sum.injection(0).clone();
    let mut pieces = vec![GroupHom::zero(&k0n, &k1)];
    for (t, _, scale) in &blocks {
        let part = &k1_parts[*t];
        let into = k1_sum.injection(*t);
        let gen_img = into.apply(&part.scale(scale, &part.generator(0)));
        let cyc = &kn_sum.parts[pieces.len()];
        pieces.push(GroupHom::from_images(cyc.clone(), k1.clone(), vec![gen_img])?);
    }
    let beta = kn_sum.copair(&k1, &pieces);

    let data = KData {
        k0: k0.clone(),
        k1: k1.clone(),
    };
    let coeff = CoeffGroup::new(&data, n.clone(), kn.clone(), rho, beta)?;

    let mut ideals = Vec::with_capacity(spec.nodes.len());
    for (i, id) in spec.nodes.iter().enumerate() {
        let k0_gens = spec.k0[i].iter().map(|&c| k0.generator(c)).collect();
        let k1_gens = spec.k1[i]
            .iter()
            .map(|&t| k1_sum.injection(t).image_of_generator(0))
            .collect();
        let mut kn_gens: Vec<_> = spec.k0[i]
            .iter()
            .map(|&c| kn_sum.injection(0).apply(&pi.apply(&k0.generator(c))))
            .collect();
        for (b, (t, _, _)) in blocks.iter().enumerate() {
            if spec.k1[i].contains(t) {
                kn_gens.push(kn_sum.injection(b + 1).image_of_generator(0));
            }
        }
        ideals.push(IdealNode {
            id: id.clone(),
            k0: Subgroup::new(k0.clone(), k0_gens)?,
            k1: Subgroup::new(k1.clone(), k1_gens)?,
            kn: Subgroup::new(kn.clone(), kn_gens)?,
        });
    }
    let instance = KunnethInstance::new(data, coeff, lattice, ideals)?;

    let block_gens = (1..kn_sum.len())
        .map(|b| kn_sum.injection(b).image_of_generator(0))
        .collect();
    let complement = Subgroup::new(kn.clone(), block_gens)?;
    let section = section_through(&instance, &complement)
        .ok_or_else(|| FixtureError::Internal("coordinate block is not a complement".into()))?;
    Ok(Aligned {
        instance,
        section,
        kn_sum,
        k1_sum,
    })
}

fn pos(spec: &LatticeSpec, id: &str) -> usize {
    spec.nodes.iter().position(|x| x == id).expect("validated by lattice")
}

/// The splitting with image `d`, if `β̃` maps `d` isomorphically onto `K1[n]`.
pub fn section_through(inst: &KunnethInstance, d: &Subgroup) -> Option<GroupHom> {
    let t = inst.k1_torsion();
    let inc = &d.structure().inclusion;
    let onto = inst.beta().compose(inc).ok()?.corestrict(&t).ok()?;
    let inv = onto.inverse()?;
    inc.compose(&inv).ok()
}
