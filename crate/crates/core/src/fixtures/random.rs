//! Seeded random valid instances.

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fgab::{FgGroup, Int};
use crate::kunneth::KunnethInstance;

use super::aligned::{direct_sum_instance, Aligned, LatticeSpec};
use super::family::aligned_family;
use super::FixtureError;
use super::transport::{random_automorphism, random_hom, transport, twist};

/// Size limits for [`random_instance`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomBounds {
    pub max_nodes: usize,
    pub max_kn_order: u64,
    pub coefficients: Vec<u64>,
    pub max_k0_rank: usize,
    pub max_k1_parts: usize,
    /// Apply `α = id + ρ̃hβ̃` with a random `h`.
    pub twist: bool,
    /// Relabel all three groups by random automorphisms.
    pub relabel: bool,
}

impl Default for RandomBounds {
    fn default() -> Self {
        RandomBounds {
            max_nodes: 6,
            max_kn_order: 4096,
            coefficients: vec![2, 3, 4, 6, 8, 9, 12],
            max_k0_rank: 2,
            max_k1_parts: 3,
            twist: true,
            relabel: true,
        }
    }
}

const CYCLIC_POOL: [u64; 12] = [2, 3, 4, 5, 6, 8, 9, 12, 16, 18, 24, 27];

/// The aligned instance underlying `random_instance(seed, bounds)`.
pub fn random_aligned(seed: u64, bounds: &RandomBounds) -> Aligned {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_aligned_with(&mut rng, bounds)
}

/// Drawn parameters of an aligned instance.
struct Shape {
    n: u64,
    r0: usize,
    parts: Vec<FgGroup>,
    spec: LatticeSpec,
}

fn random_aligned_with(rng: &mut ChaCha8Rng, bounds: &RandomBounds) -> Aligned {
    let s = random_shape(rng, bounds);
    direct_sum_instance(s.r0, &s.parts, &Int::from(s.n), &s.spec).expect("random spec is monotone by construction")
}

fn random_shape(rng: &mut ChaCha8Rng, bounds: &RandomBounds) -> Shape {
    assert!(!bounds.coefficients.is_empty());
    loop {
        let n = *bounds.coefficients.choose(rng).expect("non-empty");
        let size = rng.gen_range(1..=3usize);
        let mut relations = Vec::new();
        for a in 0..size {
            for b in a + 1..size {
                if rng.gen_bool(0.4) {
                    relations.push((a, b));
                }
            }
        }
        let r0 = rng.gen_range(0..=bounds.max_k0_rank);
        let parts_len = rng.gen_range(0..=bounds.max_k1_parts);
        let mut parts = Vec::with_capacity(parts_len);
        let mut kn_order = (n as u128).pow(r0 as u32);
        for _ in 0..parts_len {
            if rng.gen_bool(0.15) {
                parts.push(FgGroup::free(1));
                continue;
            }
            let meets_n: Vec<u64> = CYCLIC_POOL.iter().copied().filter(|d| d.gcd(&n) > 1).collect();
            let d = if rng.gen_bool(0.85) {
                *meets_n.choose(rng).expect("2 or 3 divides n")
            } else {
                *CYCLIC_POOL.choose(rng).expect("non-empty")
            };
            kn_order *= d.gcd(&n) as u128;
            parts.push(FgGroup::cyclic(d));
        }
        if kn_order > bounds.max_kn_order as u128 {
            continue;
        }
        let k0_at: Vec<usize> = (0..r0).map(|_| rng.gen_range(0..size)).collect();
        let k1_at: Vec<usize> = (0..parts.len()).map(|_| rng.gen_range(0..size)).collect();
        let spec = LatticeSpec::from_poset(size, &relations, &k0_at, &k1_at);
        if spec.nodes.len() > bounds.max_nodes {
            continue;
        }
        return Shape { n, r0, parts, spec };
    }
}

/// A valid instance: a random aligned instance, twisted off the coordinate
/// axes and relabelled by random automorphisms, per `bounds`. Deterministic
/// in `seed`.
pub fn random_instance(seed: u64, bounds: &RandomBounds) -> KunnethInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let aligned = random_aligned_with(&mut rng, bounds);
    let mut inst = aligned.instance;
    if bounds.twist {
        let t = inst.k1_torsion();
        let (k0n, _) = inst.k0_mod_n();
        let h = random_hom(&t.structure().group, &k0n, &mut rng);
        inst = twist(&inst, &h).expect("twist of a valid instance");
    }
    if bounds.relabel {
        let psi0 = random_automorphism(&inst.data.k0, &mut rng, 6);
        let psi = random_automorphism(inst.kn(), &mut rng, 8);
        let psi1 = random_automorphism(&inst.data.k1, &mut rng, 6);
        inst = transport(&inst, &psi0, &psi, &psi1).expect("automorphisms");
    }
    inst
}

/// A random aligned shape built at every coefficient of `chain` (the first
/// one carries the instance), with the natural coherent family attached.
pub fn random_family(seed: u64, bounds: &RandomBounds, chain: &[u64]) -> Result<KunnethInstance, FixtureError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = RandomBounds {
        coefficients: chain.to_vec(),
        ..bounds.clone()
    };
    if chain.is_empty() {
        return Err(FixtureError::BadParams("empty coefficient chain".into()));
    }
    let s = random_shape(&mut rng, &b);
    aligned_family(s.r0, &s.parts, chain, &s.spec)
}
