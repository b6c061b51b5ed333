//! Finite truncations of `D_p`.
//!
//! `Kn = (Z/p)^{2m+1}` with coordinates `(a, b, c_{-m+1}, …, c_{m-1})`; the
//! window ends `c_{-m} = b` and `c_m = a` are implicit, which is the finite
//! form of "`c_i → a` as `i → ∞`, `c_i → b` as `i → -∞`". `K1 = Z/p`,
//! `β̃(a, b, c) = a`, `K0 = Z^{2m}` with `ρ̃` onto the `(b, c)` coordinates,
//! and `n = p`.
//!
//! The ideal `I_k` has `Kn(I_k) = {c_i = 0 for |i| <= k}` with the window
//! ends included, so `k = m` forces `a = b = 0`. Only `K1` and the shape of
//! `Kn` are forced; `K0`, `ρ̃`, `β̃` and the ideal groups are one consistent
//! choice among several. Ideals nest as
//! `0 < I_{k_max} < … < I_0 < top`.

use crate::fgab::{Element, FgGroup, GroupHom, Int, Matrix, Subgroup};
use crate::kunneth::{CoeffGroup, IdealNode, KData, KunnethInstance};
use crate::lattice::IdealLattice;

use super::FixtureError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DpTruncation {
    pub p: u64,
    pub m: usize,
    pub k_max: usize,
}

/// Decoded `Kn` element with the window ends filled in: `c[i + m]` is `c_i`
/// for `-m <= i <= m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpElement {
    pub a: Int,
    pub b: Int,
    pub c: Vec<Int>,
}

impl DpTruncation {
    pub fn new(p: u64, m: usize, k_max: usize) -> Result<Self, FixtureError> {
        if p < 2 || !(2..p).all(|d| d * d > p || !p.is_multiple_of(d)) {
            return Err(FixtureError::BadParams(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(FixtureError::BadParams("window radius must be positive".into()));
        }
        if k_max > m {
            return Err(FixtureError::BadParams(format!("k_max {k_max} exceeds m {m}")));
        }
        Ok(DpTruncation { p, m, k_max })
    }

    fn dim(&self) -> usize {
        2 * self.m + 1
    }

    /// Coordinate index of `c_i`, `|i| < m`.
    fn c_index(&self, i: i64) -> usize {
        (2 + i + self.m as i64 - 1) as usize
    }

    pub fn ideal_id(k: usize) -> String {
        format!("I{k}")
    }

    /// `c_i` as a function of `Kn` coordinates, window ends included.
    pub fn decode(&self, x: &[Int]) -> DpElement {
        let m = self.m as i64;
        let c = (-m..=m)
            .map(|i| {
                if i == m {
                    x[0].clone()
                } else if i == -m {
                    x[1].clone()
                } else {
                    x[self.c_index(i)].clone()
                }
            })
            .collect();
        DpElement {
            a: x[0].clone(),
            b: x[1].clone(),
            c,
        }
    }

    /// Does `x` satisfy `c_i = 0` for `|i| <= k`?
    pub fn in_corridor(&self, x: &[Int], k: usize) -> bool {
        let d = self.decode(x);
        let m = self.m as i64;
        (-(k as i64)..=k as i64).all(|i| d.c[(i + m) as usize] == Int::from(0))
    }

    /// Generators of `Kn(I_k)`.
    fn kn_ideal(&self, k: usize) -> Vec<Element> {
        let unit = |j: usize| {
            let mut e = vec![Int::from(0); self.dim()];
            e[j] = Int::from(1);
            e
        };
        let m = self.m as i64;
        let mut gens = Vec::new();
        if k < self.m {
            gens.push(unit(0));
            gens.push(unit(1));
        }
        for i in -(m - 1)..m {
            if i.unsigned_abs() as usize > k {
                gens.push(unit(self.c_index(i)));
            }
        }
        gens
    }

    /// `K0(I_k)`: the `K0` coordinates whose `ρ̃`-images survive in `Kn(I_k)`.
    fn k0_ideal(&self, k: usize) -> Vec<Element> {
        let unit = |j: usize| {
            let mut e = vec![Int::from(0); 2 * self.m];
            e[j] = Int::from(1);
            e
        };
        let m = self.m as i64;
        let mut gens = Vec::new();
        if k < self.m {
            gens.push(unit(0));
        }
        for i in -(m - 1)..m {
            if i.unsigned_abs() as usize > k {
                gens.push(unit(self.c_index(i) - 1));
            }
        }
        gens
    }

    pub fn instance(&self) -> KunnethInstance {
        let p = Int::from(self.p);
        let r0 = 2 * self.m;
        let k0 = FgGroup::free(r0);
        let k1 = FgGroup::new(vec![p.clone()], 0).expect("prime");
        let kn = FgGroup::new(vec![p.clone(); self.dim()], 0).expect("equal factors");
        let k0n = FgGroup::new(vec![p.clone(); r0], 0).expect("equal factors");
        let mut rho = Matrix::zeros(self.dim(), r0);
        for j in 0..r0 {
            rho[(j + 1, j)] = Int::from(1);
        }
        let mut beta = Matrix::zeros(1, self.dim());
        beta[(0, 0)] = Int::from(1);
        let data = KData {
            k0: k0.clone(),
            k1: k1.clone(),
        };
        let rho = GroupHom::new(k0n, kn.clone(), rho).expect("coordinate map");
        let beta = GroupHom::new(kn.clone(), k1.clone(), beta).expect("coordinate map");
        let coeff = CoeffGroup::new(&data, p, kn.clone(), rho, beta).expect("shapes");

        let mut ids = vec!["0".to_string(), "top".to_string()];
        ids.extend((0..=self.k_max).map(Self::ideal_id));
        let mut covers = vec![(Self::ideal_id(0), "top".to_string())];
        for k in 0..self.k_max {
            covers.push((Self::ideal_id(k + 1), Self::ideal_id(k)));
        }
        covers.push(("0".to_string(), Self::ideal_id(self.k_max)));
        let lattice = IdealLattice::new(&ids, &covers).expect("chain");

        let sub = |g: &FgGroup, gens: Vec<Element>| Subgroup::new(g.clone(), gens).expect("shapes");
        let mut ideals = vec![
            IdealNode {
                id: "0".into(),
                k0: Subgroup::zero(&k0),
                k1: Subgroup::zero(&k1),
                kn: Subgroup::zero(&kn),
            },
            IdealNode {
                id: "top".into(),
                k0: Subgroup::whole(&k0),
                k1: Subgroup::whole(&k1),
                kn: Subgroup::whole(&kn),
            },
        ];
        for k in 0..=self.k_max {
            ideals.push(IdealNode {
                id: Self::ideal_id(k),
                k0: sub(&k0, self.k0_ideal(k)),
                k1: Subgroup::whole(&k1),
                kn: sub(&kn, self.kn_ideal(k)),
            });
        }
        KunnethInstance::new(data, coeff, lattice, ideals).expect("consistent")
    }

    /// Number of ideal-respecting splittings for `k_max < m`:
    /// `σ(1) = (1, b, c)` with `c_i` free exactly for `k_max < |i| < m`.
    pub fn feasible_count(&self) -> u64 {
        if self.k_max >= self.m {
            return 0;
        }
        self.p.pow(1 + 2 * (self.m - 1 - self.k_max) as u32)
    }
}

/// `dp_truncation(p, m, k_max)`.
pub fn dp_truncation(p: u64, m: usize, k_max: usize) -> Result<KunnethInstance, FixtureError> {
    Ok(DpTruncation::new(p, m, k_max)?.instance())
}
