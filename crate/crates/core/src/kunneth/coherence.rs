//! Maps between coefficient levels and their compatibility relations.
//!
//! `κ_{m,n}: K(·;Z/n) -> K(·;Z/m)` is stored for every ordered pair of
//! distinct comparable coefficients; `κ_{n,n}` is the identity and never
//! stored. The relations checked, with `(a,b) = gcd`:
//!
//! * `β_m κ_{m,n} = n/(n,m) · β_n`                      ("beta-kappa")
//! * `κ_{m,n} ρ_n = m/(n,m) · ρ_m`                      ("kappa-rho")
//! * `κ_{k,m} κ_{m,n} = m(k,n)/((k,m)(m,n)) · κ_{k,n}`  ("kappa-kappa")
//! * `σ_m λ_{m,n} = κ_{m,n} σ_n` when every level has a splitting ("kappa-sigma")

use num_integer::Integer;
use thiserror::Error;

use crate::fgab::{n_torsion, Element, FgGroup, GroupHom, Int, Matrix, Subgroup};
use crate::report::{ValidationReport, Witness};

use super::{CoeffGroup, KData};

pub const BETA_KAPPA: &str = "beta-kappa";
pub const KAPPA_RHO: &str = "kappa-rho";
pub const KAPPA_KAPPA: &str = "kappa-kappa";
pub const KAPPA_HOM: &str = "kappa-hom";
pub const KAPPA_SIGMA: &str = "kappa-sigma";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoherenceError {
    #[error("missing {kind} map for (m={m}, n={n})")]
    MissingMap { kind: &'static str, m: String, n: String },
    #[error("missing splitting at coefficient {0}")]
    MissingSigma(String),
    #[error("map {kind} for (m={m}, n={n}) has shape {rows}x{cols}")]
    BadShape {
        kind: &'static str,
        m: String,
        n: String,
        rows: usize,
        cols: usize,
    },
    #[error("coefficient {0} is listed twice")]
    DuplicateLevel(String),
}

/// A raw matrix between two coefficient levels, `m` the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientMap {
    pub m: Int,
    pub n: Int,
    pub matrix: Matrix,
}

/// One coefficient row, optionally with a splitting `σ: K1[n] -> Kn` given on
/// the canonical group of `K1[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffLevel {
    pub coeff: CoeffGroup,
    pub sigma: Option<GroupHom>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherentFamily {
    pub data: KData,
    /// Sorted by coefficient.
    pub levels: Vec<CoeffLevel>,
    pub kappa: Vec<CoefficientMap>,
    pub lambda: Vec<CoefficientMap>,
}

fn comparable(a: &Int, b: &Int) -> bool {
    a != b && (a.is_multiple_of(b) || b.is_multiple_of(a))
}

fn gcd(a: &Int, b: &Int) -> Int {
    a.gcd(b)
}

impl CoherentFamily {
    pub fn new(
        data: KData,
        mut levels: Vec<CoeffLevel>,
        kappa: Vec<CoefficientMap>,
        lambda: Vec<CoefficientMap>,
    ) -> Result<Self, CoherenceError> {
        levels.sort_by(|a, b| a.coeff.n.cmp(&b.coeff.n));
        for w in levels.windows(2) {
            if w[0].coeff.n == w[1].coeff.n {
                return Err(CoherenceError::DuplicateLevel(w[0].coeff.n.to_string()));
            }
        }
        let fam = CoherentFamily {
            data,
            levels,
            kappa,
            lambda,
        };
        for c in &fam.kappa {
            let (lm, ln) = (fam.level(&c.m), fam.level(&c.n));
            let (Some(lm), Some(ln)) = (lm, ln) else {
                return Err(missing("kappa", &c.m, &c.n));
            };
            if c.matrix.rows() != lm.coeff.kn.dim() || c.matrix.cols() != ln.coeff.kn.dim() {
                return Err(bad_shape("kappa", c));
            }
        }
        let d1 = fam.data.k1.dim();
        for c in &fam.lambda {
            if c.matrix.rows() != d1 || c.matrix.cols() != d1 {
                return Err(bad_shape("lambda", c));
            }
        }
        Ok(fam)
    }

    /// The family whose `κ` and `λ` are induced by the given splittings:
    /// `κ_{m,n}` is `×m/(n,m)` on `ρ̃_n`-images and carries `σ_n(y)` to
    /// `σ_m(n/(n,m) · y)`.
    pub fn natural(data: KData, levels: Vec<CoeffLevel>) -> Result<Self, CoherenceError> {
        let mut fam = CoherentFamily::new(data, levels, Vec::new(), Vec::new())?;
        let ns = fam.coefficients();
        for m in &ns {
            for n in &ns {
                if !comparable(m, n) {
                    continue;
                }
                let kappa = natural_kappa(&fam.data, fam.level(m).unwrap(), fam.level(n).unwrap())?;
                fam.kappa.push(CoefficientMap {
                    m: m.clone(),
                    n: n.clone(),
                    matrix: kappa,
                });
                fam.lambda.push(CoefficientMap {
                    m: m.clone(),
                    n: n.clone(),
                    matrix: natural_lambda(&fam.data.k1, m, n),
                });
            }
        }
        Ok(fam)
    }

    pub fn coefficients(&self) -> Vec<Int> {
        self.levels.iter().map(|l| l.coeff.n.clone()).collect()
    }

    pub fn level(&self, n: &Int) -> Option<&CoeffLevel> {
        self.levels.iter().find(|l| &l.coeff.n == n)
    }

    pub fn kappa(&self, m: &Int, n: &Int) -> Option<&Matrix> {
        self.kappa.iter().find(|c| &c.m == m && &c.n == n).map(|c| &c.matrix)
    }

    pub fn lambda(&self, m: &Int, n: &Int) -> Option<&Matrix> {
        self.lambda.iter().find(|c| &c.m == m && &c.n == n).map(|c| &c.matrix)
    }

    fn kappa_or_identity(&self, m: &Int, n: &Int) -> Result<Matrix, CoherenceError> {
        if m == n {
            let dim = self.level(m).map(|l| l.coeff.kn.dim()).unwrap_or(0);
            return Ok(Matrix::identity(dim));
        }
        self.kappa(m, n).cloned().ok_or_else(|| missing("kappa", m, n))
    }

    /// Pairs `(m, n)` of distinct comparable coefficients, in order.
    pub fn pairs(&self) -> Vec<(Int, Int)> {
        let ns = self.coefficients();
        let mut out = Vec::new();
        for m in &ns {
            for n in &ns {
                if comparable(m, n) {
                    out.push((m.clone(), n.clone()));
                }
            }
        }
        out
    }
}

fn missing(kind: &'static str, m: &Int, n: &Int) -> CoherenceError {
    CoherenceError::MissingMap {
        kind,
        m: m.to_string(),
        n: n.to_string(),
    }
}

fn bad_shape(kind: &'static str, c: &CoefficientMap) -> CoherenceError {
    CoherenceError::BadShape {
        kind,
        m: c.m.to_string(),
        n: c.n.to_string(),
        rows: c.matrix.rows(),
        cols: c.matrix.cols(),
    }
}

/// `λ_{m,n} = ×n/(n,m)` on `K1`.
pub fn natural_lambda(k1: &FgGroup, m: &Int, n: &Int) -> Matrix {
    let mut l = Matrix::identity(k1.dim()).scale(&(n / gcd(n, m)));
    reduce_matrix(k1, &mut l);
    l
}

/// `κ_{m,n}` induced by the splittings of the two levels.
pub fn natural_kappa(data: &KData, lm: &CoeffLevel, ln: &CoeffLevel) -> Result<Matrix, CoherenceError> {
    let (m, n) = (&lm.coeff.n, &ln.coeff.n);
    let sigma_m = lm.sigma.as_ref().ok_or_else(|| CoherenceError::MissingSigma(m.to_string()))?;
    let sigma_n = ln.sigma.as_ref().ok_or_else(|| CoherenceError::MissingSigma(n.to_string()))?;
    let t_n = n_torsion(&data.k1, n);
    let t_m = n_torsion(&data.k1, m);
    let lam = natural_lambda(&data.k1, m, n);
    let c0 = m / gcd(n, m);
    let kn = &ln.coeff.kn;
    let km = &lm.coeff.kn;
    let images: Vec<Element> = (0..kn.dim())
        .map(|j| {
            let x = kn.generator(j);
            let v = ln.coeff.beta_tilde.apply(&x);
            let v_coords = t_n.coords(&v).expect("beta~ lands in K1[n]");
            let rest = kn.sub(&x, &sigma_n.apply(&v_coords));
            let u = ln.coeff.rho_tilde.lift(&rest).expect("row is exact");
            // K0 is free, so the tensor coordinates of levels n and m agree
            let u_m: Element = u.iter().map(|c| c * &c0).collect();
            let a = lm.coeff.rho_tilde.apply(&u_m);
            let lv = data.k1.reduce(&lam.mul_vec(&v));
            let b = sigma_m.apply(&t_m.coords(&lv).expect("λ lands in K1[m]"));
            km.add(&a, &b)
        })
        .collect();
    Ok(Matrix::from_cols(km.dim(), images))
}

fn reduce_matrix(g: &FgGroup, m: &mut Matrix) {
    for i in 0..g.torsion_rank() {
        let d = g.modulus(i);
        for j in 0..m.cols() {
            let v = crate::fgab::reduce(&m[(i, j)], &d);
            m[(i, j)] = v;
        }
    }
}

fn reduced(g: &FgGroup, m: Matrix) -> Matrix {
    let mut m = m;
    reduce_matrix(g, &mut m);
    m
}

/// First column where two matrices differ after reduction in `g`.
fn differing_column(g: &FgGroup, a: Matrix, b: Matrix) -> Option<usize> {
    let (a, b) = (reduced(g, a), reduced(g, b));
    (0..a.cols()).find(|&j| a.col(j) != b.col(j))
}

/// Verifies the three coefficient relations as matrix identities. Missing
/// maps are an error; violations are report entries naming the relation.
pub fn check_coherence(fam: &CoherentFamily) -> Result<ValidationReport, CoherenceError> {
    let mut r = ValidationReport::new();
    let k1 = &fam.data.k1;
    let pairs = fam.pairs();
    for (m, n) in &pairs {
        if fam.kappa(m, n).is_none() {
            return Err(missing("kappa", m, n));
        }
    }
    let rho_of = |l: &CoeffLevel| {
        let (_, pi) = crate::fgab::tensor_zmod(&fam.data.k0, &l.coeff.n);
        l.coeff.rho_tilde.compose(&pi).expect("composable").matrix().clone()
    };

    for (m, n) in &pairs {
        let (lm, ln) = (fam.level(m).unwrap(), fam.level(n).unwrap());
        let k = fam.kappa(m, n).unwrap();
        let scope = format!("m={m}, n={n}");
        let g = gcd(n, m);

        // kappa-hom
        match GroupHom::new(ln.coeff.kn.clone(), lm.coeff.kn.clone(), k.clone()) {
            Ok(_) => r.pass(KAPPA_HOM, scope.clone()),
            Err(e) => r.fail(KAPPA_HOM, scope.clone(), e.to_string(), None),
        }

        // beta-kappa
        let lhs = lm.coeff.beta_tilde.matrix().mul(k);
        let rhs = ln.coeff.beta_tilde.matrix().scale(&(n / &g));
        match differing_column(k1, lhs, rhs) {
            None => r.pass(BETA_KAPPA, scope.clone()),
            Some(j) => r.fail(
                BETA_KAPPA,
                scope.clone(),
                format!("beta_{m} kappa_{m},{n} != {} beta_{n}", n / &g),
                Some(Witness::new(format!("K(;Z/{n})"), &ln.coeff.kn.generator(j))),
            ),
        }

        // kappa-rho
        let lhs = k.mul(&rho_of(ln));
        let rhs = rho_of(lm).scale(&(m / &g));
        match differing_column(&lm.coeff.kn, lhs, rhs) {
            None => r.pass(KAPPA_RHO, scope.clone()),
            Some(j) => r.fail(
                KAPPA_RHO,
                scope.clone(),
                format!("kappa_{m},{n} rho_{n} != {} rho_{m}", m / &g),
                Some(Witness::new("K0", &fam.data.k0.generator(j))),
            ),
        }
    }

    let ns = fam.coefficients();
    for k in &ns {
        for m in &ns {
            for n in &ns {
                if m == k || m == n || !comparable(k, m) || !comparable(m, n) {
                    continue;
                }
                if k != n && !comparable(k, n) {
                    continue;
                }
                let scope = format!("k={k}, m={m}, n={n}");
                let km = fam.kappa_or_identity(k, m)?;
                let mn = fam.kappa_or_identity(m, n)?;
                let kn = fam.kappa_or_identity(k, n)?;
                let s = (m * gcd(k, n)) / (gcd(k, m) * gcd(m, n));
                let target = &fam.level(k).unwrap().coeff.kn;
                match differing_column(target, km.mul(&mn), kn.scale(&s)) {
                    None => r.pass(KAPPA_KAPPA, scope),
                    Some(j) => r.fail(
                        KAPPA_KAPPA,
                        scope,
                        format!("kappa_{k},{m} kappa_{m},{n} != {s} kappa_{k},{n}"),
                        Some(Witness::new(
                            format!("K(;Z/{n})"),
                            &fam.level(n).unwrap().coeff.kn.generator(j),
                        )),
                    ),
                }
            }
        }
    }
    // kappa-sigma, only when every level carries a splitting
    if fam.levels.iter().all(|l| l.sigma.is_some()) {
        for (m, n) in &pairs {
            let scope = format!("m={m}, n={n}");
            if fam.lambda(m, n).is_none() {
                r.fail(KAPPA_SIGMA, scope, format!("lambda_{m},{n} missing"), None);
                continue;
            }
            match sigma_witness(fam, m, n)? {
                None => r.pass(KAPPA_SIGMA, scope),
                Some(y) => r.fail(
                    KAPPA_SIGMA,
                    scope,
                    format!("sigma_{m} lambda_{m},{n} != kappa_{m},{n} sigma_{n}"),
                    Some(Witness::new(format!("K1[{n}]"), &y)),
                ),
            }
        }
    }
    Ok(r)
}

/// First `y` in `K1[n]` (ambient coordinates) with
/// `σ_m λ_{m,n} y != κ_{m,n} σ_n y`. Both splittings must be present.
fn sigma_witness(fam: &CoherentFamily, m: &Int, n: &Int) -> Result<Option<Element>, CoherenceError> {
    let k1 = &fam.data.k1;
    let (lm, ln) = (fam.level(m).unwrap(), fam.level(n).unwrap());
    let kappa = fam.kappa(m, n).ok_or_else(|| missing("kappa", m, n))?;
    let lambda = fam.lambda(m, n).ok_or_else(|| missing("lambda", m, n))?;
    let sm = lm.sigma.as_ref().ok_or_else(|| CoherenceError::MissingSigma(m.to_string()))?;
    let sn = ln.sigma.as_ref().ok_or_else(|| CoherenceError::MissingSigma(n.to_string()))?;
    let t_n: Subgroup = n_torsion(k1, n);
    let t_m: Subgroup = n_torsion(k1, m);
    let inc = &t_n.structure().inclusion;
    for j in 0..inc.domain().dim() {
        let y = inc.image_of_generator(j);
        let ly = k1.reduce(&lambda.mul_vec(&y));
        let lhs = match t_m.coords(&ly) {
            Ok(c) => sm.apply(&c),
            Err(_) => return Ok(Some(y)),
        };
        let rhs = lm.coeff.kn.reduce(&kappa.mul_vec(&sn.image_of_generator(j)));
        if lhs != rhs {
            return Ok(Some(y));
        }
    }
    Ok(None)
}

/// First `(m, n, y)` with `σ_m λ_{m,n} y != κ_{m,n} σ_n y`, `y` in
/// `K1[n]` (ambient coordinates).
pub fn family_coherence_witness(
    fam: &CoherentFamily,
) -> Result<Option<(Int, Int, Element)>, CoherenceError> {
    for l in &fam.levels {
        if l.sigma.is_none() {
            return Err(CoherenceError::MissingSigma(l.coeff.n.to_string()));
        }
    }
    for (m, n) in fam.pairs() {
        if let Some(y) = sigma_witness(fam, &m, &n)? {
            return Ok(Some((m, n, y)));
        }
    }
    Ok(None)
}

/// Does `σ_m λ_{m,n} = κ_{m,n} σ_n` hold for every pair?
pub fn check_family_coherence(fam: &CoherentFamily) -> Result<bool, CoherenceError> {
    Ok(family_coherence_witness(fam)?.is_none())
}
