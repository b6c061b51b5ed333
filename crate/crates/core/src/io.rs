//! JSON file formats (schema version "1") for instances, splitting families
//! and complex isomorphisms.
//!
//! Output is canonical: object keys sorted, arrays of scalars on one line,
//! two-space indentation, trailing newline. Parsing an emitted file and
//! emitting it again reproduces the same bytes. Integers are `i64`; inputs
//! are size-capped before any algebra runs.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::fgab::{n_torsion, Element, FgGroup, GroupError, GroupHom, Int, Matrix, Subgroup, SubgroupHom};
use crate::kunneth::{
    CoeffGroup, CoeffLevel, CoefficientMap, CoherenceError, CoherentFamily, IdealNode, InstanceError, KData,
    KunnethInstance,
};
use crate::lattice::{IdealLattice, LatticeError};
use crate::splitter::{ComplexIso, SplittingFamily};

pub const SCHEMA_VERSION: &str = "1";
pub const MAX_INPUT_BYTES: usize = 4 << 20;
/// Per group: number of coordinates.
pub const MAX_DIM: usize = 64;
pub const MAX_NODES: usize = 64;
pub const MAX_LEVELS: usize = 16;
/// Bound on the absolute value of every integer read.
pub const MAX_ABS: i64 = 1 << 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("value does not fit in a file integer: {0}")]
    Unrepresentable(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Coherence(#[from] CoherenceError),
}

pub type IoResult<T> = Result<T, IoError>;

fn schema(msg: impl Into<String>) -> IoError {
    IoError::Schema(msg.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupRecord {
    pub invariant_factors: Vec<i64>,
    pub free_rank: usize,
}

/// Row-major, explicit dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixRecord {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupsRecord {
    #[serde(rename = "K0")]
    pub k0: GroupRecord,
    #[serde(rename = "K1")]
    pub k1: GroupRecord,
    #[serde(rename = "Kn")]
    pub kn: GroupRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapsRecord {
    pub rho_tilde: MatrixRecord,
    pub beta_tilde: MatrixRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeRecord {
    pub nodes: Vec<String>,
    pub covers: Vec<(String, String)>,
}

/// Generator lists of the three ideal subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealRecord {
    pub id: String,
    #[serde(rename = "K0")]
    pub k0: Vec<Vec<i64>>,
    #[serde(rename = "K1")]
    pub k1: Vec<Vec<i64>>,
    #[serde(rename = "Kn")]
    pub kn: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelRecord {
    pub n: i64,
    #[serde(rename = "Kn")]
    pub kn: GroupRecord,
    pub rho_tilde: MatrixRecord,
    pub beta_tilde: MatrixRecord,
    /// Columns: images of the canonical generators of `K1[n]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<MatrixRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffMapRecord {
    pub m: i64,
    pub n: i64,
    pub matrix: MatrixRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyRecord {
    pub levels: Vec<LevelRecord>,
    pub kappa: Vec<CoeffMapRecord>,
    pub lambda: Vec<CoeffMapRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub schema_version: String,
    pub n: i64,
    pub groups: GroupsRecord,
    pub maps: MapsRecord,
    pub lattice: LatticeRecord,
    pub ideals: Vec<IdealRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coherent_family: Option<FamilyRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaRecord {
    pub id: String,
    /// Canonical generators of `K1(I)[n]`.
    pub domain: Vec<Vec<i64>>,
    /// Columns: their images in `Kn`.
    pub images: MatrixRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplittingFile {
    pub schema_version: String,
    pub n: i64,
    pub sigmas: Vec<SigmaRecord>,
}

/// Input to lifting (`phi` absent) and its output (`phi` present).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsoFile {
    pub schema_version: String,
    pub phi0: MatrixRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<MatrixRecord>,
    pub phi1: MatrixRecord,
    pub pairing: Vec<(String, String)>,
}

// ---- canonical text ----

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |k: usize| "  ".repeat(k);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push('[');
            for (k, x) in items.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                out.push_str(&x.to_string());
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(out, x, indent + 1);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (k, (key, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(out, x, indent + 1);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

/// Canonical text of any serializable record.
pub fn to_canonical_json<T: Serialize>(record: &T) -> String {
    let v = serde_json::to_value(record).expect("records serialize");
    let mut out = String::new();
    write_value(&mut out, &v, 0);
    out.push('\n');
    out
}

fn from_text<T: for<'de> Deserialize<'de>>(text: &str) -> IoResult<T> {
    if text.len() > MAX_INPUT_BYTES {
        return Err(schema(format!("input exceeds {MAX_INPUT_BYTES} bytes")));
    }
    serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))
}

fn check_version(v: &str) -> IoResult<()> {
    if v != SCHEMA_VERSION {
        return Err(schema(format!("unsupported schema_version {v:?}")));
    }
    Ok(())
}

// ---- records <-> values ----

fn small(x: i64) -> IoResult<Int> {
    if x.unsigned_abs() > MAX_ABS as u64 {
        return Err(schema(format!("integer {x} exceeds the size cap")));
    }
    Ok(Int::from(x))
}

fn to_i64(x: &Int) -> IoResult<i64> {
    x.to_i64().ok_or_else(|| IoError::Unrepresentable(x.to_string()))
}

fn vec_out(x: &[Int]) -> IoResult<Vec<i64>> {
    x.iter().map(to_i64).collect()
}

fn group_in(r: &GroupRecord) -> IoResult<FgGroup> {
    if r.invariant_factors.len() + r.free_rank > MAX_DIM {
        return Err(schema(format!("group has more than {MAX_DIM} coordinates")));
    }
    let f = r.invariant_factors.iter().map(|&d| small(d)).collect::<IoResult<_>>()?;
    Ok(FgGroup::new(f, r.free_rank)?)
}

fn group_out(g: &FgGroup) -> IoResult<GroupRecord> {
    Ok(GroupRecord {
        invariant_factors: vec_out(g.invariant_factors())?,
        free_rank: g.free_rank(),
    })
}

fn matrix_in(r: &MatrixRecord) -> IoResult<Matrix> {
    if r.rows > MAX_DIM || r.cols > MAX_DIM {
        return Err(schema(format!("matrix {}x{} exceeds the size cap", r.rows, r.cols)));
    }
    if r.entries.len() != r.rows || r.entries.iter().any(|row| row.len() != r.cols) {
        return Err(schema(format!("matrix entries do not have shape {}x{}", r.rows, r.cols)));
    }
    let rows = r
        .entries
        .iter()
        .map(|row| row.iter().map(|&x| small(x)).collect::<IoResult<Vec<_>>>())
        .collect::<IoResult<Vec<_>>>()?;
    Ok(Matrix::from_rows(r.cols, rows))
}

fn matrix_out(m: &Matrix) -> IoResult<MatrixRecord> {
    Ok(MatrixRecord {
        rows: m.rows(),
        cols: m.cols(),
        entries: m.row_vecs().iter().map(|r| vec_out(r)).collect::<IoResult<_>>()?,
    })
}

fn hom_in(r: &MatrixRecord, domain: &FgGroup, codomain: &FgGroup, what: &str) -> IoResult<GroupHom> {
    if r.rows != codomain.dim() || r.cols != domain.dim() {
        return Err(schema(format!(
            "{what} is {}x{}, expected {}x{}",
            r.rows,
            r.cols,
            codomain.dim(),
            domain.dim()
        )));
    }
    Ok(GroupHom::new(domain.clone(), codomain.clone(), matrix_in(r)?)?)
}

fn element_in(g: &FgGroup, x: &[i64]) -> IoResult<Element> {
    if x.len() != g.dim() {
        return Err(schema(format!("element has {} coordinates, expected {}", x.len(), g.dim())));
    }
    x.iter().map(|&v| small(v)).collect()
}

fn subgroup_in(g: &FgGroup, gens: &[Vec<i64>]) -> IoResult<Subgroup> {
    if gens.len() > MAX_DIM * 4 {
        return Err(schema("too many generators"));
    }
    let gens = gens.iter().map(|x| element_in(g, x)).collect::<IoResult<_>>()?;
    Ok(Subgroup::new(g.clone(), gens)?)
}

fn subgroup_out(s: &Subgroup) -> IoResult<Vec<Vec<i64>>> {
    s.generators().iter().map(|x| vec_out(x)).collect()
}

/// Columns of `m` as elements of `g`.
fn columns_in(r: &MatrixRecord, g: &FgGroup, cols: usize, what: &str) -> IoResult<Vec<Element>> {
    if r.rows != g.dim() || r.cols != cols {
        return Err(schema(format!(
            "{what} is {}x{}, expected {}x{cols}",
            r.rows,
            r.cols,
            g.dim()
        )));
    }
    Ok(matrix_in(r)?.col_vecs())
}

fn columns_out(cols: &[Element], rows: usize) -> IoResult<MatrixRecord> {
    matrix_out(&Matrix::from_cols(rows, cols.to_vec()))
}

fn partial_in(domain: Subgroup, codomain: &FgGroup, images: &MatrixRecord, what: &str) -> IoResult<SubgroupHom> {
    let cols = columns_in(images, codomain, domain.generators().len(), what)?;
    Ok(SubgroupHom::from_generator_images(domain, codomain.clone(), &cols)?)
}

fn level_in(data: &KData, r: &LevelRecord) -> IoResult<CoeffLevel> {
    let n = small(r.n)?;
    let kn = group_in(&r.kn)?;
    let (k0n, _) = crate::fgab::tensor_zmod(&data.k0, &n);
    let rho = hom_in(&r.rho_tilde, &k0n, &kn, "rho_tilde")?;
    let beta = hom_in(&r.beta_tilde, &kn, &data.k1, "beta_tilde")?;
    let coeff = CoeffGroup::new(data, n.clone(), kn.clone(), rho, beta)?;
    let sigma = match &r.sigma {
        None => None,
        Some(m) => Some(partial_in(n_torsion(&data.k1, &n), &kn, m, "sigma")?.map().clone()),
    };
    Ok(CoeffLevel { coeff, sigma })
}

fn level_out(data: &KData, l: &CoeffLevel) -> IoResult<LevelRecord> {
    let sigma = match &l.sigma {
        None => None,
        Some(s) => {
            let h = SubgroupHom::new(n_torsion(&data.k1, &l.coeff.n), s.clone())?;
            Some(columns_out(&h.generator_images(), l.coeff.kn.dim())?)
        }
    };
    Ok(LevelRecord {
        n: to_i64(&l.coeff.n)?,
        kn: group_out(&l.coeff.kn)?,
        rho_tilde: matrix_out(l.coeff.rho_tilde.matrix())?,
        beta_tilde: matrix_out(l.coeff.beta_tilde.matrix())?,
        sigma,
    })
}

fn family_in(data: &KData, r: &FamilyRecord) -> IoResult<CoherentFamily> {
    if r.levels.len() > MAX_LEVELS {
        return Err(schema(format!("more than {MAX_LEVELS} coefficient levels")));
    }
    let levels = r.levels.iter().map(|l| level_in(data, l)).collect::<IoResult<_>>()?;
    let maps = |v: &[CoeffMapRecord]| -> IoResult<Vec<CoefficientMap>> {
        if v.len() > MAX_LEVELS * MAX_LEVELS {
            return Err(schema("too many coefficient maps"));
        }
        v.iter()
            .map(|c| {
                Ok(CoefficientMap {
                    m: small(c.m)?,
                    n: small(c.n)?,
                    matrix: matrix_in(&c.matrix)?,
                })
            })
            .collect()
    };
    Ok(CoherentFamily::new(data.clone(), levels, maps(&r.kappa)?, maps(&r.lambda)?)?)
}

fn family_out(f: &CoherentFamily) -> IoResult<FamilyRecord> {
    let maps = |v: &[CoefficientMap]| -> IoResult<Vec<CoeffMapRecord>> {
        v.iter()
            .map(|c| {
                Ok(CoeffMapRecord {
                    m: to_i64(&c.m)?,
                    n: to_i64(&c.n)?,
                    matrix: matrix_out(&c.matrix)?,
                })
            })
            .collect()
    };
    Ok(FamilyRecord {
        levels: f.levels.iter().map(|l| level_out(&f.data, l)).collect::<IoResult<_>>()?,
        kappa: maps(&f.kappa)?,
        lambda: maps(&f.lambda)?,
    })
}

// ---- instances ----

pub fn instance_from_record(f: &InstanceFile) -> IoResult<KunnethInstance> {
    check_version(&f.schema_version)?;
    if f.lattice.nodes.len() > MAX_NODES || f.ideals.len() > MAX_NODES {
        return Err(schema(format!("more than {MAX_NODES} ideals")));
    }
    if f.lattice.covers.len() > MAX_NODES * MAX_NODES {
        return Err(schema("too many cover edges"));
    }
    let data = KData {
        k0: group_in(&f.groups.k0)?,
        k1: group_in(&f.groups.k1)?,
    };
    let kn = group_in(&f.groups.kn)?;
    let n = small(f.n)?;
    if n < Int::from(2) {
        return Err(InstanceError::BadCoefficient(n.to_string()).into());
    }
    let (k0n, _) = crate::fgab::tensor_zmod(&data.k0, &n);
    let rho = hom_in(&f.maps.rho_tilde, &k0n, &kn, "rho_tilde")?;
    let beta = hom_in(&f.maps.beta_tilde, &kn, &data.k1, "beta_tilde")?;
    let coeff = CoeffGroup::new(&data, n, kn.clone(), rho, beta)?;
    let lattice = IdealLattice::new(&f.lattice.nodes, &f.lattice.covers)?;
    let ideals = f
        .ideals
        .iter()
        .map(|r| {
            Ok(IdealNode {
                id: r.id.clone(),
                k0: subgroup_in(&data.k0, &r.k0)?,
                k1: subgroup_in(&data.k1, &r.k1)?,
                kn: subgroup_in(&kn, &r.kn)?,
            })
        })
        .collect::<IoResult<Vec<_>>>()?;
    let family = f.coherent_family.as_ref().map(|r| family_in(&data, r)).transpose()?;
    let inst = KunnethInstance::new(data, coeff, lattice, ideals)?;
    Ok(match family {
        Some(fam) => inst.with_family(fam),
        None => inst,
    })
}

pub fn instance_to_record(inst: &KunnethInstance) -> IoResult<InstanceFile> {
    let lat = &inst.lattice;
    Ok(InstanceFile {
        schema_version: SCHEMA_VERSION.into(),
        n: to_i64(inst.n())?,
        groups: GroupsRecord {
            k0: group_out(&inst.data.k0)?,
            k1: group_out(&inst.data.k1)?,
            kn: group_out(inst.kn())?,
        },
        maps: MapsRecord {
            rho_tilde: matrix_out(inst.rho().matrix())?,
            beta_tilde: matrix_out(inst.beta().matrix())?,
        },
        lattice: LatticeRecord {
            nodes: lat.ids().to_vec(),
            covers: lat
                .covers()
                .iter()
                .map(|&(a, b)| (lat.id(a).to_string(), lat.id(b).to_string()))
                .collect(),
        },
        ideals: inst
            .ideals
            .iter()
            .map(|node| {
                Ok(IdealRecord {
                    id: node.id.clone(),
                    k0: subgroup_out(&node.k0)?,
                    k1: subgroup_out(&node.k1)?,
                    kn: subgroup_out(&node.kn)?,
                })
            })
            .collect::<IoResult<_>>()?,
        coherent_family: inst.family.as_ref().map(family_out).transpose()?,
    })
}

pub fn parse_instance(text: &str) -> IoResult<KunnethInstance> {
    instance_from_record(&from_text(text)?)
}

pub fn instance_to_json(inst: &KunnethInstance) -> IoResult<String> {
    Ok(to_canonical_json(&instance_to_record(inst)?))
}

// ---- splitting families ----

pub fn parse_splitting_record(text: &str) -> IoResult<SplittingFile> {
    let f: SplittingFile = from_text(text)?;
    check_version(&f.schema_version)?;
    if f.sigmas.len() > MAX_NODES {
        return Err(schema(format!("more than {MAX_NODES} splittings")));
    }
    Ok(f)
}

/// Reads a family for `inst`; each `σ_I` must be a hom on `K1(I)[n]`.
pub fn parse_splitting(text: &str, inst: &KunnethInstance) -> IoResult<SplittingFamily> {
    let f = parse_splitting_record(text)?;
    if small(f.n)? != *inst.n() {
        return Err(schema("coefficient differs from the instance"));
    }
    let lat = &inst.lattice;
    let mut sigmas: Vec<Option<SubgroupHom>> = vec![None; lat.len()];
    for r in &f.sigmas {
        let i = lat.index(&r.id)?;
        if sigmas[i].is_some() {
            return Err(schema(format!("ideal {:?} repeated", r.id)));
        }
        let domain = subgroup_in(&inst.data.k1, &r.domain)?;
        if domain != inst.k1_torsion_of(i) {
            return Err(schema(format!("domain of {:?} is not K1({})[n]", r.id, r.id)));
        }
        sigmas[i] = Some(partial_in(domain, inst.kn(), &r.images, "images")?);
    }
    let sigmas = sigmas
        .into_iter()
        .enumerate()
        .map(|(i, s)| s.ok_or_else(|| schema(format!("no splitting for {:?}", lat.id(i)))))
        .collect::<IoResult<_>>()?;
    Ok(SplittingFamily {
        ids: lat.ids().to_vec(),
        sigmas,
    })
}

pub fn splitting_to_json(inst: &KunnethInstance, fam: &SplittingFamily) -> IoResult<String> {
    let kn_dim = inst.kn().dim();
    let sigmas = fam
        .ids
        .iter()
        .zip(&fam.sigmas)
        .map(|(id, s)| {
            Ok(SigmaRecord {
                id: id.clone(),
                domain: subgroup_out(s.domain())?,
                images: columns_out(&s.generator_images(), kn_dim)?,
            })
        })
        .collect::<IoResult<_>>()?;
    Ok(to_canonical_json(&SplittingFile {
        schema_version: SCHEMA_VERSION.into(),
        n: to_i64(inst.n())?,
        sigmas,
    }))
}

// ---- isomorphisms ----

pub fn parse_iso_record(text: &str) -> IoResult<IsoFile> {
    let f: IsoFile = from_text(text)?;
    check_version(&f.schema_version)?;
    if f.pairing.len() > MAX_NODES {
        return Err(schema(format!("more than {MAX_NODES} pairs")));
    }
    for m in [Some(&f.phi0), f.phi.as_ref(), Some(&f.phi1)].into_iter().flatten() {
        matrix_in(m)?;
    }
    Ok(f)
}

/// `(φ0, φ1, pairing)`.
pub type IsoInputs = (GroupHom, GroupHom, Vec<(String, String)>);

/// `(φ0, φ1, pairing)` of an iso file, typed against the two instances.
pub fn iso_inputs(
    f: &IsoFile,
    a: &KunnethInstance,
    b: &KunnethInstance,
) -> IoResult<IsoInputs> {
    let phi0 = hom_in(&f.phi0, &a.data.k0, &b.data.k0, "phi0")?;
    let phi1 = hom_in(&f.phi1, &a.data.k1, &b.data.k1, "phi1")?;
    Ok((phi0, phi1, f.pairing.clone()))
}

pub fn iso_to_json(iso: &ComplexIso) -> IoResult<String> {
    Ok(to_canonical_json(&IsoFile {
        schema_version: SCHEMA_VERSION.into(),
        phi0: matrix_out(iso.phi0.matrix())?,
        phi: Some(matrix_out(iso.phi.matrix())?),
        phi1: matrix_out(iso.phi1.matrix())?,
        pairing: iso.pairing.clone(),
    }))
}
