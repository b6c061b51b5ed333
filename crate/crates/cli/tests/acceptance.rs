//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Exercises the command line in-process and re-derives every
//! expected value with oracles local to this file.

#[path = "../../core/tests/support/kernel_props.rs"]
mod kernel_props;

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_traits::{One, Zero};
use proptest::test_runner::{Config, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use kunneth_core::fgab::{tensor_hom, Element, GroupHom, Int, Subgroup};
use kunneth_core::fixtures::{
    dp_truncation, plant_defect, random_automorphism, random_family, random_instance, transport, DefectKind,
    DpTruncation, RandomBounds,
};
use kunneth_core::io::{instance_to_json, parse_instance, parse_splitting};
use kunneth_core::kunneth::coherence::{BETA_KAPPA, KAPPA_HOM, KAPPA_KAPPA, KAPPA_RHO, KAPPA_SIGMA};
use kunneth_core::kunneth::{validate_instance, KunnethInstance};
use kunneth_core::splitter::{build_ideal_splitting, verify_ideal_splitting};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Cli {
    dir: tempfile::TempDir,
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Cli {
    fn new() -> Cli {
        Cli {
            dir: tempfile::tempdir().expect("temp dir"),
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.path(name);
        fs::write(&p, text).expect("write");
        p
    }

    fn put(&self, name: &str, inst: &KunnethInstance) -> PathBuf {
        self.write(name, &instance_to_json(inst).expect("serializable"))
    }

    fn run(&self, args: &[&str]) -> Run {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["kunneth"];
        full.extend_from_slice(args);
        let code = kunneth_cli::run(full, &mut out, &mut err);
        Run {
            code,
            stdout: String::from_utf8(out).unwrap(),
            stderr: String::from_utf8(err).unwrap(),
        }
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same_hom(f: &GroupHom, g: &GroupHom) -> bool {
    f.domain() == g.domain()
        && f.codomain() == g.codomain()
        && (0..f.domain().dim()).all(|j| {
            f.codomain().reduce(&f.image_of_generator(j)) == g.codomain().reduce(&g.image_of_generator(j))
        })
}

fn same_subgroup(a: &Subgroup, b: &Subgroup) -> bool {
    a.is_subgroup_of(b) && b.is_subgroup_of(a)
}

const COEFFS: [u64; 7] = [2, 3, 4, 6, 8, 9, 12];

/// Splitting `σ(K1(I)[n]) ⊆ Kn(I)` for every ideal, checked on generators.
fn respects_every_ideal(inst: &KunnethInstance, image_of: impl Fn(&[Int]) -> Element) -> bool {
    (0..inst.lattice.len()).all(|i| {
        let kn = &inst.ideal(i).kn;
        inst.k1_torsion_of(i).generators().iter().all(|y| kn.contains(&image_of(y)))
    })
}

fn criterion_1(cli: &Cli) -> Outcome {
    let bounds = RandomBounds::default();
    let mut runs = 0;
    for seed in 0..200u64 {
        let inst = random_instance(seed, &bounds);
        ensure(inst.lattice.len() <= 6, || format!("seed {seed}: {} ideals", inst.lattice.len()))?;
        ensure(inst.kn().order().is_some_and(|o| o <= Int::from(4096)), || format!("seed {seed}: |Kn| too large"))?;
        ensure(COEFFS.iter().any(|&c| Int::from(c) == *inst.n()), || format!("seed {seed}: n = {}", inst.n()))?;
        ensure(validate_instance(&inst).all_passed(), || format!("seed {seed}: generated instance invalid"))?;
        let path = cli.put("c1.json", &inst);
        let out = cli.path("c1.split.json");
        let r = cli.run(&["split", s(&path), "-o", s(&out)]);
        ensure(r.code == 0, || format!("seed {seed}: split exited {} ({})", r.code, r.stderr.trim()))?;
        let fam = parse_splitting(&fs::read_to_string(&out).unwrap(), &inst).map_err(|e| e.to_string())?;
        let report = verify_ideal_splitting(&inst, &fam);
        ensure(report.all_passed(), || format!("seed {seed}: {report}"))?;
        // independent: every σ_I splits β̃ and respects the ideals below I
        for (i, sigma) in fam.sigmas.iter().enumerate() {
            for y in inst.k1_torsion_of(i).generators() {
                let x = sigma.eval(y).map_err(|e| e.to_string())?;
                ensure(inst.data.k1.reduce(&inst.beta().apply(&x)) == inst.data.k1.reduce(y), || {
                    format!("seed {seed}: sigma at {} is not a section", inst.lattice.id(i))
                })?;
                ensure(inst.ideal(i).kn.contains(&x), || format!("seed {seed}: sigma leaves Kn({})", inst.lattice.id(i)))?;
            }
        }
        runs += 1;
    }
    Ok(format!("{runs} random instances split (exit 0) and verified"))
}

fn oracle_instances() -> Vec<(String, KunnethInstance)> {
    let mut out = Vec::new();
    for seed in 0..400u64 {
        out.push((format!("twisted seed {seed}"), random_instance(seed, &RandomBounds::default())));
    }
    let aligned = RandomBounds {
        twist: false,
        relabel: false,
        ..RandomBounds::default()
    };
    for seed in 0..100u64 {
        out.push((format!("aligned seed {seed}"), random_instance(seed, &aligned)));
    }
    for p in [2u64, 3] {
        for m in 1..=3usize {
            for k in 0..m {
                out.push((format!("dp p={p} m={m} k={k}"), dp_truncation(p, m, k).unwrap()));
            }
        }
    }
    out.retain(|(_, i)| i.kn().order().is_some_and(|o| o <= Int::from(256)));
    out
}

fn criterion_2(cli: &Cli) -> Outcome {
    let mut checked = 0;
    for (name, inst) in oracle_instances() {
        let path = cli.put("c2.json", &inst);
        let r = cli.run(&["split", s(&path), "--oracle", "--format", "json"]);
        ensure(r.code != 3, || format!("{name}: exit 3 ({})", r.stdout.trim()))?;
        let v: Value = serde_json::from_str(&r.stdout).map_err(|e| format!("{name}: {e}"))?;
        let oracle = &v["oracle"];
        ensure(oracle["checked"] == Value::Bool(true), || format!("{name}: oracle skipped: {oracle}"))?;
        let feasible = oracle["feasible"].as_u64().unwrap();
        ensure(oracle["agrees"] == Value::Bool(true), || format!("{name}: oracle disagrees"))?;
        ensure((feasible > 0) == (r.code == 0), || format!("{name}: feasible {feasible} but exit {}", r.code))?;
        if r.code == 0 {
            // the builder's top splitting lies in the feasible set
            let fam = build_ideal_splitting(&inst).map_err(|e| e.to_string())?;
            let top = fam.top(&inst).unwrap();
            ensure(respects_every_ideal(&inst, |y| top.eval(y).unwrap()), || {
                format!("{name}: builder output not ideal-respecting")
            })?;
        }
        checked += 1;
    }
    ensure(checked >= 100, || format!("only {checked} instances with |Kn| <= 256"))?;
    Ok(format!("{checked} instances with |Kn| <= 256, zero disagreements"))
}

fn comaximal_configs(inst: &KunnethInstance) -> Vec<(usize, Vec<usize>)> {
    let lat = &inst.lattice;
    let mut out = BTreeSet::new();
    for i in 0..lat.len() {
        let below: Vec<usize> = (0..lat.len()).filter(|&j| lat.lt(j, i)).collect();
        let maxi = lat.maximal_subideals(i);
        if maxi.len() >= 2 {
            out.insert((i, maxi));
        }
        for (x, &a) in below.iter().enumerate() {
            for &b in &below[x + 1..] {
                if !lat.leq(a, b) && !lat.leq(b, a) && lat.join(a, b) == Some(i) {
                    out.insert((i, vec![a, b]));
                }
            }
        }
    }
    out.into_iter().collect()
}

fn criterion_3(cli: &Cli) -> Outcome {
    let mut exact = 0;
    for seed in 0..200u64 {
        let inst = random_instance(seed, &RandomBounds::default());
        let configs = comaximal_configs(&inst);
        if configs.is_empty() {
            continue;
        }
        let path = cli.put("c3.json", &inst);
        for (i, parts) in configs {
            let names: Vec<&str> = parts.iter().map(|&p| inst.lattice.id(p)).collect();
            let r = cli.run(&["gamma-check", s(&path), "--ideal", inst.lattice.id(i), "--parts", &names.join(",")]);
            ensure(r.code == 0, || format!("seed {seed}: {}", r.stdout.trim()))?;
            exact += 1;
        }
    }
    ensure(exact >= 50, || format!("only {exact} comaximal configurations"))?;

    let mut broken = 0;
    for seed in 0..60u64 {
        let base = random_instance(seed, &RandomBounds::default());
        let Ok(inst) = plant_defect(&base, DefectKind::BreakLatticeLaw) else {
            continue;
        };
        let path = cli.put("c3d.json", &inst);
        let r = cli.run(&["gamma-check", s(&path), "--ideal", "x-top", "--parts", "x-I1,x-I2", "--format", "json"]);
        ensure(r.code == 1, || format!("defect seed {seed}: exit {} ({})", r.code, r.stdout.trim()))?;
        let v: Value = serde_json::from_str(&r.stdout).unwrap();
        let w: Vec<Int> = v["witness"]["element"]
            .as_array()
            .ok_or_else(|| format!("defect seed {seed}: no witness"))?
            .iter()
            .map(|x| Int::from(x.as_i64().unwrap()))
            .collect();
        // (x, -x) with x in both parts but outside the meet group
        let k1 = &inst.data.k1;
        let d = k1.dim();
        ensure(w.len() == 2 * d, || format!("defect seed {seed}: witness length {}", w.len()))?;
        let (x1, x2) = (k1.reduce(&w[..d]), k1.reduce(&w[d..]));
        let (i1, i2) = (inst.lattice.index("x-I1").unwrap(), inst.lattice.index("x-I2").unwrap());
        let meet = inst.lattice.meet(i1, i2).unwrap();
        ensure(k1.is_zero(&k1.add(&x1, &x2)), || format!("defect seed {seed}: witness not in ker"))?;
        ensure(inst.k1_torsion_of(i1).contains(&x1) && inst.k1_torsion_of(i2).contains(&x2), || {
            format!("defect seed {seed}: witness outside the parts")
        })?;
        ensure(!inst.k1_torsion_of(meet).contains(&x1), || format!("defect seed {seed}: witness is a boundary"))?;
        broken += 1;
    }
    ensure(broken >= 20, || format!("only {broken} lattice-law mutations"))?;
    Ok(format!("{exact} comaximal configurations exact; {broken}/{broken} lattice-law mutations fail with a witness"))
}

fn criterion_4(cli: &Cli) -> Outcome {
    let mut cases = 0;
    for p in [2u64, 3] {
        for m in 1..=3usize {
            let mut prev: Option<u64> = None;
            for k in 0..=m {
                let tag = format!("p={p} m={m} k={k}");
                let path = cli.path("dp.json");
                let (ps, ms, ks) = (p.to_string(), m.to_string(), k.to_string());
                let g = cli.run(&["gen", "dp", "--p", &ps, "--m", &ms, "--k", &ks, "-o", s(&path)]);
                ensure(g.code == 0, || format!("{tag}: gen exited {}", g.code))?;
                let inst = parse_instance(&fs::read_to_string(&path).unwrap()).map_err(|e| e.to_string())?;
                let v = cli.run(&["validate", s(&path), "--format", "json"]);
                if k == m {
                    // (c)
                    ensure(v.code == 1, || format!("{tag}: validate exited {}", v.code))?;
                    let json: Value = serde_json::from_str(&v.stdout).unwrap();
                    let first = json["report"]["checks"]
                        .as_array()
                        .unwrap()
                        .iter()
                        .find(|c| c["passed"] == Value::Bool(false))
                        .cloned()
                        .unwrap();
                    ensure(first["check"] == "ideal-exactness", || format!("{tag}: first failure {first}"))?;
                    ensure(first["witness"].is_object(), || format!("{tag}: no witness"))?;
                    continue;
                }
                ensure(v.code == 0, || format!("{tag}: validate exited {}", v.code))?;
                // (a)
                let out = cli.path("dp.split.json");
                let r = cli.run(&["split", s(&path), "-o", s(&out)]);
                ensure(r.code == 0, || format!("{tag}: split exited {}", r.code))?;
                let fam = parse_splitting(&fs::read_to_string(&out).unwrap(), &inst).map_err(|e| e.to_string())?;
                let top = fam.top(&inst).unwrap();
                let y = inst.k1_torsion().generators()[0].clone();
                let x = top.eval(&y).map_err(|e| e.to_string())?;
                // coordinates (a, b, c_{1-m}, …, c_{m-1})
                let c = |i: i64| &x[(2 + i + m as i64 - 1) as usize];
                ensure(x[0].is_one(), || format!("{tag}: a = {}", x[0]))?;
                for i in -(k as i64)..=(k as i64) {
                    ensure(c(i).is_zero(), || format!("{tag}: c_{i} = {} outside the corridor", c(i)))?;
                }
                // (b) brute force over all of Kn
                let elements = inst.kn().elements(1 << 12).unwrap();
                let count = elements
                    .iter()
                    .filter(|e| inst.data.k1.reduce(&inst.beta().apply(e)) == y)
                    .filter(|e| {
                        (0..inst.lattice.len())
                            .all(|i| !inst.ideal(i).k1.contains(&y) || inst.ideal(i).kn.contains(e))
                    })
                    .count() as u64;
                let closed = p.pow((2 * m - 2 * k - 1) as u32);
                ensure(count == closed, || format!("{tag}: {count} feasible, expected {closed}"))?;
                ensure(count == DpTruncation::new(p, m, k).unwrap().feasible_count(), || format!("{tag}: fixture count"))?;
                if let Some(prev) = prev {
                    ensure(count < prev, || format!("{tag}: feasible set did not shrink"))?;
                }
                prev = Some(count);
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} valid truncations split inside the corridor, strictly shrinking; every k = m rejected"))
}

fn kappa_perturbations(text: &str) -> Vec<(usize, usize, usize, String)> {
    let f: Value = serde_json::from_str(text).unwrap();
    let mut out = Vec::new();
    for (ki, k) in f["coherent_family"]["kappa"].as_array().unwrap().iter().enumerate() {
        let rows = k["matrix"]["entries"].as_array().unwrap();
        for (r, row) in rows.iter().enumerate() {
            for c in 0..row.as_array().unwrap().len() {
                let mut g = f.clone();
                let e = &mut g["coherent_family"]["kappa"][ki]["matrix"]["entries"][r][c];
                *e = Value::from(e.as_i64().unwrap() + 1);
                out.push((ki, r, c, serde_json::to_string(&g).unwrap()));
            }
        }
    }
    out
}

fn criterion_5(cli: &Cli) -> Outcome {
    let relations = [BETA_KAPPA, KAPPA_RHO, KAPPA_KAPPA, KAPPA_HOM, KAPPA_SIGMA];
    let aligned = RandomBounds {
        twist: false,
        relabel: false,
        ..RandomBounds::default()
    };
    let (mut families, mut perturbed, mut scalar) = (0, 0, 0);
    for chain in [[2u64, 4, 8], [2, 6, 12]] {
        for seed in 0..6u64 {
            let tag = format!("{chain:?} seed {seed}");
            let inst = random_family(seed, &aligned, &chain).map_err(|e| format!("{tag}: {e}"))?;
            let path = cli.put("c5.json", &inst);
            let r = cli.run(&["coherence-check", s(&path)]);
            ensure(r.code == 0, || format!("{tag}: {}", r.stdout))?;
            let fam = inst.family.as_ref().unwrap();

            // β_2 κ_{2,4} = 2 β_4 as a matrix identity in K1
            if chain[1] == 4 {
                let (two, four) = (Int::from(2), Int::from(4));
                let k = fam.kappa(&two, &four).ok_or("missing kappa_2,4")?;
                let b2 = fam.level(&two).unwrap().coeff.beta_tilde.matrix();
                let b4 = fam.level(&four).unwrap().coeff.beta_tilde.matrix();
                let k1 = &inst.data.k1;
                let lhs = b2.mul(k);
                let rhs = b4.scale(&two);
                for j in 0..lhs.cols() {
                    ensure(k1.reduce(&lhs.col(j)) == k1.reduce(&rhs.col(j)), || format!("{tag}: beta_2 kappa_2,4 != 2 beta_4"))?;
                }
                if !fam.level(&four).unwrap().coeff.beta_tilde.is_zero() {
                    scalar += 1;
                }
            }

            for (ki, row, col, text) in kappa_perturbations(&fs::read_to_string(&path).unwrap()) {
                let p = cli.write("c5p.json", &text);
                let r = cli.run(&["coherence-check", s(&p), "--format", "json"]);
                ensure(r.code == 1, || format!("{tag}: kappa[{ki}][{row}][{col}] + 1 accepted (exit {})", r.code))?;
                let v: Value = serde_json::from_str(&r.stdout).unwrap();
                let named = v["report"]["checks"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .filter(|c| c["passed"] == Value::Bool(false))
                    .any(|c| relations.iter().any(|r| c["check"] == *r));
                ensure(named, || format!("{tag}: kappa[{ki}][{row}][{col}] rejected without a relation"))?;
                perturbed += 1;
            }
            families += 1;
        }
    }
    ensure(scalar > 0, || "no family with non-zero beta_4".into())?;
    Ok(format!(
        "{families} natural families accepted ({scalar} with beta_2 kappa_2,4 = 2 beta_4 non-trivial); {perturbed}/{perturbed} single-entry perturbations rejected"
    ))
}

fn iso_file(phi0: &GroupHom, phi1: &GroupHom, ids: &[String]) -> String {
    let m = |f: &GroupHom| {
        let mat = f.matrix();
        serde_json::json!({
            "rows": mat.rows(),
            "cols": mat.cols(),
            "entries": mat.row_vecs().iter().map(|r| r.iter().map(|x| x.to_string().parse::<i64>().unwrap()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    };
    serde_json::json!({
        "schema_version": "1",
        "phi0": m(phi0),
        "phi1": m(phi1),
        "pairing": ids.iter().map(|i| [i.clone(), i.clone()]).collect::<Vec<_>>(),
    })
    .to_string()
}

fn read_phi(text: &str, a: &KunnethInstance, b: &KunnethInstance) -> Result<GroupHom, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let phi = &v["phi"];
    let entries: Vec<Int> = phi["entries"]
        .as_array()
        .ok_or("no phi")?
        .iter()
        .flat_map(|r| r.as_array().unwrap().iter().map(|x| Int::from(x.as_i64().unwrap())))
        .collect();
    let (rows, cols) = (phi["rows"].as_u64().unwrap() as usize, phi["cols"].as_u64().unwrap() as usize);
    let mat = kunneth_core::fgab::Matrix::from_rows(cols, entries.chunks(cols.max(1)).map(|c| c.to_vec()).take(rows).collect());
    GroupHom::new(a.kn().clone(), b.kn().clone(), mat).map_err(|e| e.to_string())
}

fn check_lift(cli: &Cli, tag: &str, a: &KunnethInstance, b: &KunnethInstance, phi0: &GroupHom, phi1: &GroupHom) -> Result<GroupHom, String> {
    let (pa, pb) = (cli.put("a.json", a), cli.put("b.json", b));
    let iso = cli.write("iso.json", &iso_file(phi0, phi1, a.lattice.ids()));
    let out = cli.path("lift.json");
    let r = cli.run(&["lift", s(&pa), s(&pb), s(&iso), "-o", s(&out)]);
    ensure(r.code == 0, || format!("{tag}: lift exited {} ({})", r.code, r.stderr.trim()))?;
    let phi = read_phi(&fs::read_to_string(&out).unwrap(), a, b)?;
    ensure(phi.is_isomorphism(), || format!("{tag}: phi is not an isomorphism"))?;
    let n = a.n();
    let lhs = phi.compose(a.rho()).unwrap();
    let rhs = b.rho().compose(&tensor_hom(phi0, n)).unwrap();
    ensure(same_hom(&lhs, &rhs), || format!("{tag}: phi rho_A != rho_B (phi0 x 1)"))?;
    let lhs = b.beta().compose(&phi).unwrap();
    let rhs = phi1.compose(a.beta()).unwrap();
    ensure(same_hom(&lhs, &rhs), || format!("{tag}: beta_B phi != phi1 beta_A"))?;
    for i in 0..a.lattice.len() {
        let j = b.lattice.index(a.lattice.id(i)).unwrap();
        let img = phi.image_of(&a.ideal(i).kn).unwrap();
        ensure(same_subgroup(&img, &b.ideal(j).kn), || format!("{tag}: phi(Kn({})) differs", a.lattice.id(i)))?;
    }
    Ok(phi)
}

fn criterion_6(cli: &Cli) -> Outcome {
    let mut pairs = 0;
    for seed in 0..50u64 {
        let a = random_instance(seed, &RandomBounds::default());
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let phi0 = random_automorphism(&a.data.k0, &mut rng, 6);
        let phi = random_automorphism(a.kn(), &mut rng, 6);
        let phi1 = random_automorphism(&a.data.k1, &mut rng, 6);
        let Ok(b) = transport(&a, &phi0, &phi, &phi1) else {
            return Err(format!("seed {seed}: transport failed"));
        };
        check_lift(cli, &format!("seed {seed} A->B"), &a, &b, &phi0, &phi1)?;
        let (i0, i1) = (phi0.inverse().unwrap(), phi1.inverse().unwrap());
        check_lift(cli, &format!("seed {seed} B->A"), &b, &a, &i0, &i1)?;
        pairs += 1;
    }
    for seed in 0..10u64 {
        let a = random_instance(seed, &RandomBounds::default());
        let id0 = GroupHom::identity(&a.data.k0);
        let id1 = GroupHom::identity(&a.data.k1);
        let phi = check_lift(cli, &format!("seed {seed} identity"), &a, &a, &id0, &id1)?;
        ensure(same_hom(&phi, &GroupHom::identity(a.kn())), || format!("seed {seed}: identity lifts to {:?}", phi.matrix()))?;
    }
    Ok(format!("{pairs} pairs lifted in both directions with exact identities; identity lifts to identity"))
}

fn criterion_7() -> Outcome {
    let config = Config {
        cases: kernel_props::CASES,
        failure_persistence: None,
        ..Config::default()
    };
    let run = |name: &str, f: &dyn Fn(&mut TestRunner) -> Result<(), String>| -> Result<(), String> {
        f(&mut TestRunner::new(config.clone())).map_err(|e| format!("{name}: {e}"))
    };
    run("snf", &|r| r.run(&kernel_props::matrix_strategy(), |m| kernel_props::check_snf(&m)).map_err(|e| e.to_string()))?;
    run("purity", &|r| {
        r.run(&kernel_props::subgroup_strategy(), |(g, gens)| kernel_props::check_purity(&g, &gens))
            .map_err(|e| e.to_string())
    })?;
    run("functors", &|r| {
        r.run(&kernel_props::chain_strategy(), |c| kernel_props::check_functor_laws(&c))
            .map_err(|e| e.to_string())
    })?;
    let mut subgroups = 0;
    for g in kernel_props::groups_up_to(kernel_props::EXHAUSTIVE_ORDER) {
        let t = kernel_props::Table::new(&g);
        for (set, gens) in kernel_props::all_subgroups(&t) {
            let sub = Subgroup::new(g.clone(), gens.clone()).unwrap();
            ensure(sub.is_pure() == t.brute_pure(&set), || format!("purity differs on {g} with {gens:?}"))?;
            subgroups += 1;
        }
    }
    Ok(format!(
        "{} cases each for SNF, purity (order <= {}) and functor laws; purity exhaustive on {subgroups} subgroups of every group of order <= {}",
        kernel_props::CASES,
        kernel_props::PURITY_ORDER,
        kernel_props::EXHAUSTIVE_ORDER
    ))
}

fn main() {
    let start = Instant::now();
    let cli = Cli::new();
    let criteria: [Criterion; 7] = [
        ("1 splitting at desk scale", Box::new(|| criterion_1(&cli))),
        ("2 oracle equivalence", Box::new(|| criterion_2(&cli))),
        ("3 gamma exactness", Box::new(|| criterion_3(&cli))),
        ("4 truncated example", Box::new(|| criterion_4(&cli))),
        ("5 coefficient coherence", Box::new(|| criterion_5(&cli))),
        ("6 isomorphism lifting", Box::new(|| criterion_6(&cli))),
        ("7 kernel correctness", Box::new(criterion_7)),
    ];
    let mut failed = 0;
    for (name, f) in &criteria {
        let t = Instant::now();
        let outcome = f();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS criterion {name}: {msg} ({secs:.1}s)"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} ({secs:.1}s)");
            }
        }
    }
    let total = start.elapsed().as_secs_f64();
    println!("acceptance: {} passed, {failed} failed in {total:.1}s", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
