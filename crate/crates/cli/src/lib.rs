//! `kunneth` command line: validate, split, lift, gen, gamma-check,
//! coherence-check.
//!
//! Exit codes: 0 success, 1 semantic failure (invalid instance, no
//! extension, violated hypothesis), 2 unreadable or malformed input,
//! 3 disagreement between the builder and an independent check.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kunneth_core::fixtures::{
    dp_truncation, plant_defect, random_family, random_instance, DefectKind, FixtureError, RandomBounds,
};
use kunneth_core::io::{
    instance_to_json, iso_inputs, iso_to_json, parse_instance, parse_iso_record, splitting_to_json, IoError,
};
use kunneth_core::kunneth::{check_coherence, validate_instance, KunnethInstance};
use kunneth_core::report::{ValidationReport, Witness};
use kunneth_core::splitter::{
    build_with, check_gamma_exact, oracle_feasible, verify_ideal_splitting, SplitterError, Strategy,
    DEFAULT_ORACLE_BOUND,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SEMANTIC: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_ORACLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "kunneth", version, about = "Ideal-preserving splittings of K-theory coefficient sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run every structural check (and coefficient relations, if present).
    Validate {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Build an ideal splitting family and write it.
    Split {
        path: PathBuf,
        #[arg(long, default_value = "solver", value_parser = parse_strategy)]
        strategy: Strategy,
        /// Cross-check against exhaustive search when |Kn| <= --bound.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        bound: u64,
        /// Attempt the construction on an instance that fails validation.
        #[arg(long)]
        force: bool,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Lift (phi0, phi1, pairing) to an isomorphism of coefficient rows.
    Lift {
        a: PathBuf,
        b: PathBuf,
        iso: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Write a generated instance.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Defect to plant (for `defect`).
        #[arg(long = "kind")]
        defect: Option<String>,
        /// Instance file to plant the defect in; a twisted instance from
        /// `--seed` when absent.
        #[arg(long)]
        base: Option<PathBuf>,
        /// Coefficient chain for an aligned family, e.g. `2,4,8`.
        #[arg(long, value_delimiter = ',')]
        family: Option<Vec<u64>>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exactness of the sum complex over a comaximal family.
    GammaCheck {
        path: PathBuf,
        #[arg(long)]
        ideal: String,
        /// Comma-separated parts; the maximal subideals when absent.
        #[arg(long, value_delimiter = ',')]
        parts: Option<Vec<String>>,
        #[command(flatten)]
        common: Common,
    },
    /// Coefficient relations and splitting coherence of a family block.
    CoherenceCheck {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Aligned,
    Twisted,
    Dp,
    Defect,
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse()
}

/// A failed command: exit code plus message.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::new(EXIT_PARSE, e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Validate { path, common } => cmd_validate(&path, common.format, out),
        Command::Split {
            path,
            strategy,
            oracle,
            bound,
            force,
            output,
            common,
        } => cmd_split(&path, strategy, oracle.then_some(bound), force, output.as_deref(), common.format, out, err),
        Command::Lift {
            a,
            b,
            iso,
            output,
            common,
        } => cmd_lift(&a, &b, &iso, output.as_deref(), common.format, out),
        Command::Gen {
            kind,
            seed,
            p,
            m,
            k,
            defect,
            base,
            family,
            output,
        } => {
            let params = GenParams {
                seed,
                p,
                m,
                k,
                defect,
                base,
                family,
            };
            cmd_gen(kind, &params, output.as_deref(), out)
        }
        Command::GammaCheck {
            path,
            ideal,
            parts,
            common,
        } => cmd_gamma_check(&path, &ideal, parts.as_deref(), common.format, out),
        Command::CoherenceCheck { path, common } => cmd_coherence_check(&path, common.format, out),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<KunnethInstance, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

/// Writes `text` to `path` through a temporary file in the same directory.
fn write_atomic(path: &Path, text: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| Failure::new(EXIT_SEMANTIC, format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn emit(output: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match output {
        Some(p) => write_atomic(p, text),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::new(EXIT_SEMANTIC, e.to_string())),
    }
}

fn say(out: &mut dyn Write, text: &str) {
    let _ = writeln!(out, "{text}");
}

fn report_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

#[derive(Serialize)]
struct ValidateOutput<'a> {
    passed: bool,
    report: &'a ValidationReport,
}

fn print_report(report: &ValidationReport, format: Format, out: &mut dyn Write) {
    match format {
        Format::Text => say(out, &report.to_string()),
        Format::Json => say(
            out,
            &report_json(&ValidateOutput {
                passed: report.all_passed(),
                report,
            }),
        ),
    }
}

pub fn full_report(inst: &KunnethInstance) -> ValidationReport {
    let mut report = validate_instance(inst);
    if let Some(fam) = &inst.family {
        match check_coherence(fam) {
            Ok(r) => report.extend(r),
            Err(e) => report.fail("coherence-maps", "family", e.to_string(), None),
        }
    }
    report
}

fn cmd_validate(path: &Path, format: Format, out: &mut dyn Write) -> CmdResult {
    let inst = load(path)?;
    let report = full_report(&inst);
    print_report(&report, format, out);
    Ok(if report.all_passed() { EXIT_OK } else { EXIT_SEMANTIC })
}

#[derive(Serialize)]
struct SplitOutput {
    status: &'static str,
    strategy: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    blocking_ideal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
    /// Under `both`: did greedy and solver reach the same verdict everywhere.
    #[serde(skip_serializing_if = "Option::is_none")]
    strategies_agree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleOutput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<ValidationReport>,
}

#[derive(Serialize)]
struct OracleOutput {
    checked: bool,
    feasible: Option<usize>,
    agrees: Option<bool>,
    detail: String,
}

fn blocking(e: &SplitterError) -> Option<String> {
    match e {
        SplitterError::NoExtension { ideal }
        | SplitterError::GammaNotSurjective { ideal, .. }
        | SplitterError::WellDefinedness { ideal, .. }
        | SplitterError::StrategyConflict { ideal, .. } => Some(ideal.clone()),
        _ => None,
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_split(
    path: &Path,
    strategy: Strategy,
    oracle_bound: Option<u64>,
    force: bool,
    output: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let inst = load(path)?;
    let built = build_with(&inst, strategy, force);
    let mut result = SplitOutput {
        status: "ok",
        strategy: strategy.to_string(),
        blocking_ideal: None,
        error: None,
        notes: Vec::new(),
        strategies_agree: None,
        oracle: None,
        verification: None,
    };
    let mut code = EXIT_OK;
    let family = match &built {
        Ok(o) => {
            result.notes = o.notes.clone();
            // only the both strategy emits notes, one per disagreeing ideal
            if strategy == Strategy::Both {
                result.strategies_agree = Some(o.notes.is_empty());
            }
            let v = verify_ideal_splitting(&inst, &o.family);
            if !v.all_passed() {
                result.status = "verification-failed";
                code = EXIT_ORACLE;
            }
            result.verification = Some(v);
            Some(&o.family)
        }
        Err(e) => {
            result.status = "failed";
            result.blocking_ideal = blocking(e);
            result.error = Some(e.to_string());
            code = if matches!(e, SplitterError::StrategyConflict { .. }) {
                EXIT_ORACLE
            } else {
                EXIT_SEMANTIC
            };
            None
        }
    };
    if let Some(bound) = oracle_bound {
        let small = inst.kn().order().is_some_and(|o| o <= bound.into());
        let valid = validate_instance(&inst).all_passed();
        result.oracle = Some(if !small || !valid {
            OracleOutput {
                checked: false,
                feasible: None,
                agrees: None,
                detail: if small { "instance invalid".into() } else { format!("|Kn| exceeds {bound}") },
            }
        } else {
            match oracle_feasible(&inst, family, bound) {
                Ok(v) => {
                    if !v.agrees() {
                        code = EXIT_ORACLE;
                        result.status = "oracle-disagreement";
                    }
                    OracleOutput {
                        checked: true,
                        feasible: Some(v.feasible),
                        agrees: Some(v.agrees()),
                        detail: String::new(),
                    }
                }
                Err(e) => OracleOutput {
                    checked: false,
                    feasible: None,
                    agrees: None,
                    detail: e.to_string(),
                },
            }
        });
    }
    if code == EXIT_OK {
        let fam = family.expect("success has a family");
        let text = splitting_to_json(&inst, fam)?;
        match output {
            Some(p) => write_atomic(p, &text)?,
            None if format == Format::Text => emit(None, &text, out)?,
            None => {}
        }
    }
    if format == Format::Json {
        say(out, &report_json(&result));
        return Ok(code);
    }
    let mut lines = Vec::new();
    if code != EXIT_OK || output.is_some() {
        let mut line = format!("split: {}", result.status);
        if let Some(id) = &result.blocking_ideal {
            line.push_str(&format!(" at ideal {id}"));
        }
        if let Some(e) = &result.error {
            line.push_str(&format!(" ({e})"));
        }
        lines.push(line);
        if let Some(v) = result.verification.as_ref().filter(|v| !v.all_passed()) {
            lines.push(v.to_string());
        }
    }
    lines.extend(result.notes.iter().map(|n| format!("note: {n}")));
    match result.strategies_agree {
        Some(true) => lines.push("strategies: solver and greedy agree at every ideal".into()),
        Some(false) => lines.push("strategies: greedy weaker than solver (see notes)".into()),
        None => {}
    }
    if let Some(o) = &result.oracle {
        lines.push(match (o.checked, o.agrees) {
            (true, Some(a)) => format!(
                "oracle: {} ideal-respecting splittings, {}",
                o.feasible.unwrap_or(0),
                if a { "agrees" } else { "DISAGREES" }
            ),
            _ => format!("oracle: skipped ({})", o.detail),
        });
    }
    // the splitting itself occupies stdout when no output file is given
    let to_err = code == EXIT_OK && output.is_none();
    for l in &lines {
        if to_err {
            say(err, l);
        } else {
            say(out, l);
        }
    }
    Ok(code)
}

fn cmd_lift(a: &Path, b: &Path, iso: &Path, output: Option<&Path>, format: Format, out: &mut dyn Write) -> CmdResult {
    let (ia, ib) = (load(a)?, load(b)?);
    let rec = parse_iso_record(&read(iso)?).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", iso.display())))?;
    let (phi0, phi1, pairing) = iso_inputs(&rec, &ia, &ib)?;
    for (inst, p) in [(&ia, a), (&ib, b)] {
        let r = validate_instance(inst);
        if !r.all_passed() {
            return Err(Failure::new(
                EXIT_SEMANTIC,
                format!("{} is invalid: {}", p.display(), r.failed_checks().join(", ")),
            ));
        }
    }
    let lifted = kunneth_core::splitter::lift_isomorphism(&ia, &ib, &phi0, &phi1, &pairing)
        .map_err(|e| Failure::new(EXIT_SEMANTIC, e.to_string()))?;
    let text = iso_to_json(&lifted)?;
    match (output, format) {
        (Some(p), _) => {
            write_atomic(p, &text)?;
            say(out, "lift: ok");
        }
        (None, _) => emit(None, &text, out)?,
    }
    Ok(EXIT_OK)
}

/// Parameters of `gen`.
#[derive(Debug, Clone, Default)]
pub struct GenParams {
    pub seed: u64,
    pub p: Option<u64>,
    pub m: Option<usize>,
    pub k: Option<usize>,
    pub defect: Option<String>,
    pub base: Option<PathBuf>,
    pub family: Option<Vec<u64>>,
}

fn fixture_failure(e: FixtureError) -> Failure {
    Failure::new(EXIT_SEMANTIC, e.to_string())
}

/// The instance `gen` would write.
pub fn generate(kind: GenKind, params: &GenParams) -> Result<KunnethInstance, (i32, String)> {
    gen_instance(kind, params).map_err(|f| (f.code, f.message))
}

fn gen_instance(kind: GenKind, params: &GenParams) -> Result<KunnethInstance, Failure> {
    let aligned = RandomBounds {
        twist: false,
        relabel: false,
        ..RandomBounds::default()
    };
    let bad = |m: &str| Failure::new(EXIT_SEMANTIC, format!("bad parameters: {m}"));
    match kind {
        GenKind::Aligned => match &params.family {
            Some(chain) => random_family(params.seed, &aligned, chain).map_err(fixture_failure),
            None => Ok(random_instance(params.seed, &aligned)),
        },
        GenKind::Twisted => Ok(random_instance(params.seed, &RandomBounds::default())),
        GenKind::Dp => {
            let (Some(p), Some(m), Some(k)) = (params.p, params.m, params.k) else {
                return Err(bad("dp needs --p, --m and --k"));
            };
            dp_truncation(p, m, k).map_err(fixture_failure)
        }
        GenKind::Defect => {
            let kind: DefectKind = params
                .defect
                .as_deref()
                .ok_or_else(|| bad("defect needs --kind"))?
                .parse()
                .map_err(fixture_failure)?;
            let base = match &params.base {
                Some(p) => load(p)?,
                None => random_instance(params.seed, &RandomBounds::default()),
            };
            plant_defect(&base, kind).map_err(fixture_failure)
        }
    }
}

fn cmd_gen(kind: GenKind, params: &GenParams, output: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    let inst = gen_instance(kind, params)?;
    emit(output, &instance_to_json(&inst)?, out)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct GammaOutput {
    ideal: String,
    parts: Vec<String>,
    surjective: bool,
    exact_middle: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
}

fn cmd_gamma_check(path: &Path, ideal: &str, parts: Option<&[String]>, format: Format, out: &mut dyn Write) -> CmdResult {
    let inst = load(path)?;
    let lat = &inst.lattice;
    let sem = |e: String| Failure::new(EXIT_SEMANTIC, e);
    let i = lat.index(ideal).map_err(|e| sem(e.to_string()))?;
    let part_ix: Vec<usize> = match parts {
        Some(ps) => ps
            .iter()
            .map(|p| lat.index(p))
            .collect::<Result<_, _>>()
            .map_err(|e| sem(e.to_string()))?,
        None => lat.maximal_subideals(i),
    };
    if part_ix.is_empty() {
        return Err(sem(format!("{ideal} has no subideals to check")));
    }
    let c = check_gamma_exact(&inst, i, &part_ix).map_err(|e| sem(e.to_string()))?;
    let o = GammaOutput {
        ideal: ideal.to_string(),
        parts: part_ix.iter().map(|&p| lat.id(p).to_string()).collect(),
        surjective: c.surjective,
        exact_middle: c.exact_middle,
        detail: c.detail.clone(),
        witness: c.witness.clone(),
    };
    match format {
        Format::Json => say(out, &report_json(&o)),
        Format::Text => {
            let mut line = format!(
                "gamma {} over [{}]: {}",
                o.ideal,
                o.parts.join(", "),
                if c.is_exact() { "exact" } else { "NOT exact" }
            );
            if !o.detail.is_empty() {
                line.push_str(&format!(": {}", o.detail));
            }
            if let Some(w) = &o.witness {
                line.push_str(&format!(" [witness {:?} in {}]", w.element, w.group));
            }
            say(out, &line);
        }
    }
    Ok(if c.is_exact() { EXIT_OK } else { EXIT_SEMANTIC })
}

fn cmd_coherence_check(path: &Path, format: Format, out: &mut dyn Write) -> CmdResult {
    let inst = load(path)?;
    let fam = inst
        .family
        .as_ref()
        .ok_or_else(|| Failure::new(EXIT_SEMANTIC, "instance has no coherent_family block"))?;
    let report = check_coherence(fam).map_err(|e| Failure::new(EXIT_SEMANTIC, e.to_string()))?;
    print_report(&report, format, out);
    Ok(if report.all_passed() { EXIT_OK } else { EXIT_SEMANTIC })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_replaces_whole_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.json");
        fs::write(&p, "old contents that are longer").unwrap();
        write_atomic(&p, "new").unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), "new");
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn atomic_write_into_missing_directory_fails_cleanly() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("absent").join("out.json");
        let f = write_atomic(&p, "x").unwrap_err();
        assert_eq!(f.code, EXIT_SEMANTIC);
        assert!(!p.exists());
    }
}
