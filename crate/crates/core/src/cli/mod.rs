//! The `reeb-bubble` command line. [`run`] does all the work and returns the
//! exit status: 0 on success or match, 1 on a validation failure or
//! verification mismatch, 2 on a usage error (bad flags, unknown ring,
//! unreadable input file).

pub mod catalog;
mod render;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub use catalog::{
    catalog, catalog_suite, coefficient_pair, planner_example, select, standard_rings,
    CatalogEntry, CatalogOptions, CatalogReport, CatalogResult, DEFAULT_SEED,
};
pub use render::homology_table;

use crate::calculus::{
    cohomology_ring_of_descriptor, homology_of_descriptor, manifold_inference, realize_plan,
    realize_plan_general, GeneralPlan, Plan,
};
use crate::coefficients::CoefficientRing;
use crate::oracle::{verify_descriptor, TierChoice, VerifyOptions};
use crate::reeb_descriptor::{load, to_json, validate, DescriptorError, ReebDescriptor};

#[derive(Debug, Parser)]
#[command(
    name = "reeb-bubble",
    version,
    about = "Homology and cohomology rings of bubbled Reeb spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a descriptor and list every violation.
    Validate(DescriptorArg),
    /// Homology groups from the calculus.
    Homology(RingArgs),
    /// Cohomology ring presentation and pairing invariants.
    Ring(RingArgs),
    /// Turn a realization plan into a descriptor.
    Realize(RealizeArgs),
    /// Compare the calculus against the oracle.
    Verify(VerifyArgs),
    /// What the Reeb space implies about the source manifold.
    InferManifold(InferArgs),
    /// Verify the built-in catalog.
    Catalog(CatalogArgs),
}

#[derive(Debug, Args)]
pub struct DescriptorArg {
    #[arg(short = 'd', long = "descriptor", value_name = "PATH")]
    pub descriptor: PathBuf,
    /// Also write a JSON report here (`-` for standard output).
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RingSelection {
    /// Z, Q, Zp (with --p) or Z/<prime>. Repeatable; default Z.
    #[arg(long = "ring", value_name = "RING")]
    pub rings: Vec<String>,
    /// Prime for each `Zp`, in order; a single value serves them all.
    #[arg(long = "p", value_name = "PRIME")]
    pub primes: Vec<u64>,
}

#[derive(Debug, Args)]
pub struct RingArgs {
    #[command(flatten)]
    pub input: DescriptorArg,
    #[command(flatten)]
    pub rings: RingSelection,
}

#[derive(Debug, Args)]
pub struct RealizeArgs {
    /// Plan document; one with a `base` field goes to the general planner.
    #[arg(long, value_name = "PATH")]
    pub plan: PathBuf,
    /// Where to write the descriptor (default: standard output).
    #[arg(short = 'o', long = "output", value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: DescriptorArg,
    #[command(flatten)]
    pub rings: RingSelection,
    #[arg(long, default_value = "auto", value_name = "auto|1|2")]
    pub tier: TierChoice,
    /// Let Tier 2 model multi-target spheres with pinch maps.
    #[arg(long)]
    pub pinch: bool,
}

#[derive(Debug, Args)]
pub struct InferArgs {
    #[command(flatten)]
    pub input: DescriptorArg,
    #[arg(short = 'm', value_name = "M")]
    pub m: usize,
    #[command(flatten)]
    pub rings: RingSelection,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Run only this instance (or the instances with this name prefix).
    #[arg(long, value_name = "NAME")]
    pub only: Option<String>,
    #[arg(long, default_value = "auto", value_name = "auto|1|2")]
    pub tier: TierChoice,
    #[arg(long)]
    pub pinch: bool,
    /// List instance names and exit.
    #[arg(long)]
    pub list: bool,
    /// Write each instance's descriptor into this directory.
    #[arg(long, value_name = "DIR")]
    pub export: Option<PathBuf>,
    #[command(flatten)]
    pub rings: RingSelection,
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
}

/// A failed command: the message and the exit status it maps to.
#[derive(Debug)]
pub struct Failure {
    pub status: i32,
    pub message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        status: 2,
        message: message.into(),
    }
}

fn failed(message: impl Into<String>) -> Failure {
    Failure {
        status: 1,
        message: message.into(),
    }
}

impl Command {
    fn json_path(&self) -> Option<&Path> {
        match self {
            Command::Validate(a) => a.json.as_deref(),
            Command::Homology(a) | Command::Ring(a) => a.input.json.as_deref(),
            Command::Realize(a) => a.json.as_deref(),
            Command::Verify(a) => a.input.json.as_deref(),
            Command::InferManifold(a) => a.input.json.as_deref(),
            Command::Catalog(a) => a.json.as_deref(),
        }
    }
}

impl RingSelection {
    pub fn resolve(&self) -> Result<Vec<CoefficientRing>, Failure> {
        if self.rings.is_empty() {
            if !self.primes.is_empty() {
                return Err(usage("--p given without --ring Zp"));
            }
            return Ok(vec![CoefficientRing::Integers]);
        }
        let mut primes = self.primes.iter();
        let mut out = Vec::new();
        for name in &self.rings {
            let p = if matches!(name.as_str(), "Zp" | "Fp") {
                match (primes.next(), self.primes.as_slice()) {
                    (Some(&p), _) => Some(p),
                    (None, [p]) => Some(*p),
                    _ => return Err(usage(format!("ring `{name}` needs a prime: add --p PRIME"))),
                }
            } else {
                None
            };
            let r = CoefficientRing::parse(name, p)
                .map_err(|e| usage(format!("unknown ring `{name}`: {e}")))?;
            if !out.contains(&r) {
                out.push(r);
            }
        }
        Ok(out)
    }
}

fn read_descriptor(path: &Path) -> Result<ReebDescriptor, Failure> {
    match load(path) {
        Ok(d) => Ok(d),
        Err(e @ DescriptorError::Io { .. }) => {
            Err(usage(format!("unreadable descriptor file: {e}")))
        }
        Err(e) => Err(failed(format!(
            "schema violation in {}: {e}",
            path.display()
        ))),
    }
}

fn read_valid_descriptor(path: &Path) -> Result<ReebDescriptor, Failure> {
    let d = read_descriptor(path)?;
    let v = validate(&d);
    if v.is_empty() {
        Ok(d)
    } else {
        let list: Vec<String> = v.iter().map(|x| format!("  - {x}")).collect();
        Err(failed(format!(
            "invalid descriptor {}:\n{}",
            path.display(),
            list.join("\n")
        )))
    }
}

/// `-` collects the document in `stdout_json`; `run` prints it in place of the text output.
fn write_json<T: Serialize>(
    path: &Option<PathBuf>,
    value: &T,
    stdout_json: &mut Vec<u8>,
) -> Result<(), Failure> {
    let Some(path) = path else { return Ok(()) };
    let text = serde_json::to_string_pretty(value).expect("reports serialize") + "\n";
    if path.as_os_str() == "-" {
        stdout_json.extend_from_slice(text.as_bytes());
        return Ok(());
    }
    fs::write(path, text).map_err(|e| failed(format!("cannot write {}: {e}", path.display())))
}

#[derive(Serialize)]
struct ValidationReport<'a> {
    valid: bool,
    violations: &'a [crate::reeb_descriptor::Violation],
}

#[derive(Serialize)]
struct HomologyRow {
    ring: CoefficientRing,
    homology: crate::graded_algebra::GradedModule,
}

#[derive(Serialize)]
struct HomologyReport {
    n: usize,
    rows: Vec<HomologyRow>,
}

fn validate_cmd(
    a: &DescriptorArg,
    out: &mut dyn Write,
    json: &mut Vec<u8>,
) -> Result<i32, Failure> {
    let d = read_descriptor(&a.descriptor)?;
    let v = validate(&d);
    write_json(
        &a.json,
        &ValidationReport {
            valid: v.is_empty(),
            violations: &v,
        },
        json,
    )?;
    if v.is_empty() {
        let _ = writeln!(
            out,
            "valid: n = {}, {} handles, {} records",
            d.n,
            d.base.handles.len(),
            d.records.len()
        );
        Ok(0)
    } else {
        let _ = writeln!(out, "invalid: {} violations", v.len());
        for x in &v {
            let _ = writeln!(out, "  - {x}");
        }
        Ok(1)
    }
}

fn homology_cmd(a: &RingArgs, out: &mut dyn Write, json: &mut Vec<u8>) -> Result<i32, Failure> {
    let rings = a.rings.resolve()?;
    let d = read_valid_descriptor(&a.input.descriptor)?;
    let mut rows = Vec::new();
    for r in rings {
        let h = homology_of_descriptor(&d, r).map_err(|e| failed(e.to_string()))?;
        rows.push((r, h.padded(d.n)));
    }
    let _ = write!(out, "{}", homology_table(&rows));
    let report = HomologyReport {
        n: d.n,
        rows: rows
            .into_iter()
            .map(|(ring, homology)| HomologyRow { ring, homology })
            .collect(),
    };
    write_json(&a.input.json, &report, json)?;
    Ok(0)
}

fn ring_cmd(a: &RingArgs, out: &mut dyn Write, json: &mut Vec<u8>) -> Result<i32, Failure> {
    let rings = a.rings.resolve()?;
    let d = read_valid_descriptor(&a.input.descriptor)?;
    let mut reports = Vec::new();
    for r in rings {
        let rep = cohomology_ring_of_descriptor(&d, r).map_err(|e| failed(e.to_string()))?;
        let _ = write!(out, "{}", render::ring_report(&rep));
        reports.push(rep);
    }
    write_json(&a.input.json, &reports, json)?;
    Ok(0)
}

#[derive(Serialize)]
#[serde(untagged)]
enum Realized {
    Standard(crate::calculus::RealizedPlan),
    General { descriptor: ReebDescriptor },
}

fn realize_cmd(a: &RealizeArgs, out: &mut dyn Write, json: &mut Vec<u8>) -> Result<i32, Failure> {
    let text = fs::read_to_string(&a.plan)
        .map_err(|e| usage(format!("unreadable plan file {}: {e}", a.plan.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| failed(format!("plan is not JSON: {e}")))?;
    let realized = if value.get("base").is_some() {
        let p: GeneralPlan = serde_json::from_value(value)
            .map_err(|e| failed(format!("schema violation in plan: {e}")))?;
        Realized::General {
            descriptor: realize_plan_general(&p).map_err(|e| failed(e.to_string()))?,
        }
    } else {
        let p: Plan = serde_json::from_value(value)
            .map_err(|e| failed(format!("schema violation in plan: {e}")))?;
        Realized::Standard(realize_plan(&p).map_err(|e| failed(e.to_string()))?)
    };
    let d = match &realized {
        Realized::Standard(r) => &r.descriptor,
        Realized::General { descriptor } => descriptor,
    };
    match &a.output {
        Some(path) => {
            fs::write(path, to_json(d) + "\n")
                .map_err(|e| failed(format!("cannot write {}: {e}", path.display())))?;
            let _ = writeln!(
                out,
                "wrote {} ({} records)",
                path.display(),
                d.records.len()
            );
        }
        None => {
            let _ = writeln!(out, "{}", to_json(d));
        }
    }
    if let Realized::Standard(r) = &realized {
        let ranks: Vec<String> = r.expected_ranks.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "expected ranks: ({})", ranks.join(", "));
        for c in &r.expected_constants {
            let _ = writeln!(
                out,
                "expected: {} * {} = {} {}",
                c.nu, c.beta, c.value, c.tau
            );
        }
    }
    write_json(&a.json, &realized, json)?;
    Ok(0)
}

fn verify_cmd(a: &VerifyArgs, out: &mut dyn Write, json: &mut Vec<u8>) -> Result<i32, Failure> {
    let rings = a.rings.resolve()?;
    let d = read_valid_descriptor(&a.input.descriptor)?;
    let report = verify_descriptor(
        &d,
        &VerifyOptions {
            rings,
            tier: a.tier,
            allow_pinch: a.pinch,
        },
    );
    let _ = write!(out, "{}", report.table());
    write_json(&a.input.json, &report, json)?;
    Ok(if report.all_match { 0 } else { 1 })
}

fn infer_cmd(a: &InferArgs, out: &mut dyn Write, json: &mut Vec<u8>) -> Result<i32, Failure> {
    let rings = a.rings.resolve()?;
    let d = read_valid_descriptor(&a.input.descriptor)?;
    let mut reports = Vec::new();
    for r in rings {
        let rep = manifold_inference(&d, a.m, r).map_err(|e| failed(e.to_string()))?;
        let _ = writeln!(out, "coefficients {r}");
        let _ = write!(out, "{}", render::inference_report(&rep));
        reports.push(rep);
    }
    write_json(&a.input.json, &reports, json)?;
    Ok(0)
}

fn catalog_cmd(a: &CatalogArgs, out: &mut dyn Write, json: &mut Vec<u8>) -> Result<i32, Failure> {
    let rings = if a.rings.rings.is_empty() {
        standard_rings()
    } else {
        a.rings.resolve()?
    };
    if a.list || a.export.is_some() {
        let entries = select(catalog(a.seed), a.only.as_deref());
        for e in &entries {
            let _ = writeln!(out, "{:<24} n={}  {}", e.name, e.descriptor.n, e.summary);
            if let Some(dir) = &a.export {
                fs::create_dir_all(dir)
                    .map_err(|e| failed(format!("cannot create {}: {e}", dir.display())))?;
                let path = dir.join(format!("{}.json", e.name));
                fs::write(&path, to_json(&e.descriptor) + "\n")
                    .map_err(|e| failed(format!("cannot write {}: {e}", path.display())))?;
            }
        }
        return Ok(0);
    }
    let report = catalog_suite(&CatalogOptions {
        seed: a.seed,
        only: a.only.clone(),
        rings,
        tier: a.tier,
        allow_pinch: a.pinch,
    });
    if report.results.is_empty() {
        return Err(usage(format!(
            "no catalog instance matches `{}`",
            a.only.as_deref().unwrap_or("")
        )));
    }
    let _ = write!(out, "{}", render::catalog_table(&report));
    write_json(&a.json, &report, json)?;
    Ok(if report.all_match { 0 } else { 1 })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if status == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return status;
        }
    };
    let json_only = cli
        .command
        .json_path()
        .is_some_and(|p| p.as_os_str() == "-");
    let mut sink = std::io::sink();
    let text: &mut dyn Write = if json_only { &mut sink } else { out };
    let mut json = Vec::new();
    let result = match &cli.command {
        Command::Validate(a) => validate_cmd(a, text, &mut json),
        Command::Homology(a) => homology_cmd(a, text, &mut json),
        Command::Ring(a) => ring_cmd(a, text, &mut json),
        Command::Realize(a) => realize_cmd(a, text, &mut json),
        Command::Verify(a) => verify_cmd(a, text, &mut json),
        Command::InferManifold(a) => infer_cmd(a, text, &mut json),
        Command::Catalog(a) => catalog_cmd(a, text, &mut json),
    };
    let _ = out.write_all(&json);
    match result {
        Ok(status) => status,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.status
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sel(rings: &[&str], primes: &[u64]) -> RingSelection {
        RingSelection {
            rings: rings.iter().map(|s| s.to_string()).collect(),
            primes: primes.to_vec(),
        }
    }

    #[test]
    fn ring_groups() {
        let r = sel(&["Z", "Q", "Zp", "Zp"], &[2, 3]).resolve().unwrap();
        assert_eq!(
            r.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            ["Z", "Q", "Z/2", "Z/3"]
        );
        assert_eq!(sel(&["Zp", "Zp"], &[5]).resolve().unwrap().len(), 1);
        assert_eq!(sel(&["Z/7"], &[]).resolve().unwrap()[0].to_string(), "Z/7");
        assert_eq!(
            sel(&[], &[]).resolve().unwrap(),
            vec![CoefficientRing::Integers]
        );
        for bad in [
            sel(&["Zp"], &[]),
            sel(&["Zp"], &[4]),
            sel(&["R"], &[]),
            sel(&[], &[2]),
        ] {
            assert_eq!(bad.resolve().unwrap_err().status, 2);
        }
    }

    #[test]
    fn usage_errors_exit_two() {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        assert_eq!(run(["reeb-bubble", "frobnicate"], &mut o, &mut e), 2);
        assert_eq!(
            run(
                ["reeb-bubble", "verify", "--tier", "3", "-d", "x"],
                &mut o,
                &mut e
            ),
            2
        );
        assert_eq!(
            run(
                ["reeb-bubble", "homology", "-d", "/nonexistent/x.json"],
                &mut o,
                &mut e
            ),
            2
        );
        assert!(String::from_utf8_lossy(&e).contains("unreadable descriptor file"));
        assert_eq!(run(["reeb-bubble", "--help"], &mut o, &mut e), 0);
    }
}
