use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use conefort::catalog::{self, Family, TSV_HEADER};
use conefort::cone::Cone;
use conefort::corpus;
use conefort::cores::{check_lemma51, check_lemma52};
use conefort::fan::{Fan, FanFile};
use conefort::linalg::IntegerLattice;
use conefort::report::Report;
use conefort::toric::{self, punctured_polydisc_check, PolydiscOptions};
use conefort::Error;

#[derive(Parser, Debug)]
#[command(name = "conefort", version, about = "Exact cones, fans and toric boundary checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    /// Falls back to CONEFORT_SEED, then 0.
    #[arg(long, global = true, env = "CONEFORT_SEED", default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true)]
    samples: Option<usize>,

    /// Numeric cross-checks only; exact predicates ignore it.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cone algebra on a JSON cone record.
    Cone {
        op: ConeOp,
        /// One record; `intersect` takes two.
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
    },
    /// Checks on a JSON fan file, or on the built-in Kuga fan with `--window`.
    Fan {
        check: FanCheck,
        /// `refines` takes the fine fan first, then the coarse one.
        #[arg(long)]
        input: Vec<PathBuf>,
        #[arg(long)]
        window: Option<usize>,
        #[arg(long, default_value_t = 3)]
        d: i64,
    },
    /// Essential-dimension lower bounds as TSV rows.
    Edbound {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        p: i64,
        /// One row per r from 0 to n.
        #[arg(long)]
        table: bool,
    },
    /// Runs a built-in verification corpus.
    Verify {
        target: Target,
        #[arg(long, default_value_t = 3)]
        d: i64,
        #[arg(long, default_value_t = 5)]
        window: usize,
        #[arg(long, default_value_t = 0.5)]
        radius: f64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConeOp {
    Dual,
    Faces,
    Smooth,
    Intersect,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FanCheck {
    Validate,
    Complete,
    Smooth,
    Invariant,
    Refines,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Lemma51,
    Lemma52,
    Fundamental,
    Polydisc,
    Gl2,
    Kuga,
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Core(Error::DimensionMismatch { .. }) => 3,
            Failure::Core(Error::InvalidLevel(_)) => 4,
            Failure::Core(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

/// What a command prints, and whether its checks passed.
struct Output {
    text: String,
    pass: bool,
}

fn json_output(v: &Value, pass: bool) -> Output {
    Output { text: serde_json::to_string_pretty(v).expect("serializable"), pass }
}

fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Core(Error::Parse(format!("{}: {e}", path.display()))))
}

fn require_json(format: Option<Format>) -> Result<(), Failure> {
    match format {
        Some(Format::Tsv) => Err(Failure::Usage("tsv output is only available for edbound".into())),
        _ => Ok(()),
    }
}

fn cmd_cone(op: ConeOp, inputs: &[PathBuf]) -> Result<Output, Failure> {
    let cones = inputs.iter().map(|p| Ok(Cone::from_json(&read_json(p)?)?)).collect::<Result<Vec<_>, Failure>>()?;
    let expected = if matches!(op, ConeOp::Intersect) { 2 } else { 1 };
    if cones.len() != expected {
        return Err(Failure::Usage(format!("expected {expected} --input, got {}", cones.len())));
    }
    let c = &cones[0];
    let v = match op {
        ConeOp::Dual => c.dual().to_json(),
        ConeOp::Faces => Value::Array(c.faces().iter().map(Cone::to_json).collect()),
        ConeOp::Smooth => json!({
            "smooth": c.is_smooth(&IntegerLattice::standard(c.ambient_rank()))?,
            "simplicial": c.is_simplicial(),
            "strongly_convex": c.is_strongly_convex(),
        }),
        ConeOp::Intersect => c.intersect(&cones[1])?.to_json(),
    };
    Ok(json_output(&v, true))
}

fn kuga_fan_file(d: i64, window: usize) -> Result<FanFile, Failure> {
    Ok(catalog::kuga_fixed_point_data(d, window)?.fan_file)
}

fn cmd_fan(check: FanCheck, inputs: &[PathBuf], window: Option<usize>, d: i64) -> Result<Output, Failure> {
    let mut files = inputs
        .iter()
        .map(|p| Ok(FanFile::parse(&read_json(p)?)?))
        .collect::<Result<Vec<_>, Failure>>()?;
    if let Some(w) = window {
        files.insert(0, kuga_fan_file(d, w)?);
    }
    let expected = if matches!(check, FanCheck::Refines) { 2 } else { 1 };
    if files.len() != expected {
        return Err(Failure::Usage(format!("expected {expected} fan(s) from --input or --window, got {}", files.len())));
    }
    let file = &files[0];
    let fan = &file.fan;
    let (name, pass, witness) = match check {
        FanCheck::Validate => {
            let r = fan.validate();
            ("validate", r.is_valid(), serde_json::to_value(&r).expect("serializable"))
        }
        FanCheck::Complete => {
            let support = file
                .support
                .as_ref()
                .ok_or_else(|| Failure::Usage("complete needs a support region in the fan file".into()))?;
            let r = fan.is_complete_over(support)?;
            ("complete", r.complete, serde_json::to_value(&r).expect("serializable"))
        }
        FanCheck::Smooth => {
            let valid = fan.validate();
            if !valid.is_valid() {
                ("smooth", false, json!({"invalid": valid}))
            } else {
                let singular = singular_cones(fan)?;
                ("smooth", singular.is_empty(), json!({"singular": singular}))
            }
        }
        FanCheck::Invariant => {
            let r = fan.is_invariant_under(&file.symmetry_generators, file.support.as_ref())?;
            ("invariant", r.is_invariant(), serde_json::to_value(&r).expect("serializable"))
        }
        FanCheck::Refines => {
            let ok = fan.refines(&files[1].fan)?;
            let stray: Vec<&Cone> =
                fan.cones().iter().filter(|c| !files[1].fan.cones().iter().any(|d| d.contains_cone(c))).collect();
            ("refines", ok, json!({"uncontained": stray}))
        }
    };
    Ok(json_output(&json!({"check": name, "pass": pass, "witness": witness}), pass))
}

fn singular_cones(fan: &Fan) -> Result<Vec<Cone>, Failure> {
    let mut out = Vec::new();
    for c in fan.cones() {
        if !c.is_smooth(fan.lattice())? {
            out.push(c.clone());
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_edbound(
    family: &str,
    n: usize,
    r: Option<usize>,
    d: i64,
    m: i64,
    p: i64,
    table: bool,
    format: Option<Format>,
) -> Result<Output, Failure> {
    let family: Family = family.parse()?;
    let rows = if table {
        catalog::bound_table(family, n, d, m, p)?
    } else {
        vec![catalog::ed_lower_bound(family, n, r.unwrap_or(n), d, m, p)?]
    };
    let text = match format.unwrap_or(Format::Tsv) {
        Format::Tsv => std::iter::once(TSV_HEADER.to_string()).chain(rows.iter().map(|r| r.to_tsv())).collect::<Vec<_>>().join("\n"),
        Format::Json => serde_json::to_string_pretty(&rows).expect("serializable"),
    };
    Ok(Output { text, pass: true })
}

struct VerifyConfig {
    seed: u64,
    samples: Option<usize>,
    tolerance: Option<f64>,
    d: i64,
    window: usize,
    radius: f64,
}

fn cmd_verify(target: Target, cfg: &VerifyConfig) -> Result<Output, Failure> {
    let seed = cfg.seed;
    let report = match target {
        Target::Lemma51 => {
            let mut report = Report::new("5.1", Some(seed));
            for i in 0..cfg.samples.unwrap_or(200) as u64 {
                let inst = corpus::projection_instance(seed, i);
                report.absorb(&format!("cone[{i}]"), check_lemma51(&inst.cone, inst.drop, 50, seed ^ i)?);
            }
            report
        }
        Target::Lemma52 => {
            let mut report = Report::new("5.2", Some(seed));
            for (i, (case, d)) in corpus::core_corpus(seed, cfg.samples.unwrap_or(50)).iter().enumerate() {
                report.absorb(&format!("core[{i}]/{case:?}"), check_lemma52(d, 20, 20, seed ^ i as u64)?);
            }
            report
        }
        Target::Fundamental => {
            let mut report = Report::new("fundamental", Some(seed));
            let per = cfg.samples.unwrap_or(10);
            for (i, inst) in corpus::fundamental_corpus(seed).iter().enumerate() {
                let r = toric::fundamental_lemma_check(&inst.cone, &inst.sigma, &inst.mode, per, 1000, seed ^ i as u64)?;
                report.absorb(&inst.name, r);
            }
            report
        }
        Target::Polydisc => {
            let quadrant = Cone::of(2, &[&[1, 0], &[0, 1]]);
            let mut opts = PolydiscOptions::new(cfg.radius, cfg.samples.unwrap_or(1000), seed);
            if let Some(t) = cfg.tolerance {
                opts.tolerance = t;
            }
            punctured_polydisc_check(&IntegerLattice::standard(2), &quadrant, &quadrant, &opts)?
        }
        Target::Gl2 => {
            let g = catalog::gl2_fixed_point_data(cfg.d)?;
            let mut report = g.sample_check(cfg.samples.unwrap_or(1000), seed, cfg.tolerance.unwrap_or(1e-12));
            report.push(
                "fixed-point-certificate",
                g.certificate.fixes_stratum,
                json!({"certificate": g.certificate, "fan": FanFile::new(g.fan.clone()).to_json()}),
            );
            report
        }
        Target::Kuga => {
            let k = catalog::kuga_fixed_point_data(cfg.d, cfg.window)?;
            let mut report = Report::new("kuga", Some(seed));
            report.absorb("exact", k.exact_checks()?);
            let tolerance = cfg.tolerance.unwrap_or(toric::TOLERANCE);
            report.absorb("coverage", k.coverage_check(cfg.samples.unwrap_or(200), seed, tolerance)?);
            report.push("fan-file", true, k.fan_file.to_json());
            report
        }
    };
    let pass = report.pass;
    Ok(json_output(&serde_json::to_value(&report).expect("serializable"), pass))
}

fn run(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Cone { op, input } => {
            require_json(cli.format)?;
            cmd_cone(op, &input)
        }
        Command::Fan { check, input, window, d } => {
            require_json(cli.format)?;
            cmd_fan(check, &input, window, d)
        }
        Command::Edbound { family, n, r, d, m, p, table } => cmd_edbound(&family, n, r, d, m, p, table, cli.format),
        Command::Verify { target, d, window, radius } => {
            require_json(cli.format)?;
            let cfg = VerifyConfig { seed: cli.seed, samples: cli.samples, tolerance: cli.tolerance, d, window, radius };
            cmd_verify(target, &cfg)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            // a closed pipe downstream is not a failure of the command
            let _ = writeln!(std::io::stdout(), "{}", out.text);
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
