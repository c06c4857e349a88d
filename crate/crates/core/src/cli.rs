//! Command-line front end. [`run`] does all the work and returns the text to
//! print with an exit code: 0 when a verdict was computed, 1 for bad input,
//! 2 for internal errors (including disagreeing projective routes).

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::criterion::{self, Mode, ProblemSpec, Route, Verdict};
use crate::error::Error;
use crate::io::{self, CheckReport, FaceJson, FaceReportJson, FacesReport, LimitReport, ModuleReport, OracleReport};
use crate::io::{SurveyFaceJson, VerdictJson};
use crate::oracle::{self, Evidence};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "orbclose",
    version,
    about = "Decide whether an orbit closure of binary forms has finitely many orbits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Lift,
    Direct,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Affine,
    Projective,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide finiteness of the orbit closure described by a problem file
    Check {
        /// Problem file, or `-` for standard input
        input: String,
        /// Projective evaluation route
        #[arg(long, value_enum, default_value = "lift")]
        route: RouteArg,
        /// Also report the modality at top level
        #[arg(long)]
        modality: bool,
    },
    /// Decide whether every orbit closure in the module is finite
    ModuleCheck {
        input: String,
        /// Write a vector with an infinite orbit closure to this path
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// List maximal admissible faces with supporting normals
    Faces { input: String },
    /// Sample standard vectors on each maximal admissible face
    Oracle {
        input: String,
        #[arg(long, default_value_t = 8)]
        sample_size: usize,
    },
    /// Limit of the vector along a normal-form curve
    Limit {
        input: String,
        /// Curve as JSON: {"r":[..],"p":..,"q":..,"c":{"re":"..","im":".."},"h":[..]}
        #[arg(long)]
        curve: String,
        /// Override the problem's mode
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn fail(err: &Error) -> Self {
        let code = match err {
            Error::Internal(_) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        };
        Outcome { stdout: String::new(), stderr: format!("error: {err}\n"), code }
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String, Error> {
    let mut text = String::new();
    if path == "-" {
        stdin.read_to_string(&mut text).map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{path}: {e}")))?;
    }
    Ok(text)
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialises");
    s.push('\n');
    s
}

struct Loaded {
    spec: ProblemSpec,
    hash: String,
}

fn load(path: &str, stdin: &mut dyn Read) -> Result<Loaded, Error> {
    let text = read_input(path, stdin)?;
    let spec = io::parse_problem(&text)?;
    Ok(Loaded { spec, hash: sha256_hex(&text) })
}

const TOOL: &str = "orbclose";
const VERSION: &str = env!("CARGO_PKG_VERSION");

fn same_verdict(a: &Verdict, b: &Verdict) -> bool {
    let faces = |v: &Verdict| -> Vec<(Vec<usize>, bool)> {
        v.reports.iter().map(|r| (r.face.indices.clone(), r.violation.is_some())).collect()
    };
    a.finite == b.finite && a.witness == b.witness && faces(a) == faces(b)
}

fn check(path: &str, route: RouteArg, modality: bool, stdin: &mut dyn Read) -> Result<String, Error> {
    let Loaded { spec, hash } = load(path, stdin)?;
    let (verdict, route_name) = match spec.mode {
        Mode::Affine => (criterion::decide_affine(&spec)?, None),
        Mode::Projective => match route {
            RouteArg::Lift => (criterion::decide_projective(&spec, Route::Lift)?, Some("lift")),
            RouteArg::Direct => (criterion::decide_projective(&spec, Route::Direct)?, Some("direct")),
            RouteArg::Both => {
                let lift = criterion::decide_projective(&spec, Route::Lift)?;
                let direct = criterion::decide_projective(&spec, Route::Direct)?;
                if !same_verdict(&lift, &direct) {
                    return Err(Error::Internal(format!(
                        "lift and direct routes disagree (lift finite = {}, direct finite = {})",
                        lift.finite, direct.finite
                    )));
                }
                (lift, Some("both"))
            }
        },
    };
    let report = CheckReport {
        tool: TOOL.into(),
        version: VERSION.into(),
        input_sha256: hash,
        mode: spec.mode.to_string(),
        route: route_name.map(str::to_string),
        verdict: VerdictJson::from(&verdict),
        faces: verdict.reports.iter().map(FaceReportJson::from).collect(),
        modality: modality.then_some(verdict.modality),
    };
    Ok(to_json(&report))
}

fn module_check(path: &str, emit: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<String, Error> {
    let Loaded { spec, hash } = load(path, stdin)?;
    let verdict = criterion::module_always_finite(&spec)?;
    let mut report = ModuleReport {
        tool: TOOL.into(),
        version: VERSION.into(),
        input_sha256: hash,
        mode: spec.mode.to_string(),
        always_finite: true,
        witness: None,
        witness_file: None,
    };
    report.fill(&verdict);
    if let (Some(out), Some((face, beta))) = (emit, verdict.witness.as_ref()) {
        let witness = criterion::witness_vector(&spec, &face.indices, beta)?;
        std::fs::write(out, io::serialize_problem(&witness))
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", out.display())))?;
        report.witness_file = Some(out.display().to_string());
    }
    Ok(to_json(&report))
}

fn faces(path: &str, stdin: &mut dyn Read) -> Result<String, Error> {
    let Loaded { spec, hash } = load(path, stdin)?;
    let lifted = spec.mode == Mode::Projective;
    let faces = crate::geometry::maximal_admissible_faces(&spec.points(), lifted)?;
    let report = FacesReport {
        tool: TOOL.into(),
        version: VERSION.into(),
        input_sha256: hash,
        mode: spec.mode.to_string(),
        faces: faces.iter().map(FaceJson::from).collect(),
    };
    Ok(to_json(&report))
}

fn survey(path: &str, sample_size: usize, stdin: &mut dyn Read) -> Result<String, Error> {
    let Loaded { spec, hash } = load(path, stdin)?;
    let verdict = criterion::decide(&spec)?;
    let mut faces = Vec::new();
    let mut infinite = false;
    for r in &verdict.reports {
        let sample = oracle::default_sample(&spec, &r.face.indices, sample_size);
        let s = oracle::sample_survey(&spec, &r.face.indices, &sample)?;
        infinite |= s.evidence == Evidence::Infinite;
        faces.push(SurveyFaceJson::new(&r.face.indices, &s, r.violation.is_some()));
    }
    let report = OracleReport {
        tool: TOOL.into(),
        version: VERSION.into(),
        input_sha256: hash,
        mode: spec.mode.to_string(),
        evidence: if infinite { "infinite" } else { "finite" }.into(),
        criterion_finite: verdict.finite,
        agree: verdict.finite != infinite,
        faces,
    };
    Ok(to_json(&report))
}

fn limit(path: &str, curve: &str, mode: Option<ModeArg>, stdin: &mut dyn Read) -> Result<String, Error> {
    let Loaded { spec, hash } = load(path, stdin)?;
    let curve = io::parse_curve(curve)?;
    let mode = match mode {
        Some(ModeArg::Affine) => Mode::Affine,
        Some(ModeArg::Projective) => Mode::Projective,
        None => spec.mode,
    };
    let lim = oracle::curve_limit(&spec, &curve, mode == Mode::Projective)?;
    let mut report = LimitReport {
        tool: TOOL.into(),
        version: VERSION.into(),
        input_sha256: hash,
        mode: mode.to_string(),
        case: 0,
        exponents: Vec::new(),
        shift: 0,
        divergent: false,
        entries: Vec::new(),
        rescaling: None,
    };
    report.fill(&lim);
    Ok(to_json(&report))
}

/// Runs one command line (including the program name in `args[0]`).
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let result = match &cli.command {
        Command::Check { input, route, modality } => check(input, *route, *modality, stdin),
        Command::ModuleCheck { input, emit_witness } => module_check(input, emit_witness.as_ref(), stdin),
        Command::Faces { input } => faces(input, stdin),
        Command::Oracle { input, sample_size } => survey(input, *sample_size, stdin),
        Command::Limit { input, curve, mode } => limit(input, curve, *mode, stdin),
    };
    match result {
        Ok(text) => Outcome::ok(text),
        Err(e) => Outcome::fail(&e),
    }
}
