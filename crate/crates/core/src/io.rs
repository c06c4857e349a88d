//! JSON problem files and machine-readable reports.
//!
//! Rationals are strings `"p"` or `"p/q"`; Gaussian rationals are objects
//! `{"re": "...", "im": "..."}`. Big integers in reports are strings too.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::criterion::{ComponentSpec, FaceReport, Mode, ModuleVerdict, ProblemSpec, Verdict};
use crate::error::{Error, Result};
use crate::gauss::GaussianRational;
use crate::geometry::Face;
use crate::oracle::{BinaryForm, CurveSpec, LimitVector, Survey};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianJson {
    pub re: String,
    #[serde(default = "zero_string")]
    pub im: String,
}

fn zero_string() -> String {
    "0".to_string()
}

impl From<&GaussianRational> for GaussianJson {
    fn from(g: &GaussianRational) -> Self {
        GaussianJson { re: g.re.to_string(), im: g.im.to_string() }
    }
}

impl GaussianJson {
    pub fn parse(&self) -> Result<GaussianRational> {
        GaussianRational::parse_parts(&self.re, &self.im)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootJson {
    pub re: String,
    #[serde(default = "zero_string")]
    pub im: String,
    pub mult: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentJson {
    pub character: Vec<i64>,
    pub degree: u32,
    #[serde(default)]
    pub roots: Vec<RootJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemJson {
    pub k: usize,
    pub mode: String,
    pub components: Vec<ComponentJson>,
}

pub fn parse_mode(s: &str) -> Result<Mode> {
    match s {
        "affine" => Ok(Mode::Affine),
        "projective" => Ok(Mode::Projective),
        other => Err(Error::InvalidInput(format!("mode: expected \"affine\" or \"projective\", got {other:?}"))),
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::InvalidInput(format!("line {} column {}: {e}", e.line(), e.column()))
}

/// Parses and validates a problem file.
pub fn parse_problem(text: &str) -> Result<ProblemSpec> {
    let raw: ProblemJson = serde_json::from_str(text).map_err(json_error)?;
    let mode = parse_mode(&raw.mode)?;
    if raw.components.is_empty() {
        return Err(Error::InvalidInput("components: list is empty".into()));
    }
    let mut components = Vec::with_capacity(raw.components.len());
    for (i, c) in raw.components.iter().enumerate() {
        if c.character.len() != raw.k {
            return Err(Error::InvalidInput(format!(
                "components[{i}].character: length {}, expected k = {}",
                c.character.len(),
                raw.k
            )));
        }
        let mut roots = BTreeMap::new();
        let mut total: u64 = 0;
        for (j, r) in c.roots.iter().enumerate() {
            let at = |msg: String| Error::InvalidInput(format!("components[{i}].roots[{j}]: {msg}"));
            let a = GaussianRational::parse_parts(&r.re, &r.im).map_err(|e| at(e.to_string()))?;
            if r.mult == 0 {
                return Err(at("multiplicity must be positive".into()));
            }
            if roots.insert(a.clone(), r.mult).is_some() {
                return Err(at(format!("duplicate root {a}")));
            }
            total += u64::from(r.mult);
        }
        if total > u64::from(c.degree) {
            return Err(Error::InvalidInput(format!(
                "components[{i}]: root multiplicities sum to {total}, exceeding degree {}",
                c.degree
            )));
        }
        components.push(ComponentSpec { character: c.character.clone(), degree: c.degree, roots });
    }
    ProblemSpec::new(raw.k, mode, components)
}

pub fn problem_to_json(spec: &ProblemSpec) -> ProblemJson {
    ProblemJson {
        k: spec.k,
        mode: spec.mode.to_string(),
        components: spec
            .components
            .iter()
            .map(|c| ComponentJson {
                character: c.character.clone(),
                degree: c.degree,
                roots: c
                    .roots
                    .iter()
                    .map(|(a, &mult)| RootJson { re: a.re.to_string(), im: a.im.to_string(), mult })
                    .collect(),
            })
            .collect(),
    }
}

/// Canonical text of a problem: pretty JSON, roots sorted, `im` explicit.
pub fn serialize_problem(spec: &ProblemSpec) -> String {
    let mut s = serde_json::to_string_pretty(&problem_to_json(spec)).expect("plain data serialises");
    s.push('\n');
    s
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationJson {
    pub beta: Vec<String>,
    pub root: GaussianJson,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceJson {
    pub indices: Vec<usize>,
    pub normal: Option<Vec<String>>,
    pub dim: usize,
}

impl From<&Face> for FaceJson {
    fn from(f: &Face) -> Self {
        FaceJson { indices: f.indices.clone(), normal: f.normal.as_ref().map(|n| n.to_strings()), dim: f.dim }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceReportJson {
    #[serde(flatten)]
    pub face: FaceJson,
    pub kernel: Vec<Vec<String>>,
    pub violation: Option<ViolationJson>,
}

impl From<&FaceReport> for FaceReportJson {
    fn from(r: &FaceReport) -> Self {
        FaceReportJson {
            face: FaceJson::from(&r.face),
            kernel: r.kernel.vectors.iter().map(|v| strings(v)).collect(),
            violation: r.violation.as_ref().map(|v| ViolationJson {
                beta: strings(&v.beta),
                root: GaussianJson::from(&v.root),
                value: v.value.to_string(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub face: Vec<usize>,
    pub beta: Vec<String>,
    pub root: GaussianJson,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub finite: bool,
    pub modality: u8,
    pub witness: Option<WitnessJson>,
}

impl From<&Verdict> for VerdictJson {
    fn from(v: &Verdict) -> Self {
        VerdictJson {
            finite: v.finite,
            modality: v.modality,
            witness: v.witness.as_ref().map(|w| WitnessJson {
                face: w.face.clone(),
                beta: strings(&w.beta),
                root: GaussianJson::from(&w.root),
                value: w.value.to_string(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub tool: String,
    pub version: String,
    pub input_sha256: String,
    pub mode: String,
    pub route: Option<String>,
    pub verdict: VerdictJson,
    pub faces: Vec<FaceReportJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modality: Option<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacesReport {
    pub tool: String,
    pub version: String,
    pub input_sha256: String,
    pub mode: String,
    pub faces: Vec<FaceJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleWitnessJson {
    pub face: Vec<usize>,
    pub beta: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleReport {
    pub tool: String,
    pub version: String,
    pub input_sha256: String,
    pub mode: String,
    pub always_finite: bool,
    pub witness: Option<ModuleWitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness_file: Option<String>,
}

impl ModuleReport {
    pub fn fill(&mut self, m: &ModuleVerdict) {
        self.always_finite = m.always_finite;
        self.witness = m.witness.as_ref().map(|(f, b)| ModuleWitnessJson { face: f.indices.clone(), beta: strings(b) });
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyFaceJson {
    pub indices: Vec<usize>,
    pub sample: Vec<GaussianJson>,
    pub classes: usize,
    pub evidence: String,
    pub criterion_violated: bool,
}

impl SurveyFaceJson {
    pub fn new(indices: &[usize], survey: &Survey, criterion_violated: bool) -> Self {
        SurveyFaceJson {
            indices: indices.to_vec(),
            sample: survey.sample.iter().map(GaussianJson::from).collect(),
            classes: survey.classes,
            evidence: match survey.evidence {
                crate::oracle::Evidence::Finite => "finite".into(),
                crate::oracle::Evidence::Infinite => "infinite".into(),
            },
            criterion_violated,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub tool: String,
    pub version: String,
    pub input_sha256: String,
    pub mode: String,
    pub evidence: String,
    pub criterion_finite: bool,
    pub agree: bool,
    pub faces: Vec<SurveyFaceJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveJson {
    pub r: Vec<i64>,
    pub p: i64,
    #[serde(default)]
    pub q: Option<i64>,
    #[serde(default)]
    pub c: Option<GaussianJson>,
    #[serde(default)]
    pub h: Option<Vec<GaussianJson>>,
}

/// Parses an inline curve. `q` defaults to `p`, `c` to `0`, `h` to `-1`.
pub fn parse_curve(text: &str) -> Result<CurveSpec> {
    let raw: CurveJson = serde_json::from_str(text).map_err(json_error)?;
    let c = match &raw.c {
        Some(c) => c.parse()?,
        None => GaussianRational::zero(),
    };
    let h = match &raw.h {
        Some(h) => h.iter().map(GaussianJson::parse).collect::<Result<Vec<_>>>()?,
        None => vec![-GaussianRational::one()],
    };
    Ok(CurveSpec { r: raw.r, p: raw.p, q: raw.q.unwrap_or(raw.p), c, h })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coefficient: GaussianJson,
    pub x: usize,
    pub y: usize,
}

fn form_terms(f: &BinaryForm) -> Vec<TermJson> {
    f.terms().iter().map(|(c, x, y)| TermJson { coefficient: GaussianJson::from(c), x: *x, y: *y }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RescalingJson {
    pub base: GaussianJson,
    pub denominator: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitReport {
    pub tool: String,
    pub version: String,
    pub input_sha256: String,
    pub mode: String,
    pub case: u8,
    pub exponents: Vec<i64>,
    pub shift: i64,
    pub divergent: bool,
    /// `null` for components tending to zero; otherwise the nonzero terms.
    pub entries: Vec<Option<Vec<TermJson>>>,
    pub rescaling: Option<RescalingJson>,
}

impl LimitReport {
    pub fn fill(&mut self, lim: &LimitVector) {
        self.case = lim.case.number();
        self.exponents = lim.exponents.clone();
        self.shift = lim.shift;
        self.divergent = lim.divergent;
        self.entries = lim.entries.iter().map(|e| e.as_ref().map(form_terms)).collect();
        self.rescaling = lim
            .rescaling
            .as_ref()
            .map(|r| RescalingJson { base: GaussianJson::from(&r.base), denominator: r.denominator });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"{"k":1,"mode":"projective","components":[
        {"character":[1],"degree":1,"roots":[{"re":"0","im":"0","mult":1}]},
        {"character":[1],"degree":4,"roots":[{"re":"0","im":"0","mult":2}]},
        {"character":[2],"degree":4,"roots":[{"re":"-1","im":"0","mult":2}]},
        {"character":[3],"degree":3,"roots":[{"re":"0","im":"0","mult":1},{"re":"-1","mult":1}]},
        {"character":[4],"degree":2}]}"#;

    #[test]
    fn parses_example() {
        let spec = parse_problem(EXAMPLE).unwrap();
        assert_eq!(spec.k, 1);
        assert_eq!(spec.mode, Mode::Projective);
        assert_eq!(spec.components.len(), 5);
        assert_eq!(spec.components[3].roots.len(), 2);
    }

    #[test]
    fn canonical_round_trip() {
        let spec = parse_problem(EXAMPLE).unwrap();
        let text = serialize_problem(&spec);
        let again = parse_problem(&text).unwrap();
        assert_eq!(again, spec);
        assert_eq!(serialize_problem(&again), text);
    }

    #[test]
    fn positioned_errors() {
        let over =
            r#"{"k":0,"mode":"affine","components":[{"character":[],"degree":1,"roots":[{"re":"0","mult":2}]}]}"#;
        let e = parse_problem(over).unwrap_err().to_string();
        assert!(e.contains("components[0]"), "{e}");

        let empty = r#"{"k":0,"mode":"affine","components":[]}"#;
        assert!(parse_problem(empty).unwrap_err().to_string().contains("empty"));

        let k_mismatch = r#"{"k":2,"mode":"affine","components":[{"character":[1],"degree":1}]}"#;
        assert!(parse_problem(k_mismatch).unwrap_err().to_string().contains("components[0].character"));

        let dup = r#"{"k":0,"mode":"affine","components":[{"character":[],"degree":3,
            "roots":[{"re":"1/2","mult":1},{"re":"2/4","mult":1}]}]}"#;
        assert!(parse_problem(dup).unwrap_err().to_string().contains("roots[1]"));

        let syntax = "{\"k\":0,\n\"mode\": }";
        assert!(parse_problem(syntax).unwrap_err().to_string().contains("line 2"));

        let mode = r#"{"k":0,"mode":"weird","components":[{"character":[],"degree":1}]}"#;
        assert!(parse_problem(mode).is_err());

        let bad_root =
            r#"{"k":0,"mode":"affine","components":[{"character":[],"degree":1,"roots":[{"re":"1/0","mult":1}]}]}"#;
        assert!(parse_problem(bad_root).unwrap_err().to_string().contains("roots[0]"));
    }

    #[test]
    fn curve_defaults() {
        let c = parse_curve(r#"{"r":[-1],"p":-1,"c":{"re":"2"}}"#).unwrap();
        assert_eq!(c.q, -1);
        assert_eq!(c.h, vec![-GaussianRational::one()]);
        assert_eq!(c.c, GaussianRational::from(2));
        assert!(parse_curve(r#"{"r":[],"p":0,"bogus":1}"#).is_err());
    }
}
