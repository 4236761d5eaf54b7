//! JSON front end shared by the `monograde` binary and its tests.
//!
//! A job is a JSON object. Monoid commands take `"rays"` (the normal monoid
//! of lattice points in the cone they span) or `"generators"` (the monoid
//! they generate). Polynomial commands take `"vars"`, `"grading"` (one
//! degree vector per variable), `"ideal"` (generator strings) and optional
//! `"names"` and `"order"`. An optional `"options"` object may set `"box"`,
//! `"trunc"` and `"budget"`.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::divisorial::{canonical_module, class_group, is_gorenstein};
use crate::error::Error;
use crate::exact_linalg::IntVector;
use crate::groebner::{
    default_names, groebner_basis, GbConfig, IdealPresentation, TermOrder, DEFAULT_BUDGET,
};
use crate::monoid::AffineMonoid;
use crate::multigraded::{
    analyze_prime, graded_hull, is_graded, truncated_maximality, GradedRingSpec, GradingMatrix,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const BUDGET_ENV: &str = "MONOGRADE_BUDGET";
pub const DEFAULT_TRUNC: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    HilbertBasis,
    Canonical,
    ClassGroup,
    Gorenstein,
    Normalize,
    GradedHull,
    AnalyzePrime,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::HilbertBasis,
        Command::Canonical,
        Command::ClassGroup,
        Command::Gorenstein,
        Command::Normalize,
        Command::GradedHull,
        Command::AnalyzePrime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::HilbertBasis => "hilbert-basis",
            Command::Canonical => "canonical",
            Command::ClassGroup => "class-group",
            Command::Gorenstein => "gorenstein",
            Command::Normalize => "normalize",
            Command::GradedHull => "graded-hull",
            Command::AnalyzePrime => "analyze-prime",
        }
    }

    pub fn from_name(name: &str) -> Option<Command> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    fn is_polynomial(self) -> bool {
        matches!(self, Command::GradedHull | Command::AnalyzePrime)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidSource {
    Rays(Vec<IntVector>),
    Generators(Vec<IntVector>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Monoid(MonoidSource),
    Ideal {
        ideal: IdealPresentation,
        spec: GradedRingSpec,
        names: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobOptions {
    /// Bound on coordinates when listing canonical module members.
    pub box_bound: Option<u32>,
    /// Degree up to which graded-hull maximality is checked.
    pub trunc: u32,
    pub budget: u64,
    pub timing: bool,
}

/// Values given on the command line; they take precedence over the job file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub box_bound: Option<u32>,
    pub trunc: Option<u32>,
    pub budget: Option<u64>,
    /// Value of the budget environment variable, if set.
    pub env_budget: Option<String>,
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub payload: Payload,
    pub options: JobOptions,
    /// The input object, echoed in the report.
    pub input: Value,
}

/// A failure with its exit code and a JSON pointer to the offending field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub pointer: Option<String>,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            kind: "usage",
            pointer: None,
            message: message.into(),
        }
    }

    fn schema(pointer: &str, message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            kind: "schema",
            pointer: Some(pointer.to_string()),
            message: message.into(),
        }
    }

    /// One line of JSON for stderr.
    pub fn to_json_line(&self) -> String {
        json!({
            "error": self.kind,
            "exit_code": self.code,
            "message": self.message,
            "pointer": self.pointer,
        })
        .to_string()
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::BudgetExceeded { .. } | Error::Cancelled => (3, "budget"),
            Error::NotNormal { .. } | Error::NotPrime(_) | Error::UnitIdeal | Error::TrivialMonoid => {
                (4, "precondition")
            }
            Error::Parse { .. } | Error::InvalidInput(_) | Error::RankMismatch { .. } | Error::ZeroVector => {
                (2, "schema")
            }
            Error::MonoidMismatch | Error::Inconsistent(_) => (1, "internal"),
        };
        CliError {
            code,
            kind,
            pointer: None,
            message: e.to_string(),
        }
    }
}

/// Parses and validates a job. `positional` is the command named on the
/// command line; a `"command"` field in the input must agree with it.
pub fn parse_input(text: &str, positional: Option<&str>, overrides: &Overrides) -> Result<JobSpec, CliError> {
    let input: Value = serde_json::from_str(text).map_err(|e| CliError {
        code: 2,
        kind: "schema",
        pointer: Some(String::new()),
        message: format!("malformed JSON: {e}"),
    })?;
    let obj = input
        .as_object()
        .ok_or_else(|| CliError::schema("", "expected a JSON object"))?;

    let named = match obj.get("command") {
        None => None,
        Some(Value::String(s)) => Some(s.as_str()),
        Some(_) => return Err(CliError::schema("/command", "expected a string")),
    };
    let name = match (positional, named) {
        (Some(a), Some(b)) if a != b => {
            return Err(CliError::schema(
                "/command",
                format!("input names command '{b}' but '{a}' was requested"),
            ))
        }
        (Some(a), _) => a,
        (None, Some(b)) => b,
        (None, None) => return Err(CliError::schema("/command", "no command given")),
    };
    let command = Command::from_name(name).ok_or_else(|| CliError {
        code: 2,
        kind: "usage",
        pointer: Some("/command".into()),
        message: format!("unknown command '{name}'"),
    })?;

    let options = parse_options(obj, overrides)?;
    let payload = if command.is_polynomial() {
        parse_ideal_payload(obj)?
    } else {
        parse_monoid_payload(obj)?
    };
    Ok(JobSpec {
        command,
        payload,
        options,
        input,
    })
}

fn parse_options(obj: &Map<String, Value>, ov: &Overrides) -> Result<JobOptions, CliError> {
    let empty = Map::new();
    let opts = match obj.get("options") {
        None => &empty,
        Some(Value::Object(m)) => m,
        Some(_) => return Err(CliError::schema("/options", "expected an object")),
    };
    if let Some(k) = opts.keys().find(|k| !["box", "trunc", "budget"].contains(&k.as_str())) {
        return Err(CliError::schema(&format!("/options/{k}"), "unknown option"));
    }
    let small = |key: &str| -> Result<Option<u64>, CliError> {
        opts.get(key)
            .map(|v| {
                v.as_u64()
                    .ok_or_else(|| CliError::schema(&format!("/options/{key}"), "expected a nonnegative integer"))
            })
            .transpose()
    };
    let to_u32 = |key: &str, v: Option<u64>| -> Result<Option<u32>, CliError> {
        v.map(|x| u32::try_from(x).map_err(|_| CliError::schema(&format!("/options/{key}"), "value too large")))
            .transpose()
    };

    let budget = match (ov.budget, small("budget")?, &ov.env_budget) {
        (Some(b), _, _) => b,
        (None, Some(b), _) => b,
        (None, None, Some(s)) => s
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("{BUDGET_ENV} must be a nonnegative integer, got '{s}'")))?,
        (None, None, None) => DEFAULT_BUDGET,
    };
    Ok(JobOptions {
        box_bound: ov.box_bound.or(to_u32("box", small("box")?)?),
        trunc: ov.trunc.or(to_u32("trunc", small("trunc")?)?).unwrap_or(DEFAULT_TRUNC),
        budget,
        timing: ov.timing,
    })
}

fn parse_int(v: &Value, pointer: &str) -> Result<BigInt, CliError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| CliError::schema(pointer, "expected an integer")),
        Value::String(s) => s
            .parse()
            .map_err(|_| CliError::schema(pointer, "expected an integer")),
        _ => Err(CliError::schema(pointer, "expected an integer")),
    }
}

fn parse_vectors(v: &Value, pointer: &str) -> Result<Vec<IntVector>, CliError> {
    let rows = v
        .as_array()
        .ok_or_else(|| CliError::schema(pointer, "expected an array of integer vectors"))?;
    if rows.is_empty() {
        return Err(CliError::schema(pointer, "expected at least one vector"));
    }
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let p = format!("{pointer}/{i}");
        let entries = row
            .as_array()
            .ok_or_else(|| CliError::schema(&p, "expected an array of integers"))?;
        let vec: IntVector = entries
            .iter()
            .enumerate()
            .map(|(j, x)| parse_int(x, &format!("{p}/{j}")))
            .collect::<Result<Vec<_>, _>>()?
            .into();
        if vec.is_empty() {
            return Err(CliError::schema(&p, "vectors must be nonempty"));
        }
        if let Some(first) = out.first() {
            let first: &IntVector = first;
            if first.len() != vec.len() {
                return Err(CliError::schema(
                    &p,
                    format!("length {} differs from {}", vec.len(), first.len()),
                ));
            }
        }
        out.push(vec);
    }
    Ok(out)
}

fn reject_unknown(obj: &Map<String, Value>, allowed: &[&str]) -> Result<(), CliError> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(CliError::schema(&format!("/{k}"), "unknown field")),
        None => Ok(()),
    }
}

fn parse_monoid_payload(obj: &Map<String, Value>) -> Result<Payload, CliError> {
    reject_unknown(obj, &["command", "options", "rays", "generators"])?;
    match (obj.get("rays"), obj.get("generators")) {
        (Some(r), None) => Ok(Payload::Monoid(MonoidSource::Rays(parse_vectors(r, "/rays")?))),
        (None, Some(g)) => Ok(Payload::Monoid(MonoidSource::Generators(parse_vectors(
            g,
            "/generators",
        )?))),
        (Some(_), Some(_)) => Err(CliError::schema("/generators", "give either rays or generators, not both")),
        (None, None) => Err(CliError::schema("/rays", "missing field: rays or generators")),
    }
}

fn parse_ideal_payload(obj: &Map<String, Value>) -> Result<Payload, CliError> {
    reject_unknown(obj, &["command", "options", "vars", "grading", "ideal", "names", "order"])?;
    let n = obj
        .get("vars")
        .ok_or_else(|| CliError::schema("/vars", "missing field"))?
        .as_u64()
        .filter(|&n| (1..=64).contains(&n))
        .ok_or_else(|| CliError::schema("/vars", "expected an integer between 1 and 64"))? as usize;

    let names = match obj.get("names") {
        None => default_names(n),
        Some(Value::Array(a)) => {
            if a.len() != n {
                return Err(CliError::schema("/names", format!("expected {n} names")));
            }
            let mut names = Vec::with_capacity(n);
            for (i, v) in a.iter().enumerate() {
                let s = v
                    .as_str()
                    .filter(|s| is_identifier(s))
                    .ok_or_else(|| CliError::schema(&format!("/names/{i}"), "expected an identifier"))?;
                if names.iter().any(|m: &String| m == s) {
                    return Err(CliError::schema(&format!("/names/{i}"), "duplicate name"));
                }
                names.push(s.to_string());
            }
            names
        }
        Some(_) => return Err(CliError::schema("/names", "expected an array of strings")),
    };

    let grading = parse_vectors(
        obj.get("grading")
            .ok_or_else(|| CliError::schema("/grading", "missing field"))?,
        "/grading",
    )?;
    if grading.len() != n {
        return Err(CliError::schema("/grading", format!("expected one degree vector per variable ({n})")));
    }
    let spec = GradedRingSpec::new(GradingMatrix::new(grading).map_err(CliError::from)?);

    let order = match obj.get("order").map(|v| v.as_str()) {
        None | Some(Some("grevlex")) => TermOrder::grevlex(n),
        Some(Some("lex")) => TermOrder::lex(n),
        _ => return Err(CliError::schema("/order", "expected \"grevlex\" or \"lex\"")),
    };

    let gens = obj
        .get("ideal")
        .ok_or_else(|| CliError::schema("/ideal", "missing field"))?
        .as_array()
        .ok_or_else(|| CliError::schema("/ideal", "expected an array of strings"))?;
    let mut polys = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        let p = format!("/ideal/{i}");
        let s = g.as_str().ok_or_else(|| CliError::schema(&p, "expected a string"))?;
        let f = crate::groebner::parse_polynomial(s, &names)
            .map_err(|e| CliError::schema(&p, e.to_string()))?;
        polys.push(f);
    }
    let ideal = IdealPresentation::new(n, polys, order).map_err(CliError::from)?;
    Ok(Payload::Ideal { ideal, spec, names })
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Integers that fit in 64 bits become JSON numbers, others strings.
pub fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn vector_json(v: &IntVector) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

fn sorted_json(mut vs: Vec<IntVector>) -> Value {
    vs.sort();
    Value::Array(vs.iter().map(vector_json).collect())
}

/// Runs a job and builds its report.
pub fn execute(job: &JobSpec) -> Result<Value, CliError> {
    let start = Instant::now();
    let result = match &job.payload {
        Payload::Monoid(source) => run_monoid(job, source)?,
        Payload::Ideal { ideal, spec, names } => run_ideal(job, ideal, spec, names)?,
    };
    let mut report = json!({
        "command": job.command.name(),
        "input": job.input,
        "result": result,
        "version": VERSION,
    });
    if job.options.timing {
        report["timing_ms"] = json!(start.elapsed().as_secs_f64() * 1000.0);
    }
    Ok(report)
}

fn run_monoid(job: &JobSpec, source: &MonoidSource) -> Result<Value, CliError> {
    let monoid = match source {
        MonoidSource::Rays(r) => AffineMonoid::from_cone(r)?,
        MonoidSource::Generators(g) => AffineMonoid::from_generators(g)?,
    };
    let amb = |vs: &[IntVector]| -> Vec<IntVector> { vs.iter().map(|v| monoid.to_ambient(v)).collect() };
    Ok(match job.command {
        Command::HilbertBasis => json!({
            "hilbert_basis": sorted_json(amb(monoid.hilbert_basis()?)),
            "rank": monoid.rank(),
            "units": sorted_json(amb(monoid.units())),
        }),
        Command::Canonical => {
            let omega = canonical_module(&monoid)?;
            let gorenstein = is_gorenstein(&monoid)?.gorenstein;
            let mut out = json!({
                "h": vector_json(omega.ideal.heights()),
                "generators": sorted_json(amb(&omega.generators)),
                "gorenstein": gorenstein,
            });
            if let Some(b) = job.options.box_bound {
                out["members"] = sorted_json(amb(&omega.ideal.members(b)));
            }
            out
        }
        Command::ClassGroup => {
            let g = class_group(&monoid)?;
            json!({ "invariant_factors": Value::Array(g.invariant_factors().iter().map(int_json).collect()) })
        }
        Command::Gorenstein => {
            let r = is_gorenstein(&monoid)?;
            json!({
                "gorenstein": r.gorenstein,
                "certificate": r.certificate.as_ref().map(|c| vector_json(&monoid.to_ambient(c))),
            })
        }
        Command::Normalize => {
            let witness = monoid.non_normal_witness().map(|w| vector_json(&monoid.to_ambient(w)));
            json!({
                "normal": monoid.is_normal(),
                "witness": witness,
                "rank": monoid.rank(),
                "lattice_basis": Value::Array(monoid.lattice_basis().rows().iter().map(vector_json).collect()),
                "facets": sorted_json(monoid.facet_forms().to_vec()),
                "units": sorted_json(amb(monoid.units())),
            })
        }
        Command::GradedHull | Command::AnalyzePrime => unreachable!("polynomial command with a monoid payload"),
    })
}

fn run_ideal(
    job: &JobSpec,
    ideal: &IdealPresentation,
    spec: &GradedRingSpec,
    names: &[String],
) -> Result<Value, CliError> {
    let cfg = GbConfig::with_budget(job.options.budget);
    let show = |i: &IdealPresentation| -> Value {
        Value::Array(
            i.generators()
                .iter()
                .map(|g| json!(g.to_string_with(names, i.order())))
                .collect(),
        )
    };
    Ok(match job.command {
        Command::GradedHull => {
            let hull = graded_hull(ideal, spec, &cfg)?;
            let graded = is_graded(&groebner_basis(&hull, &cfg)?, spec);
            let gap = truncated_maximality(ideal, &hull, spec, job.options.trunc, &cfg)?;
            json!({
                "hull": show(&hull),
                "graded": graded,
                "maximality": {
                    "degree": job.options.trunc,
                    "holds": gap.is_none(),
                    "first_gap": gap.as_ref().map(vector_json),
                },
            })
        }
        Command::AnalyzePrime => {
            let a = analyze_prime(ideal, spec, &cfg)?;
            json!({
                "p_star": show(&a.p_star),
                "dim_quotient_p": a.dim_quotient_p,
                "dim_quotient_p_star": a.dim_quotient_p_star,
                "height_p": a.height_p,
                "height_p_star": a.height_p_star,
                "tau": a.tau,
                "sigma": a.sigma,
                "graded": a.graded,
                "samples": a.samples,
            })
        }
        _ => unreachable!("monoid command with a polynomial payload"),
    })
}

/// Renders a report exactly as the binary prints it.
pub fn render(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports are serializable");
    s.push('\n');
    s
}

/// Parses, executes and renders; the error carries the exit code.
pub fn run(text: &str, positional: Option<&str>, overrides: &Overrides) -> Result<String, CliError> {
    let job = parse_input(text, positional, overrides)?;
    execute(&job).map(|r| render(&r))
}
