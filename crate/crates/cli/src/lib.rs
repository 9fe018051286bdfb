//! Subcommand implementations for the `habicht` binary.
//!
//! Every command returns a [`Outcome`] holding the JSON document to print and
//! the exit code: `0` when everything verified, `1` when an identity failed
//! (or a reduction step was degenerate), `2` for invalid input.

use std::fmt;
use std::str::FromStr;

use habicht_core::habicht::all_params;
use habicht_core::random::random_system;
use habicht_core::{
    derive_params, dp_list, execute_plan, plan_reduction, subresultant, verify_identity, Coeff,
    DeltaIndex, Error, HabichtParams, Poly, PolySystem, Strategy, VerificationReport,
};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Map, Number, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Invalid input or parameters; maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub json: Value,
    /// Diagnostics for stderr.
    pub messages: Vec<String>,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Outcome {
            code: EXIT_OK,
            json,
            messages: Vec::new(),
        }
    }
}

/// `{"polys": [[a00, ..., a0d0], ...], "seed"?: u64, "degrees"?: [..]}`
///
/// Coefficients are ascending by degree and may be JSON integers of any size
/// or decimal strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub polys: Vec<Poly>,
    pub seed: Option<u64>,
    pub degrees: Option<Vec<usize>>,
}

fn parse_coeff(v: &Value) -> Result<Coeff, CliError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        other => {
            return Err(CliError(format!(
                "coefficient must be an integer, got {other}"
            )))
        }
    };
    BigInt::from_str(&text).map_err(|_| CliError(format!("coefficient {text:?} is not an integer")))
}

fn parse_poly(v: &Value) -> Result<Poly, CliError> {
    let arr = v.as_array().ok_or_else(|| {
        CliError(format!(
            "polynomial must be an array of coefficients, got {v}"
        ))
    })?;
    Ok(Poly::from_coeffs(
        arr.iter().map(parse_coeff).collect::<Result<_, _>>()?,
    ))
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let root: Value =
            serde_json::from_str(text).map_err(|e| CliError(format!("invalid JSON: {e}")))?;
        let obj = root
            .as_object()
            .ok_or_else(|| CliError("instance must be a JSON object".into()))?;
        let polys = obj
            .get("polys")
            .and_then(Value::as_array)
            .ok_or_else(|| CliError("instance needs a \"polys\" array".into()))?
            .iter()
            .map(parse_poly)
            .collect::<Result<Vec<_>, _>>()?;
        let seed = match obj.get("seed") {
            None | Some(Value::Null) => None,
            Some(v) => Some(
                v.as_u64()
                    .ok_or_else(|| CliError(format!("seed must be a u64, got {v}")))?,
            ),
        };
        let degrees = match obj.get("degrees") {
            None | Some(Value::Null) => None,
            Some(v) => Some(
                v.as_array()
                    .and_then(|a| {
                        a.iter()
                            .map(|d| d.as_u64().map(|d| d as usize))
                            .collect::<Option<Vec<_>>>()
                    })
                    .ok_or_else(|| CliError(format!("degrees must be naturals, got {v}")))?,
            ),
        };
        Ok(InstanceFile {
            polys,
            seed,
            degrees,
        })
    }

    pub fn read(path: &str) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError(format!("cannot read {path}: {e}")))?;
        InstanceFile::parse(&text)
    }

    /// Validates exact degrees, `F0` monic and `d0` minimal.
    pub fn system(&self) -> Result<PolySystem, CliError> {
        let system = match &self.degrees {
            Some(d) => PolySystem::with_degrees(self.polys.clone(), d)?,
            None => PolySystem::new(self.polys.clone())?,
        };
        Ok(system)
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert(
            "polys".into(),
            Value::Array(self.polys.iter().map(poly_json).collect()),
        );
        if let Some(seed) = self.seed {
            obj.insert("seed".into(), json!(seed));
        }
        if let Some(d) = &self.degrees {
            obj.insert("degrees".into(), json!(d));
        }
        Value::Object(obj)
    }
}

pub fn coeff_json(c: &Coeff) -> Value {
    Value::Number(Number::from_str(&c.to_string()).expect("integers are valid JSON numbers"))
}

/// Ascending coefficients; the zero polynomial is `[]`.
pub fn poly_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(coeff_json).collect())
}

pub fn poly_from_json(v: &Value) -> Result<Poly, CliError> {
    parse_poly(v)
}

fn index_json(d: &DeltaIndex) -> Value {
    json!(d.entries())
}

pub fn parse_index(s: &str) -> Result<DeltaIndex, CliError> {
    s.parse()
        .map_err(|_| CliError(format!("cannot parse index {s:?}; expected e.g. 1,1")))
}

pub fn parse_degrees(s: &str) -> Result<Vec<usize>, CliError> {
    Ok(parse_index(s)?.entries().to_vec())
}

/// Where the polynomial system comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    File(String),
    /// Degrees and base seed; trial `t` uses seed `seed + t` (wrapping).
    Random {
        degrees: Vec<usize>,
        seed: u64,
    },
}

impl Source {
    fn system(&self, trial: u64) -> Result<(PolySystem, Option<u64>), CliError> {
        match self {
            Source::File(path) => {
                let inst = InstanceFile::read(path)?;
                Ok((inst.system()?, inst.seed))
            }
            Source::Random { degrees, seed } => {
                let s = seed.wrapping_add(trial);
                Ok((random_system(degrees, s)?, Some(s)))
            }
        }
    }
}

pub fn cmd_gen(degrees: &[usize], seed: u64) -> Result<Outcome, CliError> {
    let system = random_system(degrees, seed)?;
    let inst = InstanceFile {
        polys: system.polys().to_vec(),
        seed: Some(seed),
        degrees: Some(degrees.to_vec()),
    };
    Ok(Outcome::ok(inst.to_json()))
}

/// dp of an arbitrary list of nonzero polynomials.
pub fn cmd_dp(input: &InstanceFile) -> Result<Outcome, CliError> {
    Ok(Outcome::ok(poly_json(&dp_list(&input.polys)?)))
}

pub fn cmd_subres(source: &Source, delta: &DeltaIndex) -> Result<Outcome, CliError> {
    let (system, _) = source.system(0)?;
    let value = subresultant(&system, delta)?;
    Ok(Outcome::ok(json!({
        "delta": index_json(delta),
        "delta0": value.delta0,
        "degree_bound": system.d0() - delta.weight(),
        "principal": coeff_json(&value.principal),
        "poly": poly_json(&value.poly),
    })))
}

/// What `verify` should check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyMode {
    Single {
        w0: DeltaIndex,
        k: usize,
        i: usize,
    },
    /// Every `(w0, k, i)` with `u ∈ P(d0, n)`; `max_k` defaults to `d0`.
    Sweep {
        max_k: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    pub source: Source,
    pub trials: u64,
    pub mode: VerifyMode,
    /// Negative control: add one to every ε.
    pub epsilon_off_by_one: bool,
    /// Include both sides of each identity in the output.
    pub include_polys: bool,
}

fn status(r: &VerificationReport) -> &'static str {
    if r.is_degenerate() {
        "degenerate"
    } else if r.equal {
        "equal"
    } else {
        "unequal"
    }
}

fn case_json(trial: u64, seed: Option<u64>, r: &VerificationReport, include_polys: bool) -> Value {
    let p = &r.params;
    let mut obj = Map::new();
    obj.insert("trial".into(), json!(trial));
    obj.insert("seed".into(), json!(seed));
    obj.insert("w0".into(), index_json(&p.w0));
    obj.insert("k".into(), json!(p.k));
    obj.insert("i".into(), json!(p.i));
    obj.insert("v".into(), index_json(&p.v));
    obj.insert("u".into(), index_json(&p.u));
    obj.insert("epsilon".into(), json!(p.epsilon));
    obj.insert("status".into(), json!(status(r)));
    obj.insert(
        "degree_drops".into(),
        Value::Array(r.degree_drops.iter().map(index_json).collect()),
    );
    if include_polys {
        obj.insert("lhs".into(), poly_json(&r.lhs));
        obj.insert("rhs".into(), r.rhs.as_ref().map_or(Value::Null, poly_json));
    }
    Value::Object(obj)
}

pub fn cmd_verify(opts: &VerifyOptions) -> Result<Outcome, CliError> {
    let trials = match opts.source {
        Source::File(_) => 1,
        Source::Random { .. } => opts.trials.max(1),
    };
    let systems = (0..trials)
        .map(|t| opts.source.system(t))
        .collect::<Result<Vec<_>, _>>()?;
    let degrees = systems[0].0.degrees().to_vec();

    let mut params: Vec<HabichtParams> = match &opts.mode {
        VerifyMode::Single { w0, k, i } => vec![derive_params(&degrees, w0, *k, *i)?],
        VerifyMode::Sweep { max_k } => all_params(&degrees, max_k.unwrap_or(degrees[0])),
    };
    if opts.epsilon_off_by_one {
        for p in &mut params {
            p.epsilon += 1;
        }
    }

    let jobs: Vec<(u64, usize)> = (0..trials)
        .flat_map(|t| (0..params.len()).map(move |c| (t, c)))
        .collect();
    // Collected in job order, independent of completion order.
    let reports = jobs
        .par_iter()
        .map(|&(t, c)| verify_identity(&systems[t as usize].0, &params[c]).map(|r| (t, r)))
        .collect::<Result<Vec<_>, _>>()?;

    let (mut equal, mut unequal, mut degenerate) = (0usize, 0usize, 0usize);
    let mut messages = Vec::new();
    let cases: Vec<Value> = reports
        .iter()
        .map(|(t, r)| {
            match status(r) {
                "equal" => equal += 1,
                "degenerate" => degenerate += 1,
                _ => {
                    unequal += 1;
                    messages.push(format!(
                        "identity failed: trial {t}, w0={} k={} i={} epsilon={}",
                        r.params.w0, r.params.k, r.params.i, r.params.epsilon
                    ));
                }
            }
            case_json(*t, systems[*t as usize].1, r, opts.include_polys)
        })
        .collect();

    let all_verified = unequal == 0;
    let json = json!({
        "degrees": degrees,
        "trials": trials,
        "epsilon_off_by_one": opts.epsilon_off_by_one,
        "cases": cases,
        "summary": {
            "cases": reports.len(),
            "equal": equal,
            "unequal": unequal,
            "degenerate": degenerate,
            "all_verified": all_verified,
        },
    });
    Ok(Outcome {
        code: if all_verified { EXIT_OK } else { EXIT_FAILED },
        json,
        messages,
    })
}

pub fn cmd_reduce(
    source: &Source,
    target: &DeltaIndex,
    strategy: Strategy,
) -> Result<Outcome, CliError> {
    let (system, _) = source.system(0)?;
    let plan = plan_reduction(system.degrees(), target, strategy)?;
    let steps: Vec<Value> = plan
        .steps
        .iter()
        .map(|s| {
            json!({
                "w0": index_json(&s.params.w0),
                "k": s.params.k,
                "i": s.params.i,
                "epsilon": s.params.epsilon,
                "produces": index_json(&s.produces),
                "consumes": s.consumes.iter().map(index_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut json = json!({
        "target": index_json(target),
        "strategy": format!("{strategy:?}"),
        "steps": steps,
        "base": plan.base.iter().map(index_json).collect::<Vec<_>>(),
        "diagram": plan.render(),
    });
    match execute_plan(&system, &plan) {
        Ok(reports) => {
            json["reports"] = Value::Array(
                plan.steps
                    .iter()
                    .map(|s| {
                        let r = &reports[&s.produces];
                        json!({
                            "produces": index_json(&s.produces),
                            "status": status(r),
                            "scale_base": coeff_json(&r.scale_base),
                            "epsilon": r.params.epsilon,
                        })
                    })
                    .collect(),
            );
            Ok(Outcome::ok(json))
        }
        Err(Error::DegenerateStep { produces, reason }) => {
            let msg = format!("step producing {produces} failed: {reason}");
            json["error"] = json!({ "step": index_json(&produces), "reason": reason });
            Ok(Outcome {
                code: EXIT_FAILED,
                json,
                messages: vec![msg],
            })
        }
        Err(e) => Err(e.into()),
    }
}
