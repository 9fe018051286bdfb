//! Reduction plans: rewrite `R_target` through repeated identity
//! applications until every remaining subresultant has a zero coordinate.
//!
//! Only `i = 0` steps are planned, i.e. `u = w0 + (k, ..., k)`. A step
//! consumes its cluster `w0, w0 + e1, ..., w0 + en`; any consumed index with
//! all coordinates positive is produced by another step, the rest form the
//! base set.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::habicht::{derive_params, verify_identity, HabichtParams, VerificationReport};
use crate::subresultant::{DeltaIndex, PolySystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Unit diagonal moves only (`k = 1`).
    A,
    /// The largest `k` that reaches the produced index from some `w0 >= 0`.
    B,
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "A" | "a" => Ok(Strategy::A),
            "B" | "b" => Ok(Strategy::B),
            other => Err(format!("unknown strategy {other:?} (expected A or B)")),
        }
    }
}

/// `(R_{w0}, R_{w0+e1}, ..., R_{w0+en})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub w0: DeltaIndex,
    pub members: Vec<DeltaIndex>,
}

impl Cluster {
    pub fn at(w0: &DeltaIndex) -> Self {
        let members = (0..=w0.len()).map(|j| w0.plus_unit(j)).collect();
        Cluster {
            w0: w0.clone(),
            members,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub params: HabichtParams,
    pub produces: DeltaIndex,
    pub consumes: Vec<DeltaIndex>,
}

impl ReductionStep {
    fn new(params: HabichtParams) -> Self {
        let produces = params.u.clone();
        let consumes = Cluster::at(&params.w0).members;
        ReductionStep {
            params,
            produces,
            consumes,
        }
    }

    /// Exponent of `r_{w0}` multiplying `R_produces`.
    pub fn scale_exponent(&self) -> usize {
        self.params.epsilon
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionPlan {
    pub target: DeltaIndex,
    pub strategy: Strategy,
    /// Topologically ordered: every consumed index is in `base` or produced earlier.
    pub steps: Vec<ReductionStep>,
    pub base: BTreeSet<DeltaIndex>,
}

impl ReductionPlan {
    pub fn step_producing(&self, index: &DeltaIndex) -> Option<&ReductionStep> {
        self.steps.iter().find(|s| &s.produces == index)
    }

    /// One line per step, e.g. `(2,1) --k=1--> (3,2)  from [(2,1) (3,1) (2,2)]  scale r_(2,1)^1`.
    pub fn render(&self) -> Vec<String> {
        let mut lines: Vec<String> = self
            .steps
            .iter()
            .map(|s| {
                let from = s
                    .consumes
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ");
                format!(
                    "{} --k={}--> {}  from [{}]  scale r_{}^{}",
                    s.params.w0,
                    s.params.k,
                    s.produces,
                    from,
                    s.params.w0,
                    s.scale_exponent()
                )
            })
            .collect();
        let base = self
            .base
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        lines.push(format!("base: {base}"));
        lines
    }

    /// Checks that the steps are topologically ordered and end at the target.
    pub fn validate(&self) -> Result<()> {
        let mut available: BTreeSet<DeltaIndex> = self.base.clone();
        for step in &self.steps {
            if let Some(missing) = step.consumes.iter().find(|c| !available.contains(*c)) {
                return Err(Error::DegenerateStep {
                    produces: step.produces.clone(),
                    reason: format!("consumes {missing} before it is available"),
                });
            }
            available.insert(step.produces.clone());
        }
        match self.steps.last() {
            Some(last) if last.produces != self.target => Err(Error::DegenerateStep {
                produces: last.produces.clone(),
                reason: format!("final step does not produce the target {}", self.target),
            }),
            _ => Ok(()),
        }
    }
}

fn step_for(degrees: &[usize], index: &DeltaIndex, strategy: Strategy) -> Result<HabichtParams> {
    let k = match strategy {
        Strategy::A => 1,
        Strategy::B => index.min_entry(),
    };
    let n = index.len();
    let w0 = index
        .checked_sub(&DeltaIndex::constant(n, k))
        .expect("index has all coordinates >= k");
    derive_params(degrees, &w0, k, 0)
}

/// Plans the reduction of `R_target` to subresultants with a zero coordinate.
///
/// Steps are ordered by increasing `|w0|`, ties broken lexicographically.
/// A target that already has a zero coordinate yields an empty plan whose
/// base is the target itself.
pub fn plan_reduction(
    degrees: &[usize],
    target: &DeltaIndex,
    strategy: Strategy,
) -> Result<ReductionPlan> {
    let n = degrees.len().saturating_sub(1);
    if target.len() != n {
        return Err(Error::DeltaLength {
            delta: target.clone(),
            expected: n,
            got: target.len(),
        });
    }
    if target.weight() > degrees[0] {
        return Err(Error::DeltaOutOfRange {
            delta: target.clone(),
            weight: target.weight(),
            d0: degrees[0],
        });
    }
    if n < 2 {
        // With n = 1 an i = 0 step consumes R_{w0+1}, which is its own target
        // whenever k = 1.
        return Err(Error::Unsupported(
            "reduction planning needs at least three polynomials (n >= 2)".into(),
        ));
    }
    if target.has_zero() {
        return Ok(ReductionPlan {
            target: target.clone(),
            strategy,
            steps: Vec::new(),
            base: BTreeSet::from([target.clone()]),
        });
    }

    let mut steps: BTreeMap<DeltaIndex, ReductionStep> = BTreeMap::new();
    let mut base = BTreeSet::new();
    let mut pending = vec![target.clone()];
    while let Some(index) = pending.pop() {
        if steps.contains_key(&index) {
            continue;
        }
        let step = ReductionStep::new(step_for(degrees, &index, strategy)?);
        for c in &step.consumes {
            if c.has_zero() {
                base.insert(c.clone());
            } else if !steps.contains_key(c) {
                pending.push(c.clone());
            }
        }
        steps.insert(index, step);
    }

    let mut steps: Vec<ReductionStep> = steps.into_values().collect();
    steps.sort_by(|a, b| {
        (a.params.w0.weight(), &a.params.w0).cmp(&(b.params.w0.weight(), &b.params.w0))
    });
    let plan = ReductionPlan {
        target: target.clone(),
        strategy,
        steps,
        base,
    };
    plan.validate()?;
    Ok(plan)
}

/// Verifies every step of `plan` on `system`, keyed by the produced index.
///
/// Steps are independent identity checks, so they run in parallel; the result
/// map is ordered by index regardless of completion order. A degenerate or
/// unequal step aborts with the offending step identified.
pub fn execute_plan(
    system: &PolySystem,
    plan: &ReductionPlan,
) -> Result<BTreeMap<DeltaIndex, VerificationReport>> {
    let reports = plan
        .steps
        .par_iter()
        .map(|step| {
            let report = verify_identity(system, &step.params)?;
            Ok((step.produces.clone(), report))
        })
        .collect::<Result<Vec<_>>>()?;
    for step in &plan.steps {
        let report = &reports
            .iter()
            .find(|(p, _)| p == &step.produces)
            .expect("one report per step")
            .1;
        if report.is_degenerate() {
            return Err(Error::DegenerateStep {
                produces: step.produces.clone(),
                reason: format!(
                    "degree drop at {}",
                    report
                        .degree_drops
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            });
        }
        if !report.equal {
            return Err(Error::DegenerateStep {
                produces: step.produces.clone(),
                reason: "identity does not hold".into(),
            });
        }
    }
    Ok(reports.into_iter().collect())
}
