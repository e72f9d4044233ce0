//! Inductive construction of graphs whose node reliability has a prescribed
//! number of maximal intervals of decrease.
//!
//! Starting from the path of order 5 (one interval of decrease), each round
//! substitutes a clique into every vertex and adjoins an isolated vertex,
//! then substitutes again and adjoins a universal vertex. The substitution
//! squeezes the existing extrema toward 0; the isolated vertex forces the
//! curve back down to 0 at p = 1, appending a maximum; the universal vertex
//! forces it back up to 1, appending a minimum. Each round therefore adds
//! exactly one interval of decrease.
//!
//! No step is taken on trust: a candidate clique size l is accepted only
//! when exact shape analysis of the resulting polynomial certifies that the
//! old extrema survive, in order and kind, with the expected new extremum
//! appended. The search scans l = 1, 2, ... up to a soft cap, then doubles
//! up to a hard cap, and the first accepted l is the one reported.

use crate::error::{Error, Result};
use crate::expr::GraphExpr;
use crate::reliability::{
    apply_add_isolated, apply_add_universal, apply_subclique, rel_algebra_with_cap,
    ReliabilityPolynomial, DEFAULT_ENUM_CAP,
};
use crate::shape::{analyze, ExtremumKind, IntervalEnd, ShapeReport};
use crate::sturm::default_precision;
use num::{BigRational, One};
use serde_json::json;
use std::time::Instant;

/// Clique-size search policy: linear scan through 1..=soft_cap, then
/// doubling up to hard_cap.
#[derive(Clone, Debug)]
pub struct SearchPolicy {
    pub soft_cap: u32,
    pub hard_cap: u32,
}

impl Default for SearchPolicy {
    fn default() -> Self {
        SearchPolicy {
            soft_cap: 64,
            hard_cap: 4096,
        }
    }
}

impl SearchPolicy {
    fn candidates(&self) -> impl Iterator<Item = u32> {
        let soft = self.soft_cap.min(self.hard_cap).max(1);
        let hard = self.hard_cap.max(1);
        let linear = 1..=soft;
        let doubling = std::iter::successors(Some(soft.saturating_mul(2)), move |&l| {
            l.checked_mul(2).filter(|&next| next <= hard)
        })
        .take_while(move |&l| l <= hard);
        linear.chain(doubling)
    }

    fn max_candidate(&self) -> u32 {
        self.candidates().last().unwrap_or(1)
    }
}

/// Settings for a construction run.
#[derive(Clone, Debug)]
pub struct ConstructConfig {
    pub policy: SearchPolicy,
    pub precision: BigRational,
    pub enum_cap: usize,
}

impl Default for ConstructConfig {
    fn default() -> Self {
        ConstructConfig {
            policy: SearchPolicy::default(),
            precision: default_precision(),
            enum_cap: DEFAULT_ENUM_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepOp {
    /// Clique substitution followed by an isolated vertex.
    CliqueThenIsolated,
    /// Clique substitution followed by a universal vertex.
    CliqueThenUniversal,
}

impl StepOp {
    pub fn as_str(self) -> &'static str {
        match self {
            StepOp::CliqueThenIsolated => "subclique_add_isolated",
            StepOp::CliqueThenUniversal => "subclique_add_universal",
        }
    }
}

/// Record of one certified construction step.
#[derive(Clone, Debug)]
pub struct StepRecord {
    pub index: usize,
    pub op: StepOp,
    pub l: u32,
    pub order: u64,
    pub degree: usize,
    pub decrease_intervals: usize,
    pub inflections: usize,
    pub wall_ms: u128,
}

/// Full record of a construction run: the seed graph's certified shape plus
/// one record per accepted step.
#[derive(Clone, Debug)]
pub struct ConstructionTrace {
    pub seed_expression: String,
    pub target_k: u32,
    pub seed_order: u64,
    pub seed_degree: usize,
    pub seed_decrease_intervals: usize,
    pub seed_inflections: usize,
    pub steps: Vec<StepRecord>,
}

impl ConstructionTrace {
    /// Certified interval count after the last completed step.
    pub fn certified_decrease_intervals(&self) -> usize {
        self.steps
            .last()
            .map(|s| s.decrease_intervals)
            .unwrap_or(self.seed_decrease_intervals)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "seed_expression": self.seed_expression,
            "k": self.target_k,
            "seed": {
                "order": self.seed_order,
                "degree": self.seed_degree,
                "decrease_intervals": self.seed_decrease_intervals,
                "inflections": self.seed_inflections,
            },
            "steps": self.steps.iter().map(|s| json!({
                "index": s.index,
                "op": s.op.as_str(),
                "l": s.l,
                "order": s.order,
                "degree": s.degree,
                "decrease_intervals": s.decrease_intervals,
                "inflections": s.inflections,
                "wall_ms": s.wall_ms,
            })).collect::<Vec<_>>(),
            "certified_decrease_intervals": self.certified_decrease_intervals(),
        })
    }
}

/// An accepted step: the extended expression, the clique size that was
/// certified, and the analysis that certified it.
#[derive(Clone, Debug)]
pub struct StepOutcome {
    pub expr: GraphExpr,
    pub l: u32,
    pub rel: ReliabilityPolynomial,
    pub report: ShapeReport,
}

fn kinds_alternating_from_max(kinds: &[ExtremumKind]) -> bool {
    kinds.iter().enumerate().all(|(i, k)| {
        *k == if i % 2 == 0 {
            ExtremumKind::Max
        } else {
            ExtremumKind::Min
        }
    })
}

/// Checks a candidate's report against the target: the child's extremum
/// kinds survive as a prefix with one new extremum of `appended` kind, and
/// the decrease count is as expected.
fn certifies(
    report: &ShapeReport,
    child_kinds: &[ExtremumKind],
    appended: ExtremumKind,
    expected_decrease: usize,
    boundary_decrease: bool,
) -> bool {
    let kinds = report.kinds();
    if kinds.len() != child_kinds.len() + 1 {
        return false;
    }
    if kinds[..child_kinds.len()] != *child_kinds || kinds[child_kinds.len()] != appended {
        return false;
    }
    if report.num_decrease_intervals() != expected_decrease {
        return false;
    }
    let last_reaches_boundary = report
        .decrease_intervals
        .last()
        .is_some_and(|d| matches!(&d.to, IntervalEnd::Boundary(b) if b == &BigRational::one()));
    last_reaches_boundary == boundary_decrease
}

struct StepPlan {
    op: StepOp,
    appended: ExtremumKind,
    child_connected: bool,
    child_last_kind: ExtremumKind,
    result_boundary_decrease: bool,
}

fn run_step(e: &GraphExpr, plan: StepPlan, config: &ConstructConfig) -> Result<StepOutcome> {
    let child = rel_algebra_with_cap(e, config.enum_cap)?;
    if child.connected() != plan.child_connected {
        return Err(Error::Precondition(format!(
            "{} requires a {} expression",
            plan.op.as_str(),
            if plan.child_connected {
                "connected"
            } else {
                "disconnected"
            }
        )));
    }
    let child_report = analyze(&child, &config.precision)?;
    let child_kinds = child_report.kinds();
    if child_kinds.is_empty()
        || !kinds_alternating_from_max(&child_kinds)
        || *child_kinds.last().unwrap() != plan.child_last_kind
    {
        return Err(Error::Precondition(format!(
            "{} requires extrema alternating max, min, ... ending in a {}; found {:?}",
            plan.op.as_str(),
            plan.child_last_kind.as_str(),
            child_kinds.iter().map(|k| k.as_str()).collect::<Vec<_>>()
        )));
    }
    let expected_decrease = child_report.num_decrease_intervals()
        + usize::from(plan.op == StepOp::CliqueThenIsolated);

    for l in config.policy.candidates() {
        let substituted = apply_subclique(&child, l)?;
        let candidate = match plan.op {
            StepOp::CliqueThenIsolated => apply_add_isolated(&substituted)?,
            StepOp::CliqueThenUniversal => apply_add_universal(&substituted)?,
        };
        let report = analyze(&candidate, &config.precision)?;
        if certifies(
            &report,
            &child_kinds,
            plan.appended,
            expected_decrease,
            plan.result_boundary_decrease,
        ) {
            let expr = match plan.op {
                StepOp::CliqueThenIsolated => e.clone().sub_clique(l)?.add_isolated(),
                StepOp::CliqueThenUniversal => e.clone().sub_clique(l)?.add_universal(),
            };
            return Ok(StepOutcome {
                expr,
                l,
                rel: candidate,
                report,
            });
        }
    }
    // exhausted: report what was certified before the search began
    Err(Error::SearchExhausted {
        op: plan.op.as_str().to_string(),
        step: 1,
        max_l: config.policy.max_candidate(),
        trace: Box::new(ConstructionTrace {
            seed_expression: e.to_dsl(),
            target_k: 0,
            seed_order: child.order(),
            seed_degree: child.poly().degree().unwrap_or(0),
            seed_decrease_intervals: child_report.num_decrease_intervals(),
            seed_inflections: child_report.num_inflections(),
            steps: Vec::new(),
        }),
    })
}

/// One application of the isolated-vertex round: finds the minimal accepted
/// clique size l and returns `AddIsolated(SubClique(e, l))` with its
/// certification. Requires a connected expression whose extrema alternate
/// max, min, ..., ending in a minimum.
pub fn step_isolated(e: &GraphExpr, config: &ConstructConfig) -> Result<StepOutcome> {
    run_step(
        e,
        StepPlan {
            op: StepOp::CliqueThenIsolated,
            appended: ExtremumKind::Max,
            child_connected: true,
            child_last_kind: ExtremumKind::Min,
            result_boundary_decrease: true,
        },
        config,
    )
}

/// One application of the universal-vertex round: finds the minimal accepted
/// clique size l and returns `AddUniversal(SubClique(e, l))` with its
/// certification. Requires a disconnected expression whose extrema alternate
/// max, min, ..., ending in a maximum.
pub fn step_universal(e: &GraphExpr, config: &ConstructConfig) -> Result<StepOutcome> {
    run_step(
        e,
        StepPlan {
            op: StepOp::CliqueThenUniversal,
            appended: ExtremumKind::Min,
            child_connected: false,
            child_last_kind: ExtremumKind::Max,
            result_boundary_decrease: false,
        },
        config,
    )
}

/// Runs one certified step and records it in the trace, converting a failed
/// search into a `SearchExhausted` error carrying the partial trace.
fn traced_step(
    e: &GraphExpr,
    op: StepOp,
    config: &ConstructConfig,
    trace: &mut ConstructionTrace,
) -> Result<StepOutcome> {
    let started = Instant::now();
    let outcome = match op {
        StepOp::CliqueThenIsolated => step_isolated(e, config),
        StepOp::CliqueThenUniversal => step_universal(e, config),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(Error::SearchExhausted { op, max_l, .. }) => {
            // swap in the pipeline's accumulated trace
            return Err(Error::SearchExhausted {
                op,
                step: trace.steps.len() + 1,
                max_l,
                trace: Box::new(trace.clone()),
            });
        }
        Err(e) => return Err(e),
    };
    trace.steps.push(StepRecord {
        index: trace.steps.len() + 1,
        op,
        l: outcome.l,
        order: outcome.rel.order(),
        degree: outcome.rel.poly().degree().unwrap_or(0),
        decrease_intervals: outcome.report.num_decrease_intervals(),
        inflections: outcome.report.num_inflections(),
        wall_ms: started.elapsed().as_millis(),
    });
    Ok(outcome)
}

/// Constructs an expression whose node reliability is certified to have at
/// least k maximal intervals of decrease in (0, 1) and to be connected.
/// k = 1 returns the path of order 5 unchanged; each further interval costs
/// one isolated-vertex step followed by one universal-vertex step.
pub fn construct_k_intervals(
    k: u32,
    config: &ConstructConfig,
) -> Result<(GraphExpr, ConstructionTrace)> {
    if k == 0 {
        return Err(Error::Domain(
            "the interval count k must be at least 1".into(),
        ));
    }
    let seed = GraphExpr::path(5)?;
    let rel = rel_algebra_with_cap(&seed, config.enum_cap)?;
    let report = analyze(&rel, &config.precision)?;
    let mut trace = ConstructionTrace {
        seed_expression: seed.to_dsl(),
        target_k: k,
        seed_order: rel.order(),
        seed_degree: rel.poly().degree().unwrap_or(0),
        seed_decrease_intervals: report.num_decrease_intervals(),
        seed_inflections: report.num_inflections(),
        steps: Vec::new(),
    };
    if trace.seed_decrease_intervals != 1 {
        return Err(Error::InvariantViolation(format!(
            "seed graph certified {} decrease intervals, expected 1",
            trace.seed_decrease_intervals
        )));
    }

    let mut expr = seed;
    let mut last: Option<StepOutcome> = None;
    for round in 2..=k {
        let iso = traced_step(&expr, StepOp::CliqueThenIsolated, config, &mut trace)?;
        expr = iso.expr.clone();
        let univ = traced_step(&expr, StepOp::CliqueThenUniversal, config, &mut trace)?;
        expr = univ.expr.clone();
        if univ.report.num_decrease_intervals() != round as usize {
            return Err(Error::InvariantViolation(format!(
                "round {round} certified {} decrease intervals, expected {round}",
                univ.report.num_decrease_intervals()
            )));
        }
        last = Some(univ);
    }

    if let Some(final_step) = &last {
        if !final_step.rel.connected() {
            return Err(Error::InvariantViolation(
                "final expression must be connected".into(),
            ));
        }
        if final_step.report.num_inflections() < k as usize {
            return Err(Error::InvariantViolation(format!(
                "final curve has {} inflections, expected at least {k}",
                final_step.report.num_inflections()
            )));
        }
    }
    Ok((expr, trace))
}
