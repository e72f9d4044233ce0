//! Certified shape analysis of a reliability curve on the open interval
//! (0, 1): local extrema, maximal intervals of decrease, and inflection
//! points, each located by an exact isolating interval.
//!
//! Only sign-change roots of the relevant derivative count: a root where the
//! derivative touches zero without changing sign is a plateau, not an
//! extremum, and creates no decrease interval. Signs are read off by exact
//! evaluation at the rational midpoints between consecutive enclosures.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::reliability::ReliabilityPolynomial;
use crate::sturm::{isolate_roots, IsolatingInterval};
use num::{BigInt, BigRational, One, Zero};
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtremumKind {
    Max,
    Min,
}

impl ExtremumKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ExtremumKind::Max => "max",
            ExtremumKind::Min => "min",
        }
    }
}

/// A certified local extremum: an isolating interval for the critical point
/// and its classification.
#[derive(Clone, Debug, PartialEq)]
pub struct Extremum {
    pub interval: IsolatingInterval,
    pub kind: ExtremumKind,
}

/// One side of a decrease interval: either a certified critical enclosure or
/// a boundary of (0, 1). The right boundary appears when the curve is still
/// falling as p reaches 1 (disconnected graphs, where R(1) = 0).
#[derive(Clone, Debug, PartialEq)]
pub enum IntervalEnd {
    Boundary(BigRational),
    Enclosure(IsolatingInterval),
}

impl IntervalEnd {
    fn to_json(&self) -> serde_json::Value {
        match self {
            IntervalEnd::Boundary(b) => json!({ "boundary": b.to_string() }),
            IntervalEnd::Enclosure(i) => interval_json(i),
        }
    }
}

/// A maximal interval on which the curve is strictly decreasing.
#[derive(Clone, Debug, PartialEq)]
pub struct DecreaseInterval {
    pub from: IntervalEnd,
    pub to: IntervalEnd,
}

/// The full certified shape of a reliability curve on (0, 1).
#[derive(Clone, Debug, PartialEq)]
pub struct ShapeReport {
    pub extrema: Vec<Extremum>,
    pub decrease_intervals: Vec<DecreaseInterval>,
    pub inflections: Vec<IsolatingInterval>,
}

impl ShapeReport {
    pub fn num_extrema(&self) -> usize {
        self.extrema.len()
    }

    pub fn num_decrease_intervals(&self) -> usize {
        self.decrease_intervals.len()
    }

    pub fn num_inflections(&self) -> usize {
        self.inflections.len()
    }

    /// Kinds of the extrema, left to right.
    pub fn kinds(&self) -> Vec<ExtremumKind> {
        self.extrema.iter().map(|e| e.kind).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "extrema": self.extrema.iter().map(|e| {
                json!({
                    "lo": e.interval.lo().to_string(),
                    "hi": e.interval.hi().to_string(),
                    "kind": e.kind.as_str(),
                })
            }).collect::<Vec<_>>(),
            "decrease_intervals": self.decrease_intervals.iter().map(|d| {
                json!({ "from": d.from.to_json(), "to": d.to.to_json() })
            }).collect::<Vec<_>>(),
            "inflections": self.inflections.iter().map(interval_json).collect::<Vec<_>>(),
            "counts": {
                "extrema": self.num_extrema(),
                "decrease_intervals": self.num_decrease_intervals(),
                "inflections": self.num_inflections(),
            },
        })
    }
}

fn interval_json(i: &IsolatingInterval) -> serde_json::Value {
    json!({ "lo": i.lo().to_string(), "hi": i.hi().to_string() })
}

fn half(x: BigRational) -> BigRational {
    x / BigRational::from_integer(BigInt::from(2))
}

/// Signs of `d` on the segments cut out of (0, 1) by the root enclosures:
/// one sign per segment, each read at the exact midpoint of the gap. The
/// segments carry no roots of `d`, so every sign is nonzero.
fn segment_signs(d: &Polynomial, roots: &[IsolatingInterval]) -> Vec<i32> {
    let zero = BigRational::zero();
    let one = BigRational::one();
    let mut points = Vec::with_capacity(roots.len() + 1);
    match (roots.first(), roots.last()) {
        (Some(first), Some(last)) => {
            points.push(half(&zero + first.lo()));
            for w in roots.windows(2) {
                points.push(half(w[0].hi() + w[1].lo()));
            }
            points.push(half(last.hi() + &one));
        }
        _ => points.push(half(&zero + &one)),
    }
    points
        .iter()
        .map(|t| {
            let s = d.sign_at(t);
            debug_assert!(s != 0, "segment sample hit a root at {t}");
            s
        })
        .collect()
}

/// Isolates the roots of the derivative and reads the sign pattern between
/// them. Errors on constant polynomials.
fn derivative_analysis(
    r: &ReliabilityPolynomial,
    precision: &BigRational,
) -> Result<(Vec<IsolatingInterval>, Vec<i32>)> {
    match r.poly().degree() {
        None | Some(0) => Err(Error::DegenerateInput(
            "shape analysis requires a nonconstant polynomial".into(),
        )),
        Some(_) => {
            let d = r.poly().derivative();
            let roots = isolate_roots(&d, precision)?;
            let signs = segment_signs(&d, &roots);
            Ok((roots, signs))
        }
    }
}

fn classify(roots: Vec<IsolatingInterval>, signs: &[i32]) -> Result<Vec<Extremum>> {
    let mut out = Vec::new();
    for (i, interval) in roots.into_iter().enumerate() {
        let (before, after) = (signs[i], signs[i + 1]);
        if before == after {
            continue; // even multiplicity: a plateau, not an extremum
        }
        let kind = if before > 0 {
            ExtremumKind::Max
        } else {
            ExtremumKind::Min
        };
        out.push(Extremum { interval, kind });
    }
    for (i, pair) in out.windows(2).enumerate() {
        if pair[0].kind == pair[1].kind {
            return Err(Error::InvariantViolation(format!(
                "extrema {i} and {} do not alternate",
                i + 1
            )));
        }
    }
    if let Some(first) = out.first() {
        if first.kind != ExtremumKind::Max {
            return Err(Error::InvariantViolation(
                "reliability curves rise from R(0) = 0, so the first extremum must be a maximum"
                    .into(),
            ));
        }
    }
    Ok(out)
}

/// Local extrema of the curve in (0, 1), ordered left to right, alternating
/// max, min, max, ...
pub fn extrema(r: &ReliabilityPolynomial, precision: &BigRational) -> Result<Vec<Extremum>> {
    let (roots, signs) = derivative_analysis(r, precision)?;
    classify(roots, &signs)
}

/// Maximal intervals of decrease in (0, 1): runs where the derivative is
/// negative, bounded by critical enclosures or by the interval boundary.
pub fn decrease_intervals(
    r: &ReliabilityPolynomial,
    precision: &BigRational,
) -> Result<Vec<DecreaseInterval>> {
    let (roots, signs) = derivative_analysis(r, precision)?;
    Ok(decrease_from_signs(&roots, &signs))
}

fn decrease_from_signs(roots: &[IsolatingInterval], signs: &[i32]) -> Vec<DecreaseInterval> {
    let m = roots.len();
    let mut out = Vec::new();
    let mut run_start: Option<usize> = None;
    for (i, &s) in signs.iter().enumerate() {
        if s < 0 {
            run_start.get_or_insert(i);
        }
        let run_ends = s > 0 || i == m;
        if run_ends {
            if let Some(a) = run_start.take() {
                let b = if s > 0 { i - 1 } else { i };
                if b < a {
                    continue;
                }
                let from = if a == 0 {
                    IntervalEnd::Boundary(BigRational::zero())
                } else {
                    IntervalEnd::Enclosure(roots[a - 1].clone())
                };
                let to = if b == m {
                    IntervalEnd::Boundary(BigRational::one())
                } else {
                    IntervalEnd::Enclosure(roots[b].clone())
                };
                out.push(DecreaseInterval { from, to });
            }
        }
    }
    out
}

/// True inflection points: roots of the second derivative in (0, 1) where
/// it changes sign.
pub fn inflection_points(
    r: &ReliabilityPolynomial,
    precision: &BigRational,
) -> Result<Vec<IsolatingInterval>> {
    if r.poly().degree().is_none_or(|d| d == 0) {
        return Err(Error::DegenerateInput(
            "shape analysis requires a nonconstant polynomial".into(),
        ));
    }
    let d2 = r.poly().derivative().derivative();
    if d2.is_zero() {
        return Ok(Vec::new());
    }
    let roots = isolate_roots(&d2, precision)?;
    let signs = segment_signs(&d2, &roots);
    Ok(roots
        .into_iter()
        .enumerate()
        .filter(|(i, _)| signs[*i] != signs[*i + 1])
        .map(|(_, r)| r)
        .collect())
}

/// Runs all three analyses and checks the report's consistency: extrema
/// alternate, and for connected graphs the inflection count is at least the
/// decrease-interval count.
pub fn analyze(r: &ReliabilityPolynomial, precision: &BigRational) -> Result<ShapeReport> {
    let (roots, signs) = derivative_analysis(r, precision)?;
    let extrema = classify(roots.clone(), &signs)?;
    let decrease_intervals = decrease_from_signs(&roots, &signs);
    let inflections = inflection_points(r, precision)?;
    let report = ShapeReport {
        extrema,
        decrease_intervals,
        inflections,
    };
    if r.connected() && report.num_inflections() < report.num_decrease_intervals() {
        return Err(Error::InvariantViolation(format!(
            "connected curve reports {} decrease intervals but only {} inflections",
            report.num_decrease_intervals(),
            report.num_inflections()
        )));
    }
    Ok(report)
}
