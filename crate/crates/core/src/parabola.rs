//! Points on the half-parabola `y = x^2`, `x > 0`, and the exact
//! rational-distance verdict.
//!
//! The squared distance between two points factors as
//! `(x2 - x1)^2 * (1 + (x1 + x2)^2)`, so it always lies in the points'
//! tower even when the distance itself does not. A distance is rational iff
//! its square is a rational perfect square — both directions hold for
//! nonnegative reals — which turns classification into a decision procedure
//! rather than a numeric heuristic.

use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::expr::format_element;
use crate::interval::{interval_decimal, RatInterval};
use crate::rational::{rational_sqrt, BigRational};
use crate::tower::{FieldTower, TowerElement};

/// Fixed evaluation precision for verdict enclosures, in decimal digits.
pub const VERDICT_DIGITS: u32 = 50;

/// A point `(x, x^2)` with `x > 0`; the ordinate is implied, never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PPoint {
    x: TowerElement,
}

impl PPoint {
    pub fn x(&self) -> &TowerElement {
        &self.x
    }

    /// The implied ordinate `x^2`.
    pub fn y(&self, tower: &FieldTower) -> Result<TowerElement> {
        tower.mul(&self.x, &self.x)
    }
}

/// Admit `x` as a parabola point iff `x > 0`, decided exactly.
pub fn lift_point(tower: &FieldTower, x: TowerElement) -> Result<PPoint> {
    if tower.sign(&x)? != std::cmp::Ordering::Greater {
        let value = format_element(tower, &x);
        return Err(CoreError::NonPositivePoint { value });
    }
    Ok(PPoint { x })
}

/// `(x2 - x1)^2 + (x2^2 - x1^2)^2`, computed literally; coincident points
/// give zero. The factored form is [`factored_parts`], and their equality is
/// an identity under test, not an assumption.
pub fn distance_squared(tower: &FieldTower, p: &PPoint, q: &PPoint) -> Result<TowerElement> {
    let dx = tower.sub(&q.x, &p.x)?;
    let dy = tower.sub(&q.y(tower)?, &p.y(tower)?)?;
    let dx2 = tower.mul(&dx, &dx)?;
    let dy2 = tower.mul(&dy, &dy)?;
    tower.add(&dx2, &dy2)
}

/// The factorization `|x2 - x1|` and `1 + (x1 + x2)^2`; their product with
/// the first squared equals [`distance_squared`] exactly.
pub fn factored_parts(
    tower: &FieldTower,
    p: &PPoint,
    q: &PPoint,
) -> Result<(TowerElement, TowerElement)> {
    let dx = tower.sub(&q.x, &p.x)?;
    if dx.is_zero() {
        return Err(CoreError::CoincidentPoints);
    }
    let d_abs = tower.abs(&dx)?;
    let s = tower.add(&p.x, &q.x)?;
    let s_sq = tower.mul(&s, &s)?;
    let one_plus_s_sq = tower.add(&TowerElement::one(), &s_sq)?;
    Ok((d_abs, one_plus_s_sq))
}

/// Outcome of the rational-distance decision.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DistanceStatus {
    Rational(BigRational),
    Irrational,
}

/// Exact verdict plus a certified 50-digit enclosure of the distance.
#[derive(Clone, Debug)]
pub struct DistanceVerdict {
    pub status: DistanceStatus,
    pub dist_squared: TowerElement,
    pub numeric: RatInterval,
}

/// Decide whether the distance between `p` and `q` is rational.
///
/// `Rational(r)` iff the squared distance is a rational perfect square with
/// root `r >= 0`; everything else — rational nonsquare or irrational squared
/// distance — is `Irrational`.
pub fn classify_distance(tower: &FieldTower, p: &PPoint, q: &PPoint) -> Result<DistanceVerdict> {
    let dist_squared = distance_squared(tower, p, q)?;
    let status = match FieldTower::is_rational(&dist_squared) {
        Some(d2) => match rational_sqrt(&d2) {
            Some(r) => DistanceStatus::Rational(r),
            None => DistanceStatus::Irrational,
        },
        None => DistanceStatus::Irrational,
    };
    let numeric = tower.numeric_sqrt_eval(&dist_squared, VERDICT_DIGITS)?;
    Ok(DistanceVerdict { status, dist_squared, numeric })
}

/// One upper-triangle entry of the pairwise verdict matrix.
#[derive(Clone, Debug)]
pub struct PairVerdict {
    pub i: usize,
    pub j: usize,
    pub verdict: DistanceVerdict,
}

/// All unordered-pair verdicts plus the aggregate flag.
#[derive(Clone, Debug)]
pub struct PairwiseMatrix {
    pub entries: Vec<PairVerdict>,
    pub all_rational: bool,
}

/// Classify every unordered pair of `points` (diagonal excluded).
/// Duplicate coordinates are an error naming the offending indices.
pub fn pairwise_matrix(tower: &FieldTower, points: &[PPoint]) -> Result<PairwiseMatrix> {
    if points.len() < 2 {
        return Err(CoreError::InvalidParameter(
            "pairwise matrix needs at least 2 points".into(),
        ));
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if tower.sub(&points[i].x, &points[j].x)?.is_zero() {
                return Err(CoreError::DuplicatePoints { i, j });
            }
        }
    }
    let mut entries = Vec::new();
    let mut all_rational = true;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let verdict = classify_distance(tower, &points[i], &points[j])?;
            if matches!(verdict.status, DistanceStatus::Irrational) {
                all_rational = false;
            }
            entries.push(PairVerdict { i, j, verdict });
        }
    }
    Ok(PairwiseMatrix { entries, all_rational })
}

// ----------------------------------------------------------------------
// JSON rendering
// ----------------------------------------------------------------------

#[derive(Serialize, Debug)]
pub struct PointJson {
    pub x: String,
    pub numeric50: [String; 2],
}

#[derive(Serialize, Debug)]
pub struct MatrixEntryJson {
    pub i: usize,
    pub j: usize,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    pub numeric50: [String; 2],
}

#[derive(Serialize, Debug)]
pub struct MatrixReport {
    pub points: Vec<PointJson>,
    pub matrix: Vec<MatrixEntryJson>,
    pub all_rational: bool,
}

pub fn status_str(status: &DistanceStatus) -> &'static str {
    match status {
        DistanceStatus::Rational(_) => "rational",
        DistanceStatus::Irrational => "irrational",
    }
}

pub fn rational_str(q: &BigRational) -> String {
    if q.denom() == &num_bigint::BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Render points and pairwise verdicts as the stable JSON report. `digits`
/// controls enclosure precision; the `numeric50` field name is part of the
/// format and does not vary with it.
pub fn matrix_report(
    tower: &FieldTower,
    points: &[PPoint],
    digits: u32,
) -> Result<MatrixReport> {
    let matrix = pairwise_matrix(tower, points)?;
    let point_rows = points
        .iter()
        .map(|p| {
            let iv = tower.numeric_eval(p.x(), digits);
            let (lo, hi) = interval_decimal(&iv, digits);
            PointJson { x: format_element(tower, p.x()), numeric50: [lo, hi] }
        })
        .collect();
    let entries = matrix
        .entries
        .iter()
        .map(|e| {
            let iv = tower.numeric_sqrt_eval(&e.verdict.dist_squared, digits)?;
            let (lo, hi) = interval_decimal(&iv, digits);
            Ok(MatrixEntryJson {
                i: e.i,
                j: e.j,
                status: status_str(&e.verdict.status),
                value: match &e.verdict.status {
                    DistanceStatus::Rational(r) => Some(rational_str(r)),
                    DistanceStatus::Irrational => None,
                },
                numeric50: [lo, hi],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MatrixReport { points: point_rows, matrix: entries, all_rational: matrix.all_rational })
}
