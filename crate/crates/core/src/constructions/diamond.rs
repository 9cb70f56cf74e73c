//! Point pairs from conjugate factors, and grids of them.
//!
//! The trick: pick `d = |p + q*sqrt(R)|` and `f = r + t*sqrt(R)` with
//! `p*t + q*r = 0`, so that the product `d*f = |p*r + q*t*R|` is rational.
//! Placing two parabola points with separation `x2 - x1 = d` and coordinate
//! sum `x2 + x1 = s = sqrt(f^2 - 1)` makes the distance
//! `d * sqrt(1 + s^2) = d * f` rational by construction — even though the
//! coordinates themselves live two radicals deep. A grid walks `a` and `b`
//! through arithmetic progressions with `p = r = a`, `q = -t = -b`, and the
//! verifier answers the open question the construction raises: are points
//! from *different* cells at rational distance too?

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cliques::{adjacency_from_edges, max_clique};
use crate::error::{CoreError, Result};
use crate::expr::format_element;
use crate::interval::interval_decimal;
use crate::parabola::{
    classify_distance, lift_point, pairwise_matrix, rational_str, status_str, DistanceStatus,
    PPoint, PairwiseMatrix,
};
use crate::rational::{rational_sqrt, BigRational};
use crate::tower::{FieldTower, TowerElement};

/// Where a constructed pair came from: the conjugate factors and, for grid
/// cells, the cell indices.
#[derive(Clone, Debug)]
pub struct Provenance {
    pub p: BigRational,
    pub q: BigRational,
    pub r: BigRational,
    pub t: BigRational,
    pub rad: BigRational,
    pub cell: Option<(usize, usize)>,
}

/// A realized pair with its own tower, exact rational distance, and the
/// factors that produced it.
#[derive(Clone, Debug)]
pub struct ConstructedPair {
    pub tower: FieldTower,
    pub p1: PPoint,
    pub p2: PPoint,
    pub dist: BigRational,
    /// `|p + q*sqrt(R)|`
    pub d_abs: TowerElement,
    /// `r + t*sqrt(R)` — equals `sqrt(1 + s^2)`
    pub f: TowerElement,
    pub provenance: Provenance,
}

fn check_radicand(rad: &BigRational) -> Result<()> {
    if !rad.is_positive() {
        return Err(CoreError::NonPositiveRadicand);
    }
    if rational_sqrt(rad).is_some() {
        return Err(CoreError::SquareRadicand { value: rational_str(rad) });
    }
    Ok(())
}

/// Build the pair with separation `d = |p + q*sqrt(R)|` and
/// `sqrt(1 + (x1+x2)^2) = f = r + t*sqrt(R)`.
///
/// Requires the rationality condition `p*t + q*r = 0`, `f >= 1`, and
/// `d > 0`. Returns `Ok(None)` when the pair misses the half-parabola
/// (`s <= d`, i.e. `x1 <= 0`); the distance of a realized pair is
/// `|p*r + q*t*R|` exactly, re-verified through the classifier.
pub fn construct_pair(
    p: &BigRational,
    q: &BigRational,
    r: &BigRational,
    t: &BigRational,
    rad: &BigRational,
) -> Result<Option<ConstructedPair>> {
    construct_pair_with_cell(p, q, r, t, rad, None)
}

fn construct_pair_with_cell(
    p: &BigRational,
    q: &BigRational,
    r: &BigRational,
    t: &BigRational,
    rad: &BigRational,
    cell: Option<(usize, usize)>,
) -> Result<Option<ConstructedPair>> {
    check_radicand(rad)?;
    let condition = p * t + q * r;
    if !condition.is_zero() {
        return Err(CoreError::RationalityCondition { value: rational_str(&condition) });
    }
    let (tower, root) = FieldTower::new().adjoin_sqrt(&TowerElement::from_ratio(rad.clone()))?;
    let d_raw = tower.add(
        &TowerElement::from_ratio(p.clone()),
        &tower.scale(&root, q)?,
    )?;
    if d_raw.is_zero() {
        return Err(CoreError::ZeroSeparation);
    }
    let d_abs = tower.abs(&d_raw)?;
    let f = tower.add(
        &TowerElement::from_ratio(r.clone()),
        &tower.scale(&root, t)?,
    )?;
    if tower.compare(&f, &TowerElement::one())? == Ordering::Less {
        return Err(CoreError::FactorBelowOne { value: format_element(&tower, &f) });
    }
    let theta = tower.sub(&tower.mul(&f, &f)?, &TowerElement::one())?;
    // f = 1 means s = 0: the pair degenerates onto x1 = -x2, off the domain.
    if theta.is_zero() {
        return Ok(None);
    }
    let (tower, sigma) = tower.adjoin_sqrt(&theta)?;
    if tower.compare(&sigma, &d_abs)? != Ordering::Greater {
        return Ok(None); // x1 = (s - d)/2 <= 0: off the half-parabola
    }
    let half = TowerElement::from_ratio(BigRational::new(1.into(), 2.into()));
    let x1 = tower.mul(&tower.sub(&sigma, &d_abs)?, &half)?;
    let x2 = tower.mul(&tower.add(&sigma, &d_abs)?, &half)?;
    let p1 = lift_point(&tower, x1)?;
    let p2 = lift_point(&tower, x2)?;
    let dist = (p * r + q * t * rad).abs();
    let verdict = classify_distance(&tower, &p1, &p2)?;
    if verdict.status != DistanceStatus::Rational(dist.clone()) {
        return Err(CoreError::CrosscheckMismatch {
            x1: format_element(&tower, p1.x()),
            x2: format_element(&tower, p2.x()),
            tower_rational: matches!(verdict.status, DistanceStatus::Rational(_)),
            criterion_rational: true,
        });
    }
    Ok(Some(ConstructedPair {
        tower,
        p1,
        p2,
        dist,
        d_abs,
        f,
        provenance: Provenance {
            p: p.clone(),
            q: q.clone(),
            r: r.clone(),
            t: t.clone(),
            rad: rad.clone(),
            cell,
        },
    }))
}

/// Parameters of an N-by-N grid of conjugate-factor pairs.
#[derive(Clone, Debug)]
pub struct DiamondParams {
    pub rad: BigRational,
    pub a0: BigRational,
    pub b0: BigRational,
    pub step_a: BigRational,
    pub step_b: BigRational,
    pub n: usize,
}

impl DiamondParams {
    pub fn validated(
        rad: BigRational,
        a0: BigRational,
        b0: BigRational,
        step_a: BigRational,
        step_b: BigRational,
        n: usize,
    ) -> Result<Self> {
        check_radicand(&rad)?;
        if !step_a.is_positive() || !step_b.is_positive() {
            return Err(CoreError::InvalidParameter(format!(
                "grid steps must be positive, got step_a = {}, step_b = {}",
                rational_str(&step_a),
                rational_str(&step_b)
            )));
        }
        if n < 1 {
            return Err(CoreError::InvalidParameter("grid size must be at least 1".into()));
        }
        Ok(DiamondParams { rad, a0, b0, step_a, step_b, n })
    }
}

/// One grid cell: indices, the factor values, and the outcome.
#[derive(Clone, Debug)]
pub struct GridCell {
    pub n: usize,
    pub m: usize,
    pub a: BigRational,
    pub b: BigRational,
    pub outcome: CellOutcome,
}

#[derive(Clone, Debug)]
pub enum CellOutcome {
    Realized(ConstructedPair),
    Absent { reason: String },
}

#[derive(Clone, Debug)]
pub struct DiamondGrid {
    pub params: DiamondParams,
    /// row-major: n = 1..=N outer, m = 0..N-1 inner
    pub cells: Vec<GridCell>,
}

/// Build every cell `(n, m)` with `a = a0 + n*step_a`, `b = b0 + m*step_b`,
/// conjugate factors `d = |a - b*sqrt(R)|`, `f = a + b*sqrt(R)`, and
/// within-cell distance `|a^2 - b^2 R|`. Unrealizable cells are recorded
/// with their reason, never raised.
pub fn diamond_grid(params: &DiamondParams) -> Result<DiamondGrid> {
    let mut cells = Vec::with_capacity(params.n * params.n);
    for n in 1..=params.n {
        for m in 0..params.n {
            let a = &params.a0 + BigRational::from_integer(n.into()) * &params.step_a;
            let b = &params.b0 + BigRational::from_integer(m.into()) * &params.step_b;
            let outcome = match construct_pair_with_cell(&a, &(-b.clone()), &a, &b, &params.rad, Some((n, m))) {
                Ok(Some(pair)) => CellOutcome::Realized(pair),
                Ok(None) => CellOutcome::Absent {
                    reason: "separation at least coordinate sum (x1 <= 0)".into(),
                },
                Err(e) => CellOutcome::Absent { reason: e.to_string() },
            };
            cells.push(GridCell { n, m, a, b, outcome });
        }
    }
    Ok(DiamondGrid { params: params.clone(), cells })
}

/// Everything the verifier finds out about a set of constructed pairs.
#[derive(Clone, Debug)]
pub struct GridVerification {
    pub tower: FieldTower,
    /// distinct points, ascending by value
    pub points: Vec<PPoint>,
    /// for each input pair: indices into `points`
    pub pair_points: Vec<(usize, usize)>,
    pub matrix: PairwiseMatrix,
    pub rational_pairs: usize,
    pub max_clique: Vec<usize>,
    pub all_rational: bool,
    pub notes: Vec<String>,
}

/// Rebuild all pairs in one combined tower, deduplicate points exactly,
/// classify every unordered pair, and measure the largest pairwise-rational
/// subset. Every `Rational` verdict is additionally checked against a
/// 100-digit enclosure. Verdicts depend only on point values, so grid
/// traversal order cannot change them.
pub fn verify_pairs(pairs: &[&ConstructedPair], notes: Vec<String>) -> Result<GridVerification> {
    if pairs.is_empty() {
        return Err(CoreError::EmptyGrid);
    }
    let mut tower = FieldTower::new();
    let mut xs: Vec<TowerElement> = Vec::new();
    let mut pair_points = Vec::new();
    for pair in pairs {
        let pv = &pair.provenance;
        check_radicand(&pv.rad)?;
        let (t2, root) = tower.adjoin_sqrt(&TowerElement::from_ratio(pv.rad.clone()))?;
        tower = t2;
        let d_raw = tower.add(
            &TowerElement::from_ratio(pv.p.clone()),
            &tower.scale(&root, &pv.q)?,
        )?;
        let d_abs = tower.abs(&d_raw)?;
        let f = tower.add(
            &TowerElement::from_ratio(pv.r.clone()),
            &tower.scale(&root, &pv.t)?,
        )?;
        let theta = tower.sub(&tower.mul(&f, &f)?, &TowerElement::one())?;
        let (t3, sigma) = tower.adjoin_sqrt(&theta)?;
        tower = t3;
        let half = TowerElement::from_ratio(BigRational::new(1.into(), 2.into()));
        let x1 = tower.mul(&tower.sub(&sigma, &d_abs)?, &half)?;
        let x2 = tower.mul(&tower.add(&sigma, &d_abs)?, &half)?;
        let i1 = intern_point(&tower, &mut xs, x1)?;
        let i2 = intern_point(&tower, &mut xs, x2)?;
        pair_points.push((i1, i2));
    }
    // sort points ascending; remap pair indices
    let mut order: Vec<usize> = (0..xs.len()).collect();
    let mut sort_err = None;
    order.sort_by(|&i, &j| match tower.compare(&xs[i], &xs[j]) {
        Ok(o) => o,
        Err(e) => {
            sort_err = Some(e);
            Ordering::Equal
        }
    });
    if let Some(e) = sort_err {
        return Err(e);
    }
    let mut rank = vec![0usize; xs.len()];
    for (new_idx, &old_idx) in order.iter().enumerate() {
        rank[old_idx] = new_idx;
    }
    let xs: Vec<TowerElement> = order.into_iter().map(|i| xs[i].clone()).collect();
    let pair_points: Vec<(usize, usize)> =
        pair_points.into_iter().map(|(i, j)| (rank[i], rank[j])).collect();
    let points: Vec<PPoint> = xs
        .into_iter()
        .map(|x| lift_point(&tower, x))
        .collect::<Result<_>>()?;

    let (matrix, rational_pairs, clique, all_rational) = if points.len() >= 2 {
        let matrix = pairwise_matrix(&tower, &points)?;
        let mut edges = Vec::new();
        for e in &matrix.entries {
            if let DistanceStatus::Rational(value) = &e.verdict.status {
                // independent numeric audit at 100 digits
                let iv = tower.numeric_sqrt_eval(&e.verdict.dist_squared, 100)?;
                if !iv.contains(value) {
                    return Err(CoreError::CrosscheckMismatch {
                        x1: format_element(&tower, points[e.i].x()),
                        x2: format_element(&tower, points[e.j].x()),
                        tower_rational: true,
                        criterion_rational: false,
                    });
                }
                edges.push((e.i, e.j));
            }
        }
        let rational_pairs = edges.len();
        let adj = adjacency_from_edges(points.len(), &edges);
        let all_rational = matrix.all_rational;
        (Some(matrix), rational_pairs, max_clique(&adj), all_rational)
    } else {
        // a single realized pair always has two distinct points, so this
        // needs at least two input pairs collapsing onto one point — kept
        // total for robustness
        (None, 0, vec![0], true)
    };
    let matrix = match matrix {
        Some(m) => m,
        None => PairwiseMatrix { entries: Vec::new(), all_rational: true },
    };

    let mut notes = notes;
    notes.push(format!(
        "adjudication: all-pairwise-rational {} for this point set: {} of {} pairs rational; largest pairwise-rational subset has {} of {} points",
        if all_rational { "HOLDS" } else { "FAILS" },
        rational_pairs,
        matrix.entries.len(),
        clique.len(),
        points.len(),
    ));

    Ok(GridVerification {
        tower,
        points,
        pair_points,
        matrix,
        rational_pairs,
        max_clique: clique,
        all_rational,
        notes,
    })
}

fn intern_point(
    tower: &FieldTower,
    xs: &mut Vec<TowerElement>,
    x: TowerElement,
) -> Result<usize> {
    for (i, existing) in xs.iter().enumerate() {
        if tower.sub(existing, &x)?.is_zero() {
            return Ok(i);
        }
    }
    xs.push(x);
    Ok(xs.len() - 1)
}

/// Verify all realized cells of a grid; error if none realized.
pub fn verify_grid(grid: &DiamondGrid) -> Result<GridVerification> {
    let realized: Vec<&ConstructedPair> = grid
        .cells
        .iter()
        .filter_map(|c| match &c.outcome {
            CellOutcome::Realized(p) => Some(p),
            CellOutcome::Absent { .. } => None,
        })
        .collect();
    let notes = vec![
        "grid convention: cell (n, m) uses a = a0 + n*step_a for n = 1..=N and b = b0 + m*step_b for m = 0..N-1; the within-cell distance is |a^2 - R*b^2|".into(),
        "sign convention: separations and distances are magnitudes; the conjugate product is a^2 - R*b^2, which can be negative before taking absolute value".into(),
    ];
    verify_pairs(&realized, notes)
}

// ----------------------------------------------------------------------
// JSON rendering
// ----------------------------------------------------------------------

#[derive(Serialize, Debug)]
pub struct DiamondParamsJson {
    pub rad: String,
    pub a0: String,
    pub b0: String,
    pub step_a: String,
    pub step_b: String,
    pub n: usize,
}

#[derive(Serialize, Debug)]
pub struct GridCellJson {
    pub n: usize,
    pub m: usize,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dist: Option<String>,
}

#[derive(Serialize, Debug)]
pub struct GridPointJson {
    pub x: String,
    pub numeric50: [String; 2],
}

#[derive(Serialize, Debug)]
pub struct GridPairJson {
    pub i: usize,
    pub j: usize,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

#[derive(Serialize, Debug)]
pub struct GridReport {
    pub params: DiamondParamsJson,
    pub cells: Vec<GridCellJson>,
    pub points: Vec<GridPointJson>,
    pub pairs: Vec<GridPairJson>,
    pub max_rational_clique: Vec<usize>,
    pub all_rational: bool,
    pub notes: Vec<String>,
}

/// Assemble the full JSON report for a grid run. `digits` controls the point
/// enclosures (the field name `numeric50` is fixed).
pub fn grid_report(grid: &DiamondGrid, verification: &GridVerification, digits: u32) -> GridReport {
    let params = DiamondParamsJson {
        rad: rational_str(&grid.params.rad),
        a0: rational_str(&grid.params.a0),
        b0: rational_str(&grid.params.b0),
        step_a: rational_str(&grid.params.step_a),
        step_b: rational_str(&grid.params.step_b),
        n: grid.params.n,
    };
    let tower = &verification.tower;
    let mut realized_idx = 0usize;
    let cells = grid
        .cells
        .iter()
        .map(|cell| match &cell.outcome {
            CellOutcome::Realized(pair) => {
                let (i1, i2) = verification.pair_points[realized_idx];
                realized_idx += 1;
                GridCellJson {
                    n: cell.n,
                    m: cell.m,
                    status: "realized",
                    reason: None,
                    x1: Some(format_element(tower, verification.points[i1].x())),
                    x2: Some(format_element(tower, verification.points[i2].x())),
                    dist: Some(rational_str(&pair.dist)),
                }
            }
            CellOutcome::Absent { reason } => GridCellJson {
                n: cell.n,
                m: cell.m,
                status: "absent",
                reason: Some(reason.clone()),
                x1: None,
                x2: None,
                dist: None,
            },
        })
        .collect();
    let points = verification
        .points
        .iter()
        .map(|p| {
            let iv = tower.numeric_eval(p.x(), digits);
            let (lo, hi) = interval_decimal(&iv, digits);
            GridPointJson { x: format_element(tower, p.x()), numeric50: [lo, hi] }
        })
        .collect();
    let pairs = verification
        .matrix
        .entries
        .iter()
        .map(|e| GridPairJson {
            i: e.i,
            j: e.j,
            status: status_str(&e.verdict.status),
            value: match &e.verdict.status {
                DistanceStatus::Rational(r) => Some(rational_str(r)),
                DistanceStatus::Irrational => None,
            },
        })
        .collect();
    GridReport {
        params,
        cells,
        points,
        pairs,
        max_rational_clique: verification.max_clique.clone(),
        all_rational: verification.all_rational,
        notes: verification.notes.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn worked_params() -> DiamondParams {
        DiamondParams::validated(rat(5, 1), rat(7, 1), rat(1, 1), rat(1, 1), rat(1, 1), 3)
            .unwrap()
    }

    #[test]
    fn worked_example_pair() {
        // p = 8, q = -1, r = 8, t = 1, R = 5: distance (8-sqrt(5))(8+sqrt(5)) = 59
        let pair = construct_pair(&rat(8, 1), &rat(-1, 1), &rat(8, 1), &rat(1, 1), &rat(5, 1))
            .unwrap()
            .expect("the worked example is realizable");
        assert_eq!(pair.dist, rat(59, 1));
        // x1 = (sqrt(68+16*sqrt(5)) - (8-sqrt(5)))/2 ~ 2.2115, x2 ~ 7.9755
        let iv1 = pair.tower.numeric_eval(pair.p1.x(), 8);
        assert!(iv1.lo > rat(22115, 10000) && iv1.hi < rat(22116, 10000));
        let iv2 = pair.tower.numeric_eval(pair.p2.x(), 8);
        assert!(iv2.lo > rat(79755, 10000) && iv2.hi < rat(79756, 10000));
    }

    #[test]
    fn sign_flipped_variant_is_absent() {
        // p = 8, q = 1, r = 8, t = -1: d = 8+sqrt(5) exceeds s = sqrt(68-16*sqrt(5))
        let out = construct_pair(&rat(8, 1), &rat(1, 1), &rat(8, 1), &rat(-1, 1), &rat(5, 1))
            .unwrap();
        assert!(out.is_none());
    }

    #[test]
    fn rational_special_case_absent() {
        // p = 2, q = 0, r = 2, t = 0: s = sqrt(3) < d = 2
        let out = construct_pair(&rat(2, 1), &rat(0, 1), &rat(2, 1), &rat(0, 1), &rat(5, 1))
            .unwrap();
        assert!(out.is_none());
    }

    #[test]
    fn condition_violation_is_an_error() {
        let err = construct_pair(&rat(1, 1), &rat(1, 1), &rat(1, 1), &rat(1, 1), &rat(5, 1))
            .unwrap_err();
        assert!(matches!(err, CoreError::RationalityCondition { .. }));
    }

    #[test]
    fn factor_below_one_is_an_error() {
        // f = -8 + sqrt(5) < 1
        let err = construct_pair(&rat(8, 1), &rat(1, 1), &rat(-8, 1), &rat(1, 1), &rat(5, 1))
            .unwrap_err();
        assert!(matches!(err, CoreError::FactorBelowOne { .. }));
    }

    #[test]
    fn degenerate_factor_one_is_absent() {
        // f = 1 exactly: s = 0
        let out = construct_pair(&rat(1, 2), &rat(0, 1), &rat(1, 1), &rat(0, 1), &rat(5, 1))
            .unwrap();
        assert!(out.is_none());
    }

    #[test]
    fn zero_separation_is_an_error() {
        let err = construct_pair(&rat(0, 1), &rat(0, 1), &rat(2, 1), &rat(0, 1), &rat(5, 1))
            .unwrap_err();
        assert!(matches!(err, CoreError::ZeroSeparation));
    }

    #[test]
    fn square_radicand_rejected() {
        let err = construct_pair(&rat(8, 1), &rat(-1, 1), &rat(8, 1), &rat(1, 1), &rat(4, 1))
            .unwrap_err();
        assert!(matches!(err, CoreError::SquareRadicand { .. }));
        assert!(DiamondParams::validated(
            rat(4, 1),
            rat(7, 1),
            rat(1, 1),
            rat(1, 1),
            rat(1, 1),
            3
        )
        .is_err());
    }

    #[test]
    fn grid_distances_match_conjugate_products() {
        let grid = diamond_grid(&worked_params()).unwrap();
        assert_eq!(grid.cells.len(), 9);
        for cell in &grid.cells {
            let expected = (&cell.a * &cell.a - rat(5, 1) * &cell.b * &cell.b).abs();
            match &cell.outcome {
                CellOutcome::Realized(pair) => assert_eq!(pair.dist, expected, "cell {:?}", (cell.n, cell.m)),
                CellOutcome::Absent { reason } => {
                    panic!("cell {:?} unexpectedly absent: {reason}", (cell.n, cell.m))
                }
            }
        }
        // diagonal distances 59, 61, 55
        let diag: Vec<BigRational> = grid
            .cells
            .iter()
            .filter(|c| c.m + 1 == c.n)
            .map(|c| match &c.outcome {
                CellOutcome::Realized(p) => p.dist.clone(),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(diag, vec![rat(59, 1), rat(61, 1), rat(55, 1)]);
    }

    #[test]
    fn single_cell_grid_matches_direct_construction() {
        let params =
            DiamondParams::validated(rat(5, 1), rat(7, 1), rat(1, 1), rat(1, 1), rat(1, 1), 1)
                .unwrap();
        let grid = diamond_grid(&params).unwrap();
        assert_eq!(grid.cells.len(), 1);
        let direct = construct_pair(&rat(8, 1), &rat(-1, 1), &rat(8, 1), &rat(1, 1), &rat(5, 1))
            .unwrap()
            .unwrap();
        match &grid.cells[0].outcome {
            CellOutcome::Realized(pair) => {
                assert_eq!(pair.dist, direct.dist);
                assert_eq!(pair.p1.x(), direct.p1.x());
                assert_eq!(pair.p2.x(), direct.p2.x());
            }
            _ => panic!("single cell must realize"),
        }
    }

    #[test]
    fn verify_single_pair() {
        let pair = construct_pair(&rat(8, 1), &rat(-1, 1), &rat(8, 1), &rat(1, 1), &rat(5, 1))
            .unwrap()
            .unwrap();
        let v = verify_pairs(&[&pair], Vec::new()).unwrap();
        assert_eq!(v.points.len(), 2);
        assert_eq!(v.matrix.entries.len(), 1);
        assert!(v.all_rational);
        assert_eq!(v.max_clique, vec![0, 1]);
        assert_eq!(v.rational_pairs, 1);
    }

    #[test]
    fn dedup_contract_shared_coordinate() {
        // two rational-collapse pairs sharing the coordinate 89/210: the
        // derived three-point set, reassembled from conjugate-factor data
        let pair_a = construct_pair(&rat(41, 420), &rat(0, 1), &rat(5, 4), &rat(0, 1), &rat(5, 1))
            .unwrap()
            .expect("pair A realizable");
        let pair_b = construct_pair(&rat(17, 84), &rat(0, 1), &rat(29, 20), &rat(0, 1), &rat(5, 1))
            .unwrap()
            .expect("pair B realizable");
        assert_eq!(pair_a.dist, rat(41, 336));
        assert_eq!(pair_b.dist, rat(493, 1680));
        let v = verify_pairs(&[&pair_a, &pair_b], Vec::new()).unwrap();
        assert_eq!(v.points.len(), 3, "shared point must deduplicate");
        let xs: Vec<_> = v.points.iter().map(|p| p.x().as_rational().cloned().unwrap()).collect();
        assert_eq!(xs, vec![rat(137, 420), rat(89, 210), rat(263, 420)]);
        assert!(v.all_rational);
        assert_eq!(v.max_clique, vec![0, 1, 2]);
    }

    #[test]
    fn verify_empty_grid_is_an_error() {
        assert!(matches!(verify_pairs(&[], Vec::new()), Err(CoreError::EmptyGrid)));
    }

    #[test]
    fn verdicts_invariant_under_traversal_order() {
        let grid = diamond_grid(&worked_params()).unwrap();
        let realized: Vec<&ConstructedPair> = grid
            .cells
            .iter()
            .filter_map(|c| match &c.outcome {
                CellOutcome::Realized(p) => Some(p),
                _ => None,
            })
            .collect();
        let forward = verify_pairs(&realized, Vec::new()).unwrap();
        let mut reversed = realized.clone();
        reversed.reverse();
        let backward = verify_pairs(&reversed, Vec::new()).unwrap();
        assert_eq!(forward.points.len(), backward.points.len());
        assert_eq!(forward.all_rational, backward.all_rational);
        assert_eq!(forward.rational_pairs, backward.rational_pairs);
        assert_eq!(forward.max_clique.len(), backward.max_clique.len());
        // identical verdicts pair-by-pair (points sort to the same order)
        let statuses = |v: &GridVerification| {
            v.matrix
                .entries
                .iter()
                .map(|e| (e.i, e.j, match &e.verdict.status {
                    DistanceStatus::Rational(r) => Some(r.clone()),
                    DistanceStatus::Irrational => None,
                }))
                .collect::<Vec<_>>()
        };
        assert_eq!(statuses(&forward), statuses(&backward));
    }

    #[test]
    fn worked_grid_full_verification() {
        let grid = diamond_grid(&worked_params()).unwrap();
        let v = verify_grid(&grid).unwrap();
        assert!(v.points.len() >= 2);
        // within-cell pairs must all be rational
        assert_eq!(v.pair_points.len(), 9);
        for (k, &(i, j)) in v.pair_points.iter().enumerate() {
            let (lo, hi) = (i.min(j), i.max(j));
            let entry = v
                .matrix
                .entries
                .iter()
                .find(|e| (e.i, e.j) == (lo, hi))
                .unwrap_or_else(|| panic!("pair {k} missing from matrix"));
            assert!(
                matches!(entry.verdict.status, DistanceStatus::Rational(_)),
                "within-cell pair {k} must be rational"
            );
        }
        // the report records the adjudication either way
        assert!(v.notes.iter().any(|n| n.contains("adjudication")));
    }

    #[test]
    fn grid_report_serializes() {
        let params =
            DiamondParams::validated(rat(5, 1), rat(7, 1), rat(1, 1), rat(1, 1), rat(1, 1), 1)
                .unwrap();
        let grid = diamond_grid(&params).unwrap();
        let v = verify_grid(&grid).unwrap();
        let report = grid_report(&grid, &v, 12);
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"max_rational_clique\":[0,1]"));
        assert!(json.contains("\"dist\":\"59\""));
        assert!(json.contains("\"all_rational\":true"));
    }
}
