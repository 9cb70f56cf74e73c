//! Numeric sample tables (CSV) for the two hyperbola families and for grid
//! intersection points.
//!
//! Sampling is exact until the final decimal rendering: the parameter runs
//! through rational values, the single irrational ingredient per row is
//! enclosed by interval square roots, and each printed coordinate is a
//! directed decimal of an exact rational. Residuals against the defining
//! equations stay within a few units of the last printed digit.

use num_traits::{One, Signed};

use crate::error::{CoreError, Result};
use crate::rational::{decimal_str, BigRational, Rounding};
use crate::tower::{FieldTower, TowerElement};

use super::diamond::{diamond_grid, CellOutcome, DiamondParams};

#[derive(Clone, Debug)]
pub enum PlotSpec {
    /// `(x - y)^2 - C^2 (x + y)^2 = C^2`, sampled along `u = x + y`.
    Hyperbola31 { c: BigRational, from: BigRational, to: BigRational, count: usize },
    /// `(x - y + 2R)^2 - C^2 (x + y)^2 = C^2`, the shifted standard form.
    Hyperbola32 {
        c: BigRational,
        rad: BigRational,
        from: BigRational,
        to: BigRational,
        count: usize,
    },
    /// The `(x1, x2)` coordinates of every realized cell of a grid.
    DiamondGrid(DiamondParams),
}

/// Render the samples as CSV (header `x,y`, or `x1,x2` for grids).
pub fn emit_plot_samples(spec: &PlotSpec, digits: u32) -> Result<String> {
    match spec {
        PlotSpec::Hyperbola31 { c, from, to, count } => {
            hyperbola_rows(c, None, from, to, *count, digits)
        }
        PlotSpec::Hyperbola32 { c, rad, from, to, count } => {
            hyperbola_rows(c, Some(rad), from, to, *count, digits)
        }
        PlotSpec::DiamondGrid(params) => grid_rows(params, digits),
    }
}

fn check_range(from: &BigRational, to: &BigRational, count: usize) -> Result<()> {
    if count < 2 {
        return Err(CoreError::InvalidParameter(format!(
            "sample count must be at least 2, got {count}"
        )));
    }
    if from >= to {
        return Err(CoreError::InvalidParameter(
            "empty feasible range: --from must be strictly below --to".into(),
        ));
    }
    Ok(())
}

fn hyperbola_rows(
    c: &BigRational,
    shift_rad: Option<&BigRational>,
    from: &BigRational,
    to: &BigRational,
    count: usize,
    digits: u32,
) -> Result<String> {
    if !c.is_positive() {
        return Err(CoreError::InvalidParameter("ratio C must be positive".into()));
    }
    check_range(from, to, count)?;
    let tower = FieldTower::new();
    let step = (to - from) / BigRational::from_integer((count as i64 - 1).into());
    let mut out = String::from("x,y\n");
    let two = BigRational::from_integer(2.into());
    for i in 0..count {
        let u = from + BigRational::from_integer((i as i64).into()) * &step;
        let one_plus_u2 = BigRational::one() + &u * &u;
        let w_iv = tower.numeric_sqrt_eval(&TowerElement::from_ratio(one_plus_u2), digits + 4)?;
        let w = w_iv.midpoint();
        // x - y = C*w (minus 2R for the shifted family); x + y = u
        let mut diff = c * &w;
        if let Some(rad) = shift_rad {
            diff -= rad * &two;
        }
        let x = (&u + &diff) / &two;
        let y = (&u - &diff) / &two;
        out.push_str(&decimal_str(&x, digits, Rounding::Floor));
        out.push(',');
        out.push_str(&decimal_str(&y, digits, Rounding::Floor));
        out.push('\n');
    }
    Ok(out)
}

fn grid_rows(params: &DiamondParams, digits: u32) -> Result<String> {
    let grid = diamond_grid(params)?;
    let mut out = String::from("x1,x2\n");
    let mut any = false;
    for cell in &grid.cells {
        if let CellOutcome::Realized(pair) = &cell.outcome {
            any = true;
            let iv1 = pair.tower.numeric_eval(pair.p1.x(), digits + 4);
            let iv2 = pair.tower.numeric_eval(pair.p2.x(), digits + 4);
            out.push_str(&decimal_str(&iv1.midpoint(), digits, Rounding::Floor));
            out.push(',');
            out.push_str(&decimal_str(&iv2.midpoint(), digits, Rounding::Floor));
            out.push('\n');
        }
    }
    if !any {
        return Err(CoreError::EmptyGrid);
    }
    Ok(out)
}
