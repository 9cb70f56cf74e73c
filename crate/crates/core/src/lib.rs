//! Exact arithmetic over iterated real quadratic extensions, and the number
//! theory of rational-distance point sets on the half-parabola `y = x^2`,
//! `x > 0`.
//!
//! The crate is organized around a single exact kernel: [`FieldTower`] holds
//! a tower of quadratic extensions of the rationals and [`TowerElement`]
//! values within it, with decidable rationality, square detection, sign
//! determination, and certified interval evaluation. On top of that sit the
//! parabola distance classifier, Pythagorean-fraction machinery, the
//! hyperbola/diamond-grid constructions, and a bounded search oracle for
//! rational-distance cliques.

pub mod cliques;
pub mod constructions;
pub mod error;
pub mod expr;
pub mod interval;
pub mod parabola;
pub mod pythagorean;
pub mod rational;
pub mod sample;
pub mod search;
pub mod tower;

pub use error::{CoreError, Result};
pub use interval::RatInterval;
pub use rational::{rational_sqrt, BigRational, Rounding};
pub use tower::{FieldOp, FieldTower, TowerElement, DEFAULT_BIT_CAP};
