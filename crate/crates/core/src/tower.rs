//! Iterated real quadratic extensions Q(sqrt(t1), ..., sqrt(tk)) with exact
//! arithmetic, decidable rationality, square detection, and sign
//! determination.
//!
//! Elements are nested `lo + hi*sqrt(t_level)` trees over arbitrary-precision
//! rationals. Every radicand adjoined to a [`FieldTower`] is strictly
//! positive and is not a square in the field below it, which makes
//! representations unique: an element is rational if and only if it
//! canonicalizes to a bare rational, and a nonzero canonical form always has
//! a nonzero value. Sign determination exploits this with an exact zero test
//! followed by refinable interval evaluation.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{CoreError, Result};
use crate::interval::RatInterval;
use crate::rational::{pow10_inv, rational_bits, rational_sqrt, BigRational};

/// Default guard against runaway coefficient growth, in bits.
pub const DEFAULT_BIT_CAP: u64 = 1_000_000;

/// An element of a quadratic tower: either a rational, or
/// `lo + hi*sqrt(t_level)` with `lo`, `hi` from strictly lower levels.
///
/// Canonical form: an `Ext` node never has an identically zero `hi`
/// coefficient (the constructor collapses it), so rationality is a
/// structural check.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum TowerElement {
    Base(BigRational),
    Ext(Box<ExtNode>),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExtNode {
    pub lo: TowerElement,
    pub hi: TowerElement,
    pub level: usize,
}

impl TowerElement {
    pub fn zero() -> Self {
        TowerElement::Base(BigRational::zero())
    }

    pub fn one() -> Self {
        TowerElement::Base(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        TowerElement::Base(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(q: BigRational) -> Self {
        TowerElement::Base(q)
    }

    /// Canonicalizing constructor: collapses a zero `hi` to `lo`.
    pub fn ext(lo: TowerElement, hi: TowerElement, level: usize) -> Self {
        if hi.is_zero() {
            return lo;
        }
        debug_assert!(lo.top_level() <= level && hi.top_level() <= level);
        TowerElement::Ext(Box::new(ExtNode { lo, hi, level }))
    }

    /// Structural zero test; sound on canonical elements of a valid tower.
    pub fn is_zero(&self) -> bool {
        matches!(self, TowerElement::Base(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, TowerElement::Base(q) if q.is_one())
    }

    /// The rational value, iff the element is structurally rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            TowerElement::Base(q) => Some(q),
            TowerElement::Ext(_) => None,
        }
    }

    /// Number of radicands a tower must have for this element to make sense.
    pub fn top_level(&self) -> usize {
        match self {
            TowerElement::Base(_) => 0,
            TowerElement::Ext(node) => node.level + 1,
        }
    }

    /// Largest coefficient size in bits, for the growth guard.
    pub fn max_bits(&self) -> u64 {
        match self {
            TowerElement::Base(q) => rational_bits(q),
            TowerElement::Ext(node) => node.lo.max_bits().max(node.hi.max_bits()),
        }
    }
}

impl From<BigRational> for TowerElement {
    fn from(q: BigRational) -> Self {
        TowerElement::Base(q)
    }
}

/// Arithmetic operation selector for [`FieldTower::field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A tower of real quadratic extensions.
///
/// `radicands[i]` is an element of the tower truncated below level `i`;
/// each is strictly positive and not a square there. Towers are immutable:
/// [`FieldTower::adjoin_sqrt`] returns an extended copy, and elements of a
/// tower remain valid in every extension of it.
#[derive(Clone, Debug)]
pub struct FieldTower {
    radicands: Vec<TowerElement>,
    bit_cap: u64,
}

impl Default for FieldTower {
    fn default() -> Self {
        Self::new()
    }
}

impl FieldTower {
    /// The rationals, with the default coefficient growth cap.
    pub fn new() -> Self {
        FieldTower { radicands: Vec::new(), bit_cap: DEFAULT_BIT_CAP }
    }

    pub fn with_bit_cap(bit_cap: u64) -> Self {
        FieldTower { radicands: Vec::new(), bit_cap }
    }

    pub fn depth(&self) -> usize {
        self.radicands.len()
    }

    pub fn bit_cap(&self) -> u64 {
        self.bit_cap
    }

    pub fn radicand(&self, level: usize) -> &TowerElement {
        &self.radicands[level]
    }

    pub fn radicands(&self) -> &[TowerElement] {
        &self.radicands
    }

    fn validate(&self, elem: &TowerElement) -> Result<()> {
        let level = elem.top_level();
        if level > self.depth() {
            return Err(CoreError::TowerMismatch { level: level - 1, tower_len: self.depth() });
        }
        Ok(())
    }

    fn guard(&self, elem: TowerElement) -> Result<TowerElement> {
        let bits = elem.max_bits();
        if bits > self.bit_cap {
            return Err(CoreError::BitCapExceeded { bits, cap: self.bit_cap });
        }
        Ok(elem)
    }

    // ------------------------------------------------------------------
    // Field arithmetic
    // ------------------------------------------------------------------

    pub fn add(&self, a: &TowerElement, b: &TowerElement) -> Result<TowerElement> {
        self.validate(a)?;
        self.validate(b)?;
        self.guard(self.add_raw(a, b))
    }

    pub fn sub(&self, a: &TowerElement, b: &TowerElement) -> Result<TowerElement> {
        self.validate(a)?;
        self.validate(b)?;
        self.guard(self.add_raw(a, &Self::neg_raw(b)))
    }

    pub fn neg(&self, a: &TowerElement) -> TowerElement {
        Self::neg_raw(a)
    }

    pub fn mul(&self, a: &TowerElement, b: &TowerElement) -> Result<TowerElement> {
        self.validate(a)?;
        self.validate(b)?;
        self.guard(self.mul_raw(a, b))
    }

    pub fn div(&self, a: &TowerElement, b: &TowerElement) -> Result<TowerElement> {
        self.validate(a)?;
        self.validate(b)?;
        let inv = self.inv_raw(b)?;
        self.guard(self.mul_raw(a, &inv))
    }

    pub fn inv(&self, a: &TowerElement) -> Result<TowerElement> {
        self.validate(a)?;
        let inv = self.inv_raw(a)?;
        self.guard(inv)
    }

    /// Dispatching form of the four field operations.
    pub fn field_arith(&self, a: &TowerElement, b: &TowerElement, op: FieldOp) -> Result<TowerElement> {
        match op {
            FieldOp::Add => self.add(a, b),
            FieldOp::Sub => self.sub(a, b),
            FieldOp::Mul => self.mul(a, b),
            FieldOp::Div => self.div(a, b),
        }
    }

    /// Scale by a rational without building a temporary element.
    pub fn scale(&self, a: &TowerElement, q: &BigRational) -> Result<TowerElement> {
        self.mul(a, &TowerElement::from_ratio(q.clone()))
    }

    fn neg_raw(a: &TowerElement) -> TowerElement {
        match a {
            TowerElement::Base(q) => TowerElement::Base(-q.clone()),
            TowerElement::Ext(node) => TowerElement::ext(
                Self::neg_raw(&node.lo),
                Self::neg_raw(&node.hi),
                node.level,
            ),
        }
    }

    fn add_raw(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        match (a, b) {
            (TowerElement::Base(x), TowerElement::Base(y)) => TowerElement::Base(x + y),
            _ => {
                let (ka, kb) = (a.top_level(), b.top_level());
                match ka.cmp(&kb) {
                    Ordering::Equal => {
                        let (na, nb) = (unwrap_ext(a), unwrap_ext(b));
                        TowerElement::ext(
                            self.add_raw(&na.lo, &nb.lo),
                            self.add_raw(&na.hi, &nb.hi),
                            na.level,
                        )
                    }
                    Ordering::Greater => {
                        let na = unwrap_ext(a);
                        TowerElement::ext(self.add_raw(&na.lo, b), na.hi.clone(), na.level)
                    }
                    Ordering::Less => self.add_raw(b, a),
                }
            }
        }
    }

    fn mul_raw(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        if a.is_zero() || b.is_zero() {
            return TowerElement::zero();
        }
        match (a, b) {
            (TowerElement::Base(x), TowerElement::Base(y)) => TowerElement::Base(x * y),
            _ => {
                let (ka, kb) = (a.top_level(), b.top_level());
                match ka.cmp(&kb) {
                    Ordering::Equal => {
                        let (na, nb) = (unwrap_ext(a), unwrap_ext(b));
                        let theta = &self.radicands[na.level];
                        // (l1 + h1*r)(l2 + h2*r) = l1*l2 + h1*h2*t + (l1*h2 + h1*l2)*r
                        let cross = self.mul_raw(&self.mul_raw(&na.hi, &nb.hi), theta);
                        let lo = self.add_raw(&self.mul_raw(&na.lo, &nb.lo), &cross);
                        let hi = self.add_raw(
                            &self.mul_raw(&na.lo, &nb.hi),
                            &self.mul_raw(&na.hi, &nb.lo),
                        );
                        TowerElement::ext(lo, hi, na.level)
                    }
                    Ordering::Greater => {
                        let na = unwrap_ext(a);
                        TowerElement::ext(
                            self.mul_raw(&na.lo, b),
                            self.mul_raw(&na.hi, b),
                            na.level,
                        )
                    }
                    Ordering::Less => self.mul_raw(b, a),
                }
            }
        }
    }

    /// Reciprocal by conjugate rationalization, recursively:
    /// 1/(a + b*sqrt(t)) = (a - b*sqrt(t)) / (a^2 - t*b^2), and the norm
    /// lives one level down.
    fn inv_raw(&self, a: &TowerElement) -> Result<TowerElement> {
        match a {
            TowerElement::Base(q) => {
                if q.is_zero() {
                    return Err(CoreError::DivisionByZero);
                }
                Ok(TowerElement::Base(q.recip()))
            }
            TowerElement::Ext(node) => {
                let norm = self.norm_raw(node);
                // The norm of a nonzero element is nonzero when the nonsquare
                // invariant holds; a zero norm here means the tower was built
                // around a degenerate radicand.
                let norm_inv = self.inv_raw(&norm)?;
                let lo = self.mul_raw(&node.lo, &norm_inv);
                let hi = Self::neg_raw(&self.mul_raw(&node.hi, &norm_inv));
                Ok(TowerElement::ext(lo, hi, node.level))
            }
        }
    }

    /// Conjugate norm `lo^2 - t*hi^2` of an `Ext` node, one level down.
    fn norm_raw(&self, node: &ExtNode) -> TowerElement {
        let theta = &self.radicands[node.level];
        let lo_sq = self.mul_raw(&node.lo, &node.lo);
        let hi_sq = self.mul_raw(&node.hi, &node.hi);
        self.add_raw(&lo_sq, &Self::neg_raw(&self.mul_raw(&hi_sq, theta)))
    }

    /// `lo - hi*sqrt(t_level)` for an extension element; identity on rationals.
    pub fn conjugate_top(&self, a: &TowerElement) -> TowerElement {
        match a {
            TowerElement::Base(_) => a.clone(),
            TowerElement::Ext(node) => {
                TowerElement::ext(node.lo.clone(), Self::neg_raw(&node.hi), node.level)
            }
        }
    }

    // ------------------------------------------------------------------
    // Rationality, sign, absolute value
    // ------------------------------------------------------------------

    /// The exact rational value of `a`, iff `a` is rational. Soundness rests
    /// on the nonsquare invariant: representations are unique, so a
    /// non-`Base` canonical form is genuinely irrational.
    pub fn is_rational(a: &TowerElement) -> Option<BigRational> {
        a.as_rational().cloned()
    }

    /// Exact sign of `a` relative to zero.
    ///
    /// Structural zero answers immediately; otherwise interval evaluation is
    /// refined until zero is excluded, which terminates because a nonzero
    /// canonical element has a nonzero value.
    pub fn sign(&self, a: &TowerElement) -> Result<Ordering> {
        if a.is_zero() {
            return Ok(Ordering::Equal);
        }
        if let TowerElement::Base(q) = a {
            return Ok(q.cmp(&BigRational::zero()));
        }
        let mut digits = 12u32;
        while digits <= 6144 {
            let iv = self.numeric_eval(a, digits);
            if let Some(sign) = iv.definite_sign() {
                return Ok(sign);
            }
            digits *= 2;
        }
        Err(CoreError::SignUndetermined)
    }

    /// Exact comparison `a ? b` via the sign of the difference.
    pub fn compare(&self, a: &TowerElement, b: &TowerElement) -> Result<Ordering> {
        let diff = self.sub(a, b)?;
        self.sign(&diff)
    }

    pub fn abs(&self, a: &TowerElement) -> Result<TowerElement> {
        match self.sign(a)? {
            Ordering::Less => Ok(Self::neg_raw(a)),
            _ => Ok(a.clone()),
        }
    }

    // ------------------------------------------------------------------
    // Square detection and adjunction
    // ------------------------------------------------------------------

    /// An element `b` of this tower with `b^2 = a`, if one exists.
    ///
    /// At the base, rational square roots decide. At an extension
    /// `K(sqrt(t))`, an element `a + b*sqrt(t)` with `b != 0` is a square iff
    /// the conjugate norm `a^2 - t*b^2` has a root `n` in `K` and one of
    /// `(a + n)/2`, `(a - n)/2` is a square `x^2` in `K`; the companion
    /// coefficient is `b/(2x)`. An element of `K` itself is a square in
    /// `K(sqrt(t))` iff `a` or `a*t` is a square in `K`.
    pub fn sqrt_in_field(&self, a: &TowerElement) -> Result<Option<TowerElement>> {
        self.validate(a)?;
        let root = self.sqrt_at(a, self.depth())?;
        match root {
            Some(r) => {
                let r = match self.sign(&r)? {
                    Ordering::Less => Self::neg_raw(&r),
                    _ => r,
                };
                Ok(Some(self.guard(r)?))
            }
            None => Ok(None),
        }
    }

    fn sqrt_at(&self, a: &TowerElement, k: usize) -> Result<Option<TowerElement>> {
        if k == 0 {
            let q = a
                .as_rational()
                .expect("level-0 elements are rational by construction");
            return Ok(rational_sqrt(q).map(TowerElement::from_ratio));
        }
        let level = k - 1;
        if a.top_level() < k {
            // a lives in the field below sqrt(t): it is a square up here iff
            // a or a*t is a square down there.
            if let Some(r) = self.sqrt_at(a, level)? {
                return Ok(Some(r));
            }
            let theta = &self.radicands[level];
            let at = self.mul_raw(a, theta);
            if let Some(r) = self.sqrt_at(&at, level)? {
                let y = self.div(&r, theta)?;
                let cand = TowerElement::ext(TowerElement::zero(), y, level);
                debug_assert!(self.mul_raw(&cand, &cand) == *a);
                return Ok(Some(cand));
            }
            return Ok(None);
        }
        let node = unwrap_ext(a);
        debug_assert_eq!(node.level, level);
        let norm = self.norm_raw(node);
        let Some(n) = self.sqrt_at(&norm, level)? else {
            return Ok(None);
        };
        let half = TowerElement::Base(BigRational::new(1.into(), 2.into()));
        for n_signed in [n.clone(), Self::neg_raw(&n)] {
            let t = self.mul_raw(&self.add_raw(&node.lo, &n_signed), &half);
            if let Some(x) = self.sqrt_at(&t, level)? {
                if x.is_zero() {
                    continue;
                }
                let two_x = self.add_raw(&x, &x);
                let y = self.div(&node.hi, &two_x)?;
                let cand = TowerElement::ext(x, y, level);
                if self.mul_raw(&cand, &cand) == *a {
                    return Ok(Some(cand));
                }
            }
        }
        Ok(None)
    }

    /// Extend the tower with `sqrt(theta)`, or return the existing root when
    /// `theta` is already a square in the tower (no degenerate adjunction).
    /// Radicands must be strictly positive; the nonsquare invariant is
    /// guaranteed by construction.
    pub fn adjoin_sqrt(&self, theta: &TowerElement) -> Result<(FieldTower, TowerElement)> {
        self.validate(theta)?;
        if self.sign(theta)? != Ordering::Greater {
            return Err(CoreError::NonPositiveRadicand);
        }
        if let Some(root) = self.sqrt_in_field(theta)? {
            return Ok((self.clone(), root));
        }
        let mut extended = self.clone();
        extended.radicands.push(theta.clone());
        let symbol = TowerElement::ext(TowerElement::zero(), TowerElement::one(), self.depth());
        Ok((extended, symbol))
    }

    // ------------------------------------------------------------------
    // Numeric evaluation
    // ------------------------------------------------------------------

    /// A rational interval enclosing `a` with width at most `10^(-digits)`.
    ///
    /// Evaluations refine on a fixed doubling schedule with running
    /// intersection and grid-aligned outward rounding, so enclosures nest:
    /// raising `digits` always yields a subinterval.
    pub fn numeric_eval(&self, a: &TowerElement, digits: u32) -> RatInterval {
        if let TowerElement::Base(q) = a {
            return RatInterval::point(q.clone());
        }
        // Working precision follows a fixed doubling schedule regardless of
        // the requested digits, and enclosures are intersected along the way.
        // A higher-digits call therefore extends the same refinement sequence,
        // and the final outward rounding lands on a finer decimal grid, so
        // its result is contained in every lower-digits result.
        let target = pow10_inv(digits);
        let mut acc: Option<RatInterval> = None;
        let mut working = 4u32;
        loop {
            let raw = self.eval_scaled(a, working);
            let merged = match &acc {
                None => raw,
                Some(prev) => intersect(prev, &raw),
            };
            let rounded = merged.round_outward(digits + 2);
            if rounded.width() <= target {
                return rounded;
            }
            acc = Some(merged);
            working = working.saturating_mul(2);
        }
    }

    /// A rational interval enclosing `sqrt(value(a))` with width at most
    /// `10^(-digits)`, for `a >= 0`. The square root itself need not lie in
    /// the tower; this is the numeric companion to [`Self::sqrt_in_field`].
    /// Nests across precisions like [`Self::numeric_eval`].
    pub fn numeric_sqrt_eval(&self, a: &TowerElement, digits: u32) -> Result<RatInterval> {
        if let TowerElement::Base(q) = a {
            if q < &BigRational::zero() {
                return Err(CoreError::NonPositiveRadicand);
            }
            if let Some(r) = crate::rational::rational_sqrt(q) {
                return Ok(RatInterval::point(r));
            }
        } else if self.sign(a)? == Ordering::Less {
            return Err(CoreError::NonPositiveRadicand);
        }
        let target = pow10_inv(digits);
        let mut acc: Option<RatInterval> = None;
        let mut working = 4u32;
        loop {
            let raw = self.eval_scaled(a, working).sqrt_outward(working);
            let merged = match &acc {
                None => raw,
                Some(prev) => intersect(prev, &raw),
            };
            let rounded = merged.round_outward(digits + 2);
            if rounded.width() <= target {
                return Ok(rounded);
            }
            acc = Some(merged);
            working = working.saturating_mul(2);
        }
    }

    fn eval_scaled(&self, a: &TowerElement, working: u32) -> RatInterval {
        let mut cache: Vec<Option<RatInterval>> = vec![None; self.depth()];
        self.eval_rec(a, working, &mut cache)
    }

    fn eval_rec(
        &self,
        a: &TowerElement,
        working: u32,
        sqrt_cache: &mut Vec<Option<RatInterval>>,
    ) -> RatInterval {
        match a {
            TowerElement::Base(q) => RatInterval::point(q.clone()),
            TowerElement::Ext(node) => {
                if sqrt_cache[node.level].is_none() {
                    let theta_iv = self.eval_rec(&self.radicands[node.level], working, sqrt_cache);
                    sqrt_cache[node.level] = Some(theta_iv.sqrt_outward(working));
                }
                let root_iv = sqrt_cache[node.level].clone().unwrap();
                let lo_iv = self.eval_rec(&node.lo, working, sqrt_cache);
                let hi_iv = self.eval_rec(&node.hi, working, sqrt_cache);
                lo_iv.add(&hi_iv.mul(&root_iv))
            }
        }
    }
}

fn intersect(a: &RatInterval, b: &RatInterval) -> RatInterval {
    let lo = if a.lo >= b.lo { a.lo.clone() } else { b.lo.clone() };
    let hi = if a.hi <= b.hi { a.hi.clone() } else { b.hi.clone() };
    debug_assert!(lo <= hi, "enclosures of the same value cannot be disjoint");
    RatInterval::new(lo, hi)
}

fn unwrap_ext(a: &TowerElement) -> &ExtNode {
    match a {
        TowerElement::Ext(node) => node,
        TowerElement::Base(_) => unreachable!("caller checked top_level > 0"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn base(p: i64, q: i64) -> TowerElement {
        TowerElement::from_ratio(rat(p, q))
    }

    /// Q(sqrt(5)) and its generator.
    fn tower_sqrt5() -> (FieldTower, TowerElement) {
        FieldTower::new().adjoin_sqrt(&TowerElement::from_int(5)).unwrap()
    }

    #[test]
    fn conjugate_product_is_norm() {
        // (1 + sqrt(5))(1 - sqrt(5)) = 1 - 5 = -4
        let (t, r5) = tower_sqrt5();
        let a = t.add(&TowerElement::one(), &r5).unwrap();
        let b = t.sub(&TowerElement::one(), &r5).unwrap();
        let prod = t.mul(&a, &b).unwrap();
        assert_eq!(prod, TowerElement::from_int(-4));
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let (t, r2) = FieldTower::new().adjoin_sqrt(&TowerElement::from_int(2)).unwrap();
        assert_eq!(t.mul(&r2, &r2).unwrap(), TowerElement::from_int(2));
    }

    #[test]
    fn division_rationalizes_by_conjugate() {
        // 1 / (1 + sqrt(2)) = -1 + sqrt(2)
        let (t, r2) = FieldTower::new().adjoin_sqrt(&TowerElement::from_int(2)).unwrap();
        let denom = t.add(&TowerElement::one(), &r2).unwrap();
        let inv = t.div(&TowerElement::one(), &denom).unwrap();
        let expected = t.sub(&r2, &TowerElement::one()).unwrap();
        assert_eq!(inv, expected);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let (t, _) = tower_sqrt5();
        let err = t.div(&TowerElement::one(), &TowerElement::zero());
        assert!(matches!(err, Err(CoreError::DivisionByZero)));
    }

    #[test]
    fn level_mismatch_is_an_error() {
        let plain = FieldTower::new();
        let (_, r5) = tower_sqrt5();
        assert!(matches!(
            plain.add(&r5, &TowerElement::one()),
            Err(CoreError::TowerMismatch { .. })
        ));
    }

    #[test]
    fn bit_cap_fails_loudly() {
        let t = FieldTower::with_bit_cap(64);
        let big = base(i64::MAX, 1);
        let sq = t.mul(&big, &big);
        assert!(matches!(sq, Err(CoreError::BitCapExceeded { .. })));
    }

    #[test]
    fn sqrt_in_field_finds_nested_square() {
        // (2 + sqrt(5))^2 = 9 + 4*sqrt(5)
        let (t, r5) = tower_sqrt5();
        let alpha = t
            .add(&base(9, 1), &t.mul(&base(4, 1), &r5).unwrap())
            .unwrap();
        let root = t.sqrt_in_field(&alpha).unwrap().unwrap();
        let expected = t.add(&base(2, 1), &r5).unwrap();
        assert_eq!(root, expected);
    }

    #[test]
    fn sqrt_in_field_rejects_nonsquare() {
        // 3 + sqrt(5): norm 9 - 5 = 4, candidates (3 +- 2)/2 = 5/2, 1/2,
        // neither a rational square.
        let (t, r5) = tower_sqrt5();
        let alpha = t.add(&base(3, 1), &r5).unwrap();
        assert_eq!(t.sqrt_in_field(&alpha).unwrap(), None);
    }

    #[test]
    fn sqrt_in_field_base_perfect_square() {
        let t = FieldTower::new();
        let root = t.sqrt_in_field(&base(4, 1)).unwrap().unwrap();
        assert_eq!(root, base(2, 1));
    }

    #[test]
    fn sqrt_of_radicand_itself_found_in_extension() {
        // 5 is a square in Q(sqrt(5)): its root is the adjoined symbol.
        let (t, r5) = tower_sqrt5();
        let root = t.sqrt_in_field(&TowerElement::from_int(5)).unwrap().unwrap();
        assert_eq!(root, r5);
        // Hence re-adjoining sqrt(5) must not grow the tower.
        let (t2, again) = t.adjoin_sqrt(&TowerElement::from_int(5)).unwrap();
        assert_eq!(t2.depth(), 1);
        assert_eq!(again, r5);
    }

    #[test]
    fn adjoin_collapses_perfect_square() {
        let (t, root) = FieldTower::new().adjoin_sqrt(&base(9, 4)).unwrap();
        assert_eq!(t.depth(), 0);
        assert_eq!(root, base(3, 2));
    }

    #[test]
    fn adjoin_nested_square_returns_existing_element() {
        // sqrt(9 + 4*sqrt(5)) = 2 + sqrt(5), already in Q(sqrt(5)).
        let (t, r5) = tower_sqrt5();
        let alpha = t
            .add(&base(9, 1), &t.mul(&base(4, 1), &r5).unwrap())
            .unwrap();
        let (t2, root) = t.adjoin_sqrt(&alpha).unwrap();
        assert_eq!(t2.depth(), 1);
        assert_eq!(root, t.add(&base(2, 1), &r5).unwrap());
    }

    #[test]
    fn adjoin_rejects_nonpositive() {
        let t = FieldTower::new();
        assert!(matches!(
            t.adjoin_sqrt(&base(-5, 1)),
            Err(CoreError::NonPositiveRadicand)
        ));
        assert!(matches!(
            t.adjoin_sqrt(&TowerElement::zero()),
            Err(CoreError::NonPositiveRadicand)
        ));
    }

    #[test]
    fn rationality_is_structural() {
        let (t, r5) = tower_sqrt5();
        assert_eq!(FieldTower::is_rational(&base(7, 3)), Some(rat(7, 3)));
        assert_eq!(FieldTower::is_rational(&r5), None);
        // (2 + sqrt(5))(2 - sqrt(5)) = -1 canonicalizes to Base.
        let a = t.add(&base(2, 1), &r5).unwrap();
        let b = t.sub(&base(2, 1), &r5).unwrap();
        let prod = t.mul(&a, &b).unwrap();
        assert_eq!(FieldTower::is_rational(&prod), Some(rat(-1, 1)));
    }

    #[test]
    fn numeric_eval_brackets_sqrt5() {
        // Containment of sqrt(5) is checked exactly: lo^2 <= 5 <= hi^2.
        let (t, r5) = tower_sqrt5();
        let iv = t.numeric_eval(&r5, 10);
        assert!(iv.width() <= rat(1, 10_000_000_000));
        let five = rat(5, 1);
        assert!(&iv.lo * &iv.lo <= five && five <= &iv.hi * &iv.hi);
        assert!(iv.lo > rat(2, 1) && iv.hi < rat(3, 1));
    }

    #[test]
    fn numeric_eval_exact_for_rationals() {
        let t = FieldTower::new();
        let iv = t.numeric_eval(&base(1, 3), 5);
        assert_eq!(iv.lo, rat(1, 3));
        assert_eq!(iv.hi, rat(1, 3));
    }

    #[test]
    fn numeric_eval_canonicalized_product_is_exact() {
        let (t, r5) = tower_sqrt5();
        let a = t.add(&base(2, 1), &r5).unwrap();
        let b = t.sub(&base(2, 1), &r5).unwrap();
        let prod = t.mul(&a, &b).unwrap();
        let iv = t.numeric_eval(&prod, 3);
        assert_eq!(iv, RatInterval::point(rat(-1, 1)));
    }

    #[test]
    fn numeric_eval_nests_across_precision() {
        let (t, r5) = tower_sqrt5();
        let x = t.add(&base(1, 3), &r5).unwrap();
        let coarse = t.numeric_eval(&x, 6);
        let fine = t.numeric_eval(&x, 30);
        assert!(coarse.contains_interval(&fine));
    }

    #[test]
    fn sign_determination() {
        let (t, r5) = tower_sqrt5();
        // sqrt(5) - 2 > 0, sqrt(5) - 9/4 < 0
        let pos = t.sub(&r5, &base(2, 1)).unwrap();
        let neg = t.sub(&r5, &base(9, 4)).unwrap();
        assert_eq!(t.sign(&pos).unwrap(), Ordering::Greater);
        assert_eq!(t.sign(&neg).unwrap(), Ordering::Less);
        let zero = t.sub(&r5, &r5).unwrap();
        assert_eq!(t.sign(&zero).unwrap(), Ordering::Equal);
    }

    #[test]
    fn deep_tower_arithmetic() {
        // Q(sqrt(5), sqrt(2 + sqrt(5))): exercise level-2 products.
        let (t1, r5) = tower_sqrt5();
        let theta = t1.add(&base(2, 1), &r5).unwrap();
        let (t2, sigma) = t1.adjoin_sqrt(&theta).unwrap();
        assert_eq!(t2.depth(), 2);
        let sq = t2.mul(&sigma, &sigma).unwrap();
        assert_eq!(sq, theta);
        // 1/sigma * sigma = 1
        let inv = t2.inv(&sigma).unwrap();
        assert!(t2.mul(&inv, &sigma).unwrap().is_one());
    }

    #[test]
    fn field_arith_dispatch() {
        let (t, r5) = tower_sqrt5();
        let two = base(2, 1);
        assert_eq!(
            t.field_arith(&r5, &two, FieldOp::Mul).unwrap(),
            t.mul(&r5, &two).unwrap()
        );
        assert_eq!(
            t.field_arith(&r5, &r5, FieldOp::Div).unwrap(),
            TowerElement::one()
        );
    }
}
