//! Pythagorean triples and fractions, and what they say about parabola
//! distances.
//!
//! For rational points the distance `|x2 - x1| * sqrt(1 + s^2)` (with
//! `s = x1 + x2 = p/q` reduced) is rational exactly when `p^2 + q^2` is a
//! perfect square — when `p` and `q` are the legs of a Pythagorean triple.
//! Such an `s` is a *Pythagorean fraction*. This module enumerates triples,
//! recognizes the fractions, solves the three-point linear system whose
//! pairwise coordinate sums hit three prescribed fractions, and searches for
//! collisions among fraction differences (a conjectured impossibility,
//! treated here strictly as a falsification target).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;
use std::collections::BTreeMap;

use crate::error::{CoreError, Result};
use crate::parabola::{lift_point, pairwise_matrix, rational_str, PPoint};
use crate::rational::{exact_int_sqrt, is_square_u64, BigRational};
use crate::tower::{FieldTower, TowerElement};

/// A Pythagorean triple `a^2 + b^2 = c^2` with `a < b < c`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PythTriple {
    pub a: BigUint,
    pub b: BigUint,
    pub c: BigUint,
    /// `gcd(a, b) = 1`; scaled triples carry `false`.
    pub primitive: bool,
}

/// A reduced fraction `p/q` whose numerator and denominator are the legs of
/// a Pythagorean triple, witnessed explicitly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PythFraction {
    pub value: BigRational,
    pub witness: PythTriple,
}

/// Recognize `r = p/q` (reduced, positive) as a Pythagorean fraction.
///
/// Integers always fail: `1 + p^2` lies strictly between `p^2` and
/// `(p + 1)^2` for `p >= 1`. Non-positive input is simply not a Pythagorean
/// fraction.
pub fn is_pythagorean_fraction(r: &BigRational) -> Option<PythFraction> {
    if !r.is_positive() {
        return None;
    }
    let p = r.numer().magnitude().clone();
    let q = r.denom().magnitude().clone();
    if q.is_one() {
        return None;
    }
    let c = exact_int_sqrt(&(&p * &p + &q * &q))?;
    let (a, b) = if p < q { (p, q) } else { (q, p) };
    Some(PythFraction {
        value: r.clone(),
        witness: PythTriple { a, b, c, primitive: true },
    })
}

/// All primitive triples with hypotenuse `c <= limit`, by the classical
/// parametrization `(m^2 - n^2, 2mn, m^2 + n^2)` over coprime `m > n` of
/// opposite parity; sorted by `(c, a)`.
pub fn euclid_triples(limit: u64) -> Result<Vec<PythTriple>> {
    if limit < 5 {
        return Err(CoreError::InvalidParameter(format!(
            "hypotenuse limit must be at least 5, got {limit}"
        )));
    }
    let mut out = Vec::new();
    let mut m = 2u64;
    while m * m + 1 <= limit {
        for n in 1..m {
            if (m + n) % 2 == 1 && m.gcd(&n) == 1 {
                let c = m * m + n * n;
                if c > limit {
                    continue;
                }
                let (x, y) = (m * m - n * n, 2 * m * n);
                let (a, b) = (x.min(y), x.max(y));
                out.push(PythTriple {
                    a: BigUint::from(a),
                    b: BigUint::from(b),
                    c: BigUint::from(c),
                    primitive: true,
                });
            }
        }
        m += 1;
    }
    out.sort_by(|l, r| (&l.c, &l.a).cmp(&(&r.c, &r.a)));
    Ok(out)
}

/// Solve for three parabola points whose pairwise coordinate sums are the
/// three given fraction values `a`, `b`, `c`:
/// `x1 = (a+b-c)/2`, `x2 = (a-b+c)/2`, `x3 = (-a+b+c)/2`.
///
/// Succeeds iff the solutions are positive (distinctness follows from the
/// fractions being distinct); the result is pairwise-rational by the sum
/// criterion, and that postcondition is re-verified through the tower path.
pub fn three_point_from_fractions(
    f1: &PythFraction,
    f2: &PythFraction,
    f3: &PythFraction,
) -> Result<(PPoint, PPoint, PPoint)> {
    let (a, b, c) = (&f1.value, &f2.value, &f3.value);
    if a == b || a == c || b == c {
        return Err(CoreError::InvalidParameter(
            "three-point construction needs three distinct fraction values".into(),
        ));
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let xs = [(a + b - c) * &half, (a - b + c) * &half, (-a + b + c) * &half];
    for x in &xs {
        if !x.is_positive() {
            return Err(CoreError::NonPositivePoint { value: rational_str(x) });
        }
    }
    let tower = FieldTower::new();
    let [x1, x2, x3] = xs;
    let p1 = lift_point(&tower, TowerElement::from_ratio(x1))?;
    let p2 = lift_point(&tower, TowerElement::from_ratio(x2))?;
    let p3 = lift_point(&tower, TowerElement::from_ratio(x3))?;
    let matrix = pairwise_matrix(&tower, &[p1.clone(), p2.clone(), p3.clone()])?;
    if !matrix.all_rational {
        // Unreachable when the inputs really are Pythagorean fractions; kept
        // as a hard check because the sum criterion is the claim under test.
        return Err(CoreError::CrosscheckMismatch {
            x1: rational_str(a),
            x2: rational_str(b),
            tower_rational: false,
            criterion_rational: true,
        });
    }
    Ok((p1, p2, p3))
}

/// All Pythagorean fractions with numerator and denominator `<= bound`,
/// ascending.
pub fn pythagorean_fractions_up_to(bound: u64) -> Vec<BigRational> {
    let mut out = Vec::new();
    for q in 2..=bound {
        for p in 1..=bound {
            if p != q && p.gcd(&q) == 1 && is_square_u64(p * p + q * q) {
                out.push(BigRational::new(BigInt::from(p), BigInt::from(q)));
            }
        }
    }
    out.sort();
    out
}

/// One difference value achieved by two or more distinct ordered pairs.
#[derive(Clone, Debug)]
pub struct Collision {
    pub value: BigRational,
    /// `(f, g)` with `f - g = value > 0`, sorted.
    pub pairs: Vec<(BigRational, BigRational)>,
}

/// Result of the exhaustive difference search at a given bound.
#[derive(Clone, Debug)]
pub struct ConjectureSearch {
    pub bound: u64,
    pub fractions: Vec<BigRational>,
    pub collisions: Vec<Collision>,
}

/// Exhaustively test the conjecture that no two distinct pairs of
/// Pythagorean fractions share a positive difference, for all fractions with
/// numerator and denominator `<= bound`.
///
/// An empty collision list is evidence at this bound, never proof; any entry
/// refutes the conjecture outright.
pub fn conjecture_difference_search(bound: u64) -> Result<ConjectureSearch> {
    if bound < 5 {
        return Err(CoreError::InvalidParameter(format!(
            "difference search bound must be at least 5, got {bound}"
        )));
    }
    let fractions = pythagorean_fractions_up_to(bound);
    let mut groups: BTreeMap<BigRational, Vec<(BigRational, BigRational)>> = BTreeMap::new();
    for (i, g) in fractions.iter().enumerate() {
        for f in &fractions[i + 1..] {
            groups.entry(f - g).or_default().push((f.clone(), g.clone()));
        }
    }
    let collisions = groups
        .into_iter()
        .filter(|(_, pairs)| pairs.len() >= 2)
        .map(|(value, mut pairs)| {
            pairs.sort();
            Collision { value, pairs }
        })
        .collect();
    Ok(ConjectureSearch { bound, fractions, collisions })
}

#[derive(Serialize, Debug)]
pub struct CollisionJson {
    pub value: String,
    pub pairs: Vec<[String; 2]>,
}

#[derive(Serialize, Debug)]
pub struct ConjectureReport {
    pub bound: u64,
    pub fractions_count: usize,
    pub collisions: Vec<CollisionJson>,
}

impl ConjectureSearch {
    pub fn to_report(&self) -> ConjectureReport {
        ConjectureReport {
            bound: self.bound,
            fractions_count: self.fractions.len(),
            collisions: self
                .collisions
                .iter()
                .map(|c| CollisionJson {
                    value: rational_str(&c.value),
                    pairs: c
                        .pairs
                        .iter()
                        .map(|(f, g)| [rational_str(f), rational_str(g)])
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Convenience for tests: the triple's fields as `u64`.
pub fn triple_as_u64(t: &PythTriple) -> (u64, u64, u64) {
    (
        t.a.to_u64().expect("desk-scale triple"),
        t.b.to_u64().expect("desk-scale triple"),
        t.c.to_u64().expect("desk-scale triple"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn frac(p: i64, q: i64) -> PythFraction {
        is_pythagorean_fraction(&rat(p, q)).expect("test fraction must qualify")
    }

    #[test]
    fn recognizes_pythagorean_fractions() {
        let f = frac(3, 4);
        assert_eq!(triple_as_u64(&f.witness), (3, 4, 5));
        let f = frac(20, 21);
        assert_eq!(triple_as_u64(&f.witness), (20, 21, 29));
        // both orientations qualify
        let f = frac(21, 20);
        assert_eq!(triple_as_u64(&f.witness), (20, 21, 29));
        assert!(is_pythagorean_fraction(&rat(1, 2)).is_none());
        assert!(is_pythagorean_fraction(&rat(7, 1)).is_none());
        assert!(is_pythagorean_fraction(&rat(-3, 4)).is_none());
        assert!(is_pythagorean_fraction(&rat(0, 1)).is_none());
    }

    #[test]
    fn euclid_triples_small_limits() {
        let t5 = euclid_triples(5).unwrap();
        assert_eq!(t5.len(), 1);
        assert_eq!(triple_as_u64(&t5[0]), (3, 4, 5));

        let t25: Vec<_> = euclid_triples(25).unwrap().iter().map(triple_as_u64).collect();
        assert_eq!(t25, vec![(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25)]);

        let t29: Vec<_> = euclid_triples(29).unwrap().iter().map(triple_as_u64).collect();
        assert_eq!(
            t29,
            vec![(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (20, 21, 29)]
        );

        assert!(euclid_triples(4).is_err());
    }

    #[test]
    fn triples_satisfy_their_invariant() {
        for t in euclid_triples(200).unwrap() {
            assert_eq!(&t.a * &t.a + &t.b * &t.b, &t.c * &t.c);
            assert!(t.a < t.b && t.b < t.c);
            assert!(t.a.gcd(&t.b).is_one());
        }
    }

    #[test]
    fn three_point_reproduction() {
        let (p1, p2, p3) =
            three_point_from_fractions(&frac(3, 4), &frac(20, 21), &frac(21, 20)).unwrap();
        assert_eq!(p1.x().as_rational(), Some(&rat(137, 420)));
        assert_eq!(p2.x().as_rational(), Some(&rat(89, 210)));
        assert_eq!(p3.x().as_rational(), Some(&rat(263, 420)));
    }

    #[test]
    fn three_point_rejects_nonpositive_solution() {
        let err = three_point_from_fractions(&frac(3, 4), &frac(4, 3), &frac(5, 12)).unwrap_err();
        match err {
            CoreError::NonPositivePoint { value } => assert_eq!(value, "-1/12"),
            other => panic!("expected positivity rejection, got {other:?}"),
        }
    }

    #[test]
    fn three_point_rejects_duplicates() {
        let f = frac(3, 4);
        assert!(matches!(
            three_point_from_fractions(&f, &f, &frac(20, 21)),
            Err(CoreError::InvalidParameter(_))
        ));
    }

    #[test]
    fn fraction_enumeration_bound_5() {
        let fs = pythagorean_fractions_up_to(5);
        assert_eq!(fs, vec![rat(3, 4), rat(4, 3)]);
    }

    #[test]
    fn conjecture_search_bound_5_empty() {
        let s = conjecture_difference_search(5).unwrap();
        assert_eq!(s.fractions.len(), 2);
        assert!(s.collisions.is_empty());
    }

    #[test]
    fn conjecture_search_bound_13_all_distinct() {
        let s = conjecture_difference_search(13).unwrap();
        assert_eq!(
            s.fractions,
            vec![rat(5, 12), rat(3, 4), rat(4, 3), rat(12, 5)]
        );
        // six ordered positive differences, all distinct at this bound
        assert!(s.collisions.is_empty());
    }

    #[test]
    fn conjecture_search_rejects_tiny_bound() {
        assert!(conjecture_difference_search(0).is_err());
        assert!(conjecture_difference_search(4).is_err());
    }

    #[test]
    fn conjecture_report_shape() {
        let s = conjecture_difference_search(5).unwrap();
        let json = serde_json::to_string(&s.to_report()).unwrap();
        assert_eq!(json, r#"{"bound":5,"fractions_count":2,"collisions":[]}"#);
    }
}
