//! Deterministic random material for property tests and benchmarks: towers
//! with genuinely irrational adjunctions and elements with small rational
//! coefficients. Everything is seeded, so failures replay exactly.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::tower::{FieldTower, TowerElement};

/// Fixed-algorithm RNG; a seed pins the whole stream across platforms.
pub fn sample_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational with numerator in [-bound, bound] and denominator in [1, bound].
pub fn random_rational(rng: &mut impl Rng, bound: i64) -> BigRational {
    random_ratio_in(rng, bound, bound)
}

/// Rational with independently bounded numerator and denominator; wide
/// numerators with small denominators keep deep arithmetic affordable.
pub fn random_ratio_in(rng: &mut impl Rng, num_bound: i64, den_bound: i64) -> BigRational {
    let p = rng.gen_range(-num_bound..=num_bound);
    let q = rng.gen_range(1..=den_bound);
    BigRational::new(p.into(), q.into())
}

fn random_nonzero_rational(rng: &mut impl Rng, bound: i64) -> BigRational {
    loop {
        let r = random_rational(rng, bound);
        if !num_traits::Zero::is_zero(&r) {
            return r;
        }
    }
}

/// Tower of exactly `depth` levels. Each adjunction is retried until
/// `adjoin_sqrt` actually grows the tower, so every radicand is a verified
/// nonsquare in the field below it.
pub fn random_tower(rng: &mut impl Rng, depth: usize, bound: i64) -> FieldTower {
    let mut tower = FieldTower::new();
    while tower.depth() < depth {
        let level = tower.depth();
        let candidate = if level == 0 {
            let r = random_nonzero_rational(rng, bound);
            TowerElement::from_ratio(&r * &r + BigRational::from_integer(2.into()))
        } else {
            // positive by construction: square plus a small positive integer
            let e = random_element(rng, level, bound.min(8));
            let shift = TowerElement::from_int(rng.gen_range(2..=5));
            let sq = tower.mul(&e, &e).expect("sampled element squares");
            tower.add(&sq, &shift).expect("sampled radicand")
        };
        let (grown, _) = tower.adjoin_sqrt(&candidate).expect("positive candidate");
        if grown.depth() > level {
            tower = grown;
        }
    }
    tower
}

/// Dense element mentioning every level below `level`, with coefficients
/// bounded by `bound`.
pub fn random_element(rng: &mut impl Rng, level: usize, bound: i64) -> TowerElement {
    random_element_in(rng, level, bound, bound)
}

/// Dense element with independently bounded coefficient numerators and
/// denominators.
pub fn random_element_in(
    rng: &mut impl Rng,
    level: usize,
    num_bound: i64,
    den_bound: i64,
) -> TowerElement {
    if level == 0 {
        TowerElement::from_ratio(random_ratio_in(rng, num_bound, den_bound))
    } else {
        TowerElement::ext(
            random_element_in(rng, level - 1, num_bound, den_bound),
            random_element_in(rng, level - 1, num_bound, den_bound),
            level - 1,
        )
    }
}

/// Like `random_element`, but never the zero element.
pub fn random_nonzero_element(rng: &mut impl Rng, level: usize, bound: i64) -> TowerElement {
    loop {
        let e = random_element(rng, level, bound);
        if !e.is_zero() {
            return e;
        }
    }
}
