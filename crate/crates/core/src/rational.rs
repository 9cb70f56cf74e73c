//! Helpers on top of arbitrary-precision rationals: exact square roots,
//! decimal rendering with directed rounding, and small perfect-square tests.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational;

/// `r` with `r^2 = q`, if `q` is the square of a rational; `None` otherwise.
/// Negative inputs never have a rational square root.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let numer = exact_int_sqrt(q.numer().magnitude())?;
    let denom = exact_int_sqrt(q.denom().magnitude())?;
    Some(BigRational::new(
        BigInt::from_biguint(Sign::Plus, numer),
        BigInt::from_biguint(Sign::Plus, denom),
    ))
}

/// Floor square root that only reports exact hits.
pub fn exact_int_sqrt(n: &BigUint) -> Option<BigUint> {
    let root = n.sqrt();
    if &root * &root == *n {
        Some(root)
    } else {
        None
    }
}

/// Perfect-square test for machine integers, with a residue-mask fast path.
///
/// Squares mod 64 fall in a fixed set of 12 residues; the mask rejects the
/// rest without an integer square root.
const SQUARE_MASK_64: u64 = {
    let mut mask = 0u64;
    let mut i = 0u64;
    while i < 64 {
        mask |= 1 << ((i * i) % 64);
        i += 1;
    }
    mask
};

pub fn is_square_u64(n: u64) -> bool {
    if (SQUARE_MASK_64 >> (n & 63)) & 1 == 0 {
        return false;
    }
    let r = n.isqrt();
    r * r == n
}

pub fn sqrt_u64(n: u64) -> Option<u64> {
    let r = n.isqrt();
    if r * r == n {
        Some(r)
    } else {
        None
    }
}

/// Number of bits in the larger of numerator and denominator.
pub fn rational_bits(q: &BigRational) -> u64 {
    q.numer().bits().max(q.denom().bits())
}

pub fn big_rational_from_u64(p: u64, q: u64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Rounding direction for decimal rendering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Floor,
    Ceil,
}

/// Render `q` with exactly `digits` fractional decimal digits, rounding
/// toward minus infinity (`Floor`) or plus infinity (`Ceil`).
pub fn decimal_str(q: &BigRational, digits: u32, rounding: Rounding) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled_num = q.numer() * &scale;
    let denom = q.denom();
    let (quot, rem) = scaled_num.div_rem(denom);
    let mut units = quot;
    if !rem.is_zero() {
        // div_rem truncates toward zero; adjust to the requested direction.
        match rounding {
            Rounding::Floor => {
                if rem.is_negative() {
                    units -= BigInt::one();
                }
            }
            Rounding::Ceil => {
                if rem.is_positive() {
                    units += BigInt::one();
                }
            }
        }
    }
    let negative = units.is_negative();
    let mag = units.magnitude().to_string();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if digits == 0 {
        out.push_str(&mag);
        return out;
    }
    let d = digits as usize;
    if mag.len() <= d {
        out.push_str("0.");
        out.push_str(&"0".repeat(d - mag.len()));
        out.push_str(&mag);
    } else {
        let (int_part, frac_part) = mag.split_at(mag.len() - d);
        out.push_str(int_part);
        out.push('.');
        out.push_str(frac_part);
    }
    out
}

/// Parse a rational in the `p/q` (or plain integer) command-line form.
pub fn parse_ratio(text: &str) -> Result<BigRational, String> {
    text.trim()
        .parse::<BigRational>()
        .map_err(|e| format!("invalid rational {text:?}: {e}"))
}

/// 10^(-digits) as a rational, the width target for interval refinement.
pub fn pow10_inv(digits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits))
}
