//! Exact rational arithmetic helpers used across the crate.
//!
//! All payoffs, budgets and scaling variables are kept as arbitrary-precision
//! rationals so that oracle comparisons are exact equalities, not tolerances.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn rat_one() -> Rat {
    Rat::one()
}

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn rat_uint(v: u64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parses a rational from a string: either "p/q", a plain integer, or a
/// decimal such as "0.25" (parsed exactly as a fraction over a power of ten).
pub fn parse_rational(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().ok()?;
        let den: BigInt = q.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rat::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        let int_val: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits.parse().ok()?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let frac_val: BigInt = frac_part.parse().ok()?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let mut value = Rat::from_integer(int_val) + Rat::new(frac_val, scale);
        if negative {
            value = -value;
        }
        return Some(value);
    }
    let v: BigInt = s.parse().ok()?;
    Some(Rat::from_integer(v))
}

/// Canonical string form: integers print bare, everything else as "p/q".
pub fn rat_to_string(r: &Rat) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact rational value of a finite f64. Used to freeze values like ln(m)
/// into the rational domain deterministically.
pub fn rat_from_f64(v: f64) -> Option<Rat> {
    Rat::from_float(v)
}

pub fn rat_min(a: Rat, b: Rat) -> Rat {
    if a <= b {
        a
    } else {
        b
    }
}

pub fn rat_max(a: Rat, b: Rat) -> Rat {
    if a >= b {
        a
    } else {
        b
    }
}

/// Smallest integer ≥ r, as a BigInt.
pub fn rat_ceil(r: &Rat) -> BigInt {
    r.ceil().to_integer()
}

pub fn is_nonneg(r: &Rat) -> bool {
    !r.is_negative()
}
