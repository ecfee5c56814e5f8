//! Arbitrary-precision rational numbers and the handful of exact helpers
//! (rational powers, robust float conversion, `"p/q"` (de)serialization)
//! the rest of the crate leans on.
//!
//! The carrier type is [`num_rational::BigRational`], which already keeps
//! fractions reduced with a positive denominator.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Crate-wide rational number type. Always reduced, denominator positive.
pub type Rat = BigRational;

/// Shorthand for small rationals.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for small integers as rationals.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` into a rational.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

/// Renders a rational as `"p"` or `"p/q"`.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Exact `base^exp` for a rational exponent, when the result is rational.
///
/// `base` must be positive. Returns `None` when `base^(1/denom(exp))` is
/// irrational (e.g. `2^(1/2)`).
pub fn rational_pow(base: &Rat, exp: &Rat) -> Option<Rat> {
    if !base.is_positive() {
        return None;
    }
    if exp.is_zero() || base.is_one() {
        return Some(Rat::one());
    }
    let e_num = exp.numer();
    let e_den = exp.denom().to_u32()?;
    let root = if e_den == 1 {
        base.clone()
    } else {
        let rn = exact_nth_root(base.numer(), e_den)?;
        let rd = exact_nth_root(base.denom(), e_den)?;
        Rat::new(rn, rd)
    };
    let k = e_num.to_i64()?;
    Some(rat_pow_i64(&root, k))
}

/// `x^k` for a (possibly negative) integer exponent; `x` nonzero when `k < 0`.
pub fn rat_pow_i64(x: &Rat, k: i64) -> Rat {
    if k >= 0 {
        pow_u64(x, k as u64)
    } else {
        pow_u64(&x.recip(), (-k) as u64)
    }
}

fn pow_u64(x: &Rat, mut k: u64) -> Rat {
    let mut acc = Rat::one();
    let mut sq = x.clone();
    while k > 0 {
        if k & 1 == 1 {
            acc *= &sq;
        }
        k >>= 1;
        if k > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

/// Exact n-th root of a nonnegative integer, or `None` when not a perfect power.
fn exact_nth_root(x: &BigInt, n: u32) -> Option<BigInt> {
    if x.sign() == Sign::Minus {
        return None;
    }
    let r = x.nth_root(n);
    if num_traits::pow::Pow::pow(r.clone(), n) == *x {
        Some(r)
    } else {
        None
    }
}

/// Float conversion that stays finite for rationals whose numerator or
/// denominator exceeds the `f64` range, by shifting both sides down first.
pub fn rat_to_f64(x: &Rat) -> f64 {
    let nbits = x.numer().bits();
    let dbits = x.denom().bits();
    let max = nbits.max(dbits);
    if max <= 900 {
        return x.to_f64().unwrap_or(f64::NAN);
    }
    let shift = max - 512;
    let n = x.numer() >> shift;
    let d = x.denom() >> shift;
    let nf = n.to_f64().unwrap_or(f64::NAN);
    let df = d.to_f64().unwrap_or(f64::NAN);
    nf / df
}

/// Natural logarithm of a positive rational, accurate even for huge values.
pub fn rat_ln(x: &Rat) -> f64 {
    assert!(x.is_positive(), "rat_ln needs a positive argument");
    ln_bigint(x.numer()) - ln_bigint(x.denom())
}

fn ln_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 900 {
        return x.to_f64().map(f64::ln).unwrap_or(f64::NAN);
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::NAN);
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}

/// Serde adapter serializing rationals as `"p/q"` strings.
pub mod rat_string {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        rat_from_str(&s).ok_or_else(|| D::Error::custom(format!("invalid rational: {s:?}")))
    }
}
