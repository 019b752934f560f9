use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// Reduced rational with a positive denominator.
pub type Rat = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rat_int(value: impl Into<BigInt>) -> Rat {
    Rat::from_integer(value.into())
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`. Whitespace around the parts is ignored.
pub fn parse_rat(text: &str) -> Result<Rat, Error> {
    let bad = || Error::Parse(format!("invalid rational {text:?}"));
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = denom.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(numer, denom))
}

pub fn floor_rat(x: &Rat) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub fn ceil_rat(x: &Rat) -> BigInt {
    -((-x.numer()).div_floor(x.denom()))
}

/// Fractional part in `[0, 1)`.
pub fn frac_rat(x: &Rat) -> Rat {
    x - rat_int(floor_rat(x))
}

/// Largest integer `g >= 0` with `g^k <= x`, for `x >= 0` and `k >= 1`.
pub fn int_root_floor(x: &Rat, k: u32) -> BigInt {
    assert!(k >= 1, "root degree must be positive");
    assert!(!x.is_negative(), "root of a negative rational");
    let bound = floor_rat(x);
    if bound.is_zero() {
        return BigInt::zero();
    }
    // g^k <= x  <=>  g^k <= floor(x) for integer g
    let mut lo = BigInt::one();
    let mut hi = bound.clone() + 1u32;
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        if num_traits::pow(mid.clone(), k as usize) <= bound {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}
