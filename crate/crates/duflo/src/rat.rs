//! Exact rational scalars: construction helpers, parsing, factorials.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

/// The scalar type used everywhere: arbitrary-precision rationals.
pub type Rat = BigRational;

/// The rational `n`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The rational `n/d`. Panics if `d` is zero.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut out = BigInt::one();
    for k in 2..=n {
        out *= k;
    }
    out
}

/// Parses `"p"`, `"-p"`, or `"p/q"` into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (numer, denom) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (s, None),
    };
    let n: BigInt = numer
        .parse()
        .map_err(|_| format!("malformed rational `{s}`"))?;
    let d: BigInt = match denom {
        Some(b) => b.parse().map_err(|_| format!("malformed rational `{s}`"))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rat::new(n, d))
}
