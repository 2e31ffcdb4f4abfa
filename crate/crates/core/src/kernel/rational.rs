use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use super::KernelError;

/// Exact rational scalar. `BigRational` keeps itself reduced with a positive
/// denominator, which is the invariant every caller relies on.
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, `"p"`, or a decimal-free integer literal.
pub fn parse_rational(s: &str) -> Result<Rational, KernelError> {
    let s = s.trim();
    let bad = || KernelError::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(KernelError::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Integers that fit in an `i64` become JSON numbers, everything else a `"p/q"` string.
pub fn rational_to_json(q: &Rational) -> Value {
    if q.is_integer() {
        if let Some(v) = q.numer().to_i64() {
            return Value::from(v);
        }
    }
    Value::String(format_rational(q))
}

pub fn rational_from_json(v: &Value) -> Result<Rational, KernelError> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(int(i)),
            None => Err(KernelError::Parse(format!(
                "non-integer JSON number {n}; write rationals as \"p/q\" strings"
            ))),
        },
        Value::String(s) => parse_rational(s),
        other => Err(KernelError::Parse(format!("expected rational, found {other}"))),
    }
}

pub fn lcm_of_denominators<'a, I: IntoIterator<Item = &'a Rational>>(items: I) -> BigInt {
    items
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn gcd_of(items: &[BigInt]) -> BigInt {
    items.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

/// Floor of a non-negative integer's `n`-th root.
pub fn integer_root(value: &BigInt, n: u32) -> BigInt {
    if value.is_zero() || n == 1 {
        return value.clone();
    }
    value.nth_root(n)
}
