//! Arbitrary-precision rational scalars and small numeric helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision integer.
pub type Int = BigInt;

/// Arbitrary-precision reduced fraction; the coordinate field of everything.
pub type Rat = BigRational;

/// `n/d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Integer `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Exact floor as an integer.
pub fn floor_int(r: &Rat) -> Int {
    r.floor().to_integer()
}

/// Exact ceiling as an integer.
pub fn ceil_int(r: &Rat) -> Int {
    r.ceil().to_integer()
}

pub fn is_integral_point(point: &[Rat]) -> bool {
    point.iter().all(Rat::is_integer)
}

pub fn to_rat_point(point: &[Int]) -> Vec<Rat> {
    point.iter().cloned().map(Rat::from_integer).collect()
}

/// Positive lcm of the absolute values, ignoring zero entries; 1 for an
/// empty or all-zero input.
pub fn lcm_positive<I>(values: I) -> Int
where
    I: IntoIterator<Item = Int>,
{
    let mut acc = Int::one();
    for v in values {
        if v.is_zero() {
            continue;
        }
        acc = acc.lcm(&v.abs());
    }
    acc
}

/// Positive lcm of the denominators of a sequence of rationals.
pub fn denominator_lcm<'a, I>(values: I) -> Int
where
    I: IntoIterator<Item = &'a Rat>,
{
    lcm_positive(values.into_iter().map(|r| r.denom().clone()))
}

/// Canonical text form: `p` for integers, `p/q` otherwise (q > 0, reduced).
pub fn format_rational(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` with `q > 0`. Returns a description of the defect on
/// failure.
pub fn parse_rational(s: &str) -> std::result::Result<Rat, String> {
    let (numer, denom) = match s.split_once('/') {
        None => (s, None),
        Some((n, d)) => (n, Some(d)),
    };
    let n: Int = numer
        .parse()
        .map_err(|_| format!("invalid integer `{numer}`"))?;
    let d: Int = match denom {
        None => Int::one(),
        Some(d) => d.parse().map_err(|_| format!("invalid integer `{d}`"))?,
    };
    if !d.is_positive() {
        return Err(format!("denominator must be positive, got `{d}`"));
    }
    Ok(Rat::new(n, d))
}
