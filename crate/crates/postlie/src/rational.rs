//! Exact rational coefficients and the small pieces of integer combinatorics
//! the rest of the crate needs.
//!
//! Everything is built on [`num_rational::BigRational`]; no floating point
//! appears anywhere in the crate.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational number used for every coefficient in the crate.
pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `n / d`.
///
/// # Panics
///
/// Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer as a rational.
pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `k!` as a big integer.
pub fn factorial(k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= BigInt::from(i);
    }
    acc
}

/// Binomial coefficient `C(n, k)` as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Renders a rational in the canonical reduced form used by all text output:
/// `p/q` with `q > 0`, or just `p` when the denominator is one.
pub fn render_rational(r: &Rational) -> String {
    use alloc::format;
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Error produced when a string is not a valid rational literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    input: String,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal `{}`", self.input)
    }
}

impl core::error::Error for ParseRationalError {}

/// Parses a rational from the `p/q` (or plain integer `p`) text form.
///
/// The result is always reduced and carries a positive denominator, so
/// rendering it back with [`render_rational`] yields a canonical string.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError {
        input: String::from(text),
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let parse_int = |s: &str| -> Result<BigInt, ParseRationalError> {
        let bytes = s.as_bytes();
        let digits = match bytes.first() {
            Some(b'-') | Some(b'+') => &bytes[1..],
            _ => bytes,
        };
        if digits.is_empty() || !digits.iter().all(u8::is_ascii_digit) {
            return Err(err());
        }
        s.parse::<BigInt>().map_err(|_| err())
    };
    let numer = parse_int(num)?;
    let denom = match den {
        Some(d) => parse_int(d)?,
        None => BigInt::one(),
    };
    if denom.is_zero() || denom.is_negative() {
        return Err(err());
    }
    Ok(Rational::new(numer, denom))
}

/// Bernoulli numbers `B_0, B_1, B_2, ...` in the convention `B_1 = -1/2`,
/// computed on demand and cached.
///
/// The cache is append-only: `get(k)` extends the table up to `k` the first
/// time it is needed and serves all later queries from the stored prefix.
#[derive(Debug, Clone, Default)]
pub struct BernoulliCache {
    values: Vec<Rational>,
}

impl BernoulliCache {
    /// Creates an empty cache.
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns `B_k`, extending the cache if necessary.
    pub fn get(&mut self, k: usize) -> Rational {
        while self.values.len() <= k {
            let m = self.values.len();
            let value = if m == 0 {
                Rational::one()
            } else {
                // B_m = -1/(m+1) * sum_{j=0}^{m-1} C(m+1, j) B_j
                let mut sum = Rational::zero();
                for (j, b) in self.values.iter().enumerate() {
                    sum += Rational::from_integer(binomial(m + 1, j)) * b;
                }
                -sum / Rational::from_integer(BigInt::from(m as i64 + 1))
            };
            self.values.push(value);
        }
        self.values[k].clone()
    }
}

/// Returns the Bernoulli number `B_k` (convention `B_1 = -1/2`).
pub fn bernoulli(k: usize) -> Rational {
    BernoulliCache::new().get(k)
}
