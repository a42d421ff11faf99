//! Arbitrary-precision rational scalars and their text form.
//!
//! The ground field everywhere is the exact rationals. `Rat` is
//! `num_rational::BigRational`, which already keeps values in lowest terms
//! with a positive denominator, so the canonical form required elsewhere
//! ("lowest terms, denominator > 0, zero is 0/1") holds by construction.
//!
//! The text form used in every JSON document and on the command line is
//! `"p/q"` with the sign on the numerator and `/q` omitted when `q = 1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rat = num_rational::BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a rational. Panics if `d == 0`; use [`parse_rational`] for
/// untrusted input.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Format a rational as `p/q`, omitting `/q` when the denominator is 1.
pub fn format_rational(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p` or `p/q` (optional leading sign on `p`). Rejects `q = 0`.
pub fn parse_rational(text: &str) -> Result<Rat> {
    parse_rational_at(text, 0)
}

fn parse_rational_at(text: &str, offset: usize) -> Result<Rat> {
    let err = |pos: usize, message: &str| Error::Parse {
        position: offset + pos,
        message: message.to_string(),
    };
    let trimmed = text.trim();
    let lead = text.len() - text.trim_start().len();
    if trimmed.is_empty() {
        return Err(err(0, "empty rational"));
    }
    let (num_str, den_str) = match trimmed.find('/') {
        Some(slash) => (&trimmed[..slash], Some((&trimmed[slash + 1..], slash + 1))),
        None => (trimmed, None),
    };
    let numer: BigInt = num_str
        .trim()
        .parse()
        .map_err(|_| err(lead, "invalid integer numerator"))?;
    let denom: BigInt = match den_str {
        None => BigInt::one(),
        Some((s, pos)) => s
            .trim()
            .parse()
            .map_err(|_| err(lead + pos, "invalid integer denominator"))?,
    };
    if denom.is_zero() {
        return Err(err(
            lead + den_str.map(|(_, p)| p).unwrap_or(0),
            "zero denominator",
        ));
    }
    Ok(Rat::new(numer, denom))
}

/// Parse a comma-separated list of rationals. Error positions refer to the
/// original string.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rat>> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0usize;
    for piece in text.split(',') {
        out.push(parse_rational_at(piece, offset)?);
        offset += piece.len() + 1;
    }
    Ok(out)
}

/// `r^e` for a possibly negative exponent; `r` must be nonzero when `e < 0`.
pub fn rat_pow(r: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow::pow(r.clone(), e as usize)
    } else {
        num_traits::pow::pow(r.recip(), (-e) as usize)
    }
}

/// Binomial coefficient with a possibly negative upper index, by the
/// polynomial definition `p(p-1)...(p-q+1)/q!`. Zero when `q < 0`. For
/// `p >= 0` this agrees with the combinatorial value (zero when `q > p`).
pub fn binom(p: i64, q: i64) -> BigInt {
    if q < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..q {
        num *= BigInt::from(p - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    let mut out = BigInt::one();
    for i in 2..=n {
        out *= BigInt::from(i);
    }
    out
}
