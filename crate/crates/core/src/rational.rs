//! Exact rational scalars.
//!
//! All arithmetic in this crate runs over arbitrary-precision rationals so
//! that verification results are exact truths, never float approximations.
//! The scalar type is `num`'s [`BigRational`]; this module adds the small
//! construction and formatting helpers the rest of the crate leans on.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::BigRational;

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// The rational `n`.
pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// The rational `n / d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or a plain integer literal, e.g. `"-3/4"`, `"7"`.
pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    if let Some((_, den)) = t.split_once('/') {
        if den.trim().trim_start_matches('-').chars().all(|c| c == '0') {
            return Err(Error::Parse(format!("zero denominator in {t:?}")));
        }
    }
    t.parse::<BigRational>()
        .map_err(|_| Error::Parse(format!("bad rational literal {t:?}")))
}

/// Canonical display form: `"p/q"` in lowest terms, or just `"p"` for integers.
pub fn display(r: &Rational) -> String {
    r.to_string()
}
