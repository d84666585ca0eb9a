//! Scalar abstraction shared by the exact (rational) and floating code paths.
//!
//! Everything that is linear in `λ` (coroot pairings, lattice lengths, Cauchy and
//! arrow weights) is written once against [`Scalar`] and runs with either `f64`
//! or [`Rational`]. Eigen-solves stay in `f64`.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + Send + Sync + 'static
{
    fn to_f64(&self) -> f64;

    /// Relative slack used to decide that two values coincide in the
    /// degenerate-case reductions. Zero for exact arithmetic.
    fn equality_tol() -> Self;

    fn from_i64(v: i64) -> Self;

    fn two() -> Self {
        Self::one() + Self::one()
    }

    /// `|a - b| <= tol * (1 + |b|)`.
    fn near(&self, other: &Self, tol: &Self) -> bool {
        let diff = (self.clone() - other.clone()).abs();
        diff <= tol.clone() * (Self::one() + other.abs())
    }

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if a <= b {
            a
        } else {
            b
        }
    }
}

impl Scalar for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }

    fn equality_tol() -> Self {
        1e-10
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl Scalar for Rational {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn equality_tol() -> Self {
        Rational::zero()
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
}

/// Exact conversion of a finite float (every finite `f64` is a dyadic rational).
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_f64(x)
}

/// Parses `"7"`, `"-3/4"` or a plain decimal such as `"2.125"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (sign, body) = match text.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = digits.parse().ok()?;
    let d = num_traits::pow(BigInt::from(10), frac_part.len());
    Some(Rational::new(n * BigInt::from(sign), d))
}

pub fn max_abs<T: Scalar>(values: &[T]) -> T {
    values
        .iter()
        .map(|v| v.abs())
        .fold(T::zero(), T::max_of)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/4"), Some(Rational::new(3.into(), 4.into())));
        assert_eq!(parse_rational("-2.5"), Some(Rational::new((-5).into(), 2.into())));
        assert_eq!(parse_rational("6"), Some(<Rational as Scalar>::from_i64(6)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("e2"), None);
    }

    #[test]
    fn near_is_exact_for_rationals() {
        let a = Rational::new(1.into(), 3.into());
        let b = Rational::new(1.into(), 3.into());
        assert!(a.near(&b, &Rational::equality_tol()));
        let c = Rational::new(1000001.into(), 3000000.into());
        assert!(!a.near(&c, &Rational::equality_tol()));
        assert!(1.0f64.near(&(1.0 + 1e-12), &f64::equality_tol()));
    }
}
