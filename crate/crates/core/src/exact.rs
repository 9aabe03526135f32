//! Exact rationals and the extended line used for range endpoints.
//!
//! [`ExtendedRational`] adds two signed zeros and two signed infinities to the
//! rationals. The signed zeros only matter for reciprocals: `1/+0 = +inf` and
//! `1/-0 = -inf`. Numerically both zeros equal `0`.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Canonical exact rational (reduced, positive denominator).
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("reciprocal of unsigned zero")]
    ZeroReciprocal,
    #[error("indeterminate sum {0} + {1}")]
    Indeterminate(String, String),
    #[error("invalid number `{0}`")]
    Parse(String),
}

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `n` or `p/q` with `q > 0`; the result is reduced.
pub fn parse_rational(text: &str) -> Result<Rational, ArithError> {
    let bad = || ArithError::Parse(text.to_string());
    let parse_int = |s: &str| -> Result<BigInt, ArithError> {
        let digits = s.strip_prefix('-').unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        BigInt::from_str(s).map_err(|_| bad())
    };
    match text.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(text)?)),
        Some((p, q)) => {
            if q.starts_with('-') {
                return Err(bad());
            }
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(parse_int(p)?, q))
        }
    }
}

/// A rational extended by `±0` and `±inf`.
///
/// Order: `-inf < negatives < -0 < 0 < +0 < positives < +inf`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtendedRational {
    NegInf,
    Finite(Rational),
    NegZero,
    PosZero,
    PosInf,
}

use ExtendedRational::{Finite, NegInf, NegZero, PosInf, PosZero};

impl ExtendedRational {
    pub fn finite(numer: i64, denom: i64) -> Self {
        Finite(rational(numer, denom))
    }

    pub fn int(n: i64) -> Self {
        Finite(integer(n))
    }

    pub fn zero() -> Self {
        Finite(Rational::zero())
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            Finite(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, PosInf | NegInf)
    }

    /// Numerically `>= 0`; both signed zeros count as zero.
    pub fn is_nonnegative(&self) -> bool {
        match self {
            NegInf => false,
            Finite(x) => !x.is_negative(),
            NegZero | PosZero | PosInf => true,
        }
    }

    /// Numerically `<= 0`; both signed zeros count as zero.
    pub fn is_nonpositive(&self) -> bool {
        match self {
            PosInf => false,
            Finite(x) => !x.is_positive(),
            NegZero | PosZero | NegInf => true,
        }
    }

    /// Numeric comparison against a rational, with `±0` read as `0` and
    /// infinities as unbounded.
    pub fn cmp_numeric(&self, other: &Rational) -> Ordering {
        match self {
            NegInf => Ordering::Less,
            PosInf => Ordering::Greater,
            NegZero | PosZero => Rational::zero().cmp(other),
            Finite(x) => x.cmp(other),
        }
    }

    fn rank(&self) -> u8 {
        match self {
            NegInf => 0,
            Finite(x) if x.is_negative() => 1,
            NegZero => 2,
            Finite(x) if x.is_zero() => 3,
            PosZero => 4,
            Finite(_) => 5,
            PosInf => 6,
        }
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        Ok(match self {
            Finite(x) if x.is_zero() => return Err(ArithError::ZeroReciprocal),
            Finite(x) => Finite(x.recip()),
            PosInf => PosZero,
            PosZero => PosInf,
            NegInf => NegZero,
            NegZero => NegInf,
        })
    }

    /// Sum on the extended line. Opposite infinities and opposite signed
    /// zeros are indeterminate.
    pub fn add(&self, other: &Self) -> Result<Self, ArithError> {
        let indeterminate = || ArithError::Indeterminate(self.to_string(), other.to_string());
        Ok(match (self, other) {
            (PosInf, NegInf) | (NegInf, PosInf) => return Err(indeterminate()),
            (PosZero, NegZero) | (NegZero, PosZero) => return Err(indeterminate()),
            (PosInf, _) | (_, PosInf) => PosInf,
            (NegInf, _) | (_, NegInf) => NegInf,
            (Finite(x), Finite(y)) => Finite(x + y),
            (Finite(x), z) | (z, Finite(x)) if x.is_zero() => z.clone(),
            (Finite(x), _) | (_, Finite(x)) => Finite(x.clone()),
            (PosZero, PosZero) => PosZero,
            (NegZero, NegZero) => NegZero,
        })
    }

    pub fn neg(&self) -> Self {
        match self {
            NegInf => PosInf,
            PosInf => NegInf,
            NegZero => PosZero,
            PosZero => NegZero,
            Finite(x) => Finite(-x),
        }
    }
}

impl From<Rational> for ExtendedRational {
    fn from(x: Rational) -> Self {
        Finite(x)
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Finite(x), Finite(y)) => x.cmp(y),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => f.write_str("-inf"),
            PosInf => f.write_str("+inf"),
            NegZero => f.write_str("-0"),
            PosZero => f.write_str("+0"),
            Finite(x) => write!(f, "{}", x),
        }
    }
}

impl FromStr for ExtendedRational {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "+inf" => PosInf,
            "-inf" => NegInf,
            "+0" => PosZero,
            "-0" => NegZero,
            _ => Finite(parse_rational(s)?),
        })
    }
}

/// Largest integer `<= x`.
pub fn floor(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

/// Smallest integer `>= x`.
pub fn ceil(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// `x = 1/n` for some non-zero integer `n`.
pub fn is_unit_fraction(x: &Rational) -> bool {
    !x.is_zero() && x.numer().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    fn x(s: &str) -> ExtendedRational {
        s.parse().unwrap()
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(x("5/4").recip().unwrap(), x("4/5"));
        assert_eq!(PosInf.recip().unwrap(), PosZero);
        assert_eq!(NegZero.recip().unwrap(), NegInf);
        assert_eq!(x("-2/3").recip().unwrap(), x("-3/2"));
        assert_eq!(x("0").recip(), Err(ArithError::ZeroReciprocal));
    }

    #[test]
    fn addition_examples() {
        assert_eq!(x("1/3").add(&x("-1")).unwrap(), x("-2/3"));
        assert_eq!(PosZero.add(&x("-1")).unwrap(), x("-1"));
        assert_eq!(PosInf.add(&x("7/2")).unwrap(), PosInf);
        assert_eq!(PosZero.add(&PosZero).unwrap(), PosZero);
        assert_eq!(NegZero.add(&NegZero).unwrap(), NegZero);
        assert_eq!(x("0").add(&PosZero).unwrap(), PosZero);
        assert!(PosInf.add(&NegInf).is_err());
        assert!(PosZero.add(&NegZero).is_err());
    }

    #[test]
    fn order_examples() {
        assert!(NegZero < PosZero);
        assert!(x("1/3") < x("5/4"));
        assert!(x("-1") < PosInf);
        let sorted = vec![NegInf, x("-1"), NegZero, x("0"), PosZero, x("1/2"), PosInf];
        let mut shuffled: Vec<_> = sorted.iter().rev().cloned().collect();
        shuffled.sort();
        assert_eq!(shuffled, sorted);
    }

    #[test]
    fn text_form() {
        for s in ["3/4", "-7", "0", "+0", "-0", "+inf", "-inf", "-1/3"] {
            assert_eq!(x(s).to_string(), s);
        }
        assert_eq!(x("2/4").to_string(), "1/2");
        for bad in ["", "1/0", "1/-2", "inf", "--1", "1.5", "a"] {
            assert!(bad.parse::<ExtendedRational>().is_err(), "{bad}");
        }
    }

    #[test]
    fn signs_treat_zeros_numerically() {
        assert!(NegZero.is_nonnegative());
        assert!(PosZero.is_nonpositive());
        assert!(!x("-1/2").is_nonnegative());
        assert!(PosInf.is_nonnegative() && !PosInf.is_nonpositive());
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(floor(&rational(-5, 4)), BigInt::from(-2));
        assert_eq!(ceil(&rational(-1, 3)), BigInt::from(0));
        assert_eq!(ceil(&rational(5, 4)), BigInt::from(2));
        assert!(is_unit_fraction(&rational(-1, 7)));
        assert!(!is_unit_fraction(&rational(2, 7)));
    }
}
