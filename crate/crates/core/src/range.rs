//! Universal ranges `[[lower, upper]]` of algebraic tangles.
//!
//! Ranges are computed bottom-up over a [`TangleExpr`]. A rational tangle
//! `Q(x)` has the exact range `[[x, x]]`. Sums add endpoints once both sides
//! sit on the integer lattice (or one summand is an integer tangle, whose
//! tangle element is a power of the common base). Products widen both sides
//! to the inverse lattice `1/Z` and take the extremes of the harmonic
//! combinations of endpoints.

use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::{ceil, floor, ExtendedRational, Rational};
use crate::tangle::TangleExpr;

use ExtendedRational::{Finite, NegInf, NegZero, PosInf, PosZero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Range {
    lower: ExtendedRational,
    upper: ExtendedRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RangeError {
    #[error("lower endpoint {0} exceeds upper endpoint {1}")]
    Inverted(String, String),
    #[error("invalid range literal `{0}`")]
    Parse(String),
}

impl Range {
    pub fn new(lower: ExtendedRational, upper: ExtendedRational) -> Result<Self, RangeError> {
        if lower > upper {
            return Err(RangeError::Inverted(lower.to_string(), upper.to_string()));
        }
        Ok(Range { lower, upper })
    }

    pub fn point(x: Rational) -> Self {
        Range { lower: Finite(x.clone()), upper: Finite(x) }
    }

    pub fn unbounded() -> Self {
        Range { lower: NegInf, upper: PosInf }
    }

    pub fn lower(&self) -> &ExtendedRational {
        &self.lower
    }

    pub fn upper(&self) -> &ExtendedRational {
        &self.upper
    }

    /// Interval containment under the total order of the extended line.
    pub fn contains_range(&self, other: &Range) -> bool {
        self.lower <= other.lower && other.upper <= self.upper
    }

    /// Numeric containment of a rational, reading `±0` as `0`.
    pub fn contains_value(&self, x: &Rational) -> bool {
        self.lower.cmp_numeric(x).is_le() && self.upper.cmp_numeric(x).is_ge()
    }

    /// Contained in `[[0, +inf]]`, reading `±0` as `0`.
    pub fn is_nonnegative(&self) -> bool {
        self.lower.is_nonnegative()
    }

    /// Contained in `[[-inf, 0]]`, reading `±0` as `0`.
    pub fn is_nonpositive(&self) -> bool {
        self.upper.is_nonpositive()
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}]]", self.lower, self.upper)
    }
}

impl FromStr for Range {
    type Err = RangeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RangeError::Parse(s.to_string());
        let inner = s.trim().strip_prefix("[[").and_then(|r| r.strip_suffix("]]")).ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let lower = a.trim().parse().map_err(|_| bad())?;
        let upper = b.trim().parse().map_err(|_| bad())?;
        Range::new(lower, upper)
    }
}

fn int(n: BigInt) -> ExtendedRational {
    Finite(Rational::from_integer(n))
}

fn unit(n: BigInt) -> ExtendedRational {
    Finite(Rational::new(BigInt::one(), n))
}

/// Moves each endpoint outward to the integer lattice. Signed zeros count as
/// integers except on the side where they would shrink the interval.
pub fn widen_to_integer_lattice(r: &Range) -> Range {
    let lower = match &r.lower {
        Finite(x) => int(floor(x)),
        PosZero => ExtendedRational::zero(),
        other => other.clone(),
    };
    let upper = match &r.upper {
        Finite(x) => int(ceil(x)),
        NegZero => ExtendedRational::zero(),
        other => other.clone(),
    };
    Range { lower, upper }
}

/// Largest element of `{±1/n : n >= 1} ∪ {±0, ±inf}` that is `<= x`.
fn inverse_lattice_below(x: &ExtendedRational) -> ExtendedRational {
    match x {
        Finite(v) if v.is_zero() => NegZero,
        Finite(v) if v.is_positive() => {
            if *v >= Rational::one() {
                ExtendedRational::int(1)
            } else {
                unit(ceil(&v.recip()))
            }
        }
        Finite(v) => {
            if *v < -Rational::one() {
                NegInf
            } else {
                // -1/n <= v  <=>  n <= -1/v
                unit(-floor(&(-v.recip())))
            }
        }
        other => other.clone(),
    }
}

/// Smallest element of the inverse lattice that is `>= x`.
fn inverse_lattice_above(x: &ExtendedRational) -> ExtendedRational {
    inverse_lattice_below(&x.neg()).neg()
}

pub fn widen_to_inverse_lattice(r: &Range) -> Range {
    Range { lower: inverse_lattice_below(&r.lower), upper: inverse_lattice_above(&r.upper) }
}

/// `(x^-1 + y^-1)^-1`, or `None` when the combination is indeterminate.
fn harmonic(x: &ExtendedRational, y: &ExtendedRational) -> Option<ExtendedRational> {
    let s = x.recip().ok()?.add(&y.recip().ok()?).ok()?;
    s.recip().ok()
}

/// Range of a product from the ranges of its factors.
pub fn range_product(r1: &Range, r2: &Range) -> Range {
    let a = widen_to_inverse_lattice(r1);
    let b = widen_to_inverse_lattice(r2);
    let mut lo: Option<ExtendedRational> = None;
    let mut hi: Option<ExtendedRational> = None;
    for x in [&a.lower, &a.upper] {
        for y in [&b.lower, &b.upper] {
            let Some(h) = harmonic(x, y) else {
                return Range::unbounded();
            };
            if lo.as_ref().is_none_or(|l| h < *l) {
                lo = Some(h.clone());
            }
            if hi.as_ref().is_none_or(|u| h > *u) {
                hi = Some(h);
            }
        }
    }
    Range { lower: lo.expect("four corners"), upper: hi.expect("four corners") }
}

fn add_endpoint(x: &ExtendedRational, y: &ExtendedRational, fallback: ExtendedRational) -> ExtendedRational {
    x.add(y).unwrap_or(fallback)
}

fn add_ranges(r1: &Range, r2: &Range) -> Range {
    Range { lower: add_endpoint(&r1.lower, &r2.lower, NegInf), upper: add_endpoint(&r1.upper, &r2.upper, PosInf) }
}

/// Range of a sum. If either summand is an integer tangle the endpoints add
/// directly; otherwise both ranges are first widened to the integer lattice.
pub fn range_sum(r1: &Range, r2: &Range, t1: &TangleExpr, t2: &TangleExpr) -> Range {
    if t1.integer_leaf().is_some() || t2.integer_leaf().is_some() {
        add_ranges(r1, r2)
    } else {
        add_ranges(&widen_to_integer_lattice(r1), &widen_to_integer_lattice(r2))
    }
}

/// Sharper range of `Q(s/p) + Q(s/q)` for `p, q >= 2` and `s = ±1`:
/// `[[1/min, (max+1)/max]]`, mirrored for `s = -1`.
pub fn refine_inverse_sum(p: u64, q: u64, sign: i8) -> Option<Range> {
    if p < 2 || q < 2 || !(sign == 1 || sign == -1) {
        return None;
    }
    let (lo, hi) = (p.min(q), p.max(q));
    let lower = Finite(Rational::new(BigInt::one(), BigInt::from(lo)));
    let upper = Finite(Rational::new(BigInt::from(hi + 1), BigInt::from(hi)));
    Some(if sign == 1 { Range { lower, upper } } else { Range { lower: upper.neg(), upper: lower.neg() } })
}

/// `Some((p, q, sign))` when `t1 + t2` has the shape `Q(s/p) + Q(s/q)`.
fn inverse_sum_shape(t1: &TangleExpr, t2: &TangleExpr) -> Option<(u64, u64, i8)> {
    let (x, y) = (t1.leaf()?, t2.leaf()?);
    if !x.numer().abs().is_one() || x.numer() != y.numer() {
        return None;
    }
    let sign = if x.numer().is_positive() { 1 } else { -1 };
    Some((x.denom().to_u64()?, y.denom().to_u64()?, sign))
}

/// Universal range of an algebraic tangle. `refine` enables the sharper rule
/// for sums of two same-sign `[1/m]` tangles.
pub fn range_of_expr(t: &TangleExpr, refine: bool) -> Range {
    match t {
        TangleExpr::Rational(x) => Range::point(x.clone()),
        TangleExpr::Sum(a, b) => {
            if refine {
                if let Some(r) = inverse_sum_shape(a, b).and_then(|(p, q, s)| refine_inverse_sum(p, q, s)) {
                    return r;
                }
            }
            range_sum(&range_of_expr(a, refine), &range_of_expr(b, refine), a, b)
        }
        TangleExpr::Product(a, b) => range_product(&range_of_expr(a, refine), &range_of_expr(b, refine)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::parse_tangle;

    fn r(s: &str) -> Range {
        s.parse().unwrap()
    }

    fn t(s: &str) -> TangleExpr {
        parse_tangle(s).unwrap()
    }

    #[test]
    fn expression_examples() {
        assert_eq!(range_of_expr(&t("Q(1/3)+Q(1/4)"), false), r("[[0, 2]]"));
        assert_eq!(range_of_expr(&t("Q(1/3)+Q(1/4)"), true), r("[[1/3, 5/4]]"));
        assert_eq!(range_of_expr(&t("((Q(1/3)+Q(1/4))*Q(-1))+Q(2)"), true), r("[[1, 5/2]]"));
        assert_eq!(range_of_expr(&t("Q(7/3)"), false), r("[[7/3, 7/3]]"));
    }

    #[test]
    fn sum_examples() {
        let (a, b) = (t("Q(1/3)"), t("Q(1/4)"));
        assert_eq!(range_sum(&r("[[0, 1]]"), &r("[[0, 1]]"), &a, &b), r("[[0, 2]]"));
        let x = t("Q(1/3)*Q(-1)");
        assert_eq!(range_sum(&r("[[-1, 1/2]]"), &r("[[2, 2]]"), &x, &t("Q(2)")), r("[[1, 5/2]]"));
        // Widen both to [[0, 2]], then add.
        assert_eq!(range_sum(&r("[[1/3, 5/4]]"), &r("[[1/3, 5/4]]"), &x, &x), r("[[0, 4]]"));
        assert_eq!(range_sum(&r("[[1, +inf]]"), &r("[[2, 2]]"), &x, &t("Q(2)")), r("[[3, +inf]]"));
    }

    #[test]
    fn product_examples() {
        // Corners: (3 + (-1))^-1 = 1/2 and (+0 + (-1))^-1 = -1.
        assert_eq!(range_product(&r("[[1/3, +inf]]"), &r("[[-1, -1]]")), r("[[-1, 1/2]]"));
        assert_eq!(range_product(&r("[[1/3, 1/3]]"), &r("[[1/4, 1/4]]")), r("[[1/7, 1/7]]"));
        assert_eq!(range_product(&r("[[1/2, 1/2]]"), &r("[[-1/2, -1/2]]")), Range::unbounded());
    }

    #[test]
    fn integer_widening_examples() {
        assert_eq!(widen_to_integer_lattice(&r("[[1/3, 5/4]]")), r("[[0, 2]]"));
        assert_eq!(widen_to_integer_lattice(&r("[[2, 2]]")), r("[[2, 2]]"));
        assert_eq!(widen_to_integer_lattice(&r("[[-5/4, -1/3]]")), r("[[-2, 0]]"));
        assert_eq!(widen_to_integer_lattice(&r("[[+0, +inf]]")), r("[[0, +inf]]"));
        assert_eq!(widen_to_integer_lattice(&r("[[-inf, -0]]")), r("[[-inf, 0]]"));
    }

    #[test]
    fn inverse_widening_examples() {
        assert_eq!(widen_to_inverse_lattice(&r("[[1/3, 5/4]]")), r("[[1/3, +inf]]"));
        assert_eq!(widen_to_inverse_lattice(&r("[[-1, -1]]")), r("[[-1, -1]]"));
        assert_eq!(widen_to_inverse_lattice(&r("[[2/5, 3/4]]")), r("[[1/3, 1]]"));
        assert_eq!(widen_to_inverse_lattice(&r("[[0, 0]]")), r("[[-0, +0]]"));
        assert_eq!(widen_to_inverse_lattice(&r("[[-3/4, -2/5]]")), r("[[-1, -1/3]]"));
        assert_eq!(widen_to_inverse_lattice(&r("[[-3, 3]]")), r("[[-inf, +inf]]"));
        assert_eq!(widen_to_inverse_lattice(&r("[[5/2, 7]]")), r("[[1, +inf]]"));
    }

    #[test]
    fn refined_sum_examples() {
        assert_eq!(refine_inverse_sum(3, 4, 1).unwrap(), r("[[1/3, 5/4]]"));
        assert_eq!(refine_inverse_sum(2, 2, 1).unwrap(), r("[[1/2, 3/2]]"));
        assert_eq!(refine_inverse_sum(3, 4, -1).unwrap(), r("[[-5/4, -1/3]]"));
        assert!(refine_inverse_sum(1, 4, 1).is_none());
        // Mixed signs do not have the refined shape.
        assert_eq!(range_of_expr(&t("Q(1/3)+Q(-1/4)"), true), range_of_expr(&t("Q(1/3)+Q(-1/4)"), false));
    }

    #[test]
    fn literal_round_trip_and_errors() {
        assert_eq!(r("[[ -0 ,  +inf ]]").to_string(), "[[-0, +inf]]");
        assert!("[[2, 1]]".parse::<Range>().is_err());
        assert!("[2, 1]".parse::<Range>().is_err());
        assert!("[[1; 2]]".parse::<Range>().is_err());
    }

    #[test]
    fn refinement_is_not_monotone_through_products() {
        // The product rule is not monotone in its inputs: the refined nested
        // example is not inside its plain range.
        let e = t("(Q(1/3) + Q(1/4)) * Q(-1) + Q(2)");
        assert_eq!(range_of_expr(&e, false), r("[[1, 2]]"));
        assert_eq!(range_of_expr(&e, true), r("[[1, 5/2]]"));
        assert_eq!(range_product(&r("[[0, 2]]"), &r("[[-1, -1]]")), r("[[-1, -0]]"));
        assert_eq!(range_product(&r("[[1/3, 5/4]]"), &r("[[-1, -1]]")), r("[[-1, 1/2]]"));
    }
}
