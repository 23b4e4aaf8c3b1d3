//! Scalar abstraction shared by every measure.
//!
//! Combinatorial measures are written once over [`Scalar`] and instantiated
//! with an exact rational type (the default for axiom checking) or with a
//! float type. Float instances compare with an absolute tolerance so that a
//! strict inequality `a > b` means `a - b > tol`.

use std::fmt::{self, Debug, Display};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Absolute tolerance used for `f64` comparisons.
pub const F64_TOLERANCE: f64 = 1e-9;
/// Absolute tolerance used for `f32` comparisons.
pub const F32_TOLERANCE: f32 = 1e-5;

/// How values of a scalar type are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScoreKind {
    Exact,
    Float,
}

impl Display for ScoreKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScoreKind::Exact => f.write_str("exact"),
            ScoreKind::Float => f.write_str("float"),
        }
    }
}

pub trait Scalar:
    Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    const KIND: ScoreKind;

    fn from_count(count: &BigUint) -> Self;

    fn of_usize(value: usize) -> Self {
        Self::from_u64(value as u64).expect("every scalar represents small integers")
    }

    /// Strict comparison `self > other`, tolerance-aware for floats.
    fn exceeds(&self, other: &Self) -> bool;

    /// Equality, tolerance-aware for floats.
    fn same(&self, other: &Self) -> bool;

    fn to_score(&self) -> Score;

    fn approx_f64(&self) -> f64;
}

impl Scalar for BigRational {
    const KIND: ScoreKind = ScoreKind::Exact;

    fn from_count(count: &BigUint) -> Self {
        BigRational::from_integer(BigInt::from(count.clone()))
    }

    fn exceeds(&self, other: &Self) -> bool {
        self > other
    }

    fn same(&self, other: &Self) -> bool {
        self == other
    }

    fn to_score(&self) -> Score {
        Score::Exact(self.clone())
    }

    fn approx_f64(&self) -> f64 {
        ratio_to_f64(self)
    }
}

impl Scalar for f64 {
    const KIND: ScoreKind = ScoreKind::Float;

    fn from_count(count: &BigUint) -> Self {
        count.to_f64().unwrap_or(f64::INFINITY)
    }

    fn exceeds(&self, other: &Self) -> bool {
        self - other > F64_TOLERANCE
    }

    fn same(&self, other: &Self) -> bool {
        (self - other).abs() <= F64_TOLERANCE
    }

    fn to_score(&self) -> Score {
        Score::Float(*self)
    }

    fn approx_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    const KIND: ScoreKind = ScoreKind::Float;

    fn from_count(count: &BigUint) -> Self {
        count.to_f32().unwrap_or(f32::INFINITY)
    }

    fn exceeds(&self, other: &Self) -> bool {
        self - other > F32_TOLERANCE
    }

    fn same(&self, other: &Self) -> bool {
        (self - other).abs() <= F32_TOLERANCE
    }

    fn to_score(&self) -> Score {
        Score::Float(f64::from(*self))
    }

    fn approx_f64(&self) -> f64 {
        f64::from(*self)
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        return v;
    }
    // numerator/denominator too large for a direct conversion
    let (num, den) = (r.numer(), r.denom());
    let shift = num.bits().max(den.bits()).saturating_sub(1000);
    let n = (num >> shift).to_f64().unwrap_or(0.0);
    let d = (den >> shift).to_f64().unwrap_or(1.0);
    n / d
}

/// A type-erased centrality value, used in witnesses and reports.
#[derive(Debug, Clone, PartialEq)]
pub enum Score {
    Exact(BigRational),
    Float(f64),
}

impl Score {
    pub fn kind(&self) -> ScoreKind {
        match self {
            Score::Exact(_) => ScoreKind::Exact,
            Score::Float(_) => ScoreKind::Float,
        }
    }

    pub fn approx_f64(&self) -> f64 {
        match self {
            Score::Exact(r) => ratio_to_f64(r),
            Score::Float(x) => *x,
        }
    }

    /// Equality between two scores of the same kind (floats within tolerance).
    pub fn matches(&self, other: &Score) -> bool {
        match (self, other) {
            (Score::Exact(a), Score::Exact(b)) => a == b,
            (Score::Float(a), Score::Float(b)) => (a - b).abs() <= F64_TOLERANCE,
            _ => false,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Score::Exact(r) => r.is_negative(),
            Score::Float(x) => *x < 0.0,
        }
    }

    /// Renders exact values as reduced fractions and floats in shortest form.
    pub fn render(&self, decimals: Option<usize>) -> String {
        match (self, decimals) {
            (Score::Exact(r), None) => r.to_string(),
            (Score::Exact(r), Some(k)) => render_decimal(r, k),
            (Score::Float(x), None) => format!("{x}"),
            (Score::Float(x), Some(k)) => format!("{x:.k$}"),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Score::Exact(r) => serde_json::Value::String(r.to_string()),
            Score::Float(x) => serde_json::Number::from_f64(*x)
                .map(serde_json::Value::Number)
                .unwrap_or(serde_json::Value::Null),
        }
    }
}

impl Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(None))
    }
}

impl Serialize for Score {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Score::Exact(r) => serializer.serialize_str(&r.to_string()),
            Score::Float(x) => serializer.serialize_f64(*x),
        }
    }
}

/// Decimal rendering of a rational, rounded half away from zero to `digits` places.
pub fn render_decimal(r: &BigRational, digits: usize) -> String {
    let negative = r.is_negative();
    let r = r.abs();
    let scale = num_traits::pow(BigInt::from(10u32), digits);
    let scaled = r * BigRational::from_integer(scale.clone());
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let rounded = (scaled + half).floor().to_integer();
    let int_part = &rounded / &scale;
    let frac_part = &rounded % &scale;
    let sign = if negative && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
    }
}

/// Parses "p/q" or "p" into a rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> BigRational {
        BigRational::new(p.into(), r.into())
    }

    #[test]
    fn float_strictness_uses_tolerance() {
        assert!(!1.0f64.exceeds(&(1.0 - 1e-12)));
        assert!(1.0f64.exceeds(&(1.0 - 1e-6)));
        assert!(0.5f64.same(&(0.5 + 1e-10)));
    }

    #[test]
    fn exact_strictness_is_exact() {
        assert!(q(1, 3).exceeds(&q(333_333, 1_000_000)));
        assert!(!q(2, 4).exceeds(&q(1, 2)));
        assert!(q(2, 4).same(&q(1, 2)));
    }

    #[test]
    fn fractions_render_reduced() {
        assert_eq!(Score::Exact(q(74, 12)).to_string(), "37/6");
        assert_eq!(Score::Exact(q(6, 1)).to_string(), "6");
        assert_eq!(render_decimal(&q(37, 6), 3), "6.167");
        assert_eq!(render_decimal(&q(-1, 3), 2), "-0.33");
        assert_eq!(render_decimal(&q(5, 2), 0), "3");
    }

    #[test]
    fn parses_fraction_strings() {
        assert_eq!(parse_rational("37/6"), Some(q(37, 6)));
        assert_eq!(parse_rational(" 4 "), Some(q(4, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn huge_rationals_convert_to_float() {
        let big = num_traits::pow(BigInt::from(14), 400);
        let r = BigRational::new(big.clone() * 3, big);
        assert!((r.approx_f64() - 3.0).abs() < 1e-12);
    }
}
