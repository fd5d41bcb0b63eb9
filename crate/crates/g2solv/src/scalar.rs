//! Scalar fields used throughout: exact arbitrary-precision rationals, the
//! quadratic extension ℚ(α) with α² = −2 (representing i√2), and double
//! precision behind a single trait.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact rational scalar (arbitrary precision, always reduced).
pub type Rational = BigRational;

/// Tolerance below which a double-precision value counts as zero.
pub const F64_ZERO_TOLERANCE: f64 = 1e-10;

/// Field of coefficients for forms, matrices and spinors.
///
/// Implemented by [`Rational`], [`QuadExt`] and `f64`. The two exact fields
/// report `EXACT = true`; `f64` uses a tolerance for zero tests.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// True when arithmetic is exact (zero tests need no tolerance).
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    /// The fraction `num/den`; panics if `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// Magnitude estimate for pivot selection and residual reporting.
    fn abs_hint(&self) -> f64;
    /// Exact square root if one exists within the field.
    fn try_sqrt(&self) -> Option<Self>;
    /// Serialization per the report schema (rationals as `"p/q"` strings,
    /// quadratic elements as `{"a": "p/q", "b": "p/q"}`, doubles as numbers).
    fn to_json(&self) -> Value;

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }
}

/// Formats a rational canonically as `p/q` with positive `q`.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p`, `p/q` or a decimal-free signed integer string.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|e| format!("invalid rational '{s}': {e}"))
}

fn bigint_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r.clone() * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact square root of a rational, if the rational is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = bigint_sqrt_exact(r.numer())?;
    let d = bigint_sqrt_exact(r.denom())?;
    Some(Rational::new(n, d))
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn from_int(n: i64) -> Self {
        Rational::from_integer(n.into())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(num.into(), den.into())
    }
    fn is_zero(&self) -> bool {
        <Rational as Zero>::is_zero(self)
    }
    fn abs_hint(&self) -> f64 {
        self.to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
    }
    fn try_sqrt(&self) -> Option<Self> {
        rational_sqrt(self)
    }
    fn to_json(&self) -> Value {
        Value::String(rational_string(self))
    }
}

/// Element `a + b·α` of the quadratic extension ℚ(α), α² = −2.
///
/// The norm `a² + 2b²` is positive definite, so every nonzero element is
/// invertible and the type is a field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadExt { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadExt { a, b: <Rational as Scalar>::zero() }
    }

    /// The generator α with α² = −2.
    pub fn alpha() -> Self {
        QuadExt { a: <Rational as Scalar>::zero(), b: <Rational as Scalar>::one() }
    }

    /// Conjugation `a + bα ↦ a − bα`.
    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a² + 2b²` (equals the element times its conjugate).
    pub fn norm(&self) -> Rational {
        &self.a * &self.a + Rational::from_int(2) * &self.b * &self.b
    }

    pub fn is_rational(&self) -> bool {
        <Rational as Scalar>::is_zero(&self.b)
    }
}

impl Add for QuadExt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        QuadExt { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl Sub for QuadExt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        QuadExt { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl Mul for QuadExt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        // (a + bα)(c + dα) = ac − 2bd + (ad + bc)α
        let two = Rational::from_int(2);
        QuadExt {
            a: &self.a * &rhs.a - two * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Div for QuadExt {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let n = rhs.norm();
        assert!(!<Rational as Scalar>::is_zero(&n), "division by zero in QuadExt");
        let inv = QuadExt { a: rhs.a / &n, b: -rhs.b / &n };
        self * inv
    }
}

impl Neg for QuadExt {
    type Output = Self;
    fn neg(self) -> Self {
        QuadExt { a: -self.a, b: -self.b }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if <Rational as Scalar>::is_zero(&self.b) {
            write!(f, "{}", self.a)
        } else if <Rational as Scalar>::is_zero(&self.a) {
            write!(f, "{}α", self.b)
        } else {
            write!(f, "{} + {}α", self.a, self.b)
        }
    }
}

impl Scalar for QuadExt {
    const EXACT: bool = true;

    fn zero() -> Self {
        QuadExt::from_rational(<Rational as Scalar>::zero())
    }
    fn one() -> Self {
        QuadExt::from_rational(<Rational as Scalar>::one())
    }
    fn from_int(n: i64) -> Self {
        QuadExt::from_rational(<Rational as Scalar>::from_int(n))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        QuadExt::from_rational(<Rational as Scalar>::from_ratio(num, den))
    }
    fn is_zero(&self) -> bool {
        <Rational as Scalar>::is_zero(&self.a) && <Rational as Scalar>::is_zero(&self.b)
    }
    fn abs_hint(&self) -> f64 {
        self.norm().to_f64().map(f64::sqrt).unwrap_or(f64::INFINITY)
    }
    fn try_sqrt(&self) -> Option<Self> {
        // Solve (u + vα)² = a + bα: u² − 2v² = a and 2uv = b.
        let two = Rational::from_int(2);
        let four = Rational::from_int(4);
        if <Rational as Scalar>::is_zero(&self.b) {
            if let Some(u) = rational_sqrt(&self.a) {
                return Some(QuadExt::from_rational(u));
            }
            let v2 = -&self.a / &two;
            if let Some(v) = rational_sqrt(&v2) {
                return Some(QuadExt::new(<Rational as Scalar>::zero(), v));
            }
            return None;
        }
        // v² = (−a ± √(a² + 2b²)) / 4 must be a rational square with v ≠ 0.
        let disc = rational_sqrt(&self.norm())?;
        for sign in [1i64, -1] {
            let v2 = (-&self.a + Rational::from_int(sign) * &disc) / &four;
            if let Some(v) = rational_sqrt(&v2) {
                if !<Rational as Scalar>::is_zero(&v) {
                    let u = &self.b / (&two * &v);
                    return Some(QuadExt::new(u, v));
                }
            }
        }
        None
    }
    fn to_json(&self) -> Value {
        json!({ "a": rational_string(&self.a), "b": rational_string(&self.b) })
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(n: i64) -> Self {
        n as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }
    fn is_zero(&self) -> bool {
        self.abs() < F64_ZERO_TOLERANCE
    }
    fn abs_hint(&self) -> f64 {
        self.abs()
    }
    fn try_sqrt(&self) -> Option<Self> {
        if *self >= -F64_ZERO_TOLERANCE {
            Some(self.max(0.0).sqrt())
        } else {
            None
        }
    }
    fn to_json(&self) -> Value {
        json!(self)
    }
}

/// Converts an exact rational to `f64` (used when handing exact connection
/// data to the numeric solver).
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        <Rational as Scalar>::from_ratio(n, d)
    }

    #[test]
    fn rational_sqrt_perfect_squares() {
        assert_eq!(rational_sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(rational_sqrt(&q(2, 1)), None);
        assert_eq!(rational_sqrt(&q(-1, 1)), None);
        assert_eq!(rational_sqrt(&q(0, 1)), Some(q(0, 1)));
    }

    #[test]
    fn quadext_alpha_squares_to_minus_two() {
        let a = QuadExt::alpha();
        assert_eq!(a.clone() * a, QuadExt::from_int(-2));
    }

    #[test]
    fn quadext_sqrt_roundtrip() {
        // (1 + α)² = 1 − 2 + 2α = −1 + 2α
        let x = QuadExt::new(q(-1, 1), q(2, 1));
        let r = x.try_sqrt().expect("square root exists");
        assert_eq!(r.clone() * r, x);
        assert_eq!(QuadExt::from_int(-2).try_sqrt(), Some(QuadExt::alpha()));
        assert_eq!(QuadExt::from_int(9).try_sqrt(), Some(QuadExt::from_int(3)));
    }

    #[test]
    fn json_shapes() {
        assert_eq!(q(-2, 5).to_json(), Value::String("-2/5".into()));
        assert_eq!(
            QuadExt::new(q(1, 2), q(-3, 1)).to_json(),
            serde_json::json!({"a": "1/2", "b": "-3/1"})
        );
    }

    fn arb_quadext() -> impl Strategy<Value = QuadExt> {
        (-20i64..20, 1i64..8, -20i64..20, 1i64..8)
            .prop_map(|(an, ad, bn, bd)| QuadExt::new(q(an, ad), q(bn, bd)))
    }

    proptest! {
        #[test]
        fn quadext_field_axioms(x in arb_quadext(), y in arb_quadext(), z in arb_quadext()) {
            let assoc = (x.clone() * y.clone()) * z.clone() == x.clone() * (y.clone() * z.clone());
            prop_assert!(assoc);
            let distr = x.clone() * (y.clone() + z.clone())
                == x.clone() * y.clone() + x.clone() * z.clone();
            prop_assert!(distr);
            prop_assert_eq!(
                x.clone() * x.conj(),
                QuadExt::from_rational(x.norm())
            );
            if !Scalar::is_zero(&x) {
                let inv = <QuadExt as Scalar>::one() / x.clone();
                prop_assert_eq!(x.clone() * inv, <QuadExt as Scalar>::one());
            }
        }
    }
}
