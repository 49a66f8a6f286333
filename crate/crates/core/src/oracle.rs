//! Exact rational arithmetic, rational square roots and high-precision
//! reference constants.
//!
//! Everything else in the crate is checked against this module: sexagesimal
//! digit strings are converted to [`ExactRational`] and compared here.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a nonpositive value {0}")]
    NonPositiveRadicand(ExactRational),
    #[error("relative tolerance {0} outside (0, 1e-6]")]
    BadTolerance(ExactRational),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("unknown constant {0:?} (expected pi, pi_over_3, pi_over_180 or deg_per_radian)")]
    UnknownConstant(String),
}

/// Arbitrary precision fraction, always in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    /// `numer/denom`. Panics if `denom` is zero; meant for literals.
    pub fn new(numer: i64, denom: i64) -> Self {
        ExactRational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Result<Self, OracleError> {
        if denom.is_zero() {
            return Err(OracleError::DivisionByZero);
        }
        Ok(ExactRational(BigRational::new(numer, denom)))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        ExactRational(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Nearest integer, halves rounded away from zero.
    pub fn round(&self) -> BigInt {
        self.0.round().to_integer()
    }

    pub fn recip(&self) -> Result<Self, OracleError> {
        if self.is_zero() {
            return Err(OracleError::DivisionByZero);
        }
        Ok(ExactRational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, OracleError> {
        if rhs.is_zero() {
            return Err(OracleError::DivisionByZero);
        }
        Ok(ExactRational(&self.0 / &rhs.0))
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn pow(&self, exp: i32) -> Self {
        ExactRational(num_traits::Pow::pow(&self.0, exp))
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering with exactly `places` fractional digits, rounded
    /// half away from zero.
    pub fn to_decimal(&self, places: usize) -> String {
        let scale = BigInt::from(10u32).pow(places as u32);
        let scaled = (&self.0 * BigRational::from_integer(scale.clone())).round().to_integer();
        let negative = scaled.sign() == Sign::Minus;
        let (int_part, frac_part) = scaled.abs().div_rem(&scale);
        let sign = if negative { "-" } else { "" };
        if places == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = places)
        }
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for ExactRational {
    fn from(r: BigRational) -> Self {
        ExactRational(r)
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        ExactRational::from_integer(n)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `n`, `n/d` and decimal `i.fff`, each with an optional sign.
impl FromStr for ExactRational {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || OracleError::Parse(s.to_string());
        let t = s.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            return ExactRational::from_bigints(n, d);
        }
        let (negative, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let digits = format!("{int_part}{frac_part}");
        let numer: BigInt = digits.parse().map_err(|_| err())?;
        let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
        let value = ExactRational(BigRational::new(numer, denom));
        Ok(if negative { -value } else { value })
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor, like BigRational; use checked_div for user input.
forward_binop!(Div, div);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rational_arith(
    a: &ExactRational,
    b: &ExactRational,
    op: ArithOp,
) -> Result<ExactRational, OracleError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

/// A rational value that may be an approximation (square roots of
/// non-squares, anything involving modern pi).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measure {
    pub value: ExactRational,
    pub exact: bool,
}

impl Measure {
    pub fn exact(value: ExactRational) -> Self {
        Measure { value, exact: true }
    }

    pub fn approx(value: ExactRational) -> Self {
        Measure { value, exact: false }
    }

    pub fn map(self, f: impl FnOnce(ExactRational) -> ExactRational) -> Self {
        Measure { value: f(self.value), exact: self.exact }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "{}", self.value)
        } else {
            write!(f, "≈{}", self.value.to_decimal(12))
        }
    }
}

/// 10^-15, the tolerance used by the geometry code for inexact roots.
pub fn default_sqrt_tolerance() -> ExactRational {
    ExactRational::new(1, 1_000_000_000_000_000)
}

fn perfect_square_root(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn bit_length(n: &BigInt) -> u64 {
    n.bits()
}

/// Square root of a positive rational.
///
/// Exact when numerator and denominator (in lowest terms) are both perfect
/// squares. Otherwise Newton's iteration `x <- (x + q/x)/2` from `q/2`
/// (or 1 when `q < 1`), with every iterate rounded onto a dyadic grid fine
/// enough for `rel_tol`, until `|x^2 - q|/q < rel_tol`.
pub fn sqrt_exact_or_approx(
    q: &ExactRational,
    rel_tol: &ExactRational,
) -> Result<Measure, OracleError> {
    if !q.is_positive() {
        return Err(OracleError::NonPositiveRadicand(q.clone()));
    }
    if !rel_tol.is_positive() || *rel_tol > ExactRational::new(1, 1_000_000) {
        return Err(OracleError::BadTolerance(rel_tol.clone()));
    }
    if let (Some(n), Some(d)) = (perfect_square_root(q.numer()), perfect_square_root(q.denom())) {
        return Ok(Measure::exact(ExactRational(BigRational::new(n, d))));
    }

    // Iterates live on the grid 2^-k as integers X = x * 2^k, with k large
    // enough that rounding never disturbs the relative tolerance:
    // sqrt(q) >= 1/sqrt(denom).
    let tol_bits = bit_length(&rel_tol.recip()?.floor()) + 1;
    let k = bit_length(q.denom()) + tol_bits + 64;
    let (a, b) = (q.numer(), q.denom());
    let (tn, td) = (rel_tol.numer(), rel_tol.denom());
    let target = a << (2 * k);
    let bound = tn * &target;

    let mut x: BigInt = if *q < ExactRational::one() { BigInt::one() << k } else { (a << k) / (b * 2) };
    for _ in 0..100_000 {
        let err = (&x * &x * b - &target).abs() * td;
        if err < bound {
            break;
        }
        let next: BigInt = (&x + &target / (b * &x) + 1) >> 1;
        if next == x {
            // Grid exhausted; cannot happen for the grid size chosen above.
            break;
        }
        x = next;
    }
    Ok(Measure::approx(ExactRational(BigRational::new(x, BigInt::one() << k))))
}

/// High-precision decimal approximation of a real constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealApprox {
    pub value: ExactRational,
    pub source: &'static str,
}

impl RealApprox {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ModernConstant {
    Pi,
    PiOver3,
    PiOver180,
    DegPerRadian,
}

// 50 significant digits each.
const PI: &str = "3.1415926535897932384626433832795028841971693993751";
const PI_OVER_3: &str = "1.0471975511965977461542144610931676280657231331250";
const PI_OVER_180: &str = "0.017453292519943295769236907684886127134428718885417";
const DEG_PER_RADIAN: &str = "57.295779513082320876798154814105170332405472466564";

impl ModernConstant {
    pub const ALL: [ModernConstant; 4] = [
        ModernConstant::Pi,
        ModernConstant::PiOver3,
        ModernConstant::PiOver180,
        ModernConstant::DegPerRadian,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModernConstant::Pi => "pi",
            ModernConstant::PiOver3 => "pi_over_3",
            ModernConstant::PiOver180 => "pi_over_180",
            ModernConstant::DegPerRadian => "deg_per_radian",
        }
    }

    pub fn value(self) -> RealApprox {
        let literal = match self {
            ModernConstant::Pi => PI,
            ModernConstant::PiOver3 => PI_OVER_3,
            ModernConstant::PiOver180 => PI_OVER_180,
            ModernConstant::DegPerRadian => DEG_PER_RADIAN,
        };
        RealApprox {
            value: literal.parse().expect("constant literal"),
            source: self.name(),
        }
    }
}

impl FromStr for ModernConstant {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ModernConstant::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| OracleError::UnknownConstant(s.to_string()))
    }
}

pub fn modern_constant(name: &str) -> Result<RealApprox, OracleError> {
    Ok(name.parse::<ModernConstant>()?.value())
}

/// `(reference - value) / reference`, signed.
pub fn relative_error(value: &ExactRational, reference: &ExactRational) -> ExactRational {
    (reference - value) / reference
}

/// True when `value` is within one unit of the last digit of the decimal
/// literal `quoted`. Quoted values may be truncated or rounded, so this is
/// the tightest test that accepts both.
pub fn agrees_with_quoted(value: &ExactRational, quoted: &str) -> bool {
    let Ok(q) = quoted.parse::<ExactRational>() else {
        return false;
    };
    let places = quoted.split_once('.').map_or(0, |(_, f)| f.len());
    let unit = ExactRational::new(1, 10).pow(places as i32);
    (value - &q).abs() < unit
}
