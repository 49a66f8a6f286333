//! Base-60 numbers in two forms.
//!
//! A [`FloatingSexNumber`] is a bare digit string such as `1;2;30`. As on the
//! tablets it carries no magnitude: `1;2;30` stands for 25/24, for 25/1440
//! and for 125/2 alike. Multiplication and reciprocals are well defined on
//! that class; addition is not.
//!
//! A [`PinnedSexNumber`] fixes the radix point and so denotes one rational.
//! Its text form separates places with `,` and marks the radix point with
//! `;`, e.g. `1,2;30` = 62.5 and `0;57,36` = 24/25.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::oracle::ExactRational;

pub const BASE: u8 = 60;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SexagesimalError {
    #[error("empty input")]
    Empty,
    #[error("malformed place {place}: {token:?} is not a decimal digit group")]
    Malformed { place: usize, token: String },
    #[error("digit {value} at place {place} is out of range (0..59)")]
    OutOfRange { place: usize, value: String },
    #[error("zero has no sexagesimal representation here")]
    Zero,
    #[error("{value} is not regular (prime factor {factor})")]
    Irregular { value: ExactRational, factor: BigUint },
    #[error("{value} has no finite sexagesimal expansion (denominator factor {factor})")]
    NonTerminating { value: ExactRational, factor: BigUint },
    #[error("expected a positive value, got {0}")]
    NonPositive(ExactRational),
    #[error("max_places must be at least 1, got {0}")]
    InvalidPlaces(i64),
    #[error("{value} is below 60^-{places} and truncates to zero")]
    Underflow { value: ExactRational, places: i64 },
}

type Result<T> = std::result::Result<T, SexagesimalError>;

fn parse_digit(token: &str, place: usize) -> Result<u8> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(SexagesimalError::Malformed { place, token: token.to_string() });
    }
    let trimmed = token.trim_start_matches('0');
    let out_of_range = || SexagesimalError::OutOfRange { place, value: token.to_string() };
    if trimmed.len() > 2 {
        return Err(out_of_range());
    }
    let value: u8 = if trimmed.is_empty() { 0 } else { trimmed.parse().map_err(|_| out_of_range())? };
    if value >= BASE {
        return Err(out_of_range());
    }
    Ok(value)
}

fn check_digits(digits: &[u8]) -> Result<()> {
    if digits.is_empty() {
        return Err(SexagesimalError::Empty);
    }
    if let Some((i, &d)) = digits.iter().enumerate().find(|(_, &d)| d >= BASE) {
        return Err(SexagesimalError::OutOfRange { place: i + 1, value: d.to_string() });
    }
    Ok(())
}

fn join(digits: &[u8], sep: &str) -> String {
    digits.iter().map(u8::to_string).collect::<Vec<_>>().join(sep)
}

fn mantissa(digits: &[u8]) -> BigUint {
    BigUint::from_radix_be(digits, BASE as u32).expect("digits are below 60")
}

fn strip_trailing_zeros(mut digits: Vec<u8>) -> Vec<u8> {
    while digits.last() == Some(&0) {
        digits.pop();
    }
    digits
}

/// Smallest prime factor of `n` other than 2, 3, 5, or the 2,3,5-free
/// cofactor itself when no factor is found below 10^6.
fn non_smooth_factor(n: &BigUint) -> Option<BigUint> {
    let mut rest = n.clone();
    for p in [2u32, 3, 5] {
        let p = BigUint::from(p);
        while (&rest % &p).is_zero() {
            rest /= &p;
        }
    }
    if rest.is_one() {
        return None;
    }
    let mut p = 7u64;
    while p < 1_000_000 {
        let big = BigUint::from(p);
        if &big * &big > rest {
            break;
        }
        if (&rest % &big).is_zero() {
            return Some(big);
        }
        p += 2;
    }
    Some(rest)
}

fn magnitude(n: &BigInt) -> BigUint {
    n.magnitude().clone()
}

/// The offending prime factor when `q` is not 2,3,5-smooth.
pub fn irregular_factor(q: &ExactRational) -> Option<BigUint> {
    let a = non_smooth_factor(&magnitude(q.numer()));
    let b = non_smooth_factor(&magnitude(q.denom()));
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

/// True iff `q > 0` and both numerator and denominator have no prime
/// factors besides 2, 3 and 5: exactly the values with finite sexagesimal
/// expansions whose reciprocals also terminate.
pub fn is_regular(q: &ExactRational) -> bool {
    q.is_positive() && irregular_factor(q).is_none()
}

/// True iff `q > 0` has a finite sexagesimal expansion, i.e. its
/// denominator is 2,3,5-smooth. Regular values are those whose reciprocal
/// terminates as well.
pub fn is_terminating(q: &ExactRational) -> bool {
    q.is_positive() && non_smooth_factor(&magnitude(q.denom())).is_none()
}

fn require_terminating(q: &ExactRational) -> Result<()> {
    if !q.is_positive() {
        return Err(SexagesimalError::NonPositive(q.clone()));
    }
    match non_smooth_factor(&magnitude(q.denom())) {
        Some(factor) => Err(SexagesimalError::NonTerminating { value: q.clone(), factor }),
        None => Ok(()),
    }
}

fn require_regular(q: &ExactRational) -> Result<()> {
    if !q.is_positive() {
        return Err(SexagesimalError::NonPositive(q.clone()));
    }
    match irregular_factor(q) {
        Some(factor) => Err(SexagesimalError::Irregular { value: q.clone(), factor }),
        None => Ok(()),
    }
}

/// Digit string without magnitude. Normalized: no leading or trailing zero
/// digits, hence never empty and never zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FloatingSexNumber {
    digits: Vec<u8>,
}

impl FloatingSexNumber {
    pub fn new(digits: Vec<u8>) -> Result<Self> {
        check_digits(&digits)?;
        let first = digits.iter().position(|&d| d != 0).ok_or(SexagesimalError::Zero)?;
        let digits = strip_trailing_zeros(digits[first..].to_vec());
        Ok(FloatingSexNumber { digits })
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// The value with the radix point after the first digit (`1;2;30` reads
    /// as 25/24).
    pub fn reading(&self) -> ExactRational {
        self.pin(0).to_rational()
    }

    /// Fix the magnitude: the result is `reading() * 60^exponent`.
    pub fn pin(&self, exponent: i32) -> PinnedSexNumber {
        PinnedSexNumber { digits: self.digits.clone(), integer_places: 1 + exponent }
    }

    /// The floating digit string of a positive rational with a finite
    /// expansion.
    pub fn from_rational(q: &ExactRational) -> Result<Self> {
        require_terminating(q)?;
        let sixty = ExactRational::from_integer(60);
        let mut scaled = q.clone();
        while !scaled.is_integer() {
            scaled = scaled * &sixty;
        }
        let n = magnitude(scaled.numer());
        FloatingSexNumber::new(n.to_radix_be(BASE as u32))
    }

    /// Digit-string product; any pinning of the operands gives a product with
    /// these digits.
    pub fn mul(&self, other: &FloatingSexNumber) -> FloatingSexNumber {
        let product = mantissa(&self.digits) * mantissa(&other.digits);
        FloatingSexNumber::new(product.to_radix_be(BASE as u32))
            .expect("product of nonzero digit strings is nonzero")
    }

    pub fn reciprocal(&self) -> Result<FloatingSexNumber> {
        let q = self.reading();
        require_regular(&q)?;
        FloatingSexNumber::from_rational(&q.recip().expect("nonzero"))
    }

    pub fn div(&self, other: &FloatingSexNumber) -> Result<FloatingSexNumber> {
        Ok(self.mul(&other.reciprocal()?))
    }

    pub fn is_one(&self) -> bool {
        self.digits == [1]
    }

    /// `;`-separated with places after the first zero-padded to two
    /// characters, the way coefficient lists are usually typeset (`3;07;30`).
    pub fn format_padded(&self) -> String {
        let mut out = self.digits[0].to_string();
        for d in &self.digits[1..] {
            out.push_str(&format!(";{d:02}"));
        }
        out
    }
}

impl fmt::Display for FloatingSexNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.digits, ";"))
    }
}

impl FromStr for FloatingSexNumber {
    type Err = SexagesimalError;

    /// Grammar `digit(';'digit)*`; zero-padded digits such as `02` are
    /// accepted.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(SexagesimalError::Empty);
        }
        let digits = text
            .split(';')
            .enumerate()
            .map(|(i, token)| parse_digit(token, i + 1))
            .collect::<Result<Vec<_>>>()?;
        FloatingSexNumber::new(digits)
    }
}

pub fn parse_floating(text: &str) -> Result<FloatingSexNumber> {
    text.parse()
}

pub fn mul_floating(a: &FloatingSexNumber, b: &FloatingSexNumber) -> FloatingSexNumber {
    a.mul(b)
}

pub fn reciprocal(a: &FloatingSexNumber) -> Result<FloatingSexNumber> {
    a.reciprocal()
}

/// Digit string with a fixed radix point. The value is
/// `sum(digit[i] * 60^(integer_places - 1 - i))`; `integer_places` may be
/// zero or negative for values below one and may exceed the digit count for
/// integers ending in zero places.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PinnedSexNumber {
    digits: Vec<u8>,
    integer_places: i32,
}

/// Result of expanding a rational into a bounded number of places.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub number: PinnedSexNumber,
    /// Set when the expansion does not equal the input.
    pub truncated: bool,
}

impl PinnedSexNumber {
    pub fn new(digits: Vec<u8>, integer_places: i32) -> Result<Self> {
        check_digits(&digits)?;
        let lead = digits.iter().position(|&d| d != 0).ok_or(SexagesimalError::Zero)?;
        let digits = strip_trailing_zeros(digits[lead..].to_vec());
        Ok(PinnedSexNumber { digits, integer_places: integer_places - lead as i32 })
    }

    /// `mantissa * 60^exponent`.
    fn from_scaled(m: &BigUint, exponent: i32) -> Result<Self> {
        if m.is_zero() {
            return Err(SexagesimalError::Zero);
        }
        let digits = m.to_radix_be(BASE as u32);
        let places = digits.len() as i32 + exponent;
        PinnedSexNumber::new(digits, places)
    }

    fn scaled(&self) -> (BigUint, i32) {
        (mantissa(&self.digits), self.integer_places - self.digits.len() as i32)
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn integer_places(&self) -> i32 {
        self.integer_places
    }

    /// Exponent `e` such that `self == self.to_floating().pin(e)`.
    pub fn exponent(&self) -> i32 {
        self.integer_places - 1
    }

    pub fn to_floating(&self) -> FloatingSexNumber {
        FloatingSexNumber { digits: self.digits.clone() }
    }

    pub fn to_rational(&self) -> ExactRational {
        let (m, e) = self.scaled();
        ExactRational::from_integer(BigInt::from_biguint(Sign::Plus, m))
            * ExactRational::from_integer(60).pow(e)
    }

    /// Expansion of `q` with at most `max_places` fractional places,
    /// truncated toward zero when it does not terminate in time.
    pub fn from_rational(q: &ExactRational, max_places: i64) -> Result<Expansion> {
        Self::expand(q, max_places, false)
    }

    /// Like [`from_rational`](Self::from_rational) but rounding the last
    /// place to nearest, halves away from zero.
    pub fn from_rational_rounded(q: &ExactRational, max_places: i64) -> Result<Expansion> {
        Self::expand(q, max_places, true)
    }

    fn expand(q: &ExactRational, max_places: i64, round: bool) -> Result<Expansion> {
        if max_places < 1 {
            return Err(SexagesimalError::InvalidPlaces(max_places));
        }
        if !q.is_positive() {
            return Err(SexagesimalError::NonPositive(q.clone()));
        }
        let places = i32::try_from(max_places).map_err(|_| SexagesimalError::InvalidPlaces(max_places))?;
        let scaled = q * ExactRational::from_integer(60).pow(places);
        let m = if round { scaled.round() } else { scaled.floor() };
        let truncated = !scaled.is_integer();
        let m = m.to_biguint().unwrap_or_default();
        let number = Self::from_scaled(&m, -places)
            .map_err(|_| SexagesimalError::Underflow { value: q.clone(), places: max_places })?;
        Ok(Expansion { number, truncated })
    }

    /// Exact conversion of a positive rational with a finite expansion.
    pub fn from_terminating(q: &ExactRational) -> Result<Self> {
        let floating = FloatingSexNumber::from_rational(q)?;
        // reading * 60^e = q for some integer e; find it from the ratio.
        let ratio = q / floating.reading();
        let sixty = ExactRational::from_integer(60);
        let mut e = 0i32;
        let mut probe = ratio;
        while probe > ExactRational::one() {
            probe = probe / &sixty;
            e += 1;
        }
        while probe < ExactRational::one() {
            probe = probe * &sixty;
            e -= 1;
        }
        Ok(floating.pin(e))
    }

    /// Place-aligned sum.
    pub fn add(&self, other: &PinnedSexNumber) -> PinnedSexNumber {
        let (ma, ea) = self.scaled();
        let (mb, eb) = other.scaled();
        let e = ea.min(eb);
        let shift = |m: BigUint, by: i32| m * BigUint::from(60u32).pow(by as u32);
        let sum = shift(ma, ea - e) + shift(mb, eb - e);
        Self::from_scaled(&sum, e).expect("sum of positives is positive")
    }

    pub fn mul(&self, other: &PinnedSexNumber) -> PinnedSexNumber {
        let (ma, ea) = self.scaled();
        let (mb, eb) = other.scaled();
        Self::from_scaled(&(ma * mb), ea + eb).expect("product of positives is positive")
    }

    /// Exact half; halving a terminating expansion adds at most one place.
    pub fn half(&self) -> PinnedSexNumber {
        self.mul(&PinnedSexNumber { digits: vec![30], integer_places: 0 })
    }

    /// Integer value, when the number has no fractional places.
    pub fn to_u64(&self) -> Option<u64> {
        let (m, e) = self.scaled();
        if e < 0 {
            return None;
        }
        (m * BigUint::from(60u32).pow(e as u32)).to_u64()
    }
}

impl fmt::Display for PinnedSexNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ip = self.integer_places;
        let n = self.digits.len() as i32;
        if ip <= 0 {
            let mut frac = vec![0u8; (-ip) as usize];
            frac.extend_from_slice(&self.digits);
            write!(f, "0;{}", join(&frac, ","))
        } else if ip >= n {
            let mut int = self.digits.clone();
            int.resize(ip as usize, 0);
            f.write_str(&join(&int, ","))
        } else {
            let (int, frac) = self.digits.split_at(ip as usize);
            write!(f, "{};{}", join(int, ","), join(frac, ","))
        }
    }
}

impl FromStr for PinnedSexNumber {
    type Err = SexagesimalError;

    /// Grammar `digit(','digit)* [';' digit(','digit)*]`.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(SexagesimalError::Empty);
        }
        let (int_text, frac_text) = match text.split_once(';') {
            Some((i, f)) => (i, Some(f)),
            None => (text, None),
        };
        let mut digits = Vec::new();
        for token in int_text.split(',') {
            digits.push(parse_digit(token, digits.len() + 1)?);
        }
        let integer_places = digits.len() as i32;
        if let Some(frac) = frac_text {
            for token in frac.split(',') {
                digits.push(parse_digit(token, digits.len() + 1)?);
            }
        }
        PinnedSexNumber::new(digits, integer_places)
    }
}

pub fn parse_pinned(text: &str) -> Result<PinnedSexNumber> {
    text.parse()
}

pub fn add_pinned(a: &PinnedSexNumber, b: &PinnedSexNumber) -> PinnedSexNumber {
    a.add(b)
}

pub fn to_rational(p: &PinnedSexNumber) -> ExactRational {
    p.to_rational()
}

pub fn from_rational(q: &ExactRational, max_places: i64) -> Result<Expansion> {
    PinnedSexNumber::from_rational(q, max_places)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fl(s: &str) -> FloatingSexNumber {
        s.parse().unwrap()
    }

    fn pn(s: &str) -> PinnedSexNumber {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    #[test]
    fn parse_floating_examples() {
        assert_eq!(fl("1;2;30").digits(), &[1, 2, 30]);
        assert_eq!(fl("57;36").digits(), &[57, 36]);
        assert_eq!(fl("1;02;30"), fl("1;2;30"));
        assert_eq!(fl("0;57;36;0").digits(), &[57, 36]);
    }

    #[test]
    fn parse_floating_errors() {
        assert_eq!(
            parse_floating("1;60"),
            Err(SexagesimalError::OutOfRange { place: 2, value: "60".into() })
        );
        assert_eq!(parse_floating(""), Err(SexagesimalError::Empty));
        assert_eq!(
            parse_floating("1;;2"),
            Err(SexagesimalError::Malformed { place: 2, token: "".into() })
        );
        assert_eq!(
            parse_floating("1;x"),
            Err(SexagesimalError::Malformed { place: 2, token: "x".into() })
        );
        assert!(matches!(parse_floating("1,2"), Err(SexagesimalError::Malformed { place: 1, .. })));
        assert_eq!(parse_floating("0;0"), Err(SexagesimalError::Zero));
        assert!(matches!(parse_floating("123456789012345678901"), Err(SexagesimalError::OutOfRange { .. })));
    }

    #[test]
    fn parse_pinned_examples() {
        assert_eq!(pn("1,2;30").to_rational(), q(125, 2));
        assert_eq!(pn("0;57,36").to_rational(), q(24, 25));
        assert_eq!(pn("3;7,30").to_rational(), q(25, 8));
        assert_eq!(pn("1,0").to_rational(), q(60, 1));
        assert!(parse_pinned("1;").is_err());
        assert!(parse_pinned(";30").is_err());
        assert!(parse_pinned("1;2;3").is_err());
        assert!(parse_pinned("1,61").is_err());
    }

    #[test]
    fn formats() {
        assert_eq!(fl("1;2;30").to_string(), "1;2;30");
        assert_eq!(fl("5").to_string(), "5");
        assert_eq!(PinnedSexNumber::from_terminating(&q(24, 25)).unwrap().to_string(), "0;57,36");
        assert_eq!(pn("1,0").to_string(), "1,0");
        assert_eq!(fl("1;2;30").pin(-2).to_string(), "0;0,1,2,30");
        assert_eq!(fl("3;7;30").format_padded(), "3;07;30");
    }

    #[test]
    fn pin_examples() {
        let xi = fl("1;2;30");
        assert_eq!(xi.pin(0).to_rational(), q(25, 24));
        assert_eq!(xi.pin(-1).to_rational(), q(25, 1440));
        assert_eq!(xi.pin(1).to_rational(), q(125, 2));
    }

    #[test]
    fn floating_products() {
        assert_eq!(fl("14;24").mul(&fl("1;2;30")), fl("15"));
        assert_eq!(fl("5").mul(&fl("57;36")), fl("4;48"));
        assert_eq!(fl("3").mul(&fl("1;2;30")), fl("3;7;30"));
        assert_eq!(fl("3").mul(&fl("1;2;50")), fl("3;8;30"));
    }

    #[test]
    fn reciprocals() {
        assert_eq!(fl("1;2;30").reciprocal().unwrap(), fl("57;36"));
        assert_eq!(fl("4;48").reciprocal().unwrap(), fl("12;30"));
        assert_eq!(fl("3;7;30").reciprocal().unwrap(), fl("19;12"));
        match fl("7").reciprocal() {
            Err(SexagesimalError::Irregular { factor, .. }) => assert_eq!(factor, BigUint::from(7u32)),
            other => panic!("expected irregular error, got {other:?}"),
        }
        match fl("1;2;50").reciprocal() {
            Err(SexagesimalError::Irregular { factor, .. }) => assert_eq!(factor, BigUint::from(13u32)),
            other => panic!("expected irregular error, got {other:?}"),
        }
    }

    #[test]
    fn regularity() {
        assert!(is_regular(&q(25, 24)));
        assert!(!is_regular(&q(377, 360)));
        assert!(is_regular(&q(1, 1)));
        assert!(!is_regular(&q(0, 1)));
        assert!(!is_regular(&q(1, 7)));
        assert!(!is_regular(&q(7, 1)));
        assert!(is_terminating(&q(7, 1)));
        assert!(is_terminating(&q(377, 360)));
        assert!(!is_terminating(&q(360, 377)));
    }

    #[test]
    fn pinned_addition() {
        let sum = pn("31,20").add(&pn("35,20"));
        assert_eq!(sum.to_string(), "1,6,40");
        assert_eq!(sum.to_rational(), q(4000, 1));
        assert_eq!(sum.half().to_string(), "33,20");
        assert_eq!(pn("0;30").add(&pn("0;30")).to_string(), "1");
    }

    #[test]
    fn rational_conversion() {
        assert_eq!(pn("3;8,30").to_rational(), q(377, 120));
        let e = from_rational(&q(24, 25), 4).unwrap();
        assert!(!e.truncated);
        assert_eq!(e.number.to_string(), "0;57,36");

        let t = from_rational(&q(360, 377), 2).unwrap();
        assert!(t.truncated);
        assert_eq!(t.number.to_string(), "0;57,17");
        let r = PinnedSexNumber::from_rational_rounded(&q(360, 377), 2).unwrap();
        assert!(r.truncated);
        assert_eq!(r.number.to_string(), "0;57,18");

        assert_eq!(from_rational(&q(1, 2), 0), Err(SexagesimalError::InvalidPlaces(0)));
        assert!(matches!(from_rational(&q(-1, 2), 3), Err(SexagesimalError::NonPositive(_))));
        assert!(matches!(from_rational(&q(1, 7200), 1), Err(SexagesimalError::Underflow { .. })));
    }

    #[test]
    fn from_regular_recovers_magnitude() {
        for v in [q(125, 2), q(25, 1440), q(60, 1), q(216000, 1), q(1, 216000)] {
            assert_eq!(PinnedSexNumber::from_terminating(&v).unwrap().to_rational(), v);
        }
    }
}
