//! Exact rational arithmetic and the real-valued information functions.
//!
//! Every probability and cost in the crate is a [`Rational`]; only the
//! logarithmic quantities (surprisal, entropy) leave the exact domain and are
//! reported as `f64` bits.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericsError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("probability {0} is outside {1}")]
    ProbabilityOutOfRange(Rational, &'static str),
    #[error("malformed number {0:?}")]
    Malformed(String),
}

/// An exact fraction in lowest terms with a positive denominator.
///
/// Zero is always `0/1`. Displayed as `a/b`, including integers (`2/1`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, NumericsError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(NumericsError::DivisionByZero);
        }
        // BigRational::new reduces and normalizes the sign onto the numerator.
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// `2^-exp`, used for Kraft sums.
    pub fn dyadic(exp: usize) -> Self {
        Rational(BigRational::new(BigInt::one(), BigInt::one() << exp))
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

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn checked_div(&self, other: &Rational) -> Result<Rational, NumericsError> {
        if other.is_zero() {
            return Err(NumericsError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &other.0))
    }

    pub fn to_f64(&self) -> f64 {
        match self.0.to_f64() {
            Some(v) => v,
            None => (log2_int(self.numer()) - log2_int(self.denom())).exp2() * self.sign_f64(),
        }
    }

    fn sign_f64(&self) -> f64 {
        match self.numer().sign() {
            Sign::Minus => -1.0,
            _ => 1.0,
        }
    }

    /// Fixed-point rendering rounded half away from zero, computed exactly.
    pub fn to_decimal(&self, places: usize) -> String {
        let scale = BigInt::from(10u32).pow(places as u32);
        let numer = self.numer().abs() * &scale * 2u32 + self.denom();
        let scaled = numer.div_floor(&(self.denom() * 2u32));
        let digits = scaled.to_string();
        let negative = self.is_negative() && !scaled.is_zero();
        let sign = if negative { "-" } else { "" };
        if places == 0 {
            return format!("{sign}{digits}");
        }
        let padded = format!("{digits:0>width$}", width = places + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - places);
        format!("{sign}{int_part}.{frac_part}")
    }

    /// Parses an exact decimal literal such as `0.05` or `-12.5`.
    pub fn from_decimal_str(text: &str) -> Result<Self, NumericsError> {
        let malformed = || NumericsError::Malformed(text.to_string());
        let (negative, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text.strip_prefix('+').unwrap_or(text)),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
        if int_part.is_empty() || !all_digits(int_part) || !all_digits(frac_part) {
            return Err(malformed());
        }
        if body.contains('.') && frac_part.is_empty() {
            return Err(malformed());
        }
        let digits = format!("{int_part}{frac_part}");
        let mut numer: BigInt = digits.parse().map_err(|_| malformed())?;
        if negative {
            numer = -numer;
        }
        let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
        Rational::new(numer, denom)
    }
}

fn parse_integer(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix(['-', '+']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

impl FromStr for Rational {
    type Err = NumericsError;

    /// Accepts `a/b` with integer parts, or a decimal literal.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let text = text.trim();
        match text.split_once('/') {
            Some((n, d)) => {
                let malformed = || NumericsError::Malformed(text.to_string());
                let numer = parse_integer(n.trim()).ok_or_else(malformed)?;
                let denom = parse_integer(d.trim()).ok_or_else(malformed)?;
                Rational::new(numer, denom)
            }
            None => Rational::from_decimal_str(text),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

/// Panics on a zero divisor; use [`Rational::checked_div`] for untrusted input.
impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl From<u64> for Rational {
    fn from(value: u64) -> Self {
        Rational::from_integer(value)
    }
}

/// log₂ of a positive big integer, accurate for values beyond `f64` range.
fn log2_int(value: &BigInt) -> f64 {
    log2_uint(value.magnitude())
}

fn log2_uint(value: &BigUint) -> f64 {
    let bits = value.bits();
    if bits <= 1000 {
        return value.to_f64().map(f64::log2).unwrap_or(f64::NAN);
    }
    let shift = bits - 64;
    let top = (value >> shift).to_u64().expect("64 significant bits");
    (top as f64).log2() + shift as f64
}

/// `-log₂ p` in bits, for `0 < p ≤ 1`.
pub fn surprisal_bits(p: &Rational) -> Result<f64, NumericsError> {
    if !p.is_positive() || *p > Rational::one() {
        return Err(NumericsError::ProbabilityOutOfRange(p.clone(), "(0, 1]"));
    }
    if p.numer() == p.denom() {
        return Ok(0.0);
    }
    Ok(log2_int(p.denom()) - log2_int(p.numer()))
}

/// Binary entropy `H(p, 1-p)` in bits, with `0·log₂0 = 0`.
pub fn binary_entropy_bits(p: &Rational) -> Result<f64, NumericsError> {
    if p.is_negative() || *p > Rational::one() {
        return Err(NumericsError::ProbabilityOutOfRange(p.clone(), "[0, 1]"));
    }
    let q = Rational::one() - p;
    Ok(weighted_surprisal(p) + weighted_surprisal(&q))
}

/// `p·(-log₂ p)`, zero at `p = 0`. Caller guarantees `0 ≤ p ≤ 1`.
pub(crate) fn weighted_surprisal(p: &Rational) -> f64 {
    if p.is_zero() {
        return 0.0;
    }
    p.to_f64() * surprisal_bits(p).expect("probability in (0, 1]")
}
