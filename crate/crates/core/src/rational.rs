//! Exact rational numbers and their odd/even classification.
//!
//! [`Rational`] wraps an arbitrary-precision `BigRational`, which keeps every
//! value reduced with a positive denominator. On top of the usual field
//! operations it exposes [`Rational::parity`]: a reduced `a/b` with odd `b`
//! is *odd* when `a` is odd and *even* when `a` is even. Odd and even
//! rationals add and multiply like odd and even integers, which is what makes
//! the Pfaffian of a skew-symmetric `±1` matrix odd.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),
}

/// Odd/even classification of a rational number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ParityClass {
    /// Reduced form `a/b` with `a` and `b` both odd.
    Odd,
    /// Reduced form `a/b` with `a` even and `b` odd. Zero is even.
    Even,
    /// Reduced denominator is even.
    Undefined,
}

impl ParityClass {
    /// Parity of a sum, when both operands have a defined parity.
    pub fn add(self, other: ParityClass) -> ParityClass {
        use ParityClass::*;
        match (self, other) {
            (Undefined, _) | (_, Undefined) => Undefined,
            (Odd, Odd) | (Even, Even) => Even,
            _ => Odd,
        }
    }

    /// Parity of a product, when both operands have a defined parity.
    pub fn mul(self, other: ParityClass) -> ParityClass {
        use ParityClass::*;
        match (self, other) {
            (Undefined, _) | (_, Undefined) => Undefined,
            (Odd, Odd) => Odd,
            _ => Even,
        }
    }
}

/// An exact rational number, always stored in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// `numer / denom`, reduced. Fails when `denom` is zero.
    pub fn new(numer: i64, denom: i64) -> Result<Self, RationalError> {
        Self::from_bigints(BigInt::from(numer), BigInt::from(denom))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Result<Self, RationalError> {
        if denom.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    /// Shorthand for literals in code that already knows `denom != 0`.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Self::new(numer, denom).expect("nonzero denominator")
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

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
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

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    pub fn recip(&self) -> Result<Self, RationalError> {
        if self.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self, RationalError> {
        if rhs.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn parity(&self) -> ParityClass {
        if self.denom().is_even() {
            ParityClass::Undefined
        } else if self.numer().is_even() {
            ParityClass::Even
        } else {
            ParityClass::Odd
        }
    }

    pub fn to_f64(&self) -> f64 {
        if let Some(v) = self.0.to_f64() {
            if v.is_finite() {
                return v;
            }
        }
        // Both parts overflow f64; scale them down together.
        let shift = self.numer().bits().max(self.denom().bits()).saturating_sub(1000);
        let n = (self.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (self.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    }

    /// Natural logarithm of a positive rational, accurate to f64 precision
    /// even when numerator or denominator exceed the f64 range.
    pub fn ln(&self) -> f64 {
        debug_assert!(self.is_positive());
        ln_bigint(self.numer()) - ln_bigint(self.denom())
    }

    /// `"num/den"` with the denominator always present.
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    /// Integer value when the denominator is 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.numer().clone())
    }
}

fn ln_bigint(value: &BigInt) -> f64 {
    let bits = value.bits();
    if bits <= 1000 {
        return value.to_f64().unwrap_or(f64::NAN).ln();
    }
    let shift = bits - 60;
    let top = (value >> shift).to_f64().unwrap_or(f64::NAN);
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational(value)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl From<i32> for Rational {
    fn from(value: i32) -> Self {
        Rational::from_integer(value)
    }
}

impl From<usize> for Rational {
    fn from(value: usize) -> Self {
        Rational::from_integer(value)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

/// Accepts `a`, `a/b`, and decimal notation such as `-0.125` or `2.5e-3`.
impl FromStr for Rational {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        let bad = || RationalError::Parse(s.to_string());
        if text.is_empty() {
            return Err(bad());
        }
        if let Some((n, d)) = text.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            return Rational::from_bigints(n, d).map_err(|_| bad());
        }
        parse_decimal(text).ok_or_else(bad)
    }
}

fn parse_decimal(text: &str) -> Option<Rational> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = all_digits.parse().ok()?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Some(Rational(value))
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_fraction_string())
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
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor, like the integer types; use `checked_div` when
// the divisor is not known to be nonzero.
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Rational> for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
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

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// `true` when `value` is the square of an odd integer.
pub fn is_odd_square(value: &BigInt) -> bool {
    if value.sign() == Sign::Minus || value.is_even() {
        return false;
    }
    let root = value.sqrt();
    &root * &root == *value
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.is_integer() && *self.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Rational::from(*other)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_examples() {
        assert_eq!(Rational::ratio(3, 5).parity(), ParityClass::Odd);
        assert_eq!(Rational::ratio(2, 7).parity(), ParityClass::Even);
        assert_eq!(Rational::ratio(1, 2).parity(), ParityClass::Undefined);
        assert_eq!(Rational::zero().parity(), ParityClass::Even);
        // 6/4 reduces to 3/2
        assert_eq!(Rational::ratio(6, 4).parity(), ParityClass::Undefined);
        assert_eq!(Rational::ratio(-9, 15).parity(), ParityClass::Odd);
    }

    #[test]
    fn always_reduced_with_positive_denominator() {
        let x = Rational::ratio(6, -4);
        assert_eq!(*x.numer(), BigInt::from(-3));
        assert_eq!(*x.denom(), BigInt::from(2));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Rational::new(1, 0), Err(RationalError::DivisionByZero));
        assert_eq!(
            Rational::one().checked_div(&Rational::zero()),
            Err(RationalError::DivisionByZero)
        );
        assert!(Rational::zero().recip().is_err());
    }

    #[test]
    fn parse_forms() {
        assert_eq!("3/5".parse::<Rational>().unwrap(), Rational::ratio(3, 5));
        assert_eq!("-7".parse::<Rational>().unwrap(), Rational::from(-7));
        assert_eq!("0.5".parse::<Rational>().unwrap(), Rational::ratio(1, 2));
        assert_eq!(".25".parse::<Rational>().unwrap(), Rational::ratio(1, 4));
        assert_eq!("2.5e-1".parse::<Rational>().unwrap(), Rational::ratio(1, 4));
        assert_eq!("1E2".parse::<Rational>().unwrap(), Rational::from(100));
        assert!(
            "0.50000000000000000001".parse::<Rational>().unwrap() > Rational::ratio(1, 2)
        );
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!(".".parse::<Rational>().is_err());
    }

    #[test]
    fn serde_uses_fraction_strings() {
        let x = Rational::from(2);
        assert_eq!(serde_json::to_string(&x).unwrap(), "\"2/1\"");
        let back: Rational = serde_json::from_str("\"-4/6\"").unwrap();
        assert_eq!(back, Rational::ratio(-2, 3));
    }

    #[test]
    fn ln_of_huge_values() {
        let three = Rational::from(3);
        let tiny = three.pow(800).recip().unwrap();
        let expected = -800.0 * 3f64.ln();
        assert!((tiny.ln() - expected).abs() < 1e-9);
        assert_eq!(tiny.to_f64(), 0.0);
    }

    #[test]
    fn odd_squares() {
        assert!(is_odd_square(&BigInt::from(1)));
        assert!(is_odd_square(&BigInt::from(9)));
        assert!(!is_odd_square(&BigInt::from(4)));
        assert!(!is_odd_square(&BigInt::from(3)));
        assert!(!is_odd_square(&BigInt::from(0)));
    }
}
