//! Exact arithmetic substrate: arbitrary-precision naturals, their base-10
//! digit views and reduced fractions.
//!
//! Nothing in here touches floating point. Subtraction on [`Natural`] is
//! partial and reports underflow instead of wrapping.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Rem};
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{ArithmeticError, ParseNaturalError};

/// Arbitrary-precision non-negative integer.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Natural(BigUint);

impl Natural {
    pub fn zero() -> Self {
        Natural(BigUint::zero())
    }

    pub fn one() -> Self {
        Natural(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_even(&self) -> bool {
        self.0.is_even()
    }

    /// `10^exp`.
    pub fn pow10(exp: u32) -> Self {
        Natural(BigUint::from(10u32).pow(exp))
    }

    pub fn pow(&self, exp: u32) -> Self {
        Natural(Pow::pow(&self.0, exp))
    }

    pub fn square(&self) -> Self {
        Natural(&self.0 * &self.0)
    }

    /// `self - rhs`, or [`ArithmeticError::Underflow`] when `rhs > self`.
    pub fn checked_sub(&self, rhs: &Natural) -> Result<Natural, ArithmeticError> {
        if rhs.0 > self.0 {
            return Err(ArithmeticError::Underflow);
        }
        Ok(Natural(&self.0 - &rhs.0))
    }

    /// `|self - rhs|`.
    pub fn abs_diff(&self, rhs: &Natural) -> Natural {
        if self.0 >= rhs.0 {
            Natural(&self.0 - &rhs.0)
        } else {
            Natural(&rhs.0 - &self.0)
        }
    }

    /// Euclidean division, failing on a zero divisor.
    pub fn div_rem(&self, divisor: &Natural) -> Result<(Natural, Natural), ArithmeticError> {
        if divisor.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        let (q, r) = self.0.div_rem(&divisor.0);
        Ok((Natural(q), Natural(r)))
    }

    pub fn gcd(&self, other: &Natural) -> Natural {
        Natural(self.0.gcd(&other.0))
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// Number of decimal digits; zero has one digit.
    pub fn decimal_len(&self) -> usize {
        self.to_digits().len()
    }

    pub fn to_digits(&self) -> DigitString {
        to_digits(self)
    }
}

impl From<u64> for Natural {
    fn from(v: u64) -> Self {
        Natural(BigUint::from(v))
    }
}

impl From<u32> for Natural {
    fn from(v: u32) -> Self {
        Natural(BigUint::from(v))
    }
}

impl From<u8> for Natural {
    fn from(v: u8) -> Self {
        Natural(BigUint::from(v))
    }
}

impl From<usize> for Natural {
    fn from(v: usize) -> Self {
        Natural(BigUint::from(v))
    }
}

impl From<BigUint> for Natural {
    fn from(v: BigUint) -> Self {
        Natural(v)
    }
}

impl From<Natural> for BigUint {
    fn from(v: Natural) -> Self {
        v.0
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Canonical decimal: ASCII digits only, no sign, no leading zeros except `"0"`.
impl FromStr for Natural {
    type Err = ParseNaturalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(ParseNaturalError::Empty);
        }
        if let Some((pos, ch)) = s.char_indices().find(|(_, c)| !c.is_ascii_digit()) {
            return Err(ParseNaturalError::InvalidDigit { ch, pos });
        }
        if s.len() > 1 && s.starts_with('0') {
            return Err(ParseNaturalError::LeadingZero);
        }
        let value = BigUint::parse_bytes(s.as_bytes(), 10).ok_or(ParseNaturalError::Empty)?;
        Ok(Natural(value))
    }
}

impl Serialize for Natural {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a Natural> for &'a Natural {
            type Output = Natural;
            fn $method(self, rhs: &'a Natural) -> Natural {
                Natural($trait::$method(&self.0, &rhs.0))
            }
        }

        impl $trait<Natural> for Natural {
            type Output = Natural;
            fn $method(self, rhs: Natural) -> Natural {
                Natural($trait::$method(self.0, rhs.0))
            }
        }

        impl $trait<u64> for &Natural {
            type Output = Natural;
            fn $method(self, rhs: u64) -> Natural {
                Natural($trait::$method(&self.0, BigUint::from(rhs)))
            }
        }

        impl $trait<u64> for Natural {
            type Output = Natural;
            fn $method(self, rhs: u64) -> Natural {
                Natural($trait::$method(self.0, BigUint::from(rhs)))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Mul, mul);
// Div and Rem panic on a zero divisor, like the primitive integer types.
forward_binop!(Div, div);
forward_binop!(Rem, rem);

/// Big-endian base-10 digits of a natural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitString {
    digits: Vec<u8>,
}

impl DigitString {
    /// Builds a digit string from explicit digits. Leading zeros are kept,
    /// since padded rows are legitimate board states.
    pub fn new(digits: Vec<u8>) -> Result<Self, ArithmeticError> {
        if digits.is_empty() {
            return Err(ArithmeticError::EmptyDigits);
        }
        if let Some(&d) = digits.iter().find(|&&d| d > 9) {
            return Err(ArithmeticError::InvalidDigit(d));
        }
        Ok(DigitString { digits })
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Evaluates `Σ 10^i · n_i`.
    pub fn value(&self) -> Natural {
        let mut acc = BigUint::zero();
        for &d in &self.digits {
            acc = acc * 10u32 + d;
        }
        Natural(acc)
    }

    /// Left-pads with zeros up to `width` digits. Never truncates.
    pub fn pad_to_width(&self, width: usize) -> DigitString {
        if self.digits.len() >= width {
            return self.clone();
        }
        let mut digits = vec![0; width - self.digits.len()];
        digits.extend_from_slice(&self.digits);
        DigitString { digits }
    }

    pub fn pad_to_even(&self) -> DigitString {
        pad_to_even(self)
    }

    /// Digits separated by single spaces, as written on the board.
    pub fn spaced(&self) -> String {
        let mut out = String::with_capacity(self.digits.len() * 2);
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push(char::from(b'0' + d));
        }
        out
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl Serialize for DigitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub fn to_digits(n: &Natural) -> DigitString {
    DigitString {
        digits: n.0.to_radix_be(10),
    }
}

/// Prepends a single zero when the digit count is odd.
pub fn pad_to_even(d: &DigitString) -> DigitString {
    if d.digits.len().is_multiple_of(2) {
        return d.clone();
    }
    d.pad_to_width(d.digits.len() + 1)
}

/// Exact fraction in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    numer: Natural,
    denom: Natural,
}

impl Rational {
    pub fn new(numer: Natural, denom: Natural) -> Result<Self, ArithmeticError> {
        if denom.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        Ok(Self::reduced(numer, denom))
    }

    fn reduced(numer: Natural, denom: Natural) -> Self {
        let g = numer.gcd(&denom);
        if g.is_one() {
            Rational { numer, denom }
        } else {
            Rational {
                numer: &numer / &g,
                denom: &denom / &g,
            }
        }
    }

    pub fn zero() -> Self {
        Rational::from(Natural::zero())
    }

    pub fn numer(&self) -> &Natural {
        &self.numer
    }

    pub fn denom(&self) -> &Natural {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.denom.is_one()
    }

    pub fn square(&self) -> Rational {
        rational_square(self)
    }

    pub fn recip(&self) -> Result<Rational, ArithmeticError> {
        Rational::new(self.denom.clone(), self.numer.clone())
    }

    pub fn checked_sub(&self, rhs: &Rational) -> Result<Rational, ArithmeticError> {
        let lhs = &self.numer * &rhs.denom;
        let rhs_n = &rhs.numer * &self.denom;
        Ok(Self::reduced(
            lhs.checked_sub(&rhs_n)?,
            &self.denom * &rhs.denom,
        ))
    }

    pub fn abs_diff(&self, rhs: &Rational) -> Rational {
        let lhs = &self.numer * &rhs.denom;
        let rhs_n = &rhs.numer * &self.denom;
        Self::reduced(lhs.abs_diff(&rhs_n), &self.denom * &rhs.denom)
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational, ArithmeticError> {
        Rational::new(&self.numer * &rhs.denom, &self.denom * &rhs.numer)
    }

    /// Integer part and proper fractional part.
    pub fn split(&self) -> (Natural, Rational) {
        let (q, r) = self
            .numer
            .div_rem(&self.denom)
            .expect("denominator is positive");
        (
            q,
            Rational {
                numer: r,
                denom: self.denom.clone(),
            },
        )
    }

    /// `floor(self · 10^places)`.
    pub fn floor_scaled(&self, places: u32) -> Natural {
        &(&self.numer * &Natural::pow10(places)) / &self.denom
    }

    /// Truncated decimal rendering with `places` digits after the point.
    pub fn to_decimal_string(&self, places: u32) -> String {
        format_fixed(&self.floor_scaled(places), places)
    }

    /// Mixed-number display such as `12 + 11/25`.
    pub fn mixed(&self) -> MixedNumber<'_> {
        MixedNumber(self)
    }
}

impl From<Natural> for Rational {
    fn from(n: Natural) -> Self {
        Rational {
            numer: n,
            denom: Natural::one(),
        }
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from(Natural::from(n))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.numer * &other.denom).cmp(&(&other.numer * &self.denom))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational::reduced(
            &(&self.numer * &rhs.denom) + &(&rhs.numer * &self.denom),
            &self.denom * &rhs.denom,
        )
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational::reduced(&self.numer * &rhs.numer, &self.denom * &rhs.denom)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.is_one() {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

impl FromStr for Rational {
    type Err = ArithmeticError;

    /// Accepts `"n"` or `"n/d"` with canonical decimal parts.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once('/') {
            None => Ok(Rational::from(s.parse::<Natural>()?)),
            Some((n, d)) => Rational::new(n.parse()?, d.parse()?),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub struct MixedNumber<'a>(&'a Rational);

impl fmt::Display for MixedNumber<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (whole, frac) = self.0.split();
        match (whole.is_zero(), frac.is_zero()) {
            (_, true) => write!(f, "{whole}"),
            (true, false) => write!(f, "{}/{}", frac.numer, frac.denom),
            (false, false) => write!(f, "{whole} + {}/{}", frac.numer, frac.denom),
        }
    }
}

/// Renders `scaled / 10^places` with an explicit decimal point.
pub fn format_fixed(scaled: &Natural, places: u32) -> String {
    let digits = scaled
        .to_digits()
        .pad_to_width(places as usize + 1)
        .to_string();
    if places == 0 {
        return digits;
    }
    let split = digits.len() - places as usize;
    format!("{}.{}", &digits[..split], &digits[split..])
}

pub fn rational_square(q: &Rational) -> Rational {
    // gcd(a, b) = 1 implies gcd(a², b²) = 1.
    Rational {
        numer: q.numer.square(),
        denom: q.denom.square(),
    }
}

/// Compares `|q1 - target|` with `|q2 - target|`. `Less` means `q1` is closer.
pub fn rational_compare_distance(q1: &Rational, q2: &Rational, target: &Natural) -> Ordering {
    let t = Rational::from(target.clone());
    q1.abs_diff(&t).cmp(&q2.abs_diff(&t))
}
