//! Coefficient domains.
//!
//! Everything in the crate is generic over [`Scalar`], a commutative ring
//! containing the rationals. Two concrete domains are provided: exact
//! arbitrary-precision rationals ([`Rational`]) and `f64`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

pub type Rational = BigRational;

pub trait Scalar: Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_integer(v: &BigInt) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_integer(&BigInt::from(v))
    }

    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// `None` when dividing by zero.
    fn div_ref(&self, other: &Self) -> Option<Self>;

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }

    fn is_negative(&self) -> bool;
    fn to_f64(&self) -> f64;

    /// Parses an integer, `p/q` or decimal literal (no sign).
    fn parse_literal(text: &str) -> Option<Self>;

    fn to_interchange(&self) -> Value;
    fn from_interchange(value: &Value) -> Option<Self>;

    fn pow_u32(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.mul_ref(self);
        }
        acc
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_integer(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_ref(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            None
        } else {
            Some(self / other)
        }
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn parse_literal(text: &str) -> Option<Self> {
        parse_rational(text)
    }
    fn to_interchange(&self) -> Value {
        Value::String(format!("{}/{}", self.numer(), self.denom()))
    }
    fn from_interchange(value: &Value) -> Option<Self> {
        match value {
            Value::String(s) => {
                let s = s.trim();
                match s.strip_prefix('-') {
                    Some(rest) => parse_rational(rest).map(|r| -r),
                    None => parse_rational(s),
                }
            }
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Some(Self::from_i64(i))
                } else {
                    n.as_f64().and_then(BigRational::from_float)
                }
            }
            _ => None,
        }
    }
    fn pow_u32(&self, exp: u32) -> Self {
        num_traits::Pow::pow(self, exp)
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_integer(v: &BigInt) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_ref(&self, other: &Self) -> Option<Self> {
        if *other == 0.0 {
            None
        } else {
            Some(self / other)
        }
    }
    fn is_negative(&self) -> bool {
        *self < 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn parse_literal(text: &str) -> Option<Self> {
        match text.split_once('/') {
            Some((num, den)) => {
                let num: f64 = num.trim().parse().ok()?;
                let den: f64 = den.trim().parse().ok()?;
                (den != 0.0).then(|| num / den)
            }
            None => text.trim().parse().ok(),
        }
    }
    fn to_interchange(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }
    fn from_interchange(value: &Value) -> Option<Self> {
        match value {
            Value::Number(n) => n.as_f64(),
            Value::String(s) => {
                let s = s.trim();
                match s.strip_prefix('-') {
                    Some(rest) => Self::parse_literal(rest).map(|v| -v),
                    None => Self::parse_literal(s),
                }
            }
            _ => None,
        }
    }
    fn pow_u32(&self, exp: u32) -> Self {
        self.powi(exp as i32)
    }
}

/// Unsigned rational literal: `12`, `3/4`, `0.125`.
fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = parse_digits(num.trim())?;
        let den: BigInt = parse_digits(den.trim())?;
        if Zero::is_zero(&den) {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    if let Some((int, frac)) = text.split_once('.') {
        if int.is_empty() && frac.is_empty() {
            return None;
        }
        let int: BigInt = if int.is_empty() {
            BigInt::zero()
        } else {
            parse_digits(int)?
        };
        let frac_val: BigInt = if frac.is_empty() {
            BigInt::zero()
        } else {
            parse_digits(frac)?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        return Some(BigRational::new(int * &scale + frac_val, scale));
    }
    parse_digits(text).map(BigRational::from_integer)
}

fn parse_digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// `num/den` shorthand used all over the tests.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
