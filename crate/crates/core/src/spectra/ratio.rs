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

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
///
/// Text form is `p/q`, or just `p` when the denominator is one. Serde goes
/// through the same string so no precision is ever lost in JSON.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactRatio(BigRational);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseRatioError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer `{0}` in rational literal")]
    BadInteger(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

impl ExactRatio {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "ExactRatio with zero denominator");
        ExactRatio(BigRational::new(numer.into(), denom))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        ExactRatio(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        ExactRatio(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRatio(BigRational::one())
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

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        ExactRatio(self.0.abs())
    }

    pub fn square(&self) -> Self {
        ExactRatio(&self.0 * &self.0)
    }

    pub fn recip(&self) -> Self {
        ExactRatio(self.0.recip())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_big_rational(self) -> BigRational {
        self.0
    }

    /// Lossy conversion, for orientation only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering rounded half away from zero to `sig` significant
    /// digits, computed with integer arithmetic (no float round trip).
    pub fn to_decimal(&self, sig: usize) -> String {
        let sig = sig.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let negative = self.is_negative();
        let num = self.numer().abs().to_biguint().expect("abs is nonnegative");
        let den = self.denom().to_biguint().expect("denominator is positive");
        let ten = BigUint::from(10u32);

        // exponent e with 10^e <= |x| < 10^(e+1)
        let mut exp: i64 = num.to_string().len() as i64 - den.to_string().len() as i64;
        loop {
            let (lhs, rhs) = scaled_pair(&num, &den, exp);
            if lhs < rhs {
                exp -= 1;
                continue;
            }
            let (lhs, rhs) = scaled_pair(&num, &den, exp + 1);
            if lhs >= rhs {
                exp += 1;
                continue;
            }
            break;
        }

        // digits = round(|x| * 10^(sig-1-exp))
        let shift = sig as i64 - 1 - exp;
        let (mut n, mut d) = (num, den);
        if shift >= 0 {
            n *= ten.pow(shift as u32);
        } else {
            d *= ten.pow((-shift) as u32);
        }
        let (q, r) = n.div_rem(&d);
        let mut digits = if r * 2u32 >= d { q + 1u32 } else { q };
        if digits.to_string().len() > sig {
            digits /= 10u32;
            exp += 1;
        }
        let mut text = digits.to_string();

        let rendered = if exp >= 0 {
            let int_len = exp as usize + 1;
            if text.len() <= int_len {
                text.push_str(&"0".repeat(int_len - text.len()));
                text
            } else {
                let frac = text.split_off(int_len);
                format!("{text}.{frac}")
            }
        } else {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), text)
        };
        let rendered = trim_fraction(rendered);
        if negative {
            format!("-{rendered}")
        } else {
            rendered
        }
    }
}

fn scaled_pair(num: &BigUint, den: &BigUint, exp: i64) -> (BigUint, BigUint) {
    let ten = BigUint::from(10u32);
    if exp >= 0 {
        (num.clone(), den * ten.pow(exp as u32))
    } else {
        (num * ten.pow((-exp) as u32), den.clone())
    }
}

fn trim_fraction(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let trimmed = s.trim_end_matches('0').trim_end_matches('.');
    trimmed.to_string()
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactRatio {
    type Err = ParseRatioError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRatioError::Empty);
        }
        let parse_int = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| ParseRatioError::BadInteger(t.to_string()))
        };
        match s.split_once('/') {
            None => Ok(ExactRatio::from_integer(parse_int(s)?)),
            Some((p, q)) => {
                let q = parse_int(q)?;
                if q.is_zero() {
                    return Err(ParseRatioError::ZeroDenominator);
                }
                Ok(ExactRatio::new(parse_int(p)?, q))
            }
        }
    }
}

impl Serialize for ExactRatio {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRatio {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for ExactRatio {
    fn from(v: i64) -> Self {
        ExactRatio::from_integer(v)
    }
}

impl From<BigInt> for ExactRatio {
    fn from(v: BigInt) -> Self {
        ExactRatio::from_integer(v)
    }
}

impl From<BigRational> for ExactRatio {
    fn from(v: BigRational) -> Self {
        ExactRatio(v)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<ExactRatio> for ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: ExactRatio) -> ExactRatio {
                ExactRatio($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a ExactRatio> for ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: &'a ExactRatio) -> ExactRatio {
                ExactRatio($trait::$method(self.0, &rhs.0))
            }
        }
        impl<'a> $trait<ExactRatio> for &'a ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: ExactRatio) -> ExactRatio {
                ExactRatio($trait::$method(&self.0, rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b ExactRatio> for &'a ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: &'b ExactRatio) -> ExactRatio {
                ExactRatio($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&ExactRatio> for ExactRatio {
    fn add_assign(&mut self, rhs: &ExactRatio) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for ExactRatio {
    fn add_assign(&mut self, rhs: ExactRatio) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&ExactRatio> for ExactRatio {
    fn sub_assign(&mut self, rhs: &ExactRatio) {
        self.0 -= &rhs.0;
    }
}

impl Neg for ExactRatio {
    type Output = ExactRatio;
    fn neg(self) -> ExactRatio {
        ExactRatio(-self.0)
    }
}

impl Neg for &ExactRatio {
    type Output = ExactRatio;
    fn neg(self) -> ExactRatio {
        ExactRatio(-&self.0)
    }
}

impl Sum for ExactRatio {
    fn sum<I: Iterator<Item = ExactRatio>>(iter: I) -> Self {
        iter.fold(ExactRatio::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a ExactRatio> for ExactRatio {
    fn sum<I: Iterator<Item = &'a ExactRatio>>(iter: I) -> Self {
        iter.fold(ExactRatio::zero(), |acc, x| acc + x)
    }
}

/// Shorthand for `ExactRatio::new(p, q)` with machine integers.
pub fn ratio(p: i64, q: i64) -> ExactRatio {
    ExactRatio::new(p, q)
}
