//! Exact scalars: big rationals and Gaussian rationals `re + im·i`.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `p/q` or a finite decimal such as `-0.125` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let ip = if ip.is_empty() || ip == "-" || ip == "+" { "0" } else { ip };
        let whole = BigInt::from_str(ip).map_err(|_| bad())?.abs();
        let frac = BigInt::from_str(fp).map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let mag = Rational::new(whole * &scale + frac, scale);
        return Ok(if neg { -mag } else { mag });
    }
    BigInt::from_str(s).map(Rational::from_integer).map_err(|_| bad())
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // huge numerator or denominator: scale both down first
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(900);
            let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

/// Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Scalar {
    pub re: Rational,
    pub im: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(rat(num, den))
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Squared modulus `re² + im²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn as_real(&self) -> Option<&Rational> {
        self.is_real().then_some(&self.re)
    }

    pub fn is_integer(&self) -> bool {
        self.is_real() && self.re.is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.re)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }
}

impl From<Rational> for Scalar {
    fn from(re: Rational) -> Self {
        Self::real(re)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Self::real(Rational::one())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{} i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}-{} i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{} i", self.re, self.im)
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p/q`, decimals, `p/q+r/s i`, `p/q-r/s*i`, `3i`, `-i`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.replace('−', "-");
        let Some(body) = t.strip_suffix('i') else {
            return parse_rational(&t).map(Scalar::real);
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        let bytes = body.as_bytes();
        let split = (1..bytes.len()).rev().find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/');
        let (re_txt, im_txt) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im_txt {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other))?,
        };
        Ok(Scalar::new(parse_rational(re_txt)?, im))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| Scalar { re: &a.re + &b.re, im: &a.im + &b.im });
forward_binop!(Sub, sub, |a, b| Scalar { re: &a.re - &b.re, im: &a.im - &b.im });
forward_binop!(Mul, mul, |a, b| {
    if a.im.is_zero() && b.im.is_zero() {
        return Scalar::real(&a.re * &b.re);
    }
    Scalar { re: &a.re * &b.re - &a.im * &b.im, im: &a.re * &b.im + &a.im * &b.re }
});
forward_binop!(Div, div, |a, b| a * b.inv().expect("division by zero scalar"));

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, o: Scalar) {
        *self += &o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

/// Wire form `{num, den, inum?, iden?}` with decimal-string big integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub num: String,
    pub den: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inum: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iden: Option<String>,
}

impl From<&Scalar> for ScalarJson {
    fn from(s: &Scalar) -> Self {
        let (inum, iden) = if s.im.is_zero() {
            (None, None)
        } else {
            (Some(s.im.numer().to_string()), Some(s.im.denom().to_string()))
        };
        ScalarJson { num: s.re.numer().to_string(), den: s.re.denom().to_string(), inum, iden }
    }
}

impl TryFrom<&ScalarJson> for Scalar {
    type Error = Error;
    fn try_from(j: &ScalarJson) -> Result<Scalar> {
        let re = parse_rational(&format!("{}/{}", j.num, j.den))?;
        let im = match (&j.inum, &j.iden) {
            (Some(n), Some(d)) => parse_rational(&format!("{n}/{d}"))?,
            (Some(n), None) => parse_rational(n)?,
            (None, None) => Rational::zero(),
            (None, Some(_)) => return Err(Error::Parse("iden without inum".into())),
        };
        Ok(Scalar::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!("1/2".parse::<Scalar>().unwrap(), Scalar::from_ratio(1, 2));
        assert_eq!("0.5".parse::<Scalar>().unwrap(), Scalar::from_ratio(1, 2));
        assert_eq!("-0.25".parse::<Scalar>().unwrap(), Scalar::from_ratio(-1, 4));
        assert_eq!("-3".parse::<Scalar>().unwrap(), Scalar::from_int(-3));
        assert_eq!("1/2+3/4 i".parse::<Scalar>().unwrap(), Scalar::new(rat(1, 2), rat(3, 4)));
        assert_eq!("1/2-i".parse::<Scalar>().unwrap(), Scalar::new(rat(1, 2), rat(-1, 1)));
        assert_eq!("-2/3*i".parse::<Scalar>().unwrap(), Scalar::new(rat(0, 1), rat(-2, 3)));
        assert_eq!("-1/2-1/3i".parse::<Scalar>().unwrap(), Scalar::new(rat(-1, 2), rat(-1, 3)));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["3/7", "-1/2+5 i", "2-1/9 i", "4 i"] {
            let x: Scalar = s.parse().unwrap();
            assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x);
        }
    }

    #[test]
    fn gaussian_field_ops() {
        let a = Scalar::new(rat(1, 2), rat(2, 1));
        let b = Scalar::new(rat(-3, 1), rat(1, 5));
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&a * &a.conj(), Scalar::real(a.norm_sqr()));
    }

    #[test]
    fn json_round_trip() {
        let a = Scalar::new(rat(-7, 3), rat(1, 4));
        let j = ScalarJson::from(&a);
        assert_eq!(Scalar::try_from(&j).unwrap(), a);
    }
}
