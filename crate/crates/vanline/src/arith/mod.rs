//! Exact arithmetic: rationals, Q(sqrt(-3)), the quintic tower over it,
//! truncated power series and integer matrices with Smith normal form.

mod matrix;
mod quad;
mod series;
mod tower;

pub use matrix::{FieldMatrix, IntMatrix, Snf};
pub use quad::QuadElem;
pub use series::TruncSeries;
pub use tower::TowerElem;

use std::fmt;
use std::ops::{Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rationals. Thin alias so callers do not need `num_rational`.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements live in different towers (radicands {0} and {1})")]
    TowerMismatch(String, String),
    #[error("cannot parse {0:?} as a rational")]
    Parse(String),
}

/// The operations every coefficient field here supports.
///
/// `zero`/`one` come from `num_traits` and are context free. For
/// [`TowerElem`] they are "scalar" elements that adopt the radicand of
/// whatever they meet.
pub trait Field:
    Clone + PartialEq + fmt::Debug + Zero + One + Sub<Output = Self> + Neg<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;
    fn try_inv(&self) -> Result<Self, ArithError>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn try_div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self.clone() * other.try_inv()?)
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// The element as a rational number, when it is one.
    fn as_rational(&self) -> Option<Rational> {
        None
    }

    /// Integer power, negative exponents allowed for nonzero elements.
    fn powi(&self, e: i64) -> Result<Self, ArithError> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.try_inv()?.pow((-e) as u32))
        }
    }
}

impl Field for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn try_inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            Err(ArithError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

/// Shorthand constructor for p/q. Panics on q = 0.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Render as `p` or `p/q`.
pub fn rat_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p`, `p/q` or a finite decimal like `-0.25`.
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let t = s.trim();
    let bad = || ArithError::Parse(s.to_string());
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        let neg = ip.starts_with('-');
        let ip_abs = ip.trim_start_matches(['-', '+']);
        let ip_abs = if ip_abs.is_empty() { "0" } else { ip_abs };
        let whole: BigInt = ip_abs.parse().map_err(|_| bad())?;
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let frac: BigInt = fp.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let v = Rational::new(whole * &scale + frac, scale);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Best rational approximation with denominator at most `max_den`,
/// accepted only if within `tol` of `x`.
pub fn rational_from_f64(x: f64, max_den: i64, tol: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    // continued-fraction convergents
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e18 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if ((h1 as f64) / (k1 as f64) - x).abs() <= tol {
            return Some(Rational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = r - a;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    if k1 != 0 && ((h1 as f64) / (k1 as f64) - x).abs() <= tol {
        Some(Rational::new(BigInt::from(h1), BigInt::from(k1)))
    } else {
        None
    }
}

pub(crate) fn rat_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // huge values: scale through the integer parts
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        if r.is_negative() {
            -(n.abs() / d)
        } else {
            n / d
        }
    })
}

/// Implements the reference forms of the binary operators by cloning.
macro_rules! forward_ref_ops {
    ($t:ty) => {
        impl<'a> std::ops::Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, o: &'a $t) -> $t {
                self.clone() + o.clone()
            }
        }
        impl<'a> std::ops::Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, o: &'a $t) -> $t {
                self.clone() - o.clone()
            }
        }
        impl<'a> std::ops::Mul<&'a $t> for &'a $t {
            type Output = $t;
            fn mul(self, o: &'a $t) -> $t {
                self.clone() * o.clone()
            }
        }
        impl<'a> std::ops::Neg for &'a $t {
            type Output = $t;
            fn neg(self) -> $t {
                -self.clone()
            }
        }
    };
}
pub(crate) use forward_ref_ops;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational(" 7 ").unwrap(), rat(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn cf_reconstruction() {
        assert_eq!(rational_from_f64(0.333333333333, 1000, 1e-9), Some(rat(1, 3)));
        assert_eq!(rational_from_f64(-2.5, 10, 1e-12), Some(rat(-5, 2)));
        assert_eq!(rational_from_f64(std::f64::consts::PI, 10, 1e-9), None);
    }

    #[test]
    fn rational_field_pow() {
        let x = rat(2, 3);
        assert_eq!(x.pow(3), rat(8, 27));
        assert_eq!(x.powi(-2).unwrap(), rat(9, 4));
        assert!(Rational::zero().try_inv().is_err());
    }
}
