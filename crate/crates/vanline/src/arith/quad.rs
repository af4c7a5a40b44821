use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::{forward_ref_ops, parse_rational, rat, rat_to_f64, rat_to_string, ArithError, Field, Rational};

/// `a + b*sqrt(-3)` with rational `a`, `b`.
///
/// The same field is Q(w) with w = (-1 + sqrt(-3))/2; [`QuadElem::from_omega`]
/// and [`QuadElem::omega_coords`] convert between the two views.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadElem {
    pub a: Rational,
    pub b: Rational,
}

impl QuadElem {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadElem { a, b }
    }

    pub fn from_rational(r: Rational) -> Self {
        QuadElem { a: r, b: Rational::zero() }
    }

    pub fn sqrt_m3() -> Self {
        QuadElem { a: Rational::zero(), b: rat(1, 1) }
    }

    /// The cube root of unity (-1 + sqrt(-3))/2.
    pub fn omega() -> Self {
        QuadElem { a: rat(-1, 2), b: rat(1, 2) }
    }

    pub fn omega2() -> Self {
        QuadElem { a: rat(-1, 2), b: rat(-1, 2) }
    }

    /// c + d*w
    pub fn from_omega(c: Rational, d: Rational) -> Self {
        let half = rat(1, 2);
        QuadElem { a: c - &d * &half, b: d * half }
    }

    /// Parses `omega`, `omega2` (also `omega^2`), either with a leading
    /// `-`, a rational, or `c,d` meaning c + d*w.
    pub fn parse(s: &str) -> Result<Self, ArithError> {
        let t = s.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) if rest.trim_start().starts_with('o') => (true, rest.trim()),
            _ => (false, t),
        };
        if let Some(x) = Self::parse_display(body) {
            return x.map(|x| if neg { -x } else { x });
        }
        let x = match body {
            "omega" | "w" => QuadElem::omega(),
            "omega2" | "omega^2" | "w2" | "w^2" => QuadElem::omega2(),
            _ => match body.split_once(',') {
                Some((c, d)) => QuadElem::from_omega(parse_rational(c)?, parse_rational(d)?),
                None => QuadElem::from_rational(parse_rational(body)?),
            },
        };
        Ok(if neg { -x } else { x })
    }

    /// The `Display` form `p/q + r/s*sqrt(-3)`; None when there is no
    /// `sqrt(-3)` term.
    fn parse_display(t: &str) -> Option<Result<Self, ArithError>> {
        let body: String = t.chars().filter(|c| !c.is_whitespace()).collect();
        let body = body.strip_suffix("sqrt(-3)")?;
        let body = body.strip_suffix('*').unwrap_or(body);
        // a sign past the first character separates the two parts
        let split = body.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').last().map(|(i, _)| i);
        let (a, b) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let b = match b {
            "" | "+" => "1",
            "-" => "-1",
            b => b.strip_prefix('+').unwrap_or(b),
        };
        Some(parse_rational(a).and_then(|a| Ok(QuadElem::new(a, parse_rational(b)?))))
    }

    /// (c, d) with self = c + d*w.
    pub fn omega_coords(&self) -> (Rational, Rational) {
        let d = &self.b * rat(2, 1);
        let c = &self.a + &self.b;
        (c, d)
    }

    pub fn conj(&self) -> Self {
        QuadElem { a: self.a.clone(), b: -self.b.clone() }
    }

    /// a^2 + 3 b^2
    pub fn norm(&self) -> Rational {
        &self.a * &self.a + rat(3, 1) * &self.b * &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QuadElem { a: &self.a * r, b: &self.b * r }
    }

    /// Complex value with sqrt(-3) = i*sqrt(3).
    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.a), rat_to_f64(&self.b) * 3f64.sqrt())
    }

    /// Tries to read a complex number back as an element with small
    /// denominators. The result still has to be verified by the caller.
    pub fn from_complex_guess(z: Complex64, max_den: i64, tol: f64) -> Option<Self> {
        let a = super::rational_from_f64(z.re, max_den, tol)?;
        let b = super::rational_from_f64(z.im / 3f64.sqrt(), max_den, tol)?;
        Some(QuadElem { a, b })
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", rat_to_string(&self.a)),
            (true, false) => write!(f, "{}*sqrt(-3)", rat_to_string(&self.b)),
            (false, false) => {
                let sign = if self.b.is_negative() { "-" } else { "+" };
                write!(f, "{} {} {}*sqrt(-3)", rat_to_string(&self.a), sign, rat_to_string(&self.b.abs()))
            }
        }
    }
}

impl Add for QuadElem {
    type Output = QuadElem;
    fn add(self, o: QuadElem) -> QuadElem {
        QuadElem { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for QuadElem {
    type Output = QuadElem;
    fn sub(self, o: QuadElem) -> QuadElem {
        QuadElem { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Mul for QuadElem {
    type Output = QuadElem;
    fn mul(self, o: QuadElem) -> QuadElem {
        let a = &self.a * &o.a - rat(3, 1) * &self.b * &o.b;
        let b = &self.a * &o.b + &self.b * &o.a;
        QuadElem { a, b }
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem { a: -self.a, b: -self.b }
    }
}

forward_ref_ops!(QuadElem);

impl Zero for QuadElem {
    fn zero() -> Self {
        QuadElem { a: Rational::zero(), b: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadElem {
    fn one() -> Self {
        QuadElem { a: rat(1, 1), b: Rational::zero() }
    }
}

impl Field for QuadElem {
    fn from_rational(r: &Rational) -> Self {
        QuadElem::from_rational(r.clone())
    }
    fn try_inv(&self) -> Result<Self, ArithError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let c = self.conj();
        Ok(QuadElem { a: c.a / &n, b: c.b / n })
    }
    fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> QuadElem {
        QuadElem::omega()
    }

    #[test]
    fn omega_cubed_is_one() {
        assert_eq!(w() * QuadElem::omega2(), QuadElem::one());
        assert_eq!(w().pow(3), QuadElem::one());
    }

    #[test]
    fn omega_sum_vanishes() {
        assert!((QuadElem::one() + w() + QuadElem::omega2()).is_zero());
    }

    #[test]
    fn one_minus_omega_squared() {
        // (1-w)^2 = 1 - 2w + w^2 = -3w
        let x = QuadElem::one() - w();
        assert_eq!(x.pow(2), w().scale(&rat(-3, 1)));
    }

    #[test]
    fn one_minus_omega_fifth() {
        let x = QuadElem::one() - w();
        let w2 = QuadElem::omega2();
        assert_eq!(x.pow(5), (w2.clone() - QuadElem::one()).scale(&rat(9, 1)));
        let y = QuadElem::one() - w2;
        assert_eq!(y.pow(5), (w() - QuadElem::one()).scale(&rat(9, 1)));
        assert_eq!(x * (QuadElem::one() - QuadElem::omega2()), QuadElem::from_int(3));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(QuadElem::parse("omega").unwrap(), w());
        assert_eq!(QuadElem::parse("-omega").unwrap(), -w());
        assert_eq!(QuadElem::parse(" omega^2").unwrap(), QuadElem::omega2());
        assert_eq!(QuadElem::parse("-3/4").unwrap(), QuadElem::from_rational(rat(-3, 4)));
        assert_eq!(QuadElem::parse("1, -2").unwrap(), QuadElem::from_omega(rat(1, 1), rat(-2, 1)));
        assert!(QuadElem::parse("omega3").is_err());
        for x in [QuadElem::new(rat(-1, 2), rat(1, 6)), QuadElem::new(rat(0, 1), rat(-5, 3)), QuadElem::new(rat(2, 1), rat(0, 1)), QuadElem::sqrt_m3(), -QuadElem::sqrt_m3()] {
            assert_eq!(QuadElem::parse(&x.to_string()).unwrap(), x, "{x}");
        }
        assert!(QuadElem::parse("1/0 + sqrt(-3)").is_err());
        assert!(QuadElem::parse("1,").is_err());
    }

    #[test]
    fn omega_view_roundtrip() {
        let x = QuadElem::new(rat(2, 7), rat(-5, 3));
        let (c, d) = x.omega_coords();
        assert_eq!(QuadElem::from_omega(c, d), x);
        assert_eq!(w().omega_coords(), (rat(0, 1), rat(1, 1)));
    }

    #[test]
    fn inverse_and_norm() {
        let x = QuadElem::new(rat(3, 2), rat(1, 5));
        assert_eq!(x.clone() * x.try_inv().unwrap(), QuadElem::one());
        assert!(QuadElem::zero().try_inv().is_err());
        assert_eq!(QuadElem::sqrt_m3().pow(2), QuadElem::from_int(-3));
    }

    #[test]
    fn display() {
        assert_eq!(QuadElem::omega().to_string(), "-1/2 + 1/2*sqrt(-3)");
        assert_eq!(QuadElem::zero().to_string(), "0");
    }
}
