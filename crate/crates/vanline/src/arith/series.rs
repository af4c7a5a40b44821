use std::fmt;

use super::{Field, Rational};

/// Power series in one variable, truncated after `x^order`.
///
/// Binary operations on series of different orders truncate to the
/// smaller order.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries<F: Field> {
    pub var: String,
    coeffs: Vec<F>,
}

impl<F: Field> TruncSeries<F> {
    pub const DEFAULT_ORDER: usize = 16;

    pub fn zero(var: &str, order: usize) -> Self {
        TruncSeries { var: var.to_string(), coeffs: vec![F::zero(); order + 1] }
    }

    pub fn constant(var: &str, order: usize, c: F) -> Self {
        let mut s = Self::zero(var, order);
        s.coeffs[0] = c;
        s
    }

    /// `var` itself (zero when order is 0).
    pub fn variable(var: &str, order: usize) -> Self {
        let mut s = Self::zero(var, order);
        if order >= 1 {
            s.coeffs[1] = F::one();
        }
        s
    }

    /// Coefficients beyond `order` are dropped, missing ones are zero.
    pub fn from_coeffs(var: &str, order: usize, coeffs: Vec<F>) -> Self {
        let mut s = Self::zero(var, order);
        for (k, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.coeffs[k] = c;
        }
        s
    }

    /// Sparse constructor from (exponent, coefficient) pairs.
    pub fn from_terms(var: &str, order: usize, terms: impl IntoIterator<Item = (usize, F)>) -> Self {
        let mut s = Self::zero(var, order);
        for (k, c) in terms {
            if k <= order {
                s.coeffs[k] = s.coeffs[k].clone() + c;
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(&self.var, order, self.coeffs.clone())
    }

    fn zip_with(&self, o: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        let n = self.order().min(o.order());
        let coeffs = (0..=n).map(|k| f(&self.coeffs[k], &o.coeffs[k])).collect();
        TruncSeries { var: self.var.clone(), coeffs }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip_with(o, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip_with(o, |a, b| a.clone() - b.clone())
    }

    pub fn neg(&self) -> Self {
        TruncSeries { var: self.var.clone(), coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        TruncSeries { var: self.var.clone(), coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = vec![F::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if o.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].clone() + self.coeffs[i].clone() * o.coeffs[j].clone();
            }
        }
        TruncSeries { var: self.var.clone(), coeffs: out }
    }

    /// theta = var * d/d(var): c_k -> k c_k.
    pub fn theta(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.clone() * F::from_int(k as i64))
            .collect();
        TruncSeries { var: self.var.clone(), coeffs }
    }

    pub fn theta_n(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |s, _| s.theta())
    }

    /// Multiplies coefficient k by `f(k)`.
    pub fn map_indexed(&self, f: impl Fn(usize, &F) -> F) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(k, c)| f(k, c)).collect();
        TruncSeries { var: self.var.clone(), coeffs }
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        self.scale(&F::from_rational(r))
    }
}

impl<F: Field + fmt::Display> fmt::Display for TruncSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({})", c)?,
                1 => write!(f, "({}){}", c, self.var)?,
                _ => write!(f, "({}){}^{}", c, self.var, k)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.var, self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, QuadElem};
    use num_traits::Zero;

    type S = TruncSeries<QuadElem>;

    fn q(n: i64) -> QuadElem {
        QuadElem::from_int(n)
    }

    #[test]
    fn theta_of_constant_is_zero() {
        assert!(S::constant("Q", 4, q(7)).theta().is_zero());
    }

    #[test]
    fn theta_small() {
        let s = S::from_coeffs("Q", 4, vec![q(0), q(1), q(1)]);
        assert_eq!(s.theta(), S::from_coeffs("Q", 4, vec![q(0), q(1), q(2)]));
    }

    #[test]
    fn theta_squared_weights_by_square() {
        let s = S::from_terms("Q", 4, (1..=4).map(|d| (d, QuadElem::sqrt_m3().scale(&rat(d as i64 * 7, 3)))));
        let expect = s.map_indexed(|k, c| c.clone() * q((k * k) as i64));
        assert_eq!(s.theta_n(2), expect);
    }

    #[test]
    fn mixed_orders_truncate() {
        let a = S::variable("Q", 5);
        let b = S::variable("Q", 2);
        assert_eq!(a.add(&b).order(), 2);
        assert_eq!(a.mul(&a).coeff(2), q(1));
        assert_eq!(b.mul(&b).mul(&b).coeff(3), QuadElem::zero());
    }

    #[test]
    fn display() {
        let s = S::from_coeffs("Q", 2, vec![q(1), q(0), q(-2)]);
        assert_eq!(s.to_string(), "(1) + (-2)Q^2 + O(Q^3)");
    }
}
