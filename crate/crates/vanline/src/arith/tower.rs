use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{forward_ref_ops, rat, rat_to_f64, rat_to_string, ArithError, Field, QuadElem, Rational};

/// `c0 + c1 a + ... + c4 a^4` in Q(w)[a]/(a^5 - r).
///
/// The radicand `r` defaults to 27. `radicand == None` marks an element of
/// Q(w) that has not met a tower yet (only `c0` may be nonzero); it takes
/// the radicand of the first tower element it is combined with.
#[derive(Clone, Debug)]
pub struct TowerElem {
    pub coeffs: [QuadElem; 5],
    pub radicand: Option<Rational>,
}

fn zero5() -> [QuadElem; 5] {
    std::array::from_fn(|_| QuadElem::zero())
}

impl TowerElem {
    pub const DEFAULT_RADICAND: i64 = 27;

    pub fn scalar(x: QuadElem) -> Self {
        let mut c = zero5();
        c[0] = x;
        TowerElem { coeffs: c, radicand: None }
    }

    /// The generator `a` of Q(w)[a]/(a^5 - radicand).
    pub fn generator(radicand: Rational) -> Self {
        let mut c = zero5();
        c[1] = QuadElem::one();
        TowerElem { coeffs: c, radicand: Some(radicand) }
    }

    /// `a` with a^5 = 27.
    pub fn a27() -> Self {
        Self::generator(rat(Self::DEFAULT_RADICAND, 1))
    }

    pub fn from_coeffs(coeffs: [QuadElem; 5], radicand: Rational) -> Self {
        TowerElem { coeffs, radicand: Some(radicand) }
    }

    pub fn omega() -> Self {
        Self::scalar(QuadElem::omega())
    }

    pub fn omega2() -> Self {
        Self::scalar(QuadElem::omega2())
    }

    /// True when only the constant coefficient is nonzero.
    pub fn is_scalar(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_scalar(&self) -> Option<&QuadElem> {
        if self.is_scalar() {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Same element viewed in the tower with radicand `r`.
    pub fn with_radicand(&self, r: &Rational) -> Result<Self, ArithError> {
        match &self.radicand {
            Some(s) if s != r && !self.is_scalar() => {
                Err(ArithError::TowerMismatch(rat_to_string(s), rat_to_string(r)))
            }
            _ => Ok(TowerElem { coeffs: self.coeffs.clone(), radicand: Some(r.clone()) }),
        }
    }

    fn join_radicand(&self, o: &TowerElem) -> Option<Rational> {
        match (&self.radicand, &o.radicand) {
            (Some(r), Some(s)) => {
                if r != s && !(self.is_scalar() || o.is_scalar()) {
                    panic!("{}", ArithError::TowerMismatch(rat_to_string(r), rat_to_string(s)));
                }
                if self.is_scalar() {
                    Some(s.clone())
                } else {
                    Some(r.clone())
                }
            }
            (Some(r), None) | (None, Some(r)) => Some(r.clone()),
            (None, None) => None,
        }
    }

    pub fn scale(&self, x: &QuadElem) -> Self {
        TowerElem {
            coeffs: std::array::from_fn(|i| self.coeffs[i].clone() * x.clone()),
            radicand: self.radicand.clone(),
        }
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        TowerElem {
            coeffs: std::array::from_fn(|i| self.coeffs[i].scale(r)),
            radicand: self.radicand.clone(),
        }
    }

    /// Galois conjugation w -> w^2 fixing `a`.
    pub fn conj_omega(&self) -> Self {
        TowerElem {
            coeffs: std::array::from_fn(|i| self.coeffs[i].conj()),
            radicand: self.radicand.clone(),
        }
    }

    /// Real fifth root of the radicand (27 when unset).
    pub fn real_root(&self) -> f64 {
        let r = self.radicand.as_ref().map(rat_to_f64).unwrap_or(Self::DEFAULT_RADICAND as f64);
        r.signum() * r.abs().powf(0.2)
    }

    /// Complex value under the embedding a -> r * zeta5^k, w -> exp(2 pi i/3).
    pub fn embed(&self, k: usize) -> Complex64 {
        let zeta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (k % 5) as f64 / 5.0);
        let a = zeta * self.real_root();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut p = Complex64::new(1.0, 0.0);
        for c in &self.coeffs {
            acc += c.to_complex() * p;
            p *= a;
        }
        acc
    }

    /// Number of distinct embeddings worth looking at: 5 in a genuine
    /// tower, 1 for a bare scalar.
    fn n_embeddings(radicand: &Option<Rational>) -> usize {
        if radicand.is_some() {
            5
        } else {
            1
        }
    }

    /// All exact n-th roots of `self` lying in its field.
    ///
    /// `context` fixes the tower to search in (a scalar like 27 has the
    /// fifth root `a` only once the tower is known). Candidates are
    /// reconstructed from the complex embeddings and then verified exactly,
    /// so a returned root is always correct. Roots whose coefficients have
    /// denominators above 10^4 can be missed.
    pub fn nth_roots(&self, n: u32, context: Option<&Rational>) -> Vec<TowerElem> {
        let radicand = match context {
            Some(r) => Some(r.clone()),
            None => self.radicand.clone(),
        };
        let target = match &radicand {
            Some(r) => match self.with_radicand(r) {
                Ok(t) => t,
                Err(_) => return Vec::new(),
            },
            None => self.clone(),
        };
        if target.is_zero() {
            return vec![target];
        }
        let m = Self::n_embeddings(&radicand);
        let probe = TowerElem { coeffs: zero5(), radicand: radicand.clone() };
        let r0 = probe.real_root();
        let roots_at: Vec<Vec<Complex64>> = (0..m)
            .map(|k| {
                let v = target.embed(k);
                let (mag, arg) = v.to_polar();
                (0..n)
                    .map(|j| {
                        Complex64::from_polar(
                            mag.powf(1.0 / n as f64),
                            (arg + 2.0 * std::f64::consts::PI * j as f64) / n as f64,
                        )
                    })
                    .collect()
            })
            .collect();
        let mut found: Vec<TowerElem> = Vec::new();
        let total = (n as usize).pow(m as u32);
        for combo in 0..total {
            let mut idx = combo;
            let vals: Vec<Complex64> = (0..m)
                .map(|k| {
                    let j = idx % n as usize;
                    idx /= n as usize;
                    roots_at[k][j]
                })
                .collect();
            let mut coeffs = zero5();
            let mut ok = true;
            for (i, slot) in coeffs.iter_mut().enumerate().take(if m == 1 { 1 } else { 5 }) {
                // inverse discrete Fourier transform over the five embeddings
                let mut s = Complex64::new(0.0, 0.0);
                for (k, v) in vals.iter().enumerate() {
                    let ang = -2.0 * std::f64::consts::PI * (i * k) as f64 / 5.0;
                    s += v * Complex64::from_polar(1.0, ang);
                }
                let c = s / (m as f64 * r0.powi(i as i32));
                match QuadElem::from_complex_guess(c, 10_000, 1e-11 * (1.0 + c.norm())) {
                    Some(q) => *slot = q,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let cand = TowerElem { coeffs, radicand: radicand.clone() };
            // cheap numeric screen before the exact check
            let close = (0..m).all(|k| (cand.embed(k) - vals[k]).norm() <= 1e-8 * (1.0 + vals[k].norm()));
            if close && cand.pow(n) == target && !found.contains(&cand) {
                found.push(cand);
            }
        }
        found
    }

    /// Inverse of [`TowerElem::pretty`]. Elements printed with a power of
    /// `a` are placed in the tower with the given radicand.
    pub fn parse(s: &str, radicand: &Rational) -> Result<Self, ArithError> {
        let t = s.trim();
        if !t.starts_with('(') {
            return QuadElem::parse(t).map(Self::scalar);
        }
        let bad = || ArithError::Parse(s.to_string());
        let mut coeffs = zero5();
        let mut depth = 0;
        let mut start = 0;
        let mut terms = Vec::new();
        for (i, c) in t.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' if depth == 0 => {
                    terms.push(&t[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        terms.push(&t[start..]);
        for term in terms {
            let term = term.trim();
            let close = term.rfind(')').ok_or_else(bad)?;
            let c = QuadElem::parse(term.strip_prefix('(').ok_or_else(bad)?.get(..close - 1).ok_or_else(bad)?)?;
            let k = match term[close + 1..].trim() {
                "" => 0,
                "*a" => 1,
                rest => rest.strip_prefix("*a^").and_then(|k| k.parse::<usize>().ok()).filter(|&k| k < 5).ok_or_else(bad)?,
            };
            coeffs[k] = coeffs[k].clone() + c;
        }
        Ok(Self::from_coeffs(coeffs, radicand.clone()))
    }

    /// Short human-readable form, e.g. `[c0; c1; ...]` trimmed of trailing zeros.
    pub fn pretty(&self) -> String {
        if self.is_scalar() {
            return self.coeffs[0].to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = match i {
                0 => format!("({})", c),
                1 => format!("({})*a", c),
                _ => format!("({})*a^{}", c, i),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

impl fmt::Display for TowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl PartialEq for TowerElem {
    fn eq(&self, o: &Self) -> bool {
        if self.coeffs != o.coeffs {
            return false;
        }
        match (&self.radicand, &o.radicand) {
            (Some(r), Some(s)) => r == s || self.is_scalar(),
            _ => true,
        }
    }
}

impl Eq for TowerElem {}

impl Hash for TowerElem {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.coeffs.hash(h);
    }
}

impl Add for TowerElem {
    type Output = TowerElem;
    fn add(self, o: TowerElem) -> TowerElem {
        let radicand = self.join_radicand(&o);
        let coeffs = std::array::from_fn(|i| self.coeffs[i].clone() + o.coeffs[i].clone());
        TowerElem { coeffs, radicand }
    }
}

impl Sub for TowerElem {
    type Output = TowerElem;
    fn sub(self, o: TowerElem) -> TowerElem {
        let radicand = self.join_radicand(&o);
        let coeffs = std::array::from_fn(|i| self.coeffs[i].clone() - o.coeffs[i].clone());
        TowerElem { coeffs, radicand }
    }
}

impl Mul for TowerElem {
    type Output = TowerElem;
    fn mul(self, o: TowerElem) -> TowerElem {
        let radicand = self.join_radicand(&o);
        let mut prod: Vec<QuadElem> = vec![QuadElem::zero(); 9];
        for i in 0..5 {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..5 {
                if o.coeffs[j].is_zero() {
                    continue;
                }
                prod[i + j] = prod[i + j].clone() + self.coeffs[i].clone() * o.coeffs[j].clone();
            }
        }
        // a^5 = r: fold the high half back down
        let mut coeffs = zero5();
        for (k, c) in prod.into_iter().enumerate() {
            if k < 5 {
                coeffs[k] = coeffs[k].clone() + c;
            } else if !c.is_zero() {
                let r = radicand.clone().expect("scalar product cannot reach degree 5");
                coeffs[k - 5] = coeffs[k - 5].clone() + c.scale(&r);
            }
        }
        TowerElem { coeffs, radicand }
    }
}

impl Neg for TowerElem {
    type Output = TowerElem;
    fn neg(self) -> TowerElem {
        TowerElem { coeffs: self.coeffs.map(|c| -c), radicand: self.radicand }
    }
}

forward_ref_ops!(TowerElem);

impl Zero for TowerElem {
    fn zero() -> Self {
        TowerElem { coeffs: zero5(), radicand: None }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl One for TowerElem {
    fn one() -> Self {
        TowerElem::scalar(QuadElem::one())
    }
}

impl Field for TowerElem {
    fn from_rational(r: &Rational) -> Self {
        TowerElem::scalar(QuadElem::from_rational(r.clone()))
    }

    fn as_rational(&self) -> Option<Rational> {
        self.as_scalar().and_then(|q| q.as_rational())
    }

    fn try_inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if let Some(s) = self.as_scalar() {
            return Ok(TowerElem { coeffs: TowerElem::scalar(s.try_inv()?).coeffs, radicand: self.radicand.clone() });
        }
        let r = self.radicand.clone().expect("non-scalar element without radicand");
        if r.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        // Solve (self) * y = 1 as a 5x5 linear system over Q(w).
        // Column j of the multiplication matrix is self * a^j.
        let mut cols: Vec<[QuadElem; 5]> = Vec::with_capacity(5);
        let mut cur = self.clone();
        let gen = TowerElem::generator(r.clone());
        for _ in 0..5 {
            cols.push(cur.coeffs.clone());
            cur = cur * gen.clone();
        }
        let mut m: Vec<Vec<QuadElem>> = (0..5)
            .map(|i| {
                let mut row: Vec<QuadElem> = (0..5).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { QuadElem::one() } else { QuadElem::zero() });
                row
            })
            .collect();
        for col in 0..5 {
            let piv = (col..5).find(|&i| !m[i][col].is_zero()).ok_or(ArithError::DivisionByZero)?;
            m.swap(col, piv);
            let inv = m[col][col].try_inv()?;
            for x in m[col].iter_mut() {
                *x = x.clone() * inv.clone();
            }
            for i in 0..5 {
                if i != col && !m[i][col].is_zero() {
                    let f = m[i][col].clone();
                    let pivot_row = m[col].clone();
                    for (x, p) in m[i].iter_mut().zip(pivot_row) {
                        *x = x.clone() - f.clone() * p;
                    }
                }
            }
        }
        let coeffs = std::array::from_fn(|i| m[i][5].clone());
        Ok(TowerElem { coeffs, radicand: Some(r) })
    }
}

impl From<QuadElem> for TowerElem {
    fn from(q: QuadElem) -> Self {
        TowerElem::scalar(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> TowerElem {
        TowerElem::a27()
    }

    #[test]
    fn generator_fifth_power() {
        assert_eq!(a().pow(5), TowerElem::from_int(27));
        assert!(!a().pow(4).is_scalar());
    }

    #[test]
    fn pretty_roundtrip() {
        let r = rat(27, 1);
        let x = TowerElem::from_int(3) + a().scale(&QuadElem::new(rat(-1, 2), rat(1, 6))) + a().pow(4).scale(&QuadElem::sqrt_m3());
        for y in [x, a(), TowerElem::omega(), -a().pow(3), TowerElem::zero()] {
            assert_eq!(TowerElem::parse(&y.pretty(), &r).unwrap(), y, "{}", y.pretty());
        }
        assert!(TowerElem::parse("(1)*a^7", &r).is_err());
        assert!(TowerElem::parse("(1", &r).is_err());
    }

    #[test]
    fn inverse_of_a() {
        let expected = a().pow(4).scale_rat(&rat(1, 27));
        assert_eq!(a().try_inv().unwrap(), expected);
    }

    #[test]
    fn general_inverse() {
        let x = TowerElem::from_int(2) + a() * TowerElem::omega() + a().pow(3).scale_rat(&rat(-1, 4));
        let y = x.try_inv().unwrap();
        assert_eq!(x * y, TowerElem::one());
    }

    #[test]
    fn scalar_adopts_radicand() {
        let s = TowerElem::from_int(3);
        let p = s.clone() * a();
        assert_eq!(p.radicand, Some(rat(27, 1)));
        assert_eq!(s, TowerElem::from_int(3).with_radicand(&rat(27, 1)).unwrap());
    }

    #[test]
    fn fifth_root_of_27_is_a() {
        let roots = TowerElem::from_int(27).nth_roots(5, Some(&rat(27, 1)));
        assert_eq!(roots, vec![a()]);
    }

    #[test]
    fn fifth_roots_unique_in_tower() {
        // (a/3)(1 - w) has a unique fifth root in its own field
        let x = a().scale_rat(&rat(1, 3)) * (TowerElem::one() - TowerElem::omega());
        let roots = x.pow(5).nth_roots(5, Some(&rat(27, 1)));
        assert_eq!(roots, vec![x]);
    }

    #[test]
    fn square_roots_in_quad_field() {
        let x = TowerElem::from_int(-3);
        let mut roots = x.nth_roots(2, None);
        roots.sort_by_key(|r| r.coeffs[0].b > Rational::zero());
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| r.pow(2) == x));
        assert!(TowerElem::from_int(2).nth_roots(2, None).is_empty());
    }

    #[test]
    fn embeddings_respect_relation() {
        for k in 0..5 {
            let v = a().pow(5).embed(k);
            assert!((v - Complex64::new(27.0, 0.0)).norm() < 1e-9);
            let w = a().embed(k).powu(5);
            assert!((w - Complex64::new(27.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn other_radicand() {
        let b = TowerElem::generator(rat(26, 1));
        assert_eq!(b.pow(5) + TowerElem::one(), TowerElem::from_int(27));
    }
}
