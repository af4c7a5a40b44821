//! Rank-one local systems on the immersed Lagrangian: the five teardrop
//! obstruction equations, the two van Geemen solutions, the extension of
//! a pair-of-pants point to a full solution and the genus of the
//! solution curve.
//!
//! Holonomies live in a [`TowerElem`] field. The longitude holonomies are
//! monomials in the meridian holonomies up to the fixed signs
//! [`LONGITUDE_SIGNS`]:
//!
//! ```text
//! l0 = s0 / (m1 m4)   l1 = s1 m2 / m0   l2 = s2 m1 / m3
//! l3 = s3 m4 / m2     l4 = s4 m3 / m0
//! ```

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::{rat, ArithError, Field, Rational, TowerElem};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LocSysError {
    #[error("holonomy {0} is zero")]
    ZeroHolonomy(String),
    #[error("a^5 = {0}, expected 27")]
    BadA(String),
    #[error("pair-of-pants equation fails at (mu0, lambda0): residue {0}")]
    NotOnPants(String),
    #[error("longitude l{0} disagrees with its meridian monomial")]
    Inconsistent(usize),
    #[error("tuple JSON: {0}")]
    Json(String),
    #[error("cycle data: {0}")]
    Cycles(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Signs in front of the longitude monomials. They come with the spin
/// structure; these are the ones for which the two van Geemen tuples are
/// consistent.
pub const LONGITUDE_SIGNS: [i64; 5] = [1, 1, -1, -1, -1];

/// Exponents of m0..m4 in each longitude monomial.
pub const LONGITUDE_EXPONENTS: [[i64; 5]; 5] = [
    [0, -1, 0, 0, -1],
    [-1, 0, 1, 0, 0],
    [0, 1, 0, -1, 0],
    [0, 0, -1, 0, 1],
    [-1, 0, 0, 1, 0],
];

#[derive(Clone, Debug, PartialEq)]
pub struct HolonomyTuple {
    pub mu: [TowerElem; 5],
    pub lambda: [TowerElem; 5],
}

#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionResidues {
    pub r: [TowerElem; 5],
}

impl ObstructionResidues {
    pub fn all_zero(&self) -> bool {
        self.r.iter().all(|x| x.is_zero())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.r.iter().map(|x| Value::String(x.pretty())).collect())
    }
}

fn inv(x: &TowerElem) -> Result<TowerElem, LocSysError> {
    Ok(x.try_inv()?)
}

impl HolonomyTuple {
    pub fn check_nonzero(&self) -> Result<(), LocSysError> {
        for i in 0..5 {
            if self.mu[i].is_zero() {
                return Err(LocSysError::ZeroHolonomy(format!("mu{i}")));
            }
            if self.lambda[i].is_zero() {
                return Err(LocSysError::ZeroHolonomy(format!("lambda{i}")));
            }
        }
        Ok(())
    }

    /// The longitude value forced by the meridians.
    pub fn monomial(&self, i: usize) -> Result<TowerElem, LocSysError> {
        let mut acc = TowerElem::from_int(LONGITUDE_SIGNS[i]);
        for (j, &e) in LONGITUDE_EXPONENTS[i].iter().enumerate() {
            if e != 0 {
                acc = acc * self.mu[j].powi(e)?;
            }
        }
        Ok(acc)
    }

    pub fn check_consistency(&self) -> Result<(), LocSysError> {
        for i in 0..5 {
            if self.monomial(i)? != self.lambda[i] {
                return Err(LocSysError::Inconsistent(i));
            }
        }
        Ok(())
    }

    pub fn conj_omega(&self) -> HolonomyTuple {
        HolonomyTuple {
            mu: std::array::from_fn(|i| self.mu[i].conj_omega()),
            lambda: std::array::from_fn(|i| self.lambda[i].conj_omega()),
        }
    }

    /// Reads the form written by [`HolonomyTuple::to_json`]; powers of `a`
    /// refer to a^5 = 27.
    pub fn from_json(v: &Value) -> Result<Self, LocSysError> {
        let radicand = rat(TowerElem::DEFAULT_RADICAND, 1);
        let read = |key: &str| -> Result<[TowerElem; 5], LocSysError> {
            let arr = v.get(key).and_then(Value::as_array).filter(|a| a.len() == 5).ok_or_else(|| LocSysError::Json(format!("{key} must be an array of 5 elements")))?;
            let mut out = Vec::with_capacity(5);
            for (i, x) in arr.iter().enumerate() {
                let text = match x {
                    Value::String(s) => s.clone(),
                    Value::Number(n) => n.to_string(),
                    _ => return Err(LocSysError::Json(format!("{key}[{i}] must be a string or number"))),
                };
                out.push(TowerElem::parse(&text, &radicand).map_err(|e| LocSysError::Json(format!("{key}[{i}]: {e}")))?);
            }
            Ok(std::array::from_fn(|i| out[i].clone()))
        };
        let h = HolonomyTuple { mu: read("mu")?, lambda: read("lambda")? };
        h.check_nonzero()?;
        Ok(h)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "mu": self.mu.iter().map(|x| x.pretty()).collect::<Vec<_>>(),
            "lambda": self.lambda.iter().map(|x| x.pretty()).collect::<Vec<_>>(),
        })
    }
}

/// Left-hand sides of the five obstruction equations.
pub fn residues(h: &HolonomyTuple) -> Result<ObstructionResidues, LocSysError> {
    h.check_nonzero()?;
    let one = TowerElem::one();
    let (m, l) = (&h.mu, &h.lambda);
    let r0 = one.clone() + inv(&m[0])? + inv(&(m[0].clone() * l[0].clone()))?;
    let r1 = -one.clone() - m[1].pow(5) + l[1].powi(-5)?;
    let r2 = -one.clone() - m[2].powi(-5)? - l[2].pow(5);
    let r3 = -one.clone() - m[3].powi(-5)? + l[3].pow(5);
    let r4 = -one + m[4].pow(5) + m[4].pow(5) * l[4].pow(5);
    Ok(ObstructionResidues { r: [r0, r1, r2, r3, r4] })
}

/// Residue of the first equation only.
pub fn pants_residue(mu0: &TowerElem, lambda0: &TowerElem) -> Result<TowerElem, LocSysError> {
    Ok(TowerElem::one() + inv(mu0)? + inv(&(mu0.clone() * lambda0.clone()))?)
}

/// Which primitive cube root plays the role of w.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubeRoot {
    Omega,
    Omega2,
}

/// The van Geemen local system for the cube root `which` and the fifth
/// root `a` of 27 (the tower generator or any element with a^5 = 27).
///
/// Meridians: m0 = w, m1 = -w, 1/m2 = (a/3)(1 - w^2), 1/m3 = -w,
/// 1/m4 = -w^2. Longitudes: l0 = w, 1/l1 = -(a/3)(1 - w), l2 = -w^2,
/// l3 = -(a/3)(1 - w), l4 = w.
pub fn van_geemen_tuple(which: CubeRoot, a: &TowerElem) -> Result<HolonomyTuple, LocSysError> {
    if a.pow(5) != TowerElem::from_int(27) {
        return Err(LocSysError::BadA(a.pow(5).pretty()));
    }
    let w = match which {
        CubeRoot::Omega => TowerElem::omega(),
        CubeRoot::Omega2 => TowerElem::omega2(),
    };
    let w2 = w.clone() * w.clone();
    let one = TowerElem::one();
    let a3 = a.scale_rat(&rat(1, 3));
    let mu = [
        w.clone(),
        -w.clone(),
        inv(&(a3.clone() * (one.clone() - w2.clone())))?,
        inv(&-w.clone())?,
        inv(&-w2.clone())?,
    ];
    let lambda = [
        w.clone(),
        inv(&-(a3.clone() * (one.clone() - w.clone())))?,
        -w2,
        -(a3 * (one - w.clone())),
        w,
    ];
    let h = HolonomyTuple { mu, lambda };
    h.check_consistency()?;
    Ok(h)
}

/// Outcome of [`extend_point`]: solutions plus a note for each branch that
/// produced none.
#[derive(Clone, Debug, Default)]
pub struct Extension {
    pub tuples: Vec<HolonomyTuple>,
    pub diagnostics: Vec<String>,
}

/// Fifth powers X_i = mu_i^5 along one branch of the quadratic.
#[derive(Clone, Debug)]
struct FifthPowers {
    x: [TowerElem; 5],
}

/// Coefficient c of the quadratic c t^2 + c t - 1 = 0 in t = lambda4^5,
/// for the signs in [`LONGITUDE_SIGNS`]: c = mu0^5 + lambda0^-5.
pub fn quadratic_coefficient(mu0: &TowerElem, lambda0: &TowerElem) -> Result<TowerElem, LocSysError> {
    Ok(mu0.pow(5) + lambda0.powi(-5)?)
}

fn chain_from_t(t: &TowerElem, x0: &TowerElem, y0: &TowerElem) -> Result<FifthPowers, String> {
    let s = LONGITUDE_SIGNS.map(TowerElem::from_int);
    let one = TowerElem::one();
    let guard = |v: &TowerElem, what: &str| -> Result<TowerElem, String> {
        v.try_inv().map_err(|_| format!("{what} vanishes"))
    };
    // equation 4: X4 (1 + t) = 1
    let x4 = guard(&(one.clone() + t.clone()), "1 + lambda4^5")?;
    // l4 = s4 m3 / m0
    let x3 = s[4].clone() * t.clone() * x0.clone();
    // l0 = s0 / (m1 m4)
    let x1 = s[0].clone() * guard(&(y0.clone() * x4.clone()), "lambda0^5 mu4^5")?;
    // equation 1: 1/Y1 = 1 + X1
    let y1 = guard(&(one + x1.clone()), "1 + mu1^5")?;
    // l1 = s1 m2 / m0
    let x2 = s[1].clone() * y1 * x0.clone();
    Ok(FifthPowers { x: [x0.clone(), x1, x2, x3, x4] })
}

/// Extends (mu0, lambda0) on the pair of pants to full solutions.
///
/// The chain: equation 4 gives mu4^5 from t = lambda4^5, the longitude
/// monomials and equation 1 give mu3^5, mu1^5, mu2^5, and equation 3 then
/// forces c t^2 + c t - 1 = 0. Exact square and fifth roots are taken in
/// the tower with radicand `radicand` (27 by default). Fifth roots there
/// are unique when they exist, so each root t yields at most one tuple.
/// Every returned tuple has been checked against all five equations;
/// branches that fail are reported in `diagnostics`.
pub fn extend_point(mu0: &TowerElem, lambda0: &TowerElem, radicand: Option<&Rational>) -> Result<Extension, LocSysError> {
    let r0 = pants_residue(mu0, lambda0)?;
    if !r0.is_zero() {
        return Err(LocSysError::NotOnPants(r0.pretty()));
    }
    let radicand = radicand.cloned().unwrap_or_else(|| rat(TowerElem::DEFAULT_RADICAND, 1));
    let mut out = Extension::default();
    let x0 = mu0.pow(5);
    let y0 = lambda0.pow(5);
    let c = quadratic_coefficient(mu0, lambda0)?;
    if c.is_zero() {
        out.diagnostics.push("quadratic degenerates (mu0^5 + lambda0^-5 = 0)".into());
        return Ok(out);
    }
    // t = (-c +- sqrt(c^2 + 4c)) / (2c)
    let disc = c.clone() * c.clone() + c.scale_rat(&rat(4, 1));
    let sqrts = disc.nth_roots(2, Some(&radicand));
    if sqrts.is_empty() {
        out.diagnostics.push(format!("discriminant {} has no square root in the field", disc.pretty()));
        return Ok(out);
    }
    let two_c_inv = c.scale_rat(&rat(2, 1)).try_inv()?;
    let mut ts: Vec<TowerElem> = sqrts.iter().map(|s| (s.clone() - c.clone()) * two_c_inv.clone()).collect();
    ts.dedup();
    for t in ts {
        let powers = match chain_from_t(&t, &x0, &y0) {
            Ok(p) => p,
            Err(msg) => {
                out.diagnostics.push(format!("lambda4^5 = {}: {msg}", t.pretty()));
                continue;
            }
        };
        let mut mu: Vec<TowerElem> = vec![mu0.clone()];
        let mut missing = None;
        for i in 1..5 {
            let roots = powers.x[i].nth_roots(5, Some(&radicand));
            match roots.into_iter().next() {
                Some(r) => mu.push(r),
                None => {
                    missing = Some(i);
                    break;
                }
            }
        }
        if let Some(i) = missing {
            out.diagnostics.push(format!("lambda4^5 = {}: mu{i}^5 = {} has no fifth root in the field", t.pretty(), powers.x[i].pretty()));
            continue;
        }
        let mu: [TowerElem; 5] = std::array::from_fn(|i| mu[i].clone());
        let mut h = HolonomyTuple { mu, lambda: std::array::from_fn(|_| TowerElem::one()) };
        for i in 0..5 {
            h.lambda[i] = h.monomial(i)?;
        }
        if h.lambda[0] != *lambda0 {
            out.diagnostics.push(format!("lambda4^5 = {}: recovered lambda0 differs from input", t.pretty()));
            continue;
        }
        let res = residues(&h)?;
        if !res.all_zero() {
            let bad: Vec<usize> = (0..5).filter(|&i| !res.r[i].is_zero()).collect();
            out.diagnostics.push(format!("lambda4^5 = {}: equations {bad:?} not satisfied", t.pretty()));
            continue;
        }
        out.tuples.push(h);
    }
    Ok(out)
}

/// Floating version of [`extend_point`] for exploring points whose roots
/// are not in a small field. `root_choice[i]` picks which complex fifth
/// root is used for mu_(i+1). Returns (lambda4^5, tuple, max |residue|)
/// per branch. Not used for any exact claim.
pub fn extend_point_numeric(mu0: Complex64, lambda0: Complex64, root_choice: [usize; 4]) -> Vec<(Complex64, [Complex64; 5], [Complex64; 5], f64)> {
    let s = LONGITUDE_SIGNS.map(|x| x as f64);
    let x0 = mu0.powu(5);
    let y0 = lambda0.powu(5);
    let c = x0 + y0.inv();
    let disc = (c * c + 4.0 * c).sqrt();
    let mut out = Vec::new();
    for sign in [1.0, -1.0] {
        let t = (-c + sign * disc) / (2.0 * c);
        let x4 = (1.0 + t).inv();
        let x3 = s[4] * t * x0;
        let x1 = s[0] / (y0 * x4);
        let y1 = (1.0 + x1).inv();
        let x2 = s[1] * y1 * x0;
        let xs = [x0, x1, x2, x3, x4];
        let mut mu = [mu0; 5];
        for i in 1..5 {
            let (r, th) = xs[i].to_polar();
            let k = root_choice[i - 1] % 5;
            mu[i] = Complex64::from_polar(r.powf(0.2), (th + 2.0 * std::f64::consts::PI * k as f64) / 5.0);
        }
        let mut lam = [Complex64::new(0.0, 0.0); 5];
        for i in 0..5 {
            let mut acc = Complex64::new(s[i], 0.0);
            for (j, &e) in LONGITUDE_EXPONENTS[i].iter().enumerate() {
                acc *= mu[j].powi(e as i32);
            }
            lam[i] = acc;
        }
        let r = [
            1.0 + mu[0].inv() + (mu[0] * lam[0]).inv(),
            -1.0 - mu[1].powu(5) + lam[1].powi(-5),
            -1.0 - mu[2].powi(-5) - lam[2].powu(5),
            -1.0 - mu[3].powi(-5) + lam[3].powu(5),
            -1.0 + mu[4].powu(5) + mu[4].powu(5) * lam[4].powu(5),
        ];
        let worst = r.iter().map(|z| z.norm()).fold(0.0, f64::max);
        out.push((t, mu, lam, worst));
    }
    out
}

/// Genus of an unramified-over-the-interior cover of a sphere with
/// `punctures` punctures. `cycles[p]` lists the cycle lengths of the
/// monodromy around puncture p; each list must sum to `degree`.
pub fn riemann_hurwitz_genus(degree: u64, punctures: u64, cycles: &[Vec<u64>]) -> Result<u64, LocSysError> {
    if cycles.len() as u64 != punctures {
        return Err(LocSysError::Cycles(format!("{} cycle lists for {} punctures", cycles.len(), punctures)));
    }
    for (p, c) in cycles.iter().enumerate() {
        if c.iter().sum::<u64>() != degree || c.contains(&0) {
            return Err(LocSysError::Cycles(format!("puncture {p}: cycle lengths {c:?} do not partition {degree}")));
        }
    }
    let chi_open = degree as i64 * (2 - punctures as i64);
    let filled: i64 = cycles.iter().map(|c| c.len() as i64).sum();
    let two_minus_2g = chi_open + filled;
    if two_minus_2g > 2 || (2 - two_minus_2g) % 2 != 0 {
        return Err(LocSysError::Cycles(format!("Euler characteristic {two_minus_2g} is not that of a connected surface")));
    }
    Ok(((2 - two_minus_2g) / 2) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> TowerElem {
        TowerElem::a27()
    }

    #[test]
    fn van_geemen_residues_vanish() {
        for which in [CubeRoot::Omega, CubeRoot::Omega2] {
            let h = van_geemen_tuple(which, &a()).unwrap();
            assert!(residues(&h).unwrap().all_zero(), "{which:?}");
        }
    }

    #[test]
    fn tuple_json_roundtrip() {
        let h = van_geemen_tuple(CubeRoot::Omega2, &a()).unwrap();
        let back = HolonomyTuple::from_json(&h.to_json()).unwrap();
        assert_eq!(back, h);
        assert!(residues(&back).unwrap().all_zero());
        let zero = json!({"mu": ["0", "1", "1", "1", "1"], "lambda": ["1", "1", "1", "1", "1"]});
        assert!(matches!(HolonomyTuple::from_json(&zero), Err(LocSysError::ZeroHolonomy(_))));
        assert!(HolonomyTuple::from_json(&json!({"mu": []})).is_err());
    }

    #[test]
    fn lambda0_matches_monomial() {
        let h = van_geemen_tuple(CubeRoot::Omega, &a()).unwrap();
        let m = (-TowerElem::omega()).try_inv().unwrap() * (-TowerElem::omega2());
        assert_eq!(h.lambda[0], m);
        assert_eq!(h.lambda[0], TowerElem::omega());
    }

    #[test]
    fn first_residue_cube_roots() {
        let r = pants_residue(&TowerElem::omega(), &TowerElem::omega()).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn second_residue_via_fifth_power() {
        let w = TowerElem::omega();
        let l1_inv = -(a().scale_rat(&rat(1, 3)) * (TowerElem::one() - w.clone()));
        let r1 = -TowerElem::one() - (-w).pow(5) + l1_inv.pow(5);
        assert!(r1.is_zero());
    }

    #[test]
    fn swap_is_galois_conjugate_and_distinct() {
        let h1 = van_geemen_tuple(CubeRoot::Omega, &a()).unwrap();
        let h2 = van_geemen_tuple(CubeRoot::Omega2, &a()).unwrap();
        assert_ne!(h1, h2);
        assert_eq!(h1.conj_omega(), h2);
    }

    #[test]
    fn bad_a_rejected() {
        assert!(matches!(van_geemen_tuple(CubeRoot::Omega, &TowerElem::from_int(2)), Err(LocSysError::BadA(_))));
    }

    #[test]
    fn extend_roundtrip() {
        for which in [CubeRoot::Omega, CubeRoot::Omega2] {
            let h = van_geemen_tuple(which, &a()).unwrap();
            let ext = extend_point(&h.mu[0], &h.lambda[0], None).unwrap();
            assert!(ext.tuples.contains(&h), "{which:?}: {:?}", ext.diagnostics);
            for t in &ext.tuples {
                assert!(residues(t).unwrap().all_zero());
            }
        }
    }

    #[test]
    fn off_pants_point_rejected() {
        let e = extend_point(&TowerElem::from_int(2), &TowerElem::from_int(3), None);
        assert!(matches!(e, Err(LocSysError::NotOnPants(_))));
    }

    #[test]
    fn degenerate_branch_diagnosed() {
        // mu0 = -1/2 forces lambda0 = -2; then c = -1/16 and the
        // discriminant -63/256 has no square root in the tower
        let mu0 = TowerElem::from_rational(&rat(-1, 2));
        let lambda0 = TowerElem::from_int(-2);
        assert!(pants_residue(&mu0, &lambda0).unwrap().is_zero());
        let ext = extend_point(&mu0, &lambda0, None).unwrap();
        assert!(ext.tuples.is_empty());
        assert!(!ext.diagnostics.is_empty());
    }

    #[test]
    fn genus_examples() {
        assert_eq!(riemann_hurwitz_genus(25, 3, &vec![vec![5; 5]; 3]).unwrap(), 6);
        assert_eq!(riemann_hurwitz_genus(1, 3, &vec![vec![1]; 3]).unwrap(), 0);
        assert_eq!(riemann_hurwitz_genus(5, 3, &[vec![5], vec![5], vec![1; 5]]).unwrap(), 0);
        assert!(riemann_hurwitz_genus(5, 3, &[vec![5], vec![4], vec![5]]).is_err());
    }

    #[test]
    fn numeric_extension_at_van_geemen_point() {
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let best = (0..625)
            .map(|n| [n % 5, (n / 5) % 5, (n / 25) % 5, n / 125])
            .flat_map(|c| extend_point_numeric(w, w, c))
            .map(|(_, _, _, r)| r)
            .fold(f64::INFINITY, f64::min);
        assert!(best < 1e-9);
    }
}
