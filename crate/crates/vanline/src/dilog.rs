//! Dilogarithm and Clausen function in double precision, and the volume
//! comparisons built from the regular ideal tetrahedron.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::{rat, Rational};

pub type ComplexF = Complex64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DilogError {
    #[error("|z| = {0} > 1 is outside the supported disk")]
    OutsideDisk(f64),
    #[error("argument is not finite")]
    NotFinite,
}

/// Exact Bernoulli numbers B_0..B_n (B_1 = +1/2) by Akiyama-Tanigawa.
pub fn bernoulli(n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut a: Vec<Rational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(rat(1, m as i64 + 1));
        for j in (1..=m).rev() {
            a[j - 1] = Rational::from_integer((j as i64).into()) * (&a[j - 1] - &a[j]);
        }
        out.push(a[0].clone());
    }
    out
}

const NTERMS: usize = 60;

fn bernoulli_f64() -> Vec<f64> {
    bernoulli(NTERMS).iter().map(|b| b.to_f64().expect("finite")).collect()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Cl2(t) = sum sin(k t)/k^2.
///
/// Reduced to (-pi, pi], then
/// Cl2(t) = t - t log|t| + sum_k |B_2k| t^(2k+1) / (2k (2k+1)!).
pub fn clausen(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    if t == 0.0 || (t.abs() - PI).abs() < 1e-300 {
        return 0.0;
    }
    let b = bernoulli_f64();
    let mut sum = t - t * t.abs().ln();
    for k in 1..NTERMS / 2 {
        let term = b[2 * k].abs() * t.powi(2 * k as i32 + 1) / (2.0 * k as f64 * factorial(2 * k + 1));
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    sum
}

fn li2_series(z: ComplexF) -> ComplexF {
    let mut sum = ComplexF::zero();
    let mut p = z;
    for k in 1..200 {
        let term = p / (k * k) as f64;
        sum += term;
        if term.norm() < 1e-18 {
            break;
        }
        p *= z;
    }
    sum
}

/// Li2(z) = sum B_n u^(n+1)/(n+1)! with u = -log(1 - z).
fn li2_bernoulli(z: ComplexF) -> ComplexF {
    let u = -(ComplexF::new(1.0, 0.0) - z).ln();
    let b = bernoulli_f64();
    let mut sum = ComplexF::zero();
    let mut p = u;
    for (n, bn) in b.iter().enumerate() {
        // this series wants B_1 = -1/2
        let bn = if n == 1 { -0.5 } else { *bn };
        sum += p * (bn / factorial(n + 1));
        p *= u;
    }
    sum
}

/// Li2 on the closed unit disk. Points on the circle use the Clausen
/// function for the imaginary part and the closed form
/// sum cos(k t)/k^2 = pi^2/6 - t (2 pi - t)/4 on [0, 2 pi] for the real part.
pub fn li2(z: ComplexF) -> Result<ComplexF, DilogError> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(DilogError::NotFinite);
    }
    let r = z.norm();
    if r > 1.0 + 1e-12 {
        return Err(DilogError::OutsideDisk(r));
    }
    if (r - 1.0).abs() <= 1e-12 {
        let t = z.arg().rem_euclid(2.0 * PI);
        return Ok(ComplexF::new(PI * PI / 6.0 - t * (2.0 * PI - t) / 4.0, clausen(t)));
    }
    if r <= 0.5 {
        return Ok(li2_series(z));
    }
    let one = ComplexF::new(1.0, 0.0);
    if (one - z).norm() <= 0.5 {
        // reflection
        return Ok(ComplexF::new(PI * PI / 6.0, 0.0) - z.ln() * (one - z).ln() - li2_series(one - z));
    }
    Ok(li2_bernoulli(z))
}

/// 2 Cl2(2 pi/3)/sqrt(3), which equals L(2; chi) for the character mod 3.
pub fn l2chi_via_dilog() -> f64 {
    2.0 * clausen(2.0 * PI / 3.0) / 3f64.sqrt()
}

pub const TETRA_REFERENCE: f64 = 1.014_941_606_409_653_6;

#[derive(Clone, Debug, PartialEq)]
pub struct VolumeReport {
    pub tetra: f64,
    /// Im Li2(-w) with w = exp(2 pi i/3); the negative of `tetra`
    pub signed_im_li2_minus_omega: f64,
    pub chain_link_multiplier: u64,
    pub cover_multiplier: u64,
    pub jmw_multiplier: u64,
    pub chain_link: f64,
    pub cover125: f64,
    pub jmw_prediction: f64,
    pub mismatch: bool,
}

impl VolumeReport {
    pub fn to_json(&self) -> Value {
        json!({
            "tetra": self.tetra,
            "signedImLi2MinusOmega": self.signed_im_li2_minus_omega,
            "chainLink": self.chain_link,
            "cover125": self.cover125,
            "jmwPrediction": self.jmw_prediction,
            "multipliers": {
                "chainLink": self.chain_link_multiplier,
                "cover125": self.cover_multiplier,
                "jmwPrediction": self.jmw_multiplier,
            },
            "coverEqualsJmw": !self.mismatch,
            "mismatch": self.mismatch,
        })
    }
}

pub fn volume_report() -> VolumeReport {
    let tetra = clausen(PI / 3.0);
    let minus_omega = -ComplexF::from_polar(1.0, 2.0 * PI / 3.0);
    let signed = li2(minus_omega).expect("unit circle").im;
    let (cl, cover, jmw) = (10u64, 125 * 10u64, 130u64);
    VolumeReport {
        tetra,
        signed_im_li2_minus_omega: signed,
        chain_link_multiplier: cl,
        cover_multiplier: cover,
        jmw_multiplier: jmw,
        chain_link: cl as f64 * tetra,
        cover125: cover as f64 * tetra,
        jmw_prediction: jmw as f64 * tetra,
        mismatch: cover != jmw,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_small() {
        let b = bernoulli(8);
        assert_eq!(b[0], rat(1, 1));
        assert_eq!(b[1], rat(1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[3], rat(0, 1));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[8], rat(-1, 30));
    }

    #[test]
    fn li2_special_values() {
        assert_eq!(li2(ComplexF::zero()).unwrap(), ComplexF::zero());
        let one = li2(ComplexF::new(1.0, 0.0)).unwrap();
        assert!((one.re - PI * PI / 6.0).abs() < 1e-12 && one.im.abs() < 1e-15);
        let m1 = li2(ComplexF::new(-1.0, 0.0)).unwrap();
        assert!((m1.re + PI * PI / 12.0).abs() < 1e-12);
        let half = li2(ComplexF::new(0.5, 0.0)).unwrap();
        assert!((half.re - (PI * PI / 12.0 - 2f64.ln().powi(2) / 2.0)).abs() < 1e-13);
    }

    #[test]
    fn clausen_against_partial_sums() {
        for &t in &[0.3, 1.0, PI / 3.0, 2.0, 3.0] {
            let n = 2_000_000;
            let direct: f64 = (1..=n).rev().map(|k| (k as f64 * t).sin() / (k as f64).powi(2)).sum();
            // tail of an oscillating sum is O(1/(n^2 sin(t/2)))
            assert!((clausen(t) - direct).abs() < 1e-9, "t = {t}");
        }
    }

    #[test]
    fn li2_regions_agree_with_series() {
        let pts = [ComplexF::new(0.6, 0.3), ComplexF::new(-0.7, 0.5), ComplexF::new(0.2, -0.9), ComplexF::new(0.9, 0.1)];
        for z in pts {
            let mut s = ComplexF::zero();
            let mut p = z;
            for k in 1..20000 {
                s += p / (k * k) as f64;
                p *= z;
            }
            assert!((li2(z).unwrap() - s).norm() < 1e-12, "{z}");
        }
    }

    #[test]
    fn outside_disk() {
        assert!(matches!(li2(ComplexF::new(1.5, 0.0)), Err(DilogError::OutsideDisk(_))));
        assert!(li2(ComplexF::new(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn tetrahedron() {
        assert!((clausen(PI / 3.0) - TETRA_REFERENCE).abs() < 1e-14);
        let z = ComplexF::from_polar(1.0, PI / 3.0);
        assert!((li2(z).unwrap().im - 1.014_941_606_4).abs() < 1e-9);
    }

    #[test]
    fn duplication_and_l2() {
        assert!((clausen(2.0 * PI / 3.0) - 2.0 / 3.0 * clausen(PI / 3.0)).abs() < 1e-10);
        let v = l2chi_via_dilog();
        assert!(v > 0.0);
        assert!((v - crate::bps::L2_CHI_REFERENCE).abs() < 1e-12);
    }

    #[test]
    fn volumes() {
        let r = volume_report();
        assert!((r.chain_link - 10.149_416_064).abs() < 1e-8);
        assert!((r.cover125 - 1_268.677_008).abs() < 1e-6);
        assert!((r.jmw_prediction - 131.942).abs() < 1e-3);
        assert!(r.mismatch);
        assert!((r.signed_im_li2_minus_omega + r.tetra).abs() < 1e-14);
    }
}
