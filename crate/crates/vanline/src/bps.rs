//! The order-3 Dirichlet character, the multiple-cover resummation
//! n -> n~ and its triangular inverse, membership in sqrt(-3) Z[1/3], and
//! L(2; chi).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::{rat, rat_to_string, Field, QuadElem, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BpsError {
    #[error("table: {0}")]
    Table(String),
}

/// Degree -> coefficient, degrees >= 1.
pub type BpsTable = BTreeMap<u64, QuadElem>;

/// chi(k) from k mod 3.
pub fn chi(k: i64) -> i64 {
    match k.rem_euclid(3) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// chi(k) = (w^k - w^2k) / sqrt(-3) evaluated exactly.
pub fn chi_exact(k: u32) -> QuadElem {
    let w = QuadElem::omega();
    let num = w.pow(k) - w.pow(2 * k);
    num.try_div(&QuadElem::sqrt_m3()).expect("sqrt(-3) is invertible")
}

/// n~_D = sum over k | D of chi(k)/k^2 n_{D/k}, for D <= order.
pub fn expand(n: &BpsTable, order: u64) -> BpsTable {
    let mut out = BpsTable::new();
    for d in 1..=order {
        let mut acc = QuadElem::zero();
        for k in 1..=d {
            if d % k != 0 || chi(k as i64) == 0 {
                continue;
            }
            if let Some(x) = n.get(&(d / k)) {
                acc = acc + x.scale(&rat(chi(k as i64), (k * k) as i64));
            }
        }
        if !acc.is_zero() {
            out.insert(d, acc);
        }
    }
    out
}

/// n_D = n~_D - sum over k | D, k > 1 of chi(k)/k^2 n_{D/k}.
pub fn invert(nt: &BpsTable, order: u64) -> BpsTable {
    let mut out = BpsTable::new();
    for d in 1..=order {
        let mut acc = nt.get(&d).cloned().unwrap_or_else(QuadElem::zero);
        for k in 2..=d {
            if d % k != 0 || chi(k as i64) == 0 {
                continue;
            }
            if let Some(x) = out.get(&(d / k)) {
                acc = acc - x.scale(&rat(chi(k as i64), (k * k) as i64));
            }
        }
        if !acc.is_zero() {
            out.insert(d, acc);
        }
    }
    out
}

fn is_power_of_3(n: &BigInt) -> bool {
    let three = BigInt::from(3);
    let mut n = n.clone();
    while n.is_multiple_of(&three) {
        n /= &three;
    }
    n.is_one()
}

/// x in sqrt(-3) Z[1/3].
pub fn ring_member(x: &QuadElem) -> bool {
    x.a.is_zero() && is_power_of_3(x.b.denom())
}

/// x / 2 in sqrt(-3) Z[1/3].
pub fn even_in_ring(x: &QuadElem) -> bool {
    ring_member(&x.scale(&rat(1, 2)))
}

fn sqrt_m3_times(num: &str, den: u64) -> QuadElem {
    let n: BigInt = num.parse().expect("decimal literal");
    QuadElem::new(Rational::zero(), Rational::new(n, BigInt::from(den)))
}

/// The four known n~_d, each a rational multiple of sqrt(-3).
pub fn paper_ntilde() -> BpsTable {
    BpsTable::from([
        (1, sqrt_m3_times("280000", 1)),
        (2, sqrt_m3_times("22296200000", 3)),
        (3, sqrt_m3_times("10031895589000000", 27)),
        (4, sqrt_m3_times("660275805871745000000", 27)),
    ])
}

fn big_from_json(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.to_string().parse().ok(),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}

/// Reads {"d": [num, den], ...}, each entry meaning (num/den) sqrt(-3).
/// Integers may be JSON numbers of any size or decimal strings.
pub fn table_from_json(v: &Value) -> Result<BpsTable, BpsError> {
    let obj = v.as_object().ok_or_else(|| BpsError::Table("expected an object keyed by degree".into()))?;
    let mut out = BpsTable::new();
    for (k, entry) in obj {
        let d: u64 = k.parse().map_err(|_| BpsError::Table(format!("degree key {k:?} is not a positive integer")))?;
        if d == 0 {
            return Err(BpsError::Table("degree 0 is not allowed".into()));
        }
        let pair = entry.as_array().filter(|a| a.len() == 2).ok_or_else(|| BpsError::Table(format!("degree {d}: expected [numerator, denominator]")))?;
        let num = big_from_json(&pair[0]).ok_or_else(|| BpsError::Table(format!("degree {d}: bad numerator")))?;
        let den = big_from_json(&pair[1]).ok_or_else(|| BpsError::Table(format!("degree {d}: bad denominator")))?;
        if den.is_zero() {
            return Err(BpsError::Table(format!("degree {d}: zero denominator")));
        }
        out.insert(d, QuadElem::new(Rational::zero(), Rational::new(num, den)));
    }
    Ok(out)
}

fn big_to_json(n: &BigInt) -> Value {
    // arbitrary precision numbers keep big integers exact
    serde_json::from_str(&n.to_string()).expect("integer literal")
}

/// Inverse of [`table_from_json`]; entries that are not multiples of
/// sqrt(-3) are written as {"a": .., "b": ..} strings.
pub fn table_to_json(t: &BpsTable) -> Value {
    Value::Object(
        t.iter()
            .map(|(d, x)| {
                let v = if x.a.is_zero() {
                    json!([big_to_json(x.b.numer()), big_to_json(x.b.denom())])
                } else {
                    json!({"a": rat_to_string(&x.a), "b": rat_to_string(&x.b)})
                };
                (d.to_string(), v)
            })
            .collect(),
    )
}

/// L(2; chi) by blocks 1/(3m+1)^2 - 1/(3m+2)^2, all positive. The tail
/// after M blocks is below 1/(2 (3M - 2)^2). Returns (value, blocks used).
pub fn dirichlet_l2(tolerance: f64) -> (f64, u64) {
    assert!(tolerance > 0.0, "tolerance must be positive");
    let mut m: u64 = 1;
    while 1.0 / (2.0 * ((3 * m) as f64 - 2.0).powi(2)) > tolerance {
        m *= 2;
    }
    // sum small terms first
    let sum: f64 = (0..m)
        .rev()
        .map(|j| {
            let (a, b) = ((3 * j + 1) as f64, (3 * j + 2) as f64);
            1.0 / (a * a) - 1.0 / (b * b)
        })
        .sum();
    (sum, m)
}

pub const L2_CHI_REFERENCE: f64 = 0.781_302_412_896_486_3;

#[derive(Clone, Debug)]
pub struct PaperCheck {
    pub order: u64,
    pub ntilde: BpsTable,
    pub n: BpsTable,
    pub ring: Vec<(u64, bool)>,
    pub even: Vec<(u64, bool)>,
    pub roundtrip: bool,
}

impl PaperCheck {
    pub fn passed(&self) -> bool {
        self.ring.iter().all(|r| r.1) && self.even.iter().all(|r| r.1) && self.roundtrip
    }

    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order,
            "ntildeOverSqrtM3": table_to_json(&self.ntilde),
            "nOverSqrtM3": table_to_json(&self.n),
            "ringMember": self.ring.iter().map(|(d, b)| (d.to_string(), json!(b))).collect::<serde_json::Map<_, _>>(),
            "halfRingMember": self.even.iter().map(|(d, b)| (d.to_string(), json!(b))).collect::<serde_json::Map<_, _>>(),
            "roundTrip": self.roundtrip,
        })
    }
}

/// Inverts the known values up to degree `order` (at most 4 carry data).
pub fn check_paper_values(order: u64) -> PaperCheck {
    let nt: BpsTable = paper_ntilde().into_iter().filter(|(d, _)| *d <= order).collect();
    let n = invert(&nt, order);
    let ring = (1..=order.min(4)).map(|d| (d, n.get(&d).map(ring_member).unwrap_or(true))).collect();
    let even = (1..=order.min(4)).map(|d| (d, n.get(&d).map(even_in_ring).unwrap_or(true))).collect();
    let roundtrip = expand(&n, order) == nt;
    PaperCheck { order, ntilde: nt, n, ring, even, roundtrip }
}
