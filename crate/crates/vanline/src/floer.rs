//! Linear algebra of the energy spectral sequence for the quotient
//! Lagrangian: the E2 page from the cochain summands, the differentials
//! from a shipped incidence table, and the resulting Floer ranks.
//!
//! Only the p-grading is kept. The table stores the differentials out of
//! degrees 1, 2 and 3 as matrices with rows indexed by the target basis;
//! the two below them are their transposes under the pairing of degree p
//! with degree 3 - p.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::IntMatrix;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FloerError {
    #[error("{file}: {msg}")]
    Data { file: String, msg: String },
    #[error("degree {degree}: dimension would be negative ({dim} - {out_rank} - {in_rank})")]
    NegativeDimension { degree: i32, dim: u64, out_rank: usize, in_rank: usize },
}

/// Top degree of the pairing p <-> TOP_DEGREE - p.
pub const TOP_DEGREE: i32 = 3;

pub const EXPECTED_E2: [u64; 6] = [5, 15, 22, 22, 15, 5];
pub const EXPECTED_HF: [u64; 6] = [1, 3, 4, 4, 3, 1];
/// Ranks of the differentials out of degrees 1, 2, 3.
pub const EXPECTED_RANKS: [usize; 3] = [10, 8, 4];
pub const DEGREE_RANGE: (i32, i32) = (-1, 4);

pub const DEFAULT_DATA_FILE: &str = "floer_incidence.json";
const EMBEDDED: &str = include_str!("../data/floer_incidence.json");

/// Finitely supported degree -> dimension map.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedDims(pub BTreeMap<i32, u64>);

impl GradedDims {
    pub fn from_window(lo: i32, dims: &[u64]) -> Self {
        GradedDims(dims.iter().enumerate().filter(|(_, &d)| d != 0).map(|(i, &d)| (lo + i as i32, d)).collect())
    }

    pub fn get(&self, p: i32) -> u64 {
        self.0.get(&p).copied().unwrap_or(0)
    }

    pub fn window(&self, lo: i32, hi: i32) -> Vec<u64> {
        (lo..=hi).map(|p| self.get(p)).collect()
    }

    pub fn euler(&self) -> i64 {
        self.0.iter().map(|(&p, &d)| if p.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) }).sum()
    }

    pub fn to_json(&self) -> Value {
        Value::Object(self.0.iter().map(|(p, d)| (p.to_string(), json!(d))).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct Summand {
    pub name: String,
    /// betti[i] sits in cohomological index i
    pub betti: Vec<u64>,
    /// index i lands in degree i - shift
    pub shift: i32,
}

pub fn build_e2(spec: &[Summand]) -> GradedDims {
    let mut out = BTreeMap::new();
    for s in spec {
        for (i, &b) in s.betti.iter().enumerate() {
            if b != 0 {
                *out.entry(i as i32 - s.shift).or_insert(0) += b;
            }
        }
    }
    GradedDims(out)
}

/// dim H^p = dim E^p - rank(out of p) - rank(into p).
pub fn cohomology_ranks(e2: &GradedDims, ranks: &BTreeMap<i32, usize>) -> Result<GradedDims, FloerError> {
    let mut degrees: Vec<i32> = e2.0.keys().copied().collect();
    for &p in ranks.keys() {
        degrees.push(p);
        degrees.push(p + 1);
    }
    degrees.sort();
    degrees.dedup();
    let mut out = BTreeMap::new();
    for p in degrees {
        let dim = e2.get(p);
        let out_rank = ranks.get(&p).copied().unwrap_or(0);
        let in_rank = ranks.get(&(p - 1)).copied().unwrap_or(0);
        let h = dim as i64 - out_rank as i64 - in_rank as i64;
        if h < 0 {
            return Err(FloerError::NegativeDimension { degree: p, dim, out_rank, in_rank });
        }
        if h > 0 {
            out.insert(p, h as u64);
        }
    }
    Ok(GradedDims(out))
}

pub fn poincare_check(h: &GradedDims, top: i32) -> bool {
    h.0.keys().all(|&p| h.get(p) == h.get(top - p))
}

#[derive(Deserialize)]
struct RawMatrix {
    from: i32,
    rows: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct RawData {
    summands: Vec<Summand>,
    labels: BTreeMap<String, Vec<String>>,
    d1: RawMatrix,
    d2: RawMatrix,
    d3: RawMatrix,
}

/// The shipped table: summands, basis labels per degree and the three
/// stored differentials.
#[derive(Clone, Debug)]
pub struct IncidenceData {
    pub source: String,
    pub summands: Vec<Summand>,
    pub labels: BTreeMap<i32, Vec<String>>,
    /// stored differential out of degree p, keyed by p
    pub stored: BTreeMap<i32, IntMatrix>,
}

impl IncidenceData {
    pub fn parse(text: &str, source: &str) -> Result<Self, FloerError> {
        let bad = |msg: String| FloerError::Data { file: source.to_string(), msg };
        let raw: RawData = serde_json::from_str(text).map_err(|e| bad(format!("malformed incidence data: {e}")))?;
        let mut labels = BTreeMap::new();
        for (k, v) in raw.labels {
            let p: i32 = k.parse().map_err(|_| bad(format!("label key {k:?} is not a degree")))?;
            labels.insert(p, v);
        }
        let mut stored = BTreeMap::new();
        for (name, m) in [("d1", raw.d1), ("d2", raw.d2), ("d3", raw.d3)] {
            let width = m.rows.first().map(|r| r.len()).unwrap_or(0);
            if m.rows.iter().any(|r| r.len() != width) {
                return Err(bad(format!("{name} has ragged rows")));
            }
            stored.insert(m.from, IntMatrix::from_rows(&m.rows));
        }
        let data = IncidenceData { source: source.to_string(), summands: raw.summands, labels, stored };
        data.check_shapes()?;
        Ok(data)
    }

    pub fn load(path: &Path) -> Result<Self, FloerError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| FloerError::Data { file: path.display().to_string(), msg: format!("cannot read: {e}") })?;
        Self::parse(&text, &path.display().to_string())
    }

    /// The copy compiled into the library.
    pub fn embedded() -> Self {
        Self::parse(EMBEDDED, DEFAULT_DATA_FILE).expect("embedded incidence data is well formed")
    }

    /// `dir/floer_incidence.json` when a data directory is given.
    pub fn from_dir(dir: Option<&Path>) -> Result<Self, FloerError> {
        match dir {
            Some(d) => Self::load(&d.join(DEFAULT_DATA_FILE)),
            None => Ok(Self::embedded()),
        }
    }

    pub fn default_path() -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(DEFAULT_DATA_FILE)
    }

    fn check_shapes(&self) -> Result<(), FloerError> {
        let e2 = build_e2(&self.summands);
        let bad = |msg: String| FloerError::Data { file: self.source.clone(), msg };
        for (&p, names) in &self.labels {
            if names.len() as u64 != e2.get(p) {
                return Err(bad(format!("degree {p}: {} labels but E2 has dimension {}", names.len(), e2.get(p))));
            }
        }
        for (&p, m) in &self.stored {
            let (want_r, want_c) = (e2.get(p + 1) as usize, e2.get(p) as usize);
            if (m.rows(), m.cols()) != (want_r, want_c) {
                return Err(bad(format!(
                    "differential out of degree {p} is {}x{}, expected {want_r}x{want_c}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(())
    }

    /// All differentials, stored ones plus their duals.
    pub fn differentials(&self) -> BTreeMap<i32, IntMatrix> {
        let mut out = self.stored.clone();
        for (&p, m) in &self.stored {
            let q = TOP_DEGREE - 1 - p;
            out.entry(q).or_insert_with(|| m.transpose());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FloerReport {
    pub e2: GradedDims,
    pub ranks: BTreeMap<i32, usize>,
    /// (p, d_{p+1} d_p vanishes)
    pub compositions: Vec<(i32, bool)>,
    pub cohomology: GradedDims,
    pub poincare: bool,
    pub euler_e2: i64,
    pub euler_hf: i64,
}

impl FloerReport {
    pub fn stored_ranks(&self) -> [usize; 3] {
        [1, 2, 3].map(|p| self.ranks.get(&p).copied().unwrap_or(0))
    }

    pub fn matches_expected(&self) -> bool {
        let (lo, hi) = DEGREE_RANGE;
        self.e2.window(lo, hi) == EXPECTED_E2
            && self.stored_ranks() == EXPECTED_RANKS
            && self.compositions.iter().all(|c| c.1)
            && self.cohomology.window(lo, hi) == EXPECTED_HF
            && self.poincare
            && self.euler_e2 == self.euler_hf
    }

    /// First mismatch against the expected ranks, naming the degree.
    pub fn rank_mismatch(&self) -> Option<String> {
        for (i, p) in [1, 2, 3].into_iter().enumerate() {
            let got = self.ranks.get(&p).copied().unwrap_or(0);
            if got != EXPECTED_RANKS[i] {
                return Some(format!("differential out of degree {p} has rank {got}, expected {}", EXPECTED_RANKS[i]));
            }
        }
        None
    }

    pub fn to_json(&self) -> Value {
        let (lo, hi) = DEGREE_RANGE;
        json!({
            "degrees": (lo..=hi).collect::<Vec<_>>(),
            "e2": self.e2.window(lo, hi),
            "differentialRanks": self.ranks.iter().map(|(p, r)| (p.to_string(), json!(r))).collect::<serde_json::Map<_, _>>(),
            "compositionsVanish": self.compositions.iter().all(|c| c.1),
            "cohomology": self.cohomology.window(lo, hi),
            "poincare": self.poincare,
            "eulerE2": self.euler_e2,
            "eulerHF": self.euler_hf,
        })
    }
}

pub fn verify(data: &IncidenceData) -> Result<FloerReport, FloerError> {
    let e2 = build_e2(&data.summands);
    let ds = data.differentials();
    let ranks: BTreeMap<i32, usize> = ds.iter().map(|(&p, m)| (p, m.rank())).collect();
    let compositions = ds
        .iter()
        .filter_map(|(&p, m)| ds.get(&(p + 1)).map(|n| (p, n.mul(m).is_zero())))
        .collect();
    let cohomology = cohomology_ranks(&e2, &ranks)?;
    Ok(FloerReport {
        poincare: poincare_check(&cohomology, TOP_DEGREE),
        euler_e2: e2.euler(),
        euler_hf: cohomology.euler(),
        e2,
        ranks,
        compositions,
        cohomology,
    })
}
