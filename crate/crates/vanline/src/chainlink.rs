//! First homology of the minimally twisted five-component chain link
//! complement L': longitudes in the meridian basis, the map to H1(T^3),
//! the deck group of the 125-fold cover and the Mayer-Vietoris rank of
//! the double of L' glued along its five boundary tori.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::IntMatrix;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChainLinkError {
    #[error("longitude l{index} maps to {got:?}, expected {expected:?}")]
    LongitudeImage { index: usize, got: Vec<i64>, expected: Vec<i64> },
    #[error("gluing data: {0}")]
    Gluing(String),
}

/// Row i is l_i in the basis m_0..m_4.
pub const LONGITUDES: [[i64; 5]; 5] = [
    [0, -1, 0, 0, -1],
    [-1, 0, 1, 0, 0],
    [0, 1, 0, -1, 0],
    [0, 0, -1, 0, 1],
    [-1, 0, 0, 1, 0],
];

/// Column j is the image of m_j in H1(T^3) = Z<e1, e2, e3>.
pub const TORUS_MAP_COLUMNS: [[i64; 3]; 5] = [[0, 0, 0], [0, 1, -1], [0, 0, 1], [-1, 1, 0], [0, -1, 1]];

/// Stated images of l_0..l_4 in H1(T^3).
pub const LONGITUDE_IMAGES: [[i64; 3]; 5] = [[0, 0, 0], [0, 0, 1], [1, 0, -1], [0, -1, 0], [-1, 1, 0]];

pub fn longitude_matrix() -> IntMatrix {
    IntMatrix::from_rows(&LONGITUDES.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

/// 3x5 matrix M of H1(L') -> H1(T^3).
pub fn torus_map() -> IntMatrix {
    IntMatrix::from_rows(&TORUS_MAP_COLUMNS.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).transpose()
}

fn to_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("small entry")).collect()
}

/// M applied to each longitude row, compared with the stated images.
pub fn check_longitude_images() -> Result<Vec<Vec<i64>>, ChainLinkError> {
    let m = torus_map();
    let mut out = Vec::new();
    for (i, row) in LONGITUDES.iter().enumerate() {
        let got = to_i64(&m.mul_vec(row));
        if got != LONGITUDE_IMAGES[i] {
            return Err(ChainLinkError::LongitudeImage { index: i, got, expected: LONGITUDE_IMAGES[i].to_vec() });
        }
        out.push(got);
    }
    Ok(out)
}

/// Elementary divisors of the deck group of the cover classified by
/// H1(L') -> H1(T^3) -> H1(T^3; Z/5): the image has order 5^rank.
pub fn deck_group() -> Vec<u64> {
    vec![5; torus_map().rank_mod(5)]
}

/// Torsion invariants of Z^5 / <m_0, 5 m_1, ..., 5 m_4>: the abelian
/// shadow of the quotient by the normal closure of the meridian powers.
pub fn abelianized_meridian_quotient() -> Vec<u64> {
    let (tors, free) = IntMatrix::diag(&[1, 5, 5, 5, 5]).cokernel();
    assert_eq!(free, 0);
    tors.iter().map(|x| x.to_u64().expect("small")).collect()
}

/// Identification of the boundary tori of two copies of L'. Torus i of
/// copy 2 is glued to torus i of copy 1 by `maps[i]`, written in the
/// (m_i, l_i) bases of both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct GluingData {
    pub maps: Vec<[[i64; 2]; 2]>,
}

impl GluingData {
    /// Meridian to meridian, longitude to longitude.
    pub fn respecting_classes() -> Self {
        GluingData { maps: vec![[[1, 0], [0, 1]]; 5] }
    }

    pub fn validate(&self) -> Result<(), ChainLinkError> {
        if self.maps.len() != 5 {
            return Err(ChainLinkError::Gluing(format!("expected 5 tori, got {}", self.maps.len())));
        }
        for (i, g) in self.maps.iter().enumerate() {
            let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
            if det.abs() != 1 {
                return Err(ChainLinkError::Gluing(format!("torus {i}: map has determinant {det}")));
            }
        }
        Ok(())
    }
}

/// A: Z^10 -> Z^5 sending (meridian, longitude) of torus i to (m_i, l_i).
pub fn boundary_inclusion() -> IntMatrix {
    let mut rows = vec![vec![0i64; 10]; 5];
    for i in 0..5 {
        rows[i][2 * i] = 1;
        for (k, row) in rows.iter_mut().enumerate() {
            row[2 * i + 1] = LONGITUDES[i][k];
        }
    }
    IntMatrix::from_rows(&rows)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MayerVietoris {
    pub rank_boundary_map: usize,
    pub coker_free_rank: usize,
    pub coker_torsion: Vec<u64>,
    pub h0_kernel_rank: usize,
    pub h1_rank: usize,
}

impl MayerVietoris {
    pub fn to_json(&self) -> Value {
        json!({
            "rankBoundaryMap": self.rank_boundary_map,
            "cokernelFreeRank": self.coker_free_rank,
            "cokernelTorsion": self.coker_torsion,
            "h0KernelRank": self.h0_kernel_rank,
            "h1Rank": self.h1_rank,
        })
    }
}

/// H1(T) -> H1(L') + H1(L') -> H1(X) -> H0(T) -> H0(L') + H0(L').
pub fn mayer_vietoris(g: &GluingData) -> Result<MayerVietoris, ChainLinkError> {
    g.validate()?;
    let a = boundary_inclusion();
    let mut gmat = IntMatrix::zeros(10, 10);
    for (i, m) in g.maps.iter().enumerate() {
        for r in 0..2 {
            for c in 0..2 {
                gmat.set(2 * i + r, 2 * i + c, BigInt::from(m[r][c]));
            }
        }
    }
    let phi = a.vstack(&a.mul(&gmat).neg());
    let rank = phi.rank();
    let (tors, free) = phi.cokernel();
    // H0 of five tori -> H0 of the two copies, each torus hits both points
    let h0 = IntMatrix::from_rows(&[vec![1; 5], vec![-1; 5]]);
    let h0_kernel = 5 - h0.rank();
    Ok(MayerVietoris {
        rank_boundary_map: rank,
        coker_free_rank: free,
        coker_torsion: tors.iter().map(|x| x.to_u64().expect("small")).collect(),
        h0_kernel_rank: h0_kernel,
        h1_rank: free + h0_kernel,
    })
}

pub fn mayer_vietoris_h1_rank(g: &GluingData) -> Result<usize, ChainLinkError> {
    Ok(mayer_vietoris(g)?.h1_rank)
}
