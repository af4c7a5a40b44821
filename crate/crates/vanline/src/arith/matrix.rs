use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Field;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Smith normal form `u * m * v = d`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        let data = rows.iter().flat_map(|x| x.iter().map(|&v| BigInt::from(v))).collect();
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn diag(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, BigInt::from(e));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_i64().expect("entry fits in i64")).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * BigInt::from(v[j])).sum())
            .collect()
    }

    pub fn neg(&self) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    /// Block matrix `[self | o]`.
    pub fn hstack(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, o.rows);
        let mut out = Self::zeros(self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..o.cols {
                out.set(i, self.cols + j, o.get(i, j).clone());
            }
        }
        out
    }

    /// Block matrix with `self` on top of `o`.
    pub fn vstack(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        IntMatrix { rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + f * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + f * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            self.set(r, j, v);
        }
    }

    /// Smith normal form by elementary row and column operations.
    pub fn snf(&self) -> Snf {
        let (r, c) = (self.rows, self.cols);
        let mut d = self.clone();
        let mut u = IntMatrix::identity(r);
        let mut v = IntMatrix::identity(c);
        let mut t = 0;
        while t < r.min(c) {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = d.get(i, j);
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            loop {
                let p = d.get(t, t).clone();
                let mut clean = true;
                for i in (t + 1)..r {
                    if d.get(i, t).is_zero() {
                        continue;
                    }
                    let q = -d.get(i, t).div_floor(&p);
                    d.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                    if !d.get(i, t).is_zero() {
                        clean = false;
                    }
                }
                for j in (t + 1)..c {
                    if d.get(t, j).is_zero() {
                        continue;
                    }
                    let q = -d.get(t, j).div_floor(&p);
                    d.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                    if !d.get(t, j).is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    // a remainder smaller than the pivot is left; move it in
                    let mut best = (t, t);
                    for i in (t + 1)..r {
                        let x = d.get(i, t);
                        if !x.is_zero() && x.abs() < d.get(best.0, best.1).abs() {
                            best = (i, t);
                        }
                    }
                    for j in (t + 1)..c {
                        let x = d.get(t, j);
                        if !x.is_zero() && x.abs() < d.get(best.0, best.1).abs() {
                            best = (t, j);
                        }
                    }
                    d.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                    d.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                    continue;
                }
                // divisibility of the rest of the block
                let mut bad_row = None;
                'outer: for i in (t + 1)..r {
                    for j in (t + 1)..c {
                        if !d.get(i, j).mod_floor(&p).is_zero() {
                            bad_row = Some(i);
                            break 'outer;
                        }
                    }
                }
                match bad_row {
                    Some(i) => {
                        let one = BigInt::one();
                        d.add_row(t, i, &one);
                        u.add_row(t, i, &one);
                    }
                    None => break,
                }
            }
            if d.get(t, t).is_negative() {
                d.negate_row(t);
                u.negate_row(t);
            }
            t += 1;
        }
        Snf { u, d, v }
    }

    pub fn rank(&self) -> usize {
        self.snf().rank()
    }

    /// Invariant factors of the cokernel `Z^rows / image`, units dropped,
    /// followed by the free rank.
    pub fn cokernel(&self) -> (Vec<BigInt>, usize) {
        let s = self.snf();
        let inv = s.invariant_factors();
        let torsion = inv.iter().filter(|x| !x.is_one()).cloned().collect();
        (torsion, self.rows - inv.len())
    }

    /// Rank over GF(p).
    pub fn rank_mod(&self, p: u64) -> usize {
        let pb = BigInt::from(p);
        let mut m: Vec<Vec<u64>> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).mod_floor(&pb).to_u64().expect("reduced entry fits"))
                    .collect()
            })
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&i| m[i][col] != 0) else { continue };
            m.swap(rank, piv);
            let inv = mod_pow(m[rank][col], p - 2, p);
            for x in m[rank].iter_mut() {
                *x = *x * inv % p;
            }
            for i in 0..self.rows {
                if i != rank && m[i][col] != 0 {
                    let f = m[i][col];
                    for j in 0..self.cols {
                        m[i][j] = (m[i][j] + p * p - f * m[rank][j] % p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Rank over Q by fraction-free (Bareiss) elimination. Independent of
    /// the SNF code path; used to cross-check it.
    pub fn rank_bareiss(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows).map(|i| self.row(i)).collect();
        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&i| !m[i][col].is_zero()) else { continue };
            m.swap(rank, piv);
            for i in (rank + 1)..self.rows {
                for j in (col + 1)..self.cols {
                    let v = (&m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j]) / &prev;
                    m[i][j] = v;
                }
                m[i][col] = BigInt::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
        }
        rank
    }

    /// Determinant via SNF (square only).
    pub fn is_unimodular(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let s = self.snf();
        s.rank() == self.rows && s.invariant_factors().iter().all(|x| x.is_one())
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Small dense matrix over an exact field.
#[derive(Clone, PartialEq, Debug)]
pub struct FieldMatrix<F: Field> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<F>,
}

impl<F: Field> FieldMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FieldMatrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        FieldMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k).is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = out.get(i, j).clone() + self.get(i, k).clone() * o.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.rows), |acc, _| acc.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<F>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&i| !m[i][col].is_zero()) else { continue };
            m.swap(rank, piv);
            let inv = m[rank][col].try_inv().expect("pivot is nonzero");
            for i in (rank + 1)..self.rows {
                if m[i][col].is_zero() {
                    continue;
                }
                let f = m[i][col].clone() * inv.clone();
                for j in col..self.cols {
                    let v = m[i][j].clone() - f.clone() * m[rank][j].clone();
                    m[i][j] = v;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Strictly lower triangular: everything on or above the diagonal is 0.
    pub fn is_strictly_lower(&self) -> bool {
        (0..self.rows).all(|i| (i..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_lower(&self) -> bool {
        (0..self.rows).all(|i| ((i + 1)..self.cols).all(|j| self.get(i, j).is_zero()))
    }
}
