//! Van Geemen lines on the Dwork pencil
//! `x1 x2 x3 x4 x5 - (z^(1/5)/5) (x1^5 + ... + x5^5)`.
//!
//! Everything happens in Q(w)[a]/(a^5 - r). The symbol z^(1/5) is `ab/6`
//! and never becomes a float.

use std::collections::{HashMap, HashSet, VecDeque};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::{rat, ArithError, Field, FieldMatrix, QuadElem, Rational, TowerElem};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DworkError {
    #[error("omega is not a primitive cube root of unity")]
    BadOmega,
    #[error("a^5 + b^5 = {0}, expected 27")]
    BadRelation(String),
    #[error("spanning points do not span a line")]
    Degenerate,
    #[error("line is not contained in the hyperplane x5 = 0")]
    NotInCentralFiber,
    #[error("line is contained in the coordinate hyperplane x{0} = 0")]
    ContainedInHyperplane(usize),
    #[error("boundary points of hyperplanes x{0} and x{1} coincide")]
    NonGeneric(usize, usize),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProjPoint {
    pub coords: [TowerElem; 5],
}

impl ProjPoint {
    pub fn new(coords: [TowerElem; 5]) -> Self {
        ProjPoint { coords }
    }

    pub fn from_ints(c: [i64; 5]) -> Self {
        ProjPoint { coords: c.map(TowerElem::from_int) }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Equal up to a nonzero scalar: all 2x2 minors vanish.
    pub fn proj_eq(&self, o: &ProjPoint) -> bool {
        if self.is_zero() || o.is_zero() {
            return false;
        }
        for i in 0..5 {
            for j in (i + 1)..5 {
                let m = self.coords[i].clone() * o.coords[j].clone() - self.coords[j].clone() * o.coords[i].clone();
                if !m.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn lin_comb(&self, s: &TowerElem, o: &ProjPoint, t: &TowerElem) -> ProjPoint {
        ProjPoint {
            coords: std::array::from_fn(|i| s.clone() * self.coords[i].clone() + t.clone() * o.coords[i].clone()),
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coords.iter().map(|c| Value::String(c.pretty())).collect())
    }
}

#[derive(Clone, Debug)]
pub struct ParamLine {
    pub p: ProjPoint,
    pub q: ProjPoint,
}

impl ParamLine {
    pub fn new(p: ProjPoint, q: ProjPoint) -> Result<Self, DworkError> {
        let line = ParamLine { p, q };
        if line.plucker().iter().all(|x| x.is_zero()) {
            return Err(DworkError::Degenerate);
        }
        Ok(line)
    }

    /// P_ij = p_i q_j - p_j q_i for i < j, lexicographic.
    pub fn plucker(&self) -> Vec<TowerElem> {
        let mut out = Vec::with_capacity(10);
        for i in 0..5 {
            for j in (i + 1)..5 {
                out.push(
                    self.p.coords[i].clone() * self.q.coords[j].clone()
                        - self.p.coords[j].clone() * self.q.coords[i].clone(),
                );
            }
        }
        out
    }

    /// Same line, as a set.
    pub fn same_line(&self, o: &ParamLine) -> bool {
        let (a, b) = (self.plucker(), o.plucker());
        let Some(f) = a.iter().position(|x| !x.is_zero()) else { return false };
        if b[f].is_zero() {
            return false;
        }
        (0..10).all(|k| (a[k].clone() * b[f].clone() - b[k].clone() * a[f].clone()).is_zero())
    }

    /// Replace (p, q) by (al p + be q, ga p + de q).
    pub fn reparametrize(&self, al: &TowerElem, be: &TowerElem, ga: &TowerElem, de: &TowerElem) -> ParamLine {
        ParamLine { p: self.p.lin_comb(al, &self.q, be), q: self.p.lin_comb(ga, &self.q, de) }
    }
}

#[derive(Clone, Debug)]
pub struct DworkParams {
    pub omega: QuadElem,
    pub a: TowerElem,
    pub b: TowerElem,
}

impl DworkParams {
    pub fn new(omega: QuadElem, a: TowerElem, b: TowerElem) -> Result<Self, DworkError> {
        let p = DworkParams { omega, a, b };
        p.validate()?;
        Ok(p)
    }

    /// No validation. Used to build deliberately broken inputs.
    pub fn new_unchecked(omega: QuadElem, a: TowerElem, b: TowerElem) -> Self {
        DworkParams { omega, a, b }
    }

    /// The z = 0 limit: a^5 = 27 in the tower, b = 0.
    pub fn central(omega: QuadElem) -> Self {
        DworkParams { omega, a: TowerElem::a27(), b: TowerElem::zero() }
    }

    /// Rational a = `alpha` and b the generator of the tower with
    /// b^5 = 27 - alpha^5. Gives a line on a smooth fiber (z != 0).
    pub fn with_rational_a(omega: QuadElem, alpha: Rational) -> Result<Self, DworkError> {
        let r = rat(27, 1) - alpha.pow(5);
        if r.is_zero() {
            return Err(DworkError::BadRelation("27 with b = 0".into()));
        }
        let b = TowerElem::generator(r.clone());
        let a = TowerElem::from_rational(&alpha).with_radicand(&r)?;
        Self::new(omega, a, b)
    }

    pub fn validate(&self) -> Result<(), DworkError> {
        let w = &self.omega;
        if !(QuadElem::one() + w.clone() + w.clone() * w.clone()).is_zero() {
            return Err(DworkError::BadOmega);
        }
        let s = self.a.pow(5) + self.b.pow(5);
        if s != TowerElem::from_int(27) {
            return Err(DworkError::BadRelation(s.pretty()));
        }
        Ok(())
    }

    /// z^(1/5) := ab/6
    pub fn z_fifth_root(&self) -> TowerElem {
        (self.a.clone() * self.b.clone()).scale_rat(&rat(1, 6))
    }

    pub fn swap_omega(&self) -> Self {
        DworkParams { omega: self.omega.conj(), a: self.a.clone(), b: self.b.clone() }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "omega": self.omega.to_string(),
            "a": self.a.pretty(),
            "b": self.b.pretty(),
            "radicand": self.a.radicand.as_ref().or(self.b.radicand.as_ref()).map(crate::arith::rat_to_string),
        })
    }
}

/// The three linear forms cutting out the line, as coefficient rows:
/// x1 + w x2 + w^2 x3, x4 - (a/3) S, x5 - (b/3) S with S = x1 + x2 + x3.
pub fn linear_forms(params: &DworkParams) -> [[TowerElem; 5]; 3] {
    let w = TowerElem::scalar(params.omega.clone());
    let a3 = params.a.scale_rat(&rat(-1, 3));
    let b3 = params.b.scale_rat(&rat(-1, 3));
    let (z, o) = (TowerElem::zero(), TowerElem::one());
    [
        [o.clone(), w.clone(), w.clone() * w, z.clone(), z.clone()],
        [a3.clone(), a3.clone(), a3, o.clone(), z.clone()],
        [b3.clone(), b3.clone(), b3, z, o],
    ]
}

fn eval_form(form: &[TowerElem; 5], x: &ProjPoint) -> TowerElem {
    form.iter().zip(&x.coords).fold(TowerElem::zero(), |acc, (f, c)| acc + f.clone() * c.clone())
}

pub fn build_van_geemen_line(params: &DworkParams) -> Result<ParamLine, DworkError> {
    params.validate()?;
    van_geemen_line_unchecked(params)
}

/// Same spanning points without checking a^5 + b^5 = 27.
pub fn van_geemen_line_unchecked(params: &DworkParams) -> Result<ParamLine, DworkError> {
    let w = TowerElem::scalar(params.omega.clone());
    let w2 = w.clone() * w.clone();
    let third = rat(1, 3);
    let point = |x1: TowerElem, x2: TowerElem, x3: TowerElem| {
        let s = x1.clone() + x2.clone() + x3.clone();
        let x4 = params.a.scale_rat(&third) * s.clone();
        let x5 = params.b.scale_rat(&third) * s;
        ProjPoint { coords: [x1, x2, x3, x4, x5] }
    };
    let p = point(w, TowerElem::from_int(-1), TowerElem::zero());
    let q = point(w2, TowerElem::zero(), TowerElem::from_int(-1));
    ParamLine::new(p, q)
}

/// All three defining forms vanish on both spanning points.
pub fn residual_check(line: &ParamLine, params: &DworkParams) -> bool {
    linear_forms(params)
        .iter()
        .all(|f| eval_form(f, &line.p).is_zero() && eval_form(f, &line.q).is_zero())
}

/// Homogeneous polynomial in (s, t); entry k is the coefficient of s^(d-k) t^k.
type Binary = Vec<TowerElem>;

fn binary_mul(f: &Binary, g: &Binary) -> Binary {
    let mut out = vec![TowerElem::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            if !b.is_zero() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
    }
    out
}

/// Coefficients of `F(s p + t q)`, a binary quintic: 6 entries.
pub fn binary_form(line: &ParamLine, params: &DworkParams) -> Vec<TowerElem> {
    let lin: Vec<Binary> = (0..5).map(|j| vec![line.p.coords[j].clone(), line.q.coords[j].clone()]).collect();
    let prod = lin.iter().skip(1).fold(lin[0].clone(), |acc, x| binary_mul(&acc, x));
    let mut fifth_sum = vec![TowerElem::zero(); 6];
    for x in &lin {
        let x5 = (0..4).fold(x.clone(), |acc, _| binary_mul(&acc, x));
        for k in 0..6 {
            fifth_sum[k] = fifth_sum[k].clone() + x5[k].clone();
        }
    }
    let c = params.z_fifth_root().scale_rat(&rat(1, 5));
    (0..6).map(|k| prod[k].clone() - c.clone() * fifth_sum[k].clone()).collect()
}

pub fn verify_on_dwork(line: &ParamLine, params: &DworkParams) -> bool {
    binary_form(line, params).iter().all(|c| c.is_zero())
}

/// Floating check of containment for the embedding a -> r zeta^k (and
/// b -> r' zeta^k' with the same k): largest |F| at a few sample points,
/// scaled by the size of the terms.
pub fn numeric_containment_residual(params: &DworkParams, k: usize) -> f64 {
    let line = match build_van_geemen_line(params) {
        Ok(l) => l,
        Err(_) => return f64::INFINITY,
    };
    let p: Vec<Complex64> = line.p.coords.iter().map(|c| c.embed(k)).collect();
    let q: Vec<Complex64> = line.q.coords.iter().map(|c| c.embed(k)).collect();
    let z = params.z_fifth_root().embed(k);
    let samples = [(1.0, 0.3), (0.7, -1.1), (-0.2, 2.0), (1.5, 0.5)];
    let mut worst: f64 = 0.0;
    for (s, t) in samples {
        let (s, t) = (Complex64::new(s, 0.1), Complex64::new(t, -0.2));
        let x: Vec<Complex64> = (0..5).map(|j| s * p[j] + t * q[j]).collect();
        let prod = x.iter().fold(Complex64::new(1.0, 0.0), |a, b| a * b);
        let sum5: Complex64 = x.iter().map(|v| v.powu(5)).sum();
        let scale = prod.norm() + (z * sum5).norm() / 5.0 + 1e-300;
        worst = worst.max((prod - z / 5.0 * sum5).norm() / scale);
    }
    worst
}

/// Plucker vector in which entry p is sign * zeta5^exp * v[idx], with v the
/// Plucker vector of the starting line. The group actions only permute
/// entries, flip signs and shift exponents, so states stay symbolic.
/// K has no fifth roots of unity, so (exp, value) pairs faithfully encode
/// zeta^exp * value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Twisted(Vec<Option<(u8, i8, u8)>>);

const PAIRS: [(usize, usize); 10] = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

fn pair_index(i: usize, j: usize) -> usize {
    PAIRS.iter().position(|&(a, b)| (a, b) == (i, j)).expect("valid pair")
}

impl Twisted {
    fn act_diag(&self, k: &[u8; 5]) -> Self {
        Twisted(
            PAIRS
                .iter()
                .zip(&self.0)
                .map(|(&(i, j), e)| e.map(|(x, s, v)| ((x + k[i] + k[j]) % 5, s, v)))
                .collect(),
        )
    }

    /// Coordinate i moves to position perm[i].
    fn act_perm(&self, perm: &[usize; 5]) -> Self {
        let mut out = vec![None; 10];
        for (&(i, j), e) in PAIRS.iter().zip(&self.0) {
            let (a, b) = (perm[i], perm[j]);
            if a < b {
                out[pair_index(a, b)] = *e;
            } else {
                out[pair_index(b, a)] = e.map(|(x, s, v)| (x, -s, v));
            }
        }
        Twisted(out)
    }
}

/// Projective normal form: scale so the first nonzero entry is 1, with
/// every ratio v[j]/v[i] replaced by an interned id.
struct Canonicalizer {
    ratio: Vec<Vec<Option<u32>>>,
}

type Key = Vec<Option<(u8, u32)>>;

impl Canonicalizer {
    fn new(v: &[TowerElem]) -> Self {
        let mut ids: HashMap<TowerElem, u32> = HashMap::new();
        let mut ratio = vec![vec![None; 2 * v.len()]; v.len()];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            let inv = vi.try_inv().expect("nonzero");
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                for (sgn, slot) in [(1i64, 2 * j), (-1, 2 * j + 1)] {
                    let r = TowerElem::from_int(sgn) * vj.clone() * inv.clone();
                    let next = ids.len() as u32;
                    ratio[i][slot] = Some(*ids.entry(r).or_insert(next));
                }
            }
        }
        Canonicalizer { ratio }
    }

    fn key(&self, t: &Twisted) -> Key {
        let (e0, s0, i0) = t.0.iter().flatten().next().copied().expect("nonzero Plucker vector");
        t.0.iter()
            .map(|e| {
                e.map(|(x, s, j)| {
                    let slot = 2 * j as usize + usize::from(s * s0 < 0);
                    ((x + 5 - e0) % 5, self.ratio[i0 as usize][slot].expect("interned"))
                })
            })
            .collect()
    }
}

fn bfs(start: &Twisted, canon: &Canonicalizer, step: impl Fn(&Twisted) -> Vec<Twisted>) -> usize {
    let mut seen: HashSet<Key> = HashSet::new();
    seen.insert(canon.key(start));
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(cur) = queue.pop_front() {
        for nxt in step(&cur) {
            if seen.insert(canon.key(&nxt)) {
                queue.push_back(nxt);
            }
        }
    }
    seen.len()
}

fn diag_generators() -> Vec<[u8; 5]> {
    // sum-zero tuples; the diagonal acts trivially on lines
    vec![[1, 4, 0, 0, 0], [0, 1, 4, 0, 0], [0, 0, 1, 4, 0], [0, 0, 0, 1, 4]]
}

fn perm_generators() -> Vec<[usize; 5]> {
    vec![[1, 0, 2, 3, 4], [1, 2, 3, 4, 0]]
}

fn all_perms() -> Vec<[usize; 5]> {
    let mut out = Vec::with_capacity(120);
    let mut p = [0usize, 1, 2, 3, 4];
    fn rec(k: usize, p: &mut [usize; 5], out: &mut Vec<[usize; 5]>) {
        if k == 5 {
            out.push(*p);
            return;
        }
        for i in k..5 {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCounts {
    /// orbit under (Z/5)^3
    pub g5_orbit: usize,
    /// orbit under coordinate permutations
    pub s5_orbit: usize,
    /// permutations fixing the line
    pub s5_stabilizer: usize,
    /// g5_orbit * s5_orbit
    pub lower_bound: usize,
    /// orbit under the group generated by both actions
    pub combined_orbit: usize,
    pub virtual_count: usize,
}

impl OrbitCounts {
    pub fn to_json(&self) -> Value {
        json!({
            "g5Orbit": self.g5_orbit,
            "s5Orbit": self.s5_orbit,
            "s5Stabilizer": self.s5_stabilizer,
            "lowerBound": self.lower_bound,
            "combinedOrbit": self.combined_orbit,
            "virtualCount": self.virtual_count,
            "exceedsVirtualCount": self.lower_bound > self.virtual_count,
        })
    }
}

/// Degree-1 Gromov-Witten count of the quintic.
pub const VIRTUAL_LINE_COUNT: usize = 2875;

pub fn orbit_sizes(line: &ParamLine) -> OrbitCounts {
    let pl = line.plucker();
    let canon = Canonicalizer::new(&pl);
    let start = Twisted(pl.iter().enumerate().map(|(i, v)| (!v.is_zero()).then_some((0u8, 1i8, i as u8))).collect());
    let g5 = bfs(&start, &canon, |t| diag_generators().iter().map(|k| t.act_diag(k)).collect());
    let s5 = bfs(&start, &canon, |t| perm_generators().iter().map(|p| t.act_perm(p)).collect());
    let key = canon.key(&start);
    let stab = all_perms().iter().filter(|p| canon.key(&start.act_perm(p)) == key).count();
    let combined = bfs(&start, &canon, |t| {
        let mut v: Vec<Twisted> = diag_generators().iter().map(|k| t.act_diag(k)).collect();
        v.extend(perm_generators().iter().map(|p| t.act_perm(p)));
        v
    });
    OrbitCounts {
        g5_orbit: g5,
        s5_orbit: s5,
        s5_stabilizer: stab,
        lower_bound: g5 * s5,
        combined_orbit: combined,
        virtual_count: VIRTUAL_LINE_COUNT,
    }
}

/// Intersections of a line in {x5 = 0} = P^3 with the hyperplanes
/// x1..x4 = 0. Indices in the result are 1-based.
pub fn boundary_intersections(line: &ParamLine) -> Result<Vec<(usize, ProjPoint)>, DworkError> {
    if !(line.p.coords[4].is_zero() && line.q.coords[4].is_zero()) {
        return Err(DworkError::NotInCentralFiber);
    }
    let mut out = Vec::with_capacity(4);
    for i in 0..4 {
        let (pi, qi) = (&line.p.coords[i], &line.q.coords[i]);
        if pi.is_zero() && qi.is_zero() {
            return Err(DworkError::ContainedInHyperplane(i + 1));
        }
        out.push((i + 1, line.p.lin_comb(qi, &line.q, &-pi.clone())));
    }
    for a in 0..4 {
        for b in (a + 1)..4 {
            if out[a].1.proj_eq(&out[b].1) {
                return Err(DworkError::NonGeneric(a + 1, b + 1));
            }
        }
    }
    Ok(out)
}

/// The three very affine forms in u_i = x_i/x4 written with coefficients
/// built from `omega` and `a`, homogenized with x4. Rows act on (x1..x4).
pub fn limit_forms(omega: &QuadElem, a: &TowerElem) -> [[TowerElem; 4]; 3] {
    let w = TowerElem::scalar(omega.clone());
    let one = TowerElem::one();
    let c1 = a.scale_rat(&rat(-1, 3)) * (one.clone() - w.clone());
    let c2 = a.scale_rat(&rat(-1, 3)) * (one.clone() - w.clone() * w);
    let z = TowerElem::zero();
    [
        [z.clone(), c1.clone(), c2.clone(), one.clone()],
        [c1.clone(), c2.clone(), z.clone(), one.clone()],
        [c2, z, c1, one],
    ]
}

/// Do the three forms built from `forms_params` cut out exactly `line`?
/// The forms must have rank 2 and vanish at both spanning points.
pub fn limit_forms_cut_line(line: &ParamLine, forms_params: &DworkParams) -> bool {
    let forms = limit_forms(&forms_params.omega, &forms_params.a);
    let m = FieldMatrix::from_rows(forms.iter().map(|r| r.to_vec()).collect());
    if m.rank() != 2 {
        return false;
    }
    let vanish = |x: &ProjPoint| {
        forms
            .iter()
            .all(|f| f.iter().zip(&x.coords[..4]).fold(TowerElem::zero(), |acc, (c, v)| acc + c.clone() * v.clone()).is_zero())
    };
    vanish(&line.p) && vanish(&line.q)
}

pub fn verify_limit_equations(params: &DworkParams) -> Result<bool, DworkError> {
    if !params.b.is_zero() {
        return Err(DworkError::BadRelation("limit equations need b = 0".into()));
    }
    let line = build_van_geemen_line(params)?;
    if !limit_forms_cut_line(&line, params) {
        return Ok(false);
    }
    // the closure meets the boundary in the same four points
    let forms = limit_forms(&params.omega, &params.a);
    for (_, pt) in boundary_intersections(&line)? {
        for f in &forms {
            let v = f.iter().zip(&pt.coords[..4]).fold(TowerElem::zero(), |acc, (c, x)| acc + c.clone() * x.clone());
            if !v.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
