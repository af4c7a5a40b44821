//! Weighted tropical curves in R^3, the 4-valent curve V and its
//! smoothings, and periodized-conormal predicates in polar coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::{parse_rational, rat, rat_to_string, Rational};
use crate::dwork::ProjPoint;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TropError {
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEps(String),
    #[error("leg index {0} out of range")]
    BadLeg(usize),
    #[error("direction {0:?} is not primitive")]
    NotPrimitive([i64; 3]),
    #[error("edge {0}: endpoints do not differ by a positive multiple of its direction")]
    BadEdge(usize),
    #[error("vertex index {0} out of range")]
    BadVertex(usize),
    #[error("boundary data: {0}")]
    Boundary(String),
    #[error("modulus must be positive")]
    BadModulus,
    #[error("malformed curve JSON: {0}")]
    Json(String),
}

pub type Vec3 = [Rational; 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeEnd {
    Vertex(usize),
    Ray,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TropEdge {
    pub from: usize,
    pub to: EdgeEnd,
    pub direction: [i64; 3],
    pub weight: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TropCurve {
    pub vertices: Vec<Vec3>,
    pub edges: Vec<TropEdge>,
}

fn gcd3(v: &[i64; 3]) -> i64 {
    v.iter().fold(0i64, |g, x| g.gcd(x))
}

pub fn is_primitive(v: &[i64; 3]) -> bool {
    gcd3(v) == 1
}

/// Primitive integer direction of a nonzero rational vector and the
/// lattice length of the vector along it.
pub fn primitive_of(diff: &Vec3) -> Option<([i64; 3], Rational)> {
    if diff.iter().all(|x| x.is_zero()) {
        return None;
    }
    let l = diff.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = diff.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let dir: Vec<i64> = ints.iter().map(|x| (x / &g).to_i64().expect("small direction")).collect();
    let len = Rational::new(g, l);
    Some(([dir[0], dir[1], dir[2]], len))
}

fn cyc(v: &[i64; 3], times: usize) -> [i64; 3] {
    (0..times).fold(*v, |w, _| [w[2], w[0], w[1]])
}

fn cyc_q(v: &Vec3, times: usize) -> Vec3 {
    (0..times).fold(v.clone(), |w, _| [w[2].clone(), w[0].clone(), w[1].clone()])
}

fn q(n: i64) -> Rational {
    rat(n, 1)
}

impl TropCurve {
    /// Checks primitivity and that bounded edges match their endpoints.
    pub fn validate(&self) -> Result<(), TropError> {
        for (k, e) in self.edges.iter().enumerate() {
            if !is_primitive(&e.direction) {
                return Err(TropError::NotPrimitive(e.direction));
            }
            if e.from >= self.vertices.len() {
                return Err(TropError::BadVertex(e.from));
            }
            if let EdgeEnd::Vertex(t) = e.to {
                if t >= self.vertices.len() {
                    return Err(TropError::BadVertex(t));
                }
                let diff: Vec3 = std::array::from_fn(|i| &self.vertices[t][i] - &self.vertices[e.from][i]);
                match primitive_of(&diff) {
                    Some((d, _)) if d == e.direction => {}
                    _ => return Err(TropError::BadEdge(k)),
                }
            }
        }
        Ok(())
    }

    /// Weighted sum of outgoing primitive directions at each vertex.
    pub fn vertex_sums(&self) -> Vec<[i64; 3]> {
        let mut sums = vec![[0i64; 3]; self.vertices.len()];
        for e in &self.edges {
            let w = e.weight as i64;
            for i in 0..3 {
                sums[e.from][i] += w * e.direction[i];
            }
            if let EdgeEnd::Vertex(t) = e.to {
                for i in 0..3 {
                    sums[t][i] -= w * e.direction[i];
                }
            }
        }
        sums
    }

    /// Lattice lengths of bounded edges, in edge order.
    pub fn bounded_lengths(&self) -> Vec<Rational> {
        self.edges
            .iter()
            .filter_map(|e| match e.to {
                EdgeEnd::Vertex(t) => {
                    let diff: Vec3 = std::array::from_fn(|i| &self.vertices[t][i] - &self.vertices[e.from][i]);
                    primitive_of(&diff).map(|(_, l)| l)
                }
                EdgeEnd::Ray => None,
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let num = |x: &Rational| -> Value {
            if x.is_integer() {
                json!(x.to_integer().to_i64())
            } else {
                Value::String(rat_to_string(x))
            }
        };
        json!({
            "vertices": self.vertices.iter().map(|v| v.iter().map(num).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| match e.to {
                EdgeEnd::Vertex(t) => json!({"from": e.from, "to": t, "weight": e.weight}),
                EdgeEnd::Ray => json!({"from": e.from, "rayDir": e.direction, "weight": e.weight}),
            }).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, TropError> {
        let err = |m: &str| TropError::Json(m.to_string());
        let parse_num = |x: &Value| -> Result<Rational, TropError> {
            match x {
                Value::Number(n) => parse_rational(&n.to_string()).map_err(|e| TropError::Json(e.to_string())),
                Value::String(s) => parse_rational(s).map_err(|e| TropError::Json(e.to_string())),
                _ => Err(err("coordinate must be a number or string")),
            }
        };
        let verts = v.get("vertices").and_then(Value::as_array).ok_or_else(|| err("missing vertices"))?;
        let mut vertices = Vec::new();
        for vert in verts {
            let c = vert.as_array().filter(|a| a.len() == 3).ok_or_else(|| err("vertex must have 3 coordinates"))?;
            vertices.push([parse_num(&c[0])?, parse_num(&c[1])?, parse_num(&c[2])?]);
        }
        let edges_v = v.get("edges").and_then(Value::as_array).ok_or_else(|| err("missing edges"))?;
        let mut edges = Vec::new();
        for e in edges_v {
            let from = e.get("from").and_then(Value::as_u64).ok_or_else(|| err("edge.from"))? as usize;
            let weight = e.get("weight").and_then(Value::as_u64).unwrap_or(1);
            if weight == 0 {
                return Err(err("weights must be positive"));
            }
            if from >= vertices.len() {
                return Err(TropError::BadVertex(from));
            }
            if let Some(t) = e.get("to").and_then(Value::as_u64) {
                let t = t as usize;
                if t >= vertices.len() {
                    return Err(TropError::BadVertex(t));
                }
                let diff: Vec3 = std::array::from_fn(|i| &vertices[t][i] - &vertices[from][i]);
                let (dir, _) = primitive_of(&diff).ok_or_else(|| err("edge with coincident endpoints"))?;
                edges.push(TropEdge { from, to: EdgeEnd::Vertex(t), direction: dir, weight });
            } else {
                let d = e.get("rayDir").and_then(Value::as_array).filter(|a| a.len() == 3).ok_or_else(|| err("edge needs to or rayDir"))?;
                let dir: Vec<i64> = d.iter().map(|x| x.as_i64().ok_or_else(|| err("rayDir entries must be integers"))).collect::<Result<_, _>>()?;
                edges.push(TropEdge { from, to: EdgeEnd::Ray, direction: [dir[0], dir[1], dir[2]], weight });
            }
        }
        let c = TropCurve { vertices, edges };
        c.validate()?;
        Ok(c)
    }
}

pub fn check_balancing(c: &TropCurve) -> bool {
    c.vertex_sums().iter().all(|s| *s == [0, 0, 0])
}

/// Directions of the legs of V, in leg order 1..4.
pub const V_DIRECTIONS: [[i64; 3]; 4] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]];

pub fn make_v() -> TropCurve {
    TropCurve {
        vertices: vec![[q(0), q(0), q(0)]],
        edges: V_DIRECTIONS
            .iter()
            .map(|d| TropEdge { from: 0, to: EdgeEnd::Ray, direction: *d, weight: 1 })
            .collect(),
    }
}

/// V(i; eps): two trivalent vertices joined by an edge of lattice length
/// eps. For i = 1 the vertices are (0, eps/2, eps/2) and (0, -eps/2, -eps/2);
/// i = 2, 3 are cyclic shifts of the coordinates.
pub fn make_v_smoothed(i: usize, eps: &Rational) -> Result<TropCurve, TropError> {
    if !(1..=3).contains(&i) {
        return Err(TropError::BadLeg(i));
    }
    if !eps.is_positive() {
        return Err(TropError::NonPositiveEps(rat_to_string(eps)));
    }
    let h = eps / q(2);
    let shift = i - 1;
    let top = cyc_q(&[q(0), h.clone(), h.clone()], shift);
    let bot = cyc_q(&[q(0), -h.clone(), -h], shift);
    let ray = |from: usize, d: [i64; 3]| TropEdge { from, to: EdgeEnd::Ray, direction: cyc(&d, shift), weight: 1 };
    Ok(TropCurve {
        vertices: vec![top, bot],
        edges: vec![
            TropEdge { from: 0, to: EdgeEnd::Vertex(1), direction: cyc(&[0, -1, -1], shift), weight: 1 },
            ray(0, [0, 1, 0]),
            ray(0, [0, 0, 1]),
            ray(1, [1, 0, 0]),
            ray(1, [-1, -1, -1]),
        ],
    })
}

/// Directions attached to the four punctures of a line in P^3 meeting the
/// coordinate hyperplanes transversally: x_i = 0 (i = 1, 2, 3) gives -e_i
/// and the homogenizing hyperplane x4 = 0 gives (1, 1, 1). Sorted.
pub fn tropicalization_type(bdry: &[(usize, ProjPoint)]) -> Result<Vec<[i64; 3]>, TropError> {
    if bdry.len() != 4 {
        return Err(TropError::Boundary(format!("expected 4 boundary points, got {}", bdry.len())));
    }
    let mut seen = [false; 4];
    let mut out = Vec::with_capacity(4);
    for (idx, pt) in bdry {
        if !(1..=4).contains(idx) || seen[idx - 1] {
            return Err(TropError::Boundary(format!("bad or repeated hyperplane index {idx}")));
        }
        seen[idx - 1] = true;
        let zeros: Vec<usize> = (0..4).filter(|&j| pt.coords[j].is_zero()).map(|j| j + 1).collect();
        if zeros != vec![*idx] {
            return Err(TropError::Boundary(format!("point on x{idx} = 0 also lies on {zeros:?}: not transverse")));
        }
        out.push(match idx {
            1 => [-1, 0, 0],
            2 => [0, -1, 0],
            3 => [0, 0, -1],
            _ => [1, 1, 1],
        });
    }
    out.sort();
    Ok(out)
}

/// Multisets equal, or equal after negating every vector.
pub fn same_up_to_global_sign(a: &[[i64; 3]], b: &[[i64; 3]]) -> bool {
    let sorted = |v: &[[i64; 3]]| {
        let mut w = v.to_vec();
        w.sort();
        w
    };
    let neg: Vec<[i64; 3]> = b.iter().map(|d| [-d[0], -d[1], -d[2]]).collect();
    sorted(a) == sorted(b) || sorted(a) == sorted(&neg)
}

/// A point of (C*)^3 in polar form. Arguments are in turns (multiples of
/// 2 pi), reduced to [0, 1).
#[derive(Clone, Debug, PartialEq)]
pub struct ConormalPoint {
    pub modulus: [Rational; 3],
    pub arg: [Rational; 3],
}

fn reduce_turn(x: &Rational) -> Rational {
    x - x.floor()
}

impl ConormalPoint {
    pub fn new(modulus: [Rational; 3], arg: [Rational; 3]) -> Result<Self, TropError> {
        if modulus.iter().any(|m| !m.is_positive()) {
            return Err(TropError::BadModulus);
        }
        Ok(ConormalPoint { modulus, arg: arg.map(|a| reduce_turn(&a)) })
    }
}

/// Periodized conormal to leg `leg` of V. Legs 1..3: |u_j| = |u_k| for the
/// other two indices and u_leg = r e^(2 pi i theta) with r >= 1. Leg 4:
/// |u1| = |u2| = |u3| and u1 u2 u3 = r e^(2 pi i theta) with 0 < r <= 1.
/// theta = 0 for the base, theta in (1/5)Z on the 5-fold cover.
pub fn conormal_member(p: &ConormalPoint, leg: usize, cover: bool) -> Result<bool, TropError> {
    let arg_ok = |t: &Rational| {
        let t = reduce_turn(t);
        if cover {
            (t * q(5)).is_integer()
        } else {
            t.is_zero()
        }
    };
    match leg {
        1..=3 => {
            let l = leg - 1;
            let others: Vec<usize> = (0..3).filter(|&x| x != l).collect();
            Ok(p.modulus[others[0]] == p.modulus[others[1]] && p.modulus[l] >= q(1) && arg_ok(&p.arg[l]))
        }
        4 => {
            let m = &p.modulus;
            let prod = &m[0] * &m[1] * &m[2];
            let arg_sum = &p.arg[0] + &p.arg[1] + &p.arg[2];
            Ok(m[0] == m[1] && m[1] == m[2] && prod <= q(1) && arg_ok(&arg_sum))
        }
        _ => Err(TropError::BadLeg(leg)),
    }
}
