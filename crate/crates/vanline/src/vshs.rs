//! Connection matrices over a formal punctured disk, the normal function
//! candidate built from a potential Psi, the rank-5 extension it defines,
//! and residue checks.
//!
//! Vectors are written in the basis (e3, e2, e1, e0). The filtration puts
//! e_i in F^{i - 3/2}; levels are stored doubled so they stay integral
//! (e3 -> 3, e2 -> 1, e1 -> -1, e0 -> -3).

use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::{rat_to_string, Field, FieldMatrix, QuadElem, Rational, TruncSeries};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VshsError {
    #[error("section is not horizontal: its {0} component of the derivative is nonzero")]
    NotHorizontal(&'static str),
    #[error("transversality fails for {section}: derivative leaves F^{level}")]
    TransversalityFailure { section: String, level: String },
}

pub const LABELS: [&str; 4] = ["e3", "e2", "e1", "e0"];
/// Doubled filtration levels of e3, e2, e1, e0.
pub const LEVELS: [i32; 4] = [3, 1, -1, -3];

pub type Vector<F> = [TruncSeries<F>; 4];

fn half(l: i32) -> String {
    if l % 2 == 0 {
        (l / 2).to_string()
    } else {
        format!("{l}/2")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionMatrix<F: Field> {
    /// entries[i][j]: coefficient of e_i in the derivative of e_j
    pub entries: Vec<Vec<TruncSeries<F>>>,
    pub coupling_name: String,
}

impl<F: Field> ConnectionMatrix<F> {
    /// Only nonzero entries: (e2, e3) = 1, (e1, e2) = -coupling,
    /// (e0, e1) = -1.
    pub fn with_coupling(coupling: &TruncSeries<F>, name: &str) -> Self {
        let (var, n) = (coupling.var.clone(), coupling.order());
        let z = TruncSeries::zero(&var, n);
        let mut entries = vec![vec![z.clone(); 4]; 4];
        entries[1][0] = TruncSeries::constant(&var, n, F::one());
        entries[2][1] = coupling.neg();
        entries[3][2] = TruncSeries::constant(&var, n, -F::one());
        ConnectionMatrix { entries, coupling_name: name.to_string() }
    }

    /// Quantum connection with Phi''.
    pub fn a_model(phi2: &TruncSeries<F>) -> Self {
        Self::with_coupling(phi2, "Phi''")
    }

    /// Gauss-Manin connection with the Yukawa coupling.
    pub fn b_model(yukawa: &TruncSeries<F>) -> Self {
        Self::with_coupling(yukawa, "yukawa")
    }

    pub fn zero(var: &str, order: usize) -> Self {
        let z = TruncSeries::zero(var, order);
        ConnectionMatrix { entries: vec![vec![z; 4]; 4], coupling_name: "none".into() }
    }

    pub fn order(&self) -> usize {
        self.entries.iter().flatten().map(|s| s.order()).min().unwrap_or(0)
    }

    /// Constant-term matrix.
    pub fn residue(&self) -> FieldMatrix<F> {
        FieldMatrix::from_rows(self.entries.iter().map(|r| r.iter().map(|s| s.coeff(0)).collect()).collect())
    }
}

pub fn basis_vector<F: Field>(i: usize, var: &str, order: usize) -> Vector<F> {
    std::array::from_fn(|j| if i == j { TruncSeries::constant(var, order, F::one()) } else { TruncSeries::zero(var, order) })
}

/// (nabla v)_i = theta(v_i) + sum_j m_ij v_j.
pub fn apply_connection<F: Field>(m: &ConnectionMatrix<F>, v: &Vector<F>) -> Vector<F> {
    std::array::from_fn(|i| {
        let mut acc = v[i].theta();
        for (j, vj) in v.iter().enumerate() {
            acc = acc.add(&m.entries[i][j].mul(vj));
        }
        acc
    })
}

/// Psi together with nu = theta(Psi) e1 + Psi e0.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalFunctionCandidate<F: Field> {
    pub psi: TruncSeries<F>,
    pub nu: Vector<F>,
}

impl<F: Field> NormalFunctionCandidate<F> {
    pub fn new(psi: TruncSeries<F>) -> Self {
        let z = TruncSeries::zero(&psi.var, psi.order());
        let nu = [z.clone(), z, psi.theta(), psi.clone()];
        NormalFunctionCandidate { psi, nu }
    }

    /// Same Psi, arbitrary section.
    pub fn with_section(psi: TruncSeries<F>, nu: Vector<F>) -> Self {
        NormalFunctionCandidate { psi, nu }
    }
}

/// B side: W1 = theta(W0).
pub fn w1_from_w0<F: Field>(w0: &TruncSeries<F>) -> TruncSeries<F> {
    w0.theta()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Horizontality<F: Field> {
    pub derivative: Vector<F>,
    /// e3, e2 and e0 components vanish
    pub horizontal: bool,
    /// e1 component equals -theta^2 Psi up to the common order
    pub e1_is_minus_theta2: bool,
    /// e1 component equals +theta^2 Psi
    pub e1_is_plus_theta2: bool,
}

impl<F: Field> Horizontality<F> {
    pub fn e1(&self) -> &TruncSeries<F> {
        &self.derivative[2]
    }

    pub fn first_bad_component(&self) -> Option<&'static str> {
        [0, 1, 3].into_iter().find(|&i| !self.derivative[i].is_zero()).map(|i| LABELS[i])
    }
}

pub fn horizontality_check<F: Field>(m: &ConnectionMatrix<F>, nf: &NormalFunctionCandidate<F>) -> Horizontality<F> {
    let d = apply_connection(m, &nf.nu);
    let t2 = nf.psi.theta_n(2);
    let e1 = &d[2];
    let n = e1.order().min(t2.order());
    let (e1n, t2n) = (e1.truncate(n), t2.truncate(n));
    Horizontality {
        horizontal: [0, 1, 3].iter().all(|&i| d[i].is_zero()),
        e1_is_minus_theta2: e1n == t2n.neg(),
        e1_is_plus_theta2: e1n == t2n,
        derivative: d,
    }
}

/// Element (c, w) of K + V.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtVector<F: Field> {
    pub c: TruncSeries<F>,
    pub w: Vector<F>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionSpec<F: Field> {
    /// doubled jump index k
    pub k2: i32,
    pub nu: Vector<F>,
    /// (name, doubled level) of every generator whose transversality was checked
    pub checked: Vec<(String, i32)>,
    /// nu = 0: the extension is K + V with no twisting
    pub split: bool,
}

impl<F: Field> ExtensionSpec<F> {
    pub const RANK: usize = 5;

    /// (c, w) lies in F^s iff w - c nu is in F^s V when s <= k, and c = 0
    /// with w in F^s V otherwise.
    pub fn contains(&self, s: i32, x: &ExtVector<F>) -> bool {
        let in_v = |w: &Vector<F>| (0..4).all(|i| LEVELS[i] >= s || w[i].is_zero());
        if s <= self.k2 {
            let w: Vector<F> = std::array::from_fn(|i| x.w[i].sub(&x.c.mul(&self.nu[i])));
            in_v(&w)
        } else {
            x.c.is_zero() && in_v(&x.w)
        }
    }
}

/// Builds K + V with connection theta + nabla and the filtration generated
/// by F^s V and, for s <= k, the section (1, nu). Transversality is
/// checked for every generator at every level in [-5, 5].
pub fn build_extension<F: Field>(m: &ConnectionMatrix<F>, nf: &NormalFunctionCandidate<F>, k2: i32) -> Result<ExtensionSpec<F>, VshsError> {
    let h = horizontality_check(m, nf);
    if let Some(c) = h.first_bad_component() {
        return Err(VshsError::NotHorizontal(c));
    }
    let (var, n) = (nf.psi.var.clone(), m.order().min(nf.psi.order()));
    let zero = TruncSeries::zero(&var, n);
    let spec = ExtensionSpec { k2, nu: nf.nu.clone(), checked: Vec::new(), split: nf.nu.iter().all(|x| x.is_zero()) };
    let mut checked = Vec::new();
    for s in -5..=5 {
        let mut gens: Vec<(String, ExtVector<F>)> = (0..4)
            .filter(|&i| LEVELS[i] >= s)
            .map(|i| (format!("(0, {})", LABELS[i]), ExtVector { c: zero.clone(), w: basis_vector(i, &var, n) }))
            .collect();
        if s <= k2 {
            gens.push(("(1, nu)".into(), ExtVector { c: TruncSeries::constant(&var, n, F::one()), w: nf.nu.clone() }));
        }
        for (name, g) in gens {
            let d = ExtVector { c: g.c.theta(), w: apply_connection(m, &g.w) };
            if !spec.contains(s - 2, &d) {
                return Err(VshsError::TransversalityFailure { section: format!("{name} in F^{}", half(s)), level: half(s - 2) });
            }
            checked.push((name, s));
        }
    }
    Ok(ExtensionSpec { checked, ..spec })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidueReport<F: Field> {
    pub residue: FieldMatrix<F>,
    pub strictly_lower: bool,
    pub nilpotent: bool,
    /// diagonal entries when the residue is lower triangular
    pub eigenvalues: Option<Vec<F>>,
    /// an eigenvalue that is not a rational in [0, 1)
    pub flagged: bool,
    /// ranks of N, N^2, N^3
    pub weight_ranks: [usize; 3],
}

impl<F: Field> ResidueReport<F> {
    pub fn regular(&self) -> bool {
        self.nilpotent && !self.flagged
    }
}

pub fn residue_checks<F: Field>(m: &ConnectionMatrix<F>) -> ResidueReport<F> {
    let n = m.residue();
    let eigenvalues = n.is_lower().then(|| (0..4).map(|i| n.get(i, i).clone()).collect::<Vec<F>>());
    let in_unit = |x: &F| x.as_rational().is_some_and(|r| r >= Rational::from_integer(0.into()) && r < Rational::from_integer(1.into()));
    let flagged = match &eigenvalues {
        Some(ev) => !ev.iter().all(in_unit),
        // not triangular: nothing certified
        None => true,
    };
    ResidueReport {
        strictly_lower: n.is_strictly_lower(),
        nilpotent: n.pow(4).is_zero(),
        eigenvalues,
        flagged,
        weight_ranks: [n.rank(), n.pow(2).rank(), n.pow(3).rank()],
        residue: n,
    }
}

/// sum_d n~_d Q^d from a table of coefficients.
pub fn psi_from_table(table: &crate::bps::BpsTable, order: usize) -> TruncSeries<QuadElem> {
    TruncSeries::from_terms("Q", order, table.iter().map(|(&d, x)| (d as usize, x.clone())))
}

pub fn quad_series_to_json(s: &TruncSeries<QuadElem>) -> Value {
    json!({
        "var": s.var,
        "order": s.order(),
        "coeffs": s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

pub fn rational_series_to_json(s: &TruncSeries<Rational>) -> Value {
    json!({ "var": s.var, "order": s.order(), "coeffs": s.coeffs().iter().map(rat_to_string).collect::<Vec<_>>() })
}

/// Arbitrary coupling with constant term 5; only the shape matters.
pub fn sample_coupling<F: Field>(order: usize) -> TruncSeries<F> {
    TruncSeries::from_terms("Q", order, [(0, F::from_int(5)), (1, F::one())])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bps::paper_ntilde;
    use crate::arith::rat;

    type S = TruncSeries<Rational>;

    fn q(n: usize) -> S {
        S::variable("Q", n)
    }

    fn a_model(n: usize) -> ConnectionMatrix<Rational> {
        ConnectionMatrix::a_model(&sample_coupling(n))
    }

    #[test]
    fn basis_images() {
        let m = a_model(4);
        let d3 = apply_connection(&m, &basis_vector(0, "Q", 4));
        assert_eq!(d3, basis_vector(1, "Q", 4));
        let d0 = apply_connection(&m, &basis_vector(3, "Q", 4));
        assert!(d0.iter().all(|s| s.is_zero()));
        let d1 = apply_connection(&m, &basis_vector(2, "Q", 4));
        let minus_e0: Vector<Rational> = std::array::from_fn(|i| basis_vector::<Rational>(3, "Q", 4)[i].neg());
        assert_eq!(d1, minus_e0);
    }

    #[test]
    fn paper_psi_derivative() {
        let psi = psi_from_table(&paper_ntilde(), 4);
        let m = ConnectionMatrix::a_model(&sample_coupling::<QuadElem>(4));
        let h = horizontality_check(&m, &NormalFunctionCandidate::new(psi.clone()));
        assert!(h.horizontal);
        // the computed sign is +theta^2 Psi
        assert!(h.e1_is_plus_theta2);
        assert!(!h.e1_is_minus_theta2);
        assert_eq!(h.e1().coeff(2), paper_ntilde()[&2].scale(&rat(4, 1)));
    }

    #[test]
    fn zero_psi() {
        let h = horizontality_check(&a_model(4), &NormalFunctionCandidate::new(S::zero("Q", 4)));
        assert!(h.derivative.iter().all(|s| s.is_zero()));
        assert!(h.horizontal && h.e1_is_minus_theta2 && h.e1_is_plus_theta2);
    }

    #[test]
    fn e2_component_breaks_horizontality() {
        let psi = q(4);
        let mut nf = NormalFunctionCandidate::new(psi);
        nf.nu[1] = q(4);
        let h = horizontality_check(&a_model(4), &nf);
        assert!(!h.horizontal);
        assert_eq!(h.first_bad_component(), Some("e2"));
        // a constant e2 term is killed by theta but still spoils the e1 identity
        nf.nu[1] = S::constant("Q", 4, rat(1, 1));
        let h = horizontality_check(&a_model(4), &nf);
        assert!(h.horizontal && !h.e1_is_plus_theta2 && !h.e1_is_minus_theta2);
    }

    #[test]
    fn extension_half() {
        let psi = psi_from_table(&paper_ntilde(), 4);
        let m = ConnectionMatrix::a_model(&sample_coupling::<QuadElem>(4));
        let ext = build_extension(&m, &NormalFunctionCandidate::new(psi), 1).unwrap();
        assert!(!ext.split);
        assert!(ext.checked.iter().any(|(n, s)| n == "(1, nu)" && *s == 1));
    }

    #[test]
    fn extension_three_halves_fails() {
        let psi = psi_from_table(&paper_ntilde(), 4);
        let m = ConnectionMatrix::a_model(&sample_coupling::<QuadElem>(4));
        let e = build_extension(&m, &NormalFunctionCandidate::new(psi), 3).unwrap_err();
        assert!(matches!(e, VshsError::TransversalityFailure { ref section, .. } if section.contains("(1, nu)")));
    }

    #[test]
    fn e3_section_rejected() {
        let psi = q(4);
        let nf = NormalFunctionCandidate::with_section(psi, basis_vector(0, "Q", 4));
        let e = build_extension(&a_model(4), &nf, 1).unwrap_err();
        assert_eq!(e, VshsError::NotHorizontal("e2"));
    }

    #[test]
    fn split_when_psi_zero() {
        let ext = build_extension(&a_model(4), &NormalFunctionCandidate::new(S::zero("Q", 4)), 1).unwrap();
        assert!(ext.split);
    }

    #[test]
    fn residue_of_sample() {
        let r = residue_checks(&a_model(3));
        assert!(r.strictly_lower && r.nilpotent && !r.flagged && r.regular());
        assert_eq!(*r.residue.get(1, 0), rat(1, 1));
        assert_eq!(*r.residue.get(2, 1), rat(-5, 1));
        assert_eq!(*r.residue.get(3, 2), rat(-1, 1));
        assert_eq!(r.weight_ranks, [3, 2, 1]);
        let b = residue_checks(&ConnectionMatrix::b_model(&sample_coupling::<Rational>(3)));
        assert_eq!(b.residue, r.residue);
    }

    #[test]
    fn residue_zero_and_injected() {
        let z = residue_checks(&ConnectionMatrix::<Rational>::zero("Q", 2));
        assert!(z.regular());
        assert_eq!(z.weight_ranks, [0, 0, 0]);
        let mut m = a_model(2);
        m.entries[0][0] = S::constant("Q", 2, rat(1, 1));
        let r = residue_checks(&m);
        assert!(r.flagged);
        assert!(!r.strictly_lower);
    }

    #[test]
    fn w1_examples() {
        assert_eq!(w1_from_w0(&q(3)), q(3));
        assert!(w1_from_w0(&S::constant("Q", 3, rat(7, 1))).is_zero());
        let w0 = S::from_terms("Q", 3, [(1, rat(2, 1)), (3, rat(1, 5))]);
        assert_eq!(w1_from_w0(&w0).coeff(0), rat(0, 1));
    }
}
