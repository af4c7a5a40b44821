//! The full verification suite and its report.
//!
//! Every check yields one [`Check`] entry. `flagged` marks a known
//! misprint or convention mismatch in the source material that the
//! computation exposes; it never hides a failed computation.

use std::path::PathBuf;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{rat, rat_to_string, Field, QuadElem, Rational, TowerElem, TruncSeries};
use crate::{bps, chainlink, dilog, dwork, floer, locsys, tropical, vshs};

pub const SCHEMA_VERSION: u32 = 1;
const SEED: u64 = 0x5eed_0005;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Flagged,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub citation: String,
    pub status: Status,
    pub details: Value,
    pub elapsed_millis: u64,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Config {
    #[serde(default = "default_order")]
    pub truncation_order: u64,
    #[serde(default = "default_tol")]
    pub float_tolerance: f64,
    #[serde(default)]
    pub data_dir: Option<PathBuf>,
}

fn default_order() -> u64 {
    4
}

fn default_tol() -> f64 {
    1e-9
}

impl Default for Config {
    fn default() -> Self {
        Config { truncation_order: default_order(), float_tolerance: default_tol(), data_dir: None }
    }
}

impl Config {
    pub fn from_json_str(text: &str) -> Result<Self, String> {
        let c: Config = serde_json::from_str(text).map_err(|e| format!("malformed config: {e}"))?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(1..=64).contains(&self.truncation_order) {
            return Err(format!("truncationOrder must be in 1..=64, got {}", self.truncation_order));
        }
        if !(self.float_tolerance.is_finite() && self.float_tolerance > 0.0) {
            return Err(format!("floatTolerance must be positive, got {}", self.float_tolerance));
        }
        Ok(())
    }

    fn to_json(&self) -> Value {
        json!({
            "truncationOrder": self.truncation_order,
            "floatTolerance": self.float_tolerance,
            "dataDir": self.data_dir.as_ref().map(|p| p.display().to_string()),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub config: Config,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.count(Status::Fail) == 0 {
            0
        } else {
            1
        }
    }

    /// Timings are wall-clock and so vary between runs; they are written
    /// as 0 unless `timings` is set.
    pub fn to_json(&self, timings: bool) -> Value {
        json!({
            "schemaVersion": SCHEMA_VERSION,
            "config": self.config.to_json(),
            "summary": {
                "total": self.checks.len(),
                "pass": self.count(Status::Pass),
                "fail": self.count(Status::Fail),
                "flagged": self.count(Status::Flagged),
            },
            "checks": self.checks.iter().map(|c| json!({
                "checkName": c.name,
                "paperCitation": c.citation,
                "status": c.status,
                "details": c.details,
                "elapsedMillis": if timings { c.elapsed_millis } else { 0 },
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_markdown(&self, timings: bool) -> String {
        let mut out = String::from("# Verification report\n\n");
        out.push_str(&format!(
            "{} checks: {} pass, {} fail, {} flagged\n\n",
            self.checks.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Flagged)
        ));
        out.push_str("| check | claim | status | ms |\n|---|---|---|---|\n");
        for c in &self.checks {
            let status = serde_json::to_value(c.status).expect("status").as_str().unwrap_or("").to_string();
            out.push_str(&format!(
                "| `{}` | {} | {} | {} |\n",
                c.name,
                c.citation,
                status,
                if timings { c.elapsed_millis } else { 0 }
            ));
        }
        let notes: Vec<&Check> = self.checks.iter().filter(|c| c.status != Status::Pass).collect();
        if !notes.is_empty() {
            out.push_str("\n## Non-passing entries\n");
            for c in notes {
                out.push_str(&format!("\n### {}\n\n```json\n{}\n```\n", c.name, serde_json::to_string_pretty(&c.details).expect("json")));
            }
        }
        out
    }
}

fn run(name: &str, citation: &str, f: impl FnOnce() -> (Status, Value)) -> Check {
    let t = Instant::now();
    let (status, details) = f();
    Check { name: name.into(), citation: citation.into(), status, details, elapsed_millis: t.elapsed().as_millis() as u64 }
}

fn omegas() -> [(&'static str, QuadElem); 2] {
    [("omega", QuadElem::omega()), ("omega^2", QuadElem::omega2())]
}

// ---------------------------------------------------------------- dwork

pub fn dwork_suite(cfg: &Config) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(run("dwork.containment", "van Geemen lines lie on the Dwork quintic", || {
        let mut cases = Vec::new();
        let mut ok = true;
        for (wname, w) in omegas() {
            let central = dwork::DworkParams::central(w.clone());
            let smooth = dwork::DworkParams::with_rational_a(w.clone(), rat(1, 1)).expect("valid parameters");
            for (kind, p) in [("b = 0, a^5 = 27", central), ("a = 1, b^5 = 26", smooth)] {
                let line = dwork::build_van_geemen_line(&p).expect("valid parameters");
                let coeffs = dwork::binary_form(&line, &p);
                let zero = coeffs.iter().filter(|c| c.is_zero()).count();
                let numeric = (0..5).map(|k| dwork::numeric_containment_residual(&p, k)).fold(0.0, f64::max);
                let good = dwork::residual_check(&line, &p) && zero == 6 && numeric <= cfg.float_tolerance;
                ok &= good;
                cases.push(json!({
                    "omega": wname, "parameters": kind, "zeroCoefficients": zero,
                    "maxEmbeddingResidual": numeric, "pass": good,
                }));
            }
        }
        // control: breaking a^5 + b^5 = 27 must be detected
        let broken = dwork::DworkParams::new_unchecked(
            QuadElem::omega(),
            TowerElem::one().with_radicand(&rat(27, 1)).expect("scalar"),
            TowerElem::generator(rat(27, 1)),
        );
        let line = dwork::van_geemen_line_unchecked(&broken).expect("line");
        let rejected = !dwork::verify_on_dwork(&line, &broken);
        ok &= rejected;
        (Status::from_bool(ok), json!({ "cases": cases, "brokenRelationRejected": rejected }))
    }));
    out.push(run("dwork.orbits", "orbit counts 125, 40 and 5000 > 2875", || {
        let p = dwork::DworkParams::with_rational_a(QuadElem::omega(), rat(1, 1)).expect("valid parameters");
        let o = dwork::orbit_sizes(&dwork::build_van_geemen_line(&p).expect("line"));
        let ok = o.g5_orbit == 125 && o.s5_orbit == 40 && o.lower_bound == 5000 && o.lower_bound > o.virtual_count;
        (Status::from_bool(ok), o.to_json())
    }));
    out.push(run("dwork.boundary", "limit line meets the four boundary divisors transversally", || {
        let mut cases = Vec::new();
        let mut ok = true;
        for (wname, w) in omegas() {
            let p = dwork::DworkParams::central(w);
            let line = dwork::build_van_geemen_line(&p).expect("line");
            match dwork::boundary_intersections(&line) {
                Ok(pts) => cases.push(json!({
                    "omega": wname,
                    "points": pts.iter().map(|(i, pt)| json!({"hyperplane": i, "point": pt.to_json()})).collect::<Vec<_>>(),
                })),
                Err(e) => {
                    ok = false;
                    cases.push(json!({"omega": wname, "error": e.to_string()}));
                }
            }
        }
        (Status::from_bool(ok), json!({ "cases": cases }))
    }));
    out.push(run("dwork.limitForms", "very affine equations of the limit line", || {
        let res: Vec<(String, bool)> = omegas()
            .into_iter()
            .map(|(n, w)| (n.to_string(), dwork::verify_limit_equations(&dwork::DworkParams::central(w)).unwrap_or(false)))
            .collect();
        let ok = res.iter().all(|r| r.1);
        (Status::from_bool(ok), json!({ "cutsLine": res.iter().map(|(n, b)| (n.clone(), json!(b))).collect::<serde_json::Map<_, _>>() }))
    }));
    out
}

// ---------------------------------------------------------------- tropical

/// Ten deterministic positive rationals.
pub fn sample_epsilons() -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..10).map(|_| rat(rng.gen_range(1..=1000), rng.gen_range(1..=1000))).collect()
}

pub fn tropical_suite(_cfg: &Config) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(run("tropical.balancingV", "the four-valent curve V is balanced", || {
        let v = tropical::make_v();
        let ok = v.validate().is_ok() && tropical::check_balancing(&v);
        (Status::from_bool(ok), json!({ "curve": v.to_json(), "vertexSums": v.vertex_sums() }))
    }));
    out.push(run("tropical.smoothings", "the smoothings V(i; eps) are balanced", || {
        let eps = sample_epsilons();
        let mut ok = true;
        let mut tried = 0;
        for i in 1..=3 {
            for e in &eps {
                let c = tropical::make_v_smoothed(i, e).expect("positive eps");
                ok &= c.validate().is_ok() && tropical::check_balancing(&c) && c.bounded_lengths() == vec![e.clone()];
                tried += 1;
            }
        }
        let ex = tropical::make_v_smoothed(1, &rat(1, 1)).expect("eps = 1");
        (Status::from_bool(ok), json!({ "curvesChecked": tried, "epsilons": eps.iter().map(rat_to_string).collect::<Vec<_>>(), "exampleI1Eps1": ex.to_json() }))
    }));
    out.push(run("tropical.limitLineType", "the limit line tropicalizes to V", || {
        let mut ok = true;
        let mut types = Vec::new();
        for (wname, w) in omegas() {
            let line = dwork::build_van_geemen_line(&dwork::DworkParams::central(w)).expect("line");
            let t = dwork::boundary_intersections(&line)
                .map_err(|e| e.to_string())
                .and_then(|b| tropical::tropicalization_type(&b).map_err(|e| e.to_string()));
            match t {
                Ok(dirs) => {
                    let same = tropical::same_up_to_global_sign(&dirs, &tropical::V_DIRECTIONS);
                    ok &= same;
                    types.push(json!({"omega": wname, "directions": dirs, "matchesV": same}));
                }
                Err(e) => {
                    ok = false;
                    types.push(json!({"omega": wname, "error": e}));
                }
            }
        }
        (Status::from_bool(ok), json!({ "types": types }))
    }))
    ;
    out.push(run("tropical.conormals", "periodized conormals, base and five-fold cover", || {
        let q = |n: i64| rat(n, 1);
        let h = rat(1, 2);
        let cases: Vec<(&str, tropical::ConormalPoint, usize, bool, bool)> = vec![
            ("leg 3, base", tropical::ConormalPoint::new([q(2), q(2), q(1)], [q(0), q(0), q(0)]).expect("point"), 3, false, true),
            ("leg 3, cover angle 1/5", tropical::ConormalPoint::new([q(2), q(2), q(1)], [q(0), q(0), rat(1, 5)]).expect("point"), 3, true, true),
            ("leg 3, base angle 1/5", tropical::ConormalPoint::new([q(2), q(2), q(1)], [q(0), q(0), rat(1, 5)]).expect("point"), 3, false, false),
            ("leg 1, modulus below 1", tropical::ConormalPoint::new([h.clone(), q(3), q(3)], [q(0), q(0), q(0)]).expect("point"), 1, false, false),
            ("leg 4, base", tropical::ConormalPoint::new([h.clone(), h.clone(), h.clone()], [rat(1, 3), rat(1, 3), rat(1, 3)]).expect("point"), 4, false, true),
            ("leg 4, cover angle 2/5", tropical::ConormalPoint::new([h.clone(), h.clone(), h], [rat(1, 5), rat(1, 5), q(0)]).expect("point"), 4, true, true),
        ];
        let mut ok = true;
        let rows: Vec<Value> = cases
            .into_iter()
            .map(|(name, p, leg, cover, want)| {
                let got = tropical::conormal_member(&p, leg, cover).unwrap_or(!want);
                ok &= got == want;
                json!({"case": name, "member": got, "expected": want})
            })
            .collect();
        (Status::from_bool(ok), json!({ "cases": rows }))
    }));
    out
}

// ---------------------------------------------------------------- chainlink

pub fn chainlink_suite(_cfg: &Config) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(run("chainlink.longitudeImages", "longitudes map to the stated classes in H1(T^3)", || match chainlink::check_longitude_images() {
        Ok(imgs) => (Status::Pass, json!({ "images": imgs })),
        Err(e) => (Status::Fail, json!({ "error": e.to_string() })),
    }));
    out.push(run("chainlink.longitudeMatrix", "longitudes in the meridian basis", || {
        let l = chainlink::longitude_matrix();
        let inv: Vec<String> = l.snf().invariant_factors().iter().map(|x| x.to_string()).collect();
        let ok = l.rank() == 5 && l.rank_bareiss() == 5 && inv == ["1", "1", "1", "1", "2"];
        (Status::from_bool(ok), json!({ "matrix": l.to_i64_rows(), "rank": l.rank(), "smithInvariants": inv, "rankMod2": l.rank_mod(2) }))
    }));
    out.push(run("chainlink.deckGroup", "deck group of the 125-fold cover is (Z/5)^3", || {
        let d = chainlink::deck_group();
        (Status::from_bool(d == [5, 5, 5]), json!({ "elementaryDivisors": d, "torusMapRank": chainlink::torus_map().rank() }))
    }));
    out.push(run("chainlink.mayerVietoris", "first Betti number 9 of the doubled complement", || {
        match chainlink::mayer_vietoris(&chainlink::GluingData::respecting_classes()) {
            Ok(mv) => (Status::from_bool(mv.h1_rank == 9), mv.to_json()),
            Err(e) => (Status::Fail, json!({ "error": e.to_string() })),
        }
    }));
    out.push(run("chainlink.meridianQuotient", "quotient by fifth powers of meridians", || {
        let q = chainlink::abelianized_meridian_quotient();
        let matches = q == [5, 5, 5, 5];
        let status = if matches { Status::Flagged } else { Status::Fail };
        (status, json!({
            "abelianizedQuotient": q,
            "statedQuotient": [5, 5, 5],
            "note": "the quotient of the fundamental group by the normal closure of m0, m1^5, ..., m4^5 is stated to be (Z/5)^3; its abelianization is (Z/5)^4 and the nonabelian quotient is not computed here",
        }))
    }));
    out
}

// ---------------------------------------------------------------- locsys

pub fn locsys_suite(_cfg: &Config) -> Vec<Check> {
    let mut out = Vec::new();
    let a = TowerElem::a27();
    out.push(run("locsys.vanGeemenResidues", "both van Geemen local systems are unobstructed", || {
        let mut ok = true;
        let mut rows = Vec::new();
        for which in [locsys::CubeRoot::Omega, locsys::CubeRoot::Omega2] {
            match locsys::van_geemen_tuple(which, &a).and_then(|h| locsys::residues(&h).map(|r| (h, r))) {
                Ok((h, r)) => {
                    ok &= r.all_zero();
                    rows.push(json!({"cubeRoot": format!("{which:?}"), "tuple": h.to_json(), "residues": r.to_json()}));
                }
                Err(e) => {
                    ok = false;
                    rows.push(json!({"cubeRoot": format!("{which:?}"), "error": e.to_string()}));
                }
            }
        }
        let conj = match (locsys::van_geemen_tuple(locsys::CubeRoot::Omega, &a), locsys::van_geemen_tuple(locsys::CubeRoot::Omega2, &a)) {
            (Ok(x), Ok(y)) => x.conj_omega() == y && x != y,
            _ => false,
        };
        ok &= conj;
        (Status::from_bool(ok), json!({
            "tuples": rows,
            "galoisConjugate": conj,
            "longitudeSigns": locsys::LONGITUDE_SIGNS,
            "erratum": "lambda4 = w; lambda4 = -w makes the fifth residue nonzero",
        }))
    }));
    out.push(run("locsys.extendRoundTrip", "extension from the pair of pants recovers the local system", || {
        let mut ok = true;
        let mut rows = Vec::new();
        for which in [locsys::CubeRoot::Omega, locsys::CubeRoot::Omega2] {
            let h = locsys::van_geemen_tuple(which, &a).expect("valid tuple");
            match locsys::extend_point(&h.mu[0], &h.lambda[0], None) {
                Ok(ext) => {
                    let found = ext.tuples.contains(&h);
                    ok &= found;
                    rows.push(json!({"cubeRoot": format!("{which:?}"), "solutions": ext.tuples.len(), "recovered": found, "diagnostics": ext.diagnostics}));
                }
                Err(e) => {
                    ok = false;
                    rows.push(json!({"cubeRoot": format!("{which:?}"), "error": e.to_string()}));
                }
            }
        }
        (Status::from_bool(ok), json!({ "cases": rows }))
    }));
    out.push(run("locsys.genus", "the solution curve has genus 6", || {
        let g = locsys::riemann_hurwitz_genus(25, 3, &vec![vec![5; 5]; 3]);
        match g {
            Ok(g) => (Status::from_bool(g == 6), json!({ "degree": 25, "punctures": 3, "cycles": "five 5-cycles at each puncture", "genus": g })),
            Err(e) => (Status::Fail, json!({ "error": e.to_string() })),
        }
    }));
    out
}

// ---------------------------------------------------------------- floer

pub fn floer_suite(cfg: &Config) -> Vec<Check> {
    let data = floer::IncidenceData::from_dir(cfg.data_dir.as_deref());
    let report = data.as_ref().map_err(|e| e.to_string()).and_then(|d| floer::verify(d).map_err(|e| e.to_string()));
    let source = data.as_ref().map(|d| d.source.clone()).unwrap_or_default();
    let fail = |e: &String| (Status::Fail, json!({ "error": e }));
    let (lo, hi) = floer::DEGREE_RANGE;
    vec![
        run("floer.e2", "E2 page of the energy spectral sequence", || match &report {
            Ok(r) => (Status::from_bool(r.e2.window(lo, hi) == floer::EXPECTED_E2), json!({ "source": source, "degrees": (lo..=hi).collect::<Vec<_>>(), "e2": r.e2.window(lo, hi) })),
            Err(e) => fail(e),
        }),
        run("floer.differentialRanks", "differentials of rank 10, 8 and 4", || match &report {
            Ok(r) => {
                let comp = r.compositions.iter().all(|c| c.1);
                let ok = r.rank_mismatch().is_none() && comp;
                (Status::from_bool(ok), json!({
                    "source": source,
                    "ranks": r.ranks.iter().map(|(p, k)| (p.to_string(), json!(k))).collect::<serde_json::Map<_, _>>(),
                    "compositionsVanish": comp,
                    "mismatch": r.rank_mismatch(),
                }))
            }
            Err(e) => fail(e),
        }),
        run("floer.cohomology", "Floer cohomology ranks 1, 3, 4, 4, 3, 1", || match &report {
            Ok(r) => {
                let ok = r.cohomology.window(lo, hi) == floer::EXPECTED_HF && r.poincare && r.euler_e2 == r.euler_hf;
                (Status::from_bool(ok), r.to_json())
            }
            Err(e) => fail(e),
        }),
    ]
}

// ---------------------------------------------------------------- bps

fn random_quad(rng: &mut ChaCha8Rng) -> QuadElem {
    QuadElem::new(rat(rng.gen_range(-50..=50), rng.gen_range(1..=30)), rat(rng.gen_range(-50..=50), rng.gen_range(1..=30)))
}

/// `count` random tables with random orders up to `max_order`.
pub fn random_bps_tables(count: usize, max_order: u64, seed: u64) -> Vec<(u64, bps::BpsTable)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_order);
            let mut t = bps::BpsTable::new();
            for d in 1..=n {
                let x = random_quad(&mut rng);
                if rng.gen_bool(0.8) && !x.is_zero() {
                    t.insert(d, x);
                }
            }
            (n, t)
        })
        .collect()
}

pub fn bps_suite(cfg: &Config) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(run("bps.chi", "the order-3 character from its defining formula", || {
        let formula_ok = (0..30u32).all(|k| bps::chi_exact(k) == QuadElem::from_int(bps::chi(k as i64)));
        let mult_ok = (1..=1000i64).all(|m| (1..=1000i64).step_by(7).all(|n| bps::chi(m * n) == bps::chi(m) * bps::chi(n)));
        (Status::from_bool(formula_ok && mult_ok), json!({
            "chi1": bps::chi(1), "chi2": bps::chi(2), "chi3": bps::chi(3),
            "matchesDefiningFormula": formula_ok, "completelyMultiplicative": mult_ok,
        }))
    }));
    out.push(run("bps.chiDisplay", "case display of the character", || {
        let v = bps::chi_exact(2);
        let status = if v == QuadElem::from_int(-1) { Status::Flagged } else { Status::Fail };
        (status, json!({ "chi2FromFormula": v.to_string(), "displayedValue": 2, "note": "the case display prints 2 for k = 2 mod 3; the defining formula gives -1" }))
    }));
    out.push(run("bps.paperValues", "n_d lie in sqrt(-3) Z[1/3] and are even there", || {
        let c = bps::check_paper_values(cfg.truncation_order);
        (Status::from_bool(c.passed()), c.to_json())
    }));
    out.push(run("bps.roundTrip", "expansion and inversion are mutually inverse", || {
        let tables = random_bps_tables(100, 12, SEED);
        let ok = tables.iter().all(|(n, t)| {
            bps::invert(&bps::expand(t, *n), *n) == *t && bps::expand(&bps::invert(t, *n), *n) == *t
        });
        (Status::from_bool(ok), json!({ "tables": tables.len(), "maxOrder": 12, "seed": SEED }))
    }));
    out.push(run("bps.dirichletL2", "L(2; chi) from partial sums and from Clausen values", || {
        let (v, blocks) = bps::dirichlet_l2(cfg.float_tolerance / 10.0);
        let d = dilog::l2chi_via_dilog();
        let ok = (v - d).abs() <= cfg.float_tolerance && v > 0.0;
        (Status::from_bool(ok), json!({ "partialSums": v, "blocks": blocks, "viaClausen": d, "difference": (v - d).abs() }))
    }));
    out
}

// ---------------------------------------------------------------- vshs

fn random_rational_series(rng: &mut ChaCha8Rng, order: usize, from: usize) -> TruncSeries<Rational> {
    TruncSeries::from_terms("Q", order, (from..=order).map(|k| (k, rat(rng.gen_range(-20..=20), rng.gen_range(1..=9)))))
}

/// 50 random (coupling, Psi) pairs at order 8.
pub fn random_psi_cases(seed: u64) -> Vec<(TruncSeries<Rational>, TruncSeries<Rational>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..50).map(|_| (random_rational_series(&mut rng, 8, 0), random_rational_series(&mut rng, 8, 1))).collect()
}

pub fn vshs_suite(cfg: &Config) -> Vec<Check> {
    let mut out = Vec::new();
    let order = cfg.truncation_order.min(4) as usize;
    let psi = vshs::psi_from_table(&bps::paper_ntilde(), order);
    let a_model = vshs::ConnectionMatrix::a_model(&vshs::sample_coupling::<QuadElem>(order));
    out.push(run("vshs.horizontality", "derivative of the normal function is -theta^2 Psi e1", || {
        let h = vshs::horizontality_check(&a_model, &vshs::NormalFunctionCandidate::new(psi.clone()));
        let ok = h.horizontal && h.e1_is_minus_theta2;
        (Status::from_bool(ok), json!({
            "order": order,
            "componentsOutsideE1Vanish": h.horizontal,
            "e1Component": vshs::quad_series_to_json(h.e1()),
            "e1EqualsMinusTheta2Psi": h.e1_is_minus_theta2,
            "e1EqualsPlusTheta2Psi": h.e1_is_plus_theta2,
            "note": "with (nabla v)_i = theta(v_i) + sum_j m_ij v_j and the stated matrix, the e1 component is +theta^2 Psi",
        }))
    }));
    out.push(run("vshs.extension", "the extension at k = 1/2 is Griffiths transversal", || {
        match vshs::build_extension(&a_model, &vshs::NormalFunctionCandidate::new(psi.clone()), 1) {
            Ok(ext) => (Status::Pass, json!({ "rank": 5, "k": "1/2", "generatorsChecked": ext.checked.len(), "split": ext.split })),
            Err(e) => (Status::Fail, json!({ "error": e.to_string() })),
        }
    }));
    out.push(run("vshs.transversalityRandom", "transversality for random potentials", || {
        let cases = random_psi_cases(SEED);
        let mut failures = Vec::new();
        for (i, (coupling, psi)) in cases.iter().enumerate() {
            let m = vshs::ConnectionMatrix::a_model(coupling);
            if let Err(e) = vshs::build_extension(&m, &vshs::NormalFunctionCandidate::new(psi.clone()), 1) {
                failures.push(json!({"case": i, "error": e.to_string()}));
            }
        }
        (Status::from_bool(failures.is_empty()), json!({ "cases": cases.len(), "order": 8, "failures": failures }))
    }));
    out.push(run("vshs.residues", "nilpotent residues of both connection matrices", || {
        let c: TruncSeries<Rational> = vshs::sample_coupling(order);
        let mut ok = true;
        let mut rows = Vec::new();
        for (name, m) in [("A", vshs::ConnectionMatrix::a_model(&c)), ("B", vshs::ConnectionMatrix::b_model(&c))] {
            let r = vshs::residue_checks(&m);
            ok &= r.strictly_lower && r.nilpotent && !r.flagged;
            rows.push(json!({"model": name, "strictlyLower": r.strictly_lower, "nilpotent": r.nilpotent, "weightRanks": r.weight_ranks}));
        }
        (Status::from_bool(ok), json!({ "couplingConstantTerm": 5, "models": rows }))
    }));
    out.push(run("vshs.w1FromW0", "W1 = theta W0 keeps vanishing at 0", || {
        let w0 = TruncSeries::from_terms("z", order, [(1, rat(1, 1)), (2, rat(-3, 2))]);
        let w1 = vshs::w1_from_w0(&w0);
        let ok = w1.coeff(0).is_zero()
            && vshs::w1_from_w0(&TruncSeries::<Rational>::variable("z", order)) == TruncSeries::variable("z", order)
            && vshs::w1_from_w0(&TruncSeries::constant("z", order, rat(3, 1))).is_zero();
        (Status::from_bool(ok), json!({ "w0": vshs::rational_series_to_json(&w0), "w1": vshs::rational_series_to_json(&w1) }))
    }));
    out
}

// ---------------------------------------------------------------- dilog

pub fn dilog_suite(cfg: &Config) -> Vec<Check> {
    use std::f64::consts::PI;
    let tol = cfg.float_tolerance;
    let mut out = Vec::new();
    out.push(run("dilog.li2Values", "dilogarithm at 0, 1 and exp(i pi/3)", || {
        let l1 = dilog::li2(dilog::ComplexF::new(1.0, 0.0)).expect("unit circle");
        let l0 = dilog::li2(dilog::ComplexF::new(0.0, 0.0)).expect("origin");
        let l6 = dilog::li2(dilog::ComplexF::from_polar(1.0, PI / 3.0)).expect("unit circle");
        let ok = (l1.re - PI * PI / 6.0).abs() <= 1e-12 && l0.norm() == 0.0 && (l6.im - dilog::TETRA_REFERENCE).abs() <= tol;
        (Status::from_bool(ok), json!({ "li2At1": l1.re, "li2At0": l0.re, "imLi2AtExpIPiOver3": l6.im }))
    }));
    out.push(run("dilog.clausenIdentities", "Clausen duplication, symmetry and period", || {
        let pts = [0.4, 1.1, 2.3, 2.9];
        let odd = pts.iter().all(|&t| (dilog::clausen(-t) + dilog::clausen(t)).abs() < 1e-11);
        let per = pts.iter().all(|&t| (dilog::clausen(t + 2.0 * PI) - dilog::clausen(t)).abs() < 1e-11);
        let dup = (dilog::clausen(2.0 * PI / 3.0) - 2.0 / 3.0 * dilog::clausen(PI / 3.0)).abs() < 1e-10;
        let conj = pts.iter().all(|&t| {
            let z = dilog::ComplexF::from_polar(1.0, t);
            (dilog::li2(z.conj()).expect("circle").im + dilog::li2(z).expect("circle").im).abs() < 1e-11
        });
        (Status::from_bool(odd && per && dup && conj), json!({ "antisymmetry": odd, "periodicity": per, "duplication": dup, "conjugation": conj }))
    }));
    out.push(run("dilog.volumes", "10 and 1250 tetrahedra against the predicted 130", || {
        let r = dilog::volume_report();
        let ok = (r.tetra - dilog::TETRA_REFERENCE).abs() <= 1e-8
            && r.chain_link_multiplier == 10
            && r.cover_multiplier == 125 * r.chain_link_multiplier
            && r.mismatch;
        (Status::from_bool(ok), r.to_json())
    }));
    out.push(run("dilog.volumeSign", "sign of Im Li2(-w)", || {
        let r = dilog::volume_report();
        let status = if r.signed_im_li2_minus_omega < 0.0 { Status::Flagged } else { Status::Fail };
        (status, json!({
            "imLi2MinusOmega": r.signed_im_li2_minus_omega,
            "usedMagnitude": r.tetra,
            "note": "with w = exp(2 pi i/3), -w = exp(-i pi/3) and Im Li2(-w) is negative; volumes use its absolute value",
        }))
    }));
    out
}

/// All suites, in a fixed order. Suites run on separate threads; the
/// result order does not depend on scheduling.
pub fn run_all(cfg: &Config) -> Report {
    type Suite = fn(&Config) -> Vec<Check>;
    let suites: [Suite; 8] = [dwork_suite, tropical_suite, chainlink_suite, locsys_suite, floer_suite, bps_suite, vshs_suite, dilog_suite];
    let results: Vec<Vec<Check>> = std::thread::scope(|s| {
        let handles: Vec<_> = suites.iter().map(|f| s.spawn(move || f(cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("suite panicked")).collect()
    });
    Report { config: cfg.clone(), checks: results.into_iter().flatten().collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing() {
        let c = Config::from_json_str(r#"{"truncationOrder": 2}"#).unwrap();
        assert_eq!(c.truncation_order, 2);
        assert_eq!(c.float_tolerance, 1e-9);
        assert!(Config::from_json_str(r#"{"truncationOrder": 0}"#).is_err());
        assert!(Config::from_json_str(r#"{"bogus": 1}"#).is_err());
        assert!(Config::from_json_str("not json").is_err());
        assert!(Config::from_json_str(r#"{"floatTolerance": -1}"#).is_err());
    }

    #[test]
    fn sampled_inputs_are_stable() {
        assert_eq!(sample_epsilons(), sample_epsilons());
        assert!(sample_epsilons().iter().all(|e| *e > rat(0, 1)));
        assert_eq!(random_bps_tables(3, 12, 1), random_bps_tables(3, 12, 1));
    }
}
