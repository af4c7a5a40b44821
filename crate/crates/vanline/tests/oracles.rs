// Frozen values computed independently (by hand or with a CAS) and pinned.

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::json;

use vanline::arith::{rat, IntMatrix, QuadElem, Rational, TowerElem};
use vanline::{bps, chainlink, dilog, dwork, floer, locsys, tropical};

fn s3(num: &str, den: i64) -> QuadElem {
    QuadElem::new(Rational::zero(), Rational::new(num.parse::<BigInt>().unwrap(), den.into()))
}

#[test]
fn bps_inverted_values() {
    let c = bps::check_paper_values(4);
    assert_eq!(c.n[&1], s3("280000", 1));
    assert_eq!(c.n[&2], s3("22296410000", 3));
    assert_eq!(c.n[&3], s3("10031895589000000", 27));
    assert_eq!(c.n[&4], s3("660275805921911450000", 27));
}

#[test]
fn bps_table_json_shape() {
    let v = bps::table_to_json(&bps::check_paper_values(2).n);
    assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"1":[280000,1],"2":[22296410000,3]}"#);
}

#[test]
fn l_function_value() {
    let (v, _) = bps::dirichlet_l2(1e-12);
    assert!((v - 0.781_302_412_896_486_3).abs() < 1e-11);
}

#[test]
fn tetrahedron_and_volumes() {
    let r = dilog::volume_report();
    assert!((r.tetra - 1.014_941_606_409_653_6).abs() < 1e-15);
    assert!((r.cover125 - 1_268.677_008_012_066_6).abs() < 1e-9);
    assert!((r.jmw_prediction - 131.942_408_833_254_9).abs() < 1e-9);
}

#[test]
fn longitude_smith_form() {
    let l = chainlink::longitude_matrix();
    let inv: Vec<String> = l.snf().invariant_factors().iter().map(|x| x.to_string()).collect();
    assert_eq!(inv, ["1", "1", "1", "1", "2"]);
    assert_eq!(l.rank_mod(2), 4);
    assert_eq!(chainlink::torus_map().rank(), 3);
}

#[test]
fn smith_form_small_cases() {
    let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let inv: Vec<String> = m.snf().invariant_factors().iter().map(|x| x.to_string()).collect();
    assert_eq!(inv, ["2", "6", "12"]);
    let (tors, free) = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]).cokernel();
    assert_eq!(tors, vec![BigInt::from(6)]);
    assert_eq!(free, 0);
}

#[test]
fn genus_examples() {
    assert_eq!(locsys::riemann_hurwitz_genus(25, 3, &vec![vec![5; 5]; 3]).unwrap(), 6);
    assert_eq!(locsys::riemann_hurwitz_genus(1, 3, &[vec![1], vec![1], vec![1]]).unwrap(), 0);
    assert_eq!(locsys::riemann_hurwitz_genus(5, 3, &[vec![5], vec![5], vec![1; 5]]).unwrap(), 0);
    assert!(locsys::riemann_hurwitz_genus(5, 3, &[vec![5], vec![4], vec![5]]).is_err());
}

#[test]
fn van_geemen_tuple_entries() {
    let h = locsys::van_geemen_tuple(locsys::CubeRoot::Omega, &TowerElem::a27()).unwrap();
    assert_eq!(h.mu[0], TowerElem::omega());
    assert_eq!(h.mu[1], -TowerElem::omega());
    assert_eq!(h.lambda[2], -TowerElem::omega2());
    assert_eq!(h.lambda[4], TowerElem::omega());
    // (1 - w)^5 = 9 (w^2 - 1)
    let one_minus_w = TowerElem::from(QuadElem::from_rational(rat(1, 1)) - QuadElem::omega());
    assert_eq!(vanline::arith::Field::pow(&one_minus_w, 5), TowerElem::from(QuadElem::omega2() - QuadElem::from_rational(rat(1, 1))).scale_rat(&rat(9, 1)));
}

#[test]
fn floer_embedded_data() {
    let r = floer::verify(&floer::IncidenceData::embedded()).unwrap();
    assert_eq!(r.stored_ranks(), [10, 8, 4]);
    assert_eq!(r.cohomology.window(-1, 4), [1, 3, 4, 4, 3, 1]);
    assert_eq!(r.euler_e2, 0);
}

#[test]
fn smoothed_curve_json() {
    let c = tropical::make_v_smoothed(1, &rat(1, 1)).unwrap();
    assert_eq!(
        c.to_json(),
        json!({
            "vertices": [[0, "1/2", "1/2"], [0, "-1/2", "-1/2"]],
            "edges": [
                {"from": 0, "to": 1, "weight": 1},
                {"from": 0, "rayDir": [0, 1, 0], "weight": 1},
                {"from": 0, "rayDir": [0, 0, 1], "weight": 1},
                {"from": 1, "rayDir": [1, 0, 0], "weight": 1},
                {"from": 1, "rayDir": [-1, -1, -1], "weight": 1},
            ]
        })
    );
    assert_eq!(tropical::TropCurve::from_json(&c.to_json()).unwrap(), c);
}

#[test]
fn orbit_counts() {
    let p = dwork::DworkParams::with_rational_a(QuadElem::omega(), rat(1, 1)).unwrap();
    let o = dwork::orbit_sizes(&dwork::build_van_geemen_line(&p).unwrap());
    assert_eq!((o.g5_orbit, o.s5_orbit, o.s5_stabilizer, o.lower_bound), (125, 40, 3, 5000));
}
