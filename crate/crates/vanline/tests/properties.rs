use num_traits::{One, Zero};
use proptest::prelude::*;

use vanline::arith::{rat, Field, IntMatrix, QuadElem, Rational, TowerElem, TruncSeries};
use vanline::{bps, dilog, tropical, vshs};

fn small_rat() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| rat(p, q))
}

fn quad() -> impl Strategy<Value = QuadElem> {
    (small_rat(), small_rat()).prop_map(|(a, b)| QuadElem::new(a, b))
}

fn tower() -> impl Strategy<Value = TowerElem> {
    proptest::array::uniform5((-6i64..=6, -6i64..=6)).prop_map(|c| TowerElem::from_coeffs(c.map(|(a, b)| QuadElem::from_omega(rat(a, 1), rat(b, 1))), rat(27, 1)))
}

fn series(order: usize) -> impl Strategy<Value = TruncSeries<Rational>> {
    proptest::collection::vec(small_rat(), order + 1).prop_map(move |c| TruncSeries::from_coeffs("Q", order, c))
}

fn int_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r)).prop_map(|rows| IntMatrix::from_rows(&rows))
}

fn bps_table() -> impl Strategy<Value = (u64, bps::BpsTable)> {
    (1u64..=12).prop_flat_map(|n| (Just(n), proptest::collection::btree_map(1..=n, quad(), 0..=n as usize)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quad_field_axioms(x in quad(), y in quad(), z in quad()) {
        prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
        prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
        prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
        if !x.is_zero() {
            prop_assert_eq!(x.try_inv().unwrap() * x.clone(), QuadElem::one());
        }
        prop_assert_eq!(x.norm(), (x.clone() * x.conj()).a);
    }

    #[test]
    fn quad_display_parses_back(x in quad()) {
        prop_assert_eq!(QuadElem::parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn tower_inverse_and_pretty(x in tower(), y in tower()) {
        prop_assert_eq!(TowerElem::parse(&x.pretty(), &rat(27, 1)).unwrap(), x.clone());
        prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
        if !x.is_zero() {
            prop_assert_eq!(x.try_inv().unwrap() * x.clone(), TowerElem::one());
        }
        // conjugation is a field automorphism
        prop_assert_eq!((x.clone() * y.clone()).conj_omega(), x.conj_omega() * y.conj_omega());
    }

    #[test]
    fn smith_form_rank_agrees(m in int_matrix()) {
        let snf = m.snf();
        let inv = snf.invariant_factors();
        prop_assert_eq!(snf.rank(), m.rank_bareiss());
        prop_assert_eq!(m.rank(), m.transpose().rank());
        for w in inv.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(m.rank_mod(7) <= m.rank());
    }

    #[test]
    fn series_ring_laws(f in series(6), g in series(6), h in series(6)) {
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        // Leibniz rule for theta = Q d/dQ
        prop_assert_eq!(f.mul(&g).theta(), f.theta().mul(&g).add(&f.mul(&g.theta())));
    }

    #[test]
    fn connection_leibniz(coupling in series(5), f in series(5), v0 in series(5), v1 in series(5), v2 in series(5), v3 in series(5)) {
        let m = vshs::ConnectionMatrix::a_model(&coupling);
        let v = [v0, v1, v2, v3];
        let fv: vshs::Vector<Rational> = std::array::from_fn(|i| f.mul(&v[i]));
        let lhs = vshs::apply_connection(&m, &fv);
        let nv = vshs::apply_connection(&m, &v);
        for i in 0..4 {
            prop_assert_eq!(&lhs[i], &f.theta().mul(&v[i]).add(&f.mul(&nv[i])));
        }
    }

    #[test]
    fn bps_round_trip((n, t) in bps_table()) {
        prop_assert_eq!(bps::invert(&bps::expand(&t, n), n), t.clone());
        prop_assert_eq!(bps::expand(&bps::invert(&t, n), n), t);
    }

    #[test]
    fn clausen_symmetries(t in -10.0f64..10.0) {
        use std::f64::consts::PI;
        prop_assert!((dilog::clausen(-t) + dilog::clausen(t)).abs() < 1e-11);
        prop_assert!((dilog::clausen(t + 2.0 * PI) - dilog::clausen(t)).abs() < 1e-10);
        let z = dilog::ComplexF::from_polar(1.0, t);
        prop_assert!((dilog::li2(z).unwrap().im - dilog::clausen(t)).abs() < 1e-11);
    }

    #[test]
    fn li2_conjugate_symmetry(r in 0.0f64..0.999, t in -3.1f64..3.1) {
        let z = dilog::ComplexF::from_polar(r, t);
        let (a, b) = (dilog::li2(z).unwrap(), dilog::li2(z.conj()).unwrap());
        prop_assert!((a.conj() - b).norm() < 1e-12);
    }

    #[test]
    fn smoothings_balanced(i in 1usize..=3, p in 1i64..500, q in 1i64..500) {
        let c = tropical::make_v_smoothed(i, &rat(p, q)).unwrap();
        prop_assert!(tropical::check_balancing(&c));
        prop_assert_eq!(c.bounded_lengths(), vec![rat(p, q)]);
    }

    #[test]
    fn transversality_iff_horizontal(coupling in series(8), psi in series(8), bump in series(8)) {
        let m = vshs::ConnectionMatrix::a_model(&coupling);
        let nf = vshs::NormalFunctionCandidate::new(psi.clone());
        prop_assert!(vshs::horizontality_check(&m, &nf).horizontal);
        prop_assert!(vshs::build_extension(&m, &nf, 1).is_ok());
        // a nonconstant e2 component spoils horizontality and the extension
        let mut nu = nf.nu.clone();
        nu[1] = bump.clone();
        let bad = vshs::NormalFunctionCandidate::with_section(psi, nu);
        let nonconstant = bump.coeffs().iter().skip(1).any(|c| !c.is_zero());
        if nonconstant {
            prop_assert!(!vshs::horizontality_check(&m, &bad).horizontal);
            prop_assert!(vshs::build_extension(&m, &bad, 1).is_err());
        }
    }
}
