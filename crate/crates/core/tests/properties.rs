use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tracelab_core::covers::{build_finite_cover, homology_f2, presentation_complex, CoverSpec};
use tracelab_core::exact::{GfPoly, GoldenScalar};
use tracelab_core::jets::{jet_eval_poly, nilpotent_square_identity, random_trace_eps_jet, DualComplex};
use tracelab_core::subgroups::Presentation;
use tracelab_core::trace::{eval_poly_complex, numeric_trace_oracle, trace_polynomial};
use tracelab_core::verdict::ExceptionalSet;
use tracelab_core::words::{parse_word, GroupWord};

fn scalar() -> impl Strategy<Value = GoldenScalar> {
    (-20i64..20, -20i64..20, 1i64..6, 1i64..6).prop_map(|(a, b, da, db)| GoldenScalar::from_fracs(a, da, b, db))
}

fn poly(max_len: usize) -> impl Strategy<Value = GfPoly> {
    prop::collection::vec(scalar(), 0..max_len).prop_map(GfPoly::new)
}

fn word(k_max: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec((1u8..=2, 1u8..=4), 1..=k_max).prop_map(|p| GroupWord::from_pairs(&p))
}

fn omega() -> impl Strategy<Value = GoldenScalar> {
    prop::sample::select(ExceptionalSet::new().values().to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn golden_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inverse().unwrap(), GoldenScalar::one());
        }
        prop_assert!(((&a * &b).to_f64() - a.to_f64() * b.to_f64()).abs() < 1e-9 * (1.0 + (a.to_f64() * b.to_f64()).abs()));
    }

    #[test]
    fn scalar_display_round_trips(a in scalar()) {
        let back: GoldenScalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn division_reconstructs(f in poly(7), g in poly(4)) {
        prop_assume!(g.degree().is_some());
        let (q, r) = f.div_rem(&g).unwrap();
        prop_assert_eq!(&(&q * &g) + &r, f);
        if let Some(dr) = r.degree() {
            prop_assert!(dr < g.degree().unwrap());
        }
    }

    #[test]
    fn multiplicity_matches_value_and_derivative(f in poly(5), alpha in omega(), extra in 0usize..3) {
        prop_assume!(f.degree().is_some());
        let lin = GfPoly::linear_factor(&alpha);
        let h = (0..extra).fold(f, |acc, _| &acc * &lin);
        let m = h.root_multiplicity(&alpha).unwrap();
        let double = h.eval(&alpha).is_zero() && h.derivative().eval(&alpha).is_zero();
        prop_assert_eq!(m >= 2, double);
        prop_assert!(m >= extra);
    }

    #[test]
    fn float_evaluation_agrees(f in poly(6), x in -3.0f64..3.0) {
        let exact = eval_poly_complex(&f, Complex64::new(x, 0.0)).re;
        let scale = f.to_f64_coeffs().iter().map(|c| c.abs()).sum::<f64>().max(1.0) * 3f64.powi(6);
        prop_assert!((f.eval_f64(x) - exact).abs() < 1e-9 * scale);
    }

    #[test]
    fn trace_is_rotation_invariant(w in word(6), by in 0usize..6) {
        let tau = trace_polynomial(&w);
        prop_assert_eq!(trace_polynomial(&w.rotate(by % w.k())), tau);
    }

    #[test]
    fn trace_degree_is_k(w in word(8)) {
        prop_assert_eq!(trace_polynomial(&w).degree(), Some(w.k()));
    }

    #[test]
    fn trace_matches_numeric_oracle(w in word(6), re in -2.0f64..2.0, im in -2.0f64..2.0, seed in any::<u64>()) {
        let l0 = Complex64::new(re, im);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Ok(num) = numeric_trace_oracle(&w, l0, 2, &mut rng) {
            let sym = eval_poly_complex(&trace_polynomial(&w), l0);
            prop_assert!((num - sym).norm() < 1e-8 * sym.norm().max(1.0));
        }
    }

    #[test]
    fn parse_is_idempotent(w in word(6)) {
        let text = w.to_string();
        let back = parse_word(&text).unwrap();
        prop_assert_eq!(&back, &w);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn jet_chain_rule(f in poly(5), g in poly(5), alpha in omega()) {
        let prod = jet_eval_poly(&(&f * &g), &alpha);
        let expect = jet_eval_poly(&f, &alpha) * jet_eval_poly(&g, &alpha);
        let scale = prod.value.norm().max(prod.slope.norm()).max(1.0);
        prop_assert!(prod.dist(expect) < 1e-9 * scale);
    }

    #[test]
    fn jet_slope_is_derivative(w in word(8), alpha in omega()) {
        let tau = trace_polynomial(&w);
        let j = jet_eval_poly(&tau, &alpha);
        let expect = DualComplex::new(
            Complex64::new(tau.eval(&alpha).to_f64(), 0.0),
            Complex64::new(tau.derivative().eval(&alpha).to_f64(), 0.0),
        );
        prop_assert!(j.dist(expect) < 1e-9 * expect.value.norm().max(expect.slope.norm()).max(1.0));
    }

    #[test]
    fn nilpotent_square_holds(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert!(nilpotent_square_identity(&random_trace_eps_jet(&mut rng)).is_ok());
    }

    #[test]
    fn cover_euler_characteristic_multiplies(n in 1u64..6, a in 0u64..6, b in 0u64..6, c in 0u64..6, d in 0u64..6) {
        let genus2 = Presentation::new(4, vec![vec![1, 2, -1, -2, 3, 4, -3, -4]]);
        let k = presentation_complex(&genus2);
        let spec = CoverSpec { n, assignment: vec![(a % n, b % n), (c % n, d % n), (b % n, a % n), (0, c % n)] };
        let cover = build_finite_cover(&k, &spec).unwrap();
        prop_assert_eq!(cover.complex.euler_characteristic(), (n * n) as i64 * k.euler_characteristic());
        prop_assert!(cover.complex.chain_complex().boundary_squared_vanishes());
        let h = homology_f2(&cover.complex);
        prop_assert_eq!(h.h0 as i64 - h.h1 as i64 + h.h2 as i64, cover.complex.euler_characteristic());
        prop_assert!(cover.deck_commutes(0, 0, (1 % n, 0)));
    }
}
