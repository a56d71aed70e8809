use num_complex::Complex64;
use proptest::prelude::*;

use qca_lab::ca::{catalog, Alphabet, Config, Region, Rule};
use qca_lab::quantum::{
    inner_product, pure_density, reduce, trace_distance, Quantization, QuantumError, Superposition,
};

fn rules() -> Vec<Rule> {
    vec![
        catalog::xor(),
        catalog::identity(),
        catalog::shift(),
        catalog::negated_shift(),
        catalog::elementary(30),
    ]
}

fn config(k: u8) -> impl Strategy<Value = Config> {
    (-5i64..5, prop::collection::vec(0..k, 0..8)).prop_map(|(o, w)| Config::new(o, w))
}

fn state(k: u8) -> impl Strategy<Value = Superposition> {
    prop::collection::vec((config(k), -1.0f64..1.0, -1.0f64..1.0), 1..6)
        .prop_map(|terms| Superposition::from_pairs(terms.into_iter().map(|(c, re, im)| (c, Complex64::new(re, im)))))
        .prop_filter("nonzero", |s| s.norm_sqr() > 1e-6)
        .prop_map(|s| s.normalized().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quantization_preserves_inner_products(i in 0usize..5, s1 in state(2), s2 in state(2)) {
        let rule = &rules()[i];
        if rule.alphabet().len() != 2 {
            return Ok(());
        }
        let q = Quantization::new(rule).unwrap();
        let a = q.apply_f(&s1).state;
        let b = q.apply_f(&s2).state;
        prop_assert!((inner_product(&a, &b) - inner_product(&s1, &s2)).norm() <= 1e-12);
    }

    #[test]
    fn adjoint_is_a_left_inverse(s in state(3)) {
        let rule = catalog::negated_shift();
        let q = Quantization::new(&rule).unwrap();
        let back = q.apply_f_dagger(&q.apply_f(&s).state).unwrap();
        prop_assert!(back.max_abs_diff(&s) <= 1e-12);
    }

    /// `⟨F u, v⟩ = ⟨u, F† v⟩` for an open rule.
    #[test]
    fn adjoint_duality(u in state(2), v in state(2)) {
        let q = Quantization::new(&catalog::xor()).unwrap();
        let lhs = inner_product(&q.apply_f(&u).state, &v);
        let rhs = match q.apply_f_dagger(&v) {
            Ok(w) => inner_product(&u, &w),
            Err(QuantumError::ZeroVector) => Complex64::new(0.0, 0.0),
            Err(e) => panic!("{e}"),
        };
        prop_assert!((lhs - rhs).norm() <= 1e-12);
    }

    #[test]
    fn step_commutes_with_translation(i in 0usize..5, x in config(2), d in -6i64..6) {
        let rule = &rules()[i];
        let k = rule.alphabet().len() as u8;
        let x = Config::new(x.offset(), x.word().iter().map(|s| s % k).collect());
        prop_assert_eq!(rule.step(&x.shift(d)), rule.step(&x).shift(d));
    }

    #[test]
    fn reductions_are_states(s in state(2), cells in prop::collection::btree_set(-6i64..6, 1..5)) {
        let rho = pure_density(&s).unwrap();
        let a = Alphabet::binary();
        let region = Region::new(cells.iter().copied());
        let m = reduce(&rho, &region, &a).unwrap();
        prop_assert!((m.trace() - 1.0).norm() <= 1e-9);
        prop_assert!(m.is_hermitian(1e-12));
        prop_assert!(m.min_eigenvalue() >= -1e-9);
        let first = Region::single(region.cells()[0]);
        let nested = m.restrict(&first).unwrap();
        let direct = reduce(&rho, &first, &a).unwrap();
        prop_assert!(nested.frobenius_distance(&direct).unwrap() <= 1e-12);
        prop_assert!(trace_distance(&nested, &direct).unwrap() <= 1e-9);
    }
}
