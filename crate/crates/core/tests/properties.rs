mod common;

use proptest::prelude::*;

use common::lead_ideal;
use mogvw::generate::{random_system, with_field_equations, RandomSpec};
use mogvw::io::{format_polys, parse_polys, parse_system, serialize_system};
use mogvw::oracle::{buchberger, normal_form, OracleConfig};
use mogvw::*;

fn system() -> impl Strategy<Value = mogvw::io::System> {
    (
        prop_oneof![Just((2u32, false)), Just((3, false)), Just((5, false)), Just((7, false)), Just((2, true))],
        2usize..=4,
        1usize..=4,
        1u32..=3,
        any::<u64>(),
    )
        .prop_map(|((field, boolean), nvars, npolys, max_degree, seed)| {
            let spec = RandomSpec {
                field,
                nvars,
                npolys,
                max_degree,
                max_terms: 4,
                boolean,
            };
            random_system(&spec, seed)
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn serialize_then_parse_is_identity(s in system()) {
        let text = serialize_system(&s.ring, &s.polys);
        let back = parse_system(&text).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(serialize_system(&back.ring, &back.polys), text);
        let listed = parse_polys(&s.ring, &format_polys(&s.ring, &s.polys)).unwrap();
        prop_assert_eq!(listed, s.polys);
    }

    #[test]
    fn engines_match_the_oracle(s in system()) {
        let reference = lead_ideal(&buchberger(&s.ring, &s.polys, OracleConfig::default()).polys);
        let step = run_step_engine(&s.ring, &s.polys, &StepConfig::default()).unwrap();
        let matrix = run_matrix_engine(&s.ring, &s.polys, &MatrixConfig::default()).unwrap();
        prop_assert_eq!(lead_ideal(&step.basis), reference.clone());
        prop_assert_eq!(lead_ideal(&matrix.basis), reference);
        for f in &s.polys {
            prop_assert!(normal_form(&s.ring, f, &matrix.basis).is_zero());
        }
    }

    #[test]
    fn every_criteria_mask_gives_the_same_leads(s in system(), mask in 0u8..16) {
        let reference = lead_ideal(&run_matrix_engine(&s.ring, &s.polys, &MatrixConfig::default()).unwrap().basis);
        let criteria = Criteria::from_mask(mask);
        let step = run_step_engine(&s.ring, &s.polys, &StepConfig { criteria, ..Default::default() }).unwrap();
        let matrix = run_matrix_engine(&s.ring, &s.polys, &MatrixConfig { criteria, ..Default::default() }).unwrap();
        prop_assert_eq!(lead_ideal(&step.basis), reference.clone());
        prop_assert_eq!(lead_ideal(&matrix.basis), reference);
    }

    #[test]
    fn boolean_basis_is_the_squarefree_part(s in system().prop_filter("boolean", |s| s.ring.is_boolean())) {
        let quotient = run_matrix_engine(&s.ring, &s.polys, &MatrixConfig::default()).unwrap();
        let fe = with_field_equations(&s);
        let ordinary = run_matrix_engine(&fe.ring, &fe.polys, &MatrixConfig::default()).unwrap();
        let squarefree: Vec<Monomial> =
            lead_ideal(&ordinary.basis).into_iter().filter(|m| m.is_squarefree()).collect();
        prop_assert_eq!(lead_ideal(&quotient.basis), squarefree);
    }

    #[test]
    fn invariants_hold_during_runs(s in system()) {
        let step = run_step_engine(&s.ring, &s.polys, &StepConfig { check_invariants: true, ..Default::default() }).unwrap();
        prop_assert!(step.violations.is_empty(), "{:?}", step.violations);
        let matrix = run_matrix_engine(&s.ring, &s.polys, &MatrixConfig { check_invariants: true, ..Default::default() }).unwrap();
        prop_assert!(matrix.violations.is_empty(), "{:?}", matrix.violations);
    }
}
