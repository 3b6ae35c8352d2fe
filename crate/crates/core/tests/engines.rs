mod common;

use std::time::Duration;

use common::{instance, lead_ideal, toy};
use mogvw::generate::gen_random_square;
use mogvw::oracle::{buchberger, reduce_basis, verify_gb, OracleConfig};
use mogvw::*;

fn shown(ring: &Ring, basis: &[Polynomial]) -> Vec<String> {
    basis.iter().map(|f| f.display(ring)).collect()
}

#[test]
fn toy_through_both_engines() {
    let s = toy();
    let step = run_step_engine(&s.ring, &s.polys, &StepConfig::default()).unwrap();
    let matrix = run_matrix_engine(&s.ring, &s.polys, &MatrixConfig::default()).unwrap();
    let expect = ["a*b - c", "b*c - b", "c^2 - c", "c - 1"];
    assert_eq!(shown(&s.ring, &step.basis), expect);
    assert_eq!(shown(&s.ring, &matrix.basis), expect);
    assert_eq!(shown(&s.ring, &reduce_basis(&s.ring, step.basis.clone())), ["a*b - 1", "c - 1"]);
}

#[test]
fn basis_is_monic_and_sorted() {
    for k in 0..30 {
        let s = instance(k);
        let out = run_matrix_engine(&s.ring, &s.polys, &MatrixConfig::default()).unwrap();
        assert!(out.basis.iter().all(|f| f.lc() == 1), "instance {k}");
        assert!(out.basis.windows(2).all(|w| w[0].lm() > w[1].lm()), "instance {k}");
    }
}

// Without the LCM and Rewritten criteria the step engine used to mint a
// fresh generator for a result whose key and signature were already those
// of a pending lift, and the lift degree grew without bound.
#[test]
fn unpruned_runs_terminate() {
    for k in [11, 12, 41] {
        let s = instance(k);
        let reference = lead_ideal(&buchberger(&s.ring, &s.polys, OracleConfig::default()).polys);
        for mask in [0u8, 2, 4, 6] {
            let cfg = StepConfig {
                criteria: Criteria::from_mask(mask),
                deadline: Deadline::after(Duration::from_secs(10)),
                ..Default::default()
            };
            let out = run_step_engine(&s.ring, &s.polys, &cfg).unwrap();
            assert_eq!(lead_ideal(&out.basis), reference, "instance {k} mask {mask}");
        }
    }
}

#[test]
fn no_criteria_at_all() {
    let s = toy();
    let cfg = StepConfig {
        criteria: Criteria::none(),
        ..Default::default()
    };
    let out = run_step_engine(&s.ring, &s.polys, &cfg).unwrap();
    assert!(verify_gb(&s.ring, &out.basis, &s.polys, OracleConfig::default()).passed());
    assert_eq!(out.stats.rejected_lcm + out.stats.rejected_rewritten, 0);
}

#[test]
fn matrix_stats_per_loop() {
    let s = gen_random_square(6, 7);
    let out = run_matrix_engine(&s.ring, &s.polys, &MatrixConfig::default()).unwrap();
    assert!(!out.matrices.is_empty());
    assert!(out.matrices.windows(2).all(|w| w[0].loop_no < w[1].loop_no));
    assert!(out.matrices.last().unwrap().loop_no <= out.stats.loops);
    for m in &out.matrices {
        assert!(m.zero_rows + m.new_pivots <= m.rows);
    }
    assert!(out.matrices.windows(2).all(|w| w[0].mindeg <= w[1].mindeg || out.stats.extensions > 0));
}

#[test]
fn sequential_and_parallel_agree() {
    for n in 3..=8 {
        let s = gen_random_square(n, n as u64);
        let run = |parallel| {
            let cfg = MatrixConfig {
                parallel,
                ..Default::default()
            };
            run_matrix_engine(&s.ring, &s.polys, &cfg).unwrap().basis
        };
        assert_eq!(run(false), run(true), "n = {n}");
    }
}

#[test]
fn deadlines_stop_both_engines() {
    let s = gen_random_square(14, 1);
    let expired = Deadline::after(Duration::ZERO);
    let step = StepConfig {
        deadline: expired,
        ..Default::default()
    };
    let matrix = MatrixConfig {
        deadline: expired,
        ..Default::default()
    };
    assert_eq!(run_step_engine(&s.ring, &s.polys, &step).unwrap_err(), EngineError::Timeout);
    assert_eq!(run_matrix_engine(&s.ring, &s.polys, &matrix).unwrap_err(), EngineError::Timeout);
}

#[test]
fn zero_inputs_give_an_empty_basis() {
    let s = toy();
    let zeros = vec![Polynomial::zero(), Polynomial::zero()];
    assert!(run_step_engine(&s.ring, &zeros, &StepConfig::default()).unwrap().basis.is_empty());
    assert!(run_matrix_engine(&s.ring, &zeros, &MatrixConfig::default()).unwrap().basis.is_empty());
    assert_eq!(run_matrix_engine(&s.ring, &[], &MatrixConfig::default()).unwrap_err(), EngineError::EmptyInput);
}

#[test]
fn unit_ideal() {
    let s = mogvw::io::parse_system("field 7\nvars x y\npoly x*y - 1\npoly x\n").unwrap();
    for basis in [
        run_step_engine(&s.ring, &s.polys, &StepConfig::default()).unwrap().basis,
        run_matrix_engine(&s.ring, &s.polys, &MatrixConfig::default()).unwrap().basis,
    ] {
        assert_eq!(shown(&s.ring, &reduce_basis(&s.ring, basis)), ["1"]);
    }
}

#[test]
fn square_system_engines_agree() {
    let s = gen_random_square(8, 7);
    let step = run_step_engine(&s.ring, &s.polys, &StepConfig::default()).unwrap();
    let matrix = run_matrix_engine(&s.ring, &s.polys, &MatrixConfig::default()).unwrap();
    assert_eq!(lead_ideal(&step.basis), lead_ideal(&matrix.basis));
    assert!(verify_gb(&s.ring, &matrix.basis, &s.polys, OracleConfig::default()).passed());
}
