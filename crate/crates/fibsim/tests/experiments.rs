//! End-to-end verification of every built-in experiment.

use fibsim::protocols::{Experiment, ExperimentKind};
use fibsim::sim::sample_counts;
use fibsim::Experiment64;

fn verified(name: &str) -> fibsim::ExperimentReport64 {
    let exp = Experiment64::by_name(name).expect("known experiment");
    let report = exp.verify(1e-9).expect("verification runs");
    for (stage, fid) in &report.stage_fidelities {
        assert!(
            *fid >= 1.0 - 1e-10,
            "{name}: stage {stage} fidelity {fid} too low"
        );
    }
    for c in &report.checks {
        assert!(
            c.passed,
            "{name}: check {} value {} expected {} (tol {})",
            c.name, c.value, c.expected, c.tolerance
        );
    }
    assert!(report.passed);
    report
}

#[test]
fn all_experiments_verify() {
    for name in Experiment::<f64>::all_names() {
        verified(name);
    }
}

#[test]
fn unknown_experiment_name_is_rejected() {
    assert!(Experiment64::by_name("no-such-experiment").is_err());
}

#[test]
fn theta_fusion_channel_statistics() {
    let report = verified("theta-fusion");
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let p0 = report
        .checks
        .iter()
        .find(|c| c.name == "channel_prob_trivial")
        .unwrap();
    assert!((p0.value - 1.0 / phi.powi(2)).abs() < 1e-12);
    let p1 = report
        .checks
        .iter()
        .find(|c| c.name == "channel_prob_tau")
        .unwrap();
    assert!((p1.value - 1.0 / phi).abs() < 1e-12);
}

#[test]
fn braiding_reports_minus_three_fifths_pi() {
    let report = verified("braiding");
    let ph = report
        .checks
        .iter()
        .find(|c| c.name == "relative_phase")
        .unwrap();
    assert!((ph.value + 3.0 * std::f64::consts::PI / 5.0).abs() < 1e-12);
}

#[test]
fn twist_reports_plus_four_fifths_pi() {
    let report = verified("twist");
    let ph = report
        .checks
        .iter()
        .find(|c| c.name == "kickback_phase")
        .unwrap();
    assert!((ph.value - 4.0 * std::f64::consts::PI / 5.0).abs() < 1e-12);
}

#[test]
fn braiding_records_cancelled_move_pair() {
    let exp = Experiment64::by_name("braiding").unwrap();
    let cancelled: Vec<_> = exp
        .circuit
        .ops
        .iter()
        .filter(|op| op.cancelled)
        .collect();
    assert_eq!(cancelled.len(), 2);
    for op in cancelled {
        assert_eq!(op.name, "fmove");
    }
}

#[test]
fn twist_has_one_controlled_tail_exchange() {
    let exp = Experiment64::by_name("twist").unwrap();
    let swaps: Vec<_> = exp
        .circuit
        .ops
        .iter()
        .filter(|op| op.variant.as_deref() == Some("tail-swap-four-input"))
        .collect();
    assert_eq!(swaps.len(), 1);
    assert_eq!(swaps[0].controls, vec![0]);
}

#[test]
fn sampling_matches_golden_ratio_statistics() {
    let exp = Experiment64::by_name("theta-fusion").unwrap();
    let final_state = exp.run().unwrap();
    // Sample the channel qubit before the filter: rerun up to psi3.
    let (stages, _) = exp.stage_states().unwrap();
    let psi3 = &stages["psi3"];
    let shots = 100_000u64;
    let counts = sample_counts(psi3, &exp.sample_qubits, shots, 42).unwrap();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let p1 = 1.0 / phi;
    let got = counts.get("1").copied().unwrap_or(0) as f64 / shots as f64;
    let sigma = (p1 * (1.0 - p1) / shots as f64).sqrt();
    assert!((got - p1).abs() < 3.0 * sigma, "got {got}, want {p1} +/- 3 sigma");
    // After the filter the outcome is deterministic.
    let counts = sample_counts(&final_state, &exp.sample_qubits, 1000, 7).unwrap();
    assert_eq!(counts.get("0").copied().unwrap_or(0), 1000);
}

#[test]
fn experiment_kinds_are_exposed() {
    let exp = Experiment64::by_name("ground-state:theta").unwrap();
    assert!(matches!(exp.kind, ExperimentKind::GroundState(_)));
    assert_eq!(exp.n_qubits, 3);
}
