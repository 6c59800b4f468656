mod common;

use common::*;
use lampwalk::boundary::support_contained;
use lampwalk::walk::{presets, project_measure, reflect_measure, run_walk, StepMeasure, WalkRng};
use lampwalk::{LampElement, Rational};
use proptest::prelude::*;

/// Random finitely supported measures with weights w_i / Σ w.
fn measure() -> impl Strategy<Value = StepMeasure> {
    prop::collection::vec((lamp_element(f2(), 2, 2, 2), 1i64..6), 1..6).prop_map(|atoms| {
        let total: i64 = atoms.iter().map(|(_, w)| w).sum();
        let atoms = atoms.into_iter().map(|(a, w)| (a, Rational::new(w, total))).collect();
        StepMeasure::new_degenerate(f2(), 2, atoms).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflection_is_an_involution(mu in measure()) {
        prop_assert_eq!(reflect_measure(&reflect_measure(&mu)), mu);
    }

    #[test]
    fn projection_commutes_with_reflection(mu in measure()) {
        prop_assert_eq!(project_measure(&reflect_measure(&mu)), project_measure(&mu).reflect());
        prop_assert_eq!(project_measure(&mu).total(), Rational::from_integer(1));
    }

    #[test]
    fn replay_reproduces_terminal_state(mu in measure(), seed in any::<u64>(), idx in 0u64..1000) {
        let traj = run_walk(&mu, 200, seed, idx);
        prop_assert_eq!(&traj.replay().unwrap(), traj.final_state());
        prop_assert_eq!(&run_walk(&mu, 200, seed, idx), &traj);
        prop_assert!(support_contained(&traj).unwrap());
        for events in traj.lamp_events().values() {
            prop_assert!(events.windows(2).all(|w| w[0].time < w[1].time));
        }
        let xs = traj.positions();
        prop_assert!(xs[0].is_identity());
        prop_assert_eq!(xs.last().unwrap(), traj.final_position());
    }
}

#[test]
fn empirical_step_frequencies_within_three_sigma() {
    let a = |s: &str| LampElement::travel(lampwalk::BaseElement::Free(s.parse().unwrap()), 2);
    let atoms = vec![
        (a("a"), Rational::new(1, 2)),
        (a("A"), Rational::new(1, 6)),
        (a("b"), Rational::new(1, 7)),
        (a("B"), Rational::new(1, 7)),
        (a("ab"), Rational::new(1, 21)),
    ];
    let mu = StepMeasure::new_degenerate(f2(), 2, atoms).unwrap();
    let draws = 100_000u64;
    let mut counts = vec![0u64; mu.atoms().len()];
    let mut rng = WalkRng::new(2024, 0);
    for _ in 0..draws {
        counts[mu.sample_index(rng.next_u64())] += 1;
    }
    let mut chi2 = 0.0;
    for (count, p) in counts.iter().zip(mu.probabilities()) {
        let p = *p.numer() as f64 / *p.denom() as f64;
        let expect = p * draws as f64;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        assert!((*count as f64 - expect).abs() <= 3.0 * sigma, "{count} vs {expect}");
        chi2 += (*count as f64 - expect).powi(2) / expect;
    }
    // 4 degrees of freedom: P(χ² > 18.47) = 0.001
    assert!(chi2 < 18.47, "chi2 = {chi2}");
}

#[test]
fn preset_walks_are_reproducible_across_batches() {
    let mu = presets::srw_lamp(f2(), 2).unwrap();
    let cfg = lampwalk::WalkConfig::new(500, 8, 11).unwrap();
    let a = lampwalk::walk::batch_trajectories(&mu, &cfg);
    let b: Vec<_> = (0..8).map(|i| run_walk(&mu, 500, 11, i)).collect();
    assert_eq!(a, b);
}
