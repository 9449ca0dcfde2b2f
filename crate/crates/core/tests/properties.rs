use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use distrustful::adversaries::{
    alice_control, bob_gain, AliceCheatStrategy, AncillaMeasurement, BobCheatStrategy,
};
use distrustful::analysis::{
    control_for_parameters, gain_objective, ns_vertices, security_vs_chsh,
};
use distrustful::adversaries::DeterministicAliceReport;
use distrustful::behaviors::{
    apply_noise, from_quantum, ghz_satisfaction, ghz_table, NoiseModel,
};
use distrustful::protocol::RevealMessage;
use distrustful::quantum::{joint_probability, BlochDirection, Setting, StateVector};
use distrustful::{Bit, TSIRELSON_WIN_PROBABILITY};

fn state_strategy(qubits: usize) -> impl Strategy<Value = StateVector> + Clone {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << qubits).prop_filter_map(
        "non-zero vector",
        |v| {
            let amps = v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
            StateVector::normalized(amps).ok()
        },
    )
}

fn direction() -> impl Strategy<Value = BlochDirection> + Clone {
    (0.0f64..PI, 0.0f64..TAU).prop_map(|(t, f)| BlochDirection::from_angles(t, f))
}

fn bit() -> impl Strategy<Value = Bit> + Clone {
    any::<bool>().prop_map(Bit::new)
}

fn pair<T: std::fmt::Debug + Clone>(s: impl Strategy<Value = T> + Clone) -> impl Strategy<Value = [T; 2]> + Clone {
    (s.clone(), s).prop_map(|(a, b)| [a, b])
}

fn alice_strategy() -> impl Strategy<Value = AliceCheatStrategy> + Clone {
    let reveal = (bit(), bit()).prop_map(|(s_a, r_a)| RevealMessage { s_a, r_a });
    (
        state_strategy(3),
        direction(),
        pair(pair(direction())),
        pair(bit()),
        pair(pair(reveal)),
    )
        .prop_map(|(s, m, boxes, commit, reveal)| {
            AliceCheatStrategy::new(s, m, boxes, commit, reveal).unwrap()
        })
}

fn ancilla_measurement() -> impl Strategy<Value = AncillaMeasurement> + Clone {
    (0usize..4, direction(), direction(), prop::collection::vec(bit(), 4)).prop_map(
        |(mask, d1, d2, map)| {
            let mut settings = Vec::new();
            if mask & 1 == 1 {
                settings.push((1, d1));
            }
            if mask & 2 == 2 {
                settings.push((2, d2));
            }
            let k = settings.len();
            AncillaMeasurement {
                settings,
                result_map: map[..1 << k].to_vec(),
            }
        },
    )
}

fn bob_strategy() -> impl Strategy<Value = BobCheatStrategy> + Clone {
    (
        state_strategy(3),
        pair(direction()),
        pair(ancilla_measurement()),
        pair(pair(bit())),
    )
        .prop_map(|(s, a, m, g)| BobCheatStrategy::new(s, a, m, g).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn probabilities_are_distributions(state in state_strategy(3), dirs in prop::collection::vec(direction(), 3)) {
        let mut total = 0.0;
        for o in 0..8usize {
            let settings: Vec<Setting> = (0..3)
                .map(|q| Setting::new(q, dirs[q], Bit::new((o >> (2 - q)) & 1 == 1)))
                .collect();
            let p = joint_probability(&state, &settings).unwrap();
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&p));
            total += p;
        }
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn collapse_is_consistent(state in state_strategy(3), q in 0usize..3, d in direction(), o in bit()) {
        let p = joint_probability(&state, &[Setting::new(q, d, o)]).unwrap();
        match state.project(q, &d, o) {
            Ok((pp, post)) => {
                prop_assert!((pp - p).abs() < 1e-12);
                prop_assert!((post.norm_sqr() - 1.0).abs() < 1e-12);
                let again = joint_probability(&post, &[Setting::new(q, d, o)]).unwrap();
                prop_assert!((again - 1.0).abs() < 1e-9);
            }
            Err(_) => prop_assert!(p < 1e-12),
        }
    }

    #[test]
    fn global_phase_is_invisible(state in state_strategy(3), phase in 0.0f64..TAU, dirs in prop::collection::vec(direction(), 3), o in 0usize..8) {
        let shifted = state.with_global_phase(phase);
        let settings: Vec<Setting> = (0..3)
            .map(|q| Setting::new(q, dirs[q], Bit::new((o >> q) & 1 == 1)))
            .collect();
        let a = joint_probability(&state, &settings).unwrap();
        let b = joint_probability(&shifted, &settings).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn quantum_tables_do_not_signal(state in state_strategy(3), a in pair(direction()), b in pair(direction()), c in pair(direction())) {
        let t = from_quantum(&state, &[a, b, c]).unwrap();
        prop_assert!(t.is_no_signaling(1e-12));
    }

    #[test]
    fn mixtures_are_linear(s1 in state_strategy(3), s2 in state_strategy(3), a in pair(direction()), lambda in 0.0f64..1.0) {
        let t1 = from_quantum(&s1, &[a, a, a]).unwrap();
        let t2 = from_quantum(&s2, &[a, a, a]).unwrap();
        let mixed = t1.mix(lambda, &t2).unwrap();
        let want = lambda * ghz_satisfaction(&t1).unwrap() + (1.0 - lambda) * ghz_satisfaction(&t2).unwrap();
        prop_assert!((ghz_satisfaction(&mixed).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn noise_never_helps(e1 in 0.0f64..0.5, e2 in 0.0f64..0.5) {
        let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        let sat = |eta: f64| {
            ghz_satisfaction(&apply_noise(&ghz_table(), &NoiseModel::uniform(3, eta).unwrap()).unwrap()).unwrap()
        };
        let closed = |eta: f64| (1.0 - eta).powi(3) + 3.0 * eta * eta * (1.0 - eta);
        prop_assert!(sat(hi) <= sat(lo) + 1e-12);
        prop_assert!((sat(lo) - closed(lo)).abs() < 1e-12);
    }

    #[test]
    fn alice_relabeling_changes_nothing(s in alice_strategy()) {
        prop_assert!((alice_control(&s) - alice_control(&s.relabeled())).abs() < 1e-12);
    }

    #[test]
    fn alice_never_beats_tsirelson(s in alice_strategy()) {
        prop_assert!(alice_control(&s) <= TSIRELSON_WIN_PROBABILITY + 1e-9);
    }

    #[test]
    fn bob_never_beats_three_quarters(s in bob_strategy()) {
        let g = bob_gain(&s);
        prop_assert!(g <= 0.75 + 1e-9);
        prop_assert!((g - gain_objective(&s.behavior()).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn planar_parameters_respect_tsirelson(p in prop::array::uniform5(0.0f64..TAU), plus in any::<bool>()) {
        let report = DeterministicAliceReport::new(if plus { 1 } else { -1 }).unwrap();
        prop_assert!(control_for_parameters(&p, report) <= TSIRELSON_WIN_PROBABILITY + 1e-9);
    }

    #[test]
    fn security_curve_is_identity_then_constant(t in 0.75f64..=1.0) {
        prop_assert_eq!(security_vs_chsh(t).unwrap(), (t, 0.75));
    }
}

#[test]
fn random_no_signaling_mixtures_stay_below_vertex_maximum() {
    let vertices = ns_vertices();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..1000 {
        let weights: Vec<f64> = (0..vertices.len()).map(|_| rng.gen::<f64>()).collect();
        let total: f64 = weights.iter().sum();
        let mut probs = vec![0.0; 16];
        for (w, v) in weights.iter().zip(&vertices.vertices) {
            for (p, e) in probs.iter_mut().zip(v.table.entries()) {
                *p += w / total * e;
            }
        }
        let t = distrustful::behaviors::BehaviorTable::new(2, probs).unwrap();
        assert!(t.is_no_signaling(1e-12));
        assert!(gain_objective(&t).unwrap() <= 0.75 + 1e-12);
    }
}
