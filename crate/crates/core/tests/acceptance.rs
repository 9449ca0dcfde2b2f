//! One line per acceptance criterion; exits non-zero if any fails.

use std::time::{Duration, Instant};

use distrustful::adversaries::{alice_control, bob_gain, optimal_alice_ghz, optimal_bob_ghz};
use distrustful::analysis::{
    alice_control_bound, alice_control_mc, bob_gain_bound, bob_gain_mc, classical_ghz_bound,
    enumerate_classical_ghz, gain_objective, gain_inequalities, honest_accept_mc, iterated_bias,
    iterated_limit, max_over, ns_vertices, pr_control, OptimizerConfig,
};
use distrustful::behaviors::{apply_noise, ghz_satisfaction, ghz_table, NoiseModel};
use distrustful::TSIRELSON_WIN_PROBABILITY as T;

const TRIALS: u64 = 100_000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(id: u8, name: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let started = Instant::now();
    let out = f();
    let elapsed = started.elapsed();
    let pass = out.pass && elapsed <= budget;
    println!(
        "[{}] criterion {id}: {name}: {} ({:.2} s, budget {} s)",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    pass
}

fn ghz_exactness() -> Outcome {
    let sat = ghz_satisfaction(&ghz_table()).unwrap();
    let e = honest_accept_mc(&ghz_table(), TRIALS, 1).unwrap();
    let aborts = e.trials - e.successes;
    Outcome {
        pass: (sat - 1.0).abs() < 1e-12 && aborts == 0,
        detail: format!("satisfaction {sat}, {aborts} aborts in {TRIALS}"),
    }
}

fn classical_bound() -> Outcome {
    let r = classical_ghz_bound();
    let n = enumerate_classical_ghz().len();
    Outcome {
        pass: r.value == 0.75 && n == 64,
        detail: format!("max {} over {n} strategies", r.value),
    }
}

fn alice_control_criterion() -> Outcome {
    let exact = alice_control(&optimal_alice_ghz());
    let bound = match alice_control_bound(&OptimizerConfig::default()) {
        Ok(b) => b.value,
        Err(e) => {
            return Outcome {
                pass: false,
                detail: format!("optimizer failed: {e}"),
            }
        }
    };
    let mc = alice_control_mc(&optimal_alice_ghz(), TRIALS, 1).unwrap();
    Outcome {
        pass: (exact - T).abs() < 1e-9
            && (bound - T).abs() < 1e-6
            && bound <= T + 1e-6
            && mc.agrees_with(exact, 3.0),
        detail: format!(
            "exact {exact:.12}, optimizer {bound:.12}, monte carlo {:.5} ± {:.5}",
            mc.mean,
            mc.sigma_at(exact)
        ),
    }
}

fn bob_gain_criterion() -> Outcome {
    let exact = bob_gain(&optimal_bob_ghz());
    let bound = bob_gain_bound().value;
    let vertices = ns_vertices();
    let (det, _) = max_over(vertices.deterministic(), gain_objective).unwrap();
    let inequalities = vertices.vertices.iter().all(|v| {
        gain_inequalities(&v.table)
            .unwrap()
            .iter()
            .all(|&lhs| lhs <= 1.0 + 1e-12)
    });
    Outcome {
        pass: (exact - 0.75).abs() < 1e-9
            && bound == 0.75
            && det == 0.75
            && vertices.len() == 24
            && inequalities,
        detail: format!(
            "exact {exact:.12}, vertex max {bound} over {} vertices, inequalities hold: {inequalities}",
            vertices.len()
        ),
    }
}

fn pr_breakdown() -> Outcome {
    let r = pr_control();
    Outcome {
        pass: r.value == 1.0,
        detail: format!("max over PR vertices {}", r.value),
    }
}

fn coin_flip_biases() -> Outcome {
    let (a1, b1) = iterated_bias(1).unwrap();
    let (a2, b2) = iterated_bias(2).unwrap();
    let (a50, b50) = iterated_bias(50).unwrap();
    let limit = iterated_limit(T, 0.75);
    let bias = a50.value.max(b50.value) - 0.5;
    Outcome {
        pass: (a1.value - 0.8536).abs() < 5e-5
            && b1.value == 0.75
            && (a2.value - 0.8384).abs() < 5e-4
            && (b2.value - 0.8277).abs() < 5e-4
            && (a50.value - 0.83664).abs() < 1e-4
            && (b50.value - 0.83664).abs() < 1e-4
            && (a50.value - limit).abs() < 1e-6
            && (bias - 0.336).abs() < 1e-3,
        detail: format!(
            "n=1 ({:.4}, {:.4}), n=2 ({:.4}, {:.4}), n=50 ({:.5}, {:.5}), bias {bias:.4}",
            a1.value, b1.value, a2.value, b2.value, a50.value, b50.value
        ),
    }
}

fn noise_suite() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    let mut previous = f64::INFINITY;
    for (i, eta) in [0.0, 0.01, 0.1, 0.5].into_iter().enumerate() {
        let table = apply_noise(&ghz_table(), &NoiseModel::uniform(3, eta).unwrap()).unwrap();
        let closed = (1.0 - eta).powi(3) + 3.0 * eta * eta * (1.0 - eta);
        let e = honest_accept_mc(&table, TRIALS, 10 + i as u64).unwrap();
        let exact = ghz_satisfaction(&table).unwrap();
        pass &= e.agrees_with(closed, 3.0) && (exact - closed).abs() < 1e-12 && exact <= previous;
        previous = exact;
        parts.push(format!("η={eta}: {:.4} vs {closed:.4}", e.mean));
    }
    Outcome {
        pass,
        detail: parts.join(", "),
    }
}

fn cross_validation() -> Outcome {
    let alice = alice_control(&optimal_alice_ghz());
    let bob = bob_gain(&optimal_bob_ghz());
    let mut pass = true;
    let mut parts = Vec::new();
    for seed in [101, 202, 303] {
        let a = alice_control_mc(&optimal_alice_ghz(), TRIALS, seed).unwrap();
        let b = bob_gain_mc(&optimal_bob_ghz(), TRIALS, seed).unwrap();
        let za = (a.mean - alice) / a.sigma_at(alice);
        let zb = (b.mean - bob) / b.sigma_at(bob);
        pass &= za.abs() < 3.0 && zb.abs() < 3.0;
        parts.push(format!("seed {seed}: z_alice {za:+.2}, z_bob {zb:+.2}"));
    }
    Outcome {
        pass,
        detail: parts.join("; "),
    }
}

fn main() {
    let secs = Duration::from_secs;
    let results = [
        check(1, "GHZ paradox exactness", secs(10), ghz_exactness),
        check(2, "classical bound", secs(1), classical_bound),
        check(3, "Alice's control", secs(60), alice_control_criterion),
        check(4, "Bob's gain", secs(1), bob_gain_criterion),
        check(5, "PR-box breakdown", secs(1), pr_breakdown),
        check(6, "coin-flip biases", secs(1), coin_flip_biases),
        check(7, "noise robustness", secs(60), noise_suite),
        check(8, "cross-validation", secs(60), cross_validation),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
