//! Cross-checks the simulator against explicit 8×8 matrix arithmetic.

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use distrustful::behaviors::{from_quantum, ghz_satisfaction, GHZ_ASSIGNMENT};
use distrustful::quantum::{ghz_state, joint_probability, BlochDirection, Setting, StateVector};
use distrustful::Bit;

type M2 = [[C; 2]; 2];

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn pauli() -> [M2; 4] {
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    [
        [[l, o], [o, l]],
        [[o, l], [l, o]],
        [[o, -i], [i, o]],
        [[l, o], [o, -l]],
    ]
}

fn projector(n: [f64; 3], outcome: u8) -> M2 {
    let p = pauli();
    let s = if outcome == 0 { 1.0 } else { -1.0 };
    let mut m = [[c(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for k in 0..2 {
            let sig = n[0] * p[1][r][k] + n[1] * p[2][r][k] + n[2] * p[3][r][k];
            m[r][k] = (p[0][r][k] + sig * s) * 0.5;
        }
    }
    m
}

fn kron(ms: &[M2]) -> Vec<Vec<C>> {
    let mut out = vec![vec![c(1.0, 0.0)]];
    for m in ms {
        let d = out.len();
        let mut next = vec![vec![c(0.0, 0.0); 2 * d]; 2 * d];
        for a in 0..d {
            for b in 0..d {
                for r in 0..2 {
                    for k in 0..2 {
                        next[2 * a + r][2 * b + k] = out[a][b] * m[r][k];
                    }
                }
            }
        }
        out = next;
    }
    out
}

fn expectation(psi: &[C], op: &[Vec<C>]) -> C {
    let mut total = c(0.0, 0.0);
    for (r, row) in op.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            total += psi[r].conj() * v * psi[k];
        }
    }
    total
}

fn ghz_vec() -> Vec<C> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = vec![c(0.0, 0.0); 8];
    v[0] = c(h, 0.0);
    v[7] = c(h, 0.0);
    v
}

#[test]
fn ghz_correlators_from_matrices() {
    let p = pauli();
    let (x, y) = (p[1], p[2]);
    let psi = ghz_vec();
    let cases = [
        ([x, x, x], 1.0),
        ([x, y, y], -1.0),
        ([y, x, y], -1.0),
        ([y, y, x], -1.0),
        ([y, y, y], 0.0),
        ([x, x, y], 0.0),
    ];
    for (ops, want) in cases {
        let e = expectation(&psi, &kron(&ops));
        assert!((e.re - want).abs() < 1e-12 && e.im.abs() < 1e-12);
    }
}

#[test]
fn simulator_state_matches_oracle_vector() {
    let ghz = ghz_state();
    for (a, b) in ghz.amplitudes().iter().zip(ghz_vec()) {
        assert!((a - b).norm() < 1e-15);
    }
}

fn random_direction(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let t: f64 = rng.gen_range(0.0..std::f64::consts::PI);
    let f: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    [t.sin() * f.cos(), t.sin() * f.sin(), t.cos()]
}

#[test]
fn joint_probabilities_match_kronecker_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let raw: Vec<C> = (0..8).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let state = StateVector::normalized(raw).unwrap();
        let psi = state.amplitudes().to_vec();
        let dirs: Vec<[f64; 3]> = (0..3).map(|_| random_direction(&mut rng)).collect();
        for outcomes in 0..8u8 {
            let bits = [(outcomes >> 2) & 1, (outcomes >> 1) & 1, outcomes & 1];
            let ms: Vec<M2> = (0..3).map(|q| projector(dirs[q], bits[q])).collect();
            let want = expectation(&psi, &kron(&ms)).re;
            let settings: Vec<Setting> = (0..3)
                .map(|q| {
                    let [x, y, z] = dirs[q];
                    Setting::new(q, BlochDirection::new(x, y, z).unwrap(), Bit::new(bits[q] == 1))
                })
                .collect();
            let got = joint_probability(&state, &settings).unwrap();
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }
}

#[test]
fn ghz_paradox_table_is_perfect() {
    let t = from_quantum(&ghz_state(), &[GHZ_ASSIGNMENT; 3]).unwrap();
    assert!((ghz_satisfaction(&t).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn steering_along_diagonal_matches_matrices() {
    // Alice measures (x̂+ŷ)/√2 on qubit 0 of GHZ with outcome 0.
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let dir = BlochDirection::new(h, h, 0.0).unwrap();
    let (p, rest) = ghz_state().condition(0, &dir, Bit::ZERO).unwrap();
    assert!((p - 0.5).abs() < 1e-12);
    let e = C::from_polar(h, std::f64::consts::PI / 8.0);
    let want = StateVector::new(vec![e, c(0.0, 0.0), c(0.0, 0.0), e.conj()]).unwrap();
    assert!(rest.approx_eq_up_to_phase(&want, 1e-12));
}
