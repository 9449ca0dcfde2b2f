use distrustful::adversaries::{optimal_alice_ghz, optimal_bob_ghz, AliceCheater, BobCheater, CheatGoal};
use distrustful::analysis::{cheat_success, honest_accept_mc, iterated_mc, Cheater, Estimate};
use distrustful::behaviors::{apply_noise, ghz_table, NoiseModel};
use distrustful::protocol::{
    run_bc, run_coinflip, Committer, HonestCommitter, HonestReceiver, Receiver, TableDevices,
    Verdict,
};
use distrustful::rng::session_rng;
use distrustful::{Bit, TSIRELSON_WIN_PROBABILITY as T};

const TRIALS: u64 = 20_000;

#[test]
fn honest_sessions_never_abort() {
    let e = honest_accept_mc(&ghz_table(), TRIALS, 1).unwrap();
    assert_eq!(e.successes, TRIALS);
}

#[test]
fn receiver_inputs_are_uniform_given_the_bit() {
    let mut counts = [[0u64; 4]; 2];
    for i in 0..TRIALS {
        let mut rng = session_rng(5, i);
        let bit = Bit::new(i % 2 == 1);
        let mut devices = TableDevices::new(ghz_table()).unwrap();
        let t = run_bc(&mut HonestCommitter::new(), &mut HonestReceiver::new(), &mut devices, bit, &mut rng).unwrap();
        let (s_b, s_c) = (t.s_b.unwrap(), t.s_c.unwrap());
        assert_eq!(s_b ^ s_c, Bit::ONE ^ bit);
        counts[bit.as_usize()][s_b.as_usize() * 2 + s_c.as_usize()] += 1;
    }
    for row in counts {
        let n: u64 = row.iter().sum();
        for &c in row.iter().filter(|&&c| c > 0) {
            let e = Estimate::new(c, n).unwrap();
            assert!(e.agrees_with(0.5, 4.0), "{row:?}");
        }
    }
}

#[test]
fn receiver_coin_bit_ignores_commitment() {
    let mut joint = [0u64; 4];
    for i in 0..TRIALS {
        let mut rng = session_rng(6, i);
        let mut devices = TableDevices::new(ghz_table()).unwrap();
        let rec = run_coinflip(&mut HonestCommitter::new(), &mut HonestReceiver::new(), &mut devices, &mut rng).unwrap();
        joint[rec.transcript.c.as_usize() * 2 + rec.receiver_bit.as_usize()] += 1;
    }
    for c in joint {
        assert!(Estimate::new(c, TRIALS).unwrap().agrees_with(0.25, 4.0), "{joint:?}");
    }
}

#[test]
fn noisy_abort_rate() {
    let noisy = apply_noise(&ghz_table(), &NoiseModel::uniform(3, 0.01).unwrap()).unwrap();
    let e = honest_accept_mc(&noisy, TRIALS, 2).unwrap();
    let accept = 0.99f64.powi(3) + 3.0 * 0.01 * 0.01 * 0.99;
    assert!(e.agrees_with(accept, 4.0));
    assert!(((1.0 - accept) - 0.0294).abs() < 1e-4);
}

#[test]
fn cheating_alice_only_fails_the_ghz_test() {
    for i in 0..2000 {
        let mut rng = session_rng(7, i);
        let target = Bit::new(i % 2 == 0);
        let mut alice = AliceCheater::new(optimal_alice_ghz(), CheatGoal::RevealBit(target));
        let mut devices = alice.supply_devices().unwrap();
        let t = run_bc(&mut alice, &mut HonestReceiver::new(), devices.as_mut(), target, &mut rng).unwrap();
        assert_eq!(t.s_a, target);
        assert_ne!(t.verdict, Verdict::AbortCommitmentMismatch);
    }
}

#[test]
fn cheating_bob_never_triggers_an_abort() {
    for i in 0..2000 {
        let mut rng = session_rng(8, i);
        let mut bob = BobCheater::new(optimal_bob_ghz(), None);
        let mut devices = bob.supply_devices().unwrap();
        let t = run_bc(&mut HonestCommitter::new(), &mut bob, devices.as_mut(), Bit::ONE, &mut rng).unwrap();
        assert_eq!(t.verdict, Verdict::Accept);
        assert!(t.s_b.is_none());
    }
}

#[test]
fn two_round_coin_flip_cheaters() {
    let bob = iterated_mc(2, &ghz_table(), Cheater::Bob, TRIALS, 3).unwrap();
    let b = cheat_success(&bob, Cheater::Bob).unwrap();
    let bound_b = 0.75 * T + 0.25 * 0.75;
    assert!(b.agrees_with(bound_b, 4.0), "{} vs {bound_b}", b.mean);

    let alice = iterated_mc(2, &ghz_table(), Cheater::Alice, TRIALS, 3).unwrap();
    let a = cheat_success(&alice, Cheater::Alice).unwrap();
    let bound_a = T * T + (1.0 - T) * 0.75;
    assert!(a.mean <= bound_a + 4.0 * a.sigma_at(bound_a));
    assert!(a.agrees_with(T * T, 4.0), "{}", a.mean);

    let honest = iterated_mc(2, &ghz_table(), Cheater::None, TRIALS, 3).unwrap();
    assert_eq!(honest.aborts, 0);
    assert!(Estimate::new(honest.ones, TRIALS).unwrap().agrees_with(0.5, 4.0));
}
