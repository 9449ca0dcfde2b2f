use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde_json::{json, Value};

use distrustful::adversaries::{
    alice_control, alice_strategy, bob_gain, bob_strategy, AliceCheatStrategy, BobCheatStrategy,
    ALICE_STRATEGIES, BOB_STRATEGIES,
};
use distrustful::analysis::{
    alice_control_bound, alice_control_mc, bias_table as bias_rows, bob_gain_bound, bob_gain_mc,
    cheat_success, classical_ghz_bound, honest_accept_mc, honest_session, iterated_limit,
    iterated_mc, iterated_values, pr_control, BoundReport, Cheater, Estimate, OptimizerConfig,
};
use distrustful::behaviors::{apply_noise, ghz_satisfaction, ghz_table, pr_box, BehaviorTable, NoiseModel};
use distrustful::protocol::{RecordedSession, TableDevices, LOAD_NO_SIGNALING_TOLERANCE};
use distrustful::{CLASSICAL_GHZ_VALUE, NO_SIGNALING_GAIN, TSIRELSON_WIN_PROBABILITY};

use crate::output::{object, Check, Report};
use crate::{CheaterArg, Failure, Outcome, PartyArg, RunConfig, TableKind, Which};

const SIGMAS: f64 = 3.0;
const EXACT: f64 = 1e-12;

fn report(command: &str, config: &RunConfig, results: Vec<Value>, checks: Vec<Check>) -> Result<Outcome, Failure> {
    Ok(Outcome::Report(Report {
        command: command.to_owned(),
        config: serde_json::to_value(config)?,
        results,
        checks,
    }))
}

fn noisy_ghz(eta: f64) -> Result<BehaviorTable, Failure> {
    Ok(apply_noise(&ghz_table(), &NoiseModel::uniform(3, eta)?)?)
}

fn load_table(path: &Path) -> Result<BehaviorTable, Failure> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

fn table_id(config: &RunConfig, path: Option<&Path>) -> String {
    match path {
        Some(p) => format!("file:{}", p.display()),
        None if config.noise == 0.0 => "ghz".to_owned(),
        None => format!("ghz-noise={}", config.noise),
    }
}

fn table_from_id(id: &str) -> Result<BehaviorTable, Failure> {
    if id == "ghz" {
        return Ok(ghz_table());
    }
    if let Some(eta) = id.strip_prefix("ghz-noise=") {
        let eta: f64 = eta
            .parse()
            .map_err(|_| Failure::Usage(format!("bad noise in table id {id:?}")))?;
        return noisy_ghz(eta);
    }
    if let Some(path) = id.strip_prefix("file:") {
        return load_table(Path::new(path));
    }
    Err(Failure::Usage(format!("unknown table id {id:?}")))
}

fn estimate_json(e: &Estimate) -> Value {
    json!({
        "successes": e.successes,
        "trials": e.trials,
        "mean": e.mean,
        "std_error": e.std_error,
    })
}

fn mc_check(name: &str, e: &Estimate, expected: f64) -> Check {
    Check::new(name, expected, e.mean, e.agrees_with(expected, SIGMAS))
}

pub fn bc_run(config: &RunConfig, table_path: Option<&Path>, record: Option<&Path>) -> Result<Outcome, Failure> {
    let table = match table_path {
        Some(p) => load_table(p)?,
        None => noisy_ghz(config.noise)?,
    };
    if table.party_count() != 3 {
        return Err(Failure::Usage("bit commitment needs a three-box table".into()));
    }
    let template = TableDevices::new(table.clone())?;
    let estimate = honest_accept_mc(&table, config.trials, config.seed)?;
    let expected = ghz_satisfaction(&table)?;
    let sample = honest_session(&template, config.seed, 0)?;
    if let Some(path) = record {
        let id = table_id(config, table_path);
        let mut w = BufWriter::new(fs::File::create(path)?);
        for i in 0..config.trials {
            let rec = RecordedSession {
                seed: config.seed,
                session: i,
                table: id.clone(),
                transcript: honest_session(&template, config.seed, i)?,
            };
            serde_json::to_writer(&mut w, &rec)?;
            w.write_all(b"\n")?;
        }
        w.flush()?;
    }
    let mut row = estimate_json(&estimate);
    row["accept_rate"] = json!(estimate.mean);
    row["expected_accept_rate"] = json!(expected);
    row["sample"] = object(&sample);
    report(
        "bc-run",
        config,
        vec![row],
        vec![mc_check("accept_rate_within_3_sigma", &estimate, expected)],
    )
}

fn load_strategy<T: serde::de::DeserializeOwned>(
    source: &str,
    registry: impl Fn(&str) -> distrustful::Result<T>,
    names: &[&str],
) -> Result<T, Failure> {
    if let Some(path) = source.strip_prefix("file:") {
        return Ok(serde_json::from_str(&fs::read_to_string(path)?)?);
    }
    registry(source).map_err(|_| {
        Failure::Usage(format!(
            "unknown strategy {source:?}; available: {}, or file:PATH",
            names.join(", ")
        ))
    })
}

pub fn cheat(config: &RunConfig, party: PartyArg, name: &str) -> Result<Outcome, Failure> {
    let (party_name, exact, estimate, ceiling) = match party {
        PartyArg::Alice => {
            let s: AliceCheatStrategy = load_strategy(name, alice_strategy, &ALICE_STRATEGIES)?;
            (
                "alice",
                alice_control(&s),
                alice_control_mc(&s, config.trials, config.seed)?,
                TSIRELSON_WIN_PROBABILITY,
            )
        }
        PartyArg::Bob => {
            let s: BobCheatStrategy = load_strategy(name, bob_strategy, &BOB_STRATEGIES)?;
            (
                "bob",
                bob_gain(&s),
                bob_gain_mc(&s, config.trials, config.seed)?,
                NO_SIGNALING_GAIN,
            )
        }
    };
    let mut row = json!({ "party": party_name, "strategy": name, "exact": exact });
    row["monte_carlo"] = estimate_json(&estimate);
    report(
        "cheat",
        config,
        vec![row],
        vec![
            mc_check("monte_carlo_within_3_sigma", &estimate, exact),
            Check::new("respects_bound", ceiling, exact, exact <= ceiling + 1e-9),
        ],
    )
}

pub fn bounds(config: &RunConfig, which: Which, max_sweeps: usize) -> Result<Outcome, Failure> {
    let mut reports: Vec<BoundReport> = Vec::new();
    let mut checks = Vec::new();
    let all = which == Which::All;
    if all || which == Which::ClassicalGhz {
        let r = classical_ghz_bound();
        checks.push(Check::new("classical_ghz", CLASSICAL_GHZ_VALUE, r.value, r.value == CLASSICAL_GHZ_VALUE));
        reports.push(r);
    }
    if all || which == Which::Chsh {
        let r = alice_control_bound(&OptimizerConfig {
            seed: config.seed,
            tolerance: config.tolerance,
            max_sweeps,
            ..OptimizerConfig::default()
        })?;
        checks.push(Check::near("alice_control", TSIRELSON_WIN_PROBABILITY, r.value, config.tolerance));
        reports.push(r);
    }
    if all || which == Which::NsGain {
        let r = bob_gain_bound();
        checks.push(Check::new("bob_gain", NO_SIGNALING_GAIN, r.value, r.value == NO_SIGNALING_GAIN));
        reports.push(r);
    }
    if all || which == Which::Pr {
        let r = pr_control();
        checks.push(Check::new("pr_control", 1.0, r.value, r.value == 1.0));
        reports.push(r);
    }
    report("bounds", config, reports.iter().map(object).collect(), checks)
}

fn core_cheater(c: CheaterArg) -> Cheater {
    match c {
        CheaterArg::None => Cheater::None,
        CheaterArg::Alice => Cheater::Alice,
        CheaterArg::Bob => Cheater::Bob,
    }
}

pub fn coinflip(config: &RunConfig, cheater: CheaterArg) -> Result<Outcome, Failure> {
    let reps = config.reps.unwrap_or(1) as usize;
    let who = core_cheater(cheater);
    let table = noisy_ghz(config.noise)?;
    let stats = iterated_mc(reps, &table, who, config.trials, config.seed)?;
    let n = stats.trials() as f64;
    let mut row = object(&stats);
    row["reps"] = json!(reps);
    row["cheater"] = serde_json::to_value(who)?;
    row["p_zero"] = json!(stats.zeros as f64 / n);
    row["p_one"] = json!(stats.ones as f64 / n);
    row["p_abort"] = json!(stats.aborts as f64 / n);
    let mut checks = Vec::new();
    match who {
        Cheater::None => {
            if config.noise == 0.0 {
                checks.push(Check::new("no_aborts", 0.0, stats.aborts as f64, stats.aborts == 0));
                let e = Estimate::new(stats.ones, stats.trials())?;
                checks.push(mc_check("fair_coin_within_3_sigma", &e, 0.5));
            }
        }
        Cheater::Alice | Cheater::Bob => {
            let (c, r) = iterated_values(reps, TSIRELSON_WIN_PROBABILITY, NO_SIGNALING_GAIN)?;
            let bound = if who == Cheater::Alice { c } else { r };
            let e = cheat_success(&stats, who)?;
            row["cheat_success"] = estimate_json(&e);
            row["bound"] = json!(bound);
            checks.push(Check::new(
                "below_bound_within_3_sigma",
                bound,
                e.mean,
                e.mean <= bound + SIGMAS * e.sigma_at(bound),
            ));
        }
    }
    report("coinflip", config, vec![row], checks)
}

pub fn bias_table(config: &RunConfig) -> Result<Outcome, Failure> {
    let max_n = config.reps.unwrap_or(50) as usize;
    let rows = bias_rows(max_n)?;
    let limit = iterated_limit(TSIRELSON_WIN_PROBABILITY, NO_SIGNALING_GAIN);
    let last = rows.last().expect("max_n >= 1");
    let mut checks = vec![Check::near("n1_alice", TSIRELSON_WIN_PROBABILITY, rows[0].alice, EXACT)];
    if max_n >= 50 {
        checks.push(Check::near("limit_bias", limit - 0.5, last.max_bias, 1e-4));
    }
    report("bias-table", config, rows.iter().map(object).collect(), checks)
}

pub fn table_export(config: &RunConfig, kind: TableKind) -> Result<Outcome, Failure> {
    let table = match kind {
        TableKind::Ghz => noisy_ghz(config.noise)?,
        TableKind::Pr => pr_box(),
    };
    Ok(Outcome::Document(serde_json::to_value(&table)?))
}

pub fn table_import(config: &RunConfig, path: &Path) -> Result<Outcome, Failure> {
    let table = load_table(path)?;
    let ns = table.is_no_signaling(LOAD_NO_SIGNALING_TOLERANCE);
    let mut row = json!({
        "path": path.display().to_string(),
        "parties": table.party_count(),
        "no_signaling": ns,
    });
    if table.party_count() == 3 {
        row["ghz_satisfaction"] = json!(ghz_satisfaction(&table)?);
    }
    report(
        "table import",
        config,
        vec![row],
        vec![Check::new("no_signaling", 1.0, f64::from(u8::from(ns)), ns)],
    )
}

pub fn replay(config: &RunConfig, path: &Path) -> Result<Outcome, Failure> {
    let reader = BufReader::new(fs::File::open(path)?);
    let mut templates: Vec<(String, TableDevices)> = Vec::new();
    let (mut sessions, mut mismatched) = (0u64, 0u64);
    let mut first_mismatch = Value::Null;
    for line in reader.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: RecordedSession = serde_json::from_str(&line)?;
        let template = match templates.iter().find(|(id, _)| *id == rec.table) {
            Some((_, t)) => t.clone(),
            None => {
                let t = TableDevices::new(table_from_id(&rec.table)?)?;
                templates.push((rec.table.clone(), t.clone()));
                t
            }
        };
        let again = honest_session(&template, rec.seed, rec.session)?;
        sessions += 1;
        if again != rec.transcript {
            if mismatched == 0 {
                first_mismatch = json!(rec.session);
            }
            mismatched += 1;
        }
    }
    let row = json!({
        "path": path.display().to_string(),
        "sessions": sessions,
        "mismatched": mismatched,
        "first_mismatch": first_mismatch,
    });
    report(
        "replay",
        config,
        vec![row],
        vec![Check::new("transcripts_reproduced", 0.0, mismatched as f64, mismatched == 0)],
    )
}

pub fn strategy_export(party: PartyArg, name: &str) -> Result<Outcome, Failure> {
    let doc = match party {
        PartyArg::Alice => serde_json::to_value(load_strategy(name, alice_strategy, &ALICE_STRATEGIES)?)?,
        PartyArg::Bob => serde_json::to_value(load_strategy(name, bob_strategy, &BOB_STRATEGIES)?)?,
    };
    Ok(Outcome::Document(doc))
}
