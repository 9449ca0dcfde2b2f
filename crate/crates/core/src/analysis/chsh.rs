use std::f64::consts::{PI, TAU};
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{BoundReport, Method, Quantity};
use crate::adversaries::{control_functional, DeterministicAliceReport};
use crate::behaviors::from_quantum;
use crate::quantum::{BlochDirection, StateVector};
use crate::rng::session_rng;
use crate::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Search configuration for [`alice_control_bound`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Grid points per coordinate over one period.
    pub grid_points: usize,
    /// Golden-section rounds after each grid scan.
    pub golden_iterations: usize,
    pub restarts: usize,
    /// Sweep budget per restart.
    pub max_sweeps: usize,
    /// A restart has converged once a full sweep gains less than this.
    pub convergence_tolerance: f64,
    /// Reported tolerance of the bound.
    pub tolerance: f64,
    /// Each box measures the same direction on both inputs.
    pub single_direction: bool,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            grid_points: 32,
            golden_iterations: 20,
            restarts: 5,
            max_sweeps: 1000,
            convergence_tolerance: 1e-12,
            tolerance: 1e-6,
            single_direction: false,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn degenerate() -> Self {
        OptimizerConfig {
            single_direction: true,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        let positive = |name, v: usize| {
            if v == 0 {
                Err(Error::OutOfRange {
                    name,
                    value: 0.0,
                    min: 1.0,
                    max: f64::INFINITY,
                })
            } else {
                Ok(())
            }
        };
        positive("grid_points", self.grid_points)?;
        positive("restarts", self.restarts)?;
        positive("max_sweeps", self.max_sweeps)?;
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::OutOfRange {
                name: "tolerance",
                value: self.tolerance,
                min: f64::MIN_POSITIVE,
                max: f64::INFINITY,
            });
        }
        Ok(())
    }
}

/// Parameters of one candidate: Schmidt angle and the four azimuths
/// `[θ, b₀, b₁, c₀, c₁]`.
pub type ControlParameters = [f64; 5];

/// Alice's control when Bob's boxes share `cos θ|00⟩ + sin θ|11⟩` and
/// measure in the x–y plane at the given azimuths.
pub fn control_for_parameters(params: &ControlParameters, report: DeterministicAliceReport) -> f64 {
    let [theta, b0, b1, c0, c1] = *params;
    let state = StateVector::two_qubit_schmidt(theta, 0.0);
    let eq = BlochDirection::equatorial;
    let table = from_quantum(&state, &[[eq(b0), eq(b1)], [eq(c0), eq(c1)]])
        .expect("two-qubit layout");
    control_functional(&table, report).expect("bipartite table")
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerOutcome {
    pub value: f64,
    pub x_a: i8,
    pub params: ControlParameters,
    pub sweeps: usize,
}

struct Search<'a> {
    config: &'a OptimizerConfig,
    report: DeterministicAliceReport,
}

impl Search<'_> {
    /// Free coordinates; in the degenerate case `b₁ = b₀` and `c₁ = c₀`.
    fn expand(&self, free: &[f64]) -> ControlParameters {
        if self.config.single_direction {
            [free[0], free[1], free[1], free[2], free[2]]
        } else {
            [free[0], free[1], free[2], free[3], free[4]]
        }
    }

    fn value(&self, free: &[f64]) -> f64 {
        control_for_parameters(&self.expand(free), self.report)
    }

    fn line(&self, point: &mut [f64], k: usize, x: f64) -> f64 {
        point[k] = x;
        self.value(point)
    }

    /// Grid scan over one period then golden-section refinement around the
    /// better of the grid winner and the current point.
    fn improve_coordinate(&self, point: &mut [f64], k: usize, current: f64) -> f64 {
        let n = self.config.grid_points;
        let step = TAU / n as f64;
        let mut probe = point.to_vec();
        let (mut center, mut best) = (point[k], current);
        for i in 0..n {
            let x = i as f64 * step;
            let v = self.line(&mut probe, k, x);
            if v > best {
                best = v;
                center = x;
            }
        }
        let (mut lo, mut hi) = (center - step, center + step);
        let mut x1 = hi - INV_PHI * (hi - lo);
        let mut x2 = lo + INV_PHI * (hi - lo);
        let mut f1 = self.line(&mut probe, k, x1);
        let mut f2 = self.line(&mut probe, k, x2);
        for _ in 0..self.config.golden_iterations {
            if f1 < f2 {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + INV_PHI * (hi - lo);
                f2 = self.line(&mut probe, k, x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - INV_PHI * (hi - lo);
                f1 = self.line(&mut probe, k, x1);
            }
        }
        for (x, f) in [(x1, f1), (x2, f2)] {
            if f > best {
                best = f;
                center = x;
            }
        }
        point[k] = center.rem_euclid(TAU);
        best
    }

    fn run(&self, start: Vec<f64>) -> Result<(f64, Vec<f64>, usize)> {
        let mut point = start;
        let mut value = self.value(&point);
        for sweep in 1..=self.config.max_sweeps {
            let before = value;
            for k in 0..point.len() {
                value = self.improve_coordinate(&mut point, k, value);
            }
            if value - before < self.config.convergence_tolerance {
                return Ok((value, point, sweep));
            }
        }
        Err(Error::NonConvergence {
            sweeps: self.config.max_sweeps,
        })
    }
}

/// Coordinate ascent over the Schmidt angle and planar measurement angles,
/// for both of Alice's reports, from seeded random starts. Any restart that
/// exhausts its sweep budget fails the whole search.
pub fn optimize_control(config: &OptimizerConfig) -> Result<OptimizerOutcome> {
    config.validate()?;
    let dims = if config.single_direction { 3 } else { 5 };
    let jobs: Vec<(DeterministicAliceReport, Vec<f64>)> = DeterministicAliceReport::both()
        .into_iter()
        .flat_map(|report| {
            (0..config.restarts).map(move |restart| {
                let mut rng = session_rng(config.seed, restart as u64);
                let start = (0..dims).map(|_| rng.gen_range(0.0..TAU)).collect();
                (report, start)
            })
        })
        .collect();
    let results: Vec<Result<OptimizerOutcome>> = jobs
        .into_par_iter()
        .map(|(report, start)| {
            let search = Search { config, report };
            let (value, point, sweeps) = search.run(start)?;
            Ok(OptimizerOutcome {
                value,
                x_a: report.x_a(),
                params: search.expand(&point),
                sweeps,
            })
        })
        .collect();
    let mut best: Option<OptimizerOutcome> = None;
    for r in results {
        let r = r?;
        if best.is_none_or(|b| r.value > b.value) {
            best = Some(r);
        }
    }
    Ok(best.expect("at least one restart"))
}

pub fn alice_control_bound(config: &OptimizerConfig) -> Result<BoundReport> {
    let started = Instant::now();
    let outcome = optimize_control(config)?;
    Ok(BoundReport::new(
        Quantity::AliceControl,
        outcome.value.clamp(0.0, 1.0),
        Method::NumericOptimization,
        config.tolerance,
    )?
    .with_runtime(started))
}

/// Closed-form optimum for `x_A = +1`: maximally entangled state with
/// `(b₀, b₁; c₀, c₁) = (0, π/2; 3π/4, −3π/4)`.
pub fn closed_form_parameters() -> ControlParameters {
    [PI / 4.0, 0.0, PI / 2.0, 3.0 * PI / 4.0, -3.0 * PI / 4.0]
}

/// Alice's control as a function of the best CHSH winning probability `t`
/// a theory allows, paired with Bob's gain, which no-signaling fixes at ¾.
pub fn security_vs_chsh(t: f64) -> Result<(f64, f64)> {
    if !(0.75..=1.0).contains(&t) {
        return Err(Error::OutOfRange {
            name: "CHSH success probability",
            value: t,
            min: 0.75,
            max: 1.0,
        });
    }
    Ok((t, crate::NO_SIGNALING_GAIN))
}
