//! Independent derivations of the security bounds, plus Monte Carlo
//! drivers that estimate the same quantities from simulated sessions.

mod chsh;
mod classical;
mod coinflip;
mod monte_carlo;
mod nonsignaling;
mod report;

pub use chsh::{
    alice_control_bound, closed_form_parameters, control_for_parameters, optimize_control,
    security_vs_chsh, ControlParameters, OptimizerConfig, OptimizerOutcome,
};
pub use classical::{classical_argmax, classical_ghz_bound, enumerate_classical_ghz, ClassicalEntry};
pub use coinflip::{bias_table, iterated_bias, iterated_limit, iterated_values, BiasRow};
pub use monte_carlo::{
    alice_control_mc, bob_gain_mc, cheat_success, coinflip_mc, honest_accept_mc, honest_session, iterated_mc,
    monte_carlo, Cheater, CoinFlipStats, Estimate,
};
pub use nonsignaling::{
    bob_gain_bound, control_best, gain_objective, gain_inequalities, max_over, ns_vertices, pr_control,
    NsVertex, NsVertexSet, VertexKind,
};
pub use report::{write_csv, BoundReport, Method, Quantity};
