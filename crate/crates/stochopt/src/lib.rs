//! Scenario-based stochastic budget optimization.
//!
//! Given keywords, scenarios (probability plus click vectors), per-click
//! costs and a soft budget, this crate computes allocations maximizing the
//! expected number of clicks. It provides:
//!
//! - the instance model and exact payoff semantics ([`model`]);
//! - knapsack kernels ([`knapsack`]) and the single- and multi-slot
//!   approximation algorithms ([`approx_single`], [`approx_multi`]);
//! - exact and pseudo-polynomial special-case solvers plus brute-force
//!   oracles ([`exact`], [`lp`]);
//! - a bi-criteria solver for the budget-minimization dual ([`dual`]);
//! - hard-instance generators and an analytic SDP-gap certificate
//!   ([`hardgen`]);
//! - instance file I/O ([`io`]) and the command-line front end ([`cli`]).
//!
//! See the `examples/` directory for one runnable example per capability.

pub mod approx_multi;
pub mod approx_single;
pub mod cli;
pub mod dual;
pub mod error;
pub mod exact;
mod fastpath;
pub mod hardgen;
pub mod io;
pub mod knapsack;
pub mod lp;
pub mod model;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rat;
