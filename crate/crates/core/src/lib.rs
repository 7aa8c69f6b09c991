//! Error propagation in noisy variational circuits.
//!
//! Haar-averaging a noisy entangle/uncompute circuit over its random two-qubit
//! gates reduces it to a classical Markov chain on depolarization patterns
//! `{0,1}^n`: a gate between a clean and a depolarized qubit spreads the error
//! with probability 4/5. This crate samples that chain on 1D, 2D and nonlocal
//! layouts ([`chain`], [`schedule`]), computes the twirled strength of
//! arbitrary two-qubit channels ([`twirl`]), evaluates closed-form light-cone
//! estimates and bounds ([`analytics`]), turns depolarized fractions into
//! Max-Cut quality limits ([`maxcut`]) and inverts the model into hardware
//! error budgets ([`planner`]).
//!
//! ```
//! use errprop::{chain, schedule::ArchitectureSchedule};
//!
//! let layout = ArchitectureSchedule::one_d(100)?;
//! let noise = chain::NoiseParams::new(1e-3)?;
//! let config = chain::McConfig::new(200, 7, 40)?;
//! let est = chain::estimate_q(&layout, &noise, &config);
//! assert!(est.q_frac > 0.0 && est.q_frac < 1.0);
//! # Ok::<(), errprop::Error>(())
//! ```

pub mod analytics;
pub mod chain;
pub mod error;
pub mod maxcut;
pub mod planner;
pub mod rng;
pub mod schedule;
pub mod state;
pub mod sweep;
pub mod twirl;

pub use error::{Error, Result};
pub use schedule::{Architecture, ArchitectureSchedule};
pub use state::ErrorState;
