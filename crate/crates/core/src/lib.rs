//! Exact two-terminal reliability of multistate flow networks when data
//! must travel over a single minimal path within a time limit and a budget.
//!
//! The pipeline is:
//!
//! 1. [`pathfind::enumerate_mps`] lists the minimal paths.
//! 2. [`solver::solve`] produces the minimal state vectors that admit a
//!    timely, affordable transmission.
//! 3. [`reliability::union_prob_ie`] turns them into a probability.
//!
//! [`reliability::brute_force_reliability`] is an exhaustive reference for
//! small networks. Probability-carrying types are generic over
//! [`scalar::Probability`]; the aliases below fix the common choices.

pub mod benchlab;
pub mod error;
pub mod instance;
pub mod netmodel;
pub mod pathfind;
pub mod reliability;
pub mod scalar;
pub mod solver;

pub use error::{Error, Result};
pub use instance::{parse_instance, write_instance, Instance};
pub use netmodel::{
    arc_transmit, best_time, beta, compare, path_capacity, path_stats, xi, Arc, Dominance, MinimalPath, Network,
    Query, StateVector, TransmissionTime,
};
pub use pathfind::{enumerate_mps, validate_catalog, CatalogReport, MpCatalog};
pub use reliability::{brute_force_reliability, reliability, union_prob_ie, upset_prob, TailTable};
pub use scalar::Probability;
pub use solver::{alpha, is_real_dtb, solve, solve_baseline, solve_direct, Algorithm, SolutionSet};

/// Exact rational probabilities.
pub type Rational = num_rational::BigRational;

pub type Network64 = Network<f64>;
pub type Network32 = Network<f32>;
pub type ExactNetwork = Network<Rational>;

pub type TailTable64 = TailTable<f64>;
pub type ExactTailTable = TailTable<Rational>;

pub type Instance64 = Instance<f64>;
pub type ExactInstance = Instance<Rational>;
