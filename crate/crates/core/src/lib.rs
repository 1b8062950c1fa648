//! Memetic solver for the symmetric travelling salesman problem built around
//! greedy crossover.
//!
//! The crate provides TSPLIB `EUC_2D` loading ([`instance`]), tours and the
//! doubly-linked list behind IGX ([`tour`]), the greedy crossover family
//! ([`crossover`]), 2-opt/3-opt improvement ([`local_search`]), the GA driver
//! ([`ga`]) and an experiment harness producing per-configuration reports
//! ([`bench`]).

pub mod bench;
pub mod brute_force;
pub mod crossover;
pub mod error;
pub mod ga;
pub mod instance;
pub mod local_search;
pub mod tour;

pub use crossover::{CrossoverOperator, OperatorKind, SolverRng};
pub use error::{Error, ParseError, Result};
pub use ga::{run_ga, GaConfig, GaResult};
pub use instance::{fig1_fixture, parse_tsplib, Instance, Point};
pub use local_search::LocalSearchConfig;
pub use tour::{LinkedTourList, Tour};
