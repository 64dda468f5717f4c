//! Random corpora and the batch cross-validation built on them.

pub mod batch;
pub mod generator;
pub mod xvalidate;

pub use generator::{generate_pairs, generate_processes, random_brm_formula, seeded_rng, GeneratorConfig};
pub use xvalidate::{check_pair, cross_validate, cross_validate_pairs, CrossValidationReport, PairOutcome};
