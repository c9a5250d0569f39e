//! Independent brute-force oracle, random program generator, differential
//! theorem checks and the scaling probe.

pub mod generator;
pub mod oracle;
pub mod scaling;
pub mod theorems;

pub use generator::{generate_program, GeneratorConfig};
pub use oracle::{enumerate_subsets, oracle_answer_sets, oracle_cn, UniverseTooLarge};
pub use scaling::{chain_program, fitted_exponent, scaling_probe, ScalingReport, ScalingRow};
pub use theorems::{check_theorems, run_batch, BatchSummary, Check, CheckConfig, Report, Status};
