//! Workloads shared by the benchmarks.

use olp_core::harness::{chain_program, generate_program, GeneratorConfig};
use olp_core::OrderedProgram;

pub const CHAIN_SIZES: [usize; 3] = [25, 50, 100];

pub fn chains() -> Vec<(usize, OrderedProgram)> {
    CHAIN_SIZES.iter().map(|&n| (n, chain_program(n))).collect()
}

/// `count` random programs at the default desk-scale settings.
pub fn random_batch(count: u64) -> Vec<OrderedProgram> {
    let cfg = GeneratorConfig::default();
    (0..count)
        .map(|s| generate_program(&cfg.with_seed(s)))
        .collect()
}
