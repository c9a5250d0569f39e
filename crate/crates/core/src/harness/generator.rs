use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{Atom, Literal, OrderedProgram, Rule};

const ATOM_NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];
/// Chance of each of the (at most two) positive body literals.
const PBODY_PROB: f64 = 0.35;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub max_atoms: usize,
    pub max_rules: usize,
    pub classical_negation_prob: f64,
    pub nbody_prob: f64,
    pub order_density: f64,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            max_atoms: 4,
            max_rules: 7,
            classical_negation_prob: 0.25,
            nbody_prob: 0.6,
            order_density: 0.3,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("max_atoms must lie in 1..=6, got {0}")]
    Atoms(usize),
    #[error("{name} must lie in [0, 1], got {value}")]
    Probability { name: &'static str, value: f64 },
}

impl GeneratorConfig {
    pub fn with_seed(self, seed: u64) -> Self {
        GeneratorConfig { seed, ..self }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(1..=ATOM_NAMES.len()).contains(&self.max_atoms) {
            return Err(ConfigError::Atoms(self.max_atoms));
        }
        for (name, value) in [
            ("classical_negation_prob", self.classical_negation_prob),
            ("nbody_prob", self.nbody_prob),
            ("order_density", self.order_density),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(ConfigError::Probability { name, value });
            }
        }
        Ok(())
    }
}

/// A random ordered program, fully determined by `cfg`.
///
/// Each candidate preference pair is kept only if it leaves the order
/// acyclic.
pub fn generate_program(cfg: &GeneratorConfig) -> OrderedProgram {
    cfg.validate().expect("invalid generator configuration");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let atoms: Vec<Atom> = ATOM_NAMES[..rng.gen_range(1..=cfg.max_atoms)]
        .iter()
        .map(|a| Atom::new(a).expect("static names"))
        .collect();
    let literal = |rng: &mut ChaCha8Rng| {
        let atom = atoms[rng.gen_range(0..atoms.len())].clone();
        Literal::new(atom, rng.gen_bool(cfg.classical_negation_prob))
    };

    let n = rng.gen_range(1..=cfg.max_rules.max(1));
    let rules: Vec<Rule> = (1..=n)
        .map(|i| {
            let head = literal(&mut rng);
            let mut pbody: Vec<Literal> = Vec::new();
            for _ in 0..2 {
                if rng.gen_bool(PBODY_PROB) {
                    pbody.push(literal(&mut rng));
                }
            }
            let mut nbody = Vec::new();
            if rng.gen_bool(cfg.nbody_prob) {
                nbody.push(literal(&mut rng));
                if rng.gen_bool(cfg.nbody_prob / 2.0) {
                    nbody.push(literal(&mut rng));
                }
            }
            Rule::new(format!("r{i}"), head, pbody, nbody).expect("generated names")
        })
        .collect();

    // reach[i][j]: rule i is below rule j.
    let mut reach = vec![vec![false; n]; n];
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !rng.gen_bool(cfg.order_density) {
                continue;
            }
            let (lo, hi) = if rng.gen_bool(0.5) { (i, j) } else { (j, i) };
            if reach[hi][lo] {
                continue;
            }
            let above_hi = reach[hi].clone();
            for (a, row) in reach.iter_mut().enumerate() {
                if a == lo || row[lo] {
                    for (b, cell) in row.iter_mut().enumerate() {
                        *cell |= b == hi || above_hi[b];
                    }
                }
            }
            pairs.push((format!("r{}", lo + 1), format!("r{}", hi + 1)));
        }
    }
    OrderedProgram::new(rules, pairs).expect("generator keeps the order acyclic")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::render_program;

    #[test]
    fn deterministic_in_seed() {
        let cfg = GeneratorConfig::default().with_seed(42);
        assert_eq!(generate_program(&cfg), generate_program(&cfg));
        let other = generate_program(&cfg.with_seed(43));
        assert_ne!(
            render_program(&generate_program(&cfg)),
            render_program(&other)
        );
    }

    #[test]
    fn zero_density_means_no_order() {
        let cfg = GeneratorConfig {
            order_density: 0.0,
            ..GeneratorConfig::default()
        };
        for seed in 0..50 {
            assert!(generate_program(&cfg.with_seed(seed)).order().is_empty());
        }
    }

    #[test]
    fn thousand_programs_validate() {
        let cfg = GeneratorConfig::default();
        for seed in 0..1000 {
            let op = generate_program(&cfg.with_seed(seed));
            assert!(op.rules().len() <= cfg.max_rules);
            assert!(op.universe().atoms().len() <= cfg.max_atoms);
            let closed = op.order().closed_pairs();
            assert!(closed.iter().all(|(a, b)| a != b));
            // Re-validating the declared pairs reproduces the same closure.
            let again = crate::syntax::validate_order(
                op.order().generating_pairs().iter().cloned(),
                op.rules(),
            )
            .unwrap();
            assert_eq!(again.closed_pairs(), closed);
        }
    }

    #[test]
    fn rejects_bad_configs() {
        let bad = GeneratorConfig {
            max_atoms: 7,
            ..GeneratorConfig::default()
        };
        assert_eq!(bad.validate(), Err(ConfigError::Atoms(7)));
        let bad = GeneratorConfig {
            nbody_prob: 1.5,
            ..GeneratorConfig::default()
        };
        assert!(matches!(
            bad.validate(),
            Err(ConfigError::Probability { .. })
        ));
    }
}
