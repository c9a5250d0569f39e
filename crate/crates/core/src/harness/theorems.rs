//! Differential checks of every stated property on one ordered program.
//!
//! Each check yields a pass, a failure with a counterexample, or a skip when
//! its premise does not hold for the program at hand.

use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::generator::{generate_program, GeneratorConfig};
use super::oracle::{oracle_answer_sets, oracle_cn, oracle_interpretation};
use crate::brewka::{brewka_wf_set, c_star, cl};
use crate::classical::{
    a_op, answer_sets, c_op, c_op_iterated, cn, reduct, t_step, well_founded_model,
};
use crate::fixpoint::cap_for;
use crate::parser::render_program;
use crate::preference::{ap_op, cp_op, lfp_ap, preferred_answer_sets};
use crate::pwfs::{apn_op, cpn_op, defeat_context, preferred_wf_model, tpn_step, DSetVariant};
use crate::syntax::{Interpretation, LiteralSet, OrderedProgram, Universe};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub invariant: &'static str,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub seed: u64,
    pub program_hash: String,
    pub program: String,
    pub checks: Vec<Check>,
}

#[derive(Serialize)]
struct JsonLine<'a> {
    seed: u64,
    program_hash: &'a str,
    invariant: &'a str,
    status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<&'a str>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn status_of(&self, invariant: &str) -> Option<Status> {
        self.checks
            .iter()
            .find(|c| c.invariant == invariant)
            .map(|c| c.status)
    }

    /// One JSON object per check.
    pub fn json_lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                serde_json::to_string(&JsonLine {
                    seed: self.seed,
                    program_hash: &self.program_hash,
                    invariant: c.invariant,
                    status: c.status,
                    counterexample: c.counterexample.as_deref(),
                })
                .expect("plain data serializes")
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CheckConfig {
    /// Variant under test in the preferred well-founded checks.
    pub variant: DSetVariant,
    /// Random subset pairs per monotonicity check.
    pub subset_pairs: usize,
    /// Seed of the subset sampler.
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            variant: DSetVariant::Full,
            subset_pairs: 50,
            seed: 0,
        }
    }
}

pub fn program_hash(op: &OrderedProgram) -> String {
    let digest = Sha256::digest(render_program(op).as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

fn random_consistent(rng: &mut ChaCha8Rng, universe: &std::sync::Arc<Universe>) -> Interpretation {
    let mut set = LiteralSet::empty(universe);
    for atom in 0..universe.atoms().len() {
        match rng.gen_range(0..3) {
            1 => set.insert_index(2 * atom),
            2 => set.insert_index(2 * atom + 1),
            _ => {}
        }
    }
    Interpretation::new(set)
}

/// A pair `x1 ⊆ x2`; `x2` is `Lit` one time in ten.
fn random_pair(
    rng: &mut ChaCha8Rng,
    universe: &std::sync::Arc<Universe>,
) -> (Interpretation, Interpretation) {
    if rng.gen_bool(0.1) {
        return (
            random_consistent(rng, universe),
            Interpretation::lit(universe),
        );
    }
    let x2 = random_consistent(rng, universe);
    let mut x1 = LiteralSet::empty(universe);
    for i in x2.as_set().indices().collect::<Vec<_>>() {
        if rng.gen_bool(0.5) {
            x1.insert_index(i);
        }
    }
    (Interpretation::new(x1), x2)
}

struct Checker {
    program: String,
    checks: Vec<Check>,
}

impl Checker {
    fn record(&mut self, invariant: &'static str, outcome: Result<bool, String>) {
        let (status, counterexample) = match outcome {
            Ok(true) => (Status::Pass, None),
            Ok(false) => (Status::Skip, None),
            Err(detail) => (
                Status::Fail,
                Some(format!("{detail}\n--- program ---\n{}", self.program)),
            ),
        };
        self.checks.push(Check {
            invariant,
            status,
            counterexample,
        });
    }

    /// Pass unless some pair yields a counterexample.
    fn pairs(
        &mut self,
        invariant: &'static str,
        pairs: &[(Interpretation, Interpretation)],
        mut check: impl FnMut(&Interpretation, &Interpretation) -> Option<String>,
    ) {
        let outcome = pairs
            .iter()
            .find_map(|(x1, x2)| check(x1, x2).map(|d| format!("x1={x1} x2={x2}: {d}")));
        self.record(invariant, outcome.map_or(Ok(true), Err));
    }
}

fn subset_or(a: &Interpretation, b: &Interpretation, what: &str) -> Option<String> {
    (!a.is_subset(b)).then(|| format!("{what}: {a} is not inside {b}"))
}

/// Runs every property check on `op`.
pub fn check_theorems(op: &OrderedProgram, cfg: &CheckConfig) -> Report {
    let p = op.program();
    let u = op.universe();
    let cap = cap_for(u.len());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    let pairs: Vec<_> = (0..cfg.subset_pairs)
        .map(|_| random_pair(&mut rng, u))
        .collect();
    let lit = Interpretation::lit(u);
    let mut c = Checker {
        program: render_program(op),
        checks: Vec::new(),
    };

    // Preference order.
    let ids: Vec<_> = p.rule_ids().collect();
    let order = op.order();
    let strict = ids.iter().all(|&a| !order.less(a, a))
        && ids.iter().all(|&a| {
            ids.iter().all(|&b| {
                !(order.less(a, b) && order.less(b, a))
                    && ids
                        .iter()
                        .all(|&z| !(order.less(a, b) && order.less(b, z)) || order.less(a, z))
            })
        });
    c.record(
        "order_strict_partial",
        if strict {
            Ok(true)
        } else {
            Err("order is not a strict partial order".into())
        },
    );

    // Oracle cross-checks.
    c.pairs("oracle_cn_agreement", &pairs, |x1, x2| {
        [x1, x2, &lit].iter().find_map(|x| {
            let basic = reduct(p, x);
            let engine = cn(&basic);
            let oracle = oracle_interpretation(u, oracle_cn(basic.rules()));
            (engine != oracle).then(|| format!("reduct by {x}: engine {engine}, oracle {oracle}"))
        })
    });
    let engine_as = answer_sets(p).expect("small program");
    let oracle_as = oracle_answer_sets(p).expect("small universe");
    c.record(
        "oracle_answer_sets",
        if engine_as == oracle_as {
            Ok(true)
        } else {
            Err(format!("engine {engine_as:?}, oracle {oracle_as:?}"))
        },
    );

    // Classical operators.
    c.pairs("c_paths_agree", &pairs, |x1, x2| {
        [x1, x2].iter().find_map(|x| {
            let (a, b) = (cn(&reduct(p, x)), c_op_iterated(p, x));
            (a != b).then(|| format!("at {x}: Cn(reduct) {a}, iterated T {b}"))
        })
    });
    c.pairs("c_anti_monotone", &pairs, |x1, x2| {
        subset_or(&c_op(p, x2), &c_op(p, x1), "C(x2) ⊆ C(x1)")
    });
    c.pairs("a_monotone", &pairs, |x1, x2| {
        subset_or(&a_op(p, x1), &a_op(p, x2), "A(x1) ⊆ A(x2)")
    });
    c.record(
        "answer_sets_alternating",
        match engine_as.iter().find(|z| a_op(p, z) != **z) {
            None => Ok(true),
            Some(z) => Err(format!("answer set {z} is not a fixpoint of A")),
        },
    );
    let wfs = well_founded_model(p);
    c.record(
        "wfs_convergence",
        match &wfs {
            Ok(w) if w.trace.applications() <= cap => Ok(true),
            Ok(w) => Err(format!("{} applications", w.trace.applications())),
            Err(e) => Err(e.to_string()),
        },
    );
    if let Ok(w) = &wfs {
        let x = w.true_set();
        c.record(
            "wfs_within_answer_sets",
            match engine_as.iter().find(|z| !x.is_subset(z)) {
                None => Ok(true),
                Some(z) => Err(format!("well-founded set {x} not inside answer set {z}")),
            },
        );
    }

    // Prioritized answer-set operator.
    c.pairs("cp_anti_monotone", &pairs, |x1, x2| {
        subset_or(&cp_op(op, x2), &cp_op(op, x1), "C<(x2) ⊆ C<(x1)")
    });
    c.pairs("ap_monotone", &pairs, |x1, x2| {
        subset_or(&ap_op(op, x1), &ap_op(op, x2), "A<(x1) ⊆ A<(x2)")
    });
    let pas = preferred_answer_sets(op).expect("small program");
    c.record(
        "pas_are_answer_sets",
        match pas.iter().find(|z| !engine_as.contains(z)) {
            None => Ok(true),
            Some(z) => Err(format!("preferred answer set {z} is not an answer set")),
        },
    );
    match lfp_ap(op) {
        Err(e) => c.record("lfp_ap_convergence", Err(e.to_string())),
        Ok(trace) => {
            c.record("lfp_ap_convergence", Ok(true));
            let x = trace.result();
            c.record(
                "lfp_ap_within_pas",
                match pas.iter().find(|z| !x.is_subset(z)) {
                    None => Ok(true),
                    Some(z) => Err(format!("lfp A< {x} not inside preferred answer set {z}")),
                },
            );
            let two_valued = x.as_set().union(&cp_op(op, x).as_set().complement()).len() == u.len()
                && x.is_subset(&cp_op(op, x));
            c.record(
                "lfp_ap_two_valued_unique",
                if !two_valued {
                    Ok(false)
                } else if pas == [x.clone()] {
                    Ok(true)
                } else {
                    Err(format!("two-valued {x} but preferred answer sets {pas:?}"))
                },
            );
        }
    }
    let unordered = op.without_order();
    c.pairs("empty_order_collapse", &pairs, |x1, x2| {
        [x1, x2].iter().find_map(|x| {
            let (a, b) = (cp_op(&unordered, x), c_op(p, x));
            let (aa, ab) = (ap_op(&unordered, x), a_op(p, x));
            let z = random_consistent(&mut ChaCha8Rng::seed_from_u64(x.len() as u64), u);
            let (ta, tb) = (
                crate::preference::tp_step(&unordered, x, &z),
                t_step(p, x, &z),
            );
            (a != b || aa != ab || ta != tb)
                .then(|| format!("at {x}: C< {a} vs C {b}, A< {aa} vs A {ab}, T< {ta} vs T {tb}"))
        })
    });

    // Preferred well-founded semantics.
    let v = cfg.variant;
    c.pairs("cpn_anti_monotone", &pairs, |x1, x2| {
        subset_or(&cpn_op(op, x2, v), &cpn_op(op, x1, v), "C°(x2) ⊆ C°(x1)")
    });
    c.pairs("apn_monotone", &pairs, |x1, x2| {
        subset_or(&apn_op(op, x1, v), &apn_op(op, x2, v), "A°(x1) ⊆ A°(x2)")
    });
    c.pairs("tpn_matches_t_without_order", &pairs, |x1, x2| {
        [x1, x2].iter().find_map(|x| {
            let y = c_op(p, x);
            if !y.is_consistent() {
                return None;
            }
            [x1, x2].iter().find_map(|z| {
                let (a, b) = (tpn_step(&unordered, &y, z, v), t_step(p, &y, z));
                (a != b).then(|| format!("y=C({x})={y}, z={z}: T° {a}, T {b}"))
            })
        })
    });
    let distinct_heads = p.heads().len() == p.len();
    if distinct_heads {
        c.pairs("dset_variants_agree_distinct_heads", &pairs, |x1, x2| {
            let y = c_op(p, x1);
            if !y.is_consistent() || !x2.is_consistent() {
                return None;
            }
            ids.iter().find_map(|&r| {
                let a = defeat_context(op, r, x2.as_set(), y.as_set(), DSetVariant::Full);
                let b = defeat_context(op, r, x2.as_set(), y.as_set(), DSetVariant::Simplistic);
                (a.effective_context != b.effective_context).then(|| {
                    format!(
                        "rule {} at y={y}: contexts {} vs {}",
                        p.rule(r).name(),
                        a.effective_context,
                        b.effective_context
                    )
                })
            })
        });
    } else {
        c.record("dset_variants_agree_distinct_heads", Ok(false));
    }

    match preferred_wf_model(op, v) {
        Err(e) => c.record("pwfs_convergence", Err(e.to_string())),
        Ok(pw) => {
            let trace_ok = pw.trace.applications() <= cap
                && pw.trace.steps.windows(2).all(|w| w[0].1.is_subset(&w[1].1));
            c.record(
                "pwfs_convergence",
                if trace_ok {
                    Ok(true)
                } else {
                    Err(format!("trace {:?}", pw.trace.steps))
                },
            );
            let x = pw.true_set().clone();
            let y = c_op(p, &x).as_set().complement();
            c.record(
                "model_disjoint_raw",
                if x.as_set().is_disjoint(&y) {
                    Ok(true)
                } else {
                    Err(format!("X={x} meets Lit \\ C(X)={y}"))
                },
            );
            if let Ok(w) = &wfs {
                let (x_std, y_std) = (w.model.true_set(), w.model.false_set());
                let (x_pref, y_pref) = (pw.model.true_set(), pw.model.false_set());
                c.record(
                    "pwfs_extends_wfs",
                    if x_std.is_subset(x_pref) && y_std.is_subset(y_pref) {
                        Ok(true)
                    } else {
                        Err(format!(
                            "standard ({x_std}, {y_std}) vs preferred ({x_pref}, {y_pref})"
                        ))
                    },
                );
                match preferred_wf_model(&unordered, v) {
                    Err(e) => c.record("pwfs_empty_order_equals_wfs", Err(e.to_string())),
                    Ok(pu) => c.record(
                        "pwfs_empty_order_equals_wfs",
                        if pu.model == w.model {
                            Ok(true)
                        } else {
                            Err(format!(
                                "empty order: preferred {} vs standard {}",
                                pu.model, w.model
                            ))
                        },
                    ),
                }
            }
            c.record(
                "pwfs_approximates_pas",
                if pas.is_empty() {
                    Ok(false)
                } else {
                    match pas
                        .iter()
                        .find(|z| !(x.is_subset(z) && pw.model.false_set().is_disjoint(z.as_set())))
                    {
                        None => Ok(true),
                        Some(z) => Err(format!(
                            "preferred model {} not approximating preferred answer set {z}",
                            pw.model
                        )),
                    }
                },
            );
        }
    }

    // Paraconsistent variant.
    c.pairs("brewka_cl_within_cn", &pairs, |x1, x2| {
        [x1, x2].iter().find_map(|x| {
            let basic = reduct(p, x);
            let (closed, logical) = (cl(&basic), cn(&basic));
            let ok = if closed.is_consistent() {
                closed == *logical.as_set()
            } else {
                logical.is_lit()
            };
            (!ok).then(|| format!("reduct by {x}: Cl {closed}, Cn {logical}"))
        })
    });
    c.pairs("brewka_c_star_anti_monotone", &pairs, |x1, x2| {
        let (a, b) = (c_star(p, x2.as_set()), c_star(p, x1.as_set()));
        (!a.is_subset(&b)).then(|| format!("C*(x2) {a} not inside C*(x1) {b}"))
    });
    match brewka_wf_set(op) {
        Err(e) => c.record("brewka_convergence", Err(e.to_string())),
        Ok(t) => {
            let grows = t.steps.windows(2).all(|w| w[0].1.is_subset(&w[1].1));
            c.record(
                "brewka_convergence",
                if grows {
                    Ok(true)
                } else {
                    Err(format!("iterates {:?}", t.steps))
                },
            );
        }
    }
    let brewka_unordered = brewka_wf_set(&unordered);
    let consistent_run = match (&wfs, &brewka_unordered) {
        (Ok(w), Ok(b)) => {
            w.trace
                .steps
                .iter()
                .all(|(_, x)| x.is_consistent() && c_op(p, x).is_consistent())
                && b.steps.iter().all(|(_, x)| x.is_consistent())
        }
        _ => false,
    };
    c.record(
        "brewka_empty_order_matches_wfs",
        match (&wfs, &brewka_unordered) {
            (Ok(w), Ok(b)) if consistent_run => {
                if b.result() == w.true_set().as_set() {
                    Ok(true)
                } else {
                    Err(format!(
                        "Brewka {} vs well-founded {}",
                        b.result(),
                        w.true_set()
                    ))
                }
            }
            _ => Ok(false),
        },
    );

    Report {
        seed: cfg.seed,
        program_hash: program_hash(op),
        program: c.program,
        checks: c.checks,
    }
}

/// Aggregated results of a batch of generated programs.
#[derive(Debug, Clone, Default)]
pub struct BatchSummary {
    pub programs: usize,
    /// Per invariant: (passes, failures, skips).
    pub counts: std::collections::BTreeMap<&'static str, (usize, usize, usize)>,
    /// Failing reports, in seed order.
    pub failures: Vec<Report>,
}

impl BatchSummary {
    pub fn failures_of(&self, invariant: &str) -> usize {
        self.counts.get(invariant).map_or(0, |c| c.1)
    }
}

/// Generates one program per seed and checks it, in parallel.
pub fn run_batch(gen: &GeneratorConfig, seeds: Range<u64>, check: &CheckConfig) -> BatchSummary {
    let reports: Vec<Report> = seeds
        .into_par_iter()
        .map(|seed| {
            let op = generate_program(&gen.with_seed(seed));
            check_theorems(&op, &CheckConfig { seed, ..*check })
        })
        .collect();
    let mut summary = BatchSummary {
        programs: reports.len(),
        ..BatchSummary::default()
    };
    for report in reports {
        for check in &report.checks {
            let entry = summary.counts.entry(check.invariant).or_default();
            match check.status {
                Status::Pass => entry.0 += 1,
                Status::Fail => entry.1 += 1,
                Status::Skip => entry.2 += 1,
            }
        }
        if !report.passed() {
            summary.failures.push(report);
        }
    }
    summary
}
