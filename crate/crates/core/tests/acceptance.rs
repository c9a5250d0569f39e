//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines always reach the console; exits nonzero on any hard failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use olp_core::fixtures;
use olp_core::harness::{run_batch, scaling_probe, BatchSummary, CheckConfig, GeneratorConfig};
use olp_core::*;

const REPRODUCTION_BUDGET: Duration = Duration::from_secs(1);
const PROPERTY_BUDGET: Duration = Duration::from_secs(60);
const RANDOM_PROGRAMS: u64 = 1000;
const SUBSET_PAIRS: usize = 50;
const SCALING_SIZES: [usize; 3] = [50, 100, 200];
const MAX_SCALING_EXPONENT: f64 = 3.5;

enum Outcome {
    Pass(String),
    Fail(String),
    /// Fails for a reason the program cannot resolve; reported, not fatal.
    KnownConflict(String),
    Warn(String),
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    if ok {
        Outcome::Pass(detail.into())
    } else {
        Outcome::Fail(detail.into())
    }
}

fn strings(set: &LiteralSet) -> Vec<String> {
    set.sorted_strings()
}

/// Model at atom level: `(true, false)` over positives and mentioned literals.
fn atom_model(op: &OrderedProgram, m: &PartialModel) -> (Vec<String>, Vec<String>) {
    let (t, f, _) = m.restrict(&op.atom_level_literals());
    (strings(&t), strings(&f))
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

fn criterion1() -> Outcome {
    let ((wfs, c0, c1, lfp, pw), took) = timed(|| {
        let op = fixtures::mutual_block();
        let e = Interpretation::empty(op.universe());
        let ab = Interpretation::parse(op.universe(), ["a", "b"]).unwrap();
        (
            atom_model(&op, &well_founded_model(op.program()).unwrap().model),
            strings(cp_op(&op, &e).as_set()),
            strings(cp_op(&op, &ab).as_set()),
            strings(lfp_ap(&op).unwrap().result().as_set()),
            atom_model(
                &op,
                &preferred_wf_model(&op, DSetVariant::Full).unwrap().model,
            ),
        )
    });
    let ok = wfs == (vec![], vec![])
        && c0 == ["a", "b"]
        && c1.is_empty()
        && lfp.is_empty()
        && pw == (vec!["a".into()], vec!["b".into()])
        && took < REPRODUCTION_BUDGET;
    check(
        ok,
        format!("wfs={wfs:?} C<(∅)={c0:?} C<({{a,b}})={c1:?} lfp={lfp:?} pwfs={pw:?} in {took:?}"),
    )
}

fn criterion2() -> Outcome {
    let ((wfs, pw), took) = timed(|| {
        let op = fixtures::settled_preference();
        (
            atom_model(&op, &well_founded_model(op.program()).unwrap().model),
            atom_model(
                &op,
                &preferred_wf_model(&op, DSetVariant::Full).unwrap().model,
            ),
        )
    });
    let expected = (
        vec!["b".to_string()],
        vec!["a".to_string(), "c".to_string()],
    );
    check(
        wfs == expected && pw == expected && took < REPRODUCTION_BUDGET,
        format!("wfs={wfs:?} pwfs={pw:?} in {took:?}"),
    )
}

fn criterion3() -> Outcome {
    let ((full, simplistic), took) = timed(|| {
        let op = fixtures::same_head();
        (
            atom_model(
                &op,
                &preferred_wf_model(&op, DSetVariant::Full).unwrap().model,
            ),
            atom_model(
                &op,
                &preferred_wf_model(&op, DSetVariant::Simplistic)
                    .unwrap()
                    .model,
            ),
        )
    });
    let ok = full == (vec!["a".into()], vec!["b".into()])
        && simplistic == (vec!["a".into(), "b".into()], vec![])
        && took < REPRODUCTION_BUDGET;
    check(
        ok,
        format!("full={full:?} simplistic={simplistic:?} in {took:?}"),
    )
}

fn criterion4() -> Outcome {
    let op = fixtures::mutual_block();
    let x = LiteralSet::empty(op.universe());
    let y = LiteralSet::parse(op.universe(), ["a", "b"]).unwrap();
    let d1 = strings(&d_set(&op, op.rule_id("r1").unwrap(), &x, &y));
    let d2 = strings(&d_set(&op, op.rule_id("r2").unwrap(), &x, &y));
    check(
        d1 == ["b"] && d2.is_empty(),
        format!("D(r1)={d1:?} D(r2)={d2:?}"),
    )
}

fn criterion5() -> Outcome {
    let op = fixtures::contradictory_facts();
    let logical = cn(op.program());
    let closed = strings(&cl(op.program()));
    check(
        logical.is_lit() && closed == ["-a", "a", "b"],
        format!("Cn={logical} Cl={closed:?}"),
    )
}

fn criterion6() -> Outcome {
    let d = fixtures::defeasible();
    let dt = strings(
        preferred_wf_model(&d, DSetVariant::Full)
            .unwrap()
            .true_set()
            .as_set(),
    );
    let facts = fixtures::two_facts();
    let facts_true = strings(
        preferred_wf_model(&facts, DSetVariant::Full)
            .unwrap()
            .true_set()
            .as_set(),
    );
    let ok = dt == ["p", "q"] && ["p", "q"].iter().all(|l| facts_true.iter().any(|t| t == l));
    check(ok, format!("defeasible={dt:?} two_facts={facts_true:?}"))
}

const PROPERTY_INVARIANTS: [&str; 6] = [
    "cpn_anti_monotone",
    "pwfs_convergence",
    "pwfs_extends_wfs",
    "pwfs_empty_order_equals_wfs",
    "pwfs_approximates_pas",
    "apn_monotone",
];

/// True if some classical iterate of the program meets `C(X) = Lit`.
fn meets_lit_context(seed: u64) -> bool {
    let op = harness::generate_program(&GeneratorConfig::default().with_seed(seed));
    let w = well_founded_model(op.program()).unwrap();
    w.trace
        .steps
        .iter()
        .any(|(_, x)| c_op(op.program(), x).is_lit())
}

fn criterion7(batch: &BatchSummary, took: Duration) -> Outcome {
    let counts: Vec<String> = PROPERTY_INVARIANTS
        .iter()
        .map(|k| format!("{k}={}", batch.failures_of(k)))
        .collect();
    let hard_failures: usize = PROPERTY_INVARIANTS
        .iter()
        .filter(|k| **k != "pwfs_empty_order_equals_wfs")
        .map(|k| batch.failures_of(k))
        .sum();
    let approx_checked = batch
        .counts
        .get("pwfs_approximates_pas")
        .map_or(0, |c| c.0 + c.1);
    let detail = format!(
        "{} programs, {} failures [{}], approximation checked on {approx_checked}, in {took:?}",
        batch.programs,
        hard_failures + batch.failures_of("pwfs_empty_order_equals_wfs"),
        counts.join(" ")
    );
    if hard_failures > 0 || took >= PROPERTY_BUDGET || batch.programs < RANDOM_PROGRAMS as usize {
        return Outcome::Fail(detail);
    }
    let equality: Vec<u64> = batch
        .failures
        .iter()
        .filter(|r| r.status_of("pwfs_empty_order_equals_wfs") == Some(harness::Status::Fail))
        .map(|r| r.seed)
        .collect();
    if equality.is_empty() {
        return Outcome::Pass(detail);
    }
    // The empty-order equality cannot hold together with criterion 6: the
    // defeasible program's {p, q} comes from removing a literal without any
    // generating rule from the context Lit, which happens regardless of the
    // order. Every such counterexample must be of exactly this shape.
    if equality.iter().all(|&s| meets_lit_context(s)) {
        Outcome::KnownConflict(format!(
            "{detail}; all {} empty-order mismatches arise at C(X) = Lit, where \
             ungenerated literals are vacuously removed (the same removal yields \
             criterion 6's {{p,q}})",
            equality.len()
        ))
    } else {
        Outcome::Fail(format!(
            "{detail}; empty-order mismatch outside Lit contexts"
        ))
    }
}

fn criterion8(batch: &BatchSummary) -> Outcome {
    let (as_bad, cn_bad) = (
        batch.failures_of("oracle_answer_sets"),
        batch.failures_of("oracle_cn_agreement"),
    );
    check(
        as_bad == 0 && cn_bad == 0 && batch.programs == RANDOM_PROGRAMS as usize,
        format!(
            "{} programs: answer-set mismatches={as_bad} cn mismatches={cn_bad}",
            batch.programs
        ),
    )
}

fn criterion9() -> Outcome {
    let report = scaling_probe(&SCALING_SIZES);
    let rows: Vec<String> = report
        .rows
        .iter()
        .map(|r| {
            format!(
                "n={} wfs={:.4}s pwfs={:.4}s",
                r.size, r.wfs_secs, r.pwfs_secs
            )
        })
        .collect();
    let detail = format!(
        "{}; exponents wfs={:.2?} pwfs={:.2?} (limit {MAX_SCALING_EXPONENT})",
        rows.join(", "),
        report.wfs_exponent,
        report.pwfs_exponent
    );
    match report.pwfs_exponent {
        Some(e) if e <= MAX_SCALING_EXPONENT => Outcome::Pass(detail),
        _ => Outcome::Warn(detail),
    }
}

fn criterion10() -> Outcome {
    let op = fixtures::same_head();
    let simplistic = CheckConfig {
        variant: DSetVariant::Simplistic,
        ..CheckConfig::default()
    };
    let bad = harness::check_theorems(&op, &simplistic).status_of("pwfs_approximates_pas");
    let good =
        harness::check_theorems(&op, &CheckConfig::default()).status_of("pwfs_approximates_pas");
    check(
        bad == Some(harness::Status::Fail) && good == Some(harness::Status::Pass),
        format!("approximation check: simplistic={bad:?} full={good:?}"),
    )
}

fn main() -> ExitCode {
    let mut results = vec![
        ("1 mutual blocking", criterion1()),
        ("2 settled preference", criterion2()),
        ("3 same-head priorities", criterion3()),
        ("4 removal-set micro-check", criterion4()),
        ("5 closure check", criterion5()),
        ("6 defeasible translation", criterion6()),
    ];
    let cfg = CheckConfig {
        subset_pairs: SUBSET_PAIRS,
        ..CheckConfig::default()
    };
    let (batch, took) = timed(|| run_batch(&GeneratorConfig::default(), 0..RANDOM_PROGRAMS, &cfg));
    results.push(("7 property suite", criterion7(&batch, took)));
    results.push(("8 oracle equivalence", criterion8(&batch)));
    results.push(("9 scaling probe", criterion9()));
    results.push(("10 negative control", criterion10()));

    let mut hard = 0;
    for (name, outcome) in &results {
        let (tag, detail) = match outcome {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Fail(d) => {
                hard += 1;
                ("FAIL", d)
            }
            Outcome::KnownConflict(d) => ("FAIL (known conflict, not fatal)", d),
            Outcome::Warn(d) => ("WARN", d),
        };
        println!("criterion {name}: {tag} — {detail}");
    }
    if hard == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{hard} criteria failed");
        ExitCode::FAILURE
    }
}
