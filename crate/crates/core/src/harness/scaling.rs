//! Timing of the unprioritized and preferred well-founded computations on
//! chain programs of growing size.

use std::time::{Duration, Instant};

use crate::classical::well_founded_model;
use crate::pwfs::{preferred_wf_model, DSetVariant};
use crate::syntax::{Atom, Literal, OrderedProgram, Rule};

/// Minimum wall time spent per measurement before taking the median.
const MIN_SAMPLE_TIME: Duration = Duration::from_millis(50);
const MIN_RUNS: usize = 3;

/// `r_i: a_i :- not a_{i+1}` for `i = 1..=n`, totally ordered with
/// `r_{i+1} < r_i`.
pub fn chain_program(n: usize) -> OrderedProgram {
    let atom = |i: usize| Literal::positive(Atom::new(&format!("a{i}")).expect("valid name"));
    let rules = (1..=n)
        .map(|i| Rule::new(format!("r{i}"), atom(i), [], [atom(i + 1)]).expect("valid name"))
        .collect();
    let pairs = (1..n).map(|i| (format!("r{}", i + 1), format!("r{i}")));
    OrderedProgram::new(rules, pairs).expect("chain order is acyclic")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingRow {
    pub size: usize,
    pub wfs_secs: f64,
    pub pwfs_secs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingReport {
    pub rows: Vec<ScalingRow>,
    /// Least-squares slope of log time against log size; `None` below two
    /// distinct sizes.
    pub wfs_exponent: Option<f64>,
    pub pwfs_exponent: Option<f64>,
}

fn median_secs(mut run: impl FnMut()) -> f64 {
    let started = Instant::now();
    let mut samples = Vec::new();
    while samples.len() < MIN_RUNS || started.elapsed() < MIN_SAMPLE_TIME {
        let t = Instant::now();
        run();
        samples.push(t.elapsed().as_secs_f64());
    }
    samples.sort_by(f64::total_cmp);
    samples[samples.len() / 2]
}

/// Times both computations at every size, sequentially.
pub fn scaling_probe(sizes: &[usize]) -> ScalingReport {
    let rows: Vec<ScalingRow> = sizes
        .iter()
        .map(|&size| {
            let op = chain_program(size);
            let wfs_secs = median_secs(|| {
                well_founded_model(op.program()).expect("chain converges");
            });
            let pwfs_secs = median_secs(|| {
                preferred_wf_model(&op, DSetVariant::Full).expect("chain converges");
            });
            ScalingRow {
                size,
                wfs_secs,
                pwfs_secs,
            }
        })
        .collect();
    let fit = |f: fn(&ScalingRow) -> f64| {
        fitted_exponent(
            &rows
                .iter()
                .map(|r| (r.size as f64, f(r)))
                .collect::<Vec<_>>(),
        )
    };
    ScalingReport {
        wfs_exponent: fit(|r| r.wfs_secs),
        pwfs_exponent: fit(|r| r.pwfs_secs),
        rows,
    }
}

/// Slope of the least-squares line through `(ln x, ln y)`. Points with a
/// non-positive coordinate are ignored.
pub fn fitted_exponent(points: &[(f64, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    (logs.len() >= 2 && sxx > 0.0).then(|| sxy / sxx)
}
