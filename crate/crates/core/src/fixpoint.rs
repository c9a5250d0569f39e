use crate::error::FixpointDivergence;

/// The iterates of a fixpoint computation, starting at index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixpointTrace<T> {
    pub steps: Vec<(usize, T)>,
    /// Index of the first iterate that the operator maps to itself.
    pub converged_at: usize,
}

impl<T> FixpointTrace<T> {
    pub fn result(&self) -> &T {
        &self.steps.last().expect("a trace is never empty").1
    }

    pub fn into_result(mut self) -> T {
        self.steps.pop().expect("a trace is never empty").1
    }

    /// Number of operator applications performed.
    pub fn applications(&self) -> usize {
        self.steps.len() - 1
    }
}

/// Applies `f` from `start` until two consecutive iterates agree, giving up
/// after `cap` applications.
pub fn iterate<T: Clone + PartialEq>(
    operator: &'static str,
    start: T,
    cap: usize,
    mut f: impl FnMut(&T) -> T,
) -> Result<FixpointTrace<T>, FixpointDivergence> {
    let mut steps = vec![(0, start)];
    for i in 1..=cap {
        let next = f(&steps[i - 1].1);
        let done = next == steps[i - 1].1;
        steps.push((i, next));
        if done {
            return Ok(FixpointTrace {
                steps,
                converged_at: i - 1,
            });
        }
    }
    Err(FixpointDivergence { operator, cap })
}

/// Like [`iterate`] without keeping the trace. Used for the inner
/// consequence loops, where divergence can only be a bug.
pub(crate) fn close<T: PartialEq>(
    operator: &'static str,
    start: T,
    cap: usize,
    mut f: impl FnMut(&T) -> T,
) -> T {
    let mut current = start;
    for _ in 0..cap {
        let next = f(&current);
        if next == current {
            return current;
        }
        current = next;
    }
    panic!("{}", FixpointDivergence { operator, cap });
}

/// Convergence cap for a universe of `n` literals.
pub fn cap_for(universe_len: usize) -> usize {
    universe_len + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_every_iterate() {
        let t = iterate("halve", 8u32, 10, |x| x / 2).unwrap();
        let values: Vec<u32> = t.steps.iter().map(|(_, v)| *v).collect();
        assert_eq!(values, [8, 4, 2, 1, 0, 0]);
        assert_eq!(t.converged_at, 4);
        assert_eq!(*t.result(), 0);
        assert_eq!(t.applications(), 5);
    }

    #[test]
    fn reports_divergence() {
        let e = iterate("flip", false, 3, |b| !b).unwrap_err();
        assert_eq!(
            e,
            FixpointDivergence {
                operator: "flip",
                cap: 3
            }
        );
    }

    #[test]
    #[should_panic(expected = "did not converge")]
    fn close_panics_past_cap() {
        close("count", 0u32, 5, |x| x + 1);
    }
}
