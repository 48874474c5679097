//! Threaded drivers for coloring searches.
//!
//! Work is cut into a partition that does not depend on the thread count:
//! exhaustive search into lex-ordered prefix jobs, randomized search into
//! contiguous restart chunks. Results reduce in partition order keeping the
//! first strict minimum, so output is identical for every `--threads` value.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use rado_core::extremal::{
    coloring_space, finish_coloring_report, randomized_min, MonoProblem, SearchBudget, SearchMode, SearchReport,
    RANDOM_RESTARTS,
};
use rado_core::{Coloring, Error, GroupSpec, IntMatrix};

/// Prefix jobs aim for at least this many partial colorings.
const TARGET_JOBS: u128 = 64;

/// Runs `jobs` on up to `threads` workers and returns results in job order.
fn run_jobs<J: Sync, R: Send>(jobs: &[J], threads: usize, work: impl Fn(&J) -> R + Sync) -> Vec<R> {
    let threads = threads.clamp(1, jobs.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..jobs.len()).map(|_| None).collect());
    thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(job) = jobs.get(i) else { break };
                let r = work(job);
                slots.lock().expect("worker panicked")[i] = Some(r);
            });
        }
    });
    slots.into_inner().expect("worker panicked").into_iter().map(|r| r.expect("every job ran")).collect()
}

fn prefix_depth(g: &GroupSpec, r: u32) -> usize {
    let free = g.order().saturating_sub(1) as usize;
    let mut depth = 0;
    let mut jobs = 1u128;
    while depth < free && jobs < TARGET_JOBS && r > 1 {
        depth += 1;
        jobs = jobs.saturating_mul(r as u128);
    }
    depth
}

/// Least monochromatic count over `r`-colorings of `G ∖ {0}`.
pub fn search_colorings(
    a: &IntMatrix,
    g: &GroupSpec,
    r: u32,
    budget: &SearchBudget,
    bound: u128,
    threads: usize,
) -> Result<SearchReport<Coloring>, Error> {
    let problem = MonoProblem::new(a, g, r, bound)?;
    let (min, colors, evaluated) = match budget.mode {
        SearchMode::Exhaustive => {
            let space = coloring_space(g, r);
            if space > budget.max_candidates {
                return Err(Error::Budget { needed: space, budget: budget.max_candidates });
            }
            let prefixes = problem.exhaustive_prefixes(prefix_depth(g, r), budget.symmetry_reduction);
            let results = run_jobs(&prefixes, threads, |p| problem.exhaustive_from(p, budget.symmetry_reduction));
            let mut best: Option<(u64, Vec<u32>)> = None;
            let mut evaluated = 0u128;
            for (min, colors, visited) in results {
                evaluated += visited;
                if best.as_ref().is_none_or(|(b, _)| min < *b) {
                    best = Some((min, colors));
                }
            }
            let (min, colors) = best.expect("at least one prefix job");
            (min, colors, evaluated)
        }
        SearchMode::Randomized => {
            let chunks = threads.clamp(1, RANDOM_RESTARTS as usize) as u64;
            let ranges: Vec<_> = (0..chunks)
                .map(|i| i * RANDOM_RESTARTS / chunks..(i + 1) * RANDOM_RESTARTS / chunks)
                .filter(|r| !r.is_empty())
                .collect();
            let results = run_jobs(&ranges, threads, |range| randomized_min(&problem, budget, range.clone()));
            let mut best: Option<(u64, Vec<u32>)> = None;
            let mut evaluated = 0u128;
            // A serial run stops at its first zero; later chunks do not count.
            for out in results {
                evaluated += out.evaluated;
                if best.as_ref().is_none_or(|(b, _)| out.min < *b) {
                    best = Some((out.min, out.colors));
                }
                if out.min == 0 {
                    break;
                }
            }
            let (min, colors) = best.expect("at least one restart chunk");
            (min, colors, evaluated)
        }
    };
    finish_coloring_report(a, g, r, budget.mode, min, &colors, evaluated)
}
