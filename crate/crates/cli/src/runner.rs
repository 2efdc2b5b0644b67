//! Window-parallel census execution.
//!
//! Workers pull window indices from a shared counter and fold tallies into
//! thread-local accumulators; since the merge is a componentwise integer
//! sum, the combined result is identical for every thread count and
//! scheduling order.

use std::sync::atomic::{AtomicUsize, Ordering};

use pairbias_core::census::{CensusJob, CensusResult};

use crate::CliError;

pub fn run_census_job(
    job: &CensusJob,
    threads: usize,
    progress: bool,
) -> Result<Vec<CensusResult>, CliError> {
    let n = job.window_count();
    if threads <= 1 || n <= 1 {
        let mut acc = job.empty_results();
        for i in 0..n {
            merge_into(&mut acc, &job.census_window(i)?);
            if progress && (i + 1) % 32 == 0 {
                eprintln!("census: window {}/{}", i + 1, n);
            }
        }
        return Ok(acc);
    }

    let next = AtomicUsize::new(0);
    let done = AtomicUsize::new(0);
    let workers = threads.min(n);
    let partials = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                let next = &next;
                let done = &done;
                s.spawn(move || -> Result<Vec<CensusResult>, pairbias_core::Error> {
                    let mut acc = job.empty_results();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= n {
                            return Ok(acc);
                        }
                        merge_into(&mut acc, &job.census_window(i)?);
                        let d = done.fetch_add(1, Ordering::Relaxed) + 1;
                        if progress && d % 32 == 0 {
                            eprintln!("census: window {d}/{n}");
                        }
                    }
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .collect::<Vec<_>>()
    });

    let mut acc = job.empty_results();
    for p in partials {
        merge_into(&mut acc, &p?);
    }
    Ok(acc)
}

fn merge_into(acc: &mut [CensusResult], part: &[CensusResult]) {
    for (a, b) in acc.iter_mut().zip(part) {
        a.merge(b);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pairbias_core::census::CensusScope;
    use pairbias_core::primes::SieveConfig;

    #[test]
    fn thread_counts_agree() {
        let job = CensusJob::new(
            &[2, 6],
            CensusScope::UpToX(200_000),
            SieveConfig {
                segment_length: 1 << 14,
                ..SieveConfig::default()
            },
        )
        .unwrap();
        let seq = run_census_job(&job, 1, false).unwrap();
        for t in [2, 4, 7] {
            assert_eq!(run_census_job(&job, t, false).unwrap(), seq, "threads={t}");
        }
    }
}
