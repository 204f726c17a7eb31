//! Enumeration limits and chunked data-parallel execution.
//!
//! Every bulk enumeration splits its index space into fixed-size chunks,
//! computes a partial result per chunk and merges partials with an
//! associative, commutative operation (set union, bitwise or, addition).
//! Chunk boundaries do not depend on the worker count, so results are
//! identical for any degree of parallelism.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Default refusal threshold on the number of tuples one call may visit.
pub const DEFAULT_CAP: u128 = 1_000_000_000;

/// Items per chunk in the outermost loop of an enumeration.
pub const CHUNK: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Enumeration {
    /// Maximum number of tuples a single enumeration may visit.
    pub cap: u128,
    /// 0 = all available cores, 1 = run on the calling thread.
    pub workers: usize,
}

impl Default for Enumeration {
    fn default() -> Self {
        Enumeration {
            cap: DEFAULT_CAP,
            workers: 0,
        }
    }
}

impl Enumeration {
    pub fn sequential() -> Self {
        Enumeration {
            workers: 1,
            ..Self::default()
        }
    }

    pub fn with_cap(cap: u128) -> Self {
        Enumeration {
            cap,
            ..Self::default()
        }
    }

    /// Refuses `count` tuples above the cap.
    pub fn admit(&self, count: u128) -> Result<()> {
        if count > self.cap {
            Err(Error::CapExceeded {
                requested: count,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    /// Maps chunks of `0..len` and folds the partials with `merge`.
    pub fn map_reduce<T, M, R>(&self, len: usize, identity: T, map: M, merge: R) -> T
    where
        T: Send + Sync + Clone,
        M: Fn(std::ops::Range<usize>) -> T + Sync + Send,
        R: Fn(T, T) -> T + Sync + Send,
    {
        let chunks: Vec<std::ops::Range<usize>> = (0..len)
            .step_by(CHUNK)
            .map(|start| start..(start + CHUNK).min(len))
            .collect();
        if self.workers == 1 {
            return chunks.into_iter().map(map).fold(identity, merge);
        }
        let run = || {
            chunks
                .into_par_iter()
                .map(&map)
                .reduce(|| identity.clone(), &merge)
        };
        if self.workers == 0 || rayon::current_thread_index().is_some() {
            run()
        } else {
            match rayon::ThreadPoolBuilder::new().num_threads(self.workers).build() {
                Ok(pool) => pool.install(run),
                Err(_) => run(),
            }
        }
    }
}

/// `base^exp` as a `u128`, saturating.
pub fn saturating_pow(base: usize, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base as u128))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn result_is_independent_of_workers() {
        let sum = |e: Enumeration| e.map_reduce(1000, 0u64, |r| r.map(|i| i as u64).sum(), |a, b| a + b);
        let seq = sum(Enumeration::sequential());
        assert_eq!(seq, 499_500);
        for workers in [0, 2, 3, 8] {
            assert_eq!(sum(Enumeration { workers, ..Default::default() }), seq);
        }
    }

    #[test]
    fn cap_refusal() {
        let e = Enumeration::with_cap(10);
        assert!(e.admit(10).is_ok());
        assert_eq!(e.admit(11), Err(Error::CapExceeded { requested: 11, cap: 10 }));
    }
}
