//! Enumeration of prime pairs `p, p+k` and exact sign censuses of
//! `T(p) = phi(p-1) - phi(p+k-1)` and of its normalized counterpart `S(p)`.
//!
//! Sign decisions never touch floating point: `T` compares two totients,
//! and the sign of `S` is decided by cross-multiplying
//! `phi(p-1) * (p+k-1)` against `phi(p+k-1) * (p-1)` in 128-bit integers.
//!
//! A census is computed window by window; each window owns the pairs whose
//! smaller element lies inside it and reads totients from a window extended
//! by `k`, so windows are independent and the merge is a plain componentwise
//! sum.  Any partition of the scope therefore produces identical results,
//! in any merge order.

use alloc::vec::Vec;

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::primes::{is_prime_u64, nth_prime_with, Sieve, SieveConfig};

/// What part of the pair population a census covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusScope {
    /// Pairs with `p <= x`.
    UpToX(u64),
    /// `p` ranges over the first `N` primes; `p+k` is tested for primality
    /// independently and may exceed the `N`-th prime.
    FirstNPrimes(u64),
}

impl CensusScope {
    fn validate(&self) -> Result<()> {
        match *self {
            CensusScope::UpToX(x) if x < 3 => Err(Error::Domain {
                what: "UP_TO_X scope requires bound >= 3",
                value: x,
            }),
            CensusScope::FirstNPrimes(n) if n < 1 => Err(Error::Domain {
                what: "FIRST_N_PRIMES scope requires bound >= 1",
                value: n,
            }),
            _ => Ok(()),
        }
    }
}

/// Sign tallies over all pairs in scope.  Mergeable: any window partition
/// sums to the single-pass result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusResult {
    pub k: u64,
    pub scope: CensusScope,
    pub pair_count: u64,
    pub t_neg: u64,
    pub t_zero: u64,
    pub t_pos: u64,
    pub s_neg: u64,
    pub s_zero: u64,
    pub s_pos: u64,
    /// Pairs with `S(p) * T(p) > 0`.
    pub st_agree: u64,
}

impl CensusResult {
    fn zero(k: u64, scope: CensusScope) -> CensusResult {
        CensusResult {
            k,
            scope,
            pair_count: 0,
            t_neg: 0,
            t_zero: 0,
            t_pos: 0,
            s_neg: 0,
            s_zero: 0,
            s_pos: 0,
            st_agree: 0,
        }
    }

    /// Componentwise sum; both sides must describe the same census.
    pub fn merge(&mut self, o: &CensusResult) {
        debug_assert_eq!(self.k, o.k);
        debug_assert_eq!(self.scope, o.scope);
        self.pair_count += o.pair_count;
        self.t_neg += o.t_neg;
        self.t_zero += o.t_zero;
        self.t_pos += o.t_pos;
        self.s_neg += o.s_neg;
        self.s_zero += o.s_zero;
        self.s_pos += o.s_pos;
        self.st_agree += o.st_agree;
    }

    fn tally(&mut self, p: u64, k: u64, phi_a: u64, phi_b: u64) {
        self.pair_count += 1;
        let t = phi_a.cmp(&phi_b);
        match t {
            core::cmp::Ordering::Less => self.t_neg += 1,
            core::cmp::Ordering::Equal => self.t_zero += 1,
            core::cmp::Ordering::Greater => self.t_pos += 1,
        }
        let sa = phi_a as u128 * (p + k - 1) as u128;
        let sb = phi_b as u128 * (p - 1) as u128;
        let s = sa.cmp(&sb);
        match s {
            core::cmp::Ordering::Less => self.s_neg += 1,
            core::cmp::Ordering::Equal => self.s_zero += 1,
            core::cmp::Ordering::Greater => self.s_pos += 1,
        }
        if s == t && t != core::cmp::Ordering::Equal {
            self.st_agree += 1;
        }
    }
}

/// Divisibility constraints imposed on pairs, mirroring the hypotheses
/// under which the constrained pair counts have predicted densities.
///
/// With `tau_k = 0` every `q` must divide `p-1` and the optional `r` must
/// divide `p+k-1`; with `tau_k = k` the roles are mirrored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSpec {
    pub q_divisors: Vec<u64>,
    pub r_divisor: Option<u64>,
    pub tau_k: u64,
}

impl ConstraintSpec {
    pub fn validate(&self, k: u64) -> Result<()> {
        validate_k(k)?;
        if self.tau_k != 0 && self.tau_k != k {
            return Err(Error::Domain {
                what: "tau_k must be 0 or k",
                value: self.tau_k,
            });
        }
        // Orientation decides which side of k(k-1)/k(k+1) each prime must
        // avoid: q constrains p-1+tau, r constrains the mirrored side.
        let (q_avoid, r_avoid) = if self.tau_k == 0 {
            (k + 1, k - 1)
        } else {
            (k - 1, k + 1)
        };
        let mut prev = 0u64;
        for &q in &self.q_divisors {
            if q < 5 || !is_prime_u64(q) {
                return Err(Error::Constraint {
                    prime: q,
                    reason: "constraint divisors must be primes >= 5",
                });
            }
            if q <= prev {
                return Err(Error::Constraint {
                    prime: q,
                    reason: "constraint divisors must be strictly increasing",
                });
            }
            if k % q == 0 || q_avoid % q == 0 {
                return Err(Error::Constraint {
                    prime: q,
                    reason: "q must not divide k(k+tau-orientation term)",
                });
            }
            prev = q;
        }
        if let Some(r) = self.r_divisor {
            if r < 5 || !is_prime_u64(r) {
                return Err(Error::Constraint {
                    prime: r,
                    reason: "constraint divisors must be primes >= 5",
                });
            }
            if self.q_divisors.contains(&r) {
                return Err(Error::Constraint {
                    prime: r,
                    reason: "r must not belong to the q set",
                });
            }
            if k % r == 0 || r_avoid % r == 0 {
                return Err(Error::Constraint {
                    prime: r,
                    reason: "r violates the coprimality hypotheses",
                });
            }
        }
        Ok(())
    }

    fn accepts(&self, p: u64, k: u64) -> bool {
        let a = p - 1 + self.tau_k;
        if self.q_divisors.iter().any(|&q| a % q != 0) {
            return false;
        }
        if let Some(r) = self.r_divisor {
            let b = p - 1 + (k - self.tau_k);
            if b % r != 0 {
                return false;
            }
        }
        true
    }
}

fn validate_k(k: u64) -> Result<()> {
    if k < 2 || k % 2 != 0 {
        // p and p+k would have opposite parity, killing all pairs with p > 2.
        return Err(Error::Domain {
            what: "k must be a positive even integer",
            value: k,
        });
    }
    Ok(())
}

/// A prepared census over one scope for one or more values of `k`.
///
/// Windows are independent given the shared read-only sieve, so
/// [`CensusJob::census_window`] may be called concurrently from many
/// threads; merging the per-window results in any order reproduces the
/// sequential census exactly.
#[derive(Debug)]
pub struct CensusJob {
    ks: Vec<u64>,
    scope: CensusScope,
    x_max: u64,
    k_max: u64,
    windows: Vec<(u64, u64)>,
    sieve: Sieve,
    constraints: Option<ConstraintSpec>,
}

impl CensusJob {
    pub fn new(ks: &[u64], scope: CensusScope, cfg: SieveConfig) -> Result<CensusJob> {
        Self::build(ks, scope, cfg, None)
    }

    pub fn with_constraints(
        k: u64,
        scope: CensusScope,
        cons: ConstraintSpec,
        cfg: SieveConfig,
    ) -> Result<CensusJob> {
        validate_k(k)?;
        cons.validate(k)?;
        Self::build(&[k], scope, cfg, Some(cons))
    }

    fn build(
        ks: &[u64],
        scope: CensusScope,
        cfg: SieveConfig,
        constraints: Option<ConstraintSpec>,
    ) -> Result<CensusJob> {
        if ks.is_empty() {
            return Err(Error::EmptyRange {
                what: "census needs at least one k",
            });
        }
        for &k in ks {
            validate_k(k)?;
        }
        scope.validate()?;
        cfg.validate()?;
        let k_max = *ks.iter().max().unwrap();
        let x_max = match scope {
            CensusScope::UpToX(x) => x,
            CensusScope::FirstNPrimes(n) => nth_prime_with(cfg, n)?,
        };
        let top = x_max.checked_add(k_max).ok_or(Error::Capacity {
            what: "census scope overflows",
            requested: x_max,
            limit: cfg.limit,
        })?;
        if top > cfg.limit {
            return Err(Error::Capacity {
                what: "census scope exceeds sieve limit",
                requested: top,
                limit: cfg.limit,
            });
        }
        // The sieve windows are widened by k_max on the right, so give the
        // sieve that much headroom over the nominal segment length.
        let widened = cfg
            .segment_length
            .checked_add(k_max + 2)
            .ok_or(Error::Capacity {
                what: "segment length too large to widen by k",
                requested: cfg.segment_length,
                limit: u64::MAX - k_max - 2,
            })?;
        let sieve_cfg = SieveConfig {
            limit: cfg.limit.max(top),
            segment_length: widened,
        };
        let sieve = Sieve::for_range(sieve_cfg, top)?;
        let mut windows = Vec::new();
        let mut lo = 3u64;
        while lo <= x_max {
            let hi = (lo + cfg.segment_length).min(x_max + 1);
            windows.push((lo, hi));
            lo = hi;
        }
        Ok(CensusJob {
            ks: ks.to_vec(),
            scope,
            x_max,
            k_max,
            windows,
            sieve,
            constraints,
        })
    }

    pub fn window_count(&self) -> usize {
        self.windows.len()
    }

    pub fn ks(&self) -> &[u64] {
        &self.ks
    }

    pub fn scope(&self) -> CensusScope {
        self.scope
    }

    /// Largest `p` the census considers (the scope bound, or the N-th prime).
    pub fn x_max(&self) -> u64 {
        self.x_max
    }

    /// Zero tallies, one per `k`; the identity element for merging.
    pub fn empty_results(&self) -> Vec<CensusResult> {
        self.ks
            .iter()
            .map(|&k| CensusResult::zero(k, self.scope))
            .collect()
    }

    /// Tallies for the pairs owned by window `idx`, one result per `k`.
    pub fn census_window(&self, idx: usize) -> Result<Vec<CensusResult>> {
        let (lo, hi) = self.windows[idx];
        let pw = self.sieve.prime_window(lo, hi + self.k_max)?;
        let fw = self.sieve.phi_window(lo - 1, hi + self.k_max - 1)?;
        let mut out: Vec<CensusResult> = self
            .ks
            .iter()
            .map(|&k| CensusResult::zero(k, self.scope))
            .collect();
        for p in pw.primes() {
            if p >= hi {
                break;
            }
            let phi_a = fw.phi_of(p - 1);
            for (j, &k) in self.ks.iter().enumerate() {
                if !pw.is_prime(p + k) {
                    continue;
                }
                if let Some(cons) = &self.constraints {
                    if !cons.accepts(p, k) {
                        continue;
                    }
                }
                out[j].tally(p, k, phi_a, fw.phi_of(p + k - 1));
            }
        }
        Ok(out)
    }

    /// Sequential run over all windows.
    pub fn run(&self) -> Result<Vec<CensusResult>> {
        let mut acc: Vec<CensusResult> = self
            .ks
            .iter()
            .map(|&k| CensusResult::zero(k, self.scope))
            .collect();
        for idx in 0..self.windows.len() {
            for (a, w) in acc.iter_mut().zip(self.census_window(idx)?) {
                a.merge(&w);
            }
        }
        Ok(acc)
    }
}

/// Exact sign census of one `k` under the default configuration.
pub fn census(k: u64, scope: CensusScope) -> Result<CensusResult> {
    census_with(k, scope, SieveConfig::default())
}

pub fn census_with(k: u64, scope: CensusScope, cfg: SieveConfig) -> Result<CensusResult> {
    Ok(CensusJob::new(&[k], scope, cfg)?.run()?.remove(0))
}

/// Census restricted to pairs satisfying a [`ConstraintSpec`].
pub fn constrained_census(
    k: u64,
    scope: CensusScope,
    cons: ConstraintSpec,
) -> Result<CensusResult> {
    let job = CensusJob::with_constraints(k, scope, cons, SieveConfig::default())?;
    Ok(job.run()?.remove(0))
}

/// Count pairs whose `T(p)` is divisible by `2^ell` (`T = 0` counts),
/// together with the total pair count.
pub fn divisibility_census(k: u64, scope: CensusScope, ell: u32) -> Result<(u64, u64)> {
    divisibility_census_with(k, scope, ell, SieveConfig::default())
}

pub fn divisibility_census_with(
    k: u64,
    scope: CensusScope,
    ell: u32,
    cfg: SieveConfig,
) -> Result<(u64, u64)> {
    if ell < 1 {
        return Err(Error::Domain {
            what: "ell must be positive",
            value: ell as u64,
        });
    }
    let job = CensusJob::new(&[k], scope, cfg)?;
    let mut divisible = 0u64;
    let mut total = 0u64;
    for idx in 0..job.window_count() {
        let (lo, hi) = job.windows[idx];
        let pw = job.sieve.prime_window(lo, hi + k)?;
        let fw = job.sieve.phi_window(lo - 1, hi + k - 1)?;
        for p in pw.primes() {
            if p >= hi {
                break;
            }
            if !pw.is_prime(p + k) {
                continue;
            }
            total += 1;
            let diff = fw.phi_of(p - 1).abs_diff(fw.phi_of(p + k - 1));
            let ok = if ell >= 64 {
                diff == 0
            } else {
                diff & ((1u64 << ell) - 1) == 0
            };
            if ok {
                divisible += 1;
            }
        }
    }
    Ok((divisible, total))
}

/// A prime pair whose surrounding totient arguments are both `k`-smooth.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmoothPair {
    pub p: u64,
    /// Whether `S(p) = 0`, i.e. `p-1` and `p+k-1` share their prime set.
    pub s_is_zero: bool,
}

/// All pairs `p, p+k` with `p <= search_limit` whose `p-1` and `p+k-1`
/// both have largest prime factor at most `k`.  These are the only
/// candidates for `S(p) = 0`; each is tested for that equality exactly.
pub fn smooth_pair_search(k: u64, search_limit: u64) -> Result<Vec<SmoothPair>> {
    validate_k(k)?;
    if search_limit < 3 {
        // No pair has p < 3, so tiny limits are empty rather than an error.
        return Ok(Vec::new());
    }
    let cfg = SieveConfig::default();
    let job = CensusJob::new(&[k], CensusScope::UpToX(search_limit), cfg)?;
    let mut out = Vec::new();
    for idx in 0..job.window_count() {
        let (lo, hi) = job.windows[idx];
        let pw = job.sieve.prime_window(lo, hi + k)?;
        let (fw, largest) = job
            .sieve
            .phi_window_with_largest_factor(lo - 1, hi + k - 1)?;
        let lf = |n: u64| largest[(n - (lo - 1)) as usize];
        for p in pw.primes() {
            if p >= hi {
                break;
            }
            if !pw.is_prime(p + k) {
                continue;
            }
            if lf(p - 1) > k || lf(p + k - 1) > k {
                continue;
            }
            let a = fw.phi_of(p - 1) as u128 * (p + k - 1) as u128;
            let b = fw.phi_of(p + k - 1) as u128 * (p - 1) as u128;
            out.push(SmoothPair {
                p,
                s_is_zero: a == b,
            });
        }
    }
    Ok(out)
}

/// Ascending stream of primes `p` in scope with `p+k` prime.
pub fn enumerate_pairs(k: u64, scope: CensusScope) -> Result<PairIter> {
    let job = CensusJob::new(&[k], scope, SieveConfig::default())?;
    Ok(PairIter {
        job,
        next_window: 0,
        buf: Vec::new(),
        pos: 0,
    })
}

#[derive(Debug)]
pub struct PairIter {
    job: CensusJob,
    next_window: usize,
    buf: Vec<u64>,
    pos: usize,
}

impl Iterator for PairIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            if self.pos < self.buf.len() {
                let p = self.buf[self.pos];
                self.pos += 1;
                return Some(p);
            }
            if self.next_window >= self.job.windows.len() {
                return None;
            }
            let (lo, hi) = self.job.windows[self.next_window];
            self.next_window += 1;
            let k = self.job.ks[0];
            // Window sieving cannot fail here: the job validated the range.
            let pw = self
                .job
                .sieve
                .prime_window(lo, hi + k)
                .expect("window in range");
            self.buf.clear();
            self.pos = 0;
            self.buf.extend(
                pw.primes()
                    .take_while(|&p| p < hi)
                    .filter(|&p| pw.is_prime(p + k)),
            );
        }
    }
}

/// First-order predicted pair count `c_k * x / (log x)^2`, for side-by-side
/// reporting with the empirical census.
pub fn predicted_count(k: u64, x: f64, c_k: f64) -> Result<f64> {
    validate_k(k)?;
    if x.is_nan() || x < 3.0 {
        return Err(Error::Domain {
            what: "predicted_count requires x >= 3",
            value: x as u64,
        });
    }
    if c_k.is_nan() || c_k <= 0.0 {
        return Err(Error::Domain {
            what: "predicted_count requires a positive constant",
            value: 0,
        });
    }
    let ln_x = Dd::from_f64(x).ln();
    Ok((Dd::from_f64(c_k).mul_f64(x) / (ln_x * ln_x)).to_f64())
}
