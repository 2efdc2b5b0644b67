//! Segmented generation of primes, factorizations and Euler totients.
//!
//! Everything here is exact integer arithmetic.  The segmented windows are
//! value-like and independent of each other, so disjoint windows may be
//! computed concurrently against a shared read-only [`Sieve`].

use alloc::vec;
use alloc::vec::Vec;

use crate::dd::Dd;
use crate::error::{Error, Result};

/// Bounds for sieve construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SieveConfig {
    /// Largest integer any operation may touch.
    pub limit: u64,
    /// Window width, in integers.
    pub segment_length: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            limit: 1 << 40,
            segment_length: 1 << 20,
        }
    }
}

impl SieveConfig {
    pub fn validate(&self) -> Result<()> {
        if self.limit < 2 {
            return Err(Error::Domain {
                what: "sieve limit must be at least 2",
                value: self.limit,
            });
        }
        if self.segment_length < 64 {
            return Err(Error::Domain {
                what: "segment length must be at least 64",
                value: self.segment_length,
            });
        }
        if self.segment_length > self.limit {
            return Err(Error::Domain {
                what: "segment length must not exceed the limit",
                value: self.segment_length,
            });
        }
        Ok(())
    }
}

/// Complete prime factorization, exponents positive, primes ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

/// Exact `phi(n)` for every `n` in `[lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiWindow {
    pub lo: u64,
    pub hi: u64,
    pub phi_values: Vec<u64>,
}

impl PhiWindow {
    #[inline]
    pub fn phi_of(&self, n: u64) -> u64 {
        debug_assert!(n >= self.lo && n < self.hi);
        self.phi_values[(n - self.lo) as usize]
    }
}

/// Packed primality bits for `[lo, hi)`.
#[derive(Clone, Debug)]
pub struct PrimeWindow {
    lo: u64,
    hi: u64,
    words: Vec<u64>,
}

impl PrimeWindow {
    #[inline]
    pub fn lo(&self) -> u64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> u64 {
        self.hi
    }

    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        debug_assert!(n >= self.lo && n < self.hi);
        let i = (n - self.lo) as usize;
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Ascending primes in the window.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(move |(wi, &w)| {
            let lo = self.lo;
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some(lo + (wi as u64) * 64 + b as u64)
            })
        })
    }

    #[inline]
    fn clear(&mut self, i: usize) {
        self.words[i >> 6] &= !(1u64 << (i & 63));
    }
}

/// Base-prime table driving windowed sieving over `[1, max]`.
#[derive(Debug)]
pub struct Sieve {
    cfg: SieveConfig,
    max: u64,
    base: Vec<u64>,
}

impl Sieve {
    /// A sieve able to produce windows with values up to `max`.
    pub fn for_range(cfg: SieveConfig, max: u64) -> Result<Sieve> {
        cfg.validate()?;
        if max > cfg.limit {
            return Err(Error::Capacity {
                what: "sieve range",
                requested: max,
                limit: cfg.limit,
            });
        }
        let base = small_primes_up_to(max.isqrt().max(2));
        Ok(Sieve { cfg, max, base })
    }

    #[inline]
    pub fn max(&self) -> u64 {
        self.max
    }

    #[inline]
    pub fn config(&self) -> SieveConfig {
        self.cfg
    }

    fn check_window(&self, lo: u64, hi: u64) -> Result<()> {
        if lo < 1 || lo >= hi {
            return Err(Error::Domain {
                what: "window bounds must satisfy 1 <= lo < hi",
                value: lo,
            });
        }
        if hi - 1 > self.max {
            return Err(Error::Capacity {
                what: "window end beyond sieve range",
                requested: hi - 1,
                limit: self.max,
            });
        }
        if hi - lo > self.cfg.segment_length {
            return Err(Error::Capacity {
                what: "window wider than segment length",
                requested: hi - lo,
                limit: self.cfg.segment_length,
            });
        }
        Ok(())
    }

    /// Primality bits over `[lo, hi)`.
    pub fn prime_window(&self, lo: u64, hi: u64) -> Result<PrimeWindow> {
        self.check_window(lo, hi)?;
        let w = (hi - lo) as usize;
        let mut win = PrimeWindow {
            lo,
            hi,
            words: vec![!0u64; w.div_ceil(64)],
        };
        // Trim tail bits past the window.
        if w % 64 != 0 {
            let last = win.words.len() - 1;
            win.words[last] = !0u64 >> (64 - w % 64);
        }
        for n in lo..2.min(hi) {
            win.clear((n - lo) as usize);
        }
        for &q in &self.base {
            if q * q >= hi {
                break;
            }
            let start = (q * q).max(lo.div_ceil(q) * q);
            let mut j = start;
            while j < hi {
                win.clear((j - lo) as usize);
                j += q;
            }
        }
        Ok(win)
    }

    /// Exact totients over `[lo, hi)`.
    ///
    /// Each slot starts at its own value; every base prime `q` dividing the
    /// slot contributes the factor `(q-1)/q` by an exact divide-then-multiply
    /// step, while a separate residue array strips full prime powers.  A
    /// residue left above 1 is a prime factor larger than `sqrt(hi)` and
    /// contributes its own `(r-1)/r`.
    pub fn phi_window(&self, lo: u64, hi: u64) -> Result<PhiWindow> {
        self.check_window(lo, hi)?;
        let mut phi: Vec<u64> = (lo..hi).collect();
        let mut rem: Vec<u64> = (lo..hi).collect();
        self.sieve_phi(lo, hi, &mut phi, &mut rem, |_, _| {});
        Ok(PhiWindow {
            lo,
            hi,
            phi_values: phi,
        })
    }

    /// Totients plus the largest prime factor of each slot (`1` for `n = 1`).
    pub fn phi_window_with_largest_factor(
        &self,
        lo: u64,
        hi: u64,
    ) -> Result<(PhiWindow, Vec<u64>)> {
        self.check_window(lo, hi)?;
        let mut phi: Vec<u64> = (lo..hi).collect();
        let mut rem: Vec<u64> = (lo..hi).collect();
        let mut largest: Vec<u64> = vec![1; (hi - lo) as usize];
        {
            let lf = &mut largest;
            self.sieve_phi(lo, hi, &mut phi, &mut rem, |i, q| lf[i] = q);
        }
        Ok((
            PhiWindow {
                lo,
                hi,
                phi_values: phi,
            },
            largest,
        ))
    }

    fn sieve_phi(
        &self,
        lo: u64,
        hi: u64,
        phi: &mut [u64],
        rem: &mut [u64],
        mut on_factor: impl FnMut(usize, u64),
    ) {
        for &q in &self.base {
            if q * q >= hi {
                break;
            }
            let start = lo.div_ceil(q) * q;
            let mut j = start;
            while j < hi {
                let i = (j - lo) as usize;
                phi[i] = phi[i] / q * (q - 1);
                rem[i] /= q;
                while rem[i] % q == 0 {
                    rem[i] /= q;
                }
                on_factor(i, q);
                j += q;
            }
        }
        for i in 0..phi.len() {
            let r = rem[i];
            if r > 1 {
                phi[i] = phi[i] / r * (r - 1);
                on_factor(i, r);
            }
        }
    }

    /// Aligned `[lo, hi)` chunks of at most one segment covering `[from, to]`.
    pub fn segments(&self, from: u64, to: u64) -> impl Iterator<Item = (u64, u64)> + '_ {
        let step = self.cfg.segment_length;
        let mut lo = from;
        core::iter::from_fn(move || {
            if lo > to {
                return None;
            }
            let hi = (lo + step).min(to + 1);
            let out = (lo, hi);
            lo = hi;
            Some(out)
        })
    }
}

/// Plain in-memory sieve; only used for base primes, so `n` stays near
/// `sqrt(limit)`.
fn small_primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut comp = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !comp[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                comp[j] = true;
                j += i;
            }
        }
    }
    out
}

/// All primes `<= limit`, ascending.
pub fn primes_up_to(limit: u64) -> Result<Vec<u64>> {
    primes_up_to_with(SieveConfig::default(), limit)
}

pub fn primes_up_to_with(cfg: SieveConfig, limit: u64) -> Result<Vec<u64>> {
    if limit < 2 {
        return Err(Error::EmptyRange {
            what: "primes_up_to needs limit >= 2",
        });
    }
    let sieve = Sieve::for_range(cfg, limit)?;
    let mut out = Vec::new();
    for (lo, hi) in sieve.segments(2, limit) {
        let win = sieve.prime_window(lo, hi)?;
        out.extend(win.primes());
    }
    Ok(out)
}

/// Proven-safe upper bound for the n-th prime: the classical
/// `p_n < n (ln n + ln ln n)` for `n >= 6`, a fixed table below that.
pub fn nth_prime_upper_bound(n: u64) -> Result<u64> {
    const SMALL: [u64; 5] = [2, 3, 5, 7, 11];
    if n == 0 {
        return Err(Error::EmptyRange {
            what: "prime index must be positive",
        });
    }
    if n <= 5 {
        return Ok(SMALL[(n - 1) as usize]);
    }
    let nf = Dd::from_u64(n);
    let ln_n = nf.ln();
    let bound = (nf * (ln_n + ln_n.ln())).to_f64();
    // Nudge upward so float rounding can never land below the true bound.
    Ok((bound * (1.0 + 1e-9)) as u64 + 2)
}

/// The n-th prime (1-indexed: `nth_prime(1) = 2`).
pub fn nth_prime(n: u64) -> Result<u64> {
    nth_prime_with(SieveConfig::default(), n)
}

pub fn nth_prime_with(cfg: SieveConfig, n: u64) -> Result<u64> {
    let bound = nth_prime_upper_bound(n)?;
    let sieve = Sieve::for_range(cfg, bound)?;
    let mut seen = 0u64;
    for (lo, hi) in sieve.segments(2, bound) {
        let win = sieve.prime_window(lo, hi)?;
        let c = win.count();
        if seen + c >= n {
            for p in win.primes() {
                seen += 1;
                if seen == n {
                    return Ok(p);
                }
            }
        }
        seen += c;
    }
    // Unreachable: the bound is proven to contain the n-th prime.
    Err(Error::Capacity {
        what: "nth prime bound too small",
        requested: n,
        limit: bound,
    })
}

/// The first `n` primes, ascending.
pub fn first_n_primes(n: u64) -> Result<Vec<u64>> {
    first_n_primes_with(SieveConfig::default(), n)
}

pub fn first_n_primes_with(cfg: SieveConfig, n: u64) -> Result<Vec<u64>> {
    let bound = nth_prime_upper_bound(n)?;
    let mut primes = primes_up_to_with(cfg, bound)?;
    debug_assert!(primes.len() as u64 >= n);
    primes.truncate(n as usize);
    Ok(primes)
}

/// Complete factorization by trial division; exact for any `u64`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Domain {
            what: "factorize requires n >= 1",
            value: 0,
        });
    }
    let mut m = n;
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            let mut e = 0u32;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(Factorization { n, factors })
}

/// Euler totient via factorization; the divide-before-multiply order keeps
/// every intermediate at most `n`.
pub fn phi(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    let mut result = n;
    for (q, _) in f.factors {
        result = result / q * (q - 1);
    }
    Ok(result)
}

/// One totient window under the default configuration.
pub fn phi_window(lo: u64, hi: u64) -> Result<PhiWindow> {
    if lo < 1 || lo >= hi {
        return Err(Error::Domain {
            what: "window bounds must satisfy 1 <= lo < hi",
            value: lo,
        });
    }
    let sieve = Sieve::for_range(SieveConfig::default(), hi - 1)?;
    sieve.phi_window(lo, hi)
}

/// Deterministic primality by trial division; intended for small inputs
/// such as constraint primes, not for bulk work.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
