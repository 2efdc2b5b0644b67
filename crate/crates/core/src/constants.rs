//! The per-`k` constants behind the sign biases: the character `chi3`,
//! root counts `N_f`, the pair-correlation constants `C_k`, the minimal
//! auxiliary prime sets `Q`, the series `L_k`, `R_k`, `R_k'` (and their
//! `+`/`-` variants for `3 | k`), and the certified density lower bounds
//! for each sign class of `T(p)`.
//!
//! Every truncated series or product carries an explicit rigorous tail
//! bound, and published bounds are evaluated against the conservative end
//! of the enclosure, so they remain valid lower bounds for the true
//! (untruncated) quantities.

use alloc::vec::Vec;

use crate::dd::{ln_one_plus_recip, Dd};
use crate::error::{Error, Result};
use crate::primes::{is_prime_u64, Sieve, SieveConfig};

/// Default truncation point for the prime-indexed `R` series
/// (tail below `1.1e-7`).
pub const DEFAULT_R_CUTOFF: u64 = 10_000_000;

/// Default truncation point for the Euler product behind `C_k`
/// (relative tail below `1e-8`).
pub const DEFAULT_EULER_CUTOFF: u64 = 100_000_000;

/// The nontrivial character mod 3: `0, 1, -1` for `k = 0, 1, 2 (mod 3)`.
pub fn chi3(k: u64) -> i32 {
    match k % 3 {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Number of roots of `t(t+k) mod r`: 1 when `r | k`, else 2.
pub fn n_f(r: u64, k: u64) -> Result<u32> {
    validate_even_k(k)?;
    if !is_prime_u64(r) {
        return Err(Error::Domain {
            what: "N_f is defined at primes only",
            value: r,
        });
    }
    Ok(if k % r == 0 { 1 } else { 2 })
}

fn validate_even_k(k: u64) -> Result<()> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::Domain {
            what: "k must be a positive even integer",
            value: k,
        });
    }
    Ok(())
}

fn validate_cutoff(cutoff: u64) -> Result<()> {
    if cutoff < 1_000 {
        return Err(Error::Domain {
            what: "series cutoff must be at least 1000",
            value: cutoff,
        });
    }
    Ok(())
}

/// How a [`SeriesValue`]'s tail encloses the untruncated quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailKind {
    /// True value lies in `[value, value + tail_bound]`.
    Additive,
    /// True value lies in `[value * (1 - tail_bound), value * (1 + tail_bound)]`.
    Relative,
}

/// A truncated series or product value together with a rigorous bound on
/// everything past the cutoff.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: Dd,
    pub tail_bound: f64,
    pub cutoff: u64,
    pub kind: TailKind,
}

impl SeriesValue {
    pub fn value_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// Conservative upper end of the enclosure.
    pub fn upper(&self) -> Dd {
        match self.kind {
            TailKind::Additive => self.value.add_f64(self.tail_bound),
            TailKind::Relative => self.value * Dd::from_f64(1.0).add_f64(self.tail_bound),
        }
    }
}

/// The shared truncated Euler product `2 * prod_{3 <= p <= z} p(p-2)/(p-1)^2`.
///
/// All `C_k` are derived from this one product, so table-scale runs pay the
/// sieve cost once.
#[derive(Debug)]
pub struct EulerProduct {
    pub c2: SeriesValue,
}

impl EulerProduct {
    pub fn compute(cutoff: u64) -> Result<EulerProduct> {
        validate_cutoff(cutoff)?;
        let cfg = SieveConfig {
            limit: cutoff,
            segment_length: (1u64 << 22).min(cutoff),
        };
        let sieve = Sieve::for_range(cfg, cutoff)?;
        let mut prod = Dd::ONE;
        for (lo, hi) in sieve.segments(3, cutoff) {
            let pw = sieve.prime_window(lo, hi)?;
            for p in pw.primes() {
                // 1 - 1/(p-1)^2 = p(p-2) / (p-1)^2, exact rational.
                let num = p as u128 * (p - 2) as u128;
                let den = (p - 1) as u128 * (p - 1) as u128;
                prod = prod * Dd::from_ratio(num, den);
            }
        }
        // Primes beyond z are = 1 or 5 (mod 6), so p-1 runs over residues
        // 0 and 4 (mod 6); each log factor is bounded by 2/(p-1)^2, giving
        // sum s <= 4/z^2 + 2/(3z) and a relative enclosure e^s - 1 <= s + s^2.
        let z = cutoff as f64;
        let s = 4.0 / (z * z) + 2.0 / (3.0 * z);
        Ok(EulerProduct {
            c2: SeriesValue {
                value: prod.mul_f64(2.0),
                tail_bound: s + s * s,
                cutoff,
                kind: TailKind::Relative,
            },
        })
    }
}

/// `C_k`, depending only on the odd primes dividing `k`:
/// `C_k = C_2 * prod_{odd p | k} (p-1)/(p-2)`.
pub fn c_k(k: u64, cutoff: u64) -> Result<SeriesValue> {
    c_k_with(&EulerProduct::compute(cutoff)?, k)
}

pub fn c_k_with(euler: &EulerProduct, k: u64) -> Result<SeriesValue> {
    validate_even_k(k)?;
    let mut value = euler.c2.value;
    let mut m = k;
    while m % 2 == 0 {
        m /= 2;
    }
    let mut p = 3u64;
    while p * p <= m {
        if m % p == 0 {
            value = value * Dd::from_ratio((p - 1) as u128, (p - 2) as u128);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 2;
    }
    if m > 1 {
        if m > euler.c2.cutoff {
            return Err(Error::Capacity {
                what: "prime divisor of k beyond Euler product cutoff",
                requested: m,
                limit: euler.c2.cutoff,
            });
        }
        value = value * Dd::from_ratio((m - 1) as u128, (m - 2) as u128);
    }
    Ok(SeriesValue {
        value,
        tail_bound: euler.c2.tail_bound,
        cutoff: euler.c2.cutoff,
        kind: TailKind::Relative,
    })
}

/// Which sign machinery a `Q` set belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignMode {
    /// `3` does not divide `k`; the favored sign is `chi3(k)`.
    Chi3,
    /// `3 | k`, bound for the class `T(p) > 0`.
    Plus,
    /// `3 | k`, bound for the class `T(p) < 0`.
    Minus,
}

impl SignMode {
    /// The effective sign `s`: `Q` avoids divisors of `k(k-s)` and the `R`
    /// series excludes divisors of `k+s`.
    fn sign(self, k: u64) -> Result<i64> {
        match self {
            SignMode::Chi3 => match chi3(k) {
                0 => Err(Error::Domain {
                    what: "CHI3 mode requires 3 not dividing k",
                    value: k,
                }),
                c => Ok(c as i64),
            },
            SignMode::Plus | SignMode::Minus => {
                if k % 3 != 0 {
                    return Err(Error::Domain {
                        what: "PLUS/MINUS modes require 3 | k",
                        value: k,
                    });
                }
                Ok(if self == SignMode::Plus { 1 } else { -1 })
            }
        }
    }
}

/// The minimal ordered prime set certifying `L > R` for one sign class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSet {
    pub k: u64,
    pub sign_mode: SignMode,
    pub primes: Vec<u64>,
}

impl QSet {
    pub fn m(&self) -> usize {
        self.primes.len()
    }
}

/// Precomputed log-terms `ln(1 + 1/(r-1))` for all primes `5 <= r <= cutoff`.
///
/// One table serves every `k`, every `Q` search and every `R` evaluation at
/// that cutoff.
#[derive(Debug)]
pub struct RTable {
    cutoff: u64,
    primes: Vec<u64>,
    terms: Vec<Dd>,
}

impl RTable {
    pub fn build(cutoff: u64) -> Result<RTable> {
        validate_cutoff(cutoff)?;
        let cfg = SieveConfig {
            limit: cutoff,
            segment_length: (1u64 << 22).min(cutoff),
        };
        let sieve = Sieve::for_range(cfg, cutoff)?;
        let mut primes = Vec::new();
        let mut terms = Vec::new();
        for (lo, hi) in sieve.segments(5, cutoff) {
            let pw = sieve.prime_window(lo, hi)?;
            for p in pw.primes() {
                primes.push(p);
                terms.push(ln_one_plus_recip(p - 1));
            }
        }
        Ok(RTable {
            cutoff,
            primes,
            terms,
        })
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    /// Rigorous bound on the omitted tail: every term is at most
    /// `1/((r-2)(r-1))` and `sum_{n > z} 1/((n-2)(n-1)) = 1/(z-1)`.
    pub fn tail_bound(&self) -> f64 {
        1.0 / (self.cutoff - 1) as f64
    }

    /// `sum 1/(r - N_f(r)) * ln(1 + 1/(r-1))` over primes `5 <= r <= cutoff`
    /// skipping `r` in `q_excl` (sorted ascending) and `r | excl_div`.
    fn sum(&self, k: u64, q_excl: &[u64], excl_div: u64) -> Dd {
        let mut total = Dd::ZERO;
        let mut qi = 0usize;
        let small = k.max(excl_div);
        for (i, &r) in self.primes.iter().enumerate() {
            if qi < q_excl.len() && q_excl[qi] == r {
                qi += 1;
                continue;
            }
            let weight = if r <= small {
                if excl_div % r == 0 {
                    continue;
                }
                if k % r == 0 {
                    (r - 1) as f64
                } else {
                    (r - 2) as f64
                }
            } else {
                (r - 2) as f64
            };
            total = total + self.terms[i].div_f64(weight);
        }
        total
    }

    fn term_for(&self, k: u64, r: u64) -> Dd {
        let i = self
            .primes
            .binary_search(&r)
            .expect("term_for called with a prime in the table");
        let weight = if k % r == 0 { r - 1 } else { r - 2 };
        self.terms[i].div_f64(weight as f64)
    }
}

fn q_avoid_product(k: u64, s: i64) -> u128 {
    // k(k - s), a positive integer for k >= 2 and s in {-1, 1}; stays in
    // u128 for any u64 k.
    let other = if s > 0 { k - 1 } else { k + 1 };
    k as u128 * other as u128
}

fn r_excl_divisor(k: u64, s: i64) -> u64 {
    // k + s; k >= 2 and even keeps both directions in range.
    if s > 0 {
        k + 1
    } else {
        k - 1
    }
}

/// `L = ln[(2/3) * prod (1 + 1/(q-1))]` in CHI3 mode, without the `2/3`
/// factor in PLUS/MINUS mode; exact rational product, one logarithm.
pub fn l_k(q: &QSet) -> Result<Dd> {
    q.sign_mode.sign(q.k)?;
    let with_two_thirds = q.sign_mode == SignMode::Chi3;
    let (mut num, mut den): (u128, u128) = if with_two_thirds { (2, 3) } else { (1, 1) };
    for &p in &q.primes {
        num = num.checked_mul(p as u128).ok_or(Error::Capacity {
            what: "L product numerator overflows",
            requested: p,
            limit: u64::MAX,
        })?;
        den = den.checked_mul((p - 1) as u128).ok_or(Error::Capacity {
            what: "L product denominator overflows",
            requested: p,
            limit: u64::MAX,
        })?;
        let g = gcd_u128(num, den);
        num /= g;
        den /= g;
        // from_ratio is exact only below 2^106.
        if num >= 1 << 106 || den >= 1 << 106 {
            return Err(Error::Capacity {
                what: "L product exceeds exact rational range",
                requested: p,
                limit: u64::MAX,
            });
        }
    }
    Ok(Dd::from_ratio(num, den).ln())
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn validate_qset(rt: &RTable, q: &QSet) -> Result<i64> {
    let s = q.sign_mode.sign(q.k)?;
    let avoid = q_avoid_product(q.k, s);
    let mut prev = 0u64;
    for &p in &q.primes {
        if p < 5 || !is_prime_u64(p) || p <= prev {
            return Err(Error::Constraint {
                prime: p,
                reason: "Q must be an ascending set of primes >= 5",
            });
        }
        if avoid % p as u128 == 0 {
            return Err(Error::Constraint {
                prime: p,
                reason: "Q prime divides the avoided product k(k-s)",
            });
        }
        if p > rt.cutoff {
            return Err(Error::Capacity {
                what: "Q prime beyond series cutoff",
                requested: p,
                limit: rt.cutoff,
            });
        }
        prev = p;
    }
    Ok(s)
}

/// The series `R` for a given `Q`: primes `5 <= r <= cutoff` with `r` not
/// in `Q` and `r` not dividing `k+s`.
pub fn r_k(k: u64, q: &QSet, cutoff: u64) -> Result<SeriesValue> {
    r_k_with(&RTable::build(cutoff)?, k, q)
}

pub fn r_k_with(rt: &RTable, k: u64, q: &QSet) -> Result<SeriesValue> {
    validate_even_k(k)?;
    if q.k != k {
        return Err(Error::Domain {
            what: "QSet belongs to a different k",
            value: q.k,
        });
    }
    let s = validate_qset(rt, q)?;
    let value = rt.sum(k, &q.primes, r_excl_divisor(k, s));
    Ok(SeriesValue {
        value,
        tail_bound: rt.tail_bound(),
        cutoff: rt.cutoff,
        kind: TailKind::Additive,
    })
}

/// The unrestricted-by-Q series `R'`, excluding only `r | (k - chi3(k))`;
/// defined for `3` not dividing `k`.
pub fn r_k_prime(k: u64, cutoff: u64) -> Result<SeriesValue> {
    r_k_prime_with(&RTable::build(cutoff)?, k)
}

pub fn r_k_prime_with(rt: &RTable, k: u64) -> Result<SeriesValue> {
    validate_even_k(k)?;
    let s = SignMode::Chi3.sign(k)?;
    // Note the sign asymmetry against r_k: R excludes divisors of k+s,
    // R' excludes divisors of k-s.  Implemented as printed, not symmetrized.
    let excl = (k as i64 - s) as u64;
    let value = rt.sum(k, &[], excl);
    Ok(SeriesValue {
        value,
        tail_bound: rt.tail_bound(),
        cutoff: rt.cutoff,
        kind: TailKind::Additive,
    })
}

/// Minimal `Q` for `(k, mode)` at the default cutoff.
pub fn q_set(k: u64, mode: SignMode) -> Result<QSet> {
    q_set_with(&RTable::build(DEFAULT_R_CUTOFF)?, k, mode)
}

/// Grows `Q` through the candidate primes (ascending, skipping divisors of
/// `k(k-s)`) until `L > R + tail`; the tail-conservative comparison makes
/// the certificate valid for the untruncated `R`.
///
/// Terms leaving `R` as `Q` grows are subtracted exactly rather than
/// recomputed; a test cross-checks this against full recomputation.
pub fn q_set_with(rt: &RTable, k: u64, mode: SignMode) -> Result<QSet> {
    validate_even_k(k)?;
    let s = mode.sign(k)?;
    let avoid = q_avoid_product(k, s);
    let r_excl = r_excl_divisor(k, s);
    let mut q = QSet {
        k,
        sign_mode: mode,
        primes: Vec::new(),
    };
    let mut r_value = rt.sum(k, &[], r_excl);
    let tail = rt.tail_bound();
    for &cand in &rt.primes {
        if avoid % cand as u128 == 0 {
            continue;
        }
        q.primes.push(cand);
        if r_excl % cand != 0 {
            // The candidate had been contributing to R; remove its term.
            r_value = r_value - rt.term_for(k, cand);
        }
        let l = l_k(&q)?;
        if l > r_value.add_f64(tail) {
            return Ok(q);
        }
    }
    Err(Error::Capacity {
        what: "Q search exhausted candidates below cutoff",
        requested: k,
        limit: rt.cutoff,
    })
}

/// One sign class for `3 | k`: its `Q`, `L`, `R` and certified bound.
#[derive(Clone, Debug, PartialEq)]
pub struct SignBound {
    pub q_set: QSet,
    pub l: Dd,
    pub r: SeriesValue,
    pub bound: f64,
}

/// Everything [`bias_bounds`] produces for one `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiasReport {
    pub k: u64,
    pub chi3: i32,
    pub c_k: SeriesValue,
    pub detail: BiasDetail,
}

#[derive(Clone, Debug, PartialEq)]
pub enum BiasDetail {
    /// `3` does not divide `k`.  The favored class is `sgn T = chi3(k)`
    /// with density at least `bound_biased`; the reversed class
    /// `sgn T = -chi3(k)` has density at least `bound_reversed`.
    Unbalanced {
        q_set: QSet,
        l_k: Dd,
        r_k: SeriesValue,
        r_k_prime: SeriesValue,
        bound_biased: f64,
        bound_reversed: f64,
    },
    /// `3 | k`: separate certified bounds for the classes `T < 0` / `T > 0`.
    Balanced { minus: SignBound, plus: SignBound },
}

fn certified_bound(q: &QSet, l: Dd, r: &SeriesValue) -> Result<f64> {
    let mut prod: u128 = 1;
    for &p in &q.primes {
        prod = prod.checked_mul((p - 2) as u128).ok_or(Error::Capacity {
            what: "bound denominator overflows",
            requested: p,
            limit: u64::MAX,
        })?;
    }
    // Use R's upper enclosure so the reported number is a true lower bound.
    let frac = (Dd::ONE - r.upper() / l) / Dd::from_u128(prod);
    Ok(frac.to_f64())
}

fn sign_bound(rt: &RTable, k: u64, mode: SignMode) -> Result<SignBound> {
    let q = q_set_with(rt, k, mode)?;
    let l = l_k(&q)?;
    let r = r_k_with(rt, k, &q)?;
    let bound = certified_bound(&q, l, &r)?;
    Ok(SignBound {
        q_set: q,
        l,
        r,
        bound,
    })
}

/// Full per-`k` report at explicit cutoffs.
pub fn bias_bounds(k: u64, r_cutoff: u64, euler_cutoff: u64) -> Result<BiasReport> {
    let rt = RTable::build(r_cutoff)?;
    let euler = EulerProduct::compute(euler_cutoff)?;
    bias_bounds_with(&rt, &euler, k)
}

pub fn bias_bounds_with(rt: &RTable, euler: &EulerProduct, k: u64) -> Result<BiasReport> {
    validate_even_k(k)?;
    let c = chi3(k);
    let c_k = c_k_with(euler, k)?;
    let detail = if c != 0 {
        let q = q_set_with(rt, k, SignMode::Chi3)?;
        let l = l_k(&q)?;
        let r = r_k_with(rt, k, &q)?;
        let bound_biased = certified_bound(&q, l, &r)?;
        let rp = r_k_prime_with(rt, k)?;
        let ln_3_2 = Dd::from_ratio(3, 2).ln();
        let bound_reversed = (Dd::ONE - rp.upper() / ln_3_2).to_f64();
        BiasDetail::Unbalanced {
            q_set: q,
            l_k: l,
            r_k: r,
            r_k_prime: rp,
            bound_biased,
            bound_reversed,
        }
    } else {
        BiasDetail::Balanced {
            minus: sign_bound(rt, k, SignMode::Minus)?,
            plus: sign_bound(rt, k, SignMode::Plus)?,
        }
    };
    Ok(BiasReport {
        k,
        chi3: c,
        c_k,
        detail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn chi3_values() {
        assert_eq!(chi3(2), -1);
        assert_eq!(chi3(6), 0);
        assert_eq!(chi3(4), 1);
        assert_eq!(chi3(1), 1);
        assert_eq!(chi3(3), 0);
    }

    #[test]
    fn n_f_values() {
        assert_eq!(n_f(2, 2).unwrap(), 1);
        assert_eq!(n_f(5, 2).unwrap(), 2);
        assert_eq!(n_f(7, 14).unwrap(), 1);
        assert!(matches!(n_f(4, 2).unwrap_err(), Error::Domain { .. }));
        assert!(matches!(n_f(5, 3).unwrap_err(), Error::Domain { .. }));
    }

    #[test]
    fn euler_product_small_cutoffs() {
        // Reference: float128 sieve computation (accurate to ~1e-17).
        let e5 = EulerProduct::compute(100_000).unwrap();
        assert!((e5.c2.value_f64() - 1.320_324_690_933_473_2).abs() < 1e-14);
        let e6 = EulerProduct::compute(1_000_000).unwrap();
        assert!((e6.c2.value_f64() - 1.320_323_721_179_681_4).abs() < 1e-14);
        // Truncation only shrinks the product; the enclosure must contain
        // the later, more accurate value.
        let lo = e6.c2.value_f64() * (1.0 - e6.c2.tail_bound);
        assert!(lo <= e5.c2.value_f64());
        assert!(e6.c2.value_f64() <= e5.c2.value_f64());
        assert!(e5.c2.tail_bound < 1e-5 && e5.c2.tail_bound > 0.0);
    }

    #[test]
    fn c_k_depends_only_on_prime_support() {
        let euler = EulerProduct::compute(100_000).unwrap();
        let c2 = c_k_with(&euler, 2).unwrap();
        for k in [4u64, 8, 16, 32, 64] {
            assert_eq!(c_k_with(&euler, k).unwrap().value, c2.value, "k={k}");
        }
        let c6 = c_k_with(&euler, 6).unwrap();
        for k in [12u64, 18, 24, 48, 96] {
            assert_eq!(c_k_with(&euler, k).unwrap().value, c6.value, "k={k}");
        }
        // C_6 = 2 * C_2 exactly (factor (3-1)/(3-2)).
        let doubled = c2.value.mul_f64(2.0);
        assert!((c6.value - doubled).abs().to_f64() < 1e-25);
        assert!(matches!(
            c_k_with(&euler, 3).unwrap_err(),
            Error::Domain { .. }
        ));
    }

    #[test]
    fn q_set_known_values() {
        let rt = RTable::build(100_000).unwrap();
        let q = |k, m| q_set_with(&rt, k, m).unwrap().primes;
        assert_eq!(q(2, SignMode::Chi3), vec![5, 7, 11]);
        assert_eq!(q(8, SignMode::Chi3), vec![5, 7, 11]);
        assert_eq!(q(4, SignMode::Chi3), vec![5, 7, 11]);
        // 11 | 33 = k - chi3(32) excludes 11 from the candidates.
        assert_eq!(q(32, SignMode::Chi3), vec![5, 7, 13]);
        assert_eq!(q(6, SignMode::Minus), vec![5]);
        assert_eq!(q(6, SignMode::Plus), vec![7]);
        assert_eq!(q(36, SignMode::Plus), vec![11, 13]);
        assert_eq!(q(90, SignMode::Minus), vec![11, 17]);
        assert!(matches!(
            q_set_with(&rt, 6, SignMode::Chi3).unwrap_err(),
            Error::Domain { .. }
        ));
        assert!(matches!(
            q_set_with(&rt, 4, SignMode::Plus).unwrap_err(),
            Error::Domain { .. }
        ));
    }

    #[test]
    fn l_k_known_values() {
        let q = QSet {
            k: 2,
            sign_mode: SignMode::Chi3,
            primes: vec![5, 7, 11],
        };
        // ln(77/72)
        assert!((l_k(&q).unwrap().to_f64() - 0.067_139_302_837_628_53).abs() < 1e-15);
        let q = QSet {
            k: 6,
            sign_mode: SignMode::Minus,
            primes: vec![5],
        };
        // ln(5/4)
        assert!((l_k(&q).unwrap().to_f64() - 0.223_143_551_314_209_76).abs() < 1e-15);
        let q = QSet {
            k: 6,
            sign_mode: SignMode::Plus,
            primes: vec![7],
        };
        // ln(7/6)
        assert!((l_k(&q).unwrap().to_f64() - 0.154_150_679_827_258_36).abs() < 1e-15);
    }

    #[test]
    fn r_series_small_cutoff_reference() {
        let rt = RTable::build(100_000).unwrap();
        let q = QSet {
            k: 2,
            sign_mode: SignMode::Chi3,
            primes: vec![5, 7, 11],
        };
        let r = r_k_with(&rt, 2, &q).unwrap();
        // float128 reference at the same cutoff.
        assert!((r.value_f64() - 0.025_495_970_356_823_865).abs() < 1e-15);
        let rp = r_k_prime_with(&rt, 2).unwrap();
        assert!((rp.value_f64() - 0.141_297_310_071_937_1).abs() < 1e-15);
        // Universal bound from the unrestricted sum, for any k.
        for k in [2u64, 4, 14, 106, 200] {
            assert!(r_k_prime_with(&rt, k).unwrap().value_f64() < 0.141_298_2);
        }
    }

    #[test]
    fn r_series_enclosure_is_monotone() {
        let rt1 = RTable::build(10_000).unwrap();
        let rt2 = RTable::build(100_000).unwrap();
        for k in [2u64, 10, 14] {
            let q1 = q_set_with(&rt1, k, SignMode::Chi3).unwrap();
            let v1 = r_k_with(&rt1, k, &q1).unwrap();
            let v2 = r_k_with(&rt2, k, &q1).unwrap();
            assert!(v1.value <= v2.value, "k={k}");
            assert!(v2.value <= v1.upper(), "k={k}");
        }
    }

    #[test]
    fn q_set_is_minimal() {
        let rt = RTable::build(100_000).unwrap();
        for (k, mode) in [
            (2, SignMode::Chi3),
            (14, SignMode::Chi3),
            (32, SignMode::Chi3),
            (104, SignMode::Chi3),
            (6, SignMode::Minus),
            (36, SignMode::Plus),
            (90, SignMode::Minus),
        ] {
            let q = q_set_with(&rt, k, mode).unwrap();
            let l = l_k(&q).unwrap();
            let r = r_k_with(&rt, k, &q).unwrap();
            assert!(l > r.upper(), "k={k} final set must certify");
            if q.primes.len() >= 2 {
                let mut shorter = q.clone();
                shorter.primes.pop();
                let l = l_k(&shorter).unwrap();
                let r = r_k_with(&rt, k, &shorter).unwrap();
                assert!(l <= r.upper(), "k={k} shorter set must not certify");
            }
        }
    }

    #[test]
    fn q_set_incremental_matches_full_recompute() {
        // The search subtracts leaving terms from R; recompute every prefix
        // from scratch and compare.
        let rt = RTable::build(50_000).unwrap();
        for (k, mode) in [
            (2, SignMode::Chi3),
            (14, SignMode::Chi3),
            (90, SignMode::Minus),
        ] {
            let q = q_set_with(&rt, k, mode).unwrap();
            for m in 1..=q.primes.len() {
                let prefix = QSet {
                    k,
                    sign_mode: mode,
                    primes: q.primes[..m].to_vec(),
                };
                let full = r_k_with(&rt, k, &prefix).unwrap().value;
                let s = mode.sign(k).unwrap();
                let mut incr = rt.sum(k, &[], r_excl_divisor(k, s));
                for &p in &prefix.primes {
                    if r_excl_divisor(k, s) % p != 0 {
                        incr = incr - rt.term_for(k, p);
                    }
                }
                assert!((full - incr).abs().to_f64() < 1e-25, "k={k} m={m}");
            }
        }
    }

    #[test]
    fn bias_bounds_routing_and_positivity() {
        // The reversed-class bound exceeds 0.6515 by only ~1.5e-5, so the
        // additive tail must be well under that: cutoff 1e6 gives 1e-6.
        let rt = RTable::build(1_000_000).unwrap();
        let euler = EulerProduct::compute(10_000).unwrap();
        let rep = bias_bounds_with(&rt, &euler, 2).unwrap();
        assert_eq!(rep.chi3, -1);
        match rep.detail {
            BiasDetail::Unbalanced {
                bound_biased,
                bound_reversed,
                ..
            } => {
                assert!(bound_biased > 0.0);
                assert!(bound_reversed > 0.6515 && bound_reversed < 1.0);
            }
            _ => panic!("k=2 must use the chi3 route"),
        }
        let rep = bias_bounds_with(&rt, &euler, 6).unwrap();
        assert_eq!(rep.chi3, 0);
        match rep.detail {
            BiasDetail::Balanced { minus, plus } => {
                assert!(minus.bound > 0.0);
                assert!(plus.bound > 0.0);
            }
            _ => panic!("k=6 must use the balanced route"),
        }
        assert!(matches!(
            bias_bounds_with(&rt, &euler, 7).unwrap_err(),
            Error::Domain { .. }
        ));
    }

    #[test]
    fn cutoff_validation() {
        assert!(matches!(
            RTable::build(999).unwrap_err(),
            Error::Domain { .. }
        ));
        assert!(matches!(
            EulerProduct::compute(10).unwrap_err(),
            Error::Domain { .. }
        ));
    }
}
