//! Double-double arithmetic: unevaluated sums `hi + lo` of two `f64`s,
//! giving roughly 106 bits of significand.
//!
//! Series values reported by this crate carry rigorous tail bounds, so the
//! arithmetic itself only has to be comfortably more precise than the
//! tails; double-double leaves ~25 decimal digits of headroom.  All
//! operations use the classical error-free transformations (Knuth
//! two-sum, Dekker split/product), which need nothing beyond core IEEE
//! `f64` ops and therefore work in `no_std`.

use core::cmp::Ordering;
use core::ops::{Add, Div, Mul, Neg, Sub};

/// `2^27 + 1`, Veltkamp splitting constant for `f64`.
const SPLIT: f64 = 134_217_729.0;

#[inline]
fn fabs(x: f64) -> f64 {
    f64::from_bits(x.to_bits() & 0x7fff_ffff_ffff_ffff)
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Requires `|a| >= |b|` (or either operand zero).
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    let t = SPLIT * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

/// A double-double value.  Invariant: `hi = fl(hi + lo)`, i.e. the pair is
/// normalized so `lo` is at most half an ulp of `hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

/// `ln 2` to double-double precision.
pub const LN_2: Dd = Dd {
    hi: core::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn from_u64(x: u64) -> Dd {
        let hi = x as f64;
        // |x - hi| <= 2^11 ulps, exactly representable.
        let lo = if hi >= 9_007_199_254_740_992.0 {
            (x as i128 - hi as i128) as f64
        } else {
            0.0
        };
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    /// Exact for `|x| < 2^106`; callers keep rationals inside that range.
    pub fn from_u128(x: u128) -> Dd {
        let hi = x as f64;
        let lo = if hi >= 9_007_199_254_740_992.0 {
            (x as i128).wrapping_sub(hi as i128) as f64
        } else {
            0.0
        };
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    /// `num / den` correctly rounded to double-double.
    pub fn from_ratio(num: u128, den: u128) -> Dd {
        Dd::from_u128(num) / Dd::from_u128(den)
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn is_negative(self) -> bool {
        self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0)
    }

    pub fn add_f64(self, b: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, b);
        let (hi, lo) = quick_two_sum(s1, s2 + self.lo);
        Dd { hi, lo }
    }

    pub fn mul_f64(self, b: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p1, p2 + self.lo * b);
        Dd { hi, lo }
    }

    pub fn div_f64(self, b: f64) -> Dd {
        self / Dd::from_f64(b)
    }

    /// Exact multiplication by a power of two.
    fn scale2(self, e: i32) -> Dd {
        debug_assert!((-1000..=1000).contains(&e));
        let f = f64::from_bits(((1023 + e) as u64) << 52);
        Dd {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    /// Natural logarithm.  Requires a strictly positive, finite value.
    ///
    /// The argument is scaled to `m in [1, 2)` by an exact power of two,
    /// then `ln m = 2 atanh((m-1)/(m+1))` is summed as a series; the
    /// atanh argument is at most 1/3, so the series gains more than three
    /// bits per term.
    pub fn ln(self) -> Dd {
        debug_assert!(self.hi > 0.0 && self.hi.is_finite());
        let e = ((self.hi.to_bits() >> 52) & 0x7ff) as i32 - 1023;
        let m = self.scale2(-e);
        let u = (m - Dd::ONE) / (m + Dd::ONE);
        let s = atanh_series(u);
        s.scale2(1) + LN_2.mul_f64(e as f64)
    }
}

/// `ln(1 + 1/m)` for integer `m >= 2`, via `2 atanh(1/(2m+1))`.
///
/// The atanh argument is an exact rational with `|u| <= 1/5`, so this is
/// both faster and slightly more accurate than a general logarithm; it is
/// the work-horse for prime-indexed series terms.
pub fn ln_one_plus_recip(m: u64) -> Dd {
    debug_assert!(m >= 2);
    let u = Dd::from_ratio(1, 2 * m as u128 + 1);
    atanh_series(u).scale2(1)
}

/// `atanh(u)` for `|u| <= 1/3`, by direct series summation.
fn atanh_series(u: Dd) -> Dd {
    if u.hi == 0.0 {
        return u;
    }
    let u2 = u * u;
    let mut power = u;
    let mut sum = u;
    let mut n = 3u32;
    loop {
        power = power * u2;
        let term = power.div_f64(n as f64);
        sum = sum + term;
        if fabs(term.hi) <= fabs(sum.hi) * 1e-35 {
            return sum;
        }
        n += 2;
        debug_assert!(n < 500);
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, o.hi);
        let (t1, t2) = two_sum(self.lo, o.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, o.hi);
        let (hi, lo) = quick_two_sum(p1, p2 + self.hi * o.lo + self.lo * o.hi);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        // Three rounds of long division.
        let q1 = self.hi / o.hi;
        let r = self - o.mul_f64(q1);
        let q2 = r.hi / o.hi;
        let r = r - o.mul_f64(q2);
        let q3 = r.hi / o.hi;
        let (s1, s2) = quick_two_sum(q1, q2);
        let (hi, lo) = quick_two_sum(s1, s2 + q3);
        Dd { hi, lo }
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, o: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&o.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&o.lo),
            ord => ord,
        }
    }
}
