//! Exact dyadic rationals `n / 2^k` and half-open intervals with dyadic endpoints.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest exponent we allow before declaring the computation out of range.
const MAX_EXP: u32 = 120;

/// A dyadic rational `numerator / 2^exponent` kept in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: i128,
    exp: u32,
}

fn shl_exact(x: i128, s: u32) -> i128 {
    if x == 0 {
        return 0;
    }
    assert!(s < 127, "dyadic overflow: shift by {s}");
    let y = x << s;
    assert!(y >> s == x, "dyadic overflow: {x} << {s}");
    y
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };

    /// Builds `num / 2^exp`, reducing to canonical form.
    pub fn new(num: i128, exp: u32) -> Dyadic {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    /// Parses the `[n, k]` pair form, rejecting non-canonical input.
    pub fn from_canonical(num: i128, exp: u32) -> Result<Dyadic> {
        let d = Dyadic::new(num, exp);
        if d.num != num || d.exp != exp {
            return Err(Error::Parse(format!(
                "dyadic [{num}, {exp}] is not in canonical form"
            )));
        }
        Ok(d)
    }

    pub fn integer(n: i128) -> Dyadic {
        Dyadic { num: n, exp: 0 }
    }

    /// `2^k` for any integer `k`.
    pub fn pow2(k: i32) -> Dyadic {
        if k >= 0 {
            Dyadic::integer(shl_exact(1, k as u32))
        } else {
            Dyadic::new(1, k.unsigned_abs())
        }
    }

    fn normalize(&mut self) {
        if self.num == 0 {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().min(self.exp);
        self.num >>= tz;
        self.exp -= tz;
        assert!(self.exp <= MAX_EXP, "dyadic overflow: exponent {}", self.exp);
    }

    pub fn numerator(&self) -> i128 {
        self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Multiplies by `2^k`.
    pub fn mul_pow2(self, k: i32) -> Dyadic {
        if k >= 0 {
            let k = k as u32;
            if k <= self.exp {
                Dyadic::new(self.num, self.exp - k)
            } else {
                Dyadic::new(shl_exact(self.num, k - self.exp), 0)
            }
        } else {
            Dyadic::new(self.num, self.exp + k.unsigned_abs())
        }
    }

    /// `n · self`.
    pub fn scale(self, n: i128) -> Dyadic {
        let num = self.num.checked_mul(n).expect("dyadic overflow");
        Dyadic::new(num, self.exp)
    }

    pub fn half(self) -> Dyadic {
        self.mul_pow2(-1)
    }

    pub fn abs(self) -> Dyadic {
        Dyadic::new(self.num.abs(), self.exp)
    }

    pub fn min(self, other: Dyadic) -> Dyadic {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Dyadic) -> Dyadic {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// `Some(k)` when `self == 2^k`.
    pub fn log2_exact(&self) -> Option<i32> {
        if self.num <= 0 || self.num.count_ones() != 1 {
            return None;
        }
        Some(self.num.trailing_zeros() as i32 - self.exp as i32)
    }

    /// True when the denominator of `self` divides `2^k`.
    pub fn denominator_divides_pow2(&self, k: u32) -> bool {
        self.exp <= k
    }

    /// Brings both operands to a common exponent.
    fn aligned(self, other: Dyadic) -> (i128, i128, u32) {
        let e = self.exp.max(other.exp);
        (
            shl_exact(self.num, e - self.exp),
            shl_exact(other.num, e - other.exp),
            e,
        )
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a.checked_add(b).expect("dyadic overflow"), e)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a.checked_sub(b).expect("dyadic overflow"), e)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic::new(-self.num, self.exp)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Dyadic) -> Ordering {
        let (a, b, _) = self.aligned(*other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Dyadic) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else if self.exp < 127 {
            write!(f, "{}/{}", self.num, 1i128 << self.exp)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = i64::try_from(self.num).map_err(serde::ser::Error::custom)?;
        (n, self.exp).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Dyadic, D::Error> {
        let (n, k) = <(i64, u32)>::deserialize(d)?;
        Dyadic::from_canonical(n as i128, k).map_err(serde::de::Error::custom)
    }
}

/// Half-open interval `[lo, hi)` with dyadic endpoints inside `[0, 1]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct StdInterval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl StdInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Result<StdInterval> {
        if lo >= hi || lo < Dyadic::ZERO || hi > Dyadic::ONE {
            return Err(Error::Domain(format!("[{lo}, {hi}) is not a sub-interval of [0,1)")));
        }
        Ok(StdInterval { lo, hi })
    }

    /// Panicking constructor for literals known to be valid.
    pub fn of(lo: Dyadic, hi: Dyadic) -> StdInterval {
        StdInterval::new(lo, hi).expect("valid interval")
    }

    /// `[a/2^k, b/2^k)`.
    pub fn frac(a: i128, b: i128, k: u32) -> StdInterval {
        StdInterval::of(Dyadic::new(a, k), Dyadic::new(b, k))
    }

    pub fn unit() -> StdInterval {
        StdInterval::of(Dyadic::ZERO, Dyadic::ONE)
    }

    pub fn len(&self) -> Dyadic {
        self.hi - self.lo
    }

    pub fn contains(&self, x: Dyadic) -> bool {
        self.lo <= x && x < self.hi
    }

    pub fn intersect(&self, other: &StdInterval) -> Option<StdInterval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo < hi).then_some(StdInterval { lo, hi })
    }

    pub fn is_disjoint(&self, other: &StdInterval) -> bool {
        self.intersect(other).is_none()
    }

    /// True for intervals of the form `[m/2^k, (m+1)/2^k)`.
    pub fn is_standard(&self) -> bool {
        match self.len().log2_exact() {
            Some(k) if k <= 0 => self.lo.mul_pow2(-k).exponent() == 0,
            _ => false,
        }
    }

    /// Left and right halves.
    pub fn split(&self) -> (StdInterval, StdInterval) {
        let mid = self.lo + self.len().half();
        (
            StdInterval { lo: self.lo, hi: mid },
            StdInterval { lo: mid, hi: self.hi },
        )
    }

    /// Greedy decomposition into maximal standard dyadic intervals, left to right.
    pub fn standard_pieces(&self) -> Vec<StdInterval> {
        let mut out = Vec::new();
        let mut lo = self.lo;
        while lo < self.hi {
            // the largest 2^-k aligned at lo and fitting below hi
            let mut k: i32 = 0;
            loop {
                let len = Dyadic::pow2(-k);
                let aligned = lo.mul_pow2(k).exponent() == 0;
                if aligned && lo + len <= self.hi {
                    out.push(StdInterval { lo, hi: lo + len });
                    lo = lo + len;
                    break;
                }
                k += 1;
            }
        }
        out
    }
}

impl fmt::Display for StdInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lo, self.hi)
    }
}

impl fmt::Debug for StdInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'de> Deserialize<'de> for StdInterval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<StdInterval, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            lo: Dyadic,
            hi: Dyadic,
        }
        let raw = Raw::deserialize(d)?;
        StdInterval::new(raw.lo, raw.hi).map_err(serde::de::Error::custom)
    }
}
