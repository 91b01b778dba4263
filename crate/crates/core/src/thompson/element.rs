//! Elements of Thompson's group V as canonical tables of affine interval maps.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};

use super::dyadic::{Dyadic, StdInterval};
use crate::error::{Error, Result};
use crate::group::GroupElement;

/// One affine piece `src → dst`, increasing, with slope `2^slope`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Piece {
    pub src: StdInterval,
    pub dst: StdInterval,
}

impl Piece {
    fn slope_exp(&self) -> Option<i32> {
        let ratio_num = self.dst.len();
        let ratio_den = self.src.len();
        // both lengths are positive dyadics; the ratio is 2^k iff odd parts agree
        if ratio_num.numerator() != ratio_den.numerator() {
            return None;
        }
        Some(ratio_den.exponent() as i32 - ratio_num.exponent() as i32)
    }

    fn slope(&self) -> i32 {
        self.slope_exp().expect("validated piece")
    }

    fn apply(&self, x: Dyadic) -> Dyadic {
        self.dst.lo + (x - self.src.lo).mul_pow2(self.slope())
    }

    fn apply_inverse(&self, y: Dyadic) -> Dyadic {
        self.src.lo + (y - self.dst.lo).mul_pow2(-self.slope())
    }

    fn is_identity(&self) -> bool {
        self.src == self.dst
    }
}

impl fmt::Debug for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.src, self.dst)
    }
}

/// An element of Thompson's group V.
///
/// Invariants: the sources partition `[0,1)` and are sorted; the targets
/// partition `[0,1)`; every slope is a power of two; no two consecutive pieces
/// continue the same affine map (so equal functions have identical tables).
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VElement {
    pairs: Vec<Piece>,
}

fn covers_unit(mut ivs: Vec<StdInterval>) -> bool {
    ivs.sort_by_key(|iv| iv.lo);
    let mut at = Dyadic::ZERO;
    for iv in ivs {
        if iv.lo != at {
            return false;
        }
        at = iv.hi;
    }
    at == Dyadic::ONE
}

impl VElement {
    pub fn identity() -> VElement {
        VElement {
            pairs: vec![Piece { src: StdInterval::unit(), dst: StdInterval::unit() }],
        }
    }

    /// Validates a table and returns it in canonical form.
    pub fn from_pairs(pairs: Vec<(StdInterval, StdInterval)>) -> Result<VElement> {
        let pieces: Vec<Piece> = pairs.into_iter().map(|(src, dst)| Piece { src, dst }).collect();
        for p in &pieces {
            if p.slope_exp().is_none() {
                return Err(Error::InvalidElement(format!(
                    "piece {p:?} does not have a power-of-two slope"
                )));
            }
        }
        if !covers_unit(pieces.iter().map(|p| p.src).collect()) {
            return Err(Error::InvalidElement("sources do not partition [0,1)".into()));
        }
        if !covers_unit(pieces.iter().map(|p| p.dst).collect()) {
            return Err(Error::InvalidElement("targets do not partition [0,1)".into()));
        }
        Ok(VElement::canonical(pieces))
    }

    fn canonical(mut pieces: Vec<Piece>) -> VElement {
        pieces.sort_by_key(|p| p.src.lo);
        let mut out: Vec<Piece> = Vec::with_capacity(pieces.len());
        for p in pieces {
            if let Some(last) = out.last_mut() {
                if last.src.hi == p.src.lo && last.dst.hi == p.dst.lo && last.slope() == p.slope() {
                    last.src.hi = p.src.hi;
                    last.dst.hi = p.dst.hi;
                    continue;
                }
            }
            out.push(p);
        }
        VElement { pairs: out }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (StdInterval, StdInterval)> + '_ {
        self.pairs.iter().map(|p| (p.src, p.dst))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Breakpoints of the table (left endpoints of the pieces).
    pub fn breakpoints(&self) -> Vec<Dyadic> {
        self.pairs.iter().map(|p| p.src.lo).collect()
    }

    fn piece_at(&self, x: Dyadic) -> &Piece {
        let idx = self.pairs.partition_point(|p| p.src.hi <= x);
        &self.pairs[idx]
    }

    pub fn evaluate(&self, x: Dyadic) -> Result<Dyadic> {
        if x < Dyadic::ZERO || x >= Dyadic::ONE {
            return Err(Error::Domain(format!("{x} is outside [0,1)")));
        }
        Ok(self.piece_at(x).apply(x))
    }

    /// The image of an interval on which the element is affine.
    pub fn image_of(&self, iv: &StdInterval) -> Option<StdInterval> {
        let p = self.piece_at(iv.lo);
        (iv.hi <= p.src.hi).then(|| StdInterval {
            lo: p.apply(iv.lo),
            hi: p.apply(iv.hi),
        })
    }

    /// `x ↦ self(other(x))`.
    pub fn compose(&self, other: &VElement) -> VElement {
        let mut pieces = Vec::with_capacity(self.pairs.len() + other.pairs.len());
        for g in &other.pairs {
            let start = self.pairs.partition_point(|f| f.src.hi <= g.dst.lo);
            for f in &self.pairs[start..] {
                if f.src.lo >= g.dst.hi {
                    break;
                }
                let overlap = f.src.intersect(&g.dst).expect("overlapping pieces");
                pieces.push(Piece {
                    src: StdInterval {
                        lo: g.apply_inverse(overlap.lo),
                        hi: g.apply_inverse(overlap.hi),
                    },
                    dst: StdInterval {
                        lo: f.apply(overlap.lo),
                        hi: f.apply(overlap.hi),
                    },
                });
            }
        }
        VElement::canonical(pieces)
    }

    pub fn inverse(&self) -> VElement {
        VElement::canonical(
            self.pairs
                .iter()
                .map(|p| Piece { src: p.dst, dst: p.src })
                .collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.len() == 1 && self.pairs[0].is_identity()
    }

    /// Exact test that `self` is the identity on every point of `iv`.
    pub fn fixes_pointwise(&self, iv: &StdInterval) -> bool {
        let start = self.pairs.partition_point(|p| p.src.hi <= iv.lo);
        for p in &self.pairs[start..] {
            if p.src.lo >= iv.hi {
                break;
            }
            if !p.is_identity() {
                return false;
            }
        }
        true
    }

    /// Membership in `G_i = St_V([0, 1/2^{i+1}))`.
    pub fn in_level(&self, i: usize) -> bool {
        self.fixes_pointwise(&level_interval(i))
    }

    /// Checks every structural invariant; used by tests and after parsing.
    pub fn check_invariants(&self) -> Result<()> {
        let rebuilt = VElement::from_pairs(self.pairs().collect())?;
        if rebuilt != *self {
            return Err(Error::InvalidElement("table is not canonical".into()));
        }
        Ok(())
    }
}

/// `[0, 1/2^{i+1})`, the interval fixed pointwise by `G_i`.
pub fn level_interval(i: usize) -> StdInterval {
    StdInterval::of(Dyadic::ZERO, Dyadic::pow2(-(i as i32 + 1)))
}

/// `[1/2^{i+1}, 1/2^i)`, the interval fixed pointwise by `G_i^{a_i}`.
pub fn swapped_level_interval(i: usize) -> StdInterval {
    StdInterval::of(Dyadic::pow2(-(i as i32 + 1)), Dyadic::pow2(-(i as i32)))
}

impl GroupElement for VElement {
    fn mul(&self, other: &Self) -> Self {
        self.compose(other)
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
    fn is_identity(&self) -> bool {
        VElement::is_identity(self)
    }
}

impl fmt::Debug for VElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.pairs.iter()).finish()
    }
}

impl fmt::Display for VElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|p| format!("{}->{}", p.src, p.dst))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl<'de> Deserialize<'de> for VElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<VElement, D::Error> {
        #[derive(Deserialize)]
        struct RawPiece {
            src: StdInterval,
            dst: StdInterval,
        }
        #[derive(Deserialize)]
        struct Raw {
            pairs: Vec<RawPiece>,
        }
        let raw = Raw::deserialize(d)?;
        VElement::from_pairs(raw.pairs.into_iter().map(|p| (p.src, p.dst)).collect())
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: i128, k: u32) -> Dyadic {
        Dyadic::new(n, k)
    }

    fn iv(a: i128, b: i128, k: u32) -> StdInterval {
        StdInterval::frac(a, b, k)
    }

    #[test]
    fn rejects_bad_tables() {
        // slope 3/2
        let bad = VElement::from_pairs(vec![(iv(0, 2, 2), iv(0, 3, 2)), (iv(2, 4, 2), iv(3, 4, 2))]);
        assert!(bad.is_err());
        // gap in the sources
        let gap = VElement::from_pairs(vec![(iv(0, 1, 2), iv(0, 1, 2)), (iv(2, 4, 2), iv(1, 4, 2))]);
        assert!(gap.is_err());
    }

    #[test]
    fn merges_affine_continuations() {
        let split_identity =
            VElement::from_pairs(vec![(iv(0, 1, 1), iv(0, 1, 1)), (iv(2, 3, 2), iv(2, 3, 2)), (iv(3, 4, 2), iv(3, 4, 2))])
                .unwrap();
        assert!(split_identity.is_identity());
        assert_eq!(split_identity, VElement::identity());
    }

    #[test]
    fn fixes_pointwise_is_exact() {
        let swap = VElement::from_pairs(vec![
            (iv(0, 3, 3), iv(0, 3, 3)),
            (iv(6, 7, 4), iv(7, 8, 4)),
            (iv(7, 8, 4), iv(6, 7, 4)),
            (iv(1, 2, 1), iv(1, 2, 1)),
        ])
        .unwrap();
        assert!(swap.fixes_pointwise(&iv(0, 3, 3)));
        assert!(!swap.fixes_pointwise(&iv(0, 1, 1)));
        assert!(swap.in_level(1));
        assert!(!swap.in_level(0));
        assert_eq!(swap.evaluate(d(13, 5)).unwrap(), d(15, 5));
    }

    #[test]
    fn evaluate_domain() {
        let id = VElement::identity();
        assert_eq!(id.evaluate(d(3, 3)).unwrap(), d(3, 3));
        assert!(id.evaluate(Dyadic::ONE).is_err());
        assert!(id.evaluate(d(-1, 2)).is_err());
    }
}
