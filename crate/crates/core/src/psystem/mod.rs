//! The data `(M, {G_i}, {a_i})` consumed by the amalgam, tree and folding
//! code, with checkers for the properties it is expected to satisfy.
//!
//! Property (P3) (every action of `M` on a tree has a fixed point) is not
//! machine-checkable and has no checker here.

mod checks;
mod finite;
mod thompson;

use std::fmt::Display;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::error::Result;
use crate::group::GroupElement;

pub use checks::{check_p1, check_p2, check_p4_search, P4_LEVEL_REACH};
pub use finite::{britton_base, finite_psystem, sym7_control_psystem, FiniteSystem};
pub use thompson::ThompsonSystem;

/// Attempts made by the rejection samplers before giving up.
pub const REJECTION_LIMIT: usize = 10_000;

/// A group `M` with an ascending chain `G_0 < G_1 < …` and elements `a_i`.
pub trait PSystem: Send + Sync {
    type Elem: GroupElement + Display;

    fn name(&self) -> &str;
    fn identity(&self) -> Self::Elem;
    /// Membership in `G_i`. Undefined levels (beyond a finite depth) report false.
    fn in_level(&self, g: &Self::Elem, i: usize) -> bool;
    /// `a_i` for `1 <= i <= depth`.
    fn swap(&self, i: usize) -> Result<Self::Elem>;
    /// Largest `i` with `a_i` defined; `None` when unbounded.
    fn depth(&self) -> Option<usize>;
    /// A random element of `M`.
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Elem;
    /// A random element of `G_i`.
    fn sample_level(&self, i: usize, rng: &mut ChaCha8Rng) -> Self::Elem;

    /// All of `M`, when finite.
    fn elements(&self) -> Option<&[Self::Elem]> {
        None
    }

    /// All of `G_i`, when finite.
    fn level_elements(&self, _i: usize) -> Option<&[Self::Elem]> {
        None
    }

    /// A constructive certificate that `M = ⟨G_i, G_i^{a_i}⟩`, if the system
    /// has one: whether it verified, and the certificate itself.
    fn generation_certificate(&self, _i: usize) -> Option<Result<(bool, Value)>> {
        None
    }

    /// A known candidate for a (P4) violation at level `i`.
    fn p4_seed(&self, _i: usize) -> Option<Self::Elem> {
        None
    }

    /// Largest stage `i` for which `L_i` is defined (`depth + 1`).
    fn max_stage(&self) -> Option<usize> {
        self.depth().map(|d| d + 1)
    }

    /// A random element of `G_i \ G_{i-1}` (of `G_0 \ {1}` when `i = 0`).
    fn sample_level_strict(&self, i: usize, rng: &mut ChaCha8Rng) -> Option<Self::Elem> {
        (0..REJECTION_LIMIT).map(|_| self.sample_level(i, rng)).find(|g| {
            if i == 0 {
                !g.is_identity()
            } else {
                !self.in_level(g, i - 1)
            }
        })
    }

    /// A random element of `M \ G_i`.
    fn sample_outside_level(&self, i: usize, rng: &mut ChaCha8Rng) -> Option<Self::Elem> {
        (0..REJECTION_LIMIT)
            .map(|_| self.sample(rng))
            .find(|g| !self.in_level(g, i))
    }

    /// A random element of `G_i` or of `M`, chosen with equal odds.
    fn sample_mixed(&self, i: usize, rng: &mut ChaCha8Rng) -> Self::Elem {
        if rng.gen_bool(0.5) {
            self.sample_level(i, rng)
        } else {
            self.sample(rng)
        }
    }
}

/// The deterministic generator used by every sampler.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
