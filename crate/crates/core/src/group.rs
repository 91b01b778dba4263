use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

/// Elements of a concrete group with exact equality.
///
/// Multiplication composes as functions: `f.mul(g)` is `x ↦ f(g(x))`.
pub trait GroupElement: Clone + Eq + Hash + Debug + Serialize + Send + Sync {
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn is_identity(&self) -> bool;

    /// The conjugate `by · self · by⁻¹` (written `self^by`).
    fn conj(&self, by: &Self) -> Self {
        by.mul(self).mul(&by.inv())
    }

    fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }
}
