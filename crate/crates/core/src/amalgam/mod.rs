//! Words in the amalgams `L_i = M ∗_{G_{i-1}} M_i`, optionally with stable
//! letters centralizing the edge group, and their reduction.
//!
//! Reduced words are not unique (an edge element may sit on either side of a
//! factor boundary), so equality is decided by reducing a quotient.

mod oracle;
mod random;
mod reduce;
mod word;

pub use oracle::{CosetOracle, NormalForm};
pub use random::{random_hnn_word, random_word};
pub use reduce::{
    check_stage, edge_element, equal, factor_element, in_factor, intersection_scan, is_identity, order_probe, reduce,
    reduce_randomized, OrderBound,
};
pub use word::{Factor, GroupWord, Sign, Syllable};
