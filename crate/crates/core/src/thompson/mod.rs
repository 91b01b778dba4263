//! Thompson's group V with exact dyadic arithmetic.

mod dyadic;
mod element;
mod generators;

pub use dyadic::{Dyadic, StdInterval};
pub use element::{level_interval, swapped_level_interval, Piece, VElement};
pub use generators::{
    generation_witness, generator, letter_in_tag, p4_counterexample, random_element, random_supported, swap,
    transporter, GenerationWitness, Generator, LetterTag, P4Certificate, WitnessLetter,
};
