use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::word::{Factor, GroupWord, Syllable};
use crate::psystem::PSystem;

/// A word of `len` element syllables with alternating factors; about a third
/// of the payloads are drawn from the edge group so reduction has work to do.
pub fn random_word<S: PSystem>(sys: &S, stage: usize, len: usize, rng: &mut ChaCha8Rng) -> GroupWord<S::Elem> {
    let mut f = if rng.gen_bool(0.5) { Factor::Base } else { Factor::Copy };
    let mut syllables = Vec::with_capacity(len);
    for _ in 0..len {
        let g = if rng.gen_bool(0.33) {
            sys.sample_level(stage - 1, rng)
        } else {
            sys.sample(rng)
        };
        syllables.push(Syllable::Elem(f, g));
        f = f.other();
    }
    GroupWord::new(stage, syllables)
}

/// Like [`random_word`] but with stable letters mixed in.
pub fn random_hnn_word<S: PSystem>(sys: &S, stage: usize, len: usize, rng: &mut ChaCha8Rng) -> GroupWord<S::Elem> {
    let mut syllables = Vec::with_capacity(len);
    for _ in 0..len {
        let s = match rng.gen_range(0..4) {
            0 => {
                if rng.gen_bool(0.5) {
                    Syllable::t()
                } else {
                    Syllable::t_inv()
                }
            }
            1 => Syllable::Elem(Factor::Base, sys.sample_level(stage - 1, rng)),
            2 => Syllable::Elem(Factor::Base, sys.sample(rng)),
            _ => Syllable::Elem(Factor::Copy, sys.sample(rng)),
        };
        syllables.push(s);
    }
    GroupWord::new(stage, syllables)
}
