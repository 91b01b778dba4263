use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::PSystem;
use crate::error::{Error, Result};
use crate::thompson::{
    generation_witness, generator, letter_in_tag, p4_counterexample, random_element, random_supported, swap,
    Dyadic, VElement,
};

/// Thompson's group V with `G_i = St_V([0, 1/2^{i+1}))` and the swaps `a_i`.
#[derive(Clone, Debug)]
pub struct ThompsonSystem {
    name: String,
    swap_override: Option<VElement>,
}

impl Default for ThompsonSystem {
    fn default() -> Self {
        ThompsonSystem::new()
    }
}

impl ThompsonSystem {
    pub fn new() -> ThompsonSystem {
        ThompsonSystem { name: "thompson".into(), swap_override: None }
    }

    /// The same chain with every `a_i` replaced by `a`; used as a negative
    /// control for the centralizing property.
    pub fn with_swap(a: VElement) -> ThompsonSystem {
        ThompsonSystem { name: "thompson-adversarial".into(), swap_override: Some(a) }
    }
}

impl PSystem for ThompsonSystem {
    type Elem = VElement;

    fn name(&self) -> &str {
        &self.name
    }

    fn identity(&self) -> VElement {
        VElement::identity()
    }

    fn in_level(&self, g: &VElement, i: usize) -> bool {
        g.in_level(i)
    }

    fn swap(&self, i: usize) -> Result<VElement> {
        if i == 0 {
            return Err(Error::Precondition("a_i is defined for i >= 1".into()));
        }
        Ok(self.swap_override.clone().unwrap_or_else(|| swap(i)))
    }

    fn depth(&self) -> Option<usize> {
        None
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> VElement {
        if rng.gen_bool(0.5) {
            let depth = rng.gen_range(1..=8);
            random_element(rng.gen(), depth)
        } else {
            let splits = rng.gen_range(0..5);
            random_supported(Dyadic::ZERO, splits, rng)
        }
    }

    fn sample_level(&self, i: usize, rng: &mut ChaCha8Rng) -> VElement {
        let splits = rng.gen_range(0..5);
        random_supported(Dyadic::pow2(-(i as i32 + 1)), splits, rng)
    }

    fn generation_certificate(&self, i: usize) -> Option<Result<(bool, Value)>> {
        if self.swap_override.is_some() {
            return None;
        }
        Some(generation_witness(i).map(|witnesses| {
            let mut ok = true;
            let mut rows = Vec::new();
            for w in &witnesses {
                let target = generator(w.target).expect("named generator");
                let product_ok = w.product() == target;
                let letters_ok = w.letters.iter().all(|l| letter_in_tag(&l.element, l.tag, i));
                ok &= product_ok && letters_ok;
                rows.push(json!({
                    "target": w.target.to_string(),
                    "letters": w.letters.len(),
                    "product_matches": product_ok,
                    "letters_in_tagged_subgroups": letters_ok,
                }));
            }
            (ok, Value::Array(rows))
        }))
    }

    fn p4_seed(&self, i: usize) -> Option<VElement> {
        if self.swap_override.is_some() {
            return None;
        }
        p4_counterexample(i).ok().map(|(c, _)| c)
    }
}
