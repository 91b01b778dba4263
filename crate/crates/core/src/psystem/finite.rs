use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use super::PSystem;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::permsys::{symmetric, symmetric_on, FiniteGroup, Perm};

/// A truncated system over a finite group, fully enumerated.
#[derive(Clone, Debug)]
pub struct FiniteSystem<E: GroupElement> {
    name: String,
    identity: E,
    group: FiniteGroup<E>,
    elements: Vec<E>,
    levels: Vec<FiniteGroup<E>>,
    level_elements: Vec<Vec<E>>,
    level_sets: Vec<HashSet<E>>,
    swaps: Vec<E>,
}

impl<E: GroupElement + std::fmt::Display> FiniteSystem<E> {
    /// `levels[i]` is `G_i`; `swaps[k]` is `a_{k+1}`. There must be one swap
    /// per level above `G_0`.
    pub fn new(name: impl Into<String>, group: FiniteGroup<E>, levels: Vec<FiniteGroup<E>>, swaps: Vec<E>) -> Result<Self> {
        if levels.is_empty() || swaps.len() + 1 != levels.len() {
            return Err(Error::Construction("need levels G_0..G_n and swaps a_1..a_n".into()));
        }
        let elements = group.enumerate()?;
        let all: HashSet<&E> = elements.iter().collect();
        let mut level_elements = Vec::new();
        for level in &levels {
            let els = level.enumerate()?;
            if els.iter().any(|g| !all.contains(g)) {
                return Err(Error::Construction(format!("{} is not inside {}", level.name, group.name)));
            }
            level_elements.push(els);
        }
        for a in &swaps {
            if !all.contains(a) {
                return Err(Error::Construction(format!("{a} is not inside {}", group.name)));
            }
        }
        let level_sets = level_elements.iter().map(|e| e.iter().cloned().collect()).collect();
        Ok(FiniteSystem {
            name: name.into(),
            identity: group.identity().clone(),
            group,
            elements,
            levels,
            level_elements,
            level_sets,
            swaps,
        })
    }

    pub fn group(&self) -> &FiniteGroup<E> {
        &self.group
    }

    pub fn level(&self, i: usize) -> Option<&FiniteGroup<E>> {
        self.levels.get(i)
    }
}

impl<E: GroupElement + std::fmt::Display> PSystem for FiniteSystem<E> {
    type Elem = E;

    fn name(&self) -> &str {
        &self.name
    }

    fn identity(&self) -> E {
        self.identity.clone()
    }

    fn in_level(&self, g: &E, i: usize) -> bool {
        self.level_sets.get(i).is_some_and(|s| s.contains(g))
    }

    fn swap(&self, i: usize) -> Result<E> {
        if i == 0 || i > self.swaps.len() {
            return Err(Error::StageOutOfRange { stage: i, max: self.swaps.len() });
        }
        Ok(self.swaps[i - 1].clone())
    }

    fn depth(&self) -> Option<usize> {
        Some(self.swaps.len())
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> E {
        self.elements.choose(rng).expect("non-empty group").clone()
    }

    fn sample_level(&self, i: usize, rng: &mut ChaCha8Rng) -> E {
        match self.level_elements.get(i) {
            Some(els) => els.choose(rng).expect("non-empty level").clone(),
            None => self.sample(rng),
        }
    }

    fn elements(&self) -> Option<&[E]> {
        Some(&self.elements)
    }

    fn level_elements(&self, i: usize) -> Option<&[E]> {
        self.level_elements.get(i).map(|v| v.as_slice())
    }
}

/// `M = Sym(6)`, `G_0 = Sym(4)`, `G_1 = Sym(5)`, `a_1 = (5 6)`.
pub fn finite_psystem() -> FiniteSystem<Perm> {
    FiniteSystem::new(
        "sym6",
        symmetric(6),
        vec![symmetric_on(4, 6), symmetric_on(5, 6)],
        vec!["6:(5 6)".parse().expect("valid")],
    )
    .expect("well-formed system")
}

/// `M = Sym(7)` with the same chain and swap; generation fails here.
pub fn sym7_control_psystem() -> FiniteSystem<Perm> {
    FiniteSystem::new(
        "sym7-control",
        symmetric(7),
        vec![symmetric_on(4, 7), symmetric_on(5, 7)],
        vec!["7:(5 6)".parse().expect("valid")],
    )
    .expect("well-formed system")
}

/// `Sym(5)` over `Sym(4)` with no swaps: the base of the HNN demonstration,
/// whose words all live at stage 1 with edge group `Sym(4)`.
pub fn britton_base() -> FiniteSystem<Perm> {
    FiniteSystem::new("britton-sym5", symmetric(5), vec![symmetric_on(4, 5)], Vec::new()).expect("well-formed system")
}
