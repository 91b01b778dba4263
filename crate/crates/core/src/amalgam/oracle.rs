//! Transversal normal forms for amalgams of two copies of a finite group.
//!
//! This is deliberately independent of [`reduce`](super::reduce): every
//! element is written uniquely as `t_1 ⋯ t_n · h` with the `t_k` non-trivial
//! left coset representatives from alternating factors and `h` in the edge
//! group, so equality becomes identity of normal forms.

use std::collections::HashMap;

use serde::Serialize;

use super::word::{Factor, GroupWord, Syllable};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::psystem::PSystem;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NormalForm<E> {
    pub letters: Vec<(Factor, E)>,
    pub tail: E,
}

impl<E: GroupElement> NormalForm<E> {
    pub fn is_identity(&self) -> bool {
        self.letters.is_empty() && self.tail.is_identity()
    }
}

#[derive(Clone, Debug)]
pub struct CosetOracle<E> {
    pub stage: usize,
    identity: E,
    /// `g ↦ (t, h)` with `g = t·h`, `t` the representative of `g·G_{stage-1}`
    split: HashMap<E, (E, E)>,
    transversal: Vec<E>,
}

impl<E: GroupElement> CosetOracle<E> {
    /// Builds the left transversal of `G_{stage-1}` in a finite `M`.
    /// Representatives are the first coset members in enumeration order.
    pub fn new<S: PSystem<Elem = E>>(sys: &S, stage: usize) -> Result<CosetOracle<E>> {
        let unsupported = || Error::Unsupported(format!("{} has no finite transversal", sys.name()));
        let all = sys.elements().ok_or_else(unsupported)?;
        let edge = sys.level_elements(stage - 1).ok_or_else(unsupported)?;
        let mut split = HashMap::with_capacity(all.len());
        let mut transversal = Vec::new();
        for g in all {
            if split.contains_key(g) {
                continue;
            }
            transversal.push(g.clone());
            for h in edge {
                split.insert(g.mul(h), (g.clone(), h.clone()));
            }
        }
        Ok(CosetOracle { stage, identity: sys.identity(), split, transversal })
    }

    /// Coset representatives, the identity first.
    pub fn transversal(&self) -> &[E] {
        &self.transversal
    }

    pub fn split(&self, g: &E) -> (E, E) {
        self.split.get(g).cloned().expect("element of the enumerated group")
    }

    fn left_mul(&self, nf: &mut NormalForm<E>, f: Factor, g: &E) {
        let mut g = g.clone();
        if let Some((f1, t1)) = nf.letters.first() {
            if *f1 == f {
                g = g.mul(t1);
                nf.letters.remove(0);
            }
        }
        let (t, mut h) = self.split(&g);
        for (_, tk) in nf.letters.iter_mut() {
            let (t2, h2) = self.split(&h.mul(tk));
            *tk = t2;
            h = h2;
        }
        nf.tail = h.mul(&nf.tail);
        if !t.is_identity() {
            nf.letters.insert(0, (f, t));
        }
    }

    /// Normal form of a word without stable letters.
    pub fn normal_form(&self, w: &GroupWord<E>) -> Result<NormalForm<E>> {
        if w.stage != self.stage {
            return Err(Error::StageMismatch { expected: self.stage, got: w.stage });
        }
        let mut nf = NormalForm { letters: Vec::new(), tail: self.identity.clone() };
        for s in w.syllables.iter().rev() {
            match s {
                Syllable::Elem(f, g) => self.left_mul(&mut nf, *f, g),
                Syllable::Stable(_) => {
                    return Err(Error::Unsupported("the coset oracle has no stable letters".into()))
                }
            }
        }
        Ok(nf)
    }

    pub fn is_identity(&self, w: &GroupWord<E>) -> Result<bool> {
        Ok(self.normal_form(w)?.is_identity())
    }

    pub fn equal(&self, u: &GroupWord<E>, w: &GroupWord<E>) -> Result<bool> {
        Ok(self.normal_form(u)? == self.normal_form(w)?)
    }

    /// Label of the vertex `x·F`: the normal-form letters of `x` with a
    /// trailing letter from `F` dropped.
    pub fn vertex_label(&self, x: &GroupWord<E>, side: Factor) -> Result<Vec<(Factor, E)>> {
        let mut letters = self.normal_form(x)?.letters;
        if letters.last().is_some_and(|(f, _)| *f == side) {
            letters.pop();
        }
        Ok(letters)
    }

    /// Label of the edge `x·G_{stage-1}`.
    pub fn edge_label(&self, x: &GroupWord<E>) -> Result<Vec<(Factor, E)>> {
        Ok(self.normal_form(x)?.letters)
    }

    /// The word spelled by a label.
    pub fn word_of(&self, letters: &[(Factor, E)]) -> GroupWord<E> {
        GroupWord::new(self.stage, letters.iter().map(|(f, g)| Syllable::Elem(*f, g.clone())).collect())
    }
}
