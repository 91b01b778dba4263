use std::collections::HashSet;

use rand::Rng;
use serde::Serialize;

use super::word::{Factor, GroupWord, Sign, Syllable};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::psystem::PSystem;

/// Rejects stages the system cannot support.
pub fn check_stage<S: PSystem>(sys: &S, stage: usize) -> Result<()> {
    if stage == 0 {
        return Err(Error::StageOutOfRange { stage, max: sys.max_stage().unwrap_or(usize::MAX) });
    }
    match sys.max_stage() {
        Some(max) if stage > max => Err(Error::StageOutOfRange { stage, max }),
        _ => Ok(()),
    }
}

struct Reducer<'a, S: PSystem> {
    sys: &'a S,
    edge: usize,
    stack: Vec<Syllable<S::Elem>>,
}

impl<S: PSystem> Reducer<'_, S> {
    fn in_edge(&self, g: &S::Elem) -> bool {
        self.sys.in_level(g, self.edge)
    }

    fn push(&mut self, s: Syllable<S::Elem>) {
        match s {
            Syllable::Stable(sign) => self.push_stable(sign),
            Syllable::Elem(f, g) => self.push_elem(f, g),
        }
    }

    fn push_stable(&mut self, sign: Sign) {
        match self.stack.last() {
            Some(Syllable::Stable(s)) if *s == sign.flip() => {
                self.stack.pop();
            }
            Some(Syllable::Elem(_, x)) if self.in_edge(x) => {
                // x t^{e} = t^{e} x for x in the centralized edge group
                let Some(Syllable::Elem(_, x)) = self.stack.pop() else { unreachable!() };
                self.push_stable(sign);
                self.push_elem(Factor::Base, x);
            }
            _ => self.stack.push(Syllable::Stable(sign)),
        }
    }

    fn push_elem(&mut self, f: Factor, g: S::Elem) {
        if g.is_identity() {
            return;
        }
        let top = match self.stack.last() {
            Some(Syllable::Elem(tf, y)) => Some((*tf, y.clone())),
            _ => None,
        };
        match top {
            Some((tf, y)) if tf == f => {
                self.stack.pop();
                self.push_elem(f, y.mul(&g));
            }
            Some((tf, y)) if self.in_edge(&g) => {
                self.stack.pop();
                self.push_elem(tf, y.mul(&g));
            }
            Some((_, y)) if self.in_edge(&y) => {
                // y is a lone edge element: absorb it into the incoming factor
                self.stack.pop();
                self.push_elem(f, y.mul(&g));
            }
            Some(_) => self.stack.push(Syllable::Elem(f, g)),
            None => {
                let f = if self.in_edge(&g) { Factor::Base } else { f };
                self.stack.push(Syllable::Elem(f, g));
            }
        }
    }
}

/// Reduces a word: drops identities, merges same-factor neighbours, moves edge
/// elements into a neighbouring factor, cancels `t t⁻¹` and pinches
/// `t^{∓1} x t^{±1}` for `x` in the edge group. Edge elements commute with `t`
/// and are moved to its right. A lone edge element is tagged `M`.
pub fn reduce<S: PSystem>(sys: &S, w: &GroupWord<S::Elem>) -> Result<GroupWord<S::Elem>> {
    check_stage(sys, w.stage)?;
    let mut r = Reducer { sys, edge: w.stage - 1, stack: Vec::with_capacity(w.len()) };
    for s in &w.syllables {
        r.push(s.clone());
    }
    Ok(GroupWord::new(w.stage, r.stack))
}

/// Reduction that applies the same local rules at random positions until none
/// applies; used to test that the result does not depend on the order.
pub fn reduce_randomized<S: PSystem, R: Rng>(
    sys: &S,
    w: &GroupWord<S::Elem>,
    rng: &mut R,
) -> Result<GroupWord<S::Elem>> {
    check_stage(sys, w.stage)?;
    let edge = w.stage - 1;
    let in_edge = |g: &S::Elem| sys.in_level(g, edge);
    let mut s = w.syllables.clone();
    loop {
        let mut moves: Vec<(usize, u8)> = Vec::new();
        for k in 0..s.len() {
            if let Syllable::Elem(_, g) = &s[k] {
                if g.is_identity() {
                    moves.push((k, 0));
                }
            }
            if k + 1 < s.len() {
                match (&s[k], &s[k + 1]) {
                    (Syllable::Elem(f1, g1), Syllable::Elem(f2, g2)) => {
                        if f1 == f2 {
                            moves.push((k, 1));
                        } else {
                            if in_edge(g1) {
                                moves.push((k, 2));
                            }
                            if in_edge(g2) {
                                moves.push((k, 3));
                            }
                        }
                    }
                    (Syllable::Stable(a), Syllable::Stable(b)) if *a == b.flip() => moves.push((k, 4)),
                    (Syllable::Elem(_, x), Syllable::Stable(_)) if in_edge(x) => moves.push((k, 6)),
                    _ => {}
                }
            }
            if k + 2 < s.len() {
                if let (Syllable::Stable(a), Syllable::Elem(_, x), Syllable::Stable(b)) = (&s[k], &s[k + 1], &s[k + 2]) {
                    if *a == b.flip() && in_edge(x) {
                        moves.push((k, 5));
                    }
                }
            }
        }
        if moves.is_empty() {
            break;
        }
        let (k, rule) = moves[rng.gen_range(0..moves.len())];
        match rule {
            0 => {
                s.remove(k);
            }
            1..=3 => {
                let (Syllable::Elem(f1, g1), Syllable::Elem(f2, g2)) = (s[k].clone(), s[k + 1].clone()) else {
                    unreachable!()
                };
                let tag = if rule == 2 { f2 } else { f1 };
                s.splice(k..k + 2, [Syllable::Elem(tag, g1.mul(&g2))]);
            }
            4 => {
                s.drain(k..k + 2);
            }
            5 => {
                let x = s[k + 1].clone();
                s.splice(k..k + 3, [x]);
            }
            _ => s.swap(k, k + 1),
        }
    }
    for syl in s.iter_mut() {
        if let Syllable::Elem(f, g) = syl {
            if in_edge(g) {
                *f = Factor::Base;
            }
        }
    }
    Ok(GroupWord::new(w.stage, s))
}

pub fn is_identity<S: PSystem>(sys: &S, w: &GroupWord<S::Elem>) -> Result<bool> {
    Ok(reduce(sys, w)?.is_empty())
}

/// `u = w` in the stage group, decided by reducing `u·w⁻¹`.
pub fn equal<S: PSystem>(sys: &S, u: &GroupWord<S::Elem>, w: &GroupWord<S::Elem>) -> Result<bool> {
    is_identity(sys, &u.concat(&w.inverse())?)
}

/// The element of factor `f` that `w` equals, if any.
pub fn factor_element<S: PSystem>(sys: &S, w: &GroupWord<S::Elem>, f: Factor) -> Result<Option<S::Elem>> {
    let r = reduce(sys, w)?;
    Ok(match r.syllables.as_slice() {
        [] => Some(sys.identity()),
        [Syllable::Elem(tf, g)] if *tf == f || sys.in_level(g, w.stage - 1) => Some(g.clone()),
        _ => None,
    })
}

pub fn in_factor<S: PSystem>(sys: &S, w: &GroupWord<S::Elem>, f: Factor) -> Result<bool> {
    Ok(factor_element(sys, w, f)?.is_some())
}

/// Membership of `w` in the edge group `G_{stage-1}`.
pub fn edge_element<S: PSystem>(sys: &S, w: &GroupWord<S::Elem>) -> Result<Option<S::Elem>> {
    Ok(factor_element(sys, w, Factor::Base)?.filter(|g| sys.in_level(g, w.stage - 1)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OrderBound {
    /// the order is exactly this
    Exact(usize),
    /// `w^k` is non-trivial for every `k` up to this bound
    GreaterThan(usize),
}

/// Smallest `k <= max_pow` with `w^k = 1`, else the bound `> max_pow`.
pub fn order_probe<S: PSystem>(sys: &S, w: &GroupWord<S::Elem>, max_pow: usize) -> Result<OrderBound> {
    let base = reduce(sys, w)?;
    if base.is_empty() {
        return Ok(OrderBound::Exact(1));
    }
    let mut power = base.clone();
    for k in 2..=max_pow {
        power = reduce(sys, &power.concat(&base)?)?;
        if power.is_empty() {
            return Ok(OrderBound::Exact(k));
        }
    }
    Ok(OrderBound::GreaterThan(max_pow))
}

/// The elements `g` among `candidates` (taken in the copy factor) whose
/// conjugate `t g t⁻¹` lies back in the copy factor.
pub fn intersection_scan<S: PSystem>(sys: &S, stage: usize, candidates: &[S::Elem]) -> Result<HashSet<S::Elem>> {
    let mut out = HashSet::new();
    for g in candidates {
        let w = GroupWord::new(stage, vec![Syllable::t(), Syllable::copy(g.clone()), Syllable::t_inv()]);
        if in_factor(sys, &w, Factor::Copy)? {
            out.insert(g.clone());
        }
    }
    Ok(out)
}
