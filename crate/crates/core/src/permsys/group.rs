use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::group::GroupElement;

use super::matrix::UtMatrix;
use super::perm::Perm;

/// Largest group the brute-force routines will enumerate.
pub const ORDER_GUARD: usize = 1_000_000;

/// A finite group given by generators.
#[derive(Clone, Debug)]
pub struct FiniteGroup<E> {
    pub name: String,
    identity: E,
    generators: Vec<E>,
}

impl<E: GroupElement> FiniteGroup<E> {
    pub fn new(name: impl Into<String>, identity: E, generators: Vec<E>) -> FiniteGroup<E> {
        FiniteGroup { name: name.into(), identity, generators }
    }

    pub fn identity(&self) -> &E {
        &self.identity
    }

    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    /// Every element, in breadth-first order from the identity.
    pub fn enumerate(&self) -> Result<Vec<E>> {
        closure(&self.identity, &self.generators, ORDER_GUARD)
    }

    pub fn elements(&self) -> Result<HashSet<E>> {
        Ok(self.enumerate()?.into_iter().collect())
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.enumerate()?.len())
    }
}

/// Breadth-first closure of `generators` under right multiplication.
pub fn closure<E: GroupElement>(identity: &E, generators: &[E], guard: usize) -> Result<Vec<E>> {
    let mut seen: HashSet<E> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity.clone());
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                if seen.len() > guard {
                    return Err(Error::GuardExceeded(guard));
                }
                queue.push_back(y);
            }
        }
        order.push(x);
    }
    Ok(order)
}

/// The smallest normal subgroup of `group` containing `s`.
///
/// Conjugates of each new generator by the generators of `group` are queued;
/// a candidate already inside the current subgroup is skipped, otherwise it
/// becomes a new generator and the subgroup is regenerated.
pub fn normal_closure<E: GroupElement>(s: &[E], group: &FiniteGroup<E>) -> Result<HashSet<E>> {
    let mut gens: Vec<E> = Vec::new();
    let mut members: HashSet<E> = HashSet::from([group.identity.clone()]);
    let mut queue: VecDeque<E> = s.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        if members.contains(&x) {
            continue;
        }
        for h in &group.generators {
            queue.push_back(x.conj(h));
        }
        gens.push(x);
        members = closure(&group.identity, &gens, ORDER_GUARD)?.into_iter().collect();
    }
    Ok(members)
}

pub fn symmetric(n: usize) -> FiniteGroup<Perm> {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Perm::from_cycles(n, &[&[1, 2]]).expect("valid"));
        let long: Vec<usize> = (1..=n).collect();
        gens.push(Perm::from_cycles(n, &[&long]).expect("valid"));
    }
    FiniteGroup::new(format!("Sym({n})"), Perm::identity(n), gens)
}

/// `Sym(k)` acting on the first `k` of `n` points.
pub fn symmetric_on(k: usize, n: usize) -> FiniteGroup<Perm> {
    let g = symmetric(k);
    FiniteGroup::new(
        format!("Sym({k})"),
        Perm::identity(n),
        g.generators.iter().map(|p| p.extend(n)).collect(),
    )
}

pub fn alternating(n: usize) -> FiniteGroup<Perm> {
    let gens = (3..=n)
        .map(|k| Perm::from_cycles(n, &[&[1, 2, k]]).expect("valid"))
        .collect();
    FiniteGroup::new(format!("Alt({n})"), Perm::identity(n), gens)
}

pub fn unitriangular(dim: usize, p: u32) -> FiniteGroup<UtMatrix> {
    let gens = (0..dim.saturating_sub(1))
        .map(|k| UtMatrix::elementary(dim, p, k, k + 1).expect("valid"))
        .collect();
    FiniteGroup::new(format!("UT({dim},F{p})"), UtMatrix::identity(dim, p), gens)
}

pub fn trivial<E: GroupElement>(identity: E) -> FiniteGroup<E> {
    FiniteGroup::new("1", identity, Vec::new())
}
