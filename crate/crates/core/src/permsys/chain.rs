use std::collections::HashSet;
use std::sync::Arc;

use serde_json::json;

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::report::{CheckReport, Evidence};

use super::group::{alternating, normal_closure, trivial, unitriangular, FiniteGroup};
use super::matrix::UtMatrix;
use super::perm::Perm;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainKind {
    Alt,
    Ut,
    Custom,
}

type Embedding<E> = Arc<dyn Fn(&E) -> E + Send + Sync>;

/// A chain `G_0 < G_1 < … < G_n` of finite groups with embeddings
/// `γ_{i-1}: G_{i-1} → G_i`.
#[derive(Clone)]
pub struct ChainSpec<E> {
    pub kind: ChainKind,
    pub name: String,
    levels: Vec<FiniteGroup<E>>,
    embeddings: Vec<Embedding<E>>,
}

impl<E: GroupElement> ChainSpec<E> {
    /// `embeddings[k]` maps level `k` into level `k + 1`.
    pub fn new(
        kind: ChainKind,
        name: impl Into<String>,
        levels: Vec<FiniteGroup<E>>,
        embeddings: Vec<Embedding<E>>,
    ) -> Result<ChainSpec<E>> {
        if levels.is_empty() || embeddings.len() + 1 != levels.len() {
            return Err(Error::Construction("need one embedding between each pair of levels".into()));
        }
        Ok(ChainSpec { kind, name: name.into(), levels, embeddings })
    }

    /// Index of the top level.
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, i: usize) -> Result<&FiniteGroup<E>> {
        self.levels.get(i).ok_or(Error::StageOutOfRange { stage: i, max: self.top() })
    }

    /// `γ_{i-1}(g)` for `g ∈ G_{i-1}`.
    pub fn embed(&self, g: &E, i: usize) -> Result<E> {
        if i == 0 || i > self.top() {
            return Err(Error::StageOutOfRange { stage: i, max: self.top() });
        }
        Ok((self.embeddings[i - 1])(g))
    }
}

/// `G_0 = 1`, `G_i = Alt(i+4)`, each level fixing the last point of the next.
pub fn alt_chain(top: usize) -> ChainSpec<Perm> {
    let mut levels = vec![FiniteGroup::new("1", Perm::identity(4), Vec::new())];
    let mut embeddings: Vec<Embedding<Perm>> = Vec::new();
    for i in 1..=top {
        levels.push(alternating(i + 4));
        embeddings.push(Arc::new(move |g: &Perm| g.extend(i + 4)));
    }
    ChainSpec::new(ChainKind::Alt, "alt-chain", levels, embeddings).expect("well-formed chain")
}

/// `G_0 = 1`, `G_i = UT(i+2, F_p)`, each level the stabilizer of the last
/// basis vector of the next.
pub fn ut_chain(top: usize, p: u32) -> ChainSpec<UtMatrix> {
    let mut levels = vec![trivial(UtMatrix::identity(2, p))];
    let mut embeddings: Vec<Embedding<UtMatrix>> = Vec::new();
    for i in 1..=top {
        levels.push(unitriangular(i + 2, p));
        embeddings.push(Arc::new(move |g: &UtMatrix| g.extend(i + 2)));
    }
    ChainSpec::new(ChainKind::Ut, format!("ut-chain(F{p})"), levels, embeddings).expect("well-formed chain")
}

/// `C_2 < C_4` inside `Sym(4)`: the subgroup is normal, so condition (5.1)
/// fails. Note that here `G_0` is not trivial.
pub fn c2_in_c4() -> ChainSpec<Perm> {
    let c4 = FiniteGroup::new("C4", Perm::identity(4), vec!["4:(1 2 3 4)".parse().expect("valid")]);
    let c2 = FiniteGroup::new("C2", Perm::identity(4), vec!["4:(1 3)(2 4)".parse().expect("valid")]);
    ChainSpec::new(ChainKind::Custom, "c2<c4", vec![c2, c4], vec![Arc::new(|g: &Perm| g.clone())])
        .expect("well-formed chain")
}

/// Checks that `G_{i-1}` contains no non-trivial normal subgroup of `G_i`:
/// every non-trivial `g ∈ G_{i-1}` must have a normal closure in `G_i` that
/// leaves `γ(G_{i-1})`.
pub fn condition51<E: GroupElement>(chain: &ChainSpec<E>, i: usize) -> Result<CheckReport> {
    let report = CheckReport::new("condition51", json!({"chain": chain.name, "i": i}));
    let lower = chain.level(i.checked_sub(1).ok_or(Error::Precondition("i >= 1".into()))?)?;
    let upper = chain.level(i)?;
    let embedded: Vec<E> = lower
        .enumerate()?
        .iter()
        .map(|g| chain.embed(g, i))
        .collect::<Result<_>>()?;
    let image: HashSet<E> = embedded.iter().cloned().collect();
    let mut checked = 0;
    for g in embedded.iter().filter(|g| !g.is_identity()) {
        let n = normal_closure(std::slice::from_ref(g), upper)?;
        checked += 1;
        if n.iter().all(|x| image.contains(x)) {
            return Ok(report.with_samples(checked).fail(
                json!({"g": g, "normal_closure_order": n.len()}),
                format!("the normal closure of {g:?} in {} stays inside G_{}", upper.name, i - 1),
            ));
        }
    }
    Ok(report.with_samples(checked).pass(
        Evidence::Exhaustive,
        format!("all {checked} non-trivial elements of G_{} checked in {}", i - 1, upper.name),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embeddings_are_homomorphisms() {
        let chain = alt_chain(2);
        let g1 = chain.level(1).unwrap().enumerate().unwrap();
        for a in g1.iter().take(12) {
            for b in g1.iter().take(12) {
                let lhs = chain.embed(&a.mul(b), 2).unwrap();
                let rhs = chain.embed(a, 2).unwrap().mul(&chain.embed(b, 2).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn small_condition51_cases() {
        assert!(condition51(&alt_chain(1), 1).unwrap().is_pass());
        assert!(condition51(&ut_chain(2, 2), 2).unwrap().is_pass());
        let fail = condition51(&c2_in_c4(), 1).unwrap();
        assert!(fail.is_fail());
        assert_eq!(fail.witness.unwrap()["g"], json!([3, 4, 1, 2]));
    }
}
