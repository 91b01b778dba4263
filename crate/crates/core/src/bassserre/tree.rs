use serde::Serialize;

use crate::amalgam::{edge_element, in_factor, reduce, Factor, GroupWord, Syllable};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::psystem::PSystem;
use crate::thompson::Dyadic;

/// Length of an edge of `T_stage`: `1/2^{stage-1}`.
pub fn edge_length(stage: usize) -> Dyadic {
    Dyadic::pow2(1 - stage as i32)
}

/// The vertex `rep·M` (side `Base`) or `rep·M_stage` (side `Copy`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TreeVertex<E: GroupElement> {
    pub stage: usize,
    pub side: Factor,
    pub rep: GroupWord<E>,
}

impl<E: GroupElement> TreeVertex<E> {
    pub fn new(side: Factor, rep: GroupWord<E>) -> Self {
        TreeVertex { stage: rep.stage, side, rep }
    }

    /// The vertex fixed by the factor `side`.
    pub fn fundamental(stage: usize, side: Factor) -> Self {
        TreeVertex::new(side, GroupWord::empty(stage))
    }

    pub fn translate(&self, g: &GroupWord<E>) -> Result<Self> {
        Ok(TreeVertex::new(self.side, g.concat(&self.rep)?))
    }
}

/// The edge `rep·G_{stage-1}`, joining `rep·M` to `rep·M_stage`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TreeEdge<E: GroupElement> {
    pub stage: usize,
    pub rep: GroupWord<E>,
}

impl<E: GroupElement> TreeEdge<E> {
    pub fn new(rep: GroupWord<E>) -> Self {
        TreeEdge { stage: rep.stage, rep }
    }

    pub fn fundamental(stage: usize) -> Self {
        TreeEdge::new(GroupWord::empty(stage))
    }

    pub fn endpoint(&self, side: Factor) -> TreeVertex<E> {
        TreeVertex::new(side, self.rep.clone())
    }

    pub fn translate(&self, g: &GroupWord<E>) -> Result<Self> {
        Ok(TreeEdge::new(g.concat(&self.rep)?))
    }

    pub fn length(&self) -> Dyadic {
        edge_length(self.stage)
    }
}

/// A point of an edge at distance `t` from its `M`-side endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TreePoint<E: GroupElement> {
    pub edge: TreeEdge<E>,
    pub t: Dyadic,
}

impl<E: GroupElement> TreePoint<E> {
    pub fn new(edge: TreeEdge<E>, t: Dyadic) -> Result<Self> {
        if t < Dyadic::ZERO || t > edge.length() {
            return Err(Error::Domain(format!("parameter {t} outside [0, {}]", edge.length())));
        }
        Ok(TreePoint { edge, t })
    }

    pub fn vertex(v: &TreeVertex<E>) -> Self {
        let edge = TreeEdge::new(v.rep.clone());
        let t = match v.side {
            Factor::Base => Dyadic::ZERO,
            Factor::Copy => edge.length(),
        };
        TreePoint { edge, t }
    }

    pub fn stage(&self) -> usize {
        self.edge.stage
    }

    pub fn translate(&self, g: &GroupWord<E>) -> Result<Self> {
        Ok(TreePoint { edge: self.edge.translate(g)?, t: self.t })
    }

    /// The vertex this point coincides with, if it is an endpoint.
    pub fn as_vertex(&self) -> Option<TreeVertex<E>> {
        if self.t == Dyadic::ZERO {
            Some(self.edge.endpoint(Factor::Base))
        } else if self.t == self.edge.length() {
            Some(self.edge.endpoint(Factor::Copy))
        } else {
            None
        }
    }
}

fn same_stage(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::StageMismatch { expected: a, got: b });
    }
    Ok(())
}

/// The non-trivial syllables of the reduced `x⁻¹y`, or none when it lies in
/// the edge group.
fn relative_letters<S: PSystem>(
    sys: &S,
    x: &GroupWord<S::Elem>,
    y: &GroupWord<S::Elem>,
) -> Result<Vec<(Factor, S::Elem)>> {
    let w = reduce(sys, &x.inverse().concat(y)?)?;
    if edge_element(sys, &w)?.is_some() {
        return Ok(Vec::new());
    }
    w.syllables
        .into_iter()
        .map(|s| match s {
            Syllable::Elem(f, g) => Ok((f, g)),
            Syllable::Stable(_) => Err(Error::Unsupported("stable letters do not act on this tree".into())),
        })
        .collect()
}

pub fn vertex_eq<S: PSystem>(sys: &S, u: &TreeVertex<S::Elem>, v: &TreeVertex<S::Elem>) -> Result<bool> {
    same_stage(u.stage, v.stage)?;
    Ok(u.side == v.side && in_factor(sys, &u.rep.inverse().concat(&v.rep)?, u.side)?)
}

pub fn edge_eq<S: PSystem>(sys: &S, e: &TreeEdge<S::Elem>, f: &TreeEdge<S::Elem>) -> Result<bool> {
    same_stage(e.stage, f.stage)?;
    Ok(edge_element(sys, &e.rep.inverse().concat(&f.rep)?)?.is_some())
}

/// The vertices of the geodesic from `u` to `v`, both included, and the
/// edges between consecutive vertices.
pub fn geodesic<S: PSystem>(
    sys: &S,
    u: &TreeVertex<S::Elem>,
    v: &TreeVertex<S::Elem>,
) -> Result<(Vec<TreeVertex<S::Elem>>, Vec<TreeEdge<S::Elem>>)> {
    same_stage(u.stage, v.stage)?;
    let stage = u.stage;
    let letters = relative_letters(sys, &u.rep, &v.rep)?;
    // (prefix, side) relative to u.rep; the edge entering a vertex has the
    // vertex's prefix as representative
    let mut rel: Vec<(GroupWord<S::Elem>, Factor)> = Vec::new();
    let mut prefix = GroupWord::empty(stage);
    match letters.first() {
        None => {
            rel.push((prefix.clone(), u.side));
            if v.side != u.side {
                rel.push((prefix.clone(), v.side));
            }
        }
        Some((f1, _)) => {
            if *f1 != u.side {
                rel.push((prefix.clone(), u.side));
            }
            for (f, g) in &letters {
                rel.push((prefix.clone(), *f));
                prefix.syllables.push(Syllable::Elem(*f, g.clone()));
            }
            let last = letters.last().expect("non-empty").0;
            if v.side != last {
                rel.push((prefix, v.side));
            }
        }
    }
    let mut vertices = Vec::with_capacity(rel.len());
    let mut edges = Vec::with_capacity(rel.len());
    for (k, (p, side)) in rel.iter().enumerate() {
        let rep = reduce(sys, &u.rep.concat(p)?)?;
        if k > 0 {
            edges.push(TreeEdge::new(rep.clone()));
        }
        vertices.push(TreeVertex::new(*side, rep));
    }
    Ok((vertices, edges))
}

/// The vertices of the geodesic from `u` to `v`, both included.
pub fn geodesic_vertices<S: PSystem>(
    sys: &S,
    u: &TreeVertex<S::Elem>,
    v: &TreeVertex<S::Elem>,
) -> Result<Vec<TreeVertex<S::Elem>>> {
    Ok(geodesic(sys, u, v)?.0)
}

/// Number of edges between two vertices.
pub fn combinatorial_distance<S: PSystem>(sys: &S, u: &TreeVertex<S::Elem>, v: &TreeVertex<S::Elem>) -> Result<usize> {
    same_stage(u.stage, v.stage)?;
    let letters = relative_letters(sys, &u.rep, &v.rep)?;
    Ok(match (letters.first(), letters.last()) {
        (Some((first, _)), Some((last, _))) => {
            letters.len() - 1 + usize::from(*first != u.side) + usize::from(*last != v.side)
        }
        _ => usize::from(u.side != v.side),
    })
}

pub fn vertex_distance<S: PSystem>(sys: &S, u: &TreeVertex<S::Elem>, v: &TreeVertex<S::Elem>) -> Result<Dyadic> {
    let n = combinatorial_distance(sys, u, v)?;
    Ok(edge_length(u.stage).scale(n as i128))
}

/// Exact distance in `T_stage`.
pub fn distance<S: PSystem>(sys: &S, p: &TreePoint<S::Elem>, q: &TreePoint<S::Elem>) -> Result<Dyadic> {
    same_stage(p.stage(), q.stage())?;
    if edge_eq(sys, &p.edge, &q.edge)? {
        return Ok((p.t - q.t).abs());
    }
    let len = p.edge.length();
    let ends = |pt: &TreePoint<S::Elem>| {
        [
            (pt.edge.endpoint(Factor::Base), pt.t),
            (pt.edge.endpoint(Factor::Copy), len - pt.t),
        ]
    };
    let mut best: Option<Dyadic> = None;
    for (u, du) in ends(p) {
        for (v, dv) in ends(q) {
            let d = du + vertex_distance(sys, &u, &v)? + dv;
            best = Some(best.map_or(d, |b| b.min(d)));
        }
    }
    Ok(best.expect("four candidates"))
}

/// True when `g` fixes the edge `x·G_{stage-1}`: `x⁻¹gx` reduces into the edge group.
pub fn edge_stabilizer_contains<S: PSystem>(
    sys: &S,
    e: &TreeEdge<S::Elem>,
    g: &GroupWord<S::Elem>,
) -> Result<bool> {
    same_stage(e.stage, g.stage)?;
    let conj = e.rep.inverse().concat(g)?.concat(&e.rep)?;
    Ok(edge_element(sys, &conj)?.is_some())
}

/// True when `g` fixes the vertex `x·F`.
pub fn vertex_stabilizer_contains<S: PSystem>(
    sys: &S,
    v: &TreeVertex<S::Elem>,
    g: &GroupWord<S::Elem>,
) -> Result<bool> {
    same_stage(v.stage, g.stage)?;
    let conj = v.rep.inverse().concat(g)?.concat(&v.rep)?;
    in_factor(sys, &conj, v.side)
}

/// A stabilizer described as the conjugate `x·G_{stage-1}·x⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerDescriptor<E: GroupElement> {
    pub stage: usize,
    /// `G_level` is the conjugated subgroup (`stage - 1` for an edge)
    pub level: usize,
    pub conjugator: GroupWord<E>,
}

impl<E: GroupElement> StabilizerDescriptor<E> {
    pub fn of_edge(e: &TreeEdge<E>) -> Self {
        StabilizerDescriptor { stage: e.stage, level: e.stage - 1, conjugator: e.rep.clone() }
    }

    pub fn contains<S: PSystem<Elem = E>>(&self, sys: &S, g: &GroupWord<E>) -> Result<bool> {
        let conj = self.conjugator.inverse().concat(g)?.concat(&self.conjugator)?;
        Ok(match crate::amalgam::factor_element(sys, &conj, Factor::Base)? {
            Some(h) => sys.in_level(&h, self.level),
            None => false,
        })
    }

    /// The member `x·h·x⁻¹` for `h ∈ G_level`.
    pub fn member(&self, h: E) -> GroupWord<E> {
        self.conjugator
            .then(&GroupWord::base(self.stage, h))
            .then(&self.conjugator.inverse())
    }
}

impl<E: GroupElement + std::fmt::Display> std::fmt::Display for TreePoint<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}@{}", self.edge.rep, self.t)
    }
}

impl<E: GroupElement + std::fmt::Display> std::fmt::Display for TreeVertex<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}·{}", self.rep, self.side)
    }
}
