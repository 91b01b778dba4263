use crate::amalgam::{check_stage, reduce, Factor, GroupWord, Syllable};
use crate::bassserre::{TreeEdge, TreePoint, TreeVertex};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::psystem::PSystem;

/// The pair of maps out of stage `i`.
pub struct StageMap<'a, S: PSystem> {
    sys: &'a S,
    pub i: usize,
    swap: S::Elem,
}

impl<'a, S: PSystem> StageMap<'a, S> {
    pub fn new(sys: &'a S, i: usize) -> Result<Self> {
        check_stage(sys, i)?;
        check_stage(sys, i + 1)?;
        Ok(StageMap { sys, i, swap: sys.swap(i)? })
    }

    fn expect_stage(&self, stage: usize) -> Result<()> {
        if stage != self.i {
            return Err(Error::StageMismatch { expected: self.i, got: stage });
        }
        Ok(())
    }

    /// `β_{i+1}(a_i)` as a stage `i+1` word.
    pub fn swap_word(&self) -> GroupWord<S::Elem> {
        GroupWord::copy(self.i + 1, self.swap.clone())
    }

    /// `M` is fixed; an `M_i`-syllable `h` becomes `[C:a_i]·[M:h]·[C:a_i⁻¹]`.
    pub fn phi(&self, w: &GroupWord<S::Elem>) -> Result<GroupWord<S::Elem>> {
        self.expect_stage(w.stage)?;
        let mut out = Vec::with_capacity(w.len() * 3);
        for s in &w.syllables {
            match s {
                Syllable::Elem(Factor::Base, g) => out.push(Syllable::base(g.clone())),
                Syllable::Elem(Factor::Copy, h) => {
                    out.push(Syllable::copy(self.swap.clone()));
                    out.push(Syllable::base(h.clone()));
                    out.push(Syllable::copy(self.swap.inv()));
                }
                Syllable::Stable(_) => {
                    return Err(Error::Unsupported("stage maps are defined on amalgam words only".into()))
                }
            }
        }
        reduce(self.sys, &GroupWord::new(self.i + 1, out))
    }

    pub fn point_image(&self, p: &TreePoint<S::Elem>) -> Result<TreePoint<S::Elem>> {
        self.expect_stage(p.stage())?;
        let len = p.edge.length();
        let x = self.phi(&p.edge.rep)?;
        if p.t <= len.half() {
            TreePoint::new(TreeEdge::new(x), p.t)
        } else {
            let rep = reduce(self.sys, &x.concat(&self.swap_word())?)?;
            TreePoint::new(TreeEdge::new(rep), len - p.t)
        }
    }

    pub fn vertex_image(&self, v: &TreeVertex<S::Elem>) -> Result<TreeVertex<S::Elem>> {
        let q = self.point_image(&TreePoint::vertex(v))?;
        Ok(q.as_vertex().expect("vertices map to vertices"))
    }
}

pub fn phi<S: PSystem>(sys: &S, w: &GroupWord<S::Elem>) -> Result<GroupWord<S::Elem>> {
    StageMap::new(sys, w.stage)?.phi(w)
}

/// `φ_{ij}` for `i = w.stage`; `j = i` is the identity (after reduction).
pub fn phi_range<S: PSystem>(sys: &S, w: &GroupWord<S::Elem>, j: usize) -> Result<GroupWord<S::Elem>> {
    if j < w.stage {
        return Err(Error::StageMismatch { expected: w.stage, got: j });
    }
    let mut w = reduce(sys, w)?;
    for i in w.stage..j {
        w = StageMap::new(sys, i)?.phi(&w)?;
    }
    Ok(w)
}

pub fn point_image<S: PSystem>(sys: &S, p: &TreePoint<S::Elem>) -> Result<TreePoint<S::Elem>> {
    StageMap::new(sys, p.stage())?.point_image(p)
}

pub fn point_image_range<S: PSystem>(sys: &S, p: &TreePoint<S::Elem>, j: usize) -> Result<TreePoint<S::Elem>> {
    if j < p.stage() {
        return Err(Error::StageMismatch { expected: p.stage(), got: j });
    }
    let mut p = p.clone();
    for i in p.stage()..j {
        p = StageMap::new(sys, i)?.point_image(&p)?;
    }
    Ok(p)
}

pub fn vertex_image<S: PSystem>(sys: &S, v: &TreeVertex<S::Elem>) -> Result<TreeVertex<S::Elem>> {
    StageMap::new(sys, v.stage)?.vertex_image(v)
}

pub fn vertex_image_range<S: PSystem>(sys: &S, v: &TreeVertex<S::Elem>, j: usize) -> Result<TreeVertex<S::Elem>> {
    let q = point_image_range(sys, &TreePoint::vertex(v), j)?;
    Ok(q.as_vertex().expect("vertices map to vertices"))
}

/// Images of both endpoints of `e` at stage `j`; the image of `e` is the
/// geodesic between them.
pub fn edge_image_range<S: PSystem>(
    sys: &S,
    e: &TreeEdge<S::Elem>,
    j: usize,
) -> Result<(TreeVertex<S::Elem>, TreeVertex<S::Elem>)> {
    Ok((
        vertex_image_range(sys, &e.endpoint(Factor::Base), j)?,
        vertex_image_range(sys, &e.endpoint(Factor::Copy), j)?,
    ))
}
