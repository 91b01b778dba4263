use serde::Serialize;
use serde_json::json;

use super::probe::{limit_distance, ProbeResult};
use crate::amalgam::{CosetOracle, Factor, GroupWord, Syllable};
use crate::bassserre::{
    ball, distance, edge_eq, edge_length, geodesic, vertex_stabilizer_contains, StabilizerDescriptor, TreeEdge,
    TreePoint,
};
use crate::error::{Error, Result};
use crate::foldengine::{edge_image_range, phi_range, point_image_range};
use crate::psystem::{seeded_rng, PSystem};
use crate::report::{CheckReport, Evidence};
use crate::thompson::Dyadic;

/// An edge inside the image of an arc, whose stabilizer contains the arc's.
#[derive(Clone, Debug, Serialize)]
pub struct ArcStabilizer<E: crate::GroupElement> {
    pub m: usize,
    pub edge: TreeEdge<E>,
    pub descriptor: StabilizerDescriptor<E>,
    pub conjugator: GroupWord<E>,
    pub probe: ProbeResult,
    /// `m` was chosen as the first stage with a full edge in the geodesic,
    /// because no stage with `2^{2-m} < d` was available
    pub fallback: bool,
}

impl<E: crate::GroupElement> ArcStabilizer<E> {
    pub fn contains<S: PSystem<Elem = E>>(&self, sys: &S, g: &GroupWord<E>) -> Result<bool> {
        self.descriptor.contains(sys, g)
    }
}

/// A full edge of the geodesic `[p, q]`, if there is one.
fn full_edge<S: PSystem>(sys: &S, p: &TreePoint<S::Elem>, q: &TreePoint<S::Elem>) -> Result<Option<TreeEdge<S::Elem>>> {
    let len = p.edge.length();
    if edge_eq(sys, &p.edge, &q.edge)? {
        let full = (p.t - q.t).abs() == len;
        return Ok(full.then(|| p.edge.clone()));
    }
    let target = distance(sys, p, q)?;
    let ends = |pt: &TreePoint<S::Elem>| {
        [(pt.edge.endpoint(Factor::Base), pt.t), (pt.edge.endpoint(Factor::Copy), len - pt.t)]
    };
    for (u, du) in ends(p) {
        for (v, dv) in ends(q) {
            let (_, edges) = geodesic(sys, &u, &v)?;
            if du + edge_length(p.stage()).scale(edges.len() as i128) + dv != target {
                continue;
            }
            if let Some(e) = edges.into_iter().next() {
                return Ok(Some(e));
            }
            if du == len {
                return Ok(Some(p.edge.clone()));
            }
            if dv == len {
                return Ok(Some(q.edge.clone()));
            }
        }
    }
    Ok(None)
}

/// Locates a stage `m` and an edge of `T_m` inside the image of `[x, y]`.
/// The stabilizer of the arc in the limit embeds in the returned conjugate
/// of `G_{m-1}`.
pub fn arc_stabilizer<S: PSystem>(
    sys: &S,
    x: &TreePoint<S::Elem>,
    y: &TreePoint<S::Elem>,
    j_max: usize,
    window: usize,
) -> Result<ArcStabilizer<S::Elem>> {
    let probe = limit_distance(sys, x, y, j_max, window)?;
    let Some(k) = probe.stable_stage else {
        return Err(Error::Exhausted(probe.j_max));
    };
    let d = probe.value;
    if d == Dyadic::ZERO {
        return Err(Error::Precondition("the arc is degenerate".into()));
    }
    let last = probe.j_max;
    let preferred = (k..=last).find(|m| Dyadic::pow2(2 - *m as i32) < d);
    let candidates: Vec<(usize, bool)> = match preferred {
        Some(m) => vec![(m, false)],
        None => (k..=last).map(|m| (m, true)).collect(),
    };
    for (m, fallback) in candidates {
        let p = point_image_range(sys, x, m)?;
        let q = point_image_range(sys, y, m)?;
        if let Some(edge) = full_edge(sys, &p, &q)? {
            return Ok(ArcStabilizer {
                m,
                descriptor: StabilizerDescriptor::of_edge(&edge),
                conjugator: edge.rep.clone(),
                edge,
                probe,
                fallback,
            });
        }
    }
    Err(Error::Exhausted(last))
}

/// Samples members of the returned subgroup and checks that their images
/// fix the images of the witness edge at every stage up to `j_max`.
pub fn check_arc_stabilizer<S: PSystem>(
    sys: &S,
    arc: &ArcStabilizer<S::Elem>,
    j_max: usize,
    samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    let report = CheckReport::new("arc_stabilizer", json!({"system": sys.name(), "m": arc.m, "j_max": j_max}))
        .with_seed(seed)
        .with_samples(samples);
    let j_max = sys.max_stage().map_or(j_max, |m| j_max.min(m)).max(arc.m);
    let mut rng = seeded_rng(seed);
    let images: Vec<_> = (arc.m..=j_max).map(|j| edge_image_range(sys, &arc.edge, j)).collect::<Result<_>>()?;
    for _ in 0..samples {
        let h = sys.sample_level(arc.m - 1, &mut rng);
        let g = arc.descriptor.member(h.clone());
        if !arc.contains(sys, &g)? {
            return Ok(report.fail(json!({"h": h}), "a sampled member is rejected by the membership test"));
        }
        for (k, (u, v)) in images.iter().enumerate() {
            let j = arc.m + k;
            let gj = phi_range(sys, &g, j)?;
            if !(vertex_stabilizer_contains(sys, u, &gj)? && vertex_stabilizer_contains(sys, v, &gj)?) {
                return Ok(report.fail(json!({"h": h, "stage": j}), format!("member moves the edge image at stage {j}")));
            }
        }
    }
    Ok(report.pass(Evidence::Sampled, format!("members fix the witness edge at stages {}..={j_max}", arc.m)))
}

/// Compares the membership test with the stabilizer of the witness edge
/// read off the coset-graph ball, over both vertex stabilizers of the edge.
pub fn finite_stabilizer_agreement<S: PSystem>(sys: &S, arc: &ArcStabilizer<S::Elem>) -> Result<CheckReport> {
    let report = CheckReport::new("arc_stabilizer_exhaustive", json!({"system": sys.name(), "m": arc.m}));
    let Some(all) = sys.elements() else {
        return Ok(report.inconclusive("the group is not enumerable"));
    };
    let oracle = CosetOracle::new(sys, arc.m)?;
    let b = ball(sys, &arc.edge.endpoint(Factor::Base), 1)?;
    let label = oracle.edge_label(&arc.edge.rep)?;
    if !b.edges.iter().any(|e| e.label == label) {
        return Err(Error::Construction("witness edge missing from its own ball".into()));
    }
    let x = &arc.edge.rep;
    let mut checked = 0;
    for g in all {
        for f in [Factor::Base, Factor::Copy] {
            let w = x.then(&GroupWord::new(arc.m, vec![Syllable::Elem(f, g.clone())])).then(&x.inverse());
            let by_ball = oracle.edge_label(&w.then(x))? == label;
            if by_ball != arc.contains(sys, &w)? {
                return Ok(report.with_samples(checked).fail(
                    json!({"g": g, "factor": f, "ball": by_ball}),
                    "membership test disagrees with the ball",
                ));
            }
            checked += 1;
        }
    }
    Ok(report
        .with_samples(checked)
        .pass(Evidence::Exhaustive, format!("{checked} conjugates agree with the ball stabilizer")))
}
