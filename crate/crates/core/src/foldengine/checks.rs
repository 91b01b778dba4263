use rand::Rng;
use serde_json::json;

use super::folds::{random_edge, random_point};
use super::map::{edge_image_range, phi_range, point_image, vertex_image_range, StageMap};
use crate::amalgam::{check_stage, Factor, GroupWord};
use crate::bassserre::{
    distance, edge_eq, edge_length, edge_stabilizer_contains, vertex_eq, vertex_stabilizer_contains, TreeEdge,
    TreePoint, TreeVertex,
};
use crate::error::Result;
use crate::group::GroupElement;
use crate::psystem::{seeded_rng, PSystem};
use crate::report::{CheckReport, Evidence};
use crate::thompson::Dyadic;

/// Test elements for level `i`: exhaustive on finite systems, sampled otherwise.
pub(crate) struct Pools<E> {
    pub all: Vec<E>,
    pub level: Vec<E>,
    pub lower: Vec<E>,
    /// `G_i \ G_{i-1}`
    pub strict: Vec<E>,
    /// `M \ G_i`
    pub outside: Vec<E>,
    pub evidence: Evidence,
}

pub(crate) fn pools<S: PSystem>(sys: &S, i: usize, samples: usize, seed: u64) -> Pools<S::Elem> {
    if let (Some(all), Some(level), Some(lower)) = (sys.elements(), sys.level_elements(i), sys.level_elements(i - 1)) {
        return Pools {
            all: all.to_vec(),
            level: level.to_vec(),
            lower: lower.to_vec(),
            strict: level.iter().filter(|g| !sys.in_level(g, i - 1)).cloned().collect(),
            outside: all.iter().filter(|g| !sys.in_level(g, i)).cloned().collect(),
            evidence: Evidence::Exhaustive,
        };
    }
    let mut rng = seeded_rng(seed);
    Pools {
        all: (0..samples).map(|_| sys.sample(&mut rng)).collect(),
        level: (0..samples).map(|_| sys.sample_level(i, &mut rng)).collect(),
        lower: (0..samples).map(|_| sys.sample_level(i - 1, &mut rng)).collect(),
        strict: (0..samples).filter_map(|_| sys.sample_level_strict(i, &mut rng)).collect(),
        outside: (0..samples).filter_map(|_| sys.sample_outside_level(i, &mut rng)).collect(),
        evidence: Evidence::Sampled,
    }
}

/// Tallies membership tests against their expected outcome; the first
/// mismatch becomes the witness. A passing report carries the tallies.
struct Ledger {
    counts: Vec<(String, usize)>,
    failure: Option<(serde_json::Value, String)>,
}

impl Ledger {
    fn new() -> Self {
        Ledger { counts: Vec::new(), failure: None }
    }

    fn record(&mut self, clause: &str, got: bool, expected: bool, witness: impl FnOnce() -> serde_json::Value) {
        match self.counts.iter_mut().find(|(c, _)| c == clause) {
            Some((_, n)) => *n += 1,
            None => self.counts.push((clause.to_string(), 1)),
        }
        if got != expected && self.failure.is_none() {
            let mut w = witness();
            w["clause"] = json!(clause);
            w["expected"] = json!(expected);
            self.failure = Some((w, format!("clause {clause}: expected {expected}, got {got}")));
        }
    }

    fn finish(self, report: CheckReport, evidence: Evidence) -> CheckReport {
        let total: usize = self.counts.iter().map(|(_, n)| n).sum();
        let summary: Vec<String> = self.counts.iter().map(|(c, n)| format!("{c}: {n}")).collect();
        let report = report.with_samples(total);
        match self.failure {
            Some((w, msg)) => report.fail(w, msg),
            None => {
                let counts: serde_json::Map<String, serde_json::Value> =
                    self.counts.into_iter().map(|(c, n)| (c, json!(n))).collect();
                let mut r = report.pass(evidence, summary.join(", "));
                r.witness = Some(json!({ "counts": counts }));
                r
            }
        }
    }
}

/// Vertex and edge stabilizers of the stage `i+1` images, and which edges the
/// map identifies.
pub fn check_morph_summary<S: PSystem>(sys: &S, i: usize, samples: usize, seed: u64) -> Result<CheckReport> {
    let report = CheckReport::new("morph_summary", json!({"system": sys.name(), "i": i})).with_seed(seed);
    let map = match StageMap::new(sys, i) {
        Ok(m) if i >= 1 => m,
        _ => return Ok(report.inconclusive(format!("no stage map out of stage {i}"))),
    };
    let n = i + 1;
    let a = sys.swap(i)?;
    let p = pools(sys, i, samples, seed);
    let mut led = Ledger::new();
    let len = edge_length(i);
    let fundamental = TreeEdge::fundamental(i);

    // (1) the images of M, M_i and of the midpoint
    let x1 = map.vertex_image(&TreeVertex::fundamental(i, Factor::Base))?;
    let y1 = map.vertex_image(&TreeVertex::fundamental(i, Factor::Copy))?;
    let mid = map
        .point_image(&TreePoint::new(fundamental.clone(), len.half())?)?
        .as_vertex()
        .expect("the midpoint lands on a vertex");
    led.record("1", vertex_eq(sys, &x1, &TreeVertex::fundamental(n, Factor::Base))?, true, || json!({"vertex": "M"}));
    let y_expected = TreeVertex::new(Factor::Base, map.swap_word());
    led.record("1", vertex_eq(sys, &y1, &y_expected)?, true, || json!({"vertex": "M_i"}));
    led.record("1", vertex_eq(sys, &mid, &TreeVertex::fundamental(n, Factor::Copy))?, true, || {
        json!({"vertex": "midpoint"})
    });
    for g in &p.all {
        let w = || json!({"g": g});
        led.record("1", vertex_stabilizer_contains(sys, &x1, &GroupWord::base(n, g.clone()))?, true, w);
        let moved = map.phi(&GroupWord::copy(i, g.clone()))?;
        led.record("1", vertex_stabilizer_contains(sys, &y1, &moved)?, true, w);
        led.record("1", vertex_stabilizer_contains(sys, &mid, &GroupWord::copy(n, g.clone()))?, true, w);
    }
    for g in &p.outside {
        let w = || json!({"g": g});
        led.record("1", vertex_stabilizer_contains(sys, &x1, &GroupWord::copy(n, g.clone()))?, false, w);
        led.record("1", vertex_stabilizer_contains(sys, &mid, &GroupWord::base(n, g.clone()))?, false, w);
        led.record("1", vertex_stabilizer_contains(sys, &y1, &GroupWord::base(n, g.clone()))?, false, w);
    }

    // (2) the two halves of the fundamental edge
    let e1 = map.point_image(&TreePoint::new(fundamental.clone(), len.mul_pow2(-2))?)?.edge;
    let e2 = map.point_image(&TreePoint::new(fundamental.clone(), len.mul_pow2(-2).scale(3))?)?.edge;
    led.record("2", edge_eq(sys, &e1, &TreeEdge::fundamental(n))?, true, || json!({"edge": "e1"}));
    led.record("2", edge_eq(sys, &e2, &TreeEdge::new(map.swap_word()))?, true, || json!({"edge": "e2"}));
    led.record("2", edge_eq(sys, &e1, &e2)?, false, || json!({"edge": "e1 = e2"}));
    let conj = |g: &S::Elem| GroupWord::copy(n, g.conj(&a));
    for g in &p.level {
        let w = || json!({"g": g});
        led.record("2", edge_stabilizer_contains(sys, &e1, &GroupWord::base(n, g.clone()))?, true, w);
        led.record("2", edge_stabilizer_contains(sys, &e2, &conj(g))?, true, w);
    }
    for g in &p.outside {
        let w = || json!({"g": g});
        led.record("2", edge_stabilizer_contains(sys, &e1, &GroupWord::base(n, g.clone()))?, false, w);
        led.record("2", edge_stabilizer_contains(sys, &e2, &conj(g))?, false, w);
    }

    // (3) and (4): c·e_1 lands on ē_1 (resp. c·e_2 on ē_2) exactly when c ∈ G_i
    for c in p.strict.iter().chain(&p.outside) {
        let expected = sys.in_level(c, i);
        let w = || json!({"c": c});
        let q = map.point_image(&TreePoint::new(TreeEdge::new(GroupWord::base(i, c.clone())), len.mul_pow2(-2))?)?;
        let dir = if expected { "in" } else { "out" };
        led.record(&format!("3:{dir}"), edge_eq(sys, &q.edge, &e1)?, expected, w);
        let q = map.point_image(&TreePoint::new(
            TreeEdge::new(GroupWord::copy(i, c.clone())),
            len.mul_pow2(-2).scale(3),
        )?)?;
        led.record(&format!("4:{dir}"), edge_eq(sys, &q.edge, &e2)?, expected, w);
    }
    Ok(led.finish(report, p.evidence))
}

/// Stabilizers are transported by `φ_{ij}`, and `G_i ∩ G_i^{a_i} = G_{i-1}`.
pub fn check_edge_stab<S: PSystem>(
    sys: &S,
    e: &TreeEdge<S::Elem>,
    j: usize,
    samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    let i = e.stage;
    let report = CheckReport::new("edge_stab", json!({"system": sys.name(), "i": i, "j": j, "edge": e.rep}))
        .with_seed(seed);
    if j < i || check_stage(sys, j).is_err() || StageMap::new(sys, i).is_err() {
        return Ok(report.inconclusive(format!("stages {i}..{j} are not all available")));
    }
    let a = sys.swap(i)?;
    let p = pools(sys, i, samples, seed);
    let mut led = Ledger::new();
    let (u, v) = edge_image_range(sys, e, j)?;
    let len = edge_length(i);
    let mid = vertex_image_range(
        sys,
        &point_image(sys, &TreePoint::new(e.clone(), len.half())?)?.as_vertex().expect("midpoint"),
        j,
    )?;
    let fixes = |g: &GroupWord<S::Elem>, w: &TreeVertex<S::Elem>| vertex_stabilizer_contains(sys, w, g);
    let conj_by_rep = |g: GroupWord<S::Elem>| e.rep.then(&g).then(&e.rep.inverse());

    for h in &p.lower {
        let g = conj_by_rep(GroupWord::base(i, h.clone()));
        let w = || json!({"h": h});
        led.record("source", edge_stabilizer_contains(sys, e, &g)?, true, w);
        let gj = phi_range(sys, &g, j)?;
        led.record("contains", fixes(&gj, &u)? && fixes(&gj, &v)?, true, w);
    }
    for c in p.strict.iter().chain(&p.outside) {
        let w = || json!({"c": c});
        for g in [GroupWord::base(i, c.clone()), GroupWord::copy(i, c.clone())] {
            let gj = phi_range(sys, &conj_by_rep(g), j)?;
            led.record("excludes", fixes(&gj, &u)? && fixes(&gj, &v)?, false, w);
        }
    }
    // an element of G_i \ G_{i-1} keeps the M-side half but moves the edge
    if j > i {
        for c in &p.strict {
            let gj = phi_range(sys, &conj_by_rep(GroupWord::base(i, c.clone())), j)?;
            let w = || json!({"c": c});
            led.record("half", fixes(&gj, &u)? && fixes(&gj, &mid)?, true, w);
            led.record("half", fixes(&gj, &v)?, false, w);
        }
    }
    // G_i ∩ a_i G_i a_i⁻¹ = G_{i-1}
    let conjugated: Vec<S::Elem> = p.level.iter().map(|g| g.conj(&a)).collect();
    for g in p.all.iter().chain(&p.level).chain(&p.lower).chain(&conjugated) {
        let both = sys.in_level(g, i) && sys.in_level(&g.conj(&a.inv()), i);
        led.record("intersection", both, sys.in_level(g, i - 1), || json!({"g": g}));
    }
    Ok(led.finish(report, p.evidence))
}

/// Single-edge isometry up to `j_max`, distance non-increase, equivariance
/// and dyadic vertex distances, on random edges and points of `T_i`.
pub fn check_point_map<S: PSystem>(
    sys: &S,
    i: usize,
    j_max: usize,
    samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    let report = CheckReport::new("point_map", json!({"system": sys.name(), "i": i, "j_max": j_max})).with_seed(seed);
    if j_max <= i || check_stage(sys, j_max).is_err() || check_stage(sys, i).is_err() {
        return Ok(report.inconclusive(format!("stages {i}..{j_max} are not all available")));
    }
    let mut rng = seeded_rng(seed);
    let mut led = Ledger::new();
    let dyadic_ok = |d: Dyadic, j: usize| d.denominator_divides_pow2(j as u32 - 1);
    for _ in 0..samples {
        let len = rng.gen_range(0..4);
        let e = random_edge(sys, i, len, &mut rng)?;
        let mut ends = (TreePoint::vertex(&e.endpoint(Factor::Base)), TreePoint::vertex(&e.endpoint(Factor::Copy)));
        let mut p = random_point(sys, i, len, &mut rng)?;
        let mut q = random_point(sys, i, len, &mut rng)?;
        let mut d_prev = distance(sys, &p, &q)?;
        let g = crate::amalgam::reduce(sys, &crate::amalgam::random_word(sys, i, 2, &mut rng))?;
        let w = || json!({"edge": e.rep});
        for j in i..=j_max {
            if j > i {
                ends = (point_image(sys, &ends.0)?, point_image(sys, &ends.1)?);
                let (p2, q2) = (point_image(sys, &p)?, point_image(sys, &q)?);
                let d = distance(sys, &p2, &q2)?;
                led.record("non-increase", d <= d_prev, true, || json!({"p": p, "q": q, "stage": j}));
                d_prev = d;
                p = p2;
                q = q2;
            }
            let d = distance(sys, &ends.0, &ends.1)?;
            led.record("isometry", d == edge_length(i), true, w);
            led.record("dyadic", dyadic_ok(d, j), true, || json!({"d": d, "stage": j}));
        }
        if i < j_max {
            // point_image(g·p) = φ(g)·point_image(p)
            let p0 = random_point(sys, i, len, &mut rng)?;
            let lhs = point_image(sys, &p0.translate(&g)?)?;
            let rhs = point_image(sys, &p0)?.translate(&StageMap::new(sys, i)?.phi(&g)?)?;
            led.record("equivariance", distance(sys, &lhs, &rhs)? == Dyadic::ZERO, true, || {
                json!({"g": g, "p": p0})
            });
        }
    }
    Ok(led.finish(report, Evidence::Sampled))
}
