use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::map::point_image;
use crate::amalgam::{check_stage, random_word, reduce, Factor, GroupWord, Syllable};
use crate::bassserre::{distance, edge_length, TreeEdge, TreePoint};
use crate::error::{Error, Result};
use crate::psystem::{seeded_rng, PSystem};
use crate::report::{CheckReport, Evidence};
use crate::thompson::Dyadic;

/// Stages at which two edges may fold together, at most.
pub const FOLD_BUDGET: usize = 4;

/// The edge `x·G_{stage-1}` for a random reduced `x` of at most `len` syllables.
pub fn random_edge<S: PSystem>(sys: &S, stage: usize, len: usize, rng: &mut ChaCha8Rng) -> Result<TreeEdge<S::Elem>> {
    check_stage(sys, stage)?;
    Ok(TreeEdge::new(reduce(sys, &random_word(sys, stage, len, rng))?))
}

/// A point of a random edge at a multiple of an eighth of its length.
pub(crate) fn random_point<S: PSystem>(
    sys: &S,
    stage: usize,
    len: usize,
    rng: &mut ChaCha8Rng,
) -> Result<TreePoint<S::Elem>> {
    let e = random_edge(sys, stage, len, rng)?;
    let t = edge_length(stage).mul_pow2(-3).scale(rng.gen_range(0..=8));
    TreePoint::new(e, t)
}

/// Length of the intersection of the geodesics `[a0, a1]` and `[b0, b1]`,
/// from the four-point condition.
pub fn overlap_length<S: PSystem>(
    sys: &S,
    a: (&TreePoint<S::Elem>, &TreePoint<S::Elem>),
    b: (&TreePoint<S::Elem>, &TreePoint<S::Elem>),
) -> Result<Dyadic> {
    let d = |p, q| distance(sys, p, q);
    let s1 = d(a.0, a.1)? + d(b.0, b.1)?;
    let s2 = d(a.0, b.0)? + d(a.1, b.1)?;
    let s3 = d(a.0, b.1)? + d(a.1, b.0)?;
    Ok((s1 - s2.min(s3)).half().max(Dyadic::ZERO))
}

/// Overlap of the images of two edges at each stage from theirs to `j_max`.
#[derive(Clone, Debug, Serialize)]
pub struct FoldProfile {
    pub start: usize,
    pub overlaps: Vec<Dyadic>,
    /// stages at which the overlap strictly grew
    pub fold_stages: Vec<usize>,
}

impl FoldProfile {
    pub fn folds(&self) -> usize {
        self.fold_stages.len()
    }
}

pub fn fold_profile<S: PSystem>(
    sys: &S,
    a: &TreeEdge<S::Elem>,
    b: &TreeEdge<S::Elem>,
    j_max: usize,
) -> Result<FoldProfile> {
    if a.stage != b.stage {
        return Err(Error::StageMismatch { expected: a.stage, got: b.stage });
    }
    let ends = |e: &TreeEdge<S::Elem>| {
        [TreePoint::vertex(&e.endpoint(Factor::Base)), TreePoint::vertex(&e.endpoint(Factor::Copy))]
    };
    let (mut pa, mut pb) = (ends(a), ends(b));
    let mut overlaps = vec![overlap_length(sys, (&pa[0], &pa[1]), (&pb[0], &pb[1]))?];
    let mut fold_stages = Vec::new();
    for j in a.stage + 1..=j_max {
        for p in pa.iter_mut().chain(pb.iter_mut()) {
            *p = point_image(sys, p)?;
        }
        let o = overlap_length(sys, (&pa[0], &pa[1]), (&pb[0], &pb[1]))?;
        if o > *overlaps.last().expect("non-empty") {
            fold_stages.push(j);
        }
        overlaps.push(o);
    }
    Ok(FoldProfile { start: a.stage, overlaps, fold_stages })
}

/// A random pair of stage-`l` edges; most pairs share an endpoint so that
/// folding can occur.
pub fn random_edge_pair<S: PSystem>(
    sys: &S,
    l: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(TreeEdge<S::Elem>, TreeEdge<S::Elem>)> {
    let a = random_edge(sys, l, rng.gen_range(0..3), rng)?;
    let b = match rng.gen_range(0..3) {
        0 => random_edge(sys, l, rng.gen_range(0..3), rng)?,
        k => {
            let level = rng.gen_range(0..=sys.depth().unwrap_or(4));
            let c = if rng.gen_bool(0.7) { sys.sample_level(level, rng) } else { sys.sample(rng) };
            let f = if k == 1 { Factor::Base } else { Factor::Copy };
            let w = a.rep.concat(&GroupWord::new(l, vec![Syllable::Elem(f, c)]))?;
            TreeEdge::new(reduce(sys, &w)?)
        }
    };
    Ok((a, b))
}

/// Counts fold stages for random edge pairs of `T_l` up to `j_max` and checks
/// the count never exceeds [`FOLD_BUDGET`].
pub fn check_folds<S: PSystem>(sys: &S, l: usize, pairs: usize, j_max: usize, seed: u64) -> Result<CheckReport> {
    let report = CheckReport::new("folds_btw_edges", json!({"system": sys.name(), "l": l, "j_max": j_max}))
        .with_seed(seed)
        .with_samples(pairs);
    if check_stage(sys, l).is_err() || check_stage(sys, j_max).is_err() {
        return Ok(report.inconclusive(format!("stages {l}..{j_max} are not all available")));
    }
    let mut rng = seeded_rng(seed);
    let mut histogram = [0usize; FOLD_BUDGET + 2];
    for _ in 0..pairs {
        let (a, b) = random_edge_pair(sys, l, &mut rng)?;
        let prof = fold_profile(sys, &a, &b, j_max)?;
        if prof.folds() > FOLD_BUDGET {
            return Ok(report.fail(
                json!({"a": a.rep, "b": b.rep, "profile": prof}),
                format!("{} fold stages for one pair", prof.folds()),
            ));
        }
        histogram[prof.folds()] += 1;
    }
    let hist = histogram[..=FOLD_BUDGET]
        .iter()
        .enumerate()
        .map(|(k, n)| format!("{k}:{n}"))
        .collect::<Vec<_>>()
        .join(" ");
    Ok(report.pass(Evidence::Sampled, format!("fold counts {hist}")))
}
