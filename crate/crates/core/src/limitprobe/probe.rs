use std::fmt;

use serde::{Serialize, Serializer};

use crate::amalgam::{check_stage, equal, Factor, GroupWord};
use crate::bassserre::{distance, edge_eq, geodesic, TreeEdge, TreePoint};
use crate::error::{Error, Result};
use crate::foldengine::{fold_profile, phi_range, point_image, FOLD_BUDGET};
use crate::psystem::PSystem;
use crate::thompson::Dyadic;

/// Consecutive equal values needed before a heuristic stabilization claim.
pub const DEFAULT_WINDOW: usize = 3;

/// Longest stage-1 path for which the fold-budget argument is attempted.
const FOLD_PROOF_EDGES: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeStatus {
    /// proven constant from this stage on
    Stabilized(usize),
    /// the last `window` values agree from this stage on
    Heuristic { stage: usize, window: usize },
    Exhausted,
}

impl fmt::Display for ProbeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbeStatus::Stabilized(k) => write!(f, "STABILIZED({k})"),
            ProbeStatus::Heuristic { stage, window } => write!(f, "HEURISTIC({stage}, window={window})"),
            ProbeStatus::Exhausted => write!(f, "EXHAUSTED"),
        }
    }
}

impl Serialize for ProbeStatus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeResult {
    /// `values[k]` is the distance at stage `start + k`
    pub start: usize,
    pub values: Vec<Dyadic>,
    pub value: Dyadic,
    pub stable_stage: Option<usize>,
    pub j_max: usize,
    pub status: ProbeStatus,
}

impl ProbeResult {
    pub fn at(&self, stage: usize) -> Option<Dyadic> {
        stage.checked_sub(self.start).and_then(|k| self.values.get(k)).copied()
    }

    pub fn is_stable(&self) -> bool {
        self.status != ProbeStatus::Exhausted
    }
}

/// The stage from which no pair of edges on the stage-`start` path between
/// `x` and `y` can fold again, if every pair spends its budget by `j_max`.
fn fold_budget_stage<S: PSystem>(
    sys: &S,
    x: &TreePoint<S::Elem>,
    y: &TreePoint<S::Elem>,
    j_max: usize,
) -> Result<Option<usize>> {
    let mut edges: Vec<TreeEdge<S::Elem>> = Vec::new();
    let (_, inner) = geodesic(sys, &x.edge.endpoint(Factor::Base), &y.edge.endpoint(Factor::Base))?;
    for e in std::iter::once(x.edge.clone()).chain(inner).chain(std::iter::once(y.edge.clone())) {
        if !edges.iter().try_fold(false, |seen, f| edge_eq(sys, f, &e).map(|eq| seen || eq))? {
            edges.push(e);
        }
    }
    if edges.len() > FOLD_PROOF_EDGES {
        return Ok(None);
    }
    let mut last = x.stage();
    for (k, a) in edges.iter().enumerate() {
        for b in &edges[k + 1..] {
            let prof = fold_profile(sys, a, b, j_max)?;
            if prof.folds() < FOLD_BUDGET {
                return Ok(None);
            }
            last = last.max(*prof.fold_stages.last().expect("budget spent"));
        }
    }
    Ok(Some(last))
}

/// Pushes `x` and `y` through the stage maps up to `j_max` (clamped to the
/// system's last stage) and reports the distances.
pub fn limit_distance<S: PSystem>(
    sys: &S,
    x: &TreePoint<S::Elem>,
    y: &TreePoint<S::Elem>,
    j_max: usize,
    window: usize,
) -> Result<ProbeResult> {
    if j_max < 2 {
        return Err(Error::Precondition("j_max must be at least 2".into()));
    }
    let start = x.stage();
    if y.stage() != start {
        return Err(Error::StageMismatch { expected: start, got: y.stage() });
    }
    check_stage(sys, start)?;
    let j_max = sys.max_stage().map_or(j_max, |m| j_max.min(m)).max(start);
    let (mut p, mut q) = (x.clone(), y.clone());
    let mut values = vec![distance(sys, &p, &q)?];
    for _ in start + 1..=j_max {
        p = point_image(sys, &p)?;
        q = point_image(sys, &q)?;
        values.push(distance(sys, &p, &q)?);
    }
    let value = *values.last().expect("non-empty");
    let mut run_start = values.len() - 1;
    while run_start > 0 && values[run_start - 1] == value {
        run_start -= 1;
    }
    let run_stage = start + run_start;
    let run_len = values.len() - run_start;

    let proof = if edge_eq(sys, &x.edge, &y.edge)? {
        Some(start)
    } else if value == Dyadic::ZERO {
        Some(run_stage)
    } else {
        fold_budget_stage(sys, x, y, j_max)?.filter(|k| *k <= j_max).map(|k| k.max(run_stage))
    };
    let status = match proof {
        Some(k) => ProbeStatus::Stabilized(k),
        None if run_len >= window => ProbeStatus::Heuristic { stage: run_stage, window },
        None => ProbeStatus::Exhausted,
    };
    let stable_stage = match status {
        ProbeStatus::Stabilized(k) => Some(k),
        ProbeStatus::Heuristic { stage, .. } => Some(stage),
        ProbeStatus::Exhausted => None,
    };
    Ok(ProbeResult { start, values, value, stable_stage, j_max, status })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LimitEquality {
    /// the images agree in `L_k`, hence in the limit
    EqualByStage(usize),
    /// no agreement through this stage; nothing is claimed about the limit
    UnknownAfter(usize),
}

/// Semi-decides `g = h` in the limit group by comparing images stage by stage.
pub fn limit_equal<S: PSystem>(
    sys: &S,
    g: &GroupWord<S::Elem>,
    h: &GroupWord<S::Elem>,
    j_max: usize,
) -> Result<LimitEquality> {
    if g.stage != h.stage {
        return Err(Error::StageMismatch { expected: g.stage, got: h.stage });
    }
    let j_max = sys.max_stage().map_or(j_max, |m| j_max.min(m));
    let quotient = g.concat(&h.inverse())?;
    for k in g.stage..=j_max {
        let img = phi_range(sys, &quotient, k)?;
        if equal(sys, &img, &GroupWord::empty(k))? {
            return Ok(LimitEquality::EqualByStage(k));
        }
    }
    Ok(LimitEquality::UnknownAfter(j_max))
}
