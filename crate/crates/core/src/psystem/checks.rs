use serde_json::json;

use super::{seeded_rng, PSystem};
use crate::error::Result;
use crate::group::GroupElement;
use crate::permsys::closure;
use crate::permsys::ORDER_GUARD;
use crate::report::{CheckReport, Evidence};

/// How many levels above `i` the (P4) search inspects.
pub const P4_LEVEL_REACH: usize = 4;

fn level_in_range<S: PSystem>(sys: &S, i: usize) -> bool {
    i >= 1 && sys.depth().is_none_or(|d| i <= d)
}

/// `a_i` centralizes `G_{i-1}`: exhaustive on finite systems, sampled otherwise.
pub fn check_p1<S: PSystem>(sys: &S, i: usize, samples: usize, seed: u64) -> Result<CheckReport> {
    let report = CheckReport::new("P1", json!({"system": sys.name(), "i": i})).with_seed(seed);
    if !level_in_range(sys, i) {
        return Ok(report.inconclusive(format!("level {i} is outside the system")));
    }
    let a = sys.swap(i)?;
    let (pool, evidence): (Vec<S::Elem>, Evidence) = match sys.level_elements(i - 1) {
        Some(els) => (els.to_vec(), Evidence::Exhaustive),
        None => {
            let mut rng = seeded_rng(seed);
            ((0..samples).map(|_| sys.sample_level(i - 1, &mut rng)).collect(), Evidence::Sampled)
        }
    };
    for g in &pool {
        if g.conj(&a) != *g {
            return Ok(report.with_samples(pool.len()).fail(
                json!({"a": a, "g": g, "a_g_a_inv": g.conj(&a)}),
                format!("a_{i} does not commute with {g}"),
            ));
        }
    }
    let n = pool.len();
    Ok(report.with_samples(n).pass(evidence, format!("a_{i} commutes with {n} elements of G_{}", i - 1)))
}

/// `M = ⟨G_i, G_i^{a_i}⟩`, by constructive certificate or by closure.
pub fn check_p2<S: PSystem>(sys: &S, i: usize) -> Result<CheckReport> {
    let report = CheckReport::new("P2", json!({"system": sys.name(), "i": i}));
    if !level_in_range(sys, i) {
        return Ok(report.inconclusive(format!("level {i} is outside the system")));
    }
    if let Some(cert) = sys.generation_certificate(i) {
        let (ok, detail) = cert?;
        return Ok(if ok {
            let mut r = report.pass(Evidence::Witnessed, "every generator rebuilt from tagged letters");
            r.witness = Some(detail);
            r
        } else {
            report.fail(detail, "a generation certificate did not verify")
        });
    }
    let (Some(all), Some(level)) = (sys.elements(), sys.level_elements(i)) else {
        return Ok(report.inconclusive("no generation certificate and the group is not enumerable"));
    };
    let a = sys.swap(i)?;
    let mut gens: Vec<S::Elem> = level.to_vec();
    gens.extend(level.iter().map(|g| g.conj(&a)));
    let generated = closure(&sys.identity(), &gens, ORDER_GUARD)?;
    if generated.len() == all.len() {
        Ok(report
            .with_samples(generated.len())
            .pass(Evidence::Exhaustive, format!("closure has {} elements", generated.len())))
    } else {
        Ok(report.with_samples(generated.len()).fail(
            json!({"closure_order": generated.len(), "group_order": all.len(), "a": a}),
            format!("closure has {} of {} elements", generated.len(), all.len()),
        ))
    }
}

/// Searches `c ∈ G_i \ G_{i-1}` with `a_i c a_i⁻¹` or `a_i⁻¹ c a_i` inside some
/// `G_n`, `i <= n <= i + P4_LEVEL_REACH`; then `⟨G_i, G_i^{·}⟩ ⊆ G_n`.
///
/// Only violations can be established: a clean search is INCONCLUSIVE.
pub fn check_p4_search<S: PSystem>(sys: &S, i: usize, budget: usize, seed: u64) -> Result<CheckReport> {
    let report = CheckReport::new("P4", json!({"system": sys.name(), "i": i, "budget": budget})).with_seed(seed);
    if !level_in_range(sys, i) {
        return Ok(report.inconclusive(format!("level {i} is outside the system")));
    }
    if sys.depth().is_some_and(|d| i + 1 > d) {
        return Ok(report.inconclusive(format!("no level above {i} in this system")));
    }
    let a = sys.swap(i)?;
    let top = match sys.depth() {
        Some(d) => d.min(i + P4_LEVEL_REACH),
        None => i + P4_LEVEL_REACH,
    };
    let mut rng = seeded_rng(seed);
    let mut candidates: Vec<S::Elem> = sys.p4_seed(i).into_iter().collect();
    candidates.extend((0..budget).filter_map(|_| sys.sample_level_strict(i, &mut rng)));
    let mut examined = 0;
    for c in candidates {
        if !sys.in_level(&c, i) || sys.in_level(&c, i - 1) {
            continue;
        }
        examined += 1;
        let forms = [("a c a^-1", c.conj(&a)), ("a^-1 c a", c.conj(&a.inv()))];
        for (which, x) in forms {
            if let Some(n) = (i..=top).find(|&n| sys.in_level(&x, n)) {
                return Ok(report.with_samples(examined).fail(
                    json!({"c": c, "form": which, "conjugate": x, "n": n}),
                    format!("{which} lies in G_{n}, so <G_{i}, G_{i}^x> is inside G_{n}"),
                ));
            }
        }
    }
    Ok(report
        .with_samples(examined)
        .inconclusive(format!("no violation among {examined} candidates; (P4) cannot be confirmed by search")))
}
