//! Acceptance matrix: one PASS/FAIL line per criterion, exit status 1 on
//! any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::Rng;
use rtreelab::amalgam::{
    equal, intersection_scan, is_identity, order_probe, random_word, reduce, CosetOracle, Factor, GroupWord,
    OrderBound, Syllable,
};
use rtreelab::bassserre::{edge_length, TreePoint, TreeVertex};
use rtreelab::foldengine::{check_folds, check_morph_summary, check_point_map, random_edge};
use rtreelab::limitprobe::{
    arc_stabilizer, check_arc_stabilizer, finite_stabilizer_agreement, limit_distance, ProbeStatus, DEFAULT_WINDOW,
};
use rtreelab::permsys::{alt_chain, c2_in_c4, condition51, normal_closure, symmetric_on, ut_chain, Perm};
use rtreelab::psystem::{britton_base, check_p1, check_p2, finite_psystem, seeded_rng, PSystem, ThompsonSystem};
use rtreelab::report::{CheckReport, Status};
use rtreelab::thompson::{
    generation_witness, generator, letter_in_tag, p4_counterexample, random_element, swap, Dyadic,
    StdInterval, VElement,
};
use rtreelab::GroupElement;

const SEED: u64 = 20_240_601;
const ARITHMETIC_CHECKS: usize = 10_000;
const ARITHMETIC_BUDGET: Duration = Duration::from_secs(10);
const ORACLE_RANDOM_WORDS: usize = 10_000;
const ORACLE_BUDGET: Duration = Duration::from_secs(120);
const CLAUSE_SAMPLES: usize = 100;
const METRIC_J_MAX: usize = 6;
const FOLD_PAIRS: usize = 50;
const FOLD_J_MAX: usize = 8;
const ARCS: usize = 20;
const ARC_J_MAX: usize = 8;
const ARC_MEMBERS: usize = 100;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn passed(r: &CheckReport) -> Outcome {
    ensure!(r.status == Status::Pass, "{r}");
    Ok(r.message.clone())
}

fn v_arithmetic() -> Outcome {
    let start = Instant::now();
    let mut rng = seeded_rng(SEED);
    for _ in 0..ARITHMETIC_CHECKS {
        let f = random_element(rng.gen(), rng.gen_range(0..10));
        let g = random_element(rng.gen(), rng.gen_range(0..10));
        let h = random_element(rng.gen(), rng.gen_range(0..10));
        ensure!(f.compose(&g).compose(&h) == f.compose(&g.compose(&h)), "associativity fails for {f}, {g}, {h}");
        ensure!(f.compose(&f.inverse()).is_identity(), "f f^-1 != 1 for {f}");
        let k = rng.gen_range(0..12u32);
        let x = Dyadic::new(rng.gen_range(0..1i128 << k), k);
        let lhs = f.compose(&g).evaluate(x).map_err(|e| e.to_string())?;
        let rhs = f.evaluate(g.evaluate(x).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure!(lhs == rhs, "evaluation is not a homomorphism at {x}");
    }
    let took = start.elapsed();
    ensure!(took < ARITHMETIC_BUDGET, "took {took:?}");
    Ok(format!("{ARITHMETIC_CHECKS} triples in {took:.2?}"))
}

fn v_generation() -> Outcome {
    let sys = ThompsonSystem::new();
    for i in 1..=4 {
        passed(&check_p2(&sys, i).map_err(|e| e.to_string())?)?;
        let ws = generation_witness(i).map_err(|e| e.to_string())?;
        ensure!(ws.len() == 4, "expected four witnesses at level {i}");
        for w in &ws {
            ensure!(w.product() == generator(w.target).unwrap(), "{:?} not rebuilt at level {i}", w.target);
            for l in &w.letters {
                ensure!(letter_in_tag(&l.element, l.tag, i), "letter {} outside {:?}", l.element, l.tag);
            }
        }
    }
    Ok("A, B, C, pi0 rebuilt exactly for i = 1..4".into())
}

fn v_p1() -> Outcome {
    let sys = ThompsonSystem::new();
    for i in 1..=4 {
        let r = check_p1(&sys, i, CLAUSE_SAMPLES, SEED).map_err(|e| e.to_string())?;
        passed(&r)?;
        ensure!(r.samples >= CLAUSE_SAMPLES, "only {} samples", r.samples);
    }
    Ok(format!("{CLAUSE_SAMPLES} commutators per level, i = 1..4"))
}

fn v_p4_failure() -> Outcome {
    for i in 1..=2 {
        let (c, cert) = p4_counterexample(i).map_err(|e| e.to_string())?;
        let a = swap(i);
        ensure!(c.in_level(i) && !c.in_level(i - 1), "c is not in G_{i} minus G_{}", i - 1);
        ensure!(a.compose(&c).compose(&a.inverse()).in_level(i + 1), "a c a^-1 leaves G_{}", i + 1);
        ensure!(cert.recheck(), "certificate does not re-verify at level {i}");
    }
    Ok("counterexamples at i = 1, 2 re-verify".into())
}

fn alphabet() -> Vec<(Factor, Perm)> {
    let perms = [
        "(1 2)",
        "(1 2 3)",
        "(3 4)",
        "(4 5)",
        "(5 6)",
        "(1 5)",
        "(2 6)(3 4)",
        "(1 2 3 4 5 6)",
        "(4 6)",
        "(1 4)(5 6)",
    ];
    let perms: Vec<Perm> = perms.iter().map(|s| format!("6:{s}").parse().unwrap()).collect();
    [Factor::Base, Factor::Copy]
        .iter()
        .flat_map(|f| perms.iter().map(move |p| (*f, p.clone())))
        .collect()
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let sys = finite_psystem();
    let oracle = CosetOracle::new(&sys, 1).map_err(|e| e.to_string())?;
    let letters = alphabet();
    let mut words = vec![GroupWord::empty(1)];
    let mut frontier = words.clone();
    for _ in 0..3 {
        let mut next = Vec::new();
        for w in &frontier {
            for (f, g) in &letters {
                let mut s = w.syllables.clone();
                s.push(Syllable::Elem(*f, g.clone()));
                next.push(GroupWord::new(1, s));
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let mut rng = seeded_rng(SEED);
    let compare = |u: &GroupWord<Perm>, w: &GroupWord<Perm>| -> Result<(), String> {
        let by_reduction = equal(&sys, u, w).map_err(|e| e.to_string())?;
        let by_oracle = oracle.equal(u, w).map_err(|e| e.to_string())?;
        ensure!(by_reduction == by_oracle, "equality of {u} and {w}: reduction {by_reduction}, oracle {by_oracle}");
        Ok(())
    };
    let mut identities = 0;
    let n = words.len();
    for (k, w) in words.iter().enumerate() {
        let id_r = is_identity(&sys, w).map_err(|e| e.to_string())?;
        let id_o = oracle.is_identity(w).map_err(|e| e.to_string())?;
        ensure!(id_r == id_o, "identity of {w}: reduction {id_r}, oracle {id_o}");
        identities += usize::from(id_r);
        compare(w, &words[(k * 7919 + 13) % n])?;
        compare(w, &reduce(&sys, w).map_err(|e| e.to_string())?)?;
    }
    let edge: Vec<Perm> = symmetric_on(4, 6).enumerate().map_err(|e| e.to_string())?;
    for _ in 0..ORACLE_RANDOM_WORDS {
        let len = rng.gen_range(4..=12);
        let w = random_word(&sys, 1, len, &mut rng);
        let id_r = is_identity(&sys, &w).map_err(|e| e.to_string())?;
        ensure!(id_r == oracle.is_identity(&w).map_err(|e| e.to_string())?, "identity of {w} disagrees");
        let h = edge[rng.gen_range(0..edge.len())].clone();
        let same = w.then(&GroupWord::new(1, vec![Syllable::base(h.clone()), Syllable::copy(h.inv())]));
        compare(&w, &same)?;
        let other = random_word(&sys, 1, len, &mut rng);
        compare(&w, &other)?;
        compare(&w.then(&other), &w.then(&other).inverse().inverse())?;
    }
    let took = start.elapsed();
    ensure!(took < ORACLE_BUDGET, "took {took:?}");
    Ok(format!(
        "{} short words ({identities} trivial) and {ORACLE_RANDOM_WORDS} random words, no discrepancies, {took:.2?}",
        words.len()
    ))
}

fn clause_counts_ok(r: &CheckReport) -> Result<(), String> {
    passed(r)?;
    let counts = &r.witness.as_ref().ok_or("no clause counts")?["counts"];
    let get = |k: &str| counts[k].as_u64().unwrap_or(0) as usize;
    for clause in ["1", "2"] {
        ensure!(get(clause) >= CLAUSE_SAMPLES, "clause {clause} has only {} samples", get(clause));
    }
    for clause in ["3", "4"] {
        let (yes, no) = (get(&format!("{clause}:in")), get(&format!("{clause}:out")));
        ensure!(yes > 0 && no > 0, "clause {clause} misses a direction ({yes}/{no})");
        ensure!(yes + no >= CLAUSE_SAMPLES, "clause {clause} has only {} samples", yes + no);
    }
    Ok(())
}

fn morph_summary() -> Outcome {
    let v = ThompsonSystem::new();
    for i in 1..=3 {
        clause_counts_ok(&check_morph_summary(&v, i, CLAUSE_SAMPLES, SEED + i as u64).map_err(|e| e.to_string())?)?;
    }
    let fin = finite_psystem();
    clause_counts_ok(&check_morph_summary(&fin, 1, CLAUSE_SAMPLES, SEED).map_err(|e| e.to_string())?)?;
    Ok("clauses (1)-(4) for V at i = 1..3 and sym6 at i = 1".into())
}

fn metric() -> Outcome {
    let v = ThompsonSystem::new();
    for i in 1..=2 {
        passed(&check_point_map(&v, i, METRIC_J_MAX, 40, SEED).map_err(|e| e.to_string())?)?;
    }
    let fin = finite_psystem();
    passed(&check_point_map(&fin, 1, 2, 100, SEED).map_err(|e| e.to_string())?)?;
    Ok(format!("edge images isometric up to j = {METRIC_J_MAX}, distances dyadic"))
}

fn fold_bound() -> Outcome {
    let v = ThompsonSystem::new();
    passed(&check_folds(&v, 1, FOLD_PAIRS, FOLD_J_MAX, SEED).map_err(|e| e.to_string())?)
}

fn arc_stabilizers() -> Outcome {
    let v = ThompsonSystem::new();
    let mut rng = seeded_rng(SEED);
    let mut found = 0;
    let mut tried = 0;
    let mut fallbacks = 0;
    while found < ARCS {
        tried += 1;
        ensure!(tried <= 20 * ARCS, "only {found} stabilized arcs in {tried} attempts");
        let point = |rng: &mut _| -> Result<TreePoint<VElement>, String> {
            let len = 1 + (tried % 2);
            let e = random_edge(&v, 1, len, rng).map_err(|e| e.to_string())?;
            let t = edge_length(1).mul_pow2(-2).scale(rand::Rng::gen_range(rng, 0..=4));
            TreePoint::new(e, t).map_err(|e| e.to_string())
        };
        let (x, y) = (point(&mut rng)?, point(&mut rng)?);
        let probe = limit_distance(&v, &x, &y, ARC_J_MAX, DEFAULT_WINDOW).map_err(|e| e.to_string())?;
        if probe.value == Dyadic::ZERO || probe.status == ProbeStatus::Exhausted {
            continue;
        }
        let arc = arc_stabilizer(&v, &x, &y, ARC_J_MAX, DEFAULT_WINDOW).map_err(|e| e.to_string())?;
        ensure!(arc.descriptor.level == arc.m - 1, "descriptor is not a conjugate of G_(m-1)");
        fallbacks += usize::from(arc.fallback);
        passed(&check_arc_stabilizer(&v, &arc, ARC_J_MAX, ARC_MEMBERS, SEED + found as u64).map_err(|e| e.to_string())?)?;
        found += 1;
    }
    let fin = finite_psystem();
    let x = TreePoint::vertex(&TreeVertex::fundamental(1, Factor::Base));
    let y = TreePoint::vertex(&TreeVertex::fundamental(1, Factor::Copy));
    let arc = arc_stabilizer(&fin, &x, &y, ARC_J_MAX, DEFAULT_WINDOW).map_err(|e| e.to_string())?;
    passed(&finite_stabilizer_agreement(&fin, &arc).map_err(|e| e.to_string())?)?;
    passed(&check_arc_stabilizer(&fin, &arc, ARC_J_MAX, ARC_MEMBERS, SEED).map_err(|e| e.to_string())?)?;
    Ok(format!("{found} arcs from {tried} candidates ({fallbacks} by fallback); sym6 matches the ball"))
}

/// Swaps `[1/4, 3/8)` and `[3/8, 1/2)`.
fn quarter_swap() -> VElement {
    let iv = StdInterval::frac;
    VElement::from_pairs(vec![
        (iv(0, 1, 2), iv(0, 1, 2)),
        (iv(2, 3, 3), iv(3, 4, 3)),
        (iv(3, 4, 3), iv(2, 3, 3)),
        (iv(1, 2, 1), iv(1, 2, 1)),
    ])
    .unwrap()
}

fn strong_convergence() -> Outcome {
    let v = ThompsonSystem::new();
    let m = TreePoint::vertex(&TreeVertex::fundamental(1, Factor::Base));
    let m1 = TreePoint::vertex(&TreeVertex::fundamental(1, Factor::Copy));
    let r = limit_distance(&v, &m, &m1, 6, DEFAULT_WINDOW).map_err(|e| e.to_string())?;
    ensure!(r.value == Dyadic::ONE && r.status == ProbeStatus::Stabilized(1), "edge endpoints: {:?}", r);

    // hand derivation in T_2: y maps to [C:a_1 g a_1^-1]·M = [C:a_2]·M with a_2
    // outside the edge group G_1, two edges of length 1/2 away from M
    let g = quarter_swap();
    ensure!(g.in_level(1) && !g.in_level(0), "g is not in G_1 minus G_0");
    let c = g.conj(&swap(1));
    ensure!(c == swap(2) && !c.in_level(1), "a_1 g a_1^-1 is not a_2");
    let derived = edge_length(2).scale(2);

    let y = TreePoint::vertex(&TreeVertex::new(Factor::Base, GroupWord::copy(1, g)));
    let r = limit_distance(&v, &m, &y, 6, DEFAULT_WINDOW).map_err(|e| e.to_string())?;
    ensure!(r.at(2) == Some(derived), "d_2 = {:?}, derived {derived}", r.at(2));
    let golden: Vec<Dyadic> = [2, 1, 1, 1, 1, 1].map(Dyadic::integer).to_vec();
    ensure!(r.values == golden, "values {:?}", r.values);
    ensure!(r.value == Dyadic::ONE, "value {}", r.value);
    Ok(format!("edge endpoints 1 {}; folding pair 2 -> 1 {}", ProbeStatus::Stabilized(1), r.status))
}

fn condition51_suite() -> Outcome {
    for i in 1..=3 {
        passed(&condition51(&alt_chain(3), i).map_err(|e| e.to_string())?)?;
        passed(&condition51(&ut_chain(3, 2), i).map_err(|e| e.to_string())?)?;
    }
    let chain = c2_in_c4();
    let r = condition51(&chain, 1).map_err(|e| e.to_string())?;
    ensure!(r.status == Status::Fail, "C2 < C4 should fail");
    let g: Perm = serde_json::from_value(r.witness.unwrap()["g"].clone()).map_err(|e| e.to_string())?;
    let c4 = chain.level(1).map_err(|e| e.to_string())?;
    let c2 = chain.level(0).map_err(|e| e.to_string())?.elements().map_err(|e| e.to_string())?;
    let n = normal_closure(&[g.clone()], c4).map_err(|e| e.to_string())?;
    ensure!(!g.is_identity() && n.iter().all(|x| c2.contains(x)), "witness {g} does not re-check");
    Ok(format!("Alt and UT(F2) chains pass for i = 1..3; C2 < C4 fails with witness {g}"))
}

fn britton() -> Outcome {
    let sys = britton_base();
    let all = sys.elements().unwrap().to_vec();
    let found = intersection_scan(&sys, 1, &all).map_err(|e| e.to_string())?;
    let lower = symmetric_on(4, 5).elements().map_err(|e| e.to_string())?;
    ensure!(found == lower, "scan returned {} elements", found.len());
    let c: Perm = "5:(4 5)".parse().unwrap();
    let w = GroupWord::new(
        1,
        vec![
            Syllable::copy(c.inv()),
            Syllable::t(),
            Syllable::copy(c.clone()),
            Syllable::t_inv(),
            Syllable::copy(c.clone()),
            Syllable::t(),
            Syllable::copy(c.inv()),
            Syllable::t_inv(),
        ],
    );
    let order = order_probe(&sys, &w, 50).map_err(|e| e.to_string())?;
    ensure!(order == OrderBound::GreaterThan(50), "order probe gave {order:?}");
    Ok(format!("scan = Sym(4) ({} elements); order > 50", found.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("1 V arithmetic", v_arithmetic),
        ("2 generation of V", v_generation),
        ("3 P1 for V", v_p1),
        ("4 P4 fails for V", v_p4_failure),
        ("5 reduction vs coset oracle", oracle_equivalence),
        ("6 vertex and edge images", morph_summary),
        ("7 edge isometry and metric", metric),
        ("8 fold count bound", fold_bound),
        ("9 arc stabilizers", arc_stabilizers),
        ("10 strong convergence probe", strong_convergence),
        ("11 condition51", condition51_suite),
        ("12 Britton suite", britton),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        match outcome {
            Ok(msg) => println!("PASS  {name}: {msg} [{took:.2?}]"),
            Err(msg) => {
                failures += 1;
                println!("FAIL  {name}: {msg} [{took:.2?}]");
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
