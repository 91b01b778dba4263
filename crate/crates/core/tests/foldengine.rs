use rtreelab::amalgam::{equal, random_word, Factor, GroupWord};
use rtreelab::bassserre::{distance, edge_length, vertex_eq, TreeEdge, TreePoint, TreeVertex};
use rtreelab::foldengine::{
    check_edge_stab, check_folds, check_morph_summary, check_point_map, fold_profile, phi, phi_range, point_image,
    vertex_image, FOLD_BUDGET,
};
use rtreelab::psystem::{finite_psystem, seeded_rng, PSystem, ThompsonSystem};
use rtreelab::report::Status;
use rtreelab::thompson::{generator, swap, Dyadic, Generator};

#[test]
fn phi_fixes_base_and_folds_edge_copies() {
    let sys = ThompsonSystem::new();
    let g = generator(Generator::A).unwrap();
    assert_eq!(phi(&sys, &GroupWord::base(1, g.clone())).unwrap(), GroupWord::base(2, g));
    let mut rng = seeded_rng(3);
    for _ in 0..20 {
        let h = sys.sample_level(0, &mut rng);
        let img = phi(&sys, &GroupWord::copy(1, h.clone())).unwrap();
        assert!(equal(&sys, &img, &GroupWord::base(2, h)).unwrap());
    }
}

#[test]
fn phi_is_a_homomorphism() {
    let sys = finite_psystem();
    let mut rng = seeded_rng(11);
    for _ in 0..1000 {
        let u = random_word(&sys, 1, 4, &mut rng);
        let w = random_word(&sys, 1, 4, &mut rng);
        let lhs = phi(&sys, &u).unwrap().then(&phi(&sys, &w).unwrap());
        assert!(equal(&sys, &lhs, &phi(&sys, &u.then(&w)).unwrap()).unwrap());
    }
    let sys = ThompsonSystem::new();
    for _ in 0..200 {
        let u = random_word(&sys, 2, 3, &mut rng);
        let w = random_word(&sys, 2, 3, &mut rng);
        let lhs = phi(&sys, &u).unwrap().then(&phi(&sys, &w).unwrap());
        assert!(equal(&sys, &lhs, &phi(&sys, &u.then(&w)).unwrap()).unwrap());
    }
}

#[test]
fn fundamental_edge_images() {
    let sys = ThompsonSystem::new();
    let e = TreeEdge::fundamental(1);
    let mid = point_image(&sys, &TreePoint::new(e.clone(), Dyadic::pow2(-1)).unwrap()).unwrap();
    let v = mid.as_vertex().unwrap();
    assert!(vertex_eq(&sys, &v, &TreeVertex::fundamental(2, Factor::Copy)).unwrap());
    let m = vertex_image(&sys, &TreeVertex::fundamental(1, Factor::Base)).unwrap();
    assert!(vertex_eq(&sys, &m, &TreeVertex::fundamental(2, Factor::Base)).unwrap());
    let y = vertex_image(&sys, &TreeVertex::fundamental(1, Factor::Copy)).unwrap();
    assert!(vertex_eq(&sys, &y, &TreeVertex::new(Factor::Base, GroupWord::copy(2, swap(1)))).unwrap());
    // points of one edge keep their distance
    let p = TreePoint::new(e.clone(), Dyadic::pow2(-2)).unwrap();
    let q = TreePoint::new(e, Dyadic::new(7, 3)).unwrap();
    let d = distance(&sys, &point_image(&sys, &p).unwrap(), &point_image(&sys, &q).unwrap()).unwrap();
    assert_eq!(d, Dyadic::new(5, 3));
}

#[test]
fn phi_range_composes() {
    let sys = ThompsonSystem::new();
    let mut rng = seeded_rng(5);
    let w = random_word(&sys, 1, 3, &mut rng);
    let two = phi(&sys, &phi(&sys, &w).unwrap()).unwrap();
    assert!(equal(&sys, &two, &phi_range(&sys, &w, 3).unwrap()).unwrap());
}

#[test]
fn morph_summary_holds() {
    let fin = finite_psystem();
    let r = check_morph_summary(&fin, 1, 100, 1).unwrap();
    assert_eq!(r.status, Status::Pass, "{r}");
    let sys = ThompsonSystem::new();
    for i in 1..=3 {
        let r = check_morph_summary(&sys, i, 100, 2).unwrap();
        assert_eq!(r.status, Status::Pass, "{r}");
    }
}

#[test]
fn edge_stab_detects_a_bad_swap() {
    // with a_1 replaced by A the intersection law breaks
    let sys = ThompsonSystem::with_swap(generator(Generator::A).unwrap());
    let r = check_edge_stab(&sys, &TreeEdge::fundamental(1), 2, 50, 2).unwrap();
    assert_eq!(r.status, Status::Fail, "{r}");
}

#[test]
fn edge_stab_transports() {
    let sys = ThompsonSystem::new();
    let r = check_edge_stab(&sys, &TreeEdge::fundamental(1), 3, 100, 4).unwrap();
    assert_eq!(r.status, Status::Pass, "{r}");
    let fin = finite_psystem();
    let e = TreeEdge::new(GroupWord::copy(1, fin.swap(1).unwrap()));
    let r = check_edge_stab(&fin, &e, 2, 100, 4).unwrap();
    assert_eq!(r.status, Status::Pass, "{r}");
}

#[test]
fn point_map_invariants() {
    let sys = ThompsonSystem::new();
    let r = check_point_map(&sys, 1, 5, 30, 9).unwrap();
    assert_eq!(r.status, Status::Pass, "{r}");
    let fin = finite_psystem();
    let r = check_point_map(&fin, 1, 2, 100, 9).unwrap();
    assert_eq!(r.status, Status::Pass, "{r}");
}

#[test]
fn adjacent_edges_fold_once() {
    // e and c·e with c ∈ G_1 \ G_0 share the M-side half from stage 2 on
    let sys = ThompsonSystem::new();
    let mut rng = seeded_rng(8);
    let c = sys.sample_level_strict(1, &mut rng).unwrap();
    let a = TreeEdge::fundamental(1);
    let b = TreeEdge::new(GroupWord::base(1, c));
    let prof = fold_profile(&sys, &a, &b, 5).unwrap();
    assert_eq!(prof.overlaps[0], Dyadic::ZERO);
    assert_eq!(prof.overlaps[1], edge_length(2));
    assert_eq!(prof.fold_stages[0], 2);
    assert!(prof.folds() <= FOLD_BUDGET);
}

#[test]
fn fold_counts_stay_within_budget() {
    let fin = finite_psystem();
    let r = check_folds(&fin, 1, 50, 2, 3).unwrap();
    assert_eq!(r.status, Status::Pass, "{r}");
    let sys = ThompsonSystem::new();
    let r = check_folds(&sys, 1, 50, 8, 3).unwrap();
    println!("{r}");
}
