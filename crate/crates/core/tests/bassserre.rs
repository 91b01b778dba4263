use rtreelab::amalgam::{Factor, GroupWord};
use rtreelab::bassserre::{
    ball, ball_distances, combinatorial_distance, distance, edge_eq, edge_stabilizer_contains, geodesic_vertices,
    vertex_eq, TreeEdge, TreePoint, TreeVertex, RADIUS_GUARD,
};
use rtreelab::psystem::{finite_psystem, seeded_rng, PSystem, ThompsonSystem};
use rtreelab::thompson::Dyadic;
use rtreelab::Error;

#[test]
fn ball_sizes() {
    let sys = finite_psystem();
    let b = ball(&sys, &TreeVertex::fundamental(1, Factor::Base), 1).unwrap();
    // [Sym6 : Sym4] = 30 neighbours of a vertex
    assert_eq!(b.vertices.len(), 31);
    assert_eq!(b.edges.len(), 30);
    assert!(b.to_dot().matches(" -- ").count() == 30);
    let b0 = ball(&sys, &TreeVertex::fundamental(1, Factor::Copy), 0).unwrap();
    assert_eq!(b0.vertices.len(), 1);
    let b2 = ball(&sys, &TreeVertex::fundamental(1, Factor::Base), 2).unwrap();
    assert_eq!(b2.vertices.len(), 1 + 30 + 30 * 29);
    assert!(matches!(ball(&sys, &TreeVertex::fundamental(1, Factor::Base), RADIUS_GUARD + 1), Err(Error::GuardExceeded(_))));
}

#[test]
fn reduction_distances_match_the_ball() {
    let sys = finite_psystem();
    let center = TreeVertex::fundamental(1, Factor::Base);
    let b = ball(&sys, &center, 2).unwrap();
    let dist = ball_distances(&b, 0);
    for k in (0..b.vertices.len()).step_by(7) {
        let v = b.vertex_word(k);
        assert_eq!(combinatorial_distance(&sys, &center, &v).unwrap(), dist[k]);
        assert_eq!(geodesic_vertices(&sys, &center, &v).unwrap().len(), dist[k] + 1);
    }
    // vertices of the ball are pairwise distinct in the tree
    for k in 1..b.vertices.len().min(40) {
        assert!(!vertex_eq(&sys, &b.vertex_word(0), &b.vertex_word(k)).unwrap());
    }
}

#[test]
fn distances_at_stage_one() {
    let sys = finite_psystem();
    let m = TreeVertex::fundamental(1, Factor::Base);
    let m1 = TreeVertex::fundamental(1, Factor::Copy);
    let p = |v: &TreeVertex<_>| TreePoint::vertex(v);
    assert_eq!(distance(&sys, &p(&m), &p(&m1)).unwrap(), Dyadic::ONE);
    let mut rng = seeded_rng(4);
    let n = sys.sample_outside_level(0, &mut rng).unwrap();
    let moved = TreeVertex::new(Factor::Base, GroupWord::copy(1, n));
    assert_eq!(distance(&sys, &p(&m), &p(&moved)).unwrap(), Dyadic::integer(2));
    let inner = TreePoint::new(TreeEdge::fundamental(1), Dyadic::new(1, 2)).unwrap();
    assert_eq!(distance(&sys, &inner, &p(&moved)).unwrap(), Dyadic::new(7, 2));
}

#[test]
fn stabilizers_of_the_fundamental_edge() {
    let sys = ThompsonSystem::new();
    let e = TreeEdge::fundamental(2);
    let mut rng = seeded_rng(1);
    for _ in 0..30 {
        let g = sys.sample_level(1, &mut rng);
        assert!(edge_stabilizer_contains(&sys, &e, &GroupWord::base(2, g.clone())).unwrap());
        assert!(edge_stabilizer_contains(&sys, &e, &GroupWord::copy(2, g)).unwrap());
        let h = sys.sample_outside_level(1, &mut rng).unwrap();
        assert!(!edge_stabilizer_contains(&sys, &e, &GroupWord::base(2, h.clone())).unwrap());
        let f = TreeEdge::new(GroupWord::base(2, h));
        assert!(!edge_eq(&sys, &e, &f).unwrap());
    }
}

#[test]
fn points_are_validated() {
    assert!(TreePoint::<rtreelab::thompson::VElement>::new(TreeEdge::fundamental(2), Dyadic::ONE).is_err());
    assert!(TreePoint::<rtreelab::thompson::VElement>::new(TreeEdge::fundamental(2), Dyadic::new(1, 1)).is_ok());
}
