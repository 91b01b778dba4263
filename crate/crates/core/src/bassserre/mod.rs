//! The simplicial trees `T_i` on which the stage groups act: vertices and
//! edges as cosets, points on edges, exact distances and stabilizers.
//!
//! Edges of `T_i` have length `1/2^{i-1}` and are parametrized from `0` at the
//! `M`-side endpoint.

mod ball;
mod tree;

pub use ball::{ball, ball_distances, Ball, BallEdge, BallVertex, RADIUS_GUARD};
pub use tree::{
    combinatorial_distance, distance, edge_eq, edge_length, edge_stabilizer_contains, geodesic, geodesic_vertices,
    vertex_distance, vertex_eq, vertex_stabilizer_contains, StabilizerDescriptor, TreeEdge, TreePoint, TreeVertex,
};
