//! The stage maps `L_i → L_{i+1}` and `T_i → T_{i+1}`.
//!
//! The tree map subdivides every edge at its midpoint and folds the `M_i`
//! half onto the edge `β_{i+1}(a_i)·G_i`. Only the closed-form images are
//! built; the intermediate graphs of groups never appear.

mod checks;
mod folds;
mod map;

pub use checks::{check_edge_stab, check_morph_summary, check_point_map};
pub use folds::{check_folds, fold_profile, overlap_length, random_edge, random_edge_pair, FoldProfile, FOLD_BUDGET};
pub use map::{
    edge_image_range, phi, phi_range, point_image, point_image_range, vertex_image, vertex_image_range, StageMap,
};
