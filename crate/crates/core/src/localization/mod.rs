//! Localization sums over torus-fixed points and the checks comparing them
//! with the closed formulas.

mod checks;
mod engine;
mod report;
mod sampler;

pub use checks::{
    check_elliptic_degeneration, check_elliptic_framing, check_euler_characteristics, check_framing_independence,
    check_kappa, check_rank1_relation_report, check_sign_identity, check_signs, check_vertex_invariants,
    is_trivial_series, sign_identity, spread_rank, verify_coh, verify_main, verify_main_with, SignCheck,
};
pub use engine::{
    contributions_coh, contributions_k, z_loc_coh, z_loc_coh_table, z_loc_ell, z_loc_ell_table, z_loc_k,
    z_loc_k_table, VertexEntry, VertexTable,
};
pub use report::{CheckReport, Comparison, PointRecord};
pub use sampler::{sample_point, Mode, Point, Sampler, DEFAULT_BOUND, DEFAULT_MAX_ATTEMPTS};
