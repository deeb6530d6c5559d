//! Sofic approximations of Cayley graphs and the counting experiment.

pub mod approx;
pub mod counting;
pub mod graph;

pub use approx::{
    greedy_packing, passing_vertices, permutation_approximation, torus_approximation,
    verify_approximation, SoficApproximation,
};
pub use counting::{chain_bound_log, counting_feasibility, phi_image_count, phi_image_sample, Feasibility};
pub use graph::{ball_isomorphic, LabeledGraph};
