//! Directed-graph presentations of subshifts of finite type.

mod analysis;
mod graph;
mod matrix;
mod spectrum;

pub use analysis::{
    fixed_point_count, is_finite_periodic, is_mixing, is_perfect, is_perfect_one_sided, isolated_point,
    one_sided_isolated_vertex, periodic_orbits_upto, reach_plus, MixingObstruction, MixingVerdict, PeriodicOrbit,
};
pub use graph::{essentialize, is_subgraph, words, DirectedGraph, Symbol};
pub use matrix::BooleanMatrix;
pub use spectrum::{per_spectrum, per_subset, per_subset_witness, EventuallyPeriodicSet};
