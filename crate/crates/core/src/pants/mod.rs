//! Pants decompositions, the moduli polytope and its lattice.

mod graph;
mod lattice;
mod polytope;

pub use graph::TrivalentGraph;
pub use lattice::{lattice_index, symplectic_volume, BSLattice, SymplecticVolume};
pub use polytope::{
    exact_volume, monte_carlo_volume, polytope_from_graph, polytope_volume, McEstimate, PiVolume,
    Polytope, VolumeMethod, VolumeResult, EXACT_DIM_CAP, MC_CHUNK,
};
