//! Twisted cohomology with `Ad ρ` coefficients, regularity, cup pairing and
//! Reidemeister-type torsion.

mod complex;
mod pairing;
mod torsion;

pub use complex::{
    build_complex, classify, cohomology_dims, is_central, is_irreducible, is_regular, regularity,
    CohomologySummary, RankReport, RegularityReport, RepClass, TwistedComplex, DEFAULT_RANK_TOL,
};
pub use pairing::{
    coboundary, cup_pairing, flatten, h1_basis, killing, pairing_matrix, to_cochain, COCYCLE_TOL,
};
pub use torsion::{torsion, torsion_with_order, BasedComplex, LiftOrder, TorsionValue};
