//! Character varieties of torus and two-bridge knots.

mod poly;
mod torus;
mod trace;
mod two_bridge;
mod zero_set;

pub use poly::{Exponents, TracePolynomial};
pub use torus::{arc_representation, torus_knot_arcs, torus_knot_peripheral, ArcDescription};
pub use trace::{trace_polynomial, TraceReducer};
pub use two_bridge::{
    in_trace_region, relator_trace_polynomial, rep_from_point, two_bridge_polynomial,
    two_bridge_word, POINT_RELATOR_TOL,
};
pub use zero_set::{zero_set, ZeroSet, ZERO_TOL};
