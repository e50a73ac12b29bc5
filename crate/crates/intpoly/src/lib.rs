//! Exact computation of interior polynomials of signed bipartite graphs,
//! by two independent pipelines (lattice-point counting on root polytopes,
//! and a cycle-deletion recursion), together with the link-diagram side:
//! the median construction, HOMFLY polynomials by skein recursion, and
//! their top coefficients.
//!
//! Everything is exact: arbitrary-precision integers and rationals
//! throughout, no floating point anywhere.

pub mod bigraph;
pub mod ehrhart;
pub mod family;
pub mod homfly;
pub mod hull;
pub mod interior;
pub mod poly;
pub mod tutte;
pub mod verify;
