//! Exact and asymptotic enumeration of edge-colored regular multigraphs
//! weighted by inverse automorphism-group order, and the proper
//! edge-coloring counts derived from them.

pub mod asymptotics;
pub mod bignum;
pub mod cli;
pub mod colorings;
pub mod error;
pub mod exact_enum;
pub mod logval;
pub mod multipoly;
pub mod quadrature;
pub mod sphere_critical;
pub mod validation;
pub mod weights;

pub use error::{Error, Result};
pub use multipoly::{MultiIndex, RationalPolynomial};
pub use weights::WeightSpec;
