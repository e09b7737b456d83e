//! Exact-arithmetic toolkit for the combinatorics of the m=4 amplituhedron:
//! positroid cells from plabic graphs, BCFW recipes and chord diagrams,
//! product promotion and coordinate cluster variables, quiver mutation, and
//! Monte Carlo verification of tilings, sign descriptions and adjacency.

pub mod error;
pub mod rat;
pub mod linalg;
pub mod rng;
pub mod grassmannian;
pub mod plabic;
pub mod bcfw;
pub mod promotion;
pub mod cluster;
pub mod amplituhedron;

pub use error::{Error, Result};
pub use rat::Rat;
