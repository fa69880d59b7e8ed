//! Convex-geometric calculus for systems of exponential sums: mixed volumes and
//! mixed pseudovolumes of rational polytopes in ℂⁿ* ≅ ℝ²ⁿ, the polytope ring
//! with its volume and pseudovolume pairings, weighted tropical fans, and the
//! intersection index of exponential hypersurfaces together with numeric
//! oracles (zero counting, lattice densities) to check it against.

pub mod error;
pub mod exactnum;
pub mod expsum;
pub mod io;
pub mod polytope;
pub mod polytope_ring;
pub mod pseudovolume;
pub mod tropical;

pub use error::{Error, Result};
