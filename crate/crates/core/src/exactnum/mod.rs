//! Exact rational arithmetic on ℝ^{2n} with the complex structure of ℂⁿ.

pub mod linalg;
pub mod lp;
pub mod radical;
pub mod rat;
pub mod subspace;

pub use linalg::{rank_of, solve_linear};
pub use radical::{Radical, SurdSum};
pub use rat::{int, parse_rat, rat, rvec, Rat, RVec};
pub use subspace::{complex_rotate, subspace_cosine, subspace_cosine_squared, GaussianVector, Subspace};
