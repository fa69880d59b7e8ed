//! Rational convex polytopes, cones and their combinatorics.

pub mod cone;
pub mod dd;
pub mod hull;
pub mod ops;

pub use cone::Cone;
pub use hull::{Face, Facet, FaceLattice, Polytope};
pub use ops::{
    common_tangent, complex_rank, face_summands, minkowski_combination, minkowski_sum, mixed_volume, mixed_volume_in,
    rank, support_function, volume,
};
