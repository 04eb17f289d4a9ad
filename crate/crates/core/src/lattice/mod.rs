//! Integer lattices, rational polyhedral cones and their lattice-point
//! generating functions.

mod cone;
pub mod linalg;
mod zeta;

pub use cone::{combinations, Cone};
pub use zeta::{
    a_b_invariants, asymptotic_count, cone_zeta, enumerate_level, half_open_decomposition, index_of,
    leading_alpha, specialize_zeta, triangulate, weighted_cone_zeta, ConeZeta, ConeZetaTerm, HalfOpenCone,
    SpecializedZeta, WeightedConeZeta, WeightedTerm,
};

/// Coordinates in a fixed basis of a lattice.
pub type LatticeVector = Vec<i64>;
