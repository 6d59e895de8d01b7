//! Exact rational convex geometry: polytopes with face lattices, polyhedral
//! cones with lineality, and normal generalized fans. No floating point is
//! used in any predicate.

mod cone;
mod dd;
mod fan;
pub mod linalg;
mod polytope;

pub use cone::Cone;
pub use fan::{grid_points, normal_fan, validate_generalized_fan, GeneralizedFan, NormalFan};
pub use linalg::{Q, Z};
pub use polytope::{convex_hull, minkowski_sum, vertex_order, Face, Polytope, VertexOrder};
