//! Vector fields and formal diffeomorphisms on affine spaces.

mod diffeo;
mod field;

pub use diffeo::{flow, flow_images, FormalDiffeo};
pub use field::{HVectorField, VectorField};
