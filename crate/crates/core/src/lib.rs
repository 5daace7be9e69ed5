pub mod demag;
pub mod error;
pub mod field;
pub mod harness;
pub mod integrators;
pub mod io;
pub mod mesh;
pub mod ops;
pub mod solver;

pub use error::{Error, Result};
pub use field::{ScalarField, VectorField};
pub use mesh::Mesh;
