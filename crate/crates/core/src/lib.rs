pub mod algebra;
pub mod approx;
pub mod catalog;
pub mod conjectures;
pub mod correspondence;
pub mod domdim;
pub mod error;
pub mod field;
pub mod homology;
pub mod matrix;
pub mod module;
pub mod par;
pub mod schema;

pub use algebra::{Algebra, Quiver, Relation};
pub use error::{AlgebraError, LinalgError, ModuleError, SchemaError};
pub use field::Fp;
pub use matrix::FpMatrix;
