//! Computation engine for finitely presented G-crossed braided (spherical,
//! split) fusion categories.
//!
//! The engine works with a skeletal, strict presentation: a finite group G, a
//! finite set of simple labels with duals, grades and quantum dimensions, and
//! sparse F/R/U coefficient tensors. Morphisms are block tensors of complex
//! coefficients in the standard left-combed fusion-tree basis. On top of this
//! sit equivariant Frobenius algebras, category-level constructions (reverse
//! category, crossed product, neutral double), G-equivariant alpha-induction
//! with the Theta Frobenius algebra, and equivariant left/full centers with a
//! numerical comparison between the full center and Theta.

pub mod group;
pub mod spec;
pub mod validate;
pub mod object;
pub mod morphism;
pub mod recouple;
pub mod gaction;
pub mod duality;
pub mod frob;
pub mod construct;
pub mod alphamod;
pub mod thick;
pub mod centermod;
pub mod randmorph;

pub use group::GroupTable;
pub use spec::{CategorySpec, SimpleLabel};
pub use object::{ObjectExpr, Word};
pub use morphism::Morphism;

/// Numerical field used throughout the engine.
pub type C64 = num_complex::Complex<f64>;

/// Errors produced by the engine.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("referential error: {0}")]
    Referential(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("singular Gram matrix (condition number {0:.3e})")]
    SingularGram(f64),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
