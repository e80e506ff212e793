//! Exact *-algebra arithmetic for Toeplitz/circle tensor algebras, pullback
//! diagrams of quantum spaces, Milnor clutching idempotents, and the
//! homotopy that reduces them to elementary projections — together with a
//! finite-dimensional numerical back end that cross-checks every closed form.

pub mod element;
pub mod error;
pub mod scalar;
pub mod word;

pub use element::Element;
pub use error::{Error, Result};
pub use scalar::{GaussRational, Scalar};
pub use word::{Factor, FactorWord, Signature, Word};

pub mod hopf;
pub mod homotopy;
pub mod matrix;
pub mod milnor;
pub mod pullback;
pub mod trunc;
