//! Exact computer algebra for Darboux transformations of `e^{xz}`, their
//! trigonometric classification, bispectral difference counterparts and the
//! correspondence with Calogero-Moser matrix pairs.

pub mod bispectral;
pub mod cm;
pub mod corpus;
pub mod darboux;
pub mod difference;
pub mod diffop;
pub mod error;
pub mod gcd;
pub mod json;
pub mod matrix;
pub mod modgcd;
pub mod multipoly;
pub mod numeric;
pub mod quasipoly;
pub mod ratfunc;
pub mod spectral;
pub mod suite;
pub mod ring;
pub mod scalar;
pub mod unipoly;

pub use error::Error;
pub use matrix::Matrix;
pub use multipoly::{MultiPoly, Var};
pub use ratfunc::RatFunc;
pub use scalar::GaussianRational;
pub use unipoly::UniPoly;
