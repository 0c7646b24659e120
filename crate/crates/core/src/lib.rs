pub mod commands;
pub mod error;
pub mod expr;
pub mod fock;
pub mod hom;
pub mod lie;
pub mod linalg;
pub mod module;
pub mod omega;
pub mod ops;
pub mod oracle;
pub mod poly;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod spec;
pub mod tensor;
pub mod vandermonde;

pub use error::{Error, Result};
pub use scalar::Scalar;
