pub mod bfile;
pub mod bigfloat;
pub mod cli;
pub mod dirichlet;
pub mod error;
pub mod golden;
pub mod sequences;
pub mod summation;
pub mod verification;
pub mod zeckendorf;

pub use bigfloat::BigFloatComplex;
pub use error::{Error, Result};
pub use golden::GoldenNum;
pub use zeckendorf::ZeckWord;
