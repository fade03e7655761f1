//! Exact symbolic workbench for Levy-Leblond square-root operators written
//! in the alphabetic (tensor-word) presentation of Clifford algebras.

pub mod clifford;
pub mod error;
pub mod exec;
pub mod grammar;
pub mod linalg;
pub mod lle;
pub mod matrix;
pub mod operator;
pub mod osp12;
pub mod scalar;
pub mod structure;
pub mod susy;
pub mod word;

pub use error::{CliffordError, LleError, MatrixError, OperatorError, Osp12Error, StructureError, WordError};
pub use exec::Exec;
pub use matrix::{OpMatrix, RationalMatrix};
pub use operator::OperatorPoly;
pub use scalar::Scalar;
pub use word::{Letter, PairRelation, Word};
