//! Frames over finite fields under the l-Galois inner product.
//!
//! Builds l-Galois self-dual (consta)cyclic codes, searches for matrices
//! M = rA + sI + tJ whose Gram matrix G = M M^{dagger_l} is scalar, and
//! verifies the resulting equiangular tight frames.

pub mod ccyclic;
pub mod census;
pub mod code;
pub mod conway;
pub mod error;
pub mod etf;
pub mod field;
pub mod frame;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod reproduce;

pub use error::{Error, Result};
pub use field::{FieldCtx, FieldSpec, Fq, ModulusChoice};
pub use matrix::FqMatrix;
