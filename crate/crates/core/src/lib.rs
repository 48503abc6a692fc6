#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dd;
pub mod error;
pub mod fredholm;
pub mod gapprob;
pub mod kernels;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
