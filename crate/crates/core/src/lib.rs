#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod error;
pub mod exponent;
pub mod extend;
pub mod grids;
mod kernel;
pub mod special;
pub mod interp;
pub mod profiles;
pub mod capdecomp;
pub mod extremize;
pub mod cli;
