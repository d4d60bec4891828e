//! Word-level modular arithmetic, polynomials over Z/m and modular kernels.

pub mod dense;
pub mod dixon;
pub mod kernel;
pub mod polymod;
pub mod ratpoly;
pub mod zmod;
