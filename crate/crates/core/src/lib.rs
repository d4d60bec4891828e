//! Exact and modular analysis of Tutte's q-coloured triangulation series and
//! related hypergeometric series.

pub mod arith;
pub mod error;
pub mod io;
pub mod linear_ode;
pub mod modular;
pub mod nonlinear;
pub mod pcurv;
pub mod reduce;
pub mod relation;
pub mod series;

pub use error::{Error, Result};
