//! Residual checks of non-linear differential equations on truncated series.

pub mod ode;
pub mod special;

pub use ode::{make_ode, symbolic_tutte_ode, NlTerm, NonlinearODE, OdeName, Residual};
pub use special::{autonomous_q4_residual, schwarzian_residual, verify_autonomous_q4};
