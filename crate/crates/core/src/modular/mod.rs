//! Reduction of exact series to Z/m and lacunary identities.

pub mod checks;
pub mod lacunary;
pub mod series;

pub use checks::{frobenius_holds, power_identity_check, support_check};
pub use lacunary::{
    fit_lacunary, lacunary_series, verify_lacunary_identity, Ansatz, Basis, LacTerm, LacunaryExpr,
    LacunaryKind,
};
pub use series::{reduce, reduce_rational, ModSeries};
