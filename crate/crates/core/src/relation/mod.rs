//! Bivariate algebraic relations and Frobenius-type relations over Z/m.

pub mod bivariate;
pub mod frobenius;

pub use bivariate::{guess_relation, search_relation, verify_relation, BivariateRelation, RelationGuess, Term};
pub use frobenius::{guess_frobenius, FrobeniusRelation, FrobeniusTerm};
