//! Linear differential operators, their guessing mod p and over Q, and
//! singularity analysis.

pub mod guess;
pub mod operator;
pub mod pade;
pub mod singular;

pub use guess::{budgets, guess_ode_modp, search_ode, OdeGuess};
pub use operator::{Form, LinearDiffOperator, ModOperator, RatOperator};
pub use pade::{diff_pade, hermite_pade_ode, holonomy_rejection_test, rejection_grid, BudgetVerdict, HolonomyReport, PadeFit};
pub use singular::{polynomial_roots, singularity_report, Singularity, SingularityReport};
