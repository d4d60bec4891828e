//! Exact power series: coefficient rings, truncated and Laurent series, and
//! the generators used throughout the crate.

pub mod coeff;
pub mod growth;
pub mod hypergeometric;
pub mod laurent;
pub mod period;
pub mod qpoly;
pub mod truncated;
pub mod tutte;

pub use coeff::Coeff;
pub use laurent::{LaurentRationalSeries, LaurentSeries};
pub use qpoly::QPoly;
pub use hypergeometric::ratio_2f1_series;
pub use truncated::{ratio_series, IntegerSeries, QPolySeries, RationalSeries, Series};
pub use tutte::{family_solution, normalized_series, tutte_integer, tutte_series, TutteParam, TutteSeries};
