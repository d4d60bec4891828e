//! The non-holomorphic part y_0 of the complementary elliptic period.

use crate::error::Result;
use crate::linear_ode::operator::{Form, RatOperator};
use crate::series::coeff::{int, rat};
use crate::series::RationalSeries;

/// x (x^2-1) D^2 + (3x^2-1) D + x, annihilating 2F1([1/2,1/2],[1],x^2).
pub fn period_operator() -> RatOperator {
    RatOperator::from_i64s(Form::D, &[&[0, 1], &[-1, 0, 3], &[0, -1, 0, 1]]).unwrap()
}

/// x^2 (x^2-1) D^2 + x (3x^2-1) D + 1.
pub fn companion_operator() -> RatOperator {
    RatOperator::from_i64s(Form::D, &[&[1], &[0, -1, 0, 3], &[0, 0, -1, 0, 1]]).unwrap()
}

/// The order-4 operator M_2 ∘ L_2 that annihilates y_0.
pub fn order_four_operator() -> RatOperator {
    companion_operator().compose(&period_operator()).unwrap()
}

/// y_0 through x^n: seeds 0, 0, 1/4, 0 and the recurrence of the order-4 operator.
pub fn complementary_period_series(n: usize) -> Result<RationalSeries> {
    let op = order_four_operator();
    let mut seeds = vec![(0, int(0)), (1, int(0)), (2, rat(1, 4)), (3, int(0))];
    seeds.retain(|(i, _)| *i <= n);
    op.series_solution(&seeds, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::coeff::parse_rational;

    #[test]
    fn printed_prefix() {
        let y = complementary_period_series(18).unwrap();
        let printed = [
            (2, "1/4"),
            (4, "21/128"),
            (6, "185/1536"),
            (8, "18655/196608"),
            (10, "102501/1310720"),
            (12, "1394239/20971520"),
            (14, "33944053/587202560"),
            (16, "3074289075/60129542144"),
            (18, "99205524275/2164663517184"),
        ];
        for (k, v) in printed {
            assert_eq!(y.coeff(k), &parse_rational(v).unwrap(), "x^{k}");
        }
        for k in (1..=18).step_by(2) {
            assert_eq!(y.coeff(k), &int(0));
        }
    }

    #[test]
    fn annihilated() {
        let y = complementary_period_series(60).unwrap();
        assert!(order_four_operator().apply(&y).unwrap().is_zero());
    }
}
