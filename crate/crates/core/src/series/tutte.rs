//! Tutte's recurrence for q-coloured rooted triangulations and its relatives.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::coeff::Coeff;
use super::qpoly::QPoly;
use super::truncated::{IntegerSeries, QPolySeries, RationalSeries, Series};
use crate::error::{invalid, Error, Result};

/// The parameter q of the recurrence.
#[derive(Debug, Clone, PartialEq)]
pub enum TutteParam {
    Rational(BigRational),
    Symbolic,
}

/// Output of [`tutte_series`], typed by the coefficient domain q lives in.
#[derive(Debug, Clone, PartialEq)]
pub enum TutteSeries {
    Integer(IntegerSeries),
    Rational(RationalSeries),
    Poly(QPolySeries),
}

/// h_0..h_n of H(w): h_0 = h_1 = 0, h_2 = q(q-1), then
/// q(m+1)(m+2) h_{m+2} = q(q-4)(3m-1)(3m-2) h_{m+1} + 2 sum_i i(i+1)(3m-3i+1) h_{i+1} h_{m-i+2}.
pub fn tutte_series(q: &TutteParam, n: usize) -> Result<TutteSeries> {
    match q {
        TutteParam::Symbolic => tutte_in(&QPoly::q(), n).map(TutteSeries::Poly),
        TutteParam::Rational(r) if r.denom().is_one() => {
            tutte_in(r.numer(), n).map(TutteSeries::Integer)
        }
        TutteParam::Rational(r) => tutte_in(r, n).map(TutteSeries::Rational),
    }
}

/// Integer q shortcut.
pub fn tutte_integer(q: i64, n: usize) -> Result<IntegerSeries> {
    tutte_in(&BigInt::from(q), n)
}

/// The recurrence evaluated in any exact ring containing q.
pub fn tutte_in<T: Coeff>(q: &T, n: usize) -> Result<Series<T>> {
    if n < 2 {
        return invalid("tutte_series needs n >= 2");
    }
    if q.is_zero() {
        return invalid("q = 0 makes the recurrence divide by zero");
    }
    let mut h: Vec<T> = vec![T::zero(); n + 1];
    h[2] = q.mul_ref(&q.sub_ref(&T::one()));
    let q4 = q.mul_ref(&q.sub_ref(&T::from_i64(4)));
    for m in 1..n.saturating_sub(1) {
        let mi = m as i64;
        let mut acc = q4.mul_i64((3 * mi - 1) * (3 * mi - 2)).mul_ref(&h[m + 1]);
        let mut conv = T::zero();
        // pair i with m+1-i: both give the product h_{i+1} h_{m-i+2}
        let weight = |i: i64| i * (i + 1) * (3 * mi - 3 * i + 1);
        let mut i = 1i64;
        while 2 * i < mi + 1 {
            let a = (i + 1) as usize;
            let b = (mi - i + 2) as usize;
            if !h[a].is_zero() && !h[b].is_zero() {
                let w = weight(i) + weight(mi + 1 - i);
                conv.add_assign_ref(&h[a].mul_ref(&h[b]).mul_i64(w));
            }
            i += 1;
        }
        if 2 * i == mi + 1 {
            let a = (i + 1) as usize;
            conv.add_assign_ref(&h[a].mul_ref(&h[a]).mul_i64(weight(i)));
        }
        acc.add_assign_ref(&conv.mul_i64(2));
        let d = q.mul_i64((mi + 1) * (mi + 2));
        h[m + 2] = acc.div_exact(&d).ok_or(Error::InexactDivision {
            index: m + 2,
            detail: "recurrence division by q(m+1)(m+2)".into(),
        })?;
    }
    Ok(Series::new("w", h))
}

/// S = H / (12 w^2) for the q = 4 series; order drops by two.
pub fn normalized_series(h: &IntegerSeries) -> Result<IntegerSeries> {
    if h.order() < 2 {
        return invalid("need at least three coefficients");
    }
    if !h.coeff(0).is_zero() || !h.coeff(1).is_zero() {
        return invalid("h_0 and h_1 must vanish");
    }
    let twelve = BigInt::from(12);
    let c = h.coeffs()[2..]
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let (q, r) = x.div_rem(&twelve);
            if r.is_zero() {
                Ok(q)
            } else {
                Err(Error::InvalidInput(format!("h_{} not divisible by 12", k + 2)))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Series::new(h.var(), c))
}

/// The q = 4 series S(w) to order n (needs H to order n + 2).
pub fn tutte_q4_normalized(n: usize) -> Result<IntegerSeries> {
    normalized_series(&tutte_integer(4, n + 2)?)
}

/// Power-series solution of Tutte's differential equation with h_0 = 0 and a
/// prescribed h_1, computed order by order; h_1 = 0 gives the q-coloured series.
pub fn family_solution(q: &BigRational, h1: &BigRational, n: usize) -> Result<RationalSeries> {
    if q.is_zero() {
        return invalid("q must be nonzero");
    }
    let lead = q + h1 * BigRational::from_integer(4.into());
    if lead.is_zero() {
        return invalid("q + 4 h1 = 0 is a singular parameter");
    }
    let r = |v: i64| BigRational::from_integer(BigInt::from(v));
    let mut h = vec![BigRational::zero(); n + 1];
    if n >= 1 {
        h[1] = h1.clone();
    }
    let q4 = q * (r(4) - q);
    for nn in 1..n {
        let ni = nn as i64;
        let mut rhs = BigRational::zero();
        if nn == 1 {
            rhs += r(2) * q * q * (r(1) - q);
        }
        rhs += &q4 * r((3 * ni - 4) * (3 * ni - 5)) * &h[nn];
        for a in 2..=nn {
            let b = nn + 2 - a;
            if h[a].is_zero() || h[b].is_zero() {
                continue;
            }
            let c = (10 - 6 * a as i64) * (b as i64) * (b as i64 - 1);
            rhs += r(c) * &h[a] * &h[b];
        }
        h[nn + 1] = -rhs / (&lead * r(ni * (ni + 1)));
    }
    Ok(Series::new("w", h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::coeff::int;

    fn ints(s: &IntegerSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn q4_prefix() {
        let h = tutte_integer(4, 7).unwrap();
        assert_eq!(ints(&h), vec![0, 0, 12, 24, 168, 1656, 19296, 248832]);
        assert_eq!(ints(&tutte_integer(4, 2).unwrap()), vec![0, 0, 12]);
    }

    #[test]
    fn normalized_prefix() {
        let s = tutte_q4_normalized(7).unwrap();
        assert_eq!(ints(&s), vec![1, 2, 14, 138, 1608, 20736, 286452, 4160274]);
    }

    #[test]
    fn rejects_zero_q() {
        assert!(tutte_integer(0, 5).is_err());
    }

    #[test]
    fn symbolic_w6() {
        let TutteSeries::Poly(p) = tutte_series(&TutteParam::Symbolic, 6).unwrap() else {
            panic!()
        };
        // q(q-1)(q-2)(176q^3 - 1245q^2 + 2951q - 2344)
        let f = [
            QPoly::from_i64s(&[0, 1]),
            QPoly::from_i64s(&[-1, 1]),
            QPoly::from_i64s(&[-2, 1]),
            QPoly::from_i64s(&[-2344, 2951, -1245, 176]),
        ];
        let expect = f.iter().fold(QPoly::from_i64s(&[1]), |a, b| a.mul(b));
        assert_eq!(p.coeff(6), &expect);
    }

    #[test]
    fn rational_q_runs() {
        let q = TutteParam::Rational(BigRational::new(7.into(), 2.into()));
        assert!(matches!(tutte_series(&q, 8).unwrap(), TutteSeries::Rational(_)));
    }

    #[test]
    fn family_reduces_to_tutte_at_h1_zero() {
        let f = family_solution(&int(5), &int(0), 8).unwrap();
        let t = tutte_integer(5, 8).unwrap().to_rational();
        assert_eq!(f, t);
    }

    #[test]
    fn family_polynomial_solution_u_zero() {
        // h1 = -q(q-1)/(q-4) = -20 for q = 5
        let f = family_solution(&int(5), &int(-20), 10).unwrap();
        assert_eq!(f.coeff(1), &int(-20));
        assert!(f.coeffs()[2..].iter().all(|c| c.is_zero()));
    }
}
