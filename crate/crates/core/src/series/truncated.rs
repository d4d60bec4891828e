//! Truncated power series with exact coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::coeff::Coeff;
use super::qpoly::QPoly;
use crate::error::{invalid, Error, Result};

/// Coefficients of degrees 0..=n; everything above n is unknown.
#[derive(Debug, Clone, PartialEq)]
pub struct Series<T> {
    var: String,
    coeffs: Vec<T>,
}

pub type IntegerSeries = Series<BigInt>;
pub type RationalSeries = Series<BigRational>;
pub type QPolySeries = Series<QPoly>;

impl<T: Coeff> Series<T> {
    /// Panics on an empty coefficient list.
    pub fn new(var: impl Into<String>, coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Series { var: var.into(), coeffs }
    }

    pub fn from_i64s(var: &str, c: &[i64]) -> Self {
        Self::new(var, c.iter().map(|&x| T::from_i64(x)).collect())
    }

    /// Known exactly through degree n; everything above n is unknown.
    pub fn exact_poly(var: &str, c: &[T], n: usize) -> Self {
        let mut v: Vec<T> = c.iter().take(n + 1).cloned().collect();
        v.resize(n + 1, T::zero());
        Self::new(var, v)
    }

    pub fn constant(var: &str, c: T, n: usize) -> Self {
        let mut v = vec![T::zero(); n + 1];
        v[0] = c;
        Self::new(var, v)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// Truncation order n.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }

    pub fn with_var(mut self, var: &str) -> Self {
        self.var = var.into();
        self
    }

    pub fn truncate(&self, n: usize) -> Self {
        Series::new(self.var.clone(), self.coeffs[..=n.min(self.order())].to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Series<U> {
        Series::new(self.var.clone(), self.coeffs.iter().map(f).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Series::new(
            self.var.clone(),
            (0..=n).map(|k| self.coeffs[k].add_ref(&o.coeffs[k])).collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Series::new(
            self.var.clone(),
            (0..=n).map(|k| self.coeffs[k].sub_ref(&o.coeffs[k])).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg_ref())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut r = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    r[i + j].add_assign_ref(&a.mul_ref(b));
                }
            }
        }
        Series::new(self.var.clone(), r)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut r = Series::constant(&self.var, T::one(), self.order());
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    /// self / den, requiring every step's division by den_0 to be exact.
    pub fn div(&self, den: &Self) -> Result<Self> {
        let d0 = &den.coeffs[0];
        if d0.is_zero() {
            return invalid("denominator has zero constant term");
        }
        let n = self.order().min(den.order());
        let mut r: Vec<T> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                let dj = &den.coeffs[j];
                if !dj.is_zero() {
                    acc = acc.sub_ref(&dj.mul_ref(&r[k - j]));
                }
            }
            let q = acc.div_exact(d0).ok_or(Error::InexactDivision {
                index: k,
                detail: "constant term of denominator is not a unit".into(),
            })?;
            r.push(q);
        }
        Ok(Series::new(self.var.clone(), r))
    }

    pub fn inverse(&self) -> Result<Self> {
        Series::constant(&self.var, T::one(), self.order()).div(self)
    }

    /// x -> c x^k; known through degree (n+1)k - 1.
    pub fn substitute(&self, c: &T, k: usize) -> Self {
        assert!(k >= 1);
        let n = (self.order() + 1) * k - 1;
        let mut r = vec![T::zero(); n + 1];
        let mut cp = T::one();
        for (i, a) in self.coeffs.iter().enumerate() {
            r[i * k] = a.mul_ref(&cp);
            cp = cp.mul_ref(c);
        }
        Series::new(self.var.clone(), r)
    }

    /// d/dw; order drops by one.
    pub fn derivative(&self) -> Result<Self> {
        if self.order() == 0 {
            return invalid("derivative of an order-0 series is unknown");
        }
        Ok(Series::new(
            self.var.clone(),
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul_i64(k as i64))
                .collect(),
        ))
    }

    /// θ = w d/dw; order preserved.
    pub fn theta(&self) -> Self {
        Series::new(
            self.var.clone(),
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.mul_i64(k as i64))
                .collect(),
        )
    }

    /// Multiply by w^j; known through n + j.
    pub fn shift(&self, j: usize) -> Self {
        let mut r = vec![T::zero(); j];
        r.extend(self.coeffs.iter().cloned());
        Series::new(self.var.clone(), r)
    }
}

impl IntegerSeries {
    pub fn to_rational(&self) -> RationalSeries {
        self.map(|c| BigRational::from_integer(c.clone()))
    }
}

impl RationalSeries {
    /// Cast to integers; error names the first fractional coefficient.
    pub fn to_integer(&self) -> Result<IntegerSeries> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if c.denom().is_one() {
                    Ok(c.numer().clone())
                } else {
                    Err(Error::NonIntegral(k))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(|c| Series::new(self.var.clone(), c))
    }
}

impl QPolySeries {
    /// Specialize q to an integer.
    pub fn eval_q(&self, q: &BigInt) -> IntegerSeries {
        self.map(|p| p.eval(q))
    }
}

/// Ratio of two series in the same domain.
pub fn ratio_series<T: Coeff>(num: &Series<T>, den: &Series<T>) -> Result<Series<T>> {
    num.div(den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64]) -> IntegerSeries {
        Series::from_i64s("w", c)
    }

    #[test]
    fn product_takes_min_order() {
        let a = s(&[1, 1, 0, 0]);
        let b = s(&[1, -1, 0]);
        assert_eq!(a.mul(&b), s(&[1, 0, -1]));
    }

    #[test]
    fn inverse_of_one_minus_w() {
        let a = s(&[1, -1, 0, 0, 0]);
        assert_eq!(a.inverse().unwrap(), s(&[1, 1, 1, 1, 1]));
        assert!(s(&[2, 1]).inverse().is_err());
    }

    #[test]
    fn substitution_order() {
        let a = s(&[1, 2, 3]);
        let b = a.substitute(&BigInt::from(-1), 2);
        assert_eq!(b, s(&[1, 0, -2, 0, 3, 0]));
    }

    #[test]
    fn theta_and_derivative() {
        let a = s(&[5, 1, 1]);
        assert_eq!(a.theta(), s(&[0, 1, 2]));
        assert_eq!(a.derivative().unwrap(), s(&[1, 2]));
        let one = s(&[1, 0, 0]);
        assert!(one.theta().is_zero());
    }

    #[test]
    fn ratio_of_self_is_one() {
        let a = s(&[1, 3, -2, 7]);
        assert_eq!(ratio_series(&a, &a).unwrap(), s(&[1, 0, 0, 0]));
    }
}
