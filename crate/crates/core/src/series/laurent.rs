//! Truncated Laurent series over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::truncated::{RationalSeries, Series};
use crate::error::{invalid, Result};

/// Coefficients for exponents lead..=high; everything above high is unknown.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSeries {
    var: String,
    lead: i64,
    coeffs: Vec<BigRational>,
}

pub type LaurentRationalSeries = LaurentSeries;

impl LaurentSeries {
    /// Builds the series, moving `lead` past leading zeros.
    pub fn new(var: impl Into<String>, lead: i64, coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty());
        let mut s = LaurentSeries { var: var.into(), lead, coeffs };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let z = self.coeffs.iter().position(|c| !c.is_zero());
        match z {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.lead += k as i64;
            }
            None => {
                // identically zero to the known order: keep a single zero slot at `high`
                let high = self.high();
                self.coeffs = vec![BigRational::zero()];
                self.lead = high;
            }
        }
    }

    pub fn from_series(s: &RationalSeries, shift: i64) -> Self {
        Self::new(s.var(), shift, s.coeffs().to_vec())
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn lead(&self) -> i64 {
        self.lead
    }

    /// Highest known exponent.
    pub fn high(&self) -> i64 {
        self.lead + self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        if e < self.lead || e > self.high() {
            BigRational::zero()
        } else {
            self.coeffs[(e - self.lead) as usize].clone()
        }
    }

    /// (exponent, coefficient) pairs of nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lead + i as i64, c))
    }

    pub fn truncate_high(&self, high: i64) -> Self {
        let h = high.min(self.high());
        let lead = self.lead.min(h);
        Self::new(self.var.clone(), lead, (lead..=h).map(|e| self.coeff(e)).collect())
    }

    fn combine(&self, o: &Self, sign: i64) -> Self {
        let lo = self.lead.min(o.lead);
        let hi = self.high().min(o.high());
        if hi < lo {
            return Self::new(self.var.clone(), hi, vec![BigRational::zero()]);
        }
        let c = (lo..=hi)
            .map(|e| {
                let b = o.coeff(e);
                if sign > 0 {
                    self.coeff(e) + b
                } else {
                    self.coeff(e) - b
                }
            })
            .collect();
        Self::new(self.var.clone(), lo, c)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(o, 1)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(o, -1)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(
            self.var.clone(),
            self.lead,
            self.coeffs.iter().map(|x| x * c).collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        let lead = self.lead + o.lead;
        let high = (self.high() + o.lead).min(o.high() + self.lead);
        let len = (high - lead + 1) as usize;
        let mut r = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    r[i + j] += a * b;
                }
            }
        }
        Self::new(self.var.clone(), lead, r)
    }

    /// Multiplicative inverse; the leading coefficient must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return invalid("inverse of a zero Laurent series");
        }
        let n = self.coeffs.len() - 1;
        let body = Series::new(self.var.clone(), self.coeffs.clone());
        let inv = body.inverse()?;
        debug_assert_eq!(inv.order(), n);
        Ok(Self::new(self.var.clone(), -self.lead, inv.into_coeffs()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inverse()?))
    }

    /// d/dx; the known range shifts down by one.
    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * BigRational::from_integer(BigInt::from(self.lead + i as i64)))
            .collect();
        Self::new(self.var.clone(), self.lead - 1, c)
    }

    /// x d/dx.
    pub fn theta(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * BigRational::from_integer(BigInt::from(self.lead + i as i64)))
            .collect();
        Self::new(self.var.clone(), self.lead, c)
    }

    /// Multiply by x^j.
    pub fn shift(&self, j: i64) -> Self {
        Self::new(self.var.clone(), self.lead + j, self.coeffs.clone())
    }

    pub fn constant(var: &str, c: BigRational, high: i64) -> Self {
        let mut v = vec![BigRational::zero(); (high + 1).max(1) as usize];
        v[0] = c;
        Self::new(var, 0, v)
    }

    /// True when every nonzero term has an exponent divisible by k.
    pub fn supported_on_multiples(&self, k: i64) -> bool {
        self.terms().all(|(e, _)| e.rem_euclid(k) == 0)
    }

    pub fn is_one(&self) -> bool {
        self.terms().all(|(e, c)| e == 0 && c.is_one()) && self.coeff(0).is_one()
    }
}
