//! Truncated series over Z/m.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::zmod::{self, add_mod, mul_mod, sub_mod};
use crate::error::{invalid, Error, Result};
use crate::series::{IntegerSeries, RationalSeries};

/// Residues in [0, m) for degrees 0..=n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModSeries {
    var: String,
    modulus: u64,
    coeffs: Vec<u64>,
}

impl ModSeries {
    pub fn new(var: impl Into<String>, modulus: u64, coeffs: Vec<u64>) -> Result<Self> {
        if modulus < 2 {
            return invalid("modulus must be at least 2");
        }
        if coeffs.is_empty() {
            return invalid("a series needs at least one coefficient");
        }
        let coeffs = coeffs.into_iter().map(|c| c % modulus).collect();
        Ok(ModSeries { var: var.into(), modulus, coeffs })
    }

    pub fn from_i64s(var: &str, modulus: u64, c: &[i64]) -> Result<Self> {
        Self::new(var, modulus, c.iter().map(|&x| zmod::from_i64(x, modulus)).collect())
    }

    pub fn constant(var: &str, modulus: u64, c: u64, n: usize) -> Self {
        let mut v = vec![0; n + 1];
        v[0] = c % modulus;
        ModSeries { var: var.into(), modulus, coeffs: v }
    }

    /// A polynomial known exactly, padded or cut to order n.
    pub fn from_poly(var: &str, modulus: u64, p: &[u64], n: usize) -> Self {
        let mut v: Vec<u64> = p.iter().take(n + 1).map(|c| c % modulus).collect();
        v.resize(n + 1, 0);
        ModSeries { var: var.into(), modulus, coeffs: v }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs[k]
    }

    pub fn truncate(&self, n: usize) -> Self {
        ModSeries {
            var: self.var.clone(),
            modulus: self.modulus,
            coeffs: self.coeffs[..=n.min(self.order())].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn same(&self, o: &Self) -> Result<()> {
        if self.modulus != o.modulus {
            return Err(Error::DomainMismatch(format!(
                "moduli {} and {}",
                self.modulus, o.modulus
            )));
        }
        Ok(())
    }

    fn with(&self, coeffs: Vec<u64>) -> Self {
        ModSeries { var: self.var.clone(), modulus: self.modulus, coeffs }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let m = self.modulus;
        Ok(self.with(self.coeffs.iter().zip(&o.coeffs).map(|(&a, &b)| add_mod(a, b, m)).collect()))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let m = self.modulus;
        Ok(self.with(self.coeffs.iter().zip(&o.coeffs).map(|(&a, &b)| sub_mod(a, b, m)).collect()))
    }

    pub fn scale(&self, c: u64) -> Self {
        let m = self.modulus;
        self.with(self.coeffs.iter().map(|&a| mul_mod(a, c % m, m)).collect())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let n = self.order().min(o.order());
        Ok(self.with(mul_trunc(&self.coeffs, &o.coeffs, n, self.modulus)))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let n = self.order();
        let m = self.modulus;
        let mut base = self.coeffs.clone();
        let mut r = vec![0; n + 1];
        r[0] = 1 % m;
        while e > 0 {
            if e & 1 == 1 {
                r = mul_trunc(&r, &base, n, m);
            }
            e >>= 1;
            if e > 0 {
                base = mul_trunc(&base, &base, n, m);
            }
        }
        self.with(r)
    }

    /// x -> x^k; known through (n+1)k - 1.
    pub fn substitute_power(&self, k: usize) -> Self {
        let n = (self.order() + 1) * k - 1;
        let mut r = vec![0; n + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            r[i * k] = c;
        }
        self.with(r)
    }

    /// Multiply by x^j; known through n + j.
    pub fn shift(&self, j: usize) -> Self {
        let mut r = vec![0; j];
        r.extend_from_slice(&self.coeffs);
        self.with(r)
    }

    pub fn theta(&self) -> Self {
        let m = self.modulus;
        self.with(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| mul_mod(c, k as u64 % m, m))
                .collect(),
        )
    }

    /// Inverse when the constant term is a unit.
    pub fn inverse(&self) -> Result<Self> {
        let m = self.modulus;
        let inv0 = zmod::inv_mod(self.coeffs[0], m)
            .ok_or(Error::NotInvertible { modulus: m, index: 0 })?;
        let n = self.order();
        let mut r = vec![0u64; n + 1];
        r[0] = inv0;
        for k in 1..=n {
            let mut acc = 0u128;
            for j in 1..=k {
                acc = (acc + self.coeffs[j] as u128 * r[k - j] as u128) % m as u128;
            }
            r[k] = mul_mod(zmod::neg_mod(acc as u64, m), inv0, m);
        }
        Ok(self.with(r))
    }

    /// Index of the last nonzero coefficient.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }

    /// Nonzero (index, coefficient) pairs.
    pub fn support(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k, c))
    }

    /// Same coefficients read modulo a divisor of the modulus.
    pub fn reduce_modulus(&self, d: u64) -> Result<Self> {
        if d < 2 || !self.modulus.is_multiple_of(d) {
            return invalid(format!("{d} does not divide {}", self.modulus));
        }
        ModSeries::new(self.var.clone(), d, self.coeffs.clone())
    }
}

/// Truncated product through degree n.
pub fn mul_trunc(a: &[u64], b: &[u64], n: usize, m: u64) -> Vec<u64> {
    let mut r = vec![0u64; n + 1];
    let small = m <= 1 << 32;
    let nb = a.len().min(n + 1);
    for (k, out) in r.iter_mut().enumerate() {
        let lo = k.saturating_sub(b.len() - 1);
        if small {
            let mut acc = 0u128;
            for i in lo..=k.min(nb - 1) {
                acc += (a[i] * b[k - i]) as u128;
            }
            *out = (acc % m as u128) as u64;
        } else {
            let mut acc = 0u64;
            for i in lo..=k.min(nb - 1) {
                acc = add_mod(acc, mul_mod(a[i], b[k - i], m), m);
            }
            *out = acc;
        }
    }
    r
}

/// Coefficientwise residues of an integer series.
pub fn reduce(s: &IntegerSeries, m: u64) -> Result<ModSeries> {
    ModSeries::new(s.var(), m, s.coeffs().iter().map(|c| zmod::from_bigint(c, m)).collect())
}

/// Residues of a rational series; every denominator must be a unit mod m.
pub fn reduce_rational(s: &RationalSeries, m: u64) -> Result<ModSeries> {
    let c = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| rational_residue(c, m).ok_or(Error::NotInvertible { modulus: m, index: k }))
        .collect::<Result<Vec<_>>>()?;
    ModSeries::new(s.var(), m, c)
}

pub fn rational_residue(c: &BigRational, m: u64) -> Option<u64> {
    let d = zmod::inv_mod(zmod::from_bigint(c.denom(), m), m)?;
    Some(mul_mod(zmod::from_bigint(c.numer(), m), d, m))
}

pub fn residue(c: &BigInt, m: u64) -> u64 {
    zmod::from_bigint(c, m)
}
