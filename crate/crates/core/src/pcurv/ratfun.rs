//! Reduced rational functions over F_p.

use crate::arith::polymod::{self, PolyMod};
use crate::arith::zmod::{inv_mod, mul_mod};

/// num/den with den monic and gcd(num, den) = 1; zero is 0/1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFun {
    num: PolyMod,
    den: PolyMod,
}

impl RatFun {
    pub fn zero() -> Self {
        RatFun { num: Vec::new(), den: vec![1] }
    }

    pub fn from_poly(p: PolyMod) -> Self {
        RatFun { num: polymod::trimmed(p), den: vec![1] }
    }

    /// Panics on a zero denominator.
    pub fn new(num: PolyMod, den: PolyMod, p: u64) -> Self {
        let num = polymod::trimmed(num);
        let den = polymod::trimmed(den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return Self::zero();
        }
        let g = polymod::gcd(&num, &den, p);
        let (mut n, _) = polymod::divrem(&num, &g, p);
        let (mut d, _) = polymod::divrem(&den, &g, p);
        let inv = inv_mod(*d.last().unwrap(), p).unwrap();
        n = polymod::scale(&n, inv, p);
        d = polymod::scale(&d, inv, p);
        RatFun { num: n, den: d }
    }

    pub fn num(&self) -> &[u64] {
        &self.num
    }

    pub fn den(&self) -> &[u64] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// max(deg num, deg den)
    pub fn degree(&self) -> usize {
        self.num.len().max(self.den.len()).saturating_sub(1)
    }

    pub fn add(&self, o: &Self, p: u64) -> Self {
        if self.den == o.den {
            return Self::new(polymod::add(&self.num, &o.num, p), self.den.clone(), p);
        }
        Self::new(
            polymod::add(&polymod::mul(&self.num, &o.den, p), &polymod::mul(&o.num, &self.den, p), p),
            polymod::mul(&self.den, &o.den, p),
            p,
        )
    }

    pub fn mul(&self, o: &Self, p: u64) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Self::new(polymod::mul(&self.num, &o.num, p), polymod::mul(&self.den, &o.den, p), p)
    }

    pub fn neg(&self, p: u64) -> Self {
        RatFun { num: polymod::scale(&self.num, p - 1, p), den: self.den.clone() }
    }

    pub fn deriv(&self, p: u64) -> Self {
        let a = polymod::mul(&polymod::deriv(&self.num, p), &self.den, p);
        let b = polymod::mul(&self.num, &polymod::deriv(&self.den, p), p);
        Self::new(polymod::sub(&a, &b, p), polymod::mul(&self.den, &self.den, p), p)
    }

    pub fn scale(&self, c: u64, p: u64) -> Self {
        Self::new(self.num.iter().map(|&x| mul_mod(x, c, p)).collect(), self.den.clone(), p)
    }
}
