//! Relations linear in the Frobenius powers S^{p^i} over F_p.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::kernel::kernel;
use crate::arith::polymod::{self, PolyMod};
use crate::arith::zmod;
use crate::error::{invalid, Error, Result};
use crate::modular::ModSeries;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusTerm {
    pub i: u32,
    pub poly: PolyMod,
}

/// sum_i a_i(x) S^{p^i} + c(x) ≡ 0 mod p.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusRelation {
    pub p: u64,
    pub terms: Vec<FrobeniusTerm>,
    #[serde(default)]
    pub constant: PolyMod,
}

impl FrobeniusRelation {
    pub fn new(p: u64, terms: Vec<(u32, PolyMod)>, constant: PolyMod) -> Result<Self> {
        if !zmod::is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        let mut t: Vec<FrobeniusTerm> = terms
            .into_iter()
            .map(|(i, poly)| FrobeniusTerm { i, poly: polymod::trimmed(poly.into_iter().map(|c| c % p).collect()) })
            .filter(|t| !t.poly.is_empty())
            .collect();
        t.sort_by_key(|t| t.i);
        if t.windows(2).any(|w| w[0].i == w[1].i) {
            return invalid("Frobenius exponents must be distinct");
        }
        if t.is_empty() {
            return invalid("a Frobenius relation needs a term in S");
        }
        let constant = polymod::trimmed(constant.into_iter().map(|c| c % p).collect());
        Ok(FrobeniusRelation { p, terms: t, constant })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let r: FrobeniusRelation = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(r.p, r.terms.into_iter().map(|t| (t.i, t.poly)).collect(), r.constant)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }

    /// Top term's leading coefficient scaled to 1.
    pub fn normalized(&self) -> Self {
        let top = self.terms.last().unwrap();
        let inv = zmod::inv_mod(*top.poly.last().unwrap(), self.p).unwrap();
        let sc = |v: &PolyMod| polymod::scale(v, inv, self.p);
        FrobeniusRelation {
            p: self.p,
            terms: self.terms.iter().map(|t| FrobeniusTerm { i: t.i, poly: sc(&t.poly) }).collect(),
            constant: sc(&self.constant),
        }
    }

    /// Uses s^{p^i}(x) = s(x^{p^i}) over F_p.
    pub fn evaluate(&self, s: &ModSeries) -> Result<ModSeries> {
        let p = self.p;
        if s.modulus() != p {
            return Err(Error::DomainMismatch(format!("relation mod {p} against a series mod {}", s.modulus())));
        }
        let n = s.order();
        let mut acc = ModSeries::from_poly(s.var(), p, &self.constant, n);
        for t in &self.terms {
            let k = p.checked_pow(t.i).ok_or_else(|| Error::InvalidInput("Frobenius exponent overflow".into()))?;
            let sub = s.substitute_power(k as usize);
            let a = ModSeries::from_poly(s.var(), p, &t.poly, n);
            acc = acc.add(&a.mul(&sub)?)?;
        }
        Ok(acc)
    }

    pub fn holds(&self, s: &ModSeries) -> Result<bool> {
        Ok(self.evaluate(s)?.is_zero())
    }
}

/// Smallest-leading relation with i <= i_max and polynomial degrees <= deg,
/// verified on every coefficient.
pub fn guess_frobenius(s: &ModSeries, i_max: u32, deg: usize) -> Result<Option<FrobeniusRelation>> {
    let p = s.modulus();
    if !zmod::is_prime(p) {
        return invalid(format!("Frobenius relations need a prime modulus, got {p}"));
    }
    let ceiling: u64 = 1 << 20;
    p.checked_pow(i_max).filter(|&v| v <= ceiling).ok_or_else(|| {
        Error::InvalidInput(format!("p^i_max exceeds the ceiling {ceiling}"))
    })?;
    let n = s.order();
    let unknowns = (i_max as usize + 2) * (deg + 1);
    if unknowns > n + 1 {
        return Err(Error::TooShort { needed: unknowns, have: n + 1 });
    }
    let mut bases: Vec<Vec<u64>> = (0..=i_max)
        .rev()
        .map(|i| s.substitute_power(p.pow(i) as usize).coeffs().to_vec())
        .collect();
    bases.push(ModSeries::constant(s.var(), p, 1, n).coeffs().to_vec());
    let mut cols = Vec::with_capacity(unknowns);
    for b in &bases {
        for j in (0..=deg).rev() {
            let mut c = vec![0u64; n + 1];
            c[j..].copy_from_slice(&b[..n + 1 - j]);
            cols.push(c);
        }
    }
    let ker = kernel(&cols, p);
    let Some(v) = ker.min_leading() else {
        return Ok(None);
    };
    let poly = |blk: usize| -> PolyMod {
        let mut c = vec![0u64; deg + 1];
        for j in 0..=deg {
            c[deg - j] = v[blk * (deg + 1) + j];
        }
        c
    };
    let terms: Vec<(u32, PolyMod)> = (0..=i_max).map(|i| (i, poly((i_max - i) as usize))).collect();
    let Ok(rel) = FrobeniusRelation::new(p, terms, poly(i_max as usize + 1)) else {
        return Ok(None);
    };
    if !rel.holds(s)? {
        return Ok(None);
    }
    Ok(Some(rel.normalized()))
}
