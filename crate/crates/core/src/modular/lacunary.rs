//! Lacunary series and identities between them and reduced series.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::series::{reduce, ModSeries};
use crate::arith::kernel::kernel;
use crate::arith::zmod;
use crate::error::{invalid, Error, Result};
use crate::series::coeff::{parse_rational, rat_to_text};
use crate::series::IntegerSeries;

/// The three lacunary functions: sums of w^(2^i), w^(3^i), w^(2*3^i) for i >= 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LacunaryKind {
    L2,
    L3,
    L6,
}

impl LacunaryKind {
    pub fn exponents(self, n: usize) -> Vec<usize> {
        let (base, first) = match self {
            LacunaryKind::L2 => (2, 1),
            LacunaryKind::L3 => (3, 1),
            LacunaryKind::L6 => (3, 2),
        };
        let mut out = Vec::new();
        let mut e = first;
        while e <= n {
            out.push(e);
            e *= base;
        }
        out
    }

    pub fn name(self) -> &'static str {
        match self {
            LacunaryKind::L2 => "L2",
            LacunaryKind::L3 => "L3",
            LacunaryKind::L6 => "L6",
        }
    }
}

/// Truncation through degree n, reduced mod m.
pub fn lacunary_series(kind: LacunaryKind, m: u64, n: usize) -> ModSeries {
    let mut c = vec![0u64; n + 1];
    for e in kind.exponents(n) {
        c[e] = 1 % m;
    }
    ModSeries::new("w", m, c).expect("modulus checked by caller")
}

/// What a term multiplies: a bare polynomial, a lacunary function, or the subject series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "POLY")]
    Poly,
    L2,
    L3,
    L6,
    /// The exact series the identity is about.
    S,
}

impl Basis {
    fn lacunary(self) -> Option<LacunaryKind> {
        match self {
            Basis::L2 => Some(LacunaryKind::L2),
            Basis::L3 => Some(LacunaryKind::L3),
            Basis::L6 => Some(LacunaryKind::L6),
            _ => None,
        }
    }
}

/// coeff * poly(w) * basis^power.
#[derive(Debug, Clone, PartialEq)]
pub struct LacTerm {
    pub coeff: BigRational,
    pub basis: Basis,
    pub poly: Vec<i64>,
    pub power: u32,
}

/// w^prefactor_exp * sum of terms.
#[derive(Debug, Clone, PartialEq)]
pub struct LacunaryExpr {
    pub prefactor_exp: i64,
    pub terms: Vec<LacTerm>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    basis: Basis,
    #[serde(default)]
    poly: Vec<i64>,
    #[serde(default = "one_u32")]
    power: u32,
}

fn one_u32() -> u32 {
    1
}

#[derive(Serialize, Deserialize)]
struct ExprJson {
    prefactor_exp: i64,
    terms: Vec<TermJson>,
}

impl LacTerm {
    pub fn new(coeff: BigRational, basis: Basis, poly: Vec<i64>, power: u32) -> Self {
        LacTerm { coeff, basis, poly, power }
    }

    pub fn lac(c: i64, kind: Basis, power: u32) -> Self {
        Self::new(BigRational::from_integer(c.into()), kind, vec![1], power)
    }

    pub fn poly(poly: &[i64]) -> Self {
        Self::new(BigRational::one(), Basis::Poly, poly.to_vec(), 1)
    }
}

impl LacunaryExpr {
    pub fn new(prefactor_exp: i64, terms: Vec<LacTerm>) -> Result<Self> {
        for t in &terms {
            if t.power == 0 {
                return invalid("exponents must be at least 1");
            }
            let d = t.coeff.denom();
            if !(d & (d - BigInt::one())).is_zero() {
                return invalid(format!("denominator {d} is not a power of 2"));
            }
        }
        Ok(LacunaryExpr { prefactor_exp, terms })
    }

    pub fn uses_subject(&self) -> bool {
        self.terms.iter().any(|t| t.basis == Basis::S)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = ExprJson {
            prefactor_exp: self.prefactor_exp,
            terms: self
                .terms
                .iter()
                .map(|t| TermJson {
                    coeff: rat_to_text(&t.coeff),
                    basis: t.basis,
                    poly: t.poly.clone(),
                    power: t.power,
                })
                .collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: ExprJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let terms = j
            .terms
            .into_iter()
            .map(|t| {
                let poly = if t.poly.is_empty() { vec![1] } else { t.poly };
                Ok(LacTerm::new(parse_rational(&t.coeff)?, t.basis, poly, t.power))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(j.prefactor_exp, terms)
    }

    fn common_denominator(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::one(), |acc, t| acc.lcm(t.coeff.denom()))
    }

    /// Exact low coefficients (degrees < -prefactor) of the inner sum.
    fn inner_low(&self, subject: Option<&IntegerSeries>, upto: usize) -> Result<Vec<BigRational>> {
        let mut out = vec![BigRational::zero(); upto];
        if upto == 0 {
            return Ok(out);
        }
        let n = upto - 1;
        for t in &self.terms {
            let b = basis_exact(t.basis, subject, n)?;
            let bp = b.pow(t.power as u64);
            let p = IntegerSeries::exact_poly("w", &t.poly.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>(), n);
            let s = if t.basis == Basis::Poly { p } else { p.mul(&bp) };
            for (k, c) in s.coeffs().iter().enumerate() {
                out[k] += &t.coeff * BigRational::from_integer(c.clone());
            }
        }
        Ok(out)
    }

    /// Integer-valued evaluation reduced mod m, through degree `n` of the result.
    pub fn evaluate_mod(&self, subject: Option<&IntegerSeries>, m: u64, n: usize) -> Result<ModSeries> {
        let j = self.prefactor_exp;
        let inner_n = n as i64 - j;
        if inner_n < 0 {
            return invalid("requested order below the prefactor");
        }
        let inner_n = inner_n as usize;
        if j < 0 {
            let low = self.inner_low(subject, (-j) as usize)?;
            if let Some(k) = low.iter().position(|c| !c.is_zero()) {
                return invalid(format!("inner sum has a nonzero coefficient at degree {k} below the prefactor"));
            }
        }
        let d = self.common_denominator();
        let big_m = BigInt::from(m) * &d;
        let mm = big_m
            .to_u64()
            .filter(|&x| x < 1 << 62)
            .ok_or_else(|| Error::Unsupported("modulus times denominator too large".into()))?;
        let mut acc = ModSeries::constant("w", mm, 0, inner_n);
        for t in &self.terms {
            let scaled = &t.coeff * BigRational::from_integer(d.clone());
            debug_assert!(scaled.is_integer());
            let c = zmod::from_bigint(&scaled.to_integer(), mm);
            let poly: Vec<u64> = t.poly.iter().map(|&x| zmod::from_i64(x, mm)).collect();
            let p = ModSeries::from_poly("w", mm, &poly, inner_n);
            let term = if t.basis == Basis::Poly {
                p
            } else {
                let b = basis_mod(t.basis, subject, mm, inner_n)?;
                p.mul(&b.pow(t.power as u64))?
            };
            acc = acc.add(&term.scale(c))?;
        }
        let dd = d.to_u64().expect("small denominator");
        let mut out = Vec::with_capacity(acc.order() + 1);
        for (k, &v) in acc.coeffs().iter().enumerate() {
            if v % dd != 0 {
                return Err(Error::NonIntegral(k));
            }
            out.push((v / dd) % m);
        }
        let inner = ModSeries::new("w", m, out)?;
        if j >= 0 {
            Ok(inner.shift(j as usize).truncate(n))
        } else {
            let s = (-j) as usize;
            ModSeries::new("w", m, inner.coeffs()[s..].to_vec())
        }
    }
}

fn basis_exact(b: Basis, subject: Option<&IntegerSeries>, n: usize) -> Result<IntegerSeries> {
    match b {
        Basis::S => {
            let s = subject.ok_or_else(|| Error::InvalidInput("expression needs the subject series".into()))?;
            if s.order() < n {
                return Err(Error::TooShort { needed: n + 1, have: s.order() + 1 });
            }
            Ok(s.truncate(n))
        }
        Basis::Poly => Ok(IntegerSeries::constant("w", BigInt::one(), n)),
        other => {
            let k = other.lacunary().unwrap();
            let mut c = vec![BigInt::zero(); n + 1];
            for e in k.exponents(n) {
                c[e] = BigInt::one();
            }
            Ok(IntegerSeries::new("w", c))
        }
    }
}

fn basis_mod(b: Basis, subject: Option<&IntegerSeries>, m: u64, n: usize) -> Result<ModSeries> {
    match b {
        Basis::S => {
            let s = subject.ok_or_else(|| Error::InvalidInput("expression needs the subject series".into()))?;
            if s.order() < n {
                return Err(Error::TooShort { needed: n + 1, have: s.order() + 1 });
            }
            reduce(&s.truncate(n), m)
        }
        Basis::Poly => Ok(ModSeries::constant("w", m, 1, n)),
        other => Ok(lacunary_series(other.lacunary().unwrap(), m, n)),
    }
}

/// True iff expr == target coefficientwise to the common order.
/// A fractional evaluation is an error, not a `false`.
pub fn verify_lacunary_identity(
    expr: &LacunaryExpr,
    subject: Option<&IntegerSeries>,
    target: &ModSeries,
) -> Result<bool> {
    let mut n = target.order();
    if let Some(s) = subject.filter(|_| expr.uses_subject()) {
        let max = s.order() as i64 + expr.prefactor_exp;
        if max < 0 {
            return Err(Error::TooShort { needed: (-expr.prefactor_exp) as usize + 1, have: s.order() + 1 });
        }
        n = n.min(max as usize);
    }
    let v = expr.evaluate_mod(subject, target.modulus(), n)?;
    Ok(v.coeffs()[..=n] == target.coeffs()[..=n])
}

/// Basis functions allowed in a fitted identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Ansatz {
    /// Polynomial part w^0..w^d.
    pub max_poly_degree: usize,
    /// (kind, power) pairs.
    pub lacunary: Vec<(LacunaryKind, u32)>,
    /// The identity reads target = w^prefactor_exp * (...).
    pub prefactor_exp: i64,
}

/// Fits target = w^j (sum b_i w^i + sum g L^e) over Z/m; the result is verified
/// on every available coefficient.
pub fn fit_lacunary(target: &ModSeries, ansatz: &Ansatz) -> Result<Option<LacunaryExpr>> {
    let m = target.modulus();
    let d = ansatz.max_poly_degree;
    let unknowns = 1 + ansatz.lacunary.len() + d + 1;
    let n = target.order();
    if n < 4 * d || n + 1 < 2 * unknowns {
        return invalid(format!("order {n} too small for an ansatz with {unknowns} unknowns"));
    }
    let j = ansatz.prefactor_exp;
    // inner = w^{-j} target, known through n - j
    let inner_n = n as i64 - j;
    if inner_n < 0 {
        return invalid("prefactor exceeds the series order");
    }
    let inner_n = inner_n as usize;
    let lhs = if j <= 0 {
        target.shift((-j) as usize)
    } else {
        let s = j as usize;
        if target.coeffs()[..s].iter().any(|&c| c != 0) {
            return Ok(None);
        }
        ModSeries::new("w", m, target.coeffs()[s..].to_vec())?
    };
    let lhs = lhs.truncate(inner_n);
    let mut cols: Vec<Vec<u64>> = vec![lhs.coeffs().to_vec()];
    for &(kind, e) in &ansatz.lacunary {
        cols.push(lacunary_series(kind, m, inner_n).pow(e as u64).coeffs().to_vec());
    }
    for i in 0..=d {
        let mut c = vec![0u64; inner_n + 1];
        if i <= inner_n {
            c[i] = 1 % m;
        }
        cols.push(c);
    }
    let k = kernel(&cols, m);
    let Some(v) = k.with_unit_at(0) else { return Ok(None) };
    let neg = |x: u64| BigRational::from_integer(BigInt::from(zmod::neg_mod(x, m)));
    let mut terms = Vec::new();
    for (idx, &(kind, e)) in ansatz.lacunary.iter().enumerate() {
        let c = v[1 + idx];
        if c != 0 {
            let basis = match kind {
                LacunaryKind::L2 => Basis::L2,
                LacunaryKind::L3 => Basis::L3,
                LacunaryKind::L6 => Basis::L6,
            };
            terms.push(LacTerm::new(neg(c), basis, vec![1], e));
        }
    }
    let poly: Vec<i64> = v[1 + ansatz.lacunary.len()..]
        .iter()
        .map(|&c| zmod::neg_mod(c, m) as i64)
        .collect();
    if poly.iter().any(|&c| c != 0) {
        let mut poly = poly;
        while poly.last() == Some(&0) {
            poly.pop();
        }
        terms.push(LacTerm::new(BigRational::one(), Basis::Poly, poly, 1));
    }
    let expr = LacunaryExpr::new(j, terms)?;
    if verify_lacunary_identity(&expr, None, target)? {
        Ok(Some(expr))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::coeff::rat;

    #[test]
    fn lacunary_prefixes() {
        assert_eq!(lacunary_series(LacunaryKind::L3, 3, 10).support().map(|x| x.0).collect::<Vec<_>>(), vec![1, 3, 9]);
        assert_eq!(lacunary_series(LacunaryKind::L2, 2, 1).coeffs(), &[0, 1]);
        assert_eq!(lacunary_series(LacunaryKind::L6, 9, 20).support().map(|x| x.0).collect::<Vec<_>>(), vec![2, 6, 18]);
    }

    #[test]
    fn lacunary_identity_trivial() {
        let e = LacunaryExpr::new(0, vec![LacTerm::lac(1, Basis::L3, 1)]).unwrap();
        let t = lacunary_series(LacunaryKind::L3, 3, 100);
        assert!(verify_lacunary_identity(&e, None, &t).unwrap());
    }

    #[test]
    fn algebraic_equation_mod_three() {
        // L3^3 - L3 + w = 0 mod 3
        let e = LacunaryExpr::new(
            0,
            vec![LacTerm::lac(1, Basis::L3, 3), LacTerm::lac(-1, Basis::L3, 1), LacTerm::poly(&[0, 1])],
        )
        .unwrap();
        let zero = ModSeries::constant("w", 3, 0, 500);
        assert!(verify_lacunary_identity(&e, None, &zero).unwrap());
    }

    #[test]
    fn half_integer_must_cancel() {
        let e = LacunaryExpr::new(0, vec![LacTerm::new(rat(1, 2), Basis::L3, vec![1], 1)]).unwrap();
        let t = ModSeries::constant("w", 3, 0, 20);
        assert_eq!(verify_lacunary_identity(&e, None, &t), Err(Error::NonIntegral(1)));
    }

    #[test]
    fn fit_recovers_single_term() {
        let t = lacunary_series(LacunaryKind::L2, 2, 400);
        let a = Ansatz { max_poly_degree: 2, lacunary: vec![(LacunaryKind::L2, 1)], prefactor_exp: 0 };
        let e = fit_lacunary(&t, &a).unwrap().unwrap();
        assert_eq!(e.terms, vec![LacTerm::lac(1, Basis::L2, 1)]);
    }

    #[test]
    fn json_roundtrip() {
        let e = LacunaryExpr::new(
            -1,
            vec![LacTerm::new(rat(3, 2), Basis::L3, vec![1], 2), LacTerm::poly(&[0, 2, 0, 1])],
        )
        .unwrap();
        assert_eq!(LacunaryExpr::from_json(&e.to_json()).unwrap(), e);
    }
}
