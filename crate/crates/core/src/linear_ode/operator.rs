//! Linear differential operators with polynomial coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::polymod::{self, PolyMod};
use crate::arith::ratpoly;
use crate::arith::zmod::{self, inv_mod, mul_mod};
use crate::error::{invalid, Error, Result};
use crate::modular::ModSeries;
use crate::series::coeff::{parse_rational, rat_to_text};
use crate::series::{IntegerSeries, RationalSeries, Series};

/// Whether coeffs[i] multiplies θ^i (θ = w d/dw) or D^i (D = d/dw).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Form {
    #[serde(rename = "theta")]
    Theta,
    #[serde(rename = "d")]
    D,
}

/// Stirling numbers of the second kind S(i, j) for i, j <= n.
fn stirling2(n: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); n + 1]; n + 1];
    s[0][0] = BigInt::one();
    for i in 1..=n {
        for j in 1..=i {
            s[i][j] = &s[i - 1][j - 1] + BigInt::from(j) * &s[i - 1][j];
        }
    }
    s
}

/// sum_i p_i(w) op^i over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModOperator {
    p: u64,
    form: Form,
    coeffs: Vec<PolyMod>,
}

impl ModOperator {
    pub fn new(p: u64, form: Form, coeffs: Vec<PolyMod>) -> Result<Self> {
        if !zmod::is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        let mut coeffs: Vec<PolyMod> = coeffs
            .into_iter()
            .map(|c| polymod::trimmed(c.into_iter().map(|x| x % p).collect()))
            .collect();
        while coeffs.last().is_some_and(|c| c.is_empty()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return invalid("zero operator");
        }
        Ok(ModOperator { p, form, coeffs })
    }

    pub fn from_i64s(p: u64, form: Form, coeffs: &[&[i64]]) -> Result<Self> {
        Self::new(
            p,
            form,
            coeffs
                .iter()
                .map(|c| c.iter().map(|&x| zmod::from_i64(x, p)).collect())
                .collect(),
        )
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[PolyMod] {
        &self.coeffs
    }

    /// Scaled so that the first nonzero coefficient in (i desc, j desc) order is 1.
    pub fn normalized(&self) -> Self {
        let top = self.coeffs.last().unwrap();
        let inv = inv_mod(*top.last().unwrap(), self.p).unwrap();
        ModOperator {
            p: self.p,
            form: self.form,
            coeffs: self.coeffs.iter().map(|c| polymod::scale(c, inv, self.p)).collect(),
        }
    }

    pub fn eq_up_to_scalar(&self, o: &Self) -> bool {
        self.p == o.p && self.form == o.form && self.normalized() == o.normalized()
    }

    /// The same operator in D-form, via θ^i = sum_j S(i,j) w^j D^j.
    pub fn to_d_form(&self) -> Self {
        if self.form == Form::D {
            return self.clone();
        }
        let p = self.p;
        let q = self.order();
        let st = stirling2(q);
        let mut out: Vec<PolyMod> = vec![Vec::new(); q + 1];
        for (i, pi) in self.coeffs.iter().enumerate() {
            for (j, stj) in st[i].iter().enumerate().take(i + 1) {
                let s = zmod::from_bigint(stj, p);
                if s == 0 || pi.is_empty() {
                    continue;
                }
                let mut term = vec![0u64; j];
                term.extend(polymod::scale(pi, s, p));
                out[j] = polymod::add(&out[j], &term, p);
            }
        }
        ModOperator::new(p, Form::D, out).expect("nonzero")
    }

    /// Apply to a series over Z/p. θ-form keeps the order; D-form loses what the
    /// highest derivative needs.
    pub fn apply(&self, s: &ModSeries) -> Result<ModSeries> {
        if s.modulus() != self.p {
            return Err(Error::DomainMismatch(format!(
                "operator over F_{} applied to a series mod {}",
                self.p,
                s.modulus()
            )));
        }
        let p = self.p;
        let n = s.order();
        match self.form {
            Form::Theta => {
                let mut out = vec![0u64; n + 1];
                let mut powk: Vec<u64> = vec![1 % p; n + 1];
                for (i, pi) in self.coeffs.iter().enumerate() {
                    if i > 0 {
                        for (k, x) in powk.iter_mut().enumerate() {
                            *x = mul_mod(*x, k as u64 % p, p);
                        }
                    }
                    let ts: Vec<u64> = (0..=n).map(|k| mul_mod(powk[k], s.coeff(k), p)).collect();
                    for (j, &c) in pi.iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        for k in j..=n {
                            out[k] = (out[k] + mul_mod(c, ts[k - j], p)) % p;
                        }
                    }
                }
                ModSeries::new(s.var(), p, out)
            }
            Form::D => {
                let q = self.order();
                if n < q {
                    return Err(Error::TooShort { needed: q + 1, have: n + 1 });
                }
                let out_n = n - q;
                let mut out = vec![0u64; out_n + 1];
                let mut d = s.coeffs().to_vec();
                for (i, pi) in self.coeffs.iter().enumerate() {
                    if i > 0 {
                        d = d.iter().enumerate().skip(1).map(|(k, &c)| mul_mod(c, k as u64 % p, p)).collect();
                    }
                    for (j, &c) in pi.iter().enumerate() {
                        for k in j..=out_n {
                            out[k] = (out[k] + mul_mod(c, d[k - j], p)) % p;
                        }
                    }
                }
                ModSeries::new(s.var(), p, out)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "domain": "modp",
            "p": self.p,
            "form": self.form,
            "coeffs": self.coeffs,
        })
    }
}

/// sum_i p_i(w) op^i over the rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct RatOperator {
    form: Form,
    coeffs: Vec<Vec<BigRational>>,
}

fn binom(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

impl RatOperator {
    pub fn new(form: Form, coeffs: Vec<Vec<BigRational>>) -> Result<Self> {
        let mut coeffs: Vec<Vec<BigRational>> = coeffs.into_iter().map(ratpoly::trim).collect();
        while coeffs.last().is_some_and(|c| c.is_empty()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return invalid("zero operator");
        }
        Ok(RatOperator { form, coeffs })
    }

    pub fn from_i64s(form: Form, coeffs: &[&[i64]]) -> Result<Self> {
        Self::new(
            form,
            coeffs
                .iter()
                .map(|c| c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[Vec<BigRational>] {
        &self.coeffs
    }

    pub fn leading(&self) -> &[BigRational] {
        self.coeffs.last().unwrap()
    }

    /// Leading coefficient of the top polynomial scaled to 1.
    pub fn normalized(&self) -> Self {
        let c = self.leading().last().unwrap().clone();
        RatOperator {
            form: self.form,
            coeffs: self.coeffs.iter().map(|p| p.iter().map(|x| x / &c).collect()).collect(),
        }
    }

    pub fn to_d_form(&self) -> Self {
        if self.form == Form::D {
            return self.clone();
        }
        let q = self.order();
        let st = stirling2(q);
        let mut out: Vec<Vec<BigRational>> = vec![Vec::new(); q + 1];
        for (i, pi) in self.coeffs.iter().enumerate() {
            for (j, s) in st[i].iter().enumerate().take(i + 1) {
                if s.is_zero() || pi.is_empty() {
                    continue;
                }
                let mut term = vec![BigRational::zero(); j];
                term.extend(pi.iter().map(|x| x * BigRational::from_integer(s.clone())));
                out[j] = ratpoly::add(&out[j], &term);
            }
        }
        RatOperator::new(Form::D, out).expect("nonzero")
    }

    /// self ∘ other for D-form operators.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.form != Form::D || other.form != Form::D {
            return invalid("composition is implemented for D-form operators");
        }
        let mut out: Vec<Vec<BigRational>> = vec![Vec::new(); self.order() + other.order() + 1];
        for (i, mi) in self.coeffs.iter().enumerate() {
            for (j, lj) in other.coeffs.iter().enumerate() {
                let mut der = lj.clone();
                for t in 0..=i {
                    if t > 0 {
                        der = ratpoly::deriv(&der);
                    }
                    if der.is_empty() {
                        break;
                    }
                    let c = BigRational::from_integer(binom(i, t));
                    let term: Vec<BigRational> = ratpoly::mul(mi, &der).into_iter().map(|x| x * &c).collect();
                    let k = i - t + j;
                    out[k] = ratpoly::add(&out[k], &term);
                }
            }
        }
        RatOperator::new(Form::D, out)
    }

    /// Apply to a rational series.
    pub fn apply(&self, s: &RationalSeries) -> Result<RationalSeries> {
        let n = s.order();
        match self.form {
            Form::Theta => {
                let mut out = vec![BigRational::zero(); n + 1];
                let mut t = s.clone();
                for (i, pi) in self.coeffs.iter().enumerate() {
                    if i > 0 {
                        t = t.theta();
                    }
                    for (j, c) in pi.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        for k in j..=n {
                            out[k] += c * t.coeff(k - j);
                        }
                    }
                }
                Ok(Series::new(s.var(), out))
            }
            Form::D => {
                let q = self.order();
                if n < q {
                    return Err(Error::TooShort { needed: q + 1, have: n + 1 });
                }
                let out_n = n - q;
                let mut out = vec![BigRational::zero(); out_n + 1];
                let mut d = s.clone();
                for (i, pi) in self.coeffs.iter().enumerate() {
                    if i > 0 {
                        d = d.derivative()?;
                    }
                    for (j, c) in pi.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        for k in j..=out_n {
                            out[k] += c * d.coeff(k - j);
                        }
                    }
                }
                Ok(Series::new(s.var(), out))
            }
        }
    }

    pub fn apply_integer(&self, s: &IntegerSeries) -> Result<RationalSeries> {
        self.apply(&s.to_rational())
    }

    /// The operator over F_p, when every denominator is a unit.
    pub fn reduce(&self, p: u64) -> Result<ModOperator> {
        let c = self
            .coeffs
            .iter()
            .map(|poly| {
                poly.iter()
                    .map(|x| crate::modular::series::rational_residue(x, p).ok_or(Error::NotInvertible { modulus: p, index: 0 }))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ModOperator::new(p, self.form, c)
    }

    /// Power-series solution from the coefficient recurrence. Indices whose
    /// recurrence coefficient vanishes are free and taken from `seeds`
    /// (default 0); the equation there must still hold.
    pub fn series_solution(&self, seeds: &[(usize, BigRational)], n: usize) -> Result<RationalSeries> {
        let op = self.to_d_form();
        // monomials c * w^j D^i contribute c * falling(k, i) y_k to degree k - i + j
        let mut mons: Vec<(usize, usize, BigRational)> = Vec::new();
        for (i, pi) in op.coeffs.iter().enumerate() {
            for (j, c) in pi.iter().enumerate() {
                if !c.is_zero() {
                    mons.push((i, j, c.clone()));
                }
            }
        }
        let delta = mons.iter().map(|(i, j, _)| *i as i64 - *j as i64).max().unwrap();
        let falling = |k: i64, i: usize| -> BigInt {
            (0..i as i64).fold(BigInt::one(), |a, t| a * BigInt::from(k - t))
        };
        let mut y = vec![BigRational::zero(); n + 1];
        for kk in 0..=n {
            let target = kk as i64;
            let eq = target - delta;
            let mut lead = BigRational::zero();
            let mut rest = BigRational::zero();
            if eq >= 0 {
                for (i, j, c) in &mons {
                    let k = eq - *j as i64 + *i as i64;
                    if k < 0 {
                        continue;
                    }
                    let f = BigRational::from_integer(falling(k, *i));
                    if k == target {
                        lead += c * f;
                    } else {
                        rest += c * f * &y[k as usize];
                    }
                }
            }
            if lead.is_zero() {
                let seed = seeds.iter().find(|(i, _)| *i == kk).map(|(_, v)| v.clone());
                y[kk] = seed.unwrap_or_else(BigRational::zero);
                if eq >= 0 && !rest.is_zero() {
                    return Err(Error::InvalidInput(format!(
                        "no power-series solution: equation at degree {eq} is inconsistent"
                    )));
                }
            } else {
                if seeds.iter().any(|(i, v)| *i == kk && *v != -&rest / &lead) {
                    return Err(Error::InvalidInput(format!("seed at index {kk} contradicts the recurrence")));
                }
                y[kk] = -rest / lead;
            }
        }
        Ok(Series::new("x", y))
    }

    pub fn to_json(&self) -> Value {
        let c: Vec<Vec<String>> = self.coeffs.iter().map(|p| p.iter().map(rat_to_text).collect()).collect();
        json!({ "domain": "rational", "form": self.form, "coeffs": c })
    }
}

/// Either kind of operator, as read from or written to JSON.
#[derive(Debug, Clone, PartialEq)]
pub enum LinearDiffOperator {
    ModP(ModOperator),
    Rational(RatOperator),
}

impl LinearDiffOperator {
    pub fn to_json(&self) -> Value {
        match self {
            LinearDiffOperator::ModP(o) => o.to_json(),
            LinearDiffOperator::Rational(o) => o.to_json(),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(m.to_string());
        let form: Form = match v.get("form") {
            None => Form::Theta,
            Some(f) => serde_json::from_value(f.clone()).map_err(|e| Error::Parse(e.to_string()))?,
        };
        let coeffs = v.get("coeffs").and_then(Value::as_array).ok_or_else(|| bad("missing coeffs"))?;
        let parse = |x: &Value| -> Result<BigRational> {
            match x {
                Value::Number(n) => parse_rational(&n.to_string()),
                Value::String(s) => parse_rational(s),
                _ => Err(bad("coefficient must be a number or string")),
            }
        };
        let rows = coeffs
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| bad("coeff rows must be arrays"))?
                    .iter()
                    .map(parse)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        match v.get("domain").and_then(Value::as_str) {
            Some("modp") => {
                let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| bad("modp operator needs p"))?;
                let rows = rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|x| crate::modular::series::rational_residue(x, p).ok_or_else(|| bad("denominator not invertible")))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(LinearDiffOperator::ModP(ModOperator::new(p, form, rows)?))
            }
            Some("rational") => Ok(LinearDiffOperator::Rational(RatOperator::new(form, rows)?)),
            _ => Err(bad("domain must be modp or rational")),
        }
    }
}
