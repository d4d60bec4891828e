//! Polynomial relations P(w, S) ≡ 0 over Z/m.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::kernel::kernel;
use crate::arith::zmod::{self, mul_mod};
use crate::error::{invalid, Error, Result};
use crate::modular::series::mul_trunc;
use crate::modular::ModSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub a: usize,
    pub b: usize,
    pub c: u64,
}

/// sum c_ab w^a S^b over Z/m; terms sorted by (b, a) with nonzero residues.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BivariateRelation {
    pub modulus: u64,
    #[serde(default = "default_var")]
    pub var: String,
    #[serde(default = "default_unknown")]
    pub unknown: String,
    #[serde(rename = "degW")]
    pub deg_w: usize,
    #[serde(rename = "degS")]
    pub deg_s: usize,
    pub terms: Vec<Term>,
}

fn default_var() -> String {
    "w".into()
}

fn default_unknown() -> String {
    "S".into()
}

impl BivariateRelation {
    pub fn new(modulus: u64, terms: impl IntoIterator<Item = (usize, usize, u64)>) -> Result<Self> {
        if modulus < 2 {
            return invalid("modulus must be at least 2");
        }
        let mut t: Vec<Term> = terms
            .into_iter()
            .map(|(a, b, c)| Term { a, b, c: c % modulus })
            .filter(|t| t.c != 0)
            .collect();
        t.sort_by_key(|t| (t.b, t.a));
        for w in t.windows(2) {
            if (w[0].a, w[0].b) == (w[1].a, w[1].b) {
                return invalid(format!("duplicate term w^{} S^{}", w[0].a, w[0].b));
            }
        }
        if !t.iter().any(|t| t.b >= 1) {
            return invalid("a relation needs a term with a positive power of S");
        }
        let deg_w = t.iter().map(|t| t.a).max().unwrap();
        let deg_s = t.iter().map(|t| t.b).max().unwrap();
        Ok(BivariateRelation { modulus, var: default_var(), unknown: default_unknown(), deg_w, deg_s, terms: t })
    }

    pub fn from_i64s(modulus: u64, terms: &[(usize, usize, i64)]) -> Result<Self> {
        Self::new(modulus, terms.iter().map(|&(a, b, c)| (a, b, zmod::from_i64(c, modulus))))
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let r: BivariateRelation = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = Self::new(r.modulus, r.terms.iter().map(|t| (t.a, t.b, t.c)))?;
        out.var = r.var;
        out.unknown = r.unknown;
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }

    /// Coefficient polynomial of S^b.
    pub fn coefficient(&self, b: usize) -> Vec<u64> {
        let mut p = vec![0u64; self.deg_w + 1];
        for t in self.terms.iter().filter(|t| t.b == b) {
            p[t.a] = t.c;
        }
        p
    }

    /// Scaled so the coefficient of the highest monomial (b desc, a desc) is 1;
    /// None when that coefficient is not a unit.
    pub fn normalized(&self) -> Option<Self> {
        let top = self.terms.last()?;
        let inv = zmod::inv_mod(top.c, self.modulus)?;
        let mut r = self.clone();
        for t in r.terms.iter_mut() {
            t.c = mul_mod(t.c, inv, self.modulus);
        }
        Some(r)
    }

    pub fn eq_up_to_scalar(&self, o: &Self) -> bool {
        self.modulus == o.modulus && self.normalized().is_some() && self.normalized().map(|r| r.terms) == o.normalized().map(|r| r.terms)
    }

    /// P(w, s(w)) by Horner in S.
    pub fn evaluate(&self, s: &ModSeries) -> Result<ModSeries> {
        if s.modulus() != self.modulus {
            return Err(Error::DomainMismatch(format!(
                "relation mod {} against a series mod {}",
                self.modulus,
                s.modulus()
            )));
        }
        let m = self.modulus;
        let n = s.order();
        let mut acc = vec![0u64; n + 1];
        for b in (0..=self.deg_s).rev() {
            if b < self.deg_s {
                acc = mul_trunc(&acc, s.coeffs(), n, m);
            }
            for t in self.terms.iter().filter(|t| t.b == b && t.a <= n) {
                acc[t.a] = (acc[t.a] + t.c) % m;
            }
        }
        ModSeries::new(s.var(), m, acc)
    }
}

/// True iff the relation annihilates s through its full order.
pub fn verify_relation(rel: &BivariateRelation, s: &ModSeries) -> Result<bool> {
    Ok(rel.evaluate(s)?.is_zero())
}

#[derive(Debug, Clone)]
pub struct RelationGuess {
    pub relation: BivariateRelation,
    pub nullity: usize,
    pub rows: usize,
}

fn check_guess_modulus(m: u64) -> Result<()> {
    if zmod::is_prime(m) || zmod::prime_power(m).is_some() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("relation guessing mod {m}: composite non-prime-power modulus")))
    }
}

/// Columns for unknowns w^a S^b, b from degS down, a from degW down, over `rows` equations.
fn columns(powers: &[Vec<u64>], deg_s: usize, deg_w: usize, rows: usize) -> Vec<Vec<u64>> {
    let mut cols = Vec::with_capacity((deg_s + 1) * (deg_w + 1));
    for b in (0..=deg_s).rev() {
        for a in (0..=deg_w).rev() {
            let mut c = vec![0u64; rows];
            for k in a..rows {
                c[k] = powers[b][k - a];
            }
            cols.push(c);
        }
    }
    cols
}

fn powers_of(s: &ModSeries, deg_s: usize) -> Vec<Vec<u64>> {
    let n = s.order();
    let m = s.modulus();
    let mut pw = vec![ModSeries::constant(s.var(), m, 1, n).coeffs().to_vec()];
    for b in 1..=deg_s {
        let next = mul_trunc(&pw[b - 1], s.coeffs(), n, m);
        pw.push(next);
    }
    pw
}

fn relation_from(v: &[u64], m: u64, deg_s: usize, deg_w: usize) -> Result<BivariateRelation> {
    BivariateRelation::new(
        m,
        v.iter().enumerate().map(|(idx, &c)| (deg_w - idx % (deg_w + 1), deg_s - idx / (deg_w + 1), c)),
    )
}

fn guess_with_powers(
    s: &ModSeries,
    powers: &[Vec<u64>],
    deg_s: usize,
    deg_w: usize,
    guard: usize,
) -> Result<Option<RelationGuess>> {
    let m = s.modulus();
    let unknowns = (deg_s + 1) * (deg_w + 1);
    let all = s.order() + 1;
    // fit on unknowns + guard rows first, fall back to every row
    let mut tries = vec![(unknowns + guard).min(all)];
    if tries[0] < all {
        tries.push(all);
    }
    for rows in tries {
        let ker = kernel(&columns(powers, deg_s, deg_w, rows), m);
        let Some(v) = ker.min_leading() else {
            return Ok(None);
        };
        let Ok(rel) = relation_from(&v, m, deg_s, deg_w) else {
            continue;
        };
        if verify_relation(&rel, s)? {
            return Ok(Some(RelationGuess { relation: rel, nullity: ker.dimension(), rows }));
        }
    }
    Ok(None)
}

/// P with deg_S <= degS, deg_w <= degW and P(w, s) ≡ 0 on every coefficient.
pub fn guess_relation(s: &ModSeries, deg_s: usize, deg_w: usize, guard: usize) -> Result<Option<RelationGuess>> {
    check_guess_modulus(s.modulus())?;
    if deg_s == 0 {
        return invalid("degS must be at least 1");
    }
    let unknowns = (deg_s + 1) * (deg_w + 1);
    if unknowns + guard > s.order() + 1 {
        return Err(Error::TooShort { needed: unknowns + guard, have: s.order() + 1 });
    }
    let powers = powers_of(s, deg_s);
    guess_with_powers(s, &powers, deg_s, deg_w, guard)
}

/// The first relation in the schedule "(degS+1)(degW+1) ascending, degS
/// ascending", with at most `max_unknowns` unknowns.
///
/// Over a prime field every relation is a multiple of the minimal polynomial
/// M, so the schedule's first hit is M at (deg_S M, deg_w M). One elimination
/// per degS at the widest degW then finds M as the lowest-leading kernel element.
pub fn search_relation(s: &ModSeries, max_unknowns: usize, guard: usize) -> Result<Option<RelationGuess>> {
    let m = s.modulus();
    check_guess_modulus(m)?;
    let room = (s.order() + 1).saturating_sub(guard).min(max_unknowns);
    let max_s = room / 2;
    let powers = powers_of(s, max_s.max(1));
    if zmod::is_prime(m) {
        for deg_s in 1..=max_s {
            let width = room / (deg_s + 1);
            if width == 0 {
                break;
            }
            if let Some(g) = guess_with_powers(s, &powers, deg_s, width - 1, guard)? {
                let r = &g.relation;
                // re-fit at the exact budget so the reported nullity matches it
                return Ok(guess_with_powers(s, &powers, r.deg_s, r.deg_w, guard)?.or(Some(g)));
            }
        }
        return Ok(None);
    }
    let mut budgets: Vec<(usize, usize)> = (1..=max_s)
        .flat_map(|ds| (0..room / (ds + 1)).map(move |dw| (ds, dw)))
        .collect();
    budgets.sort_by_key(|&(ds, dw)| ((ds + 1) * (dw + 1), ds));
    for (ds, dw) in budgets {
        if let Some(g) = guess_with_powers(s, &powers, ds, dw, guard)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}
