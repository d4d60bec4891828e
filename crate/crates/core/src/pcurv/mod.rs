//! p-curvature of linear differential operators over F_p(w).

mod ratfun;

use serde::Serialize;
use serde_json::{json, Value};

pub use ratfun::RatFun;

use crate::arith::polymod::{self, PolyMod};
use crate::error::{invalid, Result};
use crate::linear_ode::ModOperator;

/// r×r matrix of reduced rational functions over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunctionMatrix {
    pub p: u64,
    pub entries: Vec<Vec<RatFun>>,
}

impl RationalFunctionMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(RatFun::is_zero)
    }

    pub fn max_entry_degree(&self) -> usize {
        self.entries.iter().flatten().filter(|e| !e.is_zero()).map(RatFun::degree).max().unwrap_or(0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.p;
        let r = self.size();
        let entries = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        (0..r).fold(RatFun::zero(), |acc, k| {
                            let a = &self.entries[i][k];
                            let b = &o.entries[k][j];
                            if a.is_zero() || b.is_zero() {
                                acc
                            } else {
                                acc.add(&a.mul(b, p), p)
                            }
                        })
                    })
                    .collect()
            })
            .collect();
        RationalFunctionMatrix { p, entries }
    }

    fn deriv_plus_mul(&self, a: &Self) -> Self {
        let p = self.p;
        let prod = self.mul(a);
        let entries = self
            .entries
            .iter()
            .zip(prod.entries)
            .map(|(row, prow)| row.iter().zip(prow).map(|(x, y)| x.deriv(p).add(&y, p)).collect())
            .collect();
        RationalFunctionMatrix { p, entries }
    }
}

/// D-form coefficients c_0..c_r with c_r not identically zero.
fn d_coefficients(op: &ModOperator) -> Result<Vec<PolyMod>> {
    if op.order() == 0 {
        return invalid("p-curvature needs an operator of order at least 1");
    }
    Ok(op.to_d_form().coeffs().to_vec())
}

/// Companion matrix of y' = A y for the vector (f, f', ..., f^(r-1)).
fn companion(c: &[PolyMod], p: u64) -> RationalFunctionMatrix {
    let r = c.len() - 1;
    let mut entries = vec![vec![RatFun::zero(); r]; r];
    for i in 0..r - 1 {
        entries[i][i + 1] = RatFun::from_poly(vec![1]);
    }
    for j in 0..r {
        entries[r - 1][j] = RatFun::new(polymod::scale(&c[j], p - 1, p), c[r].clone(), p);
    }
    RationalFunctionMatrix { p, entries }
}

/// Λ_p from Λ_1 = A, Λ_{k+1} = Λ_k' + Λ_k A, entries reduced after every step.
pub fn p_curvature(op: &ModOperator) -> Result<RationalFunctionMatrix> {
    let p = op.p();
    let c = d_coefficients(op)?;
    let a = companion(&c, p);
    let mut lam = a.clone();
    for _ in 1..p {
        lam = lam.deriv_plus_mul(&a);
    }
    Ok(lam)
}

/// The same iteration on polynomial matrices: Λ_k = M_k / c_r^k with
/// M_{k+1} = c_r M_k' - k c_r' M_k + M_k N, A = N / c_r. Reduced only at the end.
pub fn p_curvature_common_denominator(op: &ModOperator) -> Result<RationalFunctionMatrix> {
    let p = op.p();
    let c = d_coefficients(op)?;
    let r = c.len() - 1;
    let cr = c[r].clone();
    let dcr = polymod::deriv(&cr, p);
    let mut n = vec![vec![PolyMod::new(); r]; r];
    for i in 0..r - 1 {
        n[i][i + 1] = cr.clone();
    }
    for j in 0..r {
        n[r - 1][j] = polymod::scale(&c[j], p - 1, p);
    }
    let mut m = n.clone();
    for k in 1..p {
        let mut next = vec![vec![PolyMod::new(); r]; r];
        for i in 0..r {
            for j in 0..r {
                let mut e = polymod::mul(&polymod::deriv(&m[i][j], p), &cr, p);
                let kk = k % p;
                if kk != 0 {
                    e = polymod::sub(&e, &polymod::scale(&polymod::mul(&dcr, &m[i][j], p), kk, p), p);
                }
                for (l, nl) in n.iter().enumerate() {
                    if !m[i][l].is_empty() && !nl[j].is_empty() {
                        e = polymod::add(&e, &polymod::mul(&m[i][l], &nl[j], p), p);
                    }
                }
                next[i][j] = e;
            }
        }
        m = next;
    }
    let mut den = vec![1u64];
    for _ in 0..p {
        den = polymod::mul(&den, &cr, p);
    }
    let entries = m
        .into_iter()
        .map(|row| row.into_iter().map(|e| RatFun::new(e, den.clone(), p)).collect())
        .collect();
    Ok(RationalFunctionMatrix { p, entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Classification {
    Zero,
    Nilpotent,
    Other,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Zero => "ZERO",
            Classification::Nilpotent => "NILPOTENT",
            Classification::Other => "OTHER",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CurvatureReport {
    pub classification: Classification,
    pub max_entry_degree: usize,
    pub matrix: RationalFunctionMatrix,
}

impl CurvatureReport {
    pub fn to_json(&self) -> Value {
        json!({
            "classification": self.classification.as_str(),
            "max_entry_degree": self.max_entry_degree,
            "p": self.matrix.p,
            "size": self.matrix.size(),
        })
    }
}

pub fn classify_p_curvature(op: &ModOperator) -> Result<CurvatureReport> {
    let lam = p_curvature(op)?;
    let classification = if lam.is_zero() {
        Classification::Zero
    } else {
        let mut pw = lam.clone();
        for _ in 1..lam.size() {
            pw = pw.mul(&lam);
        }
        if pw.is_zero() {
            Classification::Nilpotent
        } else {
            Classification::Other
        }
    };
    Ok(CurvatureReport { classification, max_entry_degree: lam.max_entry_degree(), matrix: lam })
}
