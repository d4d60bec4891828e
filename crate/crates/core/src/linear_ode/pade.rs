//! Exact Hermite–Padé fits of θ-form operators over Q, and the modular
//! order-basis test used to reject small operator budgets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::operator::{Form, RatOperator};
use crate::arith::dense::{independent_rows, last_dependent_column};
use crate::arith::dixon;
use crate::arith::zmod::{from_bigint, inv_mod, mul_mod, primes_below, sub_mod};
use crate::error::{invalid, Result};
use crate::series::IntegerSeries;

/// An exact fit and the rows it was checked on.
#[derive(Debug, Clone)]
pub struct PadeFit {
    pub operator: RatOperator,
    pub rows: usize,
    /// nullity of the modular system that located the fit
    pub nullity_mod_p: usize,
}

/// Column of unknown w^j θ^i over the equations for degrees 0..rows.
fn big_column(s: &IntegerSeries, i: usize, j: usize, rows: usize) -> Vec<BigInt> {
    (0..rows)
        .map(|k| {
            if k < j {
                BigInt::zero()
            } else {
                BigInt::from(k - j).pow(i as u32) * s.coeff(k - j)
            }
        })
        .collect()
}

fn columns(s: &IntegerSeries, q: usize, d: usize, rows: usize) -> Vec<Vec<BigInt>> {
    let mut cols = Vec::with_capacity((q + 1) * (d + 1));
    for i in (0..=q).rev() {
        for j in (0..=d).rev() {
            cols.push(big_column(s, i, j, rows));
        }
    }
    cols
}

fn residual_vanishes(cols: &[Vec<BigInt>], v: &[BigInt], rows: std::ops::Range<usize>) -> bool {
    rows.into_iter().all(|k| {
        let mut acc = BigInt::zero();
        for (c, x) in cols.iter().zip(v) {
            if !x.is_zero() && !c[k].is_zero() {
                acc += x * &c[k];
            }
        }
        acc.is_zero()
    })
}

fn operator_from(v: &[BigInt], q: usize, d: usize) -> Result<RatOperator> {
    let mut coeffs = vec![vec![BigRational::zero(); d + 1]; q + 1];
    for (idx, x) in v.iter().enumerate() {
        coeffs[q - idx / (d + 1)][d - idx % (d + 1)] = BigRational::from_integer(x.clone());
    }
    RatOperator::new(Form::Theta, coeffs)
}

/// The operator of lowest leading monomial (order, then degree) killing the
/// first `n_use` coefficients of s exactly, with coprime integer coefficients.
pub fn hermite_pade_ode(s: &IntegerSeries, q: usize, d: usize, n_use: usize) -> Result<Option<PadeFit>> {
    let unknowns = (q + 1) * (d + 1);
    if n_use > s.order() + 1 {
        return invalid(format!("n_use = {n_use} exceeds the {} available coefficients", s.order() + 1));
    }
    if n_use == 0 {
        return invalid("n_use must be positive");
    }
    let cols = columns(s, q, d, n_use);
    fit_columns(&cols, unknowns, n_use).map(|o| {
        o.map(|(v, nullity)| PadeFit { operator: operator_from(&v, q, d).unwrap(), rows: n_use, nullity_mod_p: nullity })
    })
}

fn fit_columns(cols: &[Vec<BigInt>], unknowns: usize, rows: usize) -> Result<Option<(Vec<BigInt>, usize)>> {
    for p in primes_below(1 << 62).take(3) {
        let cm: Vec<Vec<u64>> = cols.iter().map(|c| c.iter().map(|x| from_bigint(x, p)).collect()).collect();
        let Some(l) = last_dependent_column(&cm, p) else {
            // independent mod p implies independent over Q
            return Ok(None);
        };
        let rank = {
            let mut b = crate::arith::dense::EchelonBasis::new(p);
            cm.iter().filter(|c| b.insert(c)).count()
        };
        let rest = l + 1..unknowns;
        let width = rest.len();
        let row_vecs: Vec<Vec<u64>> = (0..rows).map(|k| rest.clone().map(|u| cm[u][k]).collect()).collect();
        let pick = independent_rows(&row_vecs, p, width);
        if pick.len() < width {
            continue;
        }
        let a: Vec<Vec<BigInt>> = pick.iter().map(|&k| rest.clone().map(|u| cols[u][k].clone()).collect()).collect();
        let b: Vec<BigInt> = pick.iter().map(|&k| -cols[l][k].clone()).collect();
        let Some((nums, den)) = dixon::solve(&a, &b) else { continue };
        let mut v = vec![BigInt::zero(); unknowns];
        v[l] = den;
        for (u, x) in rest.clone().zip(nums) {
            v[u] = x;
        }
        let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if v[l].is_negative() {
            v.iter_mut().for_each(|x| *x = -&*x);
        }
        let v: Vec<BigInt> = v.into_iter().map(|x| x / &g).collect();
        if residual_vanishes(cols, &v, 0..rows) {
            return Ok(Some((v, unknowns - rank)));
        }
    }
    Ok(None)
}

/// Square version used for singularity analysis: exactly as many informative
/// equations as unknowns minus one, so the kernel is generically a line.
pub fn diff_pade(s: &IntegerSeries, q: usize, d: usize) -> Result<Option<PadeFit>> {
    let val = s.valuation().unwrap_or(0);
    let n_use = (q + 1) * (d + 1) - 1 + val;
    if n_use > s.order() + 1 {
        return invalid(format!("diff-Padé at ({q},{d}) needs {n_use} coefficients"));
    }
    hermite_pade_ode(s, q, d, n_use)
}

/// Minimal degree D*(σ) of a nonzero (f_0..f_Q)-approximant of order σ over F_p,
/// for σ = 1..=sigma, from an incremental order basis. out[σ-1] = D*(σ).
pub fn min_degree_profile(f: &[Vec<u64>], sigma: usize, p: u64) -> Vec<usize> {
    let m = f.len();
    let mut res: Vec<Vec<u64>> = f.iter().map(|s| s[..sigma].to_vec()).collect();
    // polys[l][i]: coefficient of f_i in basis vector l
    let mut polys: Vec<Vec<Vec<u64>>> = (0..m)
        .map(|l| (0..m).map(|i| if i == l { vec![1] } else { Vec::new() }).collect())
        .collect();
    let mut defect = vec![0usize; m];
    let mut out = Vec::with_capacity(sigma);
    for k in 0..sigma {
        let piv = (0..m).filter(|&l| res[l][k] != 0).min_by_key(|&l| (defect[l], l));
        if let Some(pi) = piv {
            let inv = inv_mod(res[pi][k], p).unwrap();
            let (pres, ppol) = (res[pi].clone(), polys[pi].clone());
            for l in 0..m {
                let c = res[l][k];
                if l == pi || c == 0 {
                    continue;
                }
                let t = mul_mod(c, inv, p);
                for (x, &y) in res[l][k..].iter_mut().zip(&pres[k..]) {
                    *x = sub_mod(*x, mul_mod(t, y, p), p);
                }
                for (pl, pp) in polys[l].iter_mut().zip(&ppol) {
                    if pl.len() < pp.len() {
                        pl.resize(pp.len(), 0);
                    }
                    for (x, &y) in pl.iter_mut().zip(pp) {
                        *x = sub_mod(*x, mul_mod(t, y, p), p);
                    }
                }
            }
            res[pi].rotate_right(1);
            res[pi][0] = 0;
            for pp in polys[pi].iter_mut() {
                if !pp.is_empty() {
                    pp.insert(0, 0);
                }
            }
            defect[pi] += 1;
        }
        out.push(*defect.iter().min().unwrap());
    }
    out
}

/// Verdict for one (Q, D) budget.
#[derive(Debug, Clone, Serialize)]
pub struct BudgetVerdict {
    #[serde(rename = "Q")]
    pub q: usize,
    #[serde(rename = "D")]
    pub d: usize,
    pub fit_found: bool,
    /// first coefficient index no operator of this budget can annihilate
    pub first_failing_index: Option<usize>,
    /// "modular" when the failure is certified by the order basis mod p,
    /// "exact" when an exact fit was built and tested
    pub method: &'static str,
}

impl BudgetVerdict {
    pub fn passes(&self) -> bool {
        self.fit_found && self.first_failing_index.is_none()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HolonomyReport {
    pub n_use: usize,
    pub holdout: usize,
    pub prime: u64,
    pub budgets: Vec<BudgetVerdict>,
}

/// Fit each budget on the first n_use coefficients and test the holdout.
/// A budget whose minimal approximant degree mod p already exceeds D on the
/// fit window (or the holdout) is rejected without lifting: a rational operator
/// would reduce to one mod p. Remaining budgets get an exact fit and holdout check.
pub fn holonomy_rejection_test(
    s: &IntegerSeries,
    budgets: &[(usize, usize)],
    n_use: usize,
    holdout: usize,
) -> Result<HolonomyReport> {
    let total = n_use + holdout;
    if total > s.order() + 1 {
        return invalid(format!("need {total} coefficients, have {}", s.order() + 1));
    }
    let p = primes_below(1 << 62).next().unwrap();
    let max_q = budgets.iter().map(|b| b.0).max().unwrap_or(0);
    let base: Vec<u64> = s.coeffs()[..total].iter().map(|c| from_bigint(c, p)).collect();
    let mut thetas = vec![base.clone()];
    for i in 1..=max_q {
        let prev = &thetas[i - 1];
        thetas.push(prev.iter().enumerate().map(|(k, &c)| mul_mod(c, k as u64 % p, p)).collect());
    }
    let mut profiles: Vec<Option<Vec<usize>>> = vec![None; max_q + 1];
    let mut out = Vec::new();
    for &(q, d) in budgets {
        let prof = profiles[q].get_or_insert_with(|| min_degree_profile(&thetas[..=q], total, p));
        let first_bad = prof.iter().position(|&dd| dd > d);
        let verdict = match first_bad {
            Some(idx) => BudgetVerdict {
                q,
                d,
                fit_found: idx >= n_use,
                first_failing_index: Some(idx),
                method: "modular",
            },
            None => exact_verdict(s, q, d, n_use, total)?,
        };
        out.push(verdict);
    }
    Ok(HolonomyReport { n_use, holdout, prime: p, budgets: out })
}

fn exact_verdict(s: &IntegerSeries, q: usize, d: usize, n_use: usize, total: usize) -> Result<BudgetVerdict> {
    let fit = hermite_pade_ode(s, q, d, n_use)?;
    let Some(fit) = fit else {
        return Ok(BudgetVerdict { q, d, fit_found: false, first_failing_index: Some(0), method: "exact" });
    };
    let v: Vec<BigInt> = {
        let c = fit.operator.coeffs();
        let mut v = Vec::new();
        for i in (0..=q).rev() {
            for j in (0..=d).rev() {
                v.push(c.get(i).and_then(|p| p.get(j)).map_or(BigInt::zero(), |x| x.to_integer()));
            }
        }
        v
    };
    let cols = columns(s, q, d, total);
    let failing = (n_use..total).find(|&k| !residual_vanishes(&cols, &v, k..k + 1));
    Ok(BudgetVerdict { q, d, fit_found: true, first_failing_index: failing, method: "exact" })
}

/// All budgets with Q <= max_q and (Q+1)(D+1) <= max_unknowns.
pub fn rejection_grid(max_q: usize, max_unknowns: usize) -> Vec<(usize, usize)> {
    (0..=max_q)
        .flat_map(|q| (0..max_unknowns / (q + 1)).map(move |d| (q, d)))
        .collect()
}
