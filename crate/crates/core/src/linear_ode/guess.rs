//! Guessing annihilating operators of series over F_p.

use serde_json::{json, Value};

use super::operator::{Form, ModOperator};
use crate::arith::kernel::kernel;
use crate::arith::zmod::{self, mul_mod, pow_mod};
use crate::error::{invalid, Error, Result};
use crate::modular::ModSeries;

/// A guessed operator with the data needed to audit it.
#[derive(Debug, Clone)]
pub struct OdeGuess {
    pub operator: ModOperator,
    pub order: usize,
    pub degree: usize,
    pub nullity: usize,
    pub rows: usize,
}

impl OdeGuess {
    pub fn to_json(&self) -> Value {
        json!({
            "operator": self.operator.to_json(),
            "budget": {"Q": self.order, "D": self.degree},
            "nullity": self.nullity,
            "rows": self.rows,
        })
    }
}

/// Unknown (i, j) of w^j θ^i sits at index (Q - i)(D + 1) + (D - j).
fn columns(s: &ModSeries, q: usize, d: usize) -> Vec<Vec<u64>> {
    let p = s.modulus();
    let n = s.order();
    let mut cols = Vec::with_capacity((q + 1) * (d + 1));
    for i in (0..=q).rev() {
        for j in (0..=d).rev() {
            let mut c = vec![0u64; n + 1];
            for k in j..=n {
                let t = s.coeff(k - j);
                if t != 0 {
                    c[k] = mul_mod(pow_mod(((k - j) as u64) % p, i as u64, p), t, p);
                }
            }
            cols.push(c);
        }
    }
    cols
}

fn operator_from(v: &[u64], p: u64, q: usize, d: usize) -> Result<ModOperator> {
    let mut coeffs = vec![vec![0u64; d + 1]; q + 1];
    for (idx, &x) in v.iter().enumerate() {
        coeffs[q - idx / (d + 1)][d - idx % (d + 1)] = x;
    }
    ModOperator::new(p, Form::Theta, coeffs)
}

/// Operator sum a_ij w^j θ^i with i <= Q, j <= D killing every coefficient of s,
/// normalized so the leading monomial is 1. The nullspace element of lowest
/// leading monomial (smallest order, then degree) is kept.
pub fn guess_ode_modp(s: &ModSeries, q: usize, d: usize, guard: usize) -> Result<Option<OdeGuess>> {
    let p = s.modulus();
    if !zmod::is_prime(p) {
        return invalid(format!("operator guessing needs a prime modulus, got {p}"));
    }
    if s.is_zero() {
        return invalid(format!("series vanishes mod {p}; every operator annihilates it"));
    }
    let unknowns = (q + 1) * (d + 1);
    if unknowns + guard > s.order() + 1 {
        return Err(Error::TooShort { needed: unknowns + guard, have: s.order() + 1 });
    }
    let ker = kernel(&columns(s, q, d), p);
    let Some(v) = ker.min_leading() else {
        return Ok(None);
    };
    let op = operator_from(&v, p, q, d)?;
    if op.order() >= p as usize {
        return Ok(None);
    }
    if !op.apply(s)?.is_zero() {
        return Ok(None);
    }
    Ok(Some(OdeGuess {
        order: op.order(),
        degree: op.degree(),
        operator: op,
        nullity: ker.dimension(),
        rows: s.order() + 1,
    }))
}

/// Budgets (Q, D) ordered by unknown count, then by order.
pub fn budgets(max_order: usize, max_degree: usize, max_unknowns: usize) -> Vec<(usize, usize)> {
    let mut b: Vec<(usize, usize)> = (0..=max_order)
        .flat_map(|q| (0..=max_degree).map(move |d| (q, d)))
        .filter(|&(q, d)| (q + 1) * (d + 1) <= max_unknowns)
        .collect();
    b.sort_by_key(|&(q, d)| ((q + 1) * (d + 1), q));
    b
}

/// The first budget in the deterministic schedule that yields an operator.
pub fn search_ode(s: &ModSeries, max_order: usize, max_degree: usize, guard: usize) -> Result<Option<OdeGuess>> {
    let room = (s.order() + 1).saturating_sub(guard);
    for (q, d) in budgets(max_order, max_degree, room) {
        if let Some(g) = guess_ode_modp(s, q, d, guard)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_gives_theta() {
        let s = ModSeries::constant("w", 5, 1, 20);
        let g = guess_ode_modp(&s, 1, 0, 5).unwrap().unwrap();
        let want = ModOperator::from_i64s(5, Form::Theta, &[&[], &[1]]).unwrap();
        assert_eq!(g.operator, want);
    }

    #[test]
    fn geometric_series() {
        let s = ModSeries::new("w", 5, vec![1; 40]).unwrap();
        let g = guess_ode_modp(&s, 1, 1, 10).unwrap().unwrap();
        let want = ModOperator::from_i64s(5, Form::Theta, &[&[0, 4], &[1, 4]]).unwrap();
        assert!(g.operator.eq_up_to_scalar(&want), "{:?}", g.operator);
    }

    #[test]
    fn too_short_is_error() {
        let s = ModSeries::constant("w", 5, 1, 3);
        assert!(guess_ode_modp(&s, 2, 2, 0).is_err());
    }

    #[test]
    fn composite_rejected() {
        let s = ModSeries::constant("w", 6, 1, 30);
        assert!(guess_ode_modp(&s, 1, 0, 0).is_err());
    }

    #[test]
    fn schedule_order() {
        let b = budgets(2, 2, 100);
        assert_eq!(&b[..4], &[(0, 0), (0, 1), (1, 0), (0, 2)]);
    }
}
