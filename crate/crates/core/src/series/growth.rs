//! Floating growth estimates and denominator diagnostics.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::truncated::{IntegerSeries, RationalSeries};
use crate::error::{invalid, Result};

/// Natural log of |v| for arbitrarily large integers.
pub fn ln_abs(v: &BigInt) -> f64 {
    let a = v.abs();
    let bits = a.bits();
    if bits <= 1000 {
        return a.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top: BigInt = &a >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// (lambda, radius) from the geometric mean ratio |s_b / s_a|^(1/(b-a)).
pub fn growth_estimate(s: &IntegerSeries, a: usize, b: usize) -> Result<(f64, f64)> {
    if !(a < b && b <= s.order()) {
        return invalid("window must satisfy a < b <= n");
    }
    if s.coeffs()[a..=b].iter().any(|c| c.is_zero()) {
        return invalid("zero coefficient inside the window");
    }
    let (sa, sb) = (s.coeff(a), s.coeff(b));
    let span = (b - a) as u32;
    let mut lambda = ((ln_abs(sb) - ln_abs(sa)) / span as f64).exp();
    // exact integer ratios are recognised so that lambda^k w^k gives lambda exactly
    let (q, r) = sb.abs().div_rem(&sa.abs());
    if r.is_zero() && !q.is_zero() {
        let root = q.nth_root(span);
        if num_traits::pow(root.clone(), span as usize) == q {
            if let Some(f) = root.to_f64() {
                lambda = f;
            }
        }
    }
    Ok((lambda, 1.0 / lambda))
}

/// Outcome of [`integrality_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralityReport {
    /// Some rescaling x -> c x with c <= bound clears every denominator.
    pub bounded_so_far: bool,
    /// Smallest such c.
    pub rescaling: Option<u64>,
    /// Primes (found by trial division) dividing some denominator.
    pub denominator_primes: BTreeSet<u64>,
    /// Part of some denominator left unfactored by trial division.
    pub unfactored: bool,
    /// First index not cleared by the best rescaling tried.
    pub first_nonintegral_index: Option<usize>,
}

/// Tries x -> c x for c = 1..=bound and reports denominator structure.
pub fn integrality_check(s: &RationalSeries, bound: u64) -> IntegralityReport {
    let mut primes = BTreeSet::new();
    let mut unfactored = false;
    for c in s.coeffs() {
        let (ps, rest) = small_prime_factors(c.denom(), 1 << 16);
        primes.extend(ps);
        unfactored |= !rest.is_one();
    }
    let mut best_fail: Option<usize> = Some(0);
    let mut rescaling = None;
    for c in 1..=bound.max(1) {
        let fail = first_uncleared(s, c);
        match fail {
            None => {
                rescaling = Some(c);
                best_fail = None;
                break;
            }
            Some(k) => {
                if best_fail.is_some_and(|b| k > b) {
                    best_fail = Some(k);
                }
            }
        }
    }
    IntegralityReport {
        bounded_so_far: rescaling.is_some(),
        rescaling,
        denominator_primes: primes,
        unfactored,
        first_nonintegral_index: best_fail,
    }
}

/// First k where den(a_k) does not divide c^k.
fn first_uncleared(s: &RationalSeries, c: u64) -> Option<usize> {
    let cb = BigInt::from(c);
    s.coeffs().iter().enumerate().find_map(|(k, a)| {
        let d = a.denom();
        (!d.is_one() && !cb.modpow(&BigInt::from(k), d).is_zero()).then_some(k)
    })
}

fn small_prime_factors(n: &BigInt, limit: u64) -> (Vec<u64>, BigInt) {
    let mut rest = n.abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= limit && !rest.is_one() {
        let bp = BigInt::from(p);
        if (&rest % &bp).is_zero() {
            out.push(p);
            while (&rest % &bp).is_zero() {
                rest /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (out, rest)
}
