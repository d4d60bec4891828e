//! Direct certificates on reduced series.

use super::series::ModSeries;
use crate::error::Result;

/// True iff s^e * den == num to the truncation order of s.
pub fn power_identity_check(s: &ModSeries, e: u64, num: &[u64], den: &[u64]) -> Result<bool> {
    let n = s.order();
    let m = s.modulus();
    let lhs = s.pow(e).mul(&ModSeries::from_poly(s.var(), m, den, n))?;
    let rhs = ModSeries::from_poly(s.var(), m, num, n);
    Ok(lhs == rhs)
}

/// True iff every nonzero coefficient sits at an exponent divisible by k.
pub fn support_check(s: &ModSeries, k: usize) -> bool {
    s.support().all(|(e, _)| e % k == 0)
}

/// s(x)^p == s(x^p) to truncation.
pub fn frobenius_holds(s: &ModSeries, p: u64) -> bool {
    let n = s.order();
    let lhs = s.pow(p);
    let rhs = s.substitute_power(p as usize).truncate(n);
    lhs == rhs
}
