//! The autonomous form of the q = 4 equation and the period-ratio Schwarzian.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::series::coeff::{int, rat};
use crate::series::hypergeometric::hypergeometric_series;
use crate::series::period::complementary_period_series;
use crate::series::{ratio_series, IntegerSeries, LaurentSeries, RationalSeries};

/// Checks (G − 6G₁)(3G + 8G₁ + 4G₂) = 384 for G = F(u²)/u³, G₁ = ½θ_u G,
/// G₂ = ½θ_u G₁; returns the residual (known through its `high()`).
pub fn autonomous_q4_residual(f: &IntegerSeries) -> Result<LaurentSeries> {
    if f.order() < 2 || f.coeff(0) != &BigInt::zero() || f.coeff(1) != &BigInt::one() || f.coeff(2) != &BigInt::from(12) {
        return invalid("F must start w + 12w^2");
    }
    let fu = f.to_rational().substitute(&int(1), 2).with_var("u");
    let g = LaurentSeries::from_series(&fu, -3);
    let half = rat(1, 2);
    let g1 = g.theta().scale(&half);
    let g2 = g1.theta().scale(&half);
    let a = g.sub(&g1.scale(&int(6)));
    let b = g.scale(&int(3)).add(&g1.scale(&int(8))).add(&g2.scale(&int(4)));
    let prod = a.mul(&b);
    Ok(prod.sub(&LaurentSeries::constant("u", int(384), prod.high())))
}

pub fn verify_autonomous_q4(f: &IntegerSeries) -> Result<bool> {
    Ok(autonomous_q4_residual(f)?.is_zero())
}

/// {ρ, λ} for ρ given by its x-derivative ρ_x, with λ = x² and d/dλ = (1/2x) d/dx.
pub fn schwarzian_in_lambda(rho_x: &LaurentSeries) -> Result<LaurentSeries> {
    let d_lambda = |s: &LaurentSeries| s.derivative().shift(-1).scale(&rat(1, 2));
    let r1 = rho_x.shift(-1).scale(&rat(1, 2));
    let r2 = d_lambda(&r1);
    let r3 = d_lambda(&r2);
    let inv = r1.inverse()?;
    let a = r3.mul(&inv);
    let b = r2.mul(&inv);
    Ok(a.sub(&b.mul(&b).scale(&rat(3, 2))))
}

/// (λ²−λ+1) / (2λ²(λ−1)²) at λ = x², known through x^high.
pub fn schwarzian_target(high: i64) -> LaurentSeries {
    // (x⁴ − x² + 1)/(2x⁴) · sum_k (k+1) x^{2k}
    let len = (high + 5).max(1) as usize;
    let mut geo = vec![BigRational::zero(); len];
    for k in (0..len).step_by(2) {
        geo[k] = int(k as i64 / 2 + 1);
    }
    let g = LaurentSeries::new("x", 0, geo);
    let mut poly = vec![BigRational::zero(); len];
    for (i, c) in [1i64, 0, -1, 0, 1].into_iter().enumerate() {
        poly[i] = int(c);
    }
    // padded so truncation comes from the geometric factor only
    let num = LaurentSeries::new("x", 0, poly);
    num.mul(&g).shift(-4).scale(&rat(1, 2)).truncate_high(high)
}

/// ρ_x = 1/x + r′(x) with r = y₀/K and K = 2F1([1/2,1/2],[1],x²) through x^n.
pub fn period_ratio_derivative(n: usize) -> Result<LaurentSeries> {
    let y0 = complementary_period_series(n)?;
    let k = period_k(n)?;
    let r = ratio_series(&y0, &k)?;
    let dr = r.derivative()?;
    let inv_x = LaurentSeries::new("x", -1, {
        let mut v = vec![BigRational::zero(); dr.order() + 2];
        v[0] = int(1);
        v
    });
    Ok(inv_x.add(&LaurentSeries::from_series(&dr, 0)))
}

fn period_k(n: usize) -> Result<RationalSeries> {
    let h = hypergeometric_series(&[rat(1, 2), rat(1, 2)], &[int(1)], 1, n / 2)?;
    let mut c = h.substitute(&int(1), 2).with_var("x").into_coeffs();
    c.truncate(n + 1);
    c.resize(n + 1, BigRational::zero());
    Ok(RationalSeries::new("x", c))
}

/// The Schwarzian residual {ρ, λ} − (λ²−λ+1)/(2λ²(λ−1)²) as a Laurent series in x.
/// Errors if odd powers of x appear before the subtraction.
pub fn schwarzian_residual(n: usize) -> Result<LaurentSeries> {
    if n < 8 {
        return invalid("schwarzian_residual needs n >= 8");
    }
    let s = schwarzian_in_lambda(&period_ratio_derivative(n)?)?;
    if !s.supported_on_multiples(2) {
        return Err(crate::error::Error::InvalidInput("odd powers of x in the Schwarzian".into()));
    }
    Ok(s.sub(&schwarzian_target(s.high())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::tutte_integer;

    fn f_of(n: usize) -> IntegerSeries {
        let h = tutte_integer(4, n).unwrap();
        let mut c = h.into_coeffs();
        c[1] += 1;
        IntegerSeries::new("w", c)
    }

    #[test]
    fn autonomous_short_and_long() {
        assert!(verify_autonomous_q4(&f_of(4)).unwrap());
        assert!(verify_autonomous_q4(&f_of(60)).unwrap());
    }

    #[test]
    fn perturbation_detected() {
        let f = f_of(30);
        let mut c = f.into_coeffs();
        c[3] += 1;
        assert!(!verify_autonomous_q4(&IntegerSeries::new("w", c)).unwrap());
    }

    #[test]
    fn wrong_seed_rejected() {
        let f = IntegerSeries::from_i64s("w", &[0, 1, 13, 0]);
        assert!(verify_autonomous_q4(&f).is_err());
    }

    #[test]
    fn pure_log_has_half_inverse_square() {
        // ρ = ln x: {ρ, λ} = 1/(2λ²) = x^{-4}/2
        let mut v = vec![BigRational::zero(); 12];
        v[0] = int(1);
        let rho_x = LaurentSeries::new("x", -1, v);
        let s = schwarzian_in_lambda(&rho_x).unwrap();
        let want = LaurentSeries::new("x", -4, vec![rat(1, 2)]);
        assert_eq!(s.coeff(-4), want.coeff(-4));
        assert!(s.terms().all(|(e, _)| e == -4));
    }

    #[test]
    fn mobius_in_lambda_is_killed() {
        // ρ = λ/(1+λ): ρ_x = 2x/(1+x²)²
        let n = 30;
        let mut inv = vec![BigRational::zero(); n];
        for k in (0..n).step_by(2) {
            let j = (k / 2) as i64;
            inv[k] = int(if j % 2 == 0 { j + 1 } else { -(j + 1) });
        }
        let rho_x = LaurentSeries::new("x", 1, inv).scale(&int(2));
        assert!(schwarzian_in_lambda(&rho_x).unwrap().is_zero());
    }

    #[test]
    fn period_ratio_equation() {
        assert!(schwarzian_residual(40).unwrap().is_zero());
    }
}
