//! Generalized hypergeometric series pFq(upper; lower; scale x).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::truncated::{IntegerSeries, RationalSeries};
use super::Series;
use crate::arith::zmod;
use crate::error::{invalid, Error, Result};
use crate::modular::ModSeries;

/// Parameters of a hypergeometric series.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypergeometric {
    pub upper: Vec<BigRational>,
    pub lower: Vec<BigRational>,
    pub scale: BigInt,
}

impl Hypergeometric {
    pub fn new(upper: Vec<BigRational>, lower: Vec<BigRational>, scale: BigInt) -> Result<Self> {
        for l in &lower {
            if l.is_integer() && !l.is_positive() {
                return invalid(format!("lower parameter {l} is a nonpositive integer"));
            }
        }
        Ok(Hypergeometric { upper, lower, scale })
    }

    /// Coefficients c_0, c_1, ... with c_{k+1}/c_k = scale prod(u+k) / (prod(l+k) (k+1)).
    pub fn terms(&self) -> impl Iterator<Item = BigRational> + '_ {
        let scale = BigRational::from_integer(self.scale.clone());
        let mut c = BigRational::one();
        let mut k = 0i64;
        std::iter::from_fn(move || {
            let out = c.clone();
            let kk = BigRational::from_integer(BigInt::from(k));
            let mut num = scale.clone();
            for u in &self.upper {
                num *= u + &kk;
            }
            let mut den = BigRational::from_integer(BigInt::from(k + 1));
            for l in &self.lower {
                den *= l + &kk;
            }
            c = if num.is_zero() || c.is_zero() {
                BigRational::zero()
            } else {
                &c * num / den
            };
            k += 1;
            Some(out)
        })
    }

    pub fn series(&self, n: usize) -> RationalSeries {
        Series::new("x", self.terms().take(n + 1).collect())
    }

    /// Residues mod m without forming exact coefficients: for each prime
    /// power dividing m the coefficient is tracked as p^v times a unit.
    pub fn series_mod(&self, n: usize, m: u64) -> Result<ModSeries> {
        if m < 2 {
            return invalid("modulus must be at least 2");
        }
        let mut parts: Vec<(u64, Vec<u64>)> = Vec::new();
        for (p, a) in factor(m) {
            let pa = p.pow(a);
            parts.push((pa, self.prime_power_residues(n, p, a)?));
        }
        let mut out = vec![0u64; n + 1];
        for (k, slot) in out.iter_mut().enumerate() {
            let mut acc = 0u64;
            let mut modulus = 1u64;
            for (pa, r) in &parts {
                acc = crt(acc, modulus, r[k], *pa);
                modulus *= pa;
            }
            *slot = acc;
        }
        ModSeries::new("x", m, out)
    }

    fn prime_power_residues(&self, n: usize, p: u64, a: u32) -> Result<Vec<u64>> {
        let pa = p.pow(a);
        // numerators and denominators of the factors (u + k) = (num + k den) / den
        let split = |r: &BigRational| -> Result<(i128, i128)> {
            let num = i128::try_from(r.numer()).map_err(|_| Error::InvalidInput("parameter too large".into()))?;
            let den = i128::try_from(r.denom()).map_err(|_| Error::InvalidInput("parameter too large".into()))?;
            Ok((num, den))
        };
        let ups = self.upper.iter().map(split).collect::<Result<Vec<_>>>()?;
        let lows = self.lower.iter().map(split).collect::<Result<Vec<_>>>()?;
        let scale = i128::try_from(&self.scale).map_err(|_| Error::InvalidInput("scale too large".into()))?;
        let mut v: i64 = 0;
        let mut u: u64 = 1 % pa;
        let mut dead = false;
        let mut out = Vec::with_capacity(n + 1);
        let absorb = |x: i128, v: &mut i64, sign: i64| -> u64 {
            let mut x = x;
            while x % p as i128 == 0 {
                x /= p as i128;
                *v += sign;
            }
            let r = x.rem_euclid(pa as i128) as u64;
            if sign > 0 {
                r
            } else {
                zmod::inv_mod(r, pa).expect("unit")
            }
        };
        for k in 0..=n {
            if dead {
                out.push(0);
                continue;
            }
            if v < 0 {
                return Err(Error::NotInvertible { modulus: pa, index: k });
            }
            out.push(if v >= a as i64 { 0 } else { zmod::mul_mod(u, p.pow(v as u32), pa) });
            let kk = k as i128;
            let mut factors_num = vec![scale];
            factors_num.extend(ups.iter().map(|(a, b)| a + kk * b));
            factors_num.extend(lows.iter().map(|(_, d)| *d));
            let mut factors_den = vec![kk + 1];
            factors_den.extend(lows.iter().map(|(c, d)| c + kk * d));
            factors_den.extend(ups.iter().map(|(_, b)| *b));
            if factors_num.contains(&0) {
                dead = true;
                continue;
            }
            for x in factors_num {
                u = zmod::mul_mod(u, absorb(x, &mut v, 1), pa);
            }
            for x in factors_den {
                u = zmod::mul_mod(u, absorb(x, &mut v, -1), pa);
            }
        }
        Ok(out)
    }
}

fn factor(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            let mut a = 0;
            while m.is_multiple_of(d) {
                m /= d;
                a += 1;
            }
            out.push((d, a));
        }
        d += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// x = r1 mod m1, x = r2 mod m2 with coprime moduli.
fn crt(r1: u64, m1: u64, r2: u64, m2: u64) -> u64 {
    if m1 == 1 {
        return r2;
    }
    let m = m1 as u128 * m2 as u128;
    let inv = zmod::inv_mod(m1 % m2, m2).expect("coprime moduli") as u128;
    let t = ((r2 as u128 + m2 as u128 - (r1 as u128 % m2 as u128)) % m2 as u128) * inv % m2 as u128;
    ((r1 as u128 + m1 as u128 * t) % m) as u64
}

/// Convenience constructor used by tests and the CLI.
pub fn hypergeometric_series(
    upper: &[BigRational],
    lower: &[BigRational],
    scale: i64,
    n: usize,
) -> Result<RationalSeries> {
    Ok(Hypergeometric::new(upper.to_vec(), lower.to_vec(), BigInt::from(scale))?.series(n))
}

/// R(x) = 2F1([1/3,1/3],[1],27x) / 2F1([1/2,1/2],[1],16x); the quotient is integral.
pub fn ratio_2f1_series(n: usize) -> Result<IntegerSeries> {
    let third = BigRational::new(1.into(), 3.into());
    let half = BigRational::new(1.into(), 2.into());
    let one = BigRational::from_integer(1.into());
    let a = hypergeometric_series(&[third.clone(), third], std::slice::from_ref(&one), 27, n)?;
    let b = hypergeometric_series(&[half.clone(), half], &[one], 16, n)?;
    a.div(&b)?.to_integer()
}
