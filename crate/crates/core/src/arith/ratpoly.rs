//! Dense univariate polynomials over Q, ascending coefficients, trimmed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub type RatPoly = Vec<BigRational>;

pub fn trim(mut c: RatPoly) -> RatPoly {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    c
}

pub fn add(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

pub fn sub(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

pub fn mul(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim(r)
}

pub fn deriv(a: &[BigRational]) -> RatPoly {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (RatPoly, RatPoly) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lb = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lb;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &c * bi;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

/// Monic gcd.
pub fn gcd(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = std::mem::replace(&mut y, primitive(&r));
    }
    monic(&x)
}

pub fn monic(a: &[BigRational]) -> RatPoly {
    match a.last() {
        None => Vec::new(),
        Some(l) => a.iter().map(|x| x / l).collect(),
    }
}

/// Scaled to integer coefficients with content 1, keeping the sign of the lead.
pub fn primitive(a: &[BigRational]) -> RatPoly {
    use num_integer::Integer;
    if a.is_empty() {
        return Vec::new();
    }
    let den = a.iter().fold(BigInt::from(1), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = a.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let g = if a.last().unwrap().is_negative() { -g } else { g };
    ints.into_iter().map(|x| BigRational::from_integer(x / &g)).collect()
}

/// The squarefree part p / gcd(p, p').
pub fn squarefree(a: &[BigRational]) -> RatPoly {
    let g = gcd(a, &deriv(a));
    monic(&divrem(a, &g).0)
}

/// Coefficients as f64 after a common power-of-two scaling, so huge or tiny
/// rationals stay in range.
pub fn to_f64_scaled(a: &[BigRational]) -> Vec<f64> {
    let bits = |x: &BigRational| x.numer().bits() as i64 - x.denom().bits() as i64;
    let top = a.iter().filter(|x| !x.is_zero()).map(bits).max().unwrap_or(0);
    a.iter()
        .map(|x| {
            if x.is_zero() {
                return 0.0;
            }
            let e = top - 60;
            let scaled = if e >= 0 {
                x / BigRational::from_integer(BigInt::from(1) << e as u64)
            } else {
                x * BigRational::from_integer(BigInt::from(1) << (-e) as u64)
            };
            ratio_to_f64(&scaled)
        })
        .collect()
}

fn ratio_to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    let n = x.numer();
    let d = x.denom();
    // keep 64 significant bits of each part
    let sn = n.bits().saturating_sub(64);
    let sd = d.bits().saturating_sub(64);
    let nf = (n >> sn).to_f64().unwrap_or(0.0);
    let df = (d >> sd).to_f64().unwrap_or(1.0);
    nf / df * 2f64.powi(sn as i32 - sd as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::coeff::int;

    fn p(v: &[i64]) -> RatPoly {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn squarefree_of_square() {
        // (w-1)^2 (w+2)
        let a = mul(&mul(&p(&[-1, 1]), &p(&[-1, 1])), &p(&[2, 1]));
        assert_eq!(squarefree(&a), mul(&p(&[-1, 1]), &p(&[2, 1])));
    }

    #[test]
    fn scaled_floats_keep_ratios() {
        let big = BigRational::from_integer(BigInt::from(3) << 5000u32);
        let f = to_f64_scaled(&[big.clone(), big * int(2)]);
        assert!((f[1] / f[0] - 2.0).abs() < 1e-15);
    }
}
