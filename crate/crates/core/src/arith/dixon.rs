//! Exact solution of nonsingular integer systems by p-adic (Dixon) lifting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::dense::{inverse, mat_vec};
use super::zmod::{from_bigint, primes_below};

/// n/d with |n|, d <= sqrt(m/2) and n ≡ d*u mod m, if one exists.
pub fn rational_reconstruction(u: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let (n, d) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    if n.gcd(&d).is_one() {
        Some((n, d))
    } else {
        None
    }
}

fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Candidate solution of A x = b as (numerators, common denominator), from
/// the lifted p-adic expansion. `None` if A is singular modulo every prime tried
/// or the lifting exceeds the Hadamard bound without a consistent candidate.
pub fn solve(a: &[Vec<BigInt>], b: &[BigInt]) -> Option<(Vec<BigInt>, BigInt)> {
    let n = a.len();
    if n == 0 {
        return Some((Vec::new(), BigInt::one()));
    }
    // log2 of a Hadamard-type bound on numerators and the denominator
    let hadamard: u64 = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().chain(std::iter::once(bi)).map(|x| x.bits()).max().unwrap_or(0) + (n as u64 + 1).ilog2() as u64 + 1)
        .sum();
    let max_bits = 2 * hadamard + 8;
    for p in primes_below(1 << 62).take(4) {
        let am: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|x| from_bigint(x, p)).collect()).collect();
        let Some(inv) = inverse(&am, p) else { continue };
        let check_p = primes_below(1 << 61).nth(1).unwrap();
        let ac: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|x| from_bigint(x, check_p)).collect()).collect();
        let bc: Vec<u64> = b.iter().map(|x| from_bigint(x, check_p)).collect();
        let pb = BigInt::from(p);
        let mut r: Vec<BigInt> = b.to_vec();
        let mut x = vec![BigInt::zero(); n];
        let mut modulus = BigInt::one();
        let mut steps = 0usize;
        let mut next_try = 8usize;
        while modulus.bits() <= max_bits {
            let rm: Vec<u64> = r.iter().map(|v| from_bigint(v, p)).collect();
            let xi = mat_vec(&inv, &rm, p);
            for (xk, &d) in x.iter_mut().zip(&xi) {
                *xk += &modulus * d;
            }
            for (rk, row) in r.iter_mut().zip(a) {
                let mut acc = BigInt::zero();
                for (aij, &d) in row.iter().zip(&xi) {
                    if d != 0 && !aij.is_zero() {
                        acc += aij * d;
                    }
                }
                *rk -= acc;
                debug_assert!((&*rk % &pb).is_zero());
                *rk /= &pb;
            }
            modulus *= &pb;
            steps += 1;
            if steps == next_try || modulus.bits() > max_bits {
                next_try += (steps / 8).max(8);
                if let Some(sol) = reconstruct(&x, &modulus) {
                    if consistent(&ac, &bc, &sol, check_p) {
                        return Some(sol);
                    }
                }
            }
        }
        return None;
    }
    None
}

fn reconstruct(x: &[BigInt], m: &BigInt) -> Option<(Vec<BigInt>, BigInt)> {
    let bound = (m >> 1u32).sqrt();
    let mut den = BigInt::one();
    for xi in x {
        let t = symmetric(&(xi * &den), m);
        if t.abs() <= bound {
            continue;
        }
        let (_, d) = rational_reconstruction(&t, m)?;
        den *= d;
        if den > bound {
            return None;
        }
    }
    let nums: Vec<BigInt> = x.iter().map(|xi| symmetric(&(xi * &den), m)).collect();
    if nums.iter().any(|v| v.abs() > bound) {
        return None;
    }
    Some((nums, den))
}

fn consistent(a: &[Vec<u64>], b: &[u64], sol: &(Vec<BigInt>, BigInt), q: u64) -> bool {
    let xs: Vec<u64> = sol.0.iter().map(|v| from_bigint(v, q)).collect();
    let d = from_bigint(&sol.1, q);
    let lhs = mat_vec(a, &xs, q);
    lhs.iter().zip(b).all(|(&l, &bi)| l == super::zmod::mul_mod(bi, d, q))
}
