//! Scalar arithmetic in Z/m for word-sized moduli.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

#[inline]
pub fn neg_mod(a: u64, m: u64) -> u64 {
    if a == 0 {
        0
    } else {
        m - a
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Extended gcd on signed 128-bit integers: returns (g, x, y) with a*x + b*y = g.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Inverse of a modulo m, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd((a % m) as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

#[inline]
pub fn is_unit(a: u64, m: u64) -> bool {
    gcd_u64(a, m) == 1
}

/// Signed integer to residue.
pub fn from_i64(v: i64, m: u64) -> u64 {
    (v as i128).rem_euclid(m as i128) as u64
}

/// Residue of a big integer.
pub fn from_bigint(v: &BigInt, m: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue fits in u64")
}

/// Symmetric representative in (-m/2, m/2].
pub fn symmetric(a: u64, m: u64) -> i128 {
    if a > m / 2 {
        a as i128 - m as i128
    } else {
        a as i128
    }
}

/// Deterministic Miller-Rabin for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Write m = p^k when m is a prime power.
pub fn prime_power(m: u64) -> Option<(u64, u32)> {
    if m < 2 {
        return None;
    }
    let mut p = 2u64;
    let mut rest = m;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p * p > rest {
        return Some((m, 1)).filter(|_| is_prime(m));
    }
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    if rest == 1 {
        Some((p, k))
    } else {
        None
    }
}

/// Primes below `start`, descending.
pub fn primes_below(start: u64) -> impl Iterator<Item = u64> {
    let mut c = start;
    std::iter::from_fn(move || {
        while c > 2 {
            c -= 1;
            if is_prime(c) {
                return Some(c);
            }
        }
        None
    })
}

/// A unit u with u*a = gcd(a, m) (mod m).
pub fn unit_normalizer(a: u64, m: u64) -> u64 {
    let a = a % m;
    if a == 0 {
        return 1 % m;
    }
    let g = gcd_u64(a, m);
    if g == 1 {
        return inv_mod(a, m).unwrap();
    }
    let mg = m / g;
    let u0 = inv_mod((a / g) % mg, mg).unwrap_or(0);
    let mut u = u0;
    while gcd_u64(u, m) != 1 {
        u += mg;
    }
    u % m
}

pub fn bigint_abs_bits(v: &BigInt) -> u64 {
    v.abs().bits()
}
