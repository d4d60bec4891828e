//! Dense univariate polynomials over Z/m, lowest degree first.

use super::zmod::{add_mod, inv_mod, mul_mod, sub_mod};

pub type PolyMod = Vec<u64>;

pub fn trim(p: &mut PolyMod) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub fn trimmed(mut p: PolyMod) -> PolyMod {
    trim(&mut p);
    p
}

/// Degree, or None for the zero polynomial.
pub fn degree(p: &[u64]) -> Option<usize> {
    p.iter().rposition(|&x| x != 0)
}

pub fn add(a: &[u64], b: &[u64], m: u64) -> PolyMod {
    let n = a.len().max(b.len());
    trimmed(
        (0..n)
            .map(|i| add_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), m))
            .collect(),
    )
}

pub fn sub(a: &[u64], b: &[u64], m: u64) -> PolyMod {
    let n = a.len().max(b.len());
    trimmed(
        (0..n)
            .map(|i| sub_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), m))
            .collect(),
    )
}

pub fn scale(a: &[u64], c: u64, m: u64) -> PolyMod {
    trimmed(a.iter().map(|&x| mul_mod(x, c, m)).collect())
}

pub fn mul(a: &[u64], b: &[u64], m: u64) -> PolyMod {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u128; a.len() + b.len() - 1];
    let mm = m as u128;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x as u128 * y as u128) % mm;
        }
    }
    trimmed(r.into_iter().map(|x| x as u64).collect())
}

pub fn deriv(a: &[u64], m: u64) -> PolyMod {
    trimmed(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| mul_mod(x, i as u64 % m, m))
            .collect(),
    )
}

pub fn eval(a: &[u64], x: u64, m: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, m), c, m))
}

/// Division with remainder over a field (m prime).
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (PolyMod, PolyMod) {
    let db = degree(b).expect("division by zero polynomial");
    let inv = inv_mod(b[db], p).expect("prime modulus");
    let mut r = trimmed(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = mul_mod(r[dr], inv, p);
        q[dr - db] = c;
        for (i, &bi) in b[..=db].iter().enumerate() {
            r[dr - db + i] = sub_mod(r[dr - db + i], mul_mod(c, bi, p), p);
        }
        trim(&mut r);
    }
    (trimmed(q), r)
}

/// Monic gcd over a field.
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> PolyMod {
    let mut x = trimmed(a.to_vec());
    let mut y = trimmed(b.to_vec());
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y, p);
        x = y;
        y = r;
    }
    make_monic(&x, p)
}

pub fn make_monic(a: &[u64], p: u64) -> PolyMod {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = inv_mod(a[d], p).expect("unit leading coefficient");
            scale(&a[..=d], inv, p)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_roundtrip() {
        let a = vec![1, 2, 3, 4];
        let b = vec![3, 1];
        let (q, r) = divrem(&a, &b, 7);
        assert_eq!(add(&mul(&q, &b, 7), &r, 7), a);
        assert!(r.len() <= 1);
    }

    #[test]
    fn gcd_of_products() {
        let f = vec![1, 1];
        let g = vec![2, 0, 1];
        let h = vec![3, 1];
        let a = mul(&f, &g, 5);
        let b = mul(&f, &h, 5);
        assert_eq!(gcd(&a, &b, 5), vec![1, 1]);
    }
}
