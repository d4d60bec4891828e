//! Dense linear algebra over a word-size prime field.

use super::zmod::{inv_mod, mul_mod, sub_mod};

/// Incremental row-echelon basis of a subspace of F_p^len.
pub struct EchelonBasis {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl EchelonBasis {
    pub fn new(p: u64) -> Self {
        EchelonBasis { p, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce v against the basis; true if it was independent (and is now added).
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let p = self.p;
        let mut v: Vec<u64> = v.iter().map(|&x| x % p).collect();
        for (piv, r) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(r).skip(*piv) {
                    *x = sub_mod(*x, mul_mod(c, y, p), p);
                }
            }
        }
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[piv], p).unwrap();
        for x in v.iter_mut().skip(piv) {
            *x = mul_mod(*x, inv, p);
        }
        self.rows.push((piv, v));
        true
    }
}

/// Largest l such that columns[l] lies in the span of columns[l+1..].
pub fn last_dependent_column(columns: &[Vec<u64>], p: u64) -> Option<usize> {
    let mut basis = EchelonBasis::new(p);
    (0..columns.len()).rev().find(|&l| !basis.insert(&columns[l]))
}

/// Indices of `rows` forming a maximal independent set, chosen greedily in order.
pub fn independent_rows(rows: &[Vec<u64>], p: u64, want: usize) -> Vec<usize> {
    let mut basis = EchelonBasis::new(p);
    let mut out = Vec::with_capacity(want);
    for (i, r) in rows.iter().enumerate() {
        if out.len() == want {
            break;
        }
        if basis.insert(r) {
            out.push(i);
        }
    }
    out
}

/// Inverse of a square matrix over F_p by Gauss-Jordan, or None if singular.
pub fn inverse(a: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = a.len();
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<u64> = r.iter().map(|&x| x % p).collect();
            row.resize(2 * n, 0);
            row[n + i] = 1;
            row
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| m[r][c] != 0)?;
        m.swap(c, piv);
        let inv = inv_mod(m[c][c], p).unwrap();
        for x in m[c].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pr = m[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == c || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pr).skip(c) {
                *x = sub_mod(*x, mul_mod(f, y, p), p);
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(a: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    a.iter()
        .map(|r| {
            let s: u128 = r.iter().zip(v).map(|(&x, &y)| x as u128 * y as u128 % p as u128).sum();
            (s % p as u128) as u64
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let p = 101;
        let a = vec![vec![2, 3, 5], vec![7, 11, 13], vec![17, 19, 23]];
        let inv = inverse(&a, p).unwrap();
        for (i, col) in (0..3).map(|j| (j, inv.iter().map(|r| r[j]).collect::<Vec<_>>())) {
            let e = mat_vec(&a, &col, p);
            for (k, x) in e.iter().enumerate() {
                assert_eq!(*x, u64::from(k == i));
            }
        }
    }

    #[test]
    fn singular_has_no_inverse() {
        assert!(inverse(&[vec![1, 2], vec![2, 4]], 7).is_none());
    }

    #[test]
    fn dependent_column_found_from_the_right() {
        let cols = vec![vec![1, 0, 0], vec![0, 1, 1], vec![0, 2, 2], vec![1, 1, 0]];
        assert_eq!(last_dependent_column(&cols, 5), Some(1));
    }
}
