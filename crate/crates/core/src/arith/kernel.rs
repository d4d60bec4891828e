//! Kernels of linear systems over Z/m via a Howell-style echelon form.
//!
//! The system is given column by column: `columns[j]` holds the values of
//! unknown `j` in every equation. Unknowns are ordered by priority; index 0 is
//! the "highest" monomial. Rows of the working matrix are `[column_j | e_j]`,
//! so eliminating the equation block leaves kernel vectors in the identity block.

use super::zmod::{ext_gcd, gcd_u64, inv_mod, is_unit, mul_mod, unit_normalizer};

/// Echelon generators of the kernel module, sorted by pivot position.
#[derive(Debug, Clone)]
pub struct Kernel {
    pub modulus: u64,
    pub unknowns: usize,
    gens: Vec<Vec<u64>>,
}

impl Kernel {
    pub fn generators(&self) -> &[Vec<u64>] {
        &self.gens
    }

    /// Number of generators; equals the nullity over a field.
    pub fn dimension(&self) -> usize {
        self.gens.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    /// The kernel element with the lowest leading unknown whose leading
    /// coefficient is a unit, scaled so that coefficient is 1.
    pub fn min_leading(&self) -> Option<Vec<u64>> {
        let m = self.modulus;
        let g = self
            .gens
            .iter()
            .rev()
            .find(|g| g.iter().find(|&&x| x != 0).is_some_and(|&x| is_unit(x, m)))?;
        Some(monic(g, m))
    }

    /// A kernel element whose coordinate `idx` is 1, if one exists.
    /// Other generators' pivots are cleared where divisibility allows.
    pub fn with_unit_at(&self, idx: usize) -> Option<Vec<u64>> {
        let m = self.modulus;
        let pos = self
            .gens
            .iter()
            .position(|g| lead(g) == Some(idx) && is_unit(g[idx], m))?;
        let mut v = monic(&self.gens[pos], m);
        for g in &self.gens[pos + 1..] {
            let Some(c) = lead(g) else { continue };
            let a = g[c];
            let x = v[c];
            if x == 0 {
                continue;
            }
            if let Some(t) = divide(x, a, m) {
                for (vi, gi) in v.iter_mut().zip(g) {
                    *vi = (*vi + m - mul_mod(t, *gi, m)) % m;
                }
            }
        }
        Some(v)
    }
}

fn lead(v: &[u64]) -> Option<usize> {
    v.iter().position(|&x| x != 0)
}

fn monic(v: &[u64], m: u64) -> Vec<u64> {
    let l = lead(v).expect("nonzero generator");
    let inv = inv_mod(v[l], m).expect("unit leading coefficient");
    v.iter().map(|&x| mul_mod(x, inv, m)).collect()
}

/// Solve t*a = x in Z/m when a divides x.
fn divide(x: u64, a: u64, m: u64) -> Option<u64> {
    let g = gcd_u64(a, m);
    if !x.is_multiple_of(g) {
        return None;
    }
    let mg = m / g;
    let inv = inv_mod((a / g) % mg, mg)?;
    Some(mul_mod((x / g) % mg, inv, mg))
}

struct Work {
    m: u64,
    rows: Vec<Vec<u64>>,
    adds: Vec<u64>,
    limit: u64,
}

impl Work {
    fn reduce_row(&mut self, r: usize, from: usize) {
        let m = self.m;
        for x in &mut self.rows[r][from..] {
            *x %= m;
        }
        self.adds[r] = 0;
    }

    /// rows[dst] += f * rows[src] from column `from` on; rows[src] must be reduced.
    fn axpy(&mut self, dst: usize, src: usize, f: u64, from: usize) {
        if self.adds[dst] >= self.limit {
            self.reduce_row(dst, from);
        }
        let (d, s) = if dst < src {
            let (a, b) = self.rows.split_at_mut(src);
            (&mut a[dst], &b[0])
        } else {
            let (a, b) = self.rows.split_at_mut(dst);
            (&mut b[0], &a[src])
        };
        if self.limit == 0 {
            let m = self.m;
            for (x, &y) in d[from..].iter_mut().zip(&s[from..]) {
                *x = ((*x as u128 + f as u128 * y as u128) % m as u128) as u64;
            }
        } else {
            for (x, &y) in d[from..].iter_mut().zip(&s[from..]) {
                *x += f * y;
            }
            self.adds[dst] += 1;
        }
    }

    fn scale_row(&mut self, r: usize, f: u64, from: usize) {
        let m = self.m;
        self.reduce_row(r, from);
        for x in &mut self.rows[r][from..] {
            *x = mul_mod(*x, f, m);
        }
    }

    /// (r0, r1) <- (s r0 + t r1, u r0 + v r1) with a unimodular 2x2 transform.
    fn bezout(&mut self, r0: usize, r1: usize, s: u64, t: u64, u: u64, v: u64, from: usize) {
        let m = self.m;
        self.reduce_row(r0, from);
        self.reduce_row(r1, from);
        for c in from..self.rows[r0].len() {
            let a = self.rows[r0][c];
            let b = self.rows[r1][c];
            self.rows[r0][c] = (mul_mod(s, a, m) + mul_mod(t, b, m)) % m;
            self.rows[r1][c] = (mul_mod(u, a, m) + mul_mod(v, b, m)) % m;
        }
    }

    fn entry(&mut self, r: usize, c: usize) -> u64 {
        let v = self.rows[r][c] % self.m;
        self.rows[r][c] = v;
        v
    }

    /// Eliminate column c among `active`; returns the pivot row removed from `active`,
    /// pushing its annihilator multiple back when the pivot is not a unit.
    fn eliminate(&mut self, active: &mut Vec<usize>, c: usize) -> Option<usize> {
        let m = self.m;
        let mut first_nonzero = None;
        let mut unit_row = None;
        for (k, &r) in active.iter().enumerate() {
            let v = self.entry(r, c);
            if v != 0 {
                if first_nonzero.is_none() {
                    first_nonzero = Some(k);
                }
                if is_unit(v, m) {
                    unit_row = Some(k);
                    break;
                }
            }
        }
        let k = unit_row.or(first_nonzero)?;
        let p = active.remove(k);
        let a = self.entry(p, c);
        self.scale_row(p, unit_normalizer(a, m), c);
        let mut g = self.rows[p][c];
        for idx in 0..active.len() {
            let r = active[idx];
            let b = self.entry(r, c);
            if b == 0 {
                continue;
            }
            if b.is_multiple_of(g) {
                let t = b / g;
                self.axpy(r, p, m - t, c);
            } else {
                let (gg, s, t) = ext_gcd(g as i128, b as i128);
                let mi = m as i128;
                let s = s.rem_euclid(mi) as u64;
                let t = t.rem_euclid(mi) as u64;
                let u = ((b as i128 / gg).rem_euclid(mi)) as u64;
                let v = ((-(g as i128) / gg).rem_euclid(mi)) as u64;
                self.bezout(p, r, s, t, u, v, c);
                let a = self.rows[p][c];
                self.scale_row(p, unit_normalizer(a, m), c);
                g = self.rows[p][c];
            }
        }
        self.reduce_row(p, c);
        if g != 1 {
            let ann = m / gcd_u64(g, m);
            let mut row = self.rows[p].clone();
            for x in &mut row[c..] {
                *x = mul_mod(*x, ann, m);
            }
            if row[c..].iter().any(|&x| x != 0) {
                self.rows.push(row);
                self.adds.push(0);
                active.push(self.rows.len() - 1);
            }
        }
        Some(p)
    }
}

/// Kernel of the system `sum_j x_j * columns[j][k] = 0` for all equations k.
pub fn kernel(columns: &[Vec<u64>], modulus: u64) -> Kernel {
    let m = modulus;
    let u = columns.len();
    let e = columns.first().map_or(0, |c| c.len());
    assert!(columns.iter().all(|c| c.len() == e), "ragged columns");
    let width = e + u;
    let rows: Vec<Vec<u64>> = columns
        .iter()
        .enumerate()
        .map(|(j, col)| {
            let mut r = Vec::with_capacity(width);
            r.extend(col.iter().map(|&x| x % m));
            r.resize(width, 0);
            r[e + j] = 1 % m;
            r
        })
        .collect();
    let sq = (m as u128 - 1).pow(2).max(1);
    let limit = if m < (1 << 31) {
        ((u64::MAX as u128 - m as u128) / sq).min(u64::MAX as u128) as u64
    } else {
        0
    };
    let mut w = Work { m, rows, adds: vec![0; u], limit };
    let mut active: Vec<usize> = (0..u).collect();
    for c in 0..e {
        if active.is_empty() {
            break;
        }
        w.eliminate(&mut active, c);
    }
    // Remaining rows vanish on every equation; echelonize their identity block.
    let mut kernel_rows = Vec::new();
    for c in e..width {
        if active.is_empty() {
            break;
        }
        if let Some(p) = w.eliminate(&mut active, c) {
            kernel_rows.push(p);
        }
    }
    let gens = kernel_rows
        .into_iter()
        .map(|r| w.rows[r][e..].iter().map(|&x| x % m).collect())
        .collect();
    Kernel { modulus, unknowns: u, gens }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply(columns: &[Vec<u64>], x: &[u64], m: u64) -> Vec<u64> {
        let e = columns[0].len();
        (0..e)
            .map(|k| {
                columns
                    .iter()
                    .zip(x)
                    .fold(0u64, |acc, (c, &xi)| (acc + mul_mod(c[k], xi, m)) % m)
            })
            .collect()
    }

    #[test]
    fn field_kernel_of_rank_one() {
        // x0 + 2 x1 + 3 x2 = 0 over F_7
        let cols = vec![vec![1], vec![2], vec![3]];
        let k = kernel(&cols, 7);
        assert_eq!(k.dimension(), 2);
        for g in k.generators() {
            assert_eq!(apply(&cols, g, 7), vec![0]);
        }
        let v = k.min_leading().unwrap();
        assert_eq!(v, vec![0, 1, 4]);
    }

    #[test]
    fn trivial_kernel() {
        let cols = vec![vec![1, 0], vec![0, 1]];
        assert!(kernel(&cols, 5).is_trivial());
    }

    #[test]
    fn prime_power_annihilator() {
        // 3 x = 0 mod 9 has kernel generated by 3.
        let k = kernel(&[vec![3]], 9);
        assert_eq!(k.generators(), &[vec![3]]);
        assert!(k.min_leading().is_none());
        // 3 x0 + x1 = 0 mod 9: (1, 6) is a unit-leading solution.
        let cols = vec![vec![3], vec![1]];
        let k = kernel(&cols, 9);
        let v = k.with_unit_at(0).unwrap();
        assert_eq!(apply(&cols, &v, 9), vec![0]);
        assert_eq!(v[0], 1);
    }

    #[test]
    fn composite_modulus() {
        // 2 x0 + 3 x1 = 0 mod 6
        let cols = vec![vec![2], vec![3]];
        let k = kernel(&cols, 6);
        for g in k.generators() {
            assert_eq!(apply(&cols, g, 6), vec![0]);
        }
        assert!(!k.is_trivial());
    }
}
