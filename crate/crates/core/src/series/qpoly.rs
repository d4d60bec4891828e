//! Polynomials in q with integer coefficients.

use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Integer polynomial in q, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QPoly(Vec<BigInt>);

impl QPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly(c)
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate q.
    pub fn q() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let z = BigInt::zero();
        Self::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        QPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.0.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.0.is_empty() || o.0.is_empty() {
            return QPoly::default();
        }
        let mut r = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        Self::new(r)
    }

    /// Exact quotient over Z[q], None if the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        if self.0.is_empty() {
            return Some(QPoly::default());
        }
        let lc = &d.0[dd];
        let mut r = self.0.clone();
        if r.len() <= dd {
            return None;
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let (c, rem) = r[k].div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, di) in d.0.iter().enumerate() {
                r[k - dd + i] -= &c * di;
            }
            q[k - dd] = c;
        }
        r.iter().all(|x| x.is_zero()).then(|| Self::new(q))
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.0
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(self, o: QPoly) -> QPoly {
        QPoly::add(&self, &o)
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, o: QPoly) -> QPoly {
        QPoly::mul(&self, &o)
    }
}

impl Zero for QPoly {
    fn zero() -> Self {
        QPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl One for QPoly {
    fn one() -> Self {
        QPoly::from_i64s(&[1])
    }
}
