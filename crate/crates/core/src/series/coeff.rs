//! Coefficient rings for exact series.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::qpoly::QPoly;
use crate::error::{Error, Result};

/// An exact commutative coefficient ring with partial division.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Zero + One + Send + Sync + 'static {
    /// Tag used by the series file header.
    const DOMAIN: &'static str;

    fn from_i64(v: i64) -> Self;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn mul_i64(&self, k: i64) -> Self;
    fn add_assign_ref(&mut self, o: &Self) {
        *self = self.add_ref(o);
    }
    /// Quotient when it stays inside the ring.
    fn div_exact(&self, d: &Self) -> Option<Self>;
    fn to_text(&self) -> String;
    fn parse_text(s: &str) -> Result<Self>;
}

impl Coeff for BigInt {
    const DOMAIN: &'static str = "int";

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_i64(&self, k: i64) -> Self {
        self * k
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self += o;
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn parse_text(s: &str) -> Result<Self> {
        s.trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
    }
}

impl Coeff for BigRational {
    const DOMAIN: &'static str = "rat";

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_i64(&self, k: i64) -> Self {
        self * BigRational::from_integer(BigInt::from(k))
    }
    fn add_assign_ref(&mut self, o: &Self) {
        *self += o;
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        (!d.is_zero()).then(|| self / d)
    }
    fn to_text(&self) -> String {
        rat_to_text(self)
    }
    fn parse_text(s: &str) -> Result<Self> {
        parse_rational(s)
    }
}

impl Coeff for QPoly {
    const DOMAIN: &'static str = "qpoly";

    fn from_i64(v: i64) -> Self {
        QPoly::constant(BigInt::from(v))
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn mul_i64(&self, k: i64) -> Self {
        self.scale(&BigInt::from(k))
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        self.div_exact(d)
    }
    fn to_text(&self) -> String {
        if self.coeffs().is_empty() {
            return "0".into();
        }
        self.coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
    fn parse_text(s: &str) -> Result<Self> {
        let cs = s
            .split(',')
            .map(BigInt::parse_text)
            .collect::<Result<Vec<_>>>()?;
        Ok(QPoly::new(cs))
    }
}

/// "p/q", or "p" for integers.
pub fn rat_to_text(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        Some((a, b)) => {
            let n: BigInt = a.trim().parse().map_err(|_| bad())?;
            let d: BigInt = b.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// True when the fraction has denominator 1.
pub fn is_integral(r: &BigRational) -> bool {
    r.denom().is_one()
}

pub fn abs_bits(v: &BigInt) -> u64 {
    v.abs().bits()
}
