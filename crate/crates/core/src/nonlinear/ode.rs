//! Polynomial differential equations in (w, F, F', F'', F''') as term lists.

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::series::{Coeff, QPoly, Series};

/// coeff * w^wexp * prod_j F^(ders[j])
#[derive(Debug, Clone, PartialEq)]
pub struct NlTerm<T> {
    pub coeff: T,
    pub wexp: usize,
    pub ders: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonlinearODE<T> {
    pub terms: Vec<NlTerm<T>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OdeName {
    TutteQ,
    TutteQ4Reduced,
    Ratio2F1,
}

impl std::str::FromStr for OdeName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "tutte" | "tutte_q" => Ok(OdeName::TutteQ),
            "tutte_q4_reduced" | "q4_reduced" | "reduced" => Ok(OdeName::TutteQ4Reduced),
            "ratio_2f1" | "ratio" => Ok(OdeName::Ratio2F1),
            other => Err(Error::InvalidInput(format!("unknown equation {other}"))),
        }
    }
}

/// The residual and the exact order through which it is known.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual<T> {
    pub series: Series<T>,
    pub order: usize,
}

impl<T: Coeff> Residual<T> {
    pub fn is_zero(&self) -> bool {
        self.series.is_zero()
    }

    /// Lowest degree with a nonzero residual coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.series.valuation()
    }
}

impl<T: Coeff> NonlinearODE<T> {
    pub fn new(terms: Vec<NlTerm<T>>) -> Result<Self> {
        let terms: Vec<NlTerm<T>> = terms
            .into_iter()
            .filter(|t| !t.coeff.is_zero())
            .map(|mut t| {
                t.ders.sort_unstable();
                t
            })
            .collect();
        if let Some(t) = terms.iter().find(|t| t.ders.iter().any(|&d| d > 3)) {
            return invalid(format!("derivative order {} exceeds 3", t.ders.iter().max().unwrap()));
        }
        Ok(NonlinearODE { terms })
    }

    fn term(coeff: T, wexp: usize, ders: &[u8]) -> NlTerm<T> {
        NlTerm { coeff, wexp, ders: ders.to_vec() }
    }

    pub fn max_derivative(&self) -> u8 {
        self.terms.iter().flat_map(|t| t.ders.iter().copied()).max().unwrap_or(0)
    }

    /// Exact evaluation on a truncated series. A term c w^e prod F^(k_j) is
    /// known through n - max k_j + e; the residual is cut to the minimum.
    pub fn residual(&self, s: &Series<T>) -> Result<Residual<T>> {
        let n = s.order();
        let kmax = self.max_derivative() as usize;
        if n < kmax {
            return Err(Error::TooShort { needed: kmax + 1, have: n + 1 });
        }
        let order = self
            .terms
            .iter()
            .filter(|t| !t.ders.is_empty())
            .map(|t| n - *t.ders.last().unwrap() as usize + t.wexp)
            .min()
            .unwrap_or(n);
        let mut ders = vec![s.clone()];
        for k in 1..=kmax {
            let d = ders[k - 1].derivative()?;
            ders.push(d);
        }
        let mut acc = vec![T::zero(); order + 1];
        for t in &self.terms {
            if t.wexp > order {
                continue;
            }
            if t.ders.is_empty() {
                acc[t.wexp].add_assign_ref(&t.coeff);
                continue;
            }
            let mut prod = ders[t.ders[0] as usize].clone();
            for &k in &t.ders[1..] {
                prod = prod.mul(&ders[k as usize]);
            }
            for (i, c) in prod.coeffs().iter().enumerate() {
                let deg = i + t.wexp;
                if deg > order {
                    break;
                }
                if !c.is_zero() {
                    acc[deg].add_assign_ref(&c.mul_ref(&t.coeff));
                }
            }
        }
        Ok(Residual { series: Series::new(s.var(), acc), order })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "terms": self.terms.iter().map(|t| json!({
                "coeff": t.coeff.to_text(),
                "wexp": t.wexp,
                "ders": t.ders,
            })).collect::<Vec<_>>()
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(m.to_string());
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let coeff = match t.get("coeff") {
                Some(Value::String(s)) => T::parse_text(s)?,
                Some(Value::Number(x)) => T::parse_text(&x.to_string())?,
                _ => return Err(bad("term coeff must be a string or number")),
            };
            let wexp = t.get("wexp").and_then(Value::as_u64).ok_or_else(|| bad("term needs wexp"))? as usize;
            let ders = t
                .get("ders")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("term needs ders"))?
                .iter()
                .map(|d| d.as_u64().filter(|&d| d <= 3).map(|d| d as u8).ok_or_else(|| bad("bad derivative order")))
                .collect::<Result<Vec<_>>>()?;
            out.push(NlTerm { coeff, wexp, ders });
        }
        Self::new(out)
    }

    /// 2q²(1−q)w + (qw + 10H − 6wH′)H″ + q(4−q)(20H − 18wH′ + 9w²H″) = 0.
    pub fn tutte(q: &T) -> Self {
        let one = T::one();
        let c = |k: i64| T::from_i64(k);
        let q2 = q.mul_ref(q);
        let g = q.mul_ref(&c(4).sub_ref(q));
        Self::new(vec![
            Self::term(c(2).mul_ref(&q2).mul_ref(&one.sub_ref(q)), 1, &[]),
            Self::term(q.clone(), 1, &[2]),
            Self::term(c(10), 0, &[0, 2]),
            Self::term(c(-6), 1, &[1, 2]),
            Self::term(c(20).mul_ref(&g), 0, &[0]),
            Self::term(c(-18).mul_ref(&g), 1, &[1]),
            Self::term(c(9).mul_ref(&g), 2, &[2]),
        ])
        .expect("valid transcription")
    }

    /// (3w F′ − 5F) F″ + 48w = 0 with F = H + w at q = 4.
    pub fn tutte_q4_reduced() -> Self {
        let c = |k: i64| T::from_i64(k);
        Self::new(vec![Self::term(c(3), 1, &[1, 2]), Self::term(c(-5), 0, &[0, 2]), Self::term(c(48), 1, &[])])
            .expect("valid transcription")
    }

    /// The order-three equation satisfied by the ratio R(x) of 2F1 series.
    pub fn ratio_2f1() -> Self {
        type P = Vec<i64>;
        fn pm(a: &[i64], b: &[i64]) -> P {
            let mut r = vec![0i64; a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    r[i + j] += x * y;
                }
            }
            r
        }
        fn prod(fs: &[&[i64]]) -> P {
            fs.iter().fold(vec![1], |acc, f| pm(&acc, f))
        }
        let a27: &[i64] = &[-1, 27];
        let a16: &[i64] = &[-1, 16];
        let a72: &[i64] = &[1, 72];
        let x1: &[i64] = &[0, 1];
        let x2: &[i64] = &[0, 0, 1];
        let cubic: &[i64] = &[4, -297, -168, 93312];
        let mut groups: Vec<(P, &[u8])> = vec![
            // −2x²(27x−1)(16x−1)[(27x−1)(16x−1)R₁ − (72x+1)R]R₃
            (prod(&[&[-2], x2, a27, a27, a16, a16]), &[1, 3]),
            (prod(&[&[2], x2, a27, a16, a72]), &[0, 3]),
            // −2x[3x(16x−1)(72x+1)(27x−1)R₁ − (93312x³−168x²−297x+4)R]R₂
            (prod(&[&[-6], x2, a16, a72, a27]), &[1, 2]),
            (prod(&[&[2], x1, cubic]), &[0, 2]),
            (prod(&[&[2], &[1, -221, 5580, 29376]]), &[0, 1]),
            (prod(&[&[3], x2, a27, a27, a16, a16]), &[2, 2]),
            (prod(&[a16, &[-1, 58, -1569, 1944]]), &[1, 1]),
            (vec![1, -432, 144], &[0, 0]),
        ];
        let mut terms = Vec::new();
        for (poly, ders) in groups.drain(..) {
            for (e, c) in poly.into_iter().enumerate() {
                if c != 0 {
                    terms.push(Self::term(T::from_i64(c), e, ders));
                }
            }
        }
        Self::new(terms).expect("valid transcription")
    }
}

/// Rational-coefficient equations by name; `q` is required for TUTTE_Q.
pub fn make_ode(name: OdeName, q: Option<&BigRational>) -> Result<NonlinearODE<BigRational>> {
    match name {
        OdeName::TutteQ => {
            let q = q.ok_or_else(|| Error::InvalidInput("TUTTE_Q needs a value of q".into()))?;
            Ok(NonlinearODE::tutte(q))
        }
        OdeName::TutteQ4Reduced => Ok(NonlinearODE::tutte_q4_reduced()),
        OdeName::Ratio2F1 => Ok(NonlinearODE::ratio_2f1()),
    }
}

/// TUTTE_Q with q a polynomial variable.
pub fn symbolic_tutte_ode() -> NonlinearODE<QPoly> {
    NonlinearODE::tutte(&QPoly::q())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::coeff::{int, rat};
    use num_traits::{One, Zero};
    use crate::series::RationalSeries;

    #[test]
    fn reduced_terms() {
        let ode = NonlinearODE::<BigRational>::tutte_q4_reduced();
        assert_eq!(ode.terms.len(), 3);
        assert_eq!(ode.terms[0], NlTerm { coeff: int(3), wexp: 1, ders: vec![1, 2] });
    }

    #[test]
    fn q4_group_vanishes() {
        let ode = NonlinearODE::tutte(&int(4));
        assert!(ode.terms.iter().all(|t| t.ders != [0] && t.ders != [1]));
        assert_eq!(ode.terms.len(), 4);
    }

    #[test]
    fn linear_f_gives_48w() {
        let ode = NonlinearODE::<BigRational>::tutte_q4_reduced();
        let f: RationalSeries = Series::from_i64s("w", &[0, 1, 0, 0, 0, 0]);
        let r = ode.residual(&f).unwrap();
        assert_eq!(r.series.coeff(1), &int(48));
        assert_eq!(r.first_nonzero(), Some(1));
    }

    #[test]
    fn ratio_leading_group_present() {
        let ode = NonlinearODE::<BigRational>::ratio_2f1();
        // −2x²·(27x−1)²(16x−1)² R₁R₃ has constant part −2 at x²
        assert!(ode.terms.contains(&NlTerm { coeff: int(-2), wexp: 2, ders: vec![1, 3] }));
        assert_eq!(ode.max_derivative(), 3);
    }

    #[test]
    fn json_roundtrip() {
        let ode = NonlinearODE::<BigRational>::tutte_q4_reduced();
        assert_eq!(NonlinearODE::from_json(&ode.to_json()).unwrap(), ode);
    }

    fn rat_tutte(q: i64, n: usize) -> RationalSeries {
        crate::series::tutte_integer(q, n).unwrap().to_rational()
    }

    #[test]
    fn tutte_residual_vanishes() {
        for q in [2, 3, 4, 5] {
            let r = NonlinearODE::tutte(&int(q)).residual(&rat_tutte(q, 60)).unwrap();
            assert!(r.is_zero(), "q={q}");
            assert_eq!(r.order, 58);
        }
    }

    #[test]
    fn symbolic_tutte_residual_vanishes() {
        let h = crate::series::tutte_series(&crate::series::TutteParam::Symbolic, 30).unwrap();
        let h = match h {
            crate::series::TutteSeries::Poly(h) => h,
            _ => unreachable!(),
        };
        assert!(symbolic_tutte_ode().residual(&h).unwrap().is_zero());
    }

    #[test]
    fn reduced_residual_vanishes_on_f() {
        let mut f = rat_tutte(4, 80).into_coeffs();
        f[1] += int(1);
        let f = Series::new("w", f);
        assert!(NonlinearODE::tutte_q4_reduced().residual(&f).unwrap().is_zero());
        let mut g = f.into_coeffs();
        g[2] = int(13);
        let r = NonlinearODE::tutte_q4_reduced().residual(&Series::new("w", g)).unwrap();
        assert!(!r.is_zero());
    }

    #[test]
    fn scaling_symmetry() {
        let mut f = rat_tutte(4, 60).into_coeffs();
        f[1] += int(1);
        let f = Series::new("w", f);
        for a in [int(2), int(3), rat(1, 2)] {
            let a2 = a.clone() * a.clone();
            let a3 = a2.clone() * a.clone();
            let g = f.substitute(&(BigRational::one() / a2), 1).scale(&a3);
            assert!(NonlinearODE::tutte_q4_reduced().residual(&g).unwrap().is_zero());
        }
    }

    #[test]
    fn polynomial_solutions() {
        for q in [3i64, 5, 7] {
            let qr = int(q);
            let d = int(q - 4);
            let p1 = vec![int(0), -(qr.clone() * int(q - 1)) / d.clone(), int(0), int(0), int(0)];
            let p2 = vec![
                int(0),
                -(qr.clone() * int(q - 2)) / (int(2) * d.clone()),
                -(qr.clone() * d.clone()) / int(2),
                int(0),
                int(0),
            ];
            let ode = NonlinearODE::tutte(&qr);
            for p in [p1, p2] {
                // polynomials are exact; pad and check a long window
                let mut c = p.clone();
                c.resize(12, BigRational::zero());
                let r = ode.residual(&Series::new("w", c)).unwrap();
                assert!(r.is_zero(), "q={q}");
            }
        }
    }

    #[test]
    fn family_solutions_vanish() {
        for (q, h1) in [(int(3), int(1)), (int(5), rat(2, 3)), (rat(7, 2), int(-1))] {
            let s = crate::series::family_solution(&q, &h1, 25).unwrap();
            assert!(NonlinearODE::tutte(&q).residual(&s).unwrap().is_zero());
        }
    }

    #[test]
    fn ratio_residual_vanishes() {
        let r = crate::series::ratio_2f1_series(60).unwrap();
        let res = NonlinearODE::<num_bigint::BigInt>::ratio_2f1().residual(&r).unwrap();
        assert!(res.is_zero());
        assert_eq!(res.order, 59);
    }
}
