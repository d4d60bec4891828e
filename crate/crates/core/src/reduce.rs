//! Truncation polynomials, Frobenius patterns and power-coefficient checks
//! for hypergeometric series reduced mod p.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::zmod;
use crate::error::{invalid, Result};
use crate::modular::ModSeries;
use crate::series::coeff::{int, parse_rational, rat};
use crate::series::hypergeometric::Hypergeometric;
use crate::series::IntegerSeries;

/// Trailing zeros required per unit of degree before calling a power a polynomial.
pub const MARGIN_FACTOR: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Truncation {
    /// s^{-e} mod p is a polynomial of degree poly.len()-1, with `margin` trailing zeros.
    Found { e: u64, poly: Vec<u64>, margin: usize },
    /// s^{-e} looks polynomial but the series is too short to be sure.
    Inconclusive { e: u64, degree: usize, margin: usize },
    None,
}

/// Smallest e, a multiple of p-1 up to e_max, such that s^{-e} mod p is a polynomial.
pub fn truncation_polynomial(s: &ModSeries, e_max: u64) -> Result<Truncation> {
    let p = s.modulus();
    if !zmod::is_prime(p) {
        return invalid(format!("modulus {p} is not prime"));
    }
    if s.coeff(0) != 1 % p {
        return invalid("constant term must be 1 mod p");
    }
    let n = s.order();
    let step = s.inverse()?.pow(p - 1);
    let mut cur = step.clone();
    let mut e = p - 1;
    let mut pending: Option<Truncation> = None;
    while e <= e_max {
        let d = cur.last_nonzero().unwrap_or(0);
        let margin = n - d;
        if margin >= MARGIN_FACTOR * d && margin > 0 {
            return Ok(Truncation::Found { e, poly: cur.coeffs()[..=d].to_vec(), margin });
        }
        // a long zero tail that falls short of the margin is worth reporting
        if pending.is_none() && margin >= d.max(8.min(n / 2)) && margin > 0 {
            pending = Some(Truncation::Inconclusive { e, degree: d, margin });
        }
        e += p - 1;
        cur = cur.mul(&step)?;
    }
    Ok(pending.unwrap_or(Truncation::None))
}

pub fn findings_json(series_id: &str, p: u64, t: &Truncation) -> Value {
    let (e, poly, margin, verdict) = match t {
        Truncation::Found { e, poly, margin } => (json!(e), json!(poly), json!(margin), "found"),
        Truncation::Inconclusive { e, margin, .. } => (json!(e), Value::Null, json!(margin), "inconclusive"),
        Truncation::None => (Value::Null, Value::Null, Value::Null, "none"),
    };
    json!({
        "series_id": series_id,
        "p": p,
        "e": e,
        "poly": poly,
        "margin": margin,
        "margin_factor": MARGIN_FACTOR,
        "verdict": verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrobeniusReport {
    pub holds: bool,
    /// Leading nonzero terms (exponent, coefficient) of s^p - 1 mod p.
    pub head: Vec<(usize, u64)>,
}

pub fn frobenius_truncation_check(s: &ModSeries, head_terms: usize) -> FrobeniusReport {
    let p = s.modulus();
    let pow = s.pow(p);
    let holds = pow == s.substitute_power(p as usize).truncate(s.order());
    let head = pow
        .support()
        .filter(|&(e, _)| e > 0)
        .chain(std::iter::once((0, zmod::sub_mod(pow.coeff(0), 1, p))).filter(|&(_, c)| c != 0))
        .take(head_terms)
        .collect::<Vec<_>>();
    let mut head = head;
    head.sort_unstable();
    FrobeniusReport { holds, head }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerPattern {
    pub m: u64,
    pub coefficients: [String; 3],
    pub holds: bool,
}

/// For s = Calabi-Yau 4F3, [x]s^M - 1 = 16M, [x²] = 16M(8M+73), [x³] = (256/3)M(8M²+219M+1648).
pub fn power_pattern_check(s: &IntegerSeries, m_values: &[u64]) -> Result<Vec<PowerPattern>> {
    if s.order() < 3 {
        return invalid("need the series through x^3");
    }
    let head = s.truncate(3);
    let mut out = Vec::new();
    for &m in m_values {
        if m == 0 {
            return invalid("M must be positive");
        }
        let pw = head.pow(m);
        let mm = BigInt::from(m);
        let want = [
            &mm * 16,
            &mm * 16 * (&mm * 8 + 73),
            // 256 M (8M²+219M+1648) is divisible by 3
            (&mm * 256 * (&mm * &mm * 8 + &mm * 219 + 1648)) / 3,
        ];
        let got = [pw.coeff(1).clone(), pw.coeff(2).clone(), pw.coeff(3).clone()];
        let exact = (&mm * 256 * (&mm * &mm * 8 + &mm * 219 + 1648)) % 3 == BigInt::zero();
        out.push(PowerPattern {
            m,
            holds: exact && got == want,
            coefficients: got.map(|c| c.to_string()),
        });
    }
    Ok(out)
}

pub fn calabi_yau_4f3() -> Hypergeometric {
    let h = rat(1, 2);
    Hypergeometric::new(vec![h.clone(), h.clone(), h.clone(), h], vec![int(1), int(1), int(1)], BigInt::from(256))
        .expect("valid parameters")
}

pub fn christol_3f2() -> Hypergeometric {
    Hypergeometric::new(vec![rat(1, 9), rat(4, 9), rat(5, 9)], vec![rat(1, 3), int(1)], BigInt::from(729))
        .expect("valid parameters")
}

/// 1 + (S - 1)/15 mod 3 with S the Christol series. The coefficients of S - 1
/// are divisible by 3 but not always by 5, so this is (c/3)·5⁻¹ from S mod 9.
pub fn christol_transformed_mod3(n: usize) -> Result<ModSeries> {
    let s9 = christol_3f2().series_mod(n, 9)?;
    let mut c = Vec::with_capacity(n + 1);
    for (k, &v) in s9.coeffs().iter().enumerate() {
        if k == 0 {
            c.push(1);
            continue;
        }
        if v % 3 != 0 {
            return invalid(format!("coefficient {k} is not divisible by 3"));
        }
        c.push((v / 3) * 2 % 3);
    }
    ModSeries::new("x", 3, c)
}

/// Sparse prefix as (exponent, coefficient) pairs.
pub fn sparse(s: &ModSeries) -> Vec<(usize, u64)> {
    s.support().collect()
}

/// Comma-separated rationals such as "1/2,1/2,1".
pub fn parse_rational_list(text: &str) -> Result<Vec<BigRational>> {
    text.split(',').filter(|t| !t.trim().is_empty()).map(parse_rational).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cy(p: u64, n: usize) -> ModSeries {
        calabi_yau_4f3().series_mod(n, p).unwrap()
    }

    #[test]
    fn truncation_mod_23() {
        let t = truncation_polynomial(&cy(23, 200), 23 * 23).unwrap();
        match t {
            Truncation::Found { e, poly, .. } => {
                assert_eq!(e, 22);
                assert_eq!(poly, vec![1, 16, 8, 12, 1, 1, 3, 4, 18, 16, 12, 1]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn short_series_is_inconclusive() {
        let t = truncation_polynomial(&cy(23, 30), 22).unwrap();
        assert!(matches!(t, Truncation::Inconclusive { e: 22, degree: 11, .. }), "{t:?}");
    }

    #[test]
    fn generic_series_has_none() {
        let mut c = vec![1u64];
        let mut x = 12345u64;
        for _ in 0..80 {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            c.push((x >> 33) % 7);
        }
        let s = ModSeries::new("x", 7, c).unwrap();
        assert_eq!(truncation_polynomial(&s, 6 * 3).unwrap(), Truncation::None);
    }

    #[test]
    fn frobenius_head_mod_23() {
        let r = frobenius_truncation_check(&cy(23, 100), 4);
        assert!(r.holds);
        assert_eq!(r.head, vec![(23, 16), (46, 8), (69, 12), (92, 1)]);
    }

    #[test]
    fn frobenius_of_one_is_trivial() {
        let r = frobenius_truncation_check(&ModSeries::constant("x", 5, 1, 20), 4);
        assert!(r.holds && r.head.is_empty());
    }

    #[test]
    fn power_patterns() {
        let s = calabi_yau_4f3().series(3).to_integer().unwrap();
        let r = power_pattern_check(&s, &[1, 2, 3, 4, 5]).unwrap();
        assert!(r.iter().all(|x| x.holds));
        assert_eq!(r[0].coefficients[2], "160000");
        assert_eq!(r[0].coefficients[1], "1296");
    }

    #[test]
    fn transformed_christol_is_lacunary() {
        let s = christol_transformed_mod3(250).unwrap();
        assert_eq!(sparse(&s), vec![(0, 1), (1, 1), (3, 1), (9, 1), (27, 1), (81, 1), (243, 1)]);
    }

    #[test]
    fn rational_lists() {
        assert_eq!(parse_rational_list("1/2, 3,-1/3").unwrap(), vec![rat(1, 2), int(3), rat(-1, 3)]);
        assert!(parse_rational_list("1/0").is_err());
    }

    fn found(t: Truncation) -> (u64, Vec<u64>) {
        match t {
            Truncation::Found { e, poly, .. } => (e, poly),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degree_is_half_p_minus_one() {
        for p in [5u64, 7, 11, 13, 23] {
            let (e, poly) = found(truncation_polynomial(&cy(p, 10 * p as usize), p * p).unwrap());
            assert_eq!(e, p - 1);
            assert_eq!(poly.len() as u64 - 1, (p - 1) / 2, "p={p}");
        }
    }

    #[test]
    fn five_f_four_reductions() {
        let h = rat(1, 2);
        let t = rat(1, 3);
        let a = Hypergeometric::new(vec![h.clone(); 5], vec![int(1); 4], BigInt::from(1024)).unwrap();
        assert_eq!(found(truncation_polynomial(&a.series_mod(60, 5).unwrap(), 5 * 5 * 5).unwrap()), (4, vec![1, 2, 1]));
        let b = Hypergeometric::new(vec![h.clone(), h.clone(), h, t.clone(), t], vec![int(1); 4], BigInt::from(64 * 81))
            .unwrap();
        let (e, poly) = found(truncation_polynomial(&b.series_mod(200, 5).unwrap(), 5 * 5 * 5).unwrap());
        assert_eq!((e, poly), (24, vec![1, 2, 4, 0, 0, 3, 1, 2]));
    }

    #[test]
    fn christol_mod_2_and_5() {
        let s2 = christol_3f2().series_mod(9000, 2).unwrap();
        assert_eq!(
            sparse(&s2),
            vec![(0, 1), (2, 1), (128, 1), (130, 1), (8192, 1), (8194, 1), (8320, 1), (8322, 1)]
        );
        assert!(crate::modular::power_identity_check(&s2, 63, &[1], &[1, 0, 1]).unwrap());
        let s5 = christol_3f2().series_mod(400, 5).unwrap();
        assert!(crate::modular::support_check(&s5, 5));
        assert_eq!(&sparse(&s5)[..4], &[(0, 1), (5, 4), (10, 2), (25, 3)]);
    }

    #[test]
    fn calabi_yau_mod_9_relation() {
        let s = cy(9, 2000);
        assert_eq!(&sparse(&s)[..6], &[(0, 1), (1, 7), (3, 7), (4, 7), (9, 7), (10, 4)]);
        let quartic = [(7, 1), (6, 2), (5, 1), (2, 1), (1, 2), (0, 1)];
        let quadratic = [(6, 1), (5, 1), (1, 1), (0, 1)];
        let constant = [(0, 7), (5, 7)];
        let terms: Vec<(usize, usize, i64)> = quartic
            .iter()
            .map(|&(a, c)| (a, 4, c))
            .chain(quadratic.iter().map(|&(a, c)| (a, 2, c)))
            .chain(constant.iter().map(|&(a, c)| (a, 0, c)))
            .collect();
        let rel = crate::relation::BivariateRelation::from_i64s(9, &terms).unwrap();
        assert!(crate::relation::verify_relation(&rel, &s).unwrap());
    }
}
