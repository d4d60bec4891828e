//! Finite singularities, local exponents and exponents at infinity of a
//! θ-form operator over Q.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use super::operator::{Form, RatOperator};
use crate::arith::polymod;
use crate::arith::ratpoly::{self, RatPoly};
use crate::arith::zmod::{from_bigint, primes_below};

const TOL: f64 = 1e-12;

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::zero(), |acc, &x| acc * z + x)
}

fn deriv_c(c: &[Complex64]) -> Vec<Complex64> {
    c.iter().enumerate().skip(1).map(|(i, &x)| x * i as f64).collect()
}

/// All complex roots of a polynomial (ascending real coefficients) by
/// Durand–Kerner from a fixed circle, then Newton polishing.
pub fn polynomial_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    roots_complex(&c)
}

pub fn roots_complex(c: &[Complex64]) -> Vec<Complex64> {
    let mut c = c.to_vec();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    let zeros = c.iter().position(|x| x.norm() != 0.0).unwrap_or(0);
    let mut roots = vec![Complex64::zero(); zeros];
    let c: Vec<Complex64> = c[zeros..].to_vec();
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return roots;
    }
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    // Fujiwara bound: every root has modulus below 2 max |a_{n-i}|^(1/i)
    let bound = (1..=n)
        .map(|i| {
            let a = monic[n - i].norm();
            if i == n { (a / 2.0).powf(1.0 / i as f64) } else { a.powf(1.0 / i as f64) }
        })
        .fold(0.0, f64::max)
        * 2.0;
    let bound = if bound > 0.0 { bound } else { 1.0 };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(bound, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..20_000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let num = horner(&monic, z[i]);
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                continue;
            }
            let step = num / den;
            z[i] -= step;
            delta = delta.max(step.norm() / (1.0 + z[i].norm()));
        }
        if delta < TOL {
            break;
        }
    }
    let d = deriv_c(&monic);
    for r in z.iter_mut() {
        for _ in 0..5 {
            let f = horner(&monic, *r);
            let fp = horner(&d, *r);
            if fp.norm() == 0.0 {
                break;
            }
            let step = f / fp;
            *r -= step;
            if step.norm() < TOL * (1.0 + r.norm()) {
                break;
            }
        }
    }
    roots.extend(z);
    roots.sort_by(|a, b| a.norm().total_cmp(&b.norm()).then(a.im.total_cmp(&b.im)));
    roots
}

#[derive(Debug, Clone, Serialize)]
pub struct Singularity {
    pub location: (f64, f64),
    pub multiplicity: usize,
    /// roots of the indicial polynomial, real parts, ascending
    pub exponents: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SingularityReport {
    pub entries: Vec<Singularity>,
    pub radius: Option<f64>,
    pub growth: Option<f64>,
    pub infinity_exponents: Vec<f64>,
}

impl SingularityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "entries": self.entries.iter().map(|e| json!({
                "location": [e.location.0, e.location.1],
                "multiplicity": e.multiplicity,
                "exponents": e.exponents,
            })).collect::<Vec<_>>(),
            "radius": self.radius,
            "growth": self.growth,
            "infinity_exponents": self.infinity_exponents,
        })
    }

    /// The entry closest to z.
    pub fn nearest(&self, z: Complex64) -> Option<&Singularity> {
        self.entries
            .iter()
            .min_by(|a, b| dist(a, z).total_cmp(&dist(b, z)))
    }
}

fn dist(s: &Singularity, z: Complex64) -> f64 {
    (Complex64::new(s.location.0, s.location.1) - z).norm()
}

fn sorted_real(mut v: Vec<Complex64>) -> Vec<f64> {
    v.sort_by(|a, b| a.re.total_cmp(&b.re));
    v.into_iter().map(|z| z.re).collect()
}

/// Taylor coefficients of a real polynomial at z.
fn taylor_at(c: &[f64], z: Complex64) -> Vec<Complex64> {
    let mut a: Vec<Complex64> = c.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let n = a.len();
    // repeated synthetic division
    for k in 0..n {
        for j in (k..n - 1).rev() {
            let t = a[j + 1] * z;
            a[j] += t;
        }
    }
    a
}

/// Local exponents at a root r of multiplicity m of the leading coefficient of
/// the D-form operator, assuming the point is regular singular.
fn local_exponents(dcoef: &[Vec<f64>], r: Complex64, m: usize) -> Vec<f64> {
    let q = dcoef.len() - 1;
    // indicial polynomial sum over i >= q - m of [t^(m-q+i)] c_i(r+t) * falling(ρ, i)
    let mut ind = vec![Complex64::zero(); q + 1];
    for (i, ci) in dcoef.iter().enumerate() {
        if i + m < q {
            continue;
        }
        let order = m + i - q;
        let t = taylor_at(ci, r);
        let Some(&coef) = t.get(order) else { continue };
        // falling factorial ρ(ρ-1)...(ρ-i+1) as a polynomial in ρ
        let mut fall = vec![Complex64::new(1.0, 0.0)];
        for s in 0..i {
            let mut nf = vec![Complex64::zero(); fall.len() + 1];
            for (k, &x) in fall.iter().enumerate() {
                nf[k + 1] += x;
                nf[k] -= x * s as f64;
            }
            fall = nf;
        }
        for (k, x) in fall.into_iter().enumerate() {
            ind[k] += coef * x;
        }
    }
    sorted_real(roots_complex(&ind))
}

/// Singular points from the roots of p_Q, exponents from the indicial
/// polynomials there and at infinity. `growth` is 1/radius.
pub fn singularity_report(op: &RatOperator) -> SingularityReport {
    let theta = if op.form() == Form::Theta { op.clone() } else { to_theta_shape(op) };
    let lead: RatPoly = theta.leading().to_vec();
    let sq = squarefree_part(&lead);
    let dcoef = d_form_f64(&theta);
    let mut entries = Vec::new();
    if sq.len() > 1 {
        let roots = polynomial_roots(&ratpoly::to_f64_scaled(&sq));
        let lead_f = ratpoly::to_f64_scaled(&lead);
        for r in roots {
            let m = multiplicity(&lead_f, r);
            // the D-form leading coefficient is w^Q p_Q
            let mult_d = if r.norm() < 1e-9 { m + theta.order() } else { m };
            entries.push(Singularity {
                location: (r.re, r.im),
                multiplicity: m,
                exponents: local_exponents(&dcoef, r, mult_d),
            });
        }
    }
    let radius = entries
        .iter()
        .map(|e| Complex64::new(e.location.0, e.location.1).norm())
        .filter(|&x| x > 1e-9)
        .fold(None, |acc: Option<f64>, x| Some(acc.map_or(x, |a| a.min(x))));
    SingularityReport {
        entries,
        radius,
        growth: radius.map(|r| 1.0 / r),
        infinity_exponents: infinity_exponents(&theta),
    }
}

/// D-form coefficients c_j = w^j sum_i S(i,j) p_i in floating point, after one
/// common scaling of the θ-form coefficients.
fn d_form_f64(theta: &RatOperator) -> Vec<Vec<f64>> {
    let flat: Vec<BigRational> = theta.coeffs().iter().flatten().cloned().collect();
    let mut it = ratpoly::to_f64_scaled(&flat).into_iter();
    let p: Vec<Vec<f64>> = theta.coeffs().iter().map(|c| (0..c.len()).map(|_| it.next().unwrap()).collect()).collect();
    let q = p.len() - 1;
    let mut st = vec![vec![0f64; q + 1]; q + 1];
    st[0][0] = 1.0;
    for i in 1..=q {
        for j in 1..=i {
            st[i][j] = st[i - 1][j - 1] + j as f64 * st[i - 1][j];
        }
    }
    let width = theta.degree() + q + 1;
    (0..=q)
        .map(|j| {
            let mut c = vec![0f64; width];
            for (i, pi) in p.iter().enumerate().skip(j) {
                for (k, &x) in pi.iter().enumerate() {
                    c[k + j] += st[i][j] * x;
                }
            }
            c
        })
        .collect()
}

/// Squarefree part, skipping the exact gcd when p_Q is squarefree mod a large prime.
fn squarefree_part(lead: &[BigRational]) -> RatPoly {
    let ints = ratpoly::primitive(lead);
    for p in primes_below(1 << 62).take(3) {
        let m: Vec<u64> = ints.iter().map(|x| from_bigint(x.numer(), p)).collect();
        if m.last() == Some(&0) || m.len() != ints.len() {
            continue;
        }
        let g = polymod::gcd(&m, &polymod::deriv(&m, p), p);
        if g.len() <= 1 {
            return ints;
        }
        break;
    }
    ratpoly::squarefree(lead)
}

fn to_theta_shape(op: &RatOperator) -> RatOperator {
    // D^i = w^{-i} θ(θ-1)...(θ-i+1); multiply through by w^Q
    let q = op.order();
    let mut out: Vec<RatPoly> = vec![Vec::new(); q + 1];
    for (i, ci) in op.coeffs().iter().enumerate() {
        let mut fall = vec![BigRational::from_integer(1.into())];
        for s in 0..i {
            let mut nf = vec![BigRational::zero(); fall.len() + 1];
            for (k, x) in fall.iter().enumerate() {
                nf[k + 1] += x;
                nf[k] -= x * BigRational::from_integer((s as i64).into());
            }
            fall = nf;
        }
        let mut shifted = vec![BigRational::zero(); q - i];
        shifted.extend(ci.iter().cloned());
        for (k, x) in fall.into_iter().enumerate() {
            let term: RatPoly = shifted.iter().map(|c| c * &x).collect();
            out[k] = ratpoly::add(&out[k], &term);
        }
    }
    RatOperator::new(Form::Theta, out).expect("nonzero")
}

fn multiplicity(c: &[f64], r: Complex64) -> usize {
    let t = taylor_at(c, r);
    let scale = t.iter().map(|x| x.norm()).fold(0.0, f64::max);
    t.iter().position(|x| x.norm() > 1e-7 * scale).unwrap_or(0).max(1)
}

/// Exponents α in the local variable t = 1/w (solutions behave like t^α):
/// the roots of sum_i [w^D] p_i(w) (-α)^i, D the top degree.
fn infinity_exponents(theta: &RatOperator) -> Vec<f64> {
    let dmax = theta.degree();
    let top: Vec<BigRational> = theta
        .coeffs()
        .iter()
        .map(|c| c.get(dmax).cloned().unwrap_or_else(BigRational::zero))
        .collect();
    let signed: Vec<Complex64> = ratpoly::to_f64_scaled(&top)
        .into_iter()
        .enumerate()
        .map(|(i, x)| Complex64::new(if i % 2 == 1 { -x } else { x }, 0.0))
        .collect();
    sorted_real(roots_complex(&signed))
}
