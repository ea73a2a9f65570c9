//! Mahler measure, discriminant and subdiscriminants.
//!
//! Each quantity has two independent routes: the Mahler measure from the
//! roots and from a quadrature of `log |P|` on the unit circle; the
//! subdiscriminant `|sDisc_{d-r}(P)|` from exact principal subresultant
//! coefficients of `(P, P')` and from the root product
//! `|a_d|^{2(r-1)} prod m_j prod_{i<j} |v_i - v_j|^2`.
//!
//! Only absolute values of (sub)discriminants are used downstream, so the
//! subresultant route is normalized as `|sRes_{d-r}(P, P')| / |a_d|`, which
//! agrees with the root product.

use rug::{Float, Rational};

use crate::arith::Interval;
use crate::error::{Error, Result};
use crate::poly::{ExactPoly, GaussRat, Polynomial};
use crate::roots::RootSet;

/// `|a_d| prod max{1, |v_j|}^{m_j}` with a certified enclosure.
pub fn mahler_measure(roots: &RootSet) -> Interval {
    roots
        .entries()
        .iter()
        .fold(roots.leading_abs().clone(), |acc, e| {
            acc.mul(&e.modulus().max_one().powi(e.multiplicity as i32))
        })
}

/// Trapezoidal estimate of `exp(mean log|P(e^{i theta})|)`.
#[derive(Clone, Debug, PartialEq)]
pub struct JensenEstimate {
    /// Estimate with `nodes` points.
    pub value: f64,
    /// Estimate with `2 * nodes` points.
    pub refined: f64,
    /// `|refined - value| / refined`.
    pub gap: f64,
}

/// Distance below which a root is considered to sit on the unit circle.
pub const JENSEN_CIRCLE_TOL: f64 = 1e-6;

fn jensen_mean(coeffs: &[(f64, f64)], nodes: usize) -> f64 {
    let mut acc = 0.0;
    for k in 0..nodes {
        let t = std::f64::consts::TAU * k as f64 / nodes as f64;
        let (c, s) = (t.cos(), t.sin());
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for &(a, b) in coeffs.iter().rev() {
            let nr = re * c - im * s + a;
            let ni = re * s + im * c + b;
            re = nr;
            im = ni;
        }
        acc += re.hypot(im).ln();
    }
    (acc / nodes as f64).exp()
}

/// Independent Mahler oracle by Jensen's formula. Refuses to run when a
/// root lies within [`JENSEN_CIRCLE_TOL`] of the unit circle, where the
/// integrand is singular.
pub fn mahler_measure_jensen(poly: &Polynomial, roots: &RootSet, nodes: usize) -> Result<JensenEstimate> {
    let prec = roots.precision();
    let one = Interval::one(prec);
    let tol = Interval::from_f64(prec, JENSEN_CIRCLE_TOL);
    for e in roots.entries() {
        let gap = e.modulus().sub(&one).abs();
        if !tol.certainly_le(&gap) {
            return Err(Error::JensenUnavailable { tol: JENSEN_CIRCLE_TOL });
        }
    }
    let coeffs: Vec<(f64, f64)> = match poly {
        Polynomial::Exact(p) => p.coeffs().iter().map(|c| (c.re.to_f64(), c.im.to_f64())).collect(),
        Polynomial::Numeric(p) => p.coeffs().iter().map(|c| c.to_f64_pair()).collect(),
    };
    let nodes = nodes.max(1);
    let value = jensen_mean(&coeffs, nodes);
    let refined = jensen_mean(&coeffs, 2 * nodes);
    Ok(JensenEstimate { value, refined, gap: ((refined - value) / refined).abs() })
}

/// Root-product route: `(|a_d|^{r-1} (prod m_j)^{1/2} prod_{i<j} |v_i - v_j|)^2`.
/// Empty products are 1.
pub fn sdisc_abs_from_roots(roots: &RootSet) -> Interval {
    let prec = roots.precision();
    let r = roots.distinct_count();
    let mut acc = roots.leading_abs().powi(2 * (r as i32 - 1));
    let mprod: i64 = roots.multiplicities().iter().map(|&m| m as i64).product();
    acc = acc.mul(&Interval::from_i64(prec, mprod));
    for i in 0..r {
        for j in i + 1..r {
            acc = acc.mul(&roots.value(i).sub(roots.value(j)).norm_sqr());
        }
    }
    acc
}

fn pow_signed(x: &GaussRat, e: i64) -> GaussRat {
    if e >= 0 {
        x.pow(e as u32)
    } else {
        x.pow((-e) as u32).recip()
    }
}

/// Last nonzero principal subresultant coefficient of `(p, q)` by the
/// subresultant pseudo-remainder sequence, returned as `(k, sres_k)` up to
/// sign. `k` is the degree of `gcd(p, q)`; every `sres_j` with `j < k`
/// vanishes. Requires `deg p >= deg q` and `q != 0`.
pub fn last_principal_subresultant(p: &ExactPoly, q: &ExactPoly) -> (usize, GaussRat) {
    let mut a = p.clone();
    let mut b = q.clone();
    assert!(a.degree() >= b.degree() && !b.is_zero(), "need deg p >= deg q, q != 0");
    let mut g = GaussRat::one();
    let mut h = GaussRat::one();
    loop {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = (da - db) as i64;
        let lb = b.leading().unwrap().clone();
        let (_, rem) = a.div_rem(&b).unwrap();
        if rem.is_zero() {
            let s = &lb.pow(delta as u32) * &pow_signed(&h, 1 - delta);
            return (db, s);
        }
        let prem = rem.scale(&lb.pow(delta as u32 + 1));
        let divisor = &g * &pow_signed(&h, delta);
        a = b;
        b = prem.scale(&divisor.recip());
        g = a.leading().unwrap().clone();
        h = &g.pow(delta as u32) * &pow_signed(&h, 1 - delta);
    }
}

/// Fraction-free (Bareiss) determinant over Q(i).
pub fn determinant(mut m: Vec<Vec<GaussRat>>) -> GaussRat {
    let n = m.len();
    if n == 0 {
        return GaussRat::one();
    }
    let mut sign = false;
    let mut prev = GaussRat::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return GaussRat::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = &t / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// `j`-th principal subresultant coefficient of `(p, q)` as the determinant
/// of the `(m + n - 2j)`-square Sylvester submatrix (rows `x^s p` then
/// `x^s q`, columns by degree from `m + n - j - 1` down to `j`).
pub fn principal_subresultant_det(p: &ExactPoly, q: &ExactPoly, j: usize) -> GaussRat {
    let m = p.degree().expect("nonzero p");
    let n = q.degree().expect("nonzero q");
    assert!(j <= n.min(m), "subresultant index out of range");
    if j == n && m > n {
        return q.leading().unwrap().pow((m - n) as u32);
    }
    let size = m + n - 2 * j;
    let top = m + n - j - 1;
    let mut rows = Vec::with_capacity(size);
    for (poly, count) in [(p, n - j), (q, m - j)] {
        for s in (0..count).rev() {
            let row = (0..size)
                .map(|c| {
                    let deg = top - c;
                    if deg >= s && deg - s <= poly.degree().unwrap() {
                        poly.coeff(deg - s)
                    } else {
                        GaussRat::zero()
                    }
                })
                .collect();
            rows.push(row);
        }
    }
    determinant(rows)
}

/// The subdiscriminant `sDisc_{d-r}(P)` computed exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactSubdiscriminant {
    /// `d - r`.
    pub index: usize,
    /// `sRes_{d-r}(P, P') / a_d` (sign not normalized).
    pub value: GaussRat,
    /// `|value|^2`, exact.
    pub abs_sq: Rational,
}

impl ExactSubdiscriminant {
    pub fn abs_interval(&self, prec: u32) -> Interval {
        Interval::from_rational(prec, &self.abs_sq).sqrt()
    }

    /// Square root of the absolute value, `|sDisc|^{1/2}`.
    pub fn sqrt_abs_interval(&self, prec: u32) -> Interval {
        Interval::from_rational(prec, &self.abs_sq).pow_ratio(1, 4)
    }
}

/// Subresultant route for `|sDisc_{d-r}(P)|`, with `d - r` read off the
/// sequence as the index of the first nonvanishing principal coefficient.
pub fn sdisc_from_subresultants(p: &ExactPoly) -> Result<ExactSubdiscriminant> {
    let d = p.degree().ok_or(Error::DegreeTooSmall { min: 1, got: "zero".into() })?;
    if d == 0 {
        return Err(Error::DegreeTooSmall { min: 1, got: "0".into() });
    }
    let (index, sres) = last_principal_subresultant(p, &p.derivative());
    let value = &sres / p.leading().unwrap();
    let abs_sq = value.norm_sqr();
    Ok(ExactSubdiscriminant { index, value, abs_sq })
}

/// Classical discriminant `(-1)^{d(d-1)/2} Res(P, P') / a_d`.
pub fn discriminant(p: &ExactPoly) -> Result<GaussRat> {
    let d = p.degree().unwrap_or(0);
    if d < 2 {
        return Err(Error::DegreeTooSmall { min: 2, got: p.degree().map_or("zero".into(), |d| d.to_string()) });
    }
    let res = principal_subresultant_det(p, &p.derivative(), 0);
    let v = &res / p.leading().unwrap();
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -&v } else { v })
}

/// Every quantity the bounds consume.
#[derive(Clone, Debug)]
pub struct InvariantBundle {
    pub mahler: Interval,
    /// `|Disc(P)|`; zero when P has a repeated root.
    pub disc_abs: Interval,
    /// `|sDisc_{d-r}(P)|`.
    pub sdisc_abs: Interval,
    /// `|sDisc_{d-r}(P)|^{1/2}`.
    pub sdisc_sqrt: Interval,
    pub sdisc_index: usize,
    /// Present for exact input.
    pub exact_sdisc: Option<ExactSubdiscriminant>,
    /// The root-product route, kept for cross-checking.
    pub sdisc_abs_roots: Interval,
    pub degree: usize,
    pub distinct: usize,
}

/// Computes the bundle. For exact input the subdiscriminant and `d - r`
/// come from the subresultant sequence and must agree with the
/// multiplicity structure of `roots`.
pub fn compute_invariants(poly: &Polynomial, roots: &RootSet) -> Result<InvariantBundle> {
    let prec = roots.precision();
    let d = roots.total_degree();
    let r = roots.distinct_count();
    let mahler = mahler_measure(roots);
    let from_roots = sdisc_abs_from_roots(roots);
    let (sdisc_abs, sdisc_sqrt, exact) = match poly {
        Polynomial::Exact(p) => {
            let s = sdisc_from_subresultants(p)?;
            if s.index != d - r {
                return Err(Error::Precondition(format!(
                    "subresultant index {} disagrees with d - r = {}",
                    s.index,
                    d - r
                )));
            }
            (s.abs_interval(prec), s.sqrt_abs_interval(prec), Some(s))
        }
        Polynomial::Numeric(_) => (from_roots.clone(), from_roots.sqrt(), None),
    };
    let disc_abs = if r == d { sdisc_abs.clone() } else { Interval::zero(prec) };
    Ok(InvariantBundle {
        mahler,
        disc_abs,
        sdisc_abs,
        sdisc_sqrt,
        sdisc_index: d - r,
        exact_sdisc: exact,
        sdisc_abs_roots: from_roots,
        degree: d,
        distinct: r,
    })
}

/// `|a - b| <= rad(a) + rad(b)`: the two enclosures overlap.
pub fn routes_agree(a: &Interval, b: &Interval) -> bool {
    a.overlaps(b)
}

/// Relative gap between midpoints.
pub fn relative_gap(a: &Interval, b: &Interval) -> f64 {
    let (x, y) = (a.mid(), b.mid());
    let diff = Float::with_val(x.prec(), &x - &y).abs();
    let scale = if x.is_zero() { Float::with_val(x.prec(), 1) } else { x.abs() };
    (diff / scale).to_f64()
}
