//! The two combinatorial inequalities behind the row-norm and multiplicity
//! factors, checked in exact arithmetic.

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// Squares of the three members of
/// `(sum_{i=d}^{r-1} C(i,d)^2)^{1/2} <= C(r-1,d) ((r+d)/(2d+1))^{1/2} <= (r/sqrt 3)^d r^{1/2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct AuxCheck {
    pub lhs_sq: Rational,
    pub mid_sq: Rational,
    pub rhs_sq: Rational,
}

impl AuxCheck {
    pub fn lhs(&self) -> f64 {
        self.lhs_sq.to_f64().sqrt()
    }

    pub fn mid(&self) -> f64 {
        self.mid_sq.to_f64().sqrt()
    }

    pub fn rhs(&self) -> f64 {
        self.rhs_sq.to_f64().sqrt()
    }

    pub fn holds(&self) -> bool {
        self.lhs_sq <= self.mid_sq && self.mid_sq <= self.rhs_sq
    }
}

fn binomial(n: u32, k: u32) -> Integer {
    Integer::from(Integer::binomial_u(n, k))
}

pub fn lemma_aux_check(d: u32, r: u32) -> Result<AuxCheck> {
    if d >= r {
        return Err(Error::Precondition(format!("need d <= r - 1, got d = {d}, r = {r}")));
    }
    let mut lhs = Integer::new();
    for i in d..r {
        lhs += binomial(i, d).square();
    }
    let c = binomial(r - 1, d);
    let mid = Rational::from((c.square() * (r + d), Integer::from(2 * d + 1)));
    let rhs = Rational::from((Integer::from(r).pow(2 * d) * r, Integer::from(3).pow(d)));
    Ok(AuxCheck { lhs_sq: Rational::from(lhs), mid_sq: mid, rhs_sq: rhs })
}

/// `prod m_i` against `3^{min(d, 2d-2r)/3}`, compared as `prod^3 <= 3^e`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicityCheck {
    pub product: Integer,
    /// `min(d, 2d - 2r)`.
    pub exponent: u32,
}

impl MultiplicityCheck {
    pub fn bound(&self) -> f64 {
        3f64.powf(self.exponent as f64 / 3.0)
    }

    pub fn holds(&self) -> bool {
        self.product.clone().pow(3u32) <= Integer::from(Integer::u_pow_u(3, self.exponent))
    }
}

/// `min(d, 2d - 2r)` for degree `d` and `r` distinct roots.
pub fn multiplicity_exponent(d: usize, r: usize) -> u32 {
    d.min(2 * d - 2 * r) as u32
}

pub fn multiplicity_product_bound(m: &[u32]) -> MultiplicityCheck {
    assert!(!m.is_empty() && m.iter().all(|&x| x > 0), "multiplicities must be positive");
    let d: usize = m.iter().map(|&x| x as usize).sum();
    let product = m.iter().fold(Integer::from(1), |acc, &x| acc * x);
    MultiplicityCheck { product, exponent: multiplicity_exponent(d, m.len()) }
}

/// Every composition of `d` (ordered sequences of positive parts).
pub fn compositions(d: u32) -> Vec<Vec<u32>> {
    if d == 0 {
        return Vec::new();
    }
    (0..1u64 << (d - 1))
        .map(|mask| {
            let mut parts = Vec::new();
            let mut run = 1;
            for bit in 0..d - 1 {
                if mask >> bit & 1 == 1 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            parts
        })
        .collect()
}
