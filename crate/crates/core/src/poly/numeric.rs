use rug::Float;

use crate::arith::{ComplexFloat, ComplexInterval, Interval};
use crate::error::{Error, Result};

/// Polynomial with floating-point complex coefficients at a fixed precision.
///
/// The coefficients are taken as exact binary values; interval evaluation
/// encloses the polynomial with exactly those coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericPoly {
    coeffs: Vec<ComplexFloat>,
    prec: u32,
}

impl NumericPoly {
    /// Trailing zero coefficients are dropped; a zero polynomial is rejected.
    pub fn new(mut coeffs: Vec<ComplexFloat>, prec: u32) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.re.is_zero() && c.im.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::DegreeTooSmall { min: 0, got: "zero".into() });
        }
        let coeffs = coeffs.into_iter().map(|c| c.with_prec(prec)).collect();
        Ok(Self { coeffs, prec })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn coeffs(&self) -> &[ComplexFloat] {
        &self.coeffs
    }

    pub fn leading(&self) -> &ComplexFloat {
        self.coeffs.last().unwrap()
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.with_prec(prec)).collect(),
            prec,
        }
    }

    pub fn eval(&self, z: &ComplexFloat) -> ComplexFloat {
        let z = z.with_prec(self.prec);
        self.coeffs
            .iter()
            .rev()
            .fold(ComplexFloat::zero(self.prec), |acc, c| acc.mul(&z).add(c))
    }

    pub fn eval_interval(&self, z: &ComplexInterval) -> ComplexInterval {
        let prec = z.prec();
        self.coeffs.iter().rev().fold(ComplexInterval::zero(prec), |acc, c| {
            acc.mul(z).add(&ComplexInterval::point(&c.with_prec(prec)))
        })
    }

    /// Formal derivative; `None` for constants.
    pub fn derivative(&self) -> Option<Self> {
        if self.coeffs.len() < 2 {
            return None;
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale_f(&Float::with_val(self.prec, k)))
            .collect();
        Some(Self { coeffs, prec: self.prec })
    }

    pub fn max_coeff_abs(&self) -> Float {
        self.coeffs
            .iter()
            .map(ComplexFloat::abs)
            .fold(Float::new(self.prec), |a, b| if b > a { b } else { a })
    }

    pub fn leading_abs(&self) -> Interval {
        ComplexInterval::point(self.leading()).abs()
    }
}
