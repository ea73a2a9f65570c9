//! Exact and numeric univariate polynomials.

mod exact;
mod gauss;
mod numeric;
pub mod parse;

pub use exact::ExactPoly;
pub use gauss::GaussRat;
pub use numeric::NumericPoly;
pub use parse::parse_polynomial;

use crate::arith::{ComplexInterval, Interval};

/// Either input mode accepted by the root finder and the bounds.
#[derive(Clone, Debug, PartialEq)]
pub enum Polynomial {
    Exact(ExactPoly),
    Numeric(NumericPoly),
}

impl Polynomial {
    pub fn degree(&self) -> Option<usize> {
        match self {
            Polynomial::Exact(p) => p.degree(),
            Polynomial::Numeric(p) => Some(p.degree()),
        }
    }

    pub fn as_exact(&self) -> Option<&ExactPoly> {
        match self {
            Polynomial::Exact(p) => Some(p),
            Polynomial::Numeric(_) => None,
        }
    }

    pub fn leading_interval(&self, prec: u32) -> ComplexInterval {
        match self {
            Polynomial::Exact(p) => p.leading().expect("nonzero polynomial").to_interval(prec),
            Polynomial::Numeric(p) => ComplexInterval::point(&p.leading().with_prec(prec)),
        }
    }

    pub fn leading_abs(&self, prec: u32) -> Interval {
        match self {
            Polynomial::Exact(p) => p.leading().expect("nonzero polynomial").abs_interval(prec),
            Polynomial::Numeric(_) => self.leading_interval(prec).abs(),
        }
    }

    /// Monic check; numeric polynomials must have leading coefficient exactly 1.
    pub fn is_monic(&self) -> bool {
        match self {
            Polynomial::Exact(p) => p.is_monic(),
            Polynomial::Numeric(p) => p.leading().re == 1 && p.leading().im.is_zero(),
        }
    }

    pub fn eval_interval(&self, z: &ComplexInterval) -> ComplexInterval {
        match self {
            Polynomial::Exact(p) => p.eval_interval(z),
            Polynomial::Numeric(p) => p.eval_interval(z),
        }
    }

    /// Text rendering; numeric coefficients are printed as decimals.
    pub fn render(&self) -> String {
        match self {
            Polynomial::Exact(p) => p.to_string(),
            Polynomial::Numeric(p) => {
                let terms: Vec<String> = p
                    .coeffs()
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, c)| !(c.re.is_zero() && c.im.is_zero()))
                    .map(|(k, c)| {
                        let (re, im) = c.to_f64_pair();
                        let coef = if im == 0.0 {
                            format!("({re:e})")
                        } else {
                            format!("({re:e}+{im:e}*i)")
                        };
                        match k {
                            0 => coef,
                            1 => format!("{coef}*x"),
                            _ => format!("{coef}*x^{k}"),
                        }
                    })
                    .collect();
                terms.join(" + ")
            }
        }
    }
}

impl From<ExactPoly> for Polynomial {
    fn from(p: ExactPoly) -> Self {
        Polynomial::Exact(p)
    }
}
