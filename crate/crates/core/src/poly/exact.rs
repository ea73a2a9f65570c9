use std::fmt;

use rug::{Integer, Rational};

use super::gauss::GaussRat;
use crate::arith::ComplexInterval;
use crate::error::{Error, Result};

/// Univariate polynomial over Q(i), lowest degree first.
///
/// The coefficient vector never has a zero leading entry. The zero
/// polynomial is the empty vector and reports `degree() == None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactPoly {
    coeffs: Vec<GaussRat>,
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<GaussRat>) -> Self {
        while coeffs.last().is_some_and(GaussRat::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| GaussRat::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![GaussRat::zero(), GaussRat::one()])
    }

    /// `x - root`.
    pub fn linear(root: &GaussRat) -> Self {
        Self::new(vec![-root, GaussRat::one()])
    }

    /// `lead * prod (x - q)^m`.
    pub fn from_roots(lead: &GaussRat, roots: &[(GaussRat, u32)]) -> Self {
        let mut p = Self::constant(lead.clone());
        for (q, m) in roots {
            p = p.mul(&Self::linear(q).pow(*m));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> GaussRat {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&GaussRat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(GaussRat::is_one)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(GaussRat::is_real)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![GaussRat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `x^k * self`.
    fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![GaussRat::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self::new(c)
    }

    /// Euclidean division over Q(i). Returns `None` for a zero divisor.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lc_inv = d.leading()?.recip();
        let mut r = self.clone();
        let mut q = vec![GaussRat::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let t = r.leading().unwrap() * &lc_inv;
            let k = rd - dd;
            r = r.sub(&d.scale(&t).shift(k));
            q[k] = t;
        }
        Some((Self::new(q), r))
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d).expect("division by zero polynomial");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GaussRat::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, z: &GaussRat) -> GaussRat {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussRat::zero(), |acc, c| &(&acc * z) + c)
    }

    /// Horner evaluation in interval arithmetic; the result encloses the
    /// exact value of `self` at every point of `z`.
    pub fn eval_interval(&self, z: &ComplexInterval) -> ComplexInterval {
        let prec = z.prec();
        self.coeffs
            .iter()
            .rev()
            .fold(ComplexInterval::zero(prec), |acc, c| acc.mul(z).add(&c.to_interval(prec)))
    }

    /// Clears denominators and divides out the rational-integer content,
    /// leaving Gaussian-integer coefficients. Differs from `self` by a
    /// nonzero rational factor.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(Integer::from(1), |acc, c| acc.lcm(&c.denom_lcm()));
        let scaled: Vec<GaussRat> = self
            .coeffs
            .iter()
            .map(|c| c * &GaussRat::real(Rational::from(lcm.clone())))
            .collect();
        let content = scaled.iter().fold(Integer::new(), |acc, c| {
            acc.gcd(c.re.numer()).gcd(c.im.numer())
        });
        let inv = GaussRat::real(Rational::from((Integer::from(1), content)));
        Self::new(scaled.iter().map(|c| c * &inv).collect())
    }

    /// Sparse pseudo-remainder: `lc(b)^k * a = q * b + r` for some `k`.
    /// Stays inside Z[i] when both inputs do.
    fn pseudo_rem(a: &Self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-remainder by zero");
        let lb = b.leading().unwrap().clone();
        let mut r = a.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading().unwrap().clone();
            r = r.scale(&lb).sub(&b.scale(&lr).shift(dr - db));
        }
        r
    }

    /// Monic gcd over Q(i) by a primitive pseudo-remainder sequence.
    pub fn gcd(&self, o: &Self) -> Result<Self> {
        match (self.is_zero(), o.is_zero()) {
            (true, true) => return Err(Error::BothZero),
            (true, false) => return Ok(o.monic()),
            (false, true) => return Ok(self.monic()),
            _ => {}
        }
        let (mut a, mut b) = (self.primitive_part(), o.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let r = Self::pseudo_rem(&a, &b);
            if r.is_zero() {
                return Ok(b.monic());
            }
            a = b;
            b = r.primitive_part();
        }
    }

    /// Yun's square-free decomposition: `self = lc * prod f_i^{m_i}` with
    /// monic, square-free, pairwise coprime `f_i`, ordered by multiplicity.
    pub fn square_free_decomposition(&self) -> Result<Vec<(ExactPoly, u32)>> {
        match self.degree() {
            None | Some(0) => {
                return Err(Error::DegreeTooSmall {
                    min: 1,
                    got: self.degree().map_or("zero".into(), |d| d.to_string()),
                })
            }
            _ => {}
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df)?;
        let mut b = f.exact_div(&a0);
        let c = df.exact_div(&a0);
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1u32;
        while b.degree() != Some(0) {
            let a = b.gcd(&d)?;
            b = b.exact_div(&a);
            let c = d.exact_div(&a);
            d = c.sub(&b.derivative());
            if a.degree() != Some(0) {
                out.push((a, i));
            }
            i += 1;
        }
        Ok(out)
    }
}

impl fmt::Display for ExactPoly {
    /// Expanded text form accepted by the parser, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_real() && c.re < 0;
            let mag = if negative { -c } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> ExactPoly {
        ExactPoly::from_i64s(c)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[-1, 0, 1]).eval(&0.into()), GaussRat::from_i64(-1));
        assert_eq!(p(&[-1, 0, 1]).eval(&1.into()), GaussRat::zero());
        assert_eq!(p(&[1, -2, 0, 1]).eval(&2.into()), GaussRat::from_i64(5));
    }

    #[test]
    fn interval_eval_encloses() {
        let z = ComplexInterval::from_i64(128, 2, 0);
        let v = p(&[1, -2, 0, 1]).eval_interval(&z);
        assert!(v.re.contains(&rug::Float::with_val(128, 5)));
        assert!(v.im.contains_zero());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[-1, 0, 1]).derivative(), p(&[0, 2]));
        let d = p(&[5]).derivative();
        assert!(d.is_zero());
        assert_eq!(d.degree(), None);
        assert_eq!(p(&[1, -2, 0, 1]).derivative(), p(&[-2, 0, 3]));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[-1, 0, 1])).unwrap(), ExactPoly::one());
        // (x-1)^2 x and (x-1) x^2
        let a = p(&[0, 1, -2, 1]);
        let b = p(&[0, 0, -1, 1]);
        assert_eq!(a.gcd(&b).unwrap(), p(&[0, -1, 1]));
        assert_eq!(ExactPoly::zero().gcd(&ExactPoly::zero()), Err(Error::BothZero));
    }

    #[test]
    fn square_free_examples() {
        let sq = p(&[-1, 0, 1]).square_free_decomposition().unwrap();
        assert_eq!(sq, vec![(p(&[-1, 0, 1]), 1)]);
        let sq = p(&[0, 1, -2, 1]).square_free_decomposition().unwrap();
        assert_eq!(sq, vec![(ExactPoly::x(), 1), (p(&[-1, 1]), 2)]);
        let sq = p(&[-1, 3, -3, 1]).square_free_decomposition().unwrap();
        assert_eq!(sq, vec![(p(&[-1, 1]), 3)]);
        assert!(p(&[4]).square_free_decomposition().is_err());
    }

    #[test]
    fn gaussian_coefficients() {
        // (x - i)^2 (x + 1/2)
        let i = GaussRat::i();
        let half = GaussRat::from_fracs((-1, 2), (0, 1));
        let f = ExactPoly::from_roots(&GaussRat::from_i64(3), &[(i.clone(), 2), (half.clone(), 1)]);
        let sq = f.square_free_decomposition().unwrap();
        assert_eq!(sq, vec![(ExactPoly::linear(&half), 1), (ExactPoly::linear(&i), 2)]);
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(p(&[1, -2, 0, 3]).to_string(), "3*x^3 - 2*x + 1");
        let c = ExactPoly::new(vec![GaussRat::from_fracs((1, 2), (-1, 3)), GaussRat::i()]);
        assert_eq!(c.to_string(), "1*i*x + (1/2-1/3*i)");
        assert_eq!(ExactPoly::zero().to_string(), "0");
    }
}
