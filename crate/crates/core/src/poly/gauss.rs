use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::{Integer, Rational};

use crate::arith::{ComplexFloat, ComplexInterval, Interval};

/// Exact element of Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRat {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self::new(re, Rational::new())
    }

    pub fn from_i64(re: i64) -> Self {
        Self::real(Rational::from(re))
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(Rational::from(re), Rational::from(im))
    }

    pub fn from_fracs(re: (i64, i64), im: (i64, i64)) -> Self {
        Self::new(Rational::from(re), Rational::from(im))
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re == 1
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), Rational::from(-&self.im))
    }

    /// `|z|^2`, exact.
    pub fn norm_sqr(&self) -> Rational {
        Rational::from(self.re.square_ref()) + Rational::from(self.im.square_ref())
    }

    /// Panics on zero.
    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "reciprocal of zero");
        Self::new(Rational::from(&self.re / &n), Rational::from(-&self.im) / &n)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Least common multiple of the two denominators.
    pub fn denom_lcm(&self) -> Integer {
        self.re.denom().clone().lcm(self.im.denom())
    }

    pub fn to_complex_float(&self, prec: u32) -> ComplexFloat {
        ComplexFloat::from_rationals(prec, &self.re, &self.im)
    }

    pub fn to_interval(&self, prec: u32) -> ComplexInterval {
        ComplexInterval::from_rationals(prec, &self.re, &self.im)
    }

    /// Enclosure of `|z|`.
    pub fn abs_interval(&self, prec: u32) -> Interval {
        Interval::from_rational(prec, &self.norm_sqr()).sqrt()
    }
}

impl From<i64> for GaussRat {
    fn from(x: i64) -> Self {
        Self::from_i64(x)
    }
}

impl From<Rational> for GaussRat {
    fn from(x: Rational) -> Self {
        Self::real(x)
    }
}

impl<'a> Add for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, o: &'a GaussRat) -> GaussRat {
        GaussRat::new(Rational::from(&self.re + &o.re), Rational::from(&self.im + &o.im))
    }
}

impl<'a> Sub for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &'a GaussRat) -> GaussRat {
        GaussRat::new(Rational::from(&self.re - &o.re), Rational::from(&self.im - &o.im))
    }
}

impl<'a> Mul for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &'a GaussRat) -> GaussRat {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRat::real(Rational::from(&self.re * &o.re));
        }
        let ac = Rational::from(&self.re * &o.re);
        let bd = Rational::from(&self.im * &o.im);
        let ad = Rational::from(&self.re * &o.im);
        let bc = Rational::from(&self.im * &o.re);
        GaussRat::new(ac - bd, ad + bc)
    }
}

impl<'a> Div for &'a GaussRat {
    type Output = GaussRat;
    fn div(self, o: &'a GaussRat) -> GaussRat {
        if o.im.is_zero() {
            assert!(!o.re.is_zero(), "division by zero");
            return GaussRat::new(Rational::from(&self.re / &o.re), Rational::from(&self.im / &o.re));
        }
        self * &o.recip()
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(Rational::from(-&self.re), Rational::from(-&self.im))
    }
}

fn fmt_rational(q: &Rational) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for GaussRat {
    /// Renders in the polynomial text syntax: `3`, `-1/2`, `2*i`, `(1/2+3*i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}*i", fmt_rational(&self.im)),
            (false, false) => {
                let sign = if self.im < 0 { "-" } else { "+" };
                let im_abs = Rational::from(self.im.abs_ref());
                write!(f, "({}{}{}*i)", fmt_rational(&self.re), sign, fmt_rational(&im_abs))
            }
        }
    }
}
