//! Certified real and complex interval arithmetic on top of MPFR.
//!
//! Every operation on [`Interval`] and [`ComplexInterval`] rounds its lower
//! endpoint toward -inf and its upper endpoint toward +inf, so the result
//! always encloses the exact value of the operation applied to any points of
//! the inputs. Undefined results (division by an interval containing zero,
//! `0 * inf`) collapse to the whole line, which downstream checks treat as
//! "not certified".
//!
//! [`ComplexFloat`] is the plain round-to-nearest complex type used by the
//! root iteration, where no enclosure is needed.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::{Round, Special};
use rug::ops::{AssignRound, Pow};
use rug::{Float, Rational};

fn down<T>(prec: u32, val: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, val, Round::Down).0
}

fn up<T>(prec: u32, val: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, val, Round::Up).0
}

fn min_f(a: Float, b: Float) -> Float {
    if b < a {
        b
    } else {
        a
    }
}

fn max_f(a: Float, b: Float) -> Float {
    if b > a {
        b
    } else {
        a
    }
}

/// A closed real interval `[lo, hi]` with MPFR endpoints.
#[derive(Clone, PartialEq)]
pub struct Interval {
    lo: Float,
    hi: Float,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.20e}, {:.20e}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

impl Interval {
    /// Builds `[lo, hi]`; NaN endpoints or `lo > hi` give the whole line.
    pub fn new(lo: Float, hi: Float) -> Self {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            let prec = lo.prec().max(hi.prec());
            return Self::whole(prec);
        }
        Self { lo, hi }
    }

    pub fn whole(prec: u32) -> Self {
        Self {
            lo: Float::with_val(prec, Special::NegInfinity),
            hi: Float::with_val(prec, Special::Infinity),
        }
    }

    pub fn point(x: Float) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_i64(prec: u32, x: i64) -> Self {
        Self::new(down(prec, x), up(prec, x))
    }

    pub fn from_f64(prec: u32, x: f64) -> Self {
        Self::new(down(prec, x), up(prec, x))
    }

    pub fn from_rational(prec: u32, q: &Rational) -> Self {
        Self::new(down(prec, q), up(prec, q))
    }

    /// Interval around `mid` of half-width `rad`.
    pub fn ball(mid: &Float, rad: &Float) -> Self {
        let prec = mid.prec();
        Self::new(down(prec, mid - rad), up(prec, mid + rad))
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_i64(prec, 0)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(prec, 1)
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    /// Midpoint rounded to nearest.
    pub fn mid(&self) -> Float {
        if !self.is_finite() {
            return Float::with_val(self.prec(), Special::Nan);
        }
        let mut m = Float::with_val(self.prec() + 1, &self.lo + &self.hi);
        m /= 2;
        Float::with_val(self.prec(), m)
    }

    /// Upper bound on the distance from [`Self::mid`] to either endpoint.
    pub fn rad(&self) -> Float {
        if !self.is_finite() {
            return Float::with_val(self.prec(), Special::Infinity);
        }
        let m = self.mid();
        let a = up(self.prec(), &self.hi - &m);
        let b = up(self.prec(), &m - &self.lo);
        max_f(a, b)
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0 && self.hi >= 0
    }

    pub fn contains(&self, x: &Float) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    /// Certainly strictly positive.
    pub fn is_positive(&self) -> bool {
        self.lo > 0
    }

    /// `self <= other` holds for every pair of points.
    pub fn certainly_le(&self, other: &Interval) -> bool {
        self.hi <= other.lo
    }

    /// `self < other` holds for every pair of points.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn add(&self, o: &Interval) -> Interval {
        let p = self.prec().max(o.prec());
        Interval::new(down(p, &self.lo + &o.lo), up(p, &self.hi + &o.hi))
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        let p = self.prec().max(o.prec());
        Interval::new(down(p, &self.lo - &o.hi), up(p, &self.hi - &o.lo))
    }

    pub fn neg(&self) -> Interval {
        Interval::new(Float::with_val(self.prec(), -&self.hi), Float::with_val(self.prec(), -&self.lo))
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let p = self.prec().max(o.prec());
        if self.lo >= 0 && o.lo >= 0 {
            return Interval::new(down(p, &self.lo * &o.lo), up(p, &self.hi * &o.hi));
        }
        let pairs = [
            (&self.lo, &o.lo),
            (&self.lo, &o.hi),
            (&self.hi, &o.lo),
            (&self.hi, &o.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let l = down(p, a * b);
            let h = up(p, a * b);
            if l.is_nan() || h.is_nan() {
                return Interval::whole(p);
            }
            lo = Some(match lo {
                None => l,
                Some(x) => min_f(x, l),
            });
            hi = Some(match hi {
                None => h,
                Some(x) => max_f(x, h),
            });
        }
        Interval::new(lo.unwrap(), hi.unwrap())
    }

    pub fn mul_i64(&self, k: i64) -> Interval {
        self.mul(&Interval::from_i64(self.prec(), k))
    }

    pub fn recip(&self) -> Interval {
        let p = self.prec();
        if self.contains_zero() {
            return Interval::whole(p);
        }
        Interval::new(down(p, 1 / &self.hi), up(p, 1 / &self.lo))
    }

    pub fn div(&self, o: &Interval) -> Interval {
        if o.contains_zero() {
            return Interval::whole(self.prec().max(o.prec()));
        }
        if o.lo > 0 && self.lo >= 0 {
            let p = self.prec().max(o.prec());
            return Interval::new(down(p, &self.lo / &o.hi), up(p, &self.hi / &o.lo));
        }
        self.mul(&o.recip())
    }

    pub fn sqr(&self) -> Interval {
        let p = self.prec();
        if self.lo >= 0 {
            Interval::new(down(p, self.lo.square_ref()), up(p, self.hi.square_ref()))
        } else if self.hi <= 0 {
            Interval::new(down(p, self.hi.square_ref()), up(p, self.lo.square_ref()))
        } else {
            let a = up(p, self.lo.square_ref());
            let b = up(p, self.hi.square_ref());
            Interval::new(Float::new(p), max_f(a, b))
        }
    }

    /// Square root; negative parts of the interval are clamped to zero.
    pub fn sqrt(&self) -> Interval {
        let p = self.prec();
        if self.hi < 0 {
            return Interval::whole(p);
        }
        let lo = if self.lo > 0 {
            down(p, self.lo.sqrt_ref())
        } else {
            Float::new(p)
        };
        Interval::new(lo, up(p, self.hi.sqrt_ref()))
    }

    pub fn abs(&self) -> Interval {
        if self.lo >= 0 {
            self.clone()
        } else if self.hi <= 0 {
            self.neg()
        } else {
            let m = max_f(Float::with_val(self.prec(), -&self.lo), self.hi.clone());
            Interval::new(Float::new(self.prec()), m)
        }
    }

    /// `max{1, x}` applied pointwise.
    pub fn max_one(&self) -> Interval {
        let p = self.prec();
        let one = Float::with_val(p, 1);
        Interval::new(max_f(one.clone(), self.lo.clone()), max_f(one, self.hi.clone()))
    }

    /// Integer power.
    pub fn powi(&self, n: i32) -> Interval {
        let p = self.prec();
        if n == 0 {
            return Interval::one(p);
        }
        if n < 0 {
            return self.powi(-n).recip();
        }
        let e = n as u32;
        let lo_p = |x: &Float| down(p, x.pow(e));
        let hi_p = |x: &Float| up(p, x.pow(e));
        if e % 2 == 1 || self.lo >= 0 {
            Interval::new(lo_p(&self.lo), hi_p(&self.hi))
        } else if self.hi <= 0 {
            Interval::new(lo_p(&self.hi), hi_p(&self.lo))
        } else {
            Interval::new(Float::new(p), max_f(hi_p(&self.lo), hi_p(&self.hi)))
        }
    }

    /// `x^(num/den)` for a nonnegative interval.
    pub fn pow_ratio(&self, num: i32, den: u32) -> Interval {
        assert!(den > 0, "zero root index");
        let p = self.prec();
        if self.lo < 0 {
            return Interval::whole(p);
        }
        let t = self.powi(num);
        if !t.is_finite() {
            return t;
        }
        Interval::new(down(p, t.lo.root_ref(den)), up(p, t.hi.root_ref(den)))
    }

    /// `x^y` for a strictly positive interval and an exact real exponent.
    pub fn pow_real(&self, y: &Float) -> Interval {
        let p = self.prec();
        if self.lo <= 0 {
            return Interval::whole(p);
        }
        if *y >= 0 {
            Interval::new(down(p, (&self.lo).pow(y)), up(p, (&self.hi).pow(y)))
        } else {
            Interval::new(down(p, (&self.hi).pow(y)), up(p, (&self.lo).pow(y)))
        }
    }

    /// Natural logarithm of a strictly positive interval.
    pub fn ln(&self) -> Interval {
        let p = self.prec();
        if self.lo <= 0 {
            return Interval::whole(p);
        }
        Interval::new(down(p, self.lo.ln_ref()), up(p, self.hi.ln_ref()))
    }

    /// Smallest interval containing both.
    pub fn hull(&self, o: &Interval) -> Interval {
        Interval::new(min_f(self.lo.clone(), o.lo.clone()), max_f(self.hi.clone(), o.hi.clone()))
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    /// Radius rounded up to `f64`.
    pub fn rad_f64(&self) -> f64 {
        self.rad().to_f64_round(Round::Up)
    }
}

impl<'a> Add for &'a Interval {
    type Output = Interval;
    fn add(self, o: &'a Interval) -> Interval {
        Interval::add(self, o)
    }
}

impl<'a> Sub for &'a Interval {
    type Output = Interval;
    fn sub(self, o: &'a Interval) -> Interval {
        Interval::sub(self, o)
    }
}

impl<'a> Mul for &'a Interval {
    type Output = Interval;
    fn mul(self, o: &'a Interval) -> Interval {
        Interval::mul(self, o)
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::neg(self)
    }
}

/// Rectangular complex interval `re + i*im`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn new(re: Interval, im: Interval) -> Self {
        Self { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Self::new(Interval::zero(prec), Interval::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::new(Interval::one(prec), Interval::zero(prec))
    }

    pub fn whole(prec: u32) -> Self {
        Self::new(Interval::whole(prec), Interval::whole(prec))
    }

    pub fn from_i64(prec: u32, re: i64, im: i64) -> Self {
        Self::new(Interval::from_i64(prec, re), Interval::from_i64(prec, im))
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Self::new(Interval::from_f64(prec, re), Interval::from_f64(prec, im))
    }

    pub fn from_rationals(prec: u32, re: &Rational, im: &Rational) -> Self {
        Self::new(Interval::from_rational(prec, re), Interval::from_rational(prec, im))
    }

    pub fn point(z: &ComplexFloat) -> Self {
        Self::new(Interval::point(z.re.clone()), Interval::point(z.im.clone()))
    }

    /// Square enclosing the disk of radius `rad` about `mid`.
    pub fn ball(mid: &ComplexFloat, rad: &Float) -> Self {
        Self::new(Interval::ball(&mid.re, rad), Interval::ball(&mid.im, rad))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn mid(&self) -> ComplexFloat {
        ComplexFloat::new(self.re.mid(), self.im.mid())
    }

    /// Upper bound on the radius of a disk about [`Self::mid`] containing the box.
    pub fn rad(&self) -> Float {
        let p = self.prec();
        let a = self.re.rad();
        let b = self.im.rad();
        let s = up(p, a.square_ref()) + up(p, b.square_ref());
        up(p, Float::with_val_round(p, s, Round::Up).0.sqrt_ref())
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), self.im.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.re.neg(), self.im.neg())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        Self::new(re, im)
    }

    pub fn scale(&self, k: &Interval) -> Self {
        Self::new(self.re.mul(k), self.im.mul(k))
    }

    /// `|z|^2`.
    pub fn norm_sqr(&self) -> Interval {
        self.re.sqr().add(&self.im.sqr())
    }

    pub fn abs(&self) -> Interval {
        self.norm_sqr().sqrt()
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        if n.contains_zero() {
            return Self::whole(self.prec());
        }
        Self::new(self.re.div(&n), self.im.neg().div(&n))
    }

    pub fn div(&self, o: &Self) -> Self {
        let n = o.norm_sqr();
        if n.contains_zero() {
            return Self::whole(self.prec().max(o.prec()));
        }
        let num = self.mul(&o.conj());
        Self::new(num.re.div(&n), num.im.div(&n))
    }

    pub fn powu(&self, n: u32) -> Self {
        let mut acc = Self::one(self.prec());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

impl<'a> Add for &'a ComplexInterval {
    type Output = ComplexInterval;
    fn add(self, o: &'a ComplexInterval) -> ComplexInterval {
        ComplexInterval::add(self, o)
    }
}

impl<'a> Sub for &'a ComplexInterval {
    type Output = ComplexInterval;
    fn sub(self, o: &'a ComplexInterval) -> ComplexInterval {
        ComplexInterval::sub(self, o)
    }
}

impl<'a> Mul for &'a ComplexInterval {
    type Output = ComplexInterval;
    fn mul(self, o: &'a ComplexInterval) -> ComplexInterval {
        ComplexInterval::mul(self, o)
    }
}

/// Complex number with round-to-nearest MPFR components.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexFloat {
    pub re: Float,
    pub im: Float,
}

impl ComplexFloat {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Self::new(Float::new(prec), Float::new(prec))
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Self::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn from_rationals(prec: u32, re: &Rational, im: &Rational) -> Self {
        Self::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::new(Float::with_val(prec, &self.re), Float::with_val(prec, &self.im))
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec();
        Self::new(Float::with_val(p, &self.re + &o.re), Float::with_val(p, &self.im + &o.im))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.prec();
        Self::new(Float::with_val(p, &self.re - &o.re), Float::with_val(p, &self.im - &o.im))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec();
        let ac = Float::with_val(p, &self.re * &o.re);
        let bd = Float::with_val(p, &self.im * &o.im);
        let ad = Float::with_val(p, &self.re * &o.im);
        let bc = Float::with_val(p, &self.im * &o.re);
        Self::new(ac - bd, ad + bc)
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn div(&self, o: &Self) -> Self {
        let p = self.prec();
        let n = o.norm_sqr();
        let conj = Self::new(o.re.clone(), Float::with_val(p, -&o.im));
        let num = self.mul(&conj);
        Self::new(Float::with_val(p, &num.re / &n), Float::with_val(p, &num.im / &n))
    }

    pub fn recip(&self) -> Self {
        Self::new(Float::with_val(self.prec(), 1), Float::new(self.prec())).div(self)
    }

    pub fn scale_f(&self, k: &Float) -> Self {
        let p = self.prec();
        Self::new(Float::with_val(p, &self.re * k), Float::with_val(p, &self.im * k))
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    #[test]
    fn sqrt_two_encloses() {
        let two = Interval::from_i64(P, 2);
        let s = two.sqrt();
        let sq = s.sqr();
        assert!(sq.contains(&Float::with_val(P, 2)));
        assert!(s.rad() < Float::with_val(P, 1e-37));
    }

    #[test]
    fn one_third_directed() {
        let third = Interval::one(P).div(&Interval::from_i64(P, 3));
        assert!(third.lo() < third.hi());
        let back = third.mul_i64(3);
        assert!(back.contains(&Float::with_val(P, 1)));
    }

    #[test]
    fn division_by_zero_interval_is_whole() {
        let z = Interval::new(Float::with_val(P, -1), Float::with_val(P, 1));
        assert!(!Interval::one(P).div(&z).is_finite());
        let cz = ComplexInterval::new(z.clone(), z);
        assert!(!ComplexInterval::one(P).div(&cz).is_finite());
    }

    #[test]
    fn mixed_sign_products() {
        let a = Interval::new(Float::with_val(P, -2), Float::with_val(P, 3));
        let b = Interval::new(Float::with_val(P, -5), Float::with_val(P, 1));
        let c = a.mul(&b);
        assert_eq!(c.lo().to_f64(), -15.0);
        assert_eq!(c.hi().to_f64(), 10.0);
        let s = a.sqr();
        assert_eq!(s.lo().to_f64(), 0.0);
        assert_eq!(s.hi().to_f64(), 9.0);
    }

    #[test]
    fn rational_powers() {
        // 3^(-1/3) * 3^(1/3) = 1
        let three = Interval::from_i64(P, 3);
        let a = three.pow_ratio(-1, 3);
        let b = three.pow_ratio(1, 3);
        assert!(a.mul(&b).contains(&Float::with_val(P, 1)));
        let e = three.pow_real(&Float::with_val(P, 2));
        assert!(e.contains(&Float::with_val(P, 9)));
        assert_eq!(Interval::from_i64(P, -2).powi(2).to_f64(), 4.0);
        assert_eq!(Interval::from_i64(P, 2).powi(-2).to_f64(), 0.25);
    }

    #[test]
    fn complex_division_roundtrip() {
        let a = ComplexInterval::from_i64(P, 3, -4);
        let b = ComplexInterval::from_i64(P, 1, 2);
        let q = a.div(&b);
        let back = q.mul(&b);
        assert!(back.re.contains(&Float::with_val(P, 3)));
        assert!(back.im.contains(&Float::with_val(P, -4)));
        assert!(a.abs().contains(&Float::with_val(P, 5)));
    }

    #[test]
    fn complex_float_ops() {
        let a = ComplexFloat::from_f64(P, 1.0, 1.0);
        let b = ComplexFloat::from_f64(P, 0.0, 2.0);
        let c = a.mul(&b);
        assert_eq!(c.to_f64_pair(), (-2.0, 2.0));
        let d = c.div(&b);
        assert_eq!(d.to_f64_pair(), (1.0, 1.0));
        assert_eq!(ComplexFloat::from_f64(P, 3.0, 4.0).abs().to_f64(), 5.0);
    }
}
