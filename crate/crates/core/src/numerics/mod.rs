//! Scalar backends: exact rationals and arbitrary-precision big floats.
//!
//! The float backend wraps MPFR via `rug`. Every [`BigFloat`] carries its own
//! precision; binary operations round to the larger operand precision, so
//! precision flows from the data. Conversions from exact rationals pick up
//! the thread-local working precision (default 50 decimal digits), settable
//! with [`set_working_digits`].

mod exact;
pub mod special;

pub use exact::ExactVal;

use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Exact rational scalar (arbitrary-precision integer numerator/denominator).
pub type Rat = Rational;

pub const DEFAULT_DIGITS: u32 = 50;

thread_local! {
    static WORKING_DIGITS: Cell<u32> = const { Cell::new(DEFAULT_DIGITS) };
}

/// Set the thread-local working precision in decimal digits.
pub fn set_working_digits(digits: u32) {
    WORKING_DIGITS.with(|d| d.set(digits.max(2)));
}

/// Current thread-local working precision in decimal digits.
pub fn working_digits() -> u32 {
    WORKING_DIGITS.with(|d| d.get())
}

/// Run `f` with the working precision temporarily set to `digits`.
pub fn with_digits<T>(digits: u32, f: impl FnOnce() -> T) -> T {
    let old = working_digits();
    set_working_digits(digits);
    let out = f();
    set_working_digits(old);
    out
}

/// Binary precision that comfortably holds `digits` decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 32
}

fn working_bits() -> u32 {
    bits_for_digits(working_digits())
}

/// Arbitrary-precision real scalar.
#[derive(Clone, PartialEq)]
pub struct BigFloat(Float);

impl BigFloat {
    pub fn from_float(f: Float) -> Self {
        BigFloat(f)
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    /// Zero at the thread-local working precision.
    pub fn zero() -> Self {
        BigFloat(Float::with_val(working_bits(), 0))
    }

    pub fn from_i64(v: i64) -> Self {
        BigFloat(Float::with_val(working_bits().max(66), v))
    }

    /// Round a rational to the thread-local working precision.
    pub fn from_rat(r: &Rat) -> Self {
        BigFloat(Float::with_val(working_bits(), r))
    }

    pub fn from_rat_digits(r: &Rat, digits: u32) -> Self {
        BigFloat(Float::with_val(bits_for_digits(digits), r))
    }

    pub fn from_f64(v: f64) -> Self {
        BigFloat(Float::with_val(working_bits(), v))
    }

    pub fn pi() -> Self {
        BigFloat(Float::with_val(working_bits(), Constant::Pi))
    }

    pub fn euler_gamma() -> Self {
        BigFloat(Float::with_val(working_bits(), Constant::Euler))
    }

    /// Precision of this value in decimal digits (rounded down).
    pub fn precision_digits(&self) -> u32 {
        (self.0.prec() as f64 / std::f64::consts::LOG2_10).floor() as u32
    }

    pub fn prec_bits(&self) -> u32 {
        self.0.prec()
    }

    fn join_prec(&self, other: &Self) -> u32 {
        self.0.prec().max(other.0.prec())
    }

    pub fn add(&self, o: &Self) -> Self {
        BigFloat(Float::with_val(self.join_prec(o), &self.0 + &o.0))
    }

    pub fn sub(&self, o: &Self) -> Self {
        BigFloat(Float::with_val(self.join_prec(o), &self.0 - &o.0))
    }

    pub fn mul(&self, o: &Self) -> Self {
        BigFloat(Float::with_val(self.join_prec(o), &self.0 * &o.0))
    }

    pub fn div(&self, o: &Self) -> Self {
        BigFloat(Float::with_val(self.join_prec(o), &self.0 / &o.0))
    }

    pub fn neg(&self) -> Self {
        BigFloat(Float::with_val(self.0.prec(), -&self.0))
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        BigFloat(Float::with_val(self.0.prec(), &self.0 * k))
    }

    pub fn div_u32(&self, k: u32) -> Self {
        BigFloat(Float::with_val(self.0.prec(), &self.0 / k))
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        BigFloat(Float::with_val(self.0.prec(), &self.0 * r))
    }

    pub fn add_rat(&self, r: &Rat) -> Self {
        BigFloat(Float::with_val(self.0.prec(), &self.0 + r))
    }

    pub fn abs(&self) -> Self {
        BigFloat(Float::with_val(self.0.prec(), self.0.abs_ref()))
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.0.is_sign_negative() && !self.0.is_zero() {
            return Err(Error::domain("sqrt of negative big-float"));
        }
        Ok(BigFloat(Float::with_val(self.0.prec(), self.0.sqrt_ref())))
    }

    pub fn ln(&self) -> Result<Self> {
        if self.0 <= 0 {
            return Err(Error::domain("log of non-positive big-float"));
        }
        Ok(BigFloat(Float::with_val(self.0.prec(), self.0.ln_ref())))
    }

    pub fn exp(&self) -> Self {
        BigFloat(Float::with_val(self.0.prec(), self.0.exp_ref()))
    }

    pub fn sin(&self) -> Self {
        BigFloat(Float::with_val(self.0.prec(), self.0.sin_ref()))
    }

    pub fn cos(&self) -> Self {
        BigFloat(Float::with_val(self.0.prec(), self.0.cos_ref()))
    }

    pub fn sinh(&self) -> Self {
        BigFloat(Float::with_val(self.0.prec(), self.0.sinh_ref()))
    }

    pub fn cosh(&self) -> Self {
        BigFloat(Float::with_val(self.0.prec(), self.0.cosh_ref()))
    }

    pub fn tanh(&self) -> Self {
        BigFloat(Float::with_val(self.0.prec(), self.0.tanh_ref()))
    }

    pub fn atan2(&self, x: &Self) -> Self {
        BigFloat(Float::with_val(self.join_prec(x), self.0.atan2_ref(&x.0)))
    }

    pub fn pow_i(&self, k: i32) -> Self {
        BigFloat(Float::with_val(self.0.prec(), (&self.0).pow(k)))
    }

    pub fn pow(&self, e: &Self) -> Result<Self> {
        if self.0 <= 0 {
            return Err(Error::domain("pow of non-positive base"));
        }
        Ok(BigFloat(Float::with_val(self.join_prec(e), (&self.0).pow(&e.0))))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_sign_positive() && !self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_integer(&self) -> Option<Integer> {
        self.0.to_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    /// Base-10 order of magnitude; `None` for zero.
    pub fn log10_mag(&self) -> Option<f64> {
        if self.0.is_zero() {
            return None;
        }
        let exp = self.0.get_exp()? as f64;
        Some(exp * std::f64::consts::LOG10_2)
    }

    /// Decimal string with `digits` significant digits.
    pub fn to_decimal(&self, digits: u32) -> String {
        let s = self.0.to_string_radix(10, Some(digits as usize));
        s
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.to_string_radix(10, Some(20)))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.to_string_radix(10, None))
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

/// Complex value over a pair of big floats. Only the field operations and the
/// principal exp/log/sqrt are provided; weights stay real on the contours we
/// support, so this is all the resolvent path needs.
#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Complex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Complex { re, im }
    }

    pub fn from_real(re: BigFloat) -> Self {
        let im = re.mul_i64(0);
        Complex { re, im }
    }

    pub fn from_rat_pair(re: &Rat, im: &Rat) -> Self {
        Complex {
            re: BigFloat::from_rat(re),
            im: BigFloat::from_rat(im),
        }
    }

    pub fn zero() -> Self {
        Complex {
            re: BigFloat::zero(),
            im: BigFloat::zero(),
        }
    }

    pub fn one() -> Self {
        Complex {
            re: BigFloat::from_i64(1),
            im: BigFloat::zero(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Complex::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Complex::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn neg(&self) -> Self {
        Complex::new(self.re.neg(), self.im.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Complex::new(
            self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        )
    }

    pub fn mul_real(&self, s: &BigFloat) -> Self {
        Complex::new(self.re.mul(s), self.im.mul(s))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        let d = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        if d.is_zero() {
            return Err(Error::domain("complex division by zero"));
        }
        let num = self.mul(&o.conj());
        Ok(Complex::new(num.re.div(&d), num.im.div(&d)))
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), self.im.neg())
    }

    pub fn abs(&self) -> BigFloat {
        self.re
            .mul(&self.re)
            .add(&self.im.mul(&self.im))
            .sqrt()
            .expect("non-negative")
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Result<Self> {
        let r = self.abs();
        if r.is_zero() {
            return Err(Error::domain("complex log of zero"));
        }
        Ok(Complex::new(r.ln()?, self.im.atan2(&self.re)))
    }

    pub fn exp(&self) -> Self {
        let m = self.re.exp();
        Complex::new(m.mul(&self.im.cos()), m.mul(&self.im.sin()))
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Result<Self> {
        if self.im.is_zero() && !self.re.is_positive() && !self.re.is_zero() {
            let m = self.re.neg().sqrt()?;
            return Ok(Complex::new(self.re.mul_i64(0), m));
        }
        if self.is_real() {
            return Ok(Complex::new(self.re.sqrt()?, self.im.clone()));
        }
        let half = Rat::from((1, 2));
        let l = self.ln()?;
        Ok(Complex::new(l.re.mul_rat(&half), l.im.mul_rat(&half)).exp())
    }

    pub fn pow_real(&self, e: &BigFloat) -> Result<Self> {
        let l = self.ln()?;
        Ok(Complex::new(l.re.mul(e), l.im.mul(e)).exp())
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?} i)", self.re, self.im)
    }
}

/// Strict parser for signed `p` or `p/q` rational strings.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let t = s.trim();
    let ok = !t.is_empty()
        && t.chars().all(|c| c.is_ascii_digit() || c == '/' || c == '-' || c == '+')
        && t.matches('/').count() <= 1;
    if !ok {
        return Err(Error::Parse(format!("invalid rational string: {s:?}")));
    }
    t.parse::<Rat>()
        .map_err(|e| Error::Parse(format!("invalid rational string {s:?}: {e}")))
}

/// n! as an exact integer.
pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// Binomial coefficient C(n, k) as an exact integer.
pub fn binomial(n: u64, k: u64) -> Integer {
    if k > n {
        return Integer::from(0);
    }
    let k = k.min(n - k);
    let mut acc = Integer::from(1);
    for i in 0..k {
        acc *= n - i;
        acc = acc / Integer::from(i + 1);
    }
    acc
}

/// r^k for signed integer k.
pub fn rat_pow(r: &Rat, k: i64) -> Result<Rat> {
    if k >= 0 {
        Ok(r.clone().pow(k as u32))
    } else {
        if *r == 0 {
            return Err(Error::domain("0 raised to negative power"));
        }
        Ok(Rat::from(r.clone().pow((-k) as u32).recip_ref()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn working_precision_roundtrip() {
        assert_eq!(working_digits(), DEFAULT_DIGITS);
        let got = with_digits(80, working_digits);
        assert_eq!(got, 80);
        assert_eq!(working_digits(), DEFAULT_DIGITS);
    }

    #[test]
    fn bigfloat_promotes_precision() {
        let a = BigFloat::from_rat_digits(&Rat::from((1, 3)), 100);
        let b = BigFloat::from_i64(2);
        let c = a.mul(&b);
        assert!(c.prec_bits() >= bits_for_digits(100));
    }

    #[test]
    fn complex_field_ops() {
        let z = Complex::from_rat_pair(&Rat::from(3), &Rat::from(4));
        assert_eq!(z.abs().to_f64(), 5.0);
        let w = z.div(&z).unwrap();
        assert!(w.sub(&Complex::one()).abs().to_f64() < 1e-40);
        let l = z.ln().unwrap().exp();
        assert!(l.sub(&z).abs().to_f64() < 1e-40);
    }

    #[test]
    fn complex_sqrt_branches() {
        let m = Complex::from_rat_pair(&Rat::from(-4), &Rat::from(0));
        let s = m.sqrt().unwrap();
        assert!(s.re.is_zero());
        assert_eq!(s.im.to_f64(), 2.0);
        let z = Complex::from_rat_pair(&Rat::from(0), &Rat::from(2));
        let s = z.sqrt().unwrap();
        assert!((s.re.to_f64() - 1.0).abs() < 1e-30 && (s.im.to_f64() - 1.0).abs() < 1e-30);
    }

    #[test]
    fn rational_parsing_is_strict() {
        assert_eq!(parse_rational("-3/4").unwrap(), Rat::from((-3, 4)));
        assert_eq!(parse_rational("17").unwrap(), Rat::from(17));
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("2/3/4").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn binomial_matches_factorials() {
        for n in 0..12u64 {
            for k in 0..=n {
                let via_fact = Rat::from((
                    factorial(n as u32),
                    factorial(k as u32) * factorial((n - k) as u32),
                ));
                assert_eq!(Rat::from(binomial(n, k)), via_fact);
            }
        }
    }
}
