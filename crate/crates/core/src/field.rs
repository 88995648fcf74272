//! Coefficient field abstraction.
//!
//! The continuum-limit engines run the same formulas over exact rationals,
//! big floats, or truncated power series in `x`. Rational constants enter
//! only through [`Field::scale`] and [`Field::add_rat`], which keeps the
//! series order and float precision bookkeeping with the data rather than
//! with the constants.

use crate::error::{Error, Result};
use crate::numerics::{BigFloat, Rat};

pub trait Field: Clone + std::fmt::Debug + PartialEq {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Division; errors when `o` is not invertible (zero, or a series with
    /// vanishing constant term).
    fn div(&self, o: &Self) -> Result<Self>;
    /// Square root with positive leading part; errors when no exact value
    /// exists in the backend.
    fn sqrt(&self) -> Result<Self>;
    fn scale(&self, r: &Rat) -> Self;
    fn add_rat(&self, r: &Rat) -> Self;
    fn is_zero(&self) -> bool;
    /// Additive identity shaped like `self` (same order / precision).
    fn zero_like(&self) -> Self {
        self.scale(&Rat::from(0))
    }
    fn one_like(&self) -> Self {
        self.zero_like().add_rat(&Rat::from(1))
    }
}

impl Field for Rat {
    fn add(&self, o: &Self) -> Self {
        Rat::from(self + o)
    }
    fn sub(&self, o: &Self) -> Self {
        Rat::from(self - o)
    }
    fn mul(&self, o: &Self) -> Self {
        Rat::from(self * o)
    }
    fn neg(&self) -> Self {
        Rat::from(-self.clone())
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if *o == 0 {
            return Err(Error::domain("rational division by zero"));
        }
        Ok(Rat::from(self / o))
    }
    fn sqrt(&self) -> Result<Self> {
        if *self < 0 {
            return Err(Error::domain("sqrt of negative rational"));
        }
        let num = self.numer();
        let den = self.denom();
        if num.is_perfect_square() && den.is_perfect_square() {
            Ok(Rat::from((num.clone().sqrt(), den.clone().sqrt())))
        } else {
            Err(Error::domain(format!(
                "{self} has no exact rational square root"
            )))
        }
    }
    fn scale(&self, r: &Rat) -> Self {
        Rat::from(self * r)
    }
    fn add_rat(&self, r: &Rat) -> Self {
        Rat::from(self + r)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
}

impl Field for BigFloat {
    fn add(&self, o: &Self) -> Self {
        BigFloat::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        BigFloat::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        BigFloat::mul(self, o)
    }
    fn neg(&self) -> Self {
        BigFloat::neg(self)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::domain("big-float division by zero"));
        }
        Ok(BigFloat::div(self, o))
    }
    fn sqrt(&self) -> Result<Self> {
        BigFloat::sqrt(self)
    }
    fn scale(&self, r: &Rat) -> Self {
        self.mul_rat(r)
    }
    fn add_rat(&self, r: &Rat) -> Self {
        BigFloat::add_rat(self, r)
    }
    fn is_zero(&self) -> bool {
        BigFloat::is_zero(self)
    }
}
