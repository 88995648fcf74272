//! Exact positive values of the form `sqrt(q) * pi^(k/2) * G(1/2)^m`.
//!
//! Partition functions of the solvable models are rationals times half-integer
//! powers of `pi` (and, in intermediate steps, powers of the Barnes constant
//! `G(1/2)`). Tracking the square of the radical part keeps every operation
//! exact, so regression tests can compare such values bit for bit.

use std::fmt;

use super::{rat_pow, BigFloat, Rat};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactVal {
    /// Square of the rational-radical part; always positive.
    sq: Rat,
    /// Power of `pi` times two.
    pi2: i64,
    /// Power of the symbol `G(1/2)`.
    ghalf: i64,
}

impl ExactVal {
    pub fn one() -> Self {
        ExactVal {
            sq: Rat::from(1),
            pi2: 0,
            ghalf: 0,
        }
    }

    /// Embed a positive rational.
    pub fn from_rat(r: &Rat) -> Result<Self> {
        if *r <= 0 {
            return Err(Error::domain("ExactVal requires a positive rational"));
        }
        Ok(ExactVal {
            sq: Rat::from(r * r),
            pi2: 0,
            ghalf: 0,
        })
    }

    /// `base^(num/2)` for a positive rational base.
    pub fn from_rat_pow_half(base: &Rat, num: i64) -> Result<Self> {
        if *base <= 0 {
            return Err(Error::domain("ExactVal power of non-positive base"));
        }
        Ok(ExactVal {
            sq: rat_pow(base, num)?,
            pi2: 0,
            ghalf: 0,
        })
    }

    /// `pi^(num/2)`.
    pub fn pi_pow_half(num: i64) -> Self {
        ExactVal {
            sq: Rat::from(1),
            pi2: num,
            ghalf: 0,
        }
    }

    pub fn ghalf_symbol() -> Self {
        ExactVal {
            sq: Rat::from(1),
            pi2: 0,
            ghalf: 1,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        ExactVal {
            sq: Rat::from(&self.sq * &o.sq),
            pi2: self.pi2 + o.pi2,
            ghalf: self.ghalf + o.ghalf,
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        ExactVal {
            sq: Rat::from(&self.sq / &o.sq),
            pi2: self.pi2 - o.pi2,
            ghalf: self.ghalf - o.ghalf,
        }
    }

    pub fn pow_i(&self, k: i64) -> Result<Self> {
        Ok(ExactVal {
            sq: rat_pow(&self.sq, k)?,
            pi2: self.pi2 * k,
            ghalf: self.ghalf * k,
        })
    }

    pub fn ghalf_power(&self) -> i64 {
        self.ghalf
    }

    /// The value as an exact rational, if it is one.
    pub fn to_rat(&self) -> Option<Rat> {
        if self.pi2 != 0 || self.ghalf != 0 {
            return None;
        }
        let num = self.sq.numer().clone();
        let den = self.sq.denom().clone();
        if num.is_perfect_square() && den.is_perfect_square() {
            Some(Rat::from((num.sqrt(), den.sqrt())))
        } else {
            None
        }
    }

    /// Natural log at the thread-local working precision.
    pub fn ln(&self) -> Result<BigFloat> {
        let half = Rat::from((1, 2));
        let mut acc = BigFloat::from_rat(&self.sq).ln()?.mul_rat(&half);
        if self.pi2 != 0 {
            let lp = BigFloat::pi().ln()?;
            acc = acc.add(&lp.mul_i64(self.pi2).mul_rat(&half));
        }
        if self.ghalf != 0 {
            let lg = super::special::log_barnes_g(&BigFloat::from_rat(&half))?;
            acc = acc.add(&lg.mul_i64(self.ghalf));
        }
        Ok(acc)
    }

    pub fn to_bigfloat(&self) -> Result<BigFloat> {
        Ok(self.ln()?.exp())
    }
}

impl fmt::Display for ExactVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rat() {
            if self.pi2 == 0 && self.ghalf == 0 {
                return write!(f, "{r}");
            }
        }
        let mut parts: Vec<String> = Vec::new();
        if let Some(r) = {
            let num = self.sq.numer();
            let den = self.sq.denom();
            if num.is_perfect_square() && den.is_perfect_square() {
                Some(Rat::from((num.clone().sqrt(), den.clone().sqrt())))
            } else {
                None
            }
        } {
            if r != 1 || (self.pi2 == 0 && self.ghalf == 0) {
                parts.push(format!("{r}"));
            }
        } else {
            parts.push(format!("sqrt({})", self.sq));
        }
        if self.pi2 != 0 {
            if self.pi2 % 2 == 0 {
                parts.push(format!("pi^{}", self.pi2 / 2));
            } else {
                parts.push(format!("pi^({}/2)", self.pi2));
            }
        }
        if self.ghalf != 0 {
            parts.push(format!("G(1/2)^{}", self.ghalf));
        }
        write!(f, "{}", parts.join("*"))
    }
}
