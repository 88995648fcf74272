//! Truncated power series in the scaled index `x`, log-augmented series and
//! Laurent tails.
//!
//! A [`TruncatedSeries`] holds coefficients `c_0..c_K` of `sum c_j x^j`; the
//! truncation order `K` is the highest kept exponent. Arithmetic never
//! silently extends `K`: binary operations truncate to the smaller operand
//! order. Over the rational backend every operation is exact.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::numerics::Rat;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<C: Field> {
    c: Vec<C>,
}

impl<C: Field> TruncatedSeries<C> {
    /// Series from coefficients, padded or truncated to order `order`.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least one coefficient");
        let zero = coeffs[0].zero_like();
        coeffs.resize(order + 1, zero);
        TruncatedSeries { c: coeffs }
    }

    /// Constant series `value` at the given order.
    pub fn constant(value: C, order: usize) -> Self {
        TruncatedSeries::new(vec![value], order)
    }

    pub fn zero_series(sample: &C, order: usize) -> Self {
        TruncatedSeries::constant(sample.zero_like(), order)
    }

    /// The identity series `x`.
    pub fn x(sample: &C, order: usize) -> Self {
        let mut s = Self::zero_series(sample, order);
        if order >= 1 {
            s.c[1] = sample.one_like();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeff(&self, j: usize) -> C {
        if j < self.c.len() {
            self.c[j].clone()
        } else {
            self.c[0].zero_like()
        }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.c
    }

    pub fn set_coeff(&mut self, j: usize, v: C) {
        assert!(j < self.c.len());
        self.c[j] = v;
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn lowest_order(&self) -> Option<usize> {
        self.c.iter().position(|v| !v.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c = self.c.clone();
        c.truncate(order + 1);
        let zero = self.c[0].zero_like();
        c.resize(order + 1, zero);
        TruncatedSeries { c }
    }

    fn join_order(&self, o: &Self) -> usize {
        self.order().min(o.order())
    }

    pub fn add(&self, o: &Self) -> Self {
        let k = self.join_order(o);
        let c = (0..=k).map(|j| self.c[j].add(&o.c[j])).collect();
        TruncatedSeries { c }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let k = self.join_order(o);
        let c = (0..=k).map(|j| self.c[j].sub(&o.c[j])).collect();
        TruncatedSeries { c }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            c: self.c.iter().map(|v| v.neg()).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        TruncatedSeries {
            c: self.c.iter().map(|v| v.scale(r)).collect(),
        }
    }

    pub fn scale_c(&self, s: &C) -> Self {
        TruncatedSeries {
            c: self.c.iter().map(|v| v.mul(s)).collect(),
        }
    }

    pub fn add_rat(&self, r: &Rat) -> Self {
        let mut c = self.c.clone();
        c[0] = c[0].add_rat(r);
        TruncatedSeries { c }
    }

    /// Cauchy product truncated at the smaller operand order.
    pub fn mul(&self, o: &Self) -> Self {
        let k = self.join_order(o);
        let zero = self.c[0].zero_like();
        let mut c = vec![zero; k + 1];
        for i in 0..=k {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..=(k - i) {
                c[i + j] = c[i + j].add(&self.c[i].mul(&o.c[j]));
            }
        }
        TruncatedSeries { c }
    }

    /// Long division; the divisor must have a nonzero constant term.
    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.c[0].is_zero() {
            return Err(Error::SeriesPole(
                "division by series with zero constant term; factor out x powers first".into(),
            ));
        }
        let k = self.join_order(o);
        let zero = self.c[0].zero_like();
        let mut q = vec![zero; k + 1];
        for j in 0..=k {
            let mut acc = self.c[j].clone();
            for i in 0..j {
                acc = acc.sub(&q[i].mul(&o.c[j - i]));
            }
            q[j] = acc.div(&o.c[0])?;
        }
        Ok(TruncatedSeries { c: q })
    }

    /// Multiply by `x^m` (drops the top `m` orders).
    pub fn mul_xpow(&self, m: usize) -> Self {
        let k = self.order();
        let zero = self.c[0].zero_like();
        let mut c = vec![zero; k + 1];
        for j in m..=k {
            c[j] = self.c[j - m].clone();
        }
        TruncatedSeries { c }
    }

    /// Divide by `x^m` exactly; the lowest `m` coefficients must vanish.
    /// The order drops by `m`.
    pub fn div_xpow(&self, m: usize) -> Result<Self> {
        if m == 0 {
            return Ok(self.clone());
        }
        if self.order() < m {
            return Err(Error::SeriesPole("div_xpow beyond series order".into()));
        }
        for j in 0..m {
            if !self.c[j].is_zero() {
                return Err(Error::SeriesPole(format!(
                    "cannot divide by x^{m}: coefficient of x^{j} is nonzero"
                )));
            }
        }
        Ok(TruncatedSeries {
            c: self.c[m..].to_vec(),
        })
    }

    /// Termwise derivative; order drops by one.
    pub fn dx(&self) -> Self {
        if self.c.len() == 1 {
            return TruncatedSeries {
                c: vec![self.c[0].zero_like()],
            };
        }
        let c = (1..self.c.len())
            .map(|j| self.c[j].scale(&Rat::from(j as u64)))
            .collect();
        TruncatedSeries { c }
    }

    /// Termwise integral from 0; order grows by one.
    pub fn integrate(&self) -> Self {
        let zero = self.c[0].zero_like();
        let mut c = vec![zero; self.c.len() + 1];
        for j in 0..self.c.len() {
            c[j + 1] = self.c[j].scale(&Rat::from((1, (j + 1) as u64)));
        }
        TruncatedSeries { c }
    }

    /// `int_0^x (x - t) f(t) dt` termwise; order grows by two.
    pub fn kernel_int(&self) -> Self {
        let zero = self.c[0].zero_like();
        let mut c = vec![zero; self.c.len() + 2];
        for j in 0..self.c.len() {
            let d = Rat::from(((j + 1) * (j + 2)) as u64);
            c[j + 2] = self.c[j].scale(&Rat::from(Rat::from(1) / d));
        }
        TruncatedSeries { c }
    }

    /// Square root with positive leading coefficient; the constant term must
    /// admit an exact square root in the backend.
    pub fn sqrt(&self) -> Result<Self> {
        let b0 = self.c[0].sqrt()?;
        if b0.is_zero() {
            return Err(Error::domain(
                "series sqrt requires nonzero constant term; factor out x powers first",
            ));
        }
        let k = self.order();
        let mut b = vec![b0.clone()];
        let two_b0 = b0.add(&b0);
        for j in 1..=k {
            // a_j = sum_{i=0}^{j} b_i b_{j-i}  =>  solve for b_j
            let mut acc = self.c[j].clone();
            for i in 1..j {
                acc = acc.sub(&b[i].mul(&b[j - i]));
            }
            b.push(acc.div(&two_b0)?);
        }
        Ok(TruncatedSeries { c: b })
    }

    /// log of a series with unit constant term.
    pub fn log_unit(&self) -> Result<Self> {
        if !self.c[0].sub(&self.c[0].one_like()).is_zero() {
            return Err(Error::domain(
                "series log requires unit constant term; factor out the leading part first",
            ));
        }
        // l' = a'/a, l(0) = 0
        let deriv = self.dx().div(&self.truncate(self.order().saturating_sub(1)))?;
        let mut out = deriv.integrate();
        out = out.truncate(self.order());
        Ok(out)
    }

    /// exp of a series with zero constant term.
    pub fn exp_zero(&self) -> Result<Self> {
        if !self.c[0].is_zero() {
            return Err(Error::domain(
                "series exp requires zero constant term; handle the constant separately",
            ));
        }
        let k = self.order();
        let mut e = vec![self.c[0].one_like()];
        // e' = s' e  =>  (j+1) e_{j+1} = sum_{i} (i+1) s_{i+1} e_{j-i}
        for j in 0..k {
            let mut acc = self.c[0].zero_like();
            for i in 0..=j {
                if i + 1 < self.c.len() {
                    acc = acc.add(&self.c[i + 1].scale(&Rat::from((i + 1) as u64)).mul(&e[j - i]));
                }
            }
            e.push(acc.scale(&Rat::from((1, (j + 1) as u64))));
        }
        Ok(TruncatedSeries { c: e })
    }

    /// Composition `self(g)` for `g` with zero constant term.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if !g.c[0].is_zero() {
            return Err(Error::domain("compose requires inner series with g(0) = 0"));
        }
        let k = self.join_order(g);
        let mut acc = TruncatedSeries::constant(self.c[self.c.len() - 1].clone(), k);
        for j in (0..self.c.len() - 1).rev() {
            acc = acc.mul(&g.truncate(k));
            acc.c[0] = acc.c[0].add(&self.c[j]);
        }
        Ok(acc)
    }

    /// Horner evaluation at a scalar point.
    pub fn eval(&self, at: &C) -> C {
        let mut acc = self.c[self.c.len() - 1].clone();
        for j in (0..self.c.len() - 1).rev() {
            acc = acc.mul(at).add(&self.c[j]);
        }
        acc
    }

    pub fn is_zero_series(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }
}

impl TruncatedSeries<Rat> {
    /// Convenience constructor from integer pairs, mostly for tests.
    pub fn from_rationals(pairs: &[(i64, i64)], order: usize) -> Self {
        let coeffs = pairs.iter().map(|&(p, q)| Rat::from((p, q))).collect();
        TruncatedSeries::new(coeffs, order)
    }
}

impl<C: Field> Field for TruncatedSeries<C> {
    fn add(&self, o: &Self) -> Self {
        TruncatedSeries::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        TruncatedSeries::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        TruncatedSeries::mul(self, o)
    }
    fn neg(&self) -> Self {
        TruncatedSeries::neg(self)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        TruncatedSeries::div(self, o)
    }
    fn sqrt(&self) -> Result<Self> {
        TruncatedSeries::sqrt(self)
    }
    fn scale(&self, r: &Rat) -> Self {
        TruncatedSeries::scale(self, r)
    }
    fn add_rat(&self, r: &Rat) -> Self {
        TruncatedSeries::add_rat(self, r)
    }
    fn is_zero(&self) -> bool {
        self.is_zero_series()
    }
}

/// `p(x) + q(x) log x`, closed under the genus-formula operations.
///
/// A single `log x` multiplier is enough for the genus coefficients handled
/// here; operations that would produce `log^2 x` are errors.
#[derive(Clone, Debug, PartialEq)]
pub struct LogSeries<C: Field> {
    pub p: TruncatedSeries<C>,
    pub q: TruncatedSeries<C>,
}

impl<C: Field> LogSeries<C> {
    pub fn new(p: TruncatedSeries<C>, q: TruncatedSeries<C>) -> Self {
        LogSeries { p, q }
    }

    pub fn from_plain(p: TruncatedSeries<C>) -> Self {
        let q = TruncatedSeries::zero_series(&p.coeff(0), p.order());
        LogSeries { p, q }
    }

    /// Pure `log x` at the given order.
    pub fn log_x(sample: &C, order: usize) -> Self {
        LogSeries {
            p: TruncatedSeries::zero_series(sample, order),
            q: TruncatedSeries::constant(sample.one_like(), order),
        }
    }

    pub fn is_plain(&self) -> bool {
        self.q.is_zero_series()
    }

    pub fn add(&self, o: &Self) -> Self {
        LogSeries {
            p: self.p.add(&o.p),
            q: self.q.add(&o.q),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        LogSeries {
            p: self.p.sub(&o.p),
            q: self.q.sub(&o.q),
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        LogSeries {
            p: self.p.scale(r),
            q: self.q.scale(r),
        }
    }

    /// Product with a plain series.
    pub fn mul_plain(&self, o: &TruncatedSeries<C>) -> Self {
        LogSeries {
            p: self.p.mul(o),
            q: self.q.mul(o),
        }
    }

    /// Product of log-carrying series is outside the algebra unless one
    /// factor is plain.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.is_plain() {
            return Ok(o.mul_plain(&self.p));
        }
        if o.is_plain() {
            return Ok(self.mul_plain(&o.p));
        }
        Err(Error::unsupported(
            "product of two log-carrying series would need log^2 x",
        ))
    }

    /// d/dx (p + q log x) = p' + q/x + q' log x.
    /// Requires `q` divisible by `x` so the result stays in the algebra.
    pub fn dx(&self) -> Result<Self> {
        let q_over_x = self.q.div_xpow(1).map_err(|_| {
            Error::unsupported("derivative would produce 1/x: q(0) != 0 in p + q log x")
        })?;
        let order = self.p.order().saturating_sub(1);
        Ok(LogSeries {
            p: self.p.dx().add(&q_over_x.truncate(order)),
            q: self.q.dx(),
        })
    }
}

/// `g(x) = int_0^x (x - t) f(t) dt` for `f = p + q log t`, termwise:
///
/// * `t^j         -> x^{j+2} / ((j+1)(j+2))`
/// * `t^j log t   -> x^{j+2} log x / ((j+1)(j+2)) - x^{j+2} (2j+3) / ((j+1)^2 (j+2)^2)`
pub fn genus_kernel<C: Field>(f: &LogSeries<C>) -> LogSeries<C> {
    let mut p = f.p.kernel_int();
    let q = f.q.kernel_int();
    // log correction terms
    for j in 0..=f.q.order() {
        let cj = f.q.coeff(j);
        if cj.is_zero() {
            continue;
        }
        let j1 = (j + 1) as u64;
        let j2 = (j + 2) as u64;
        let corr = Rat::from(((2 * j + 3) as u64, j1 * j1 * j2 * j2));
        let old = p.coeff(j + 2);
        p.set_coeff(j + 2, old.sub(&cj.scale(&corr)));
    }
    LogSeries { p, q }
}

/// Expansion `sum_{i=1}^{M} c_i z^{-i}` around `z = infinity`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentTail<C: Field> {
    /// `c[i]` is the coefficient of `z^{-(i+1)}`.
    c: Vec<C>,
}

impl<C: Field> LaurentTail<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty());
        LaurentTail { c: coeffs }
    }

    pub fn depth(&self) -> usize {
        self.c.len()
    }

    /// Coefficient of `z^{-k}` (1-based).
    pub fn coeff_inv(&self, k: usize) -> C {
        assert!(k >= 1);
        if k - 1 < self.c.len() {
            self.c[k - 1].clone()
        } else {
            self.c[0].zero_like()
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let m = self.c.len().min(o.c.len());
        LaurentTail {
            c: (0..m).map(|i| self.c[i].add(&o.c[i])).collect(),
        }
    }

    /// Product, truncated consistently at the smaller depth.
    pub fn mul(&self, o: &Self) -> Self {
        let m = self.c.len().min(o.c.len());
        let zero = self.c[0].zero_like();
        let mut c = vec![zero; m];
        // z^{-(i+1)} * z^{-(j+1)} = z^{-(i+j+2)}
        for i in 0..m {
            for j in 0..m {
                let k = i + j + 1; // index of z^{-(i+j+2)}
                if k < m {
                    c[k] = c[k].add(&self.c[i].mul(&o.c[j]));
                }
            }
        }
        LaurentTail { c }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        LaurentTail {
            c: self.c.iter().map(|v| v.scale(r)).collect(),
        }
    }

    /// `(1 / 2 pi i) oint P(z) * self dz` for a polynomial `P = sum p_m z^m`:
    /// pairs `p_m` with the coefficient of `z^{-(m+1)}`.
    pub fn residue_pair(&self, poly: &[C]) -> C {
        let mut acc = self.c[0].zero_like();
        for (m, pm) in poly.iter().enumerate() {
            if m < self.c.len() {
                acc = acc.add(&pm.mul(&self.c[m]));
            }
        }
        acc
    }
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    type S = TruncatedSeries<Rat>;

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-20i64..=20, 1i64..=12).prop_map(|(p, q)| Rat::from((p, q)))
    }

    fn arb_series(order: usize) -> impl Strategy<Value = S> {
        proptest::collection::vec(arb_rat(), order + 1)
            .prop_map(move |v| TruncatedSeries::new(v, order))
    }

    proptest! {
        #[test]
        fn mul_distributes(a in arb_series(6), b in arb_series(6), c in arb_series(6)) {
            let lhs = a.add(&b).mul(&c);
            let rhs = a.mul(&c).add(&b.mul(&c));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn div_inverts_mul(a in arb_series(6), mut b in arb_series(6)) {
            if b.coeff(0).is_zero() {
                b = b.add_rat(&Rat::from(1));
            }
            let q = a.mul(&b).div(&b).unwrap();
            prop_assert_eq!(q, a);
        }

        #[test]
        fn dx_left_inverse_of_integrate(a in arb_series(6)) {
            let back = a.integrate().dx();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn exp_log_roundtrip(mut a in arb_series(5)) {
            a.set_coeff(0, Rat::from(1));
            let l = a.log_unit().unwrap();
            let e = l.exp_zero().unwrap();
            prop_assert_eq!(e, a);
        }

        #[test]
        fn genus_kernel_dx_dx(p in arb_series(5), q0 in arb_series(5)) {
            let f = LogSeries { p, q: q0 };
            let g = genus_kernel(&f);
            let back = g.dx().unwrap().dx().unwrap();
            prop_assert_eq!(back.p.truncate(5), f.p);
            prop_assert_eq!(back.q.truncate(5), f.q);
        }
    }
}
