//! Tanh-sinh (double-exponential) quadrature at arbitrary precision.
//!
//! Level doubling reuses previous nodes; the error estimate is the last
//! level-to-level difference. Integrands receive each node together with its
//! stable offsets from both endpoints, so endpoint-singular weights like
//! `x^(a-1)` can be evaluated without cancellation.

use crate::error::{Error, Result};
use crate::numerics::{bits_for_digits, BigFloat, Complex, Rat};

/// Values a quadrature can accumulate.
pub trait QuadValue: Clone {
    fn qzero(bits: u32) -> Self;
    fn qadd(&self, o: &Self) -> Self;
    fn qscale(&self, w: &BigFloat) -> Self;
    /// log10 of the magnitude; `None` for zero.
    fn qmag(&self) -> Option<f64>;
}

impl QuadValue for BigFloat {
    fn qzero(bits: u32) -> Self {
        BigFloat::from_float(rug::Float::with_val(bits, 0))
    }
    fn qadd(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn qscale(&self, w: &BigFloat) -> Self {
        self.mul(w)
    }
    fn qmag(&self) -> Option<f64> {
        self.log10_mag()
    }
}

impl QuadValue for Complex {
    fn qzero(bits: u32) -> Self {
        let z = BigFloat::from_float(rug::Float::with_val(bits, 0));
        Complex::new(z.clone(), z)
    }
    fn qadd(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn qscale(&self, w: &BigFloat) -> Self {
        self.mul_real(w)
    }
    fn qmag(&self) -> Option<f64> {
        let a = self.re.log10_mag();
        let b = self.im.log10_mag();
        match (a, b) {
            (None, None) => None,
            (x, None) => x,
            (None, y) => y,
            (Some(x), Some(y)) => Some(x.max(y)),
        }
    }
}

/// A quadrature node on `[a, b]`: the point plus its distance to each
/// endpoint, all consistent to working precision.
pub struct Node<'a> {
    pub x: &'a BigFloat,
    pub off_a: &'a BigFloat,
    pub off_b: &'a BigFloat,
}

pub struct QuadOpts {
    /// Target relative accuracy as a log10 (e.g. -40.0).
    pub rel_log10: f64,
    pub max_level: u32,
    pub digits: u32,
}

impl QuadOpts {
    pub fn with_digits(digits: u32) -> Self {
        QuadOpts {
            rel_log10: -((digits as f64) - 10.0),
            max_level: 12,
            digits,
        }
    }
}

struct TsNode {
    x: BigFloat,
    off_a: BigFloat,
    off_b: BigFloat,
    w: BigFloat,
}

/// Abscissa/weight for the map `x = c + s tanh(pi/2 sinh t)` at parameter t.
fn ts_node(a: &BigFloat, b: &BigFloat, t: &BigFloat, bits: u32) -> TsNode {
    let half = Rat::from((1, 2));
    let s = b.sub(a).mul_rat(&half);
    let pi_half = BigFloat::from_float(rug::Float::with_val(
        bits,
        rug::float::Constant::Pi,
    ))
    .mul_rat(&half);
    let u = pi_half.mul(&t.sinh());
    // 1 -+ tanh(u) computed stably via exp(-2|u|)
    let two = Rat::from(2);
    let e2 = u.abs().mul_rat(&two).neg().exp();
    let denom = e2.add_rat(&Rat::from(1));
    let near = e2.mul_rat(&two).div(&denom); // 1 - tanh(|u|)
    let far = BigFloat::from_i64(2).sub(&near); // 1 + tanh(|u|)
    let (om, op) = if u.is_positive() {
        (near, far) // (1 - tanh u, 1 + tanh u)
    } else {
        (far, near)
    };
    // x - a = s (1 + tanh u), b - x = s (1 - tanh u)
    let off_a = s.mul(&op);
    let off_b = s.mul(&om);
    let x = a.add(&off_a);
    // dx/dt = s (pi/2) cosh t sech^2 u, and sech^2 u = (1 - tanh u)(1 + tanh u)
    let w = s.mul(&pi_half).mul(&t.cosh()).mul(&om.mul(&op));
    TsNode { x, off_a, off_b, w }
}

/// Integrate a vector integrand over the real interval `[a, b]`.
///
/// `f` returns one value per component; singular behaviour is allowed at the
/// endpoints (evaluate through the offsets).
pub fn tanh_sinh<V: QuadValue>(
    f: &mut dyn FnMut(Node<'_>) -> Result<Vec<V>>,
    a: &BigFloat,
    b: &BigFloat,
    nout: usize,
    opts: &QuadOpts,
) -> Result<Vec<V>> {
    let bits = bits_for_digits(opts.digits + 10);
    // truncation point: weight ~ exp(-pi/2 e^{t}) below target
    let need = (opts.digits as f64 + 15.0) * std::f64::consts::LN_10;
    let t_max = (2.0 * need / std::f64::consts::PI).asinh() + 0.5;

    let eval = |t: &BigFloat, sums: &mut Vec<V>, f: &mut dyn FnMut(Node<'_>) -> Result<Vec<V>>| -> Result<()> {
        let node = ts_node(a, b, t, bits);
        if node.off_a.is_zero() || node.off_b.is_zero() {
            return Ok(()); // underflowed into an endpoint; weight is negligible there
        }
        let vals = f(Node {
            x: &node.x,
            off_a: &node.off_a,
            off_b: &node.off_b,
        })?;
        debug_assert_eq!(vals.len(), sums.len());
        for (sv, v) in sums.iter_mut().zip(vals.iter()) {
            *sv = sv.qadd(&v.qscale(&node.w));
        }
        Ok(())
    };

    let mut h = BigFloat::from_i64(1);
    // level 0: t = j for |j| <= t_max
    let mut sums: Vec<V> = vec![V::qzero(bits); nout];
    let j_max = t_max.ceil() as i64;
    for j in -j_max..=j_max {
        eval(&BigFloat::from_i64(j), &mut sums, f)?;
    }
    let mut prev: Option<Vec<V>> = None;
    let mut result: Vec<V> = sums.iter().map(|s| s.qscale(&h)).collect();

    for _level in 1..=opts.max_level {
        h = h.mul_rat(&Rat::from((1, 2)));
        // new nodes at odd multiples of h
        let steps = (t_max / h.to_f64()).ceil() as i64;
        let mut j = 1i64;
        while j <= steps {
            let t = h.mul_i64(j);
            eval(&t, &mut sums, f)?;
            eval(&t.neg(), &mut sums, f)?;
            j += 2;
        }
        let cur: Vec<V> = sums.iter().map(|s| s.qscale(&h)).collect();
        if let Some(p) = &prev {
            // compare cur against previous level
            let scale = cur
                .iter()
                .filter_map(|v| v.qmag())
                .fold(f64::NEG_INFINITY, f64::max);
            let diff = cur
                .iter()
                .zip(p.iter())
                .filter_map(|(c, q)| c.qadd(&q.qscale(&BigFloat::from_i64(-1))).qmag())
                .fold(f64::NEG_INFINITY, f64::max);
            if diff == f64::NEG_INFINITY
                || (scale > f64::NEG_INFINITY && diff < scale + opts.rel_log10)
                || diff < opts.rel_log10 - 10.0
            {
                return Ok(cur);
            }
        }
        prev = Some(result);
        result = cur;
    }
    Err(Error::Convergence(format!(
        "tanh-sinh did not reach 1e{:.0} within {} levels",
        opts.rel_log10, opts.max_level
    )))
}

/// Integrate along the straight segment from `za` to `zb` in the complex
/// plane (used for detours around on-contour evaluation points). The
/// integrand receives the complex point; offsets are not meaningful here, so
/// the segment must stay away from integrand singularities.
pub fn tanh_sinh_complex_segment(
    f: &mut dyn FnMut(&Complex) -> Result<Complex>,
    za: &Complex,
    zb: &Complex,
    opts: &QuadOpts,
) -> Result<Complex> {
    let dir = zb.sub(za);
    let mut g = |node: Node<'_>| -> Result<Vec<Complex>> {
        let z = za.add(&dir.mul_real(node.x));
        Ok(vec![f(&z)?])
    };
    let out = tanh_sinh(
        &mut g,
        &BigFloat::from_i64(0),
        &BigFloat::from_i64(1),
        1,
        opts,
    )?;
    Ok(out[0].mul(&dir))
}
