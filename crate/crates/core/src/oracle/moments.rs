//! Moments of `e^{-N W}` on the model contour.
//!
//! The exact backend recognizes the classical weight families (Gamma-type on
//! the half line, even Hermite-type on the real line, Beta-type on `[0,1]`);
//! every moment is then a rational multiple of one symbolic factor `m_0`.
//! The float backend integrates with tanh-sinh quadrature, splitting the
//! contour dyadically until the weight has decayed below target accuracy.


use super::quadrature::{tanh_sinh, Node, QuadOpts};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::model::{Contour, Potential};
use crate::numerics::{
    special::gamma_exact_half, BigFloat, ExactVal, Rat,
};

/// Moment table `m_k = int z^k e^{-N W(z)} dz`.
///
/// Exact backend: `m` holds the ratios `m_k / m_0` and `factor` the symbolic
/// `m_0`. Float backend: `m` holds absolute values and `factor` is `None`.
#[derive(Clone, Debug)]
pub struct MomentTable<C: Field> {
    pub big_n: Rat,
    pub m: Vec<C>,
    pub factor: Option<ExactVal>,
    /// Odd moments vanish identically (Z2-symmetric weight on the line).
    pub odd_vanish: bool,
}

/// Classical weight family behind an exactly solvable moment table.
#[derive(Clone, Debug, PartialEq)]
pub enum ClassicalFamily {
    /// `x^alpha e^{-beta x}` on `[0, inf)`
    GammaLike { alpha: Rat, beta: Rat },
    /// `|z|^gamma e^{-c z^2}` on the real line
    HermiteLike { gamma: Rat, c: Rat },
    /// `x^a0 (1-x)^a1` on `[0, 1]`
    BetaLike { a0: Rat, a1: Rat },
}

/// Recognize the weight `e^{-N W}` as a classical family, if it is one.
pub fn detect_family(p: &Potential, big_n: &Rat) -> Option<ClassicalFamily> {
    match p.contour {
        Contour::HalfLine => {
            if p.degree() != 1 {
                return None;
            }
            let beta = Rat::from(&p.poly[0] * big_n);
            let alpha = match p.logterms.len() {
                0 => Rat::from(0),
                1 if p.logterms[0].q_is_real() && p.logterms[0].q_re == 0 => {
                    Rat::from(&p.logterms[0].mu * big_n)
                }
                _ => return None,
            };
            Some(ClassicalFamily::GammaLike { alpha, beta })
        }
        Contour::RealLine => {
            if !p.z2_symmetric || p.degree() != 2 {
                return None;
            }
            let c = Rat::from(&p.w0_coeff(2) * big_n);
            let gamma = match p.logterms.len() {
                0 => Rat::from(0),
                1 => Rat::from(&p.logterms[0].mu * big_n) * Rat::from(2),
                _ => return None,
            };
            Some(ClassicalFamily::HermiteLike { gamma, c })
        }
        Contour::UnitInterval => {
            if p.degree() != 0 || p.logterms.len() != 2 {
                return None;
            }
            let (t0, t1) = (&p.logterms[0], &p.logterms[1]);
            if !(t0.q_is_real() && t1.q_is_real() && t0.q_re == 0 && t1.q_re == 1) {
                return None;
            }
            Some(ClassicalFamily::BetaLike {
                a0: Rat::from(&t0.mu * big_n),
                a1: Rat::from(&t1.mu * big_n),
            })
        }
    }
}

fn check_integrable(fam: &ClassicalFamily) -> Result<()> {
    let bad = match fam {
        ClassicalFamily::GammaLike { alpha, beta } => *alpha <= -1 || *beta <= 0,
        ClassicalFamily::HermiteLike { gamma, c } => *gamma <= -1 || *c <= 0,
        ClassicalFamily::BetaLike { a0, a1 } => *a0 <= -1 || *a1 <= -1,
    };
    if bad {
        return Err(Error::Integrability(format!(
            "weight is not integrable: {fam:?}"
        )));
    }
    Ok(())
}

/// Symbolic `m_0` for a classical family; `None` when it lies outside the
/// tracked field (e.g. Gamma at a generic rational argument).
fn family_factor(fam: &ClassicalFamily) -> Option<ExactVal> {
    let gamma_of = |r: &Rat| -> Option<ExactVal> {
        let twice = Rat::from(r * Rat::from(2));
        if !twice.is_integer() {
            return None;
        }
        gamma_exact_half(twice.numer().to_i64()?).ok()
    };
    match fam {
        ClassicalFamily::GammaLike { alpha, beta } => {
            // Gamma(alpha + 1) / beta^(alpha + 1)
            let a1 = Rat::from(alpha + Rat::from(1));
            let g = gamma_of(&a1)?;
            let twice_a1 = Rat::from(&a1 * Rat::from(2));
            let p = ExactVal::from_rat_pow_half(beta, -twice_a1.numer().to_i64()?).ok()?;
            Some(g.mul(&p))
        }
        ClassicalFamily::HermiteLike { gamma, c } => {
            // Gamma((gamma+1)/2) / c^((gamma+1)/2)
            let half_arg = Rat::from(gamma + Rat::from(1)) / Rat::from(2);
            let g = gamma_of(&half_arg)?;
            let twice = Rat::from(&half_arg * Rat::from(2));
            let p = ExactVal::from_rat_pow_half(c, -twice.numer().to_i64()?).ok()?;
            Some(g.mul(&p))
        }
        ClassicalFamily::BetaLike { a0, a1 } => {
            // B(a0+1, a1+1)
            let g0 = gamma_of(&Rat::from(a0 + Rat::from(1)))?;
            let g1 = gamma_of(&Rat::from(a1 + Rat::from(1)))?;
            let gs = gamma_of(&Rat::from(Rat::from(a0 + a1) + Rat::from(2)))?;
            Some(g0.mul(&g1).div(&gs))
        }
    }
}

/// Exact moment table (ratios plus symbolic factor) for a classical weight.
pub fn moments_exact(p: &Potential, big_n: &Rat, k_max: usize) -> Result<MomentTable<Rat>> {
    let fam = detect_family(p, big_n).ok_or_else(|| {
        Error::unsupported(
            "exact moments require a classical weight family (Gamma, even Hermite or Beta type)",
        )
    })?;
    check_integrable(&fam)?;
    let mut m = Vec::with_capacity(k_max + 1);
    let mut odd_vanish = false;
    match &fam {
        ClassicalFamily::GammaLike { alpha, beta } => {
            // m_k / m_0 = (alpha+1)_k / beta^k
            let mut cur = Rat::from(1);
            for k in 0..=k_max {
                if k > 0 {
                    let num = Rat::from(alpha + Rat::from(k as u64));
                    cur = Rat::from(&cur * num) / beta.clone();
                }
                m.push(cur.clone());
            }
        }
        ClassicalFamily::HermiteLike { gamma, c } => {
            odd_vanish = true;
            // m_{2j} / m_0 = ((gamma+1)/2)_j / c^j, odd moments vanish
            let mut cur = Rat::from(1);
            for k in 0..=k_max {
                if k % 2 == 1 {
                    m.push(Rat::from(0));
                    continue;
                }
                if k > 0 {
                    let j = Rat::from((k / 2) as u64);
                    let base = Rat::from(gamma + Rat::from(1)) / Rat::from(2);
                    let num = Rat::from(&base + Rat::from(&j - Rat::from(1)));
                    cur = Rat::from(&cur * num) / c.clone();
                }
                m.push(cur.clone());
            }
        }
        ClassicalFamily::BetaLike { a0, a1 } => {
            // m_k / m_0 = (a0+1)_k / (a0+a1+2)_k
            let mut cur = Rat::from(1);
            for k in 0..=k_max {
                if k > 0 {
                    let kk = Rat::from(k as u64);
                    let num = Rat::from(a0 + kk.clone());
                    let den = Rat::from(a0 + a1) + Rat::from(1) + kk;
                    cur = Rat::from(&cur * num) / den;
                }
                m.push(cur.clone());
            }
        }
    }
    Ok(MomentTable {
        big_n: big_n.clone(),
        m,
        factor: family_factor(&fam),
        odd_vanish,
    })
}

/// `log` of the weight `e^{-N W(x)}` at a real point.
///
/// `dist0`/`dist1` are stable distances `|x - 0|` and `|x - 1|` precomputed
/// from the node offsets, so endpoint-singular log terms do not cancel.
pub(crate) fn log_weight(
    p: &Potential,
    big_n: &Rat,
    x: &BigFloat,
    dist0: &BigFloat,
    dist1: Option<&BigFloat>,
) -> Result<BigFloat> {
    let nf = BigFloat::from_rat(big_n);
    // -N W0(x) by Horner over c_d .. c_1
    let mut w0 = BigFloat::from_i64(0);
    for c in p.poly.iter().rev() {
        w0 = w0.mul(x).add(&BigFloat::from_rat(c));
    }
    w0 = w0.mul(x); // W0 = x * (c_1 + c_2 x + ...)
    let mut acc = w0.mul(&nf).neg();
    for t in &p.logterms {
        if !t.q_is_real() {
            return Err(Error::unsupported(
                "quadrature requires real log-term singularities",
            ));
        }
        let mu_n = nf.mul_rat(&t.mu);
        if p.z2_symmetric {
            // weight factor |x^2 - q^2|^(mu N); presets have q = 0
            if t.q_re != 0 {
                return Err(Error::unsupported("Z2 log terms away from 0"));
            }
            acc = acc.add(&dist0.ln()?.mul(&mu_n).mul_i64(2));
            continue;
        }
        let dist = if t.q_re == 0 {
            dist0.clone()
        } else if t.q_re == 1 && dist1.is_some() {
            dist1.unwrap().clone()
        } else {
            x.sub(&BigFloat::from_rat(&t.q_re)).abs()
        };
        acc = acc.add(&dist.ln()?.mul(&mu_n));
    }
    Ok(acc)
}

/// Stable `(|x|, |x-1|)` for a node on the real segment `[a, b]`.
pub(crate) fn node_dists(a: &Rat, b: &Rat, node: &Node<'_>) -> (BigFloat, Option<BigFloat>) {
    let dist0 = if *a == 0 {
        node.off_a.clone()
    } else if *b == 0 {
        node.off_b.clone()
    } else {
        node.x.abs()
    };
    let dist1 = if *b == 1 {
        Some(node.off_b.clone())
    } else if *a == 1 {
        Some(node.off_a.clone())
    } else {
        Some(node.x.sub(&BigFloat::from_i64(1)).abs())
    };
    (dist0, dist1)
}

/// Segment list `[a_i, b_i]` covering the contour, chosen so the weight has
/// decayed below target accuracy past the last endpoint.
pub(crate) fn contour_segments(
    p: &Potential,
    big_n: &Rat,
    extra_pow: u32,
    digits: u32,
) -> Result<Vec<(Rat, Rat)>> {
    match p.contour {
        Contour::UnitInterval => Ok(vec![(Rat::from(0), Rat::from(1))]),
        Contour::HalfLine | Contour::RealLine => {
            // crude log10 of weight * x^extra_pow at x, in f64
            let logw = |x: f64| -> f64 {
                let n = big_n.to_f64();
                let mut w0 = 0.0;
                for c in p.poly.iter().rev() {
                    w0 = w0 * x + c.to_f64();
                }
                w0 *= x;
                let mut acc = -n * w0;
                for t in &p.logterms {
                    let mult = if p.z2_symmetric { 2.0 } else { 1.0 };
                    acc += mult * t.mu.to_f64() * n * (x - t.q_re.to_f64()).abs().max(1e-300).ln();
                }
                (acc + extra_pow as f64 * x.max(1e-300).ln()) / std::f64::consts::LN_10
            };
            let target = -(digits as f64 + 20.0);
            let mut hi = 1.0f64;
            while logw(hi) > target && hi < 1e9 {
                hi *= 2.0;
            }
            if hi >= 1e9 {
                return Err(Error::Integrability(
                    "weight does not decay on the contour".into(),
                ));
            }
            let mut segs = vec![(Rat::from(0), Rat::from(1))];
            let mut lo = 1i64;
            while (lo as f64) < hi {
                segs.push((Rat::from(lo), Rat::from(2 * lo)));
                lo *= 2;
            }
            Ok(segs)
        }
    }
}

/// Float moment table by tanh-sinh quadrature, certified to relative
/// accuracy `10^-(digits-10)` per component.
pub fn moments_float(
    p: &Potential,
    big_n: &Rat,
    k_max: usize,
    digits: u32,
) -> Result<MomentTable<BigFloat>> {
    let odd_vanish = p.contour == Contour::RealLine && p.z2_symmetric;
    if p.contour == Contour::RealLine && !p.z2_symmetric {
        return Err(Error::unsupported(
            "float moments on the real line require a Z2-symmetric weight",
        ));
    }
    let opts = QuadOpts::with_digits(digits);
    let segs = contour_segments(p, big_n, k_max as u32, digits)?;

    let mut totals = vec![BigFloat::zero(); k_max + 1];
    for (a, b) in &segs {
        let af = BigFloat::from_rat_digits(a, digits + 10);
        let bf = BigFloat::from_rat_digits(b, digits + 10);
        let mut f = |node: Node<'_>| -> Result<Vec<BigFloat>> {
            let (d0, d1) = node_dists(a, b, &node);
            let w = log_weight(p, big_n, node.x, &d0, d1.as_ref())?.exp();
            let mut out = Vec::with_capacity(k_max + 1);
            let mut pw = w;
            out.push(pw.clone());
            for _ in 0..k_max {
                pw = pw.mul(node.x);
                out.push(pw.clone());
            }
            Ok(out)
        };
        let vals = tanh_sinh(&mut f, &af, &bf, k_max + 1, &opts)?;
        for (t, v) in totals.iter_mut().zip(vals.iter()) {
            *t = t.add(v);
        }
    }

    if odd_vanish {
        // the contour is the whole line: even moments double, odd vanish
        for (k, t) in totals.iter_mut().enumerate() {
            if k % 2 == 0 {
                *t = t.mul_i64(2);
            } else {
                *t = BigFloat::zero();
            }
        }
    }
    Ok(MomentTable {
        big_n: big_n.clone(),
        m: totals,
        factor: None,
        odd_vanish,
    })
}

/// Exact seed `R_0(q) = (1/h_0) int w(x) / (q - x) dx` at an endpoint
/// singularity `q` of a classical family.
pub fn exact_resolvent_seed(p: &Potential, big_n: &Rat, q: &Rat) -> Result<Rat> {
    let fam = detect_family(p, big_n)
        .ok_or_else(|| Error::unsupported("exact resolvent seeds need a classical family"))?;
    match fam {
        ClassicalFamily::GammaLike { alpha, beta } => {
            if *q != 0 {
                return Err(Error::unsupported("Gamma-type seed only at q = 0"));
            }
            if alpha <= 0 {
                return Err(Error::Integrability("seed integral needs alpha > 0".into()));
            }
            // -Gamma(alpha)/beta^alpha / (Gamma(alpha+1)/beta^(alpha+1)) = -beta/alpha
            Ok(Rat::from(-Rat::from(&beta / &alpha)))
        }
        ClassicalFamily::BetaLike { a0, a1 } => {
            let s = Rat::from(&a0 + &a1) + Rat::from(1);
            if *q == 0 {
                if a0 <= 0 {
                    return Err(Error::Integrability("seed integral needs a0 > 0".into()));
                }
                Ok(Rat::from(-Rat::from(&s / &a0)))
            } else if *q == 1 {
                if a1 <= 0 {
                    return Err(Error::Integrability("seed integral needs a1 > 0".into()));
                }
                Ok(Rat::from(&s / &a1))
            } else {
                Err(Error::unsupported("Beta-type seed only at q = 0 or 1"))
            }
        }
        ClassicalFamily::HermiteLike { .. } => {
            // R_n is odd, so R_n(0) = 0 identically
            if *q == 0 {
                Ok(Rat::from(0))
            } else {
                Err(Error::unsupported("Hermite-type seed only at q = 0"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelPreset;
    use crate::numerics::with_digits;

    #[test]
    fn gaussian_moment_zero() {
        // m_0 = sqrt(2 pi / N) at N = 1
        let p = ModelPreset::Gaussian.potential();
        let t = moments_exact(&p, &Rat::from(1), 4).unwrap();
        let f = t.factor.unwrap().to_bigfloat().unwrap();
        let expect = BigFloat::pi().mul_i64(2).sqrt().unwrap();
        assert!(f.sub(&expect).abs().to_f64() < 1e-45);
        assert!(t.odd_vanish);
        assert_eq!(t.m[1], Rat::from(0));
        // m_2 / m_0 = 1/N = 1
        assert_eq!(t.m[2], Rat::from(1));
    }

    #[test]
    fn linear_penner_closed_forms() {
        // N = 2: m_0 = Gamma(3)/2^3 = 1/4 and ratios are rational
        let p = ModelPreset::LinearPenner.potential();
        let t = moments_exact(&p, &Rat::from(2), 3).unwrap();
        let f = t.factor.unwrap();
        assert_eq!(f.to_rat(), Some(Rat::from((1, 4))));
        // m_1/m_0 = (alpha+1)/beta = 3/2
        assert_eq!(t.m[1], Rat::from((3, 2)));
    }

    #[test]
    fn double_penner_beta_moment() {
        let p = ModelPreset::DoublePenner {
            mu0: Rat::from(1),
            mu1: Rat::from(1),
        }
        .potential();
        let t = moments_exact(&p, &Rat::from(1), 2).unwrap();
        assert_eq!(t.factor.unwrap().to_rat(), Some(Rat::from((1, 6))));
        // m_1/m_0 = (a0+1)/(a0+a1+2) = 1/2
        assert_eq!(t.m[1], Rat::from((1, 2)));
    }

    #[test]
    fn gaussian_penner_factor() {
        // h_0 = (2/N)^((N+1)/2) Gamma((N+1)/2); at N = 4 this is (1/2)^(5/2) (3/4) sqrt(pi)
        let p = ModelPreset::GaussianPenner.potential();
        let t = moments_exact(&p, &Rat::from(4), 2).unwrap();
        let expect = ExactVal::from_rat_pow_half(&Rat::from((1, 2)), 5)
            .unwrap()
            .mul(&ExactVal::from_rat(&Rat::from((3, 4))).unwrap())
            .mul(&ExactVal::pi_pow_half(1));
        assert_eq!(t.factor.unwrap(), expect);
    }

    #[test]
    fn float_moments_match_exact() {
        with_digits(50, || {
            for (preset, n) in [
                (ModelPreset::LinearPenner, Rat::from(2)),
                (ModelPreset::Gaussian, Rat::from(1)),
                (
                    ModelPreset::DoublePenner {
                        mu0: Rat::from(1),
                        mu1: Rat::from(2),
                    },
                    Rat::from(1),
                ),
                (ModelPreset::GaussianPenner, Rat::from(4)),
            ] {
                let p = preset.potential();
                let ex = moments_exact(&p, &n, 6).unwrap();
                let fl = moments_float(&p, &n, 6, 50).unwrap();
                let f0 = ex.factor.clone().unwrap().to_bigfloat().unwrap();
                for k in 0..=6 {
                    let expect = f0.mul_rat(&ex.m[k]);
                    let diff = fl.m[k].sub(&expect).abs();
                    let scale = expect.abs().to_f64().max(1e-30);
                    assert!(
                        diff.to_f64() / scale < 1e-38,
                        "{preset:?} moment {k}: {} vs {}",
                        fl.m[k].to_decimal(25),
                        expect.to_decimal(25),
                    );
                }
            }
        });
    }

    #[test]
    fn cubic_penner_float_moment_vs_gamma() {
        // m_k = (1/3) c^(-(k+N+1)/3) Gamma((k+N+1)/3) with c = N/3; check k = 0, N = 3
        with_digits(50, || {
            let p = ModelPreset::CubicPenner.potential();
            let t = moments_float(&p, &Rat::from(3), 0, 50).unwrap();
            let third = Rat::from((1, 3));
            let arg = BigFloat::from_rat(&Rat::from((4, 3)));
            let lg = crate::numerics::special::log_gamma(&arg).unwrap();
            let c = BigFloat::from_i64(1); // N/3 = 1
            let expect = lg.exp().mul_rat(&third).div(&c);
            assert!(t.m[0].sub(&expect).abs().to_f64() < 1e-40);
        });
    }

    #[test]
    fn divergent_weight_rejected() {
        // mu N <= -1 at the endpoint makes the integral diverge
        let p = ModelPreset::DoublePenner {
            mu0: Rat::from(-2),
            mu1: Rat::from(1),
        }
        .potential();
        assert!(matches!(
            moments_exact(&p, &Rat::from(1), 2),
            Err(Error::Integrability(_))
        ));
    }

    #[test]
    fn resolvent_seeds() {
        let lp = ModelPreset::LinearPenner.potential();
        assert_eq!(
            exact_resolvent_seed(&lp, &Rat::from(3), &Rat::from(0)).unwrap(),
            Rat::from(-1)
        );
        let dp = ModelPreset::DoublePenner {
            mu0: Rat::from(1),
            mu1: Rat::from(1),
        }
        .potential();
        assert_eq!(
            exact_resolvent_seed(&dp, &Rat::from(1), &Rat::from(0)).unwrap(),
            Rat::from(-3)
        );
        assert_eq!(
            exact_resolvent_seed(&dp, &Rat::from(1), &Rat::from(1)).unwrap(),
            Rat::from(3)
        );
    }
}
