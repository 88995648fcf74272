//! Evaluation of the resolvent functions
//! `R_n(z) = ((z - L)^{-1})_{nn}` and `T_n(z) = 1 + 2 ((z - L)^{-1})_{n,n-1}`.
//!
//! Three routes:
//!
//! * quadrature of the integral representations
//!   `R_n(z) = (1/h_n) int w P_n^2 / (z - zeta) dzeta` and its `T_n`
//!   analogue, with a semicircular detour below the axis when `z` sits on
//!   the contour interior;
//! * a truncated tridiagonal solve of `(z - L_M) u = e_j`, grown adaptively
//!   in `M` as an independent cross-check;
//! * the exact ladder: climbing the resolvent identities from a
//!   closed-form seed `R_0(q)`, exact over rationals.

use super::moments::{contour_segments, log_weight, node_dists};
use super::quadrature::{tanh_sinh, Node, QuadOpts};
use super::RecurrenceTable;
use crate::error::{Error, Result};
use crate::model::{Contour, Potential};
use crate::numerics::{bits_for_digits, BigFloat, Complex, Rat};

/// `R_n(z)` and `T_n(z)` at one point.
#[derive(Clone, Debug)]
pub struct ResolventPair {
    pub z: Complex,
    pub rn: Complex,
    pub tn: Complex,
    pub n: usize,
}

/// Where an evaluation point sits relative to the contour.
enum ZPosition {
    Off,
    /// exactly at a contour endpoint with integrable weight there
    Endpoint,
    /// real and strictly inside; needs a detour
    Interior(f64),
}

fn classify_z(p: &Potential, z: &Complex) -> ZPosition {
    if !z.im.is_zero() {
        return ZPosition::Off;
    }
    let x = z.re.to_f64();
    match p.contour {
        Contour::HalfLine => {
            if x == 0.0 {
                ZPosition::Endpoint
            } else if x > 0.0 {
                ZPosition::Interior(x)
            } else {
                ZPosition::Off
            }
        }
        Contour::RealLine => ZPosition::Interior(x),
        Contour::UnitInterval => {
            if x == 0.0 || x == 1.0 {
                ZPosition::Endpoint
            } else if x > 0.0 && x < 1.0 {
                ZPosition::Interior(x)
            } else {
                ZPosition::Off
            }
        }
    }
}

/// Weight at a complex point by principal-branch continuation; valid near
/// the contour away from the log singularities.
fn complex_log_weight(p: &Potential, big_n: &Rat, z: &Complex) -> Result<Complex> {
    let nf = BigFloat::from_rat(big_n);
    let mut w0 = Complex::zero();
    for c in p.poly.iter().rev() {
        w0 = w0.mul(z).add(&Complex::from_real(BigFloat::from_rat(c)));
    }
    w0 = w0.mul(z);
    let mut acc = w0.mul_real(&nf).neg();
    for t in &p.logterms {
        if !t.q_is_real() {
            return Err(Error::unsupported("complex log-term positions"));
        }
        let mu_n = nf.mul_rat(&t.mu);
        if p.z2_symmetric {
            if t.q_re != 0 {
                return Err(Error::unsupported("Z2 log terms away from 0"));
            }
            acc = acc.add(&z.mul(z).ln()?.mul_real(&mu_n));
        } else {
            let shifted = z.sub(&Complex::from_real(BigFloat::from_rat(&t.q_re)));
            acc = acc.add(&shifted.ln()?.mul_real(&mu_n));
        }
    }
    Ok(acc)
}

/// Join real segments with a lower-half-plane semicircle around `x0`.
fn detour_radius(p: &Potential, x0: f64) -> f64 {
    let mut d: f64 = 0.5;
    for t in &p.logterms {
        if t.q_is_real() {
            let dist = (x0 - t.q_re.to_f64()).abs();
            d = d.min(dist / 2.0);
        }
    }
    if p.contour == Contour::UnitInterval {
        d = d.min(x0 / 2.0).min((1.0 - x0) / 2.0);
    }
    d.max(1e-3)
}

/// Kernel integrals for all indices up to `n_top`: entry `n` holds
/// `(int w P_n^2 / (z - zeta), int w P_n P_{n-1} / (z - zeta))`.
fn resolvent_integrals(
    rt: &RecurrenceTable<BigFloat>,
    p: &Potential,
    n_top: usize,
    z: &Complex,
    digits: u32,
) -> Result<Vec<(Complex, Complex)>> {
    let big_n = &rt.big_n;
    let opts = QuadOpts::with_digits(digits);
    let mut segs0 = contour_segments(p, big_n, (2 * n_top + 2) as u32, digits)?;
    if p.contour == Contour::RealLine {
        let mirrored: Vec<(Rat, Rat)> = segs0
            .iter()
            .map(|(a, b)| (Rat::from(-b.clone()), Rat::from(-a.clone())))
            .collect();
        segs0.extend(mirrored);
    }

    // break the segment containing a real interior z and remember the arc
    let mut arc: Option<(f64, f64)> = None; // (x0, radius)
    let segs: Vec<(Rat, Rat)> = match classify_z(p, z) {
        ZPosition::Off | ZPosition::Endpoint => segs0,
        ZPosition::Interior(x0) => {
            let d = detour_radius(p, x0);
            arc = Some((x0, d));
            let xr = |v: f64| Rat::from_f64(v).expect("finite radius");
            let mut out = Vec::new();
            let mut split = false;
            for (a, b) in segs0 {
                let af = a.to_f64();
                let bf = b.to_f64();
                if !split && af < x0 && x0 < bf {
                    // the detour is wholly inside by construction of d
                    out.push((a.clone(), xr(x0 - d)));
                    out.push((xr(x0 + d), b.clone()));
                    split = true;
                } else if !split && (x0 == af || x0 == bf) {
                    // sits on a dyadic boundary: absorb both neighbours
                    out.push((a, b));
                } else {
                    out.push((a, b));
                }
            }
            if !split {
                // z landed exactly on a segment boundary; shift the split
                let d2 = d / 2.0;
                let mut out2 = Vec::new();
                for (a, b) in out {
                    let af = a.to_f64();
                    let bf = b.to_f64();
                    if af == x0 {
                        out2.push((xr(x0 + d2), b));
                    } else if bf == x0 {
                        out2.push((a, xr(x0 - d2)));
                    } else {
                        out2.push((a, b));
                    }
                }
                arc = Some((x0, d2));
                out2
            } else {
                out
            }
        }
    };

    let mut sums = vec![(Complex::zero(), Complex::zero()); n_top + 1];
    let pack = |pn_all: &[Complex], kern: &Complex| -> Vec<Complex> {
        let mut out = Vec::with_capacity(2 * pn_all.len());
        for n in 0..pn_all.len() {
            out.push(kern.mul(&pn_all[n].mul(&pn_all[n])));
            let prev = if n >= 1 {
                pn_all[n - 1].clone()
            } else {
                Complex::zero()
            };
            out.push(kern.mul(&pn_all[n].mul(&prev)));
        }
        out
    };

    for (a, b) in &segs {
        let af = BigFloat::from_rat_digits(a, digits + 10);
        let bf = BigFloat::from_rat_digits(b, digits + 10);
        let z_at_left = z.im.is_zero() && z.re.as_float() == af.as_float();
        let z_at_right = z.im.is_zero() && z.re.as_float() == bf.as_float();
        let mut f = |node: Node<'_>| -> Result<Vec<Complex>> {
            let (d0, d1) = node_dists(a, b, &node);
            let w = log_weight(p, big_n, node.x, &d0, d1.as_ref())?.exp();
            // all P_0..P_{n_top} in one recursion pass
            let mut pn_all = Vec::with_capacity(n_top + 2);
            let mut pm = BigFloat::zero();
            let mut pc = BigFloat::from_i64(1);
            pn_all.push(Complex::from_real(pc.clone()));
            for k in 0..n_top {
                let next = node.x.sub(&rt.s[k]).mul(&pc).sub(&rt.r[k].mul(&pm));
                pm = pc;
                pc = next;
                pn_all.push(Complex::from_real(pc.clone()));
            }
            // stable z - zeta when z is one of the segment ends
            let denom = if z_at_left {
                Complex::from_real(node.off_a.neg())
            } else if z_at_right {
                Complex::from_real(node.off_b.clone())
            } else {
                z.sub(&Complex::from_real(node.x.clone()))
            };
            let kern = Complex::from_real(w).div(&denom)?;
            Ok(pack(&pn_all, &kern))
        };
        let vals = tanh_sinh(&mut f, &af, &bf, 2 * (n_top + 1), &opts)?;
        for n in 0..=n_top {
            sums[n].0 = sums[n].0.add(&vals[2 * n]);
            sums[n].1 = sums[n].1.add(&vals[2 * n + 1]);
        }
    }

    if let Some((x0, d)) = arc {
        // zeta(theta) = x0 + d e^{i theta}, theta from pi to 2 pi (below axis)
        let bits = bits_for_digits(digits + 10);
        let x0f = BigFloat::from_f64(x0);
        let df = BigFloat::from_f64(d);
        let mut f = |node: Node<'_>| -> Result<Vec<Complex>> {
            let theta = node.x;
            let e = Complex::new(theta.cos(), theta.sin());
            let zeta = Complex::from_real(x0f.clone()).add(&e.mul_real(&df));
            let w = complex_log_weight(p, big_n, &zeta)?.exp();
            let mut pn_all = Vec::with_capacity(n_top + 2);
            let mut pm = Complex::zero();
            let mut pc = Complex::one();
            pn_all.push(pc.clone());
            for k in 0..n_top {
                let sk = Complex::from_real(rt.s[k].clone());
                let next = zeta.sub(&sk).mul(&pc).sub(&pm.mul_real(&rt.r[k]));
                pm = pc;
                pc = next;
                pn_all.push(pc.clone());
            }
            let denom = z.sub(&zeta);
            // dzeta = i d e^{i theta} dtheta
            let i_d = Complex::new(BigFloat::zero(), df.clone());
            let kern = w.div(&denom)?.mul(&i_d.mul(&e));
            Ok(pack(&pn_all, &kern))
        };
        let pi = BigFloat::from_float(rug::Float::with_val(bits, rug::float::Constant::Pi));
        let vals = tanh_sinh(&mut f, &pi, &pi.mul_i64(2), 2 * (n_top + 1), &opts)?;
        for n in 0..=n_top {
            sums[n].0 = sums[n].0.add(&vals[2 * n]);
            sums[n].1 = sums[n].1.add(&vals[2 * n + 1]);
        }
    }

    Ok(sums)
}

/// Quadrature evaluation of `R_n(z)` and `T_n(z)` for all `n <= n_top` in a
/// single pass over the contour.
pub fn resolvent_quadrature_batch(
    rt: &RecurrenceTable<BigFloat>,
    p: &Potential,
    n_top: usize,
    z: &Complex,
    digits: u32,
) -> Result<Vec<ResolventPair>> {
    if n_top + 1 > rt.h.len() {
        return Err(Error::validation("resolvent needs h up to index n"));
    }
    let ints = resolvent_integrals(rt, p, n_top, z, digits)?;
    let mut out = Vec::with_capacity(n_top + 1);
    for (n, (nn, nm)) in ints.iter().enumerate() {
        let rn = nn.mul_real(&BigFloat::from_i64(1).div(&rt.h[n]));
        let tn = if n == 0 {
            Complex::one()
        } else {
            nm.mul_real(&BigFloat::from_i64(2).div(&rt.h[n - 1]))
                .add(&Complex::one())
        };
        out.push(ResolventPair {
            z: z.clone(),
            rn,
            tn,
            n,
        });
    }
    Ok(out)
}

/// Quadrature evaluation of `R_n(z)` and `T_n(z)`.
pub fn resolvent_quadrature(
    rt: &RecurrenceTable<BigFloat>,
    p: &Potential,
    n: usize,
    z: &Complex,
    digits: u32,
) -> Result<ResolventPair> {
    Ok(resolvent_quadrature_batch(rt, p, n, z, digits)?
        .pop()
        .expect("batch returns n+1 pairs"))
}

/// Truncated tridiagonal solve, grown until both entries stabilize to
/// `10^tol_log10` relative accuracy.
pub fn resolvent_tridiagonal(
    rt: &RecurrenceTable<BigFloat>,
    n: usize,
    z: &Complex,
    tol_log10: f64,
) -> Result<ResolventPair> {
    let max_m = rt.len();
    if n + 8 > max_m {
        return Err(Error::validation(
            "tridiagonal resolvent needs a table well beyond n",
        ));
    }
    let mut m = (n + 24).min(max_m);
    let mut prev: Option<(Complex, Complex)> = None;
    loop {
        let col_n = tridiag_solve(rt, m, z, n)?;
        let rn = col_n[n].clone();
        let tn_half = if n >= 1 {
            tridiag_solve(rt, m, z, n - 1)?[n].clone()
        } else {
            Complex::zero()
        };
        let cur = (rn, tn_half);
        if let Some((pr, pt)) = &prev {
            let d1 = cur.0.sub(pr).abs().log10_mag().unwrap_or(f64::NEG_INFINITY);
            let d2 = cur.1.sub(pt).abs().log10_mag().unwrap_or(f64::NEG_INFINITY);
            let scale = cur
                .0
                .abs()
                .log10_mag()
                .unwrap_or(0.0)
                .max(cur.1.abs().log10_mag().unwrap_or(0.0));
            if d1.max(d2) < scale + tol_log10 {
                let tn = if n == 0 {
                    Complex::one()
                } else {
                    cur.1.mul_real(&BigFloat::from_i64(2)).add(&Complex::one())
                };
                return Ok(ResolventPair {
                    z: z.clone(),
                    rn: cur.0,
                    tn,
                    n,
                });
            }
        }
        if m == max_m {
            return Err(Error::Convergence(format!(
                "truncated resolvent did not stabilize to 1e{tol_log10:.0} within table length {max_m}"
            )));
        }
        prev = Some(cur);
        m = (m + 24).min(max_m);
    }
}

/// Column `source` of `(z - L_M)^{-1}` by a tridiagonal solve of
/// `(z - L_M) u = e_source` (Thomas algorithm without pivoting).
fn tridiag_solve(
    rt: &RecurrenceTable<BigFloat>,
    m: usize,
    z: &Complex,
    source: usize,
) -> Result<Vec<Complex>> {
    // rows i: -r_i u_{i-1} + (z - s_i) u_i - u_{i+1} = delta_{i,source}
    let mut diag: Vec<Complex> = (0..m)
        .map(|i| z.sub(&Complex::from_real(rt.s[i].clone())))
        .collect();
    let mut rhs: Vec<Complex> = (0..m).map(|_| Complex::zero()).collect();
    rhs[source] = Complex::one();
    // forward elimination (sub_i = -r_i, super_i = -1)
    for i in 1..m {
        let w = Complex::from_real(rt.r[i].neg()).div(&diag[i - 1])?;
        // diag_i -= w * super_{i-1} = w * (-1)
        diag[i] = diag[i].add(&w);
        let upd = w.mul(&rhs[i - 1]);
        rhs[i] = rhs[i].sub(&upd);
    }
    let mut u = vec![Complex::zero(); m];
    u[m - 1] = rhs[m - 1].div(&diag[m - 1])?;
    for i in (0..m - 1).rev() {
        // (z - s_i) u_i - u_{i+1} = rhs_i  (after elimination, super stays -1)
        u[i] = rhs[i].add(&u[i + 1]).div(&diag[i])?;
    }
    Ok(u)
}

/// Exact ladder over rationals: from `T_0 = 1`, `R_0(q) = seed` climb with
/// `T_{k+1} = 2 (q - s_k) R_k - T_k` and
/// `R_{k+1} = (T_{k+1}^2 - 1) / (4 r_{k+1} R_k)`.
/// Returns `(T_n(q), R_n(q))`.
pub fn ladder_rational(
    rt: &RecurrenceTable<Rat>,
    q: &Rat,
    seed_r0: &Rat,
    n: usize,
) -> Result<(Rat, Rat)> {
    if n + 1 > rt.len() {
        return Err(Error::validation("ladder needs table up to n"));
    }
    let mut t = Rat::from(1);
    let mut r = seed_r0.clone();
    for k in 0..n {
        let tn = Rat::from(Rat::from(q - &rt.s[k]) * Rat::from(2)) * &r - &t;
        let tn = Rat::from(tn);
        if r == 0 {
            return Err(Error::Degeneracy("resolvent ladder hits R_k = 0".into()));
        }
        let denom = Rat::from(Rat::from(&rt.r[k + 1] * Rat::from(4)) * &r);
        let rn = Rat::from(Rat::from(&tn * &tn) - Rat::from(1)) / denom;
        t = tn;
        r = Rat::from(rn);
    }
    Ok((t, r))
}

/// Float version of the exact ladder.
pub fn ladder_float(
    rt: &RecurrenceTable<BigFloat>,
    q: &BigFloat,
    seed_r0: &BigFloat,
    n: usize,
) -> Result<(BigFloat, BigFloat)> {
    if n + 1 > rt.len() {
        return Err(Error::validation("ladder needs table up to n"));
    }
    let mut t = BigFloat::from_i64(1);
    let mut r = seed_r0.clone();
    for k in 0..n {
        let tn = q.sub(&rt.s[k]).mul_i64(2).mul(&r).sub(&t);
        if r.is_zero() {
            return Err(Error::Degeneracy("resolvent ladder hits R_k = 0".into()));
        }
        let denom = rt.r[k + 1].mul_i64(4).mul(&r);
        let rn = tn.mul(&tn).sub(&BigFloat::from_i64(1)).div(&denom);
        t = tn;
        r = rn;
    }
    Ok((t, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelPreset;
    use crate::numerics::with_digits;
    use crate::oracle::{
        identity_residuals, moments_exact, moments_float, recurrence_from_moments,
    };

    fn float_table(
        preset: &ModelPreset,
        big_n: i64,
        n_max: usize,
        digits: u32,
    ) -> crate::oracle::RecurrenceTable<BigFloat> {
        let p = preset.potential();
        let work = digits + 10 + 2 * n_max as u32;
        with_digits(work, || {
            let m = moments_float(&p, &Rat::from(big_n), 2 * n_max + 2, work).unwrap();
            recurrence_from_moments(&m, n_max).unwrap()
        })
    }

    #[test]
    fn t0_is_one_exactly() {
        with_digits(50, || {
            let rt = float_table(&ModelPreset::LinearPenner, 1, 4, 50);
            let p = ModelPreset::LinearPenner.potential();
            let z = Complex::from_rat_pair(&Rat::from(-2), &Rat::from(0));
            let pair = resolvent_quadrature(&rt, &p, 0, &z, 50).unwrap();
            assert!(pair.tn.sub(&Complex::one()).abs().is_zero());
        });
    }

    #[test]
    fn double_penner_t1_at_zero() {
        // T_1(0) = 2 for alpha_0 = alpha_1 = 1
        with_digits(50, || {
            let preset = ModelPreset::DoublePenner {
                mu0: Rat::from(1),
                mu1: Rat::from(1),
            };
            let rt = float_table(&preset, 1, 4, 50);
            let p = preset.potential();
            let z = Complex::zero();
            let pair = resolvent_quadrature(&rt, &p, 1, &z, 50).unwrap();
            let diff = pair.tn.sub(&Complex::new(BigFloat::from_i64(2), BigFloat::zero()));
            assert!(
                diff.abs().to_f64() < 1e-38,
                "T_1(0) = {:?}",
                pair.tn
            );
        });
    }

    #[test]
    fn ladder_matches_closed_forms_linear_penner() {
        // T_n(0) = 1 + 2n/N, R_n(0) = -1
        let p = ModelPreset::LinearPenner.potential();
        let m = moments_exact(&p, &Rat::from(3), 20).unwrap();
        let rt = recurrence_from_moments(&m, 8).unwrap();
        let seed = crate::oracle::moments::exact_resolvent_seed(&p, &Rat::from(3), &Rat::from(0))
            .unwrap();
        for n in 0..=6 {
            let (t, r) = ladder_rational(&rt, &Rat::from(0), &seed, n).unwrap();
            let expect_t = Rat::from(1) + Rat::from((2 * n as i64, 3));
            assert_eq!(t, expect_t, "T_{n}(0)");
            assert_eq!(r, Rat::from(-1), "R_{n}(0)");
        }
    }

    #[test]
    fn quadrature_and_tridiagonal_agree_off_contour() {
        // the truncated solve converges like exp(-c sqrt(|z| M)), so a table
        // of moderate length is enough at z = -9
        with_digits(50, || {
            let rt = float_table(&ModelPreset::LinearPenner, 1, 80, 50);
            let p = ModelPreset::LinearPenner.potential();
            let z = Complex::from_rat_pair(&Rat::from(-9), &Rat::from(0));
            for n in [1usize, 3] {
                let a = resolvent_quadrature(&rt, &p, n, &z, 50).unwrap();
                let b = resolvent_tridiagonal(&rt, n, &z, -24.0).unwrap();
                assert!(
                    a.rn.sub(&b.rn).abs().to_f64() < 1e-22,
                    "R_{n} mismatch: {:?} vs {:?}",
                    a.rn,
                    b.rn
                );
                assert!(a.tn.sub(&b.tn).abs().to_f64() < 1e-22);
            }
        });
    }

    #[test]
    fn gaussian_on_contour_detour_satisfies_rid1() {
        // z = 3 lies on the real-line contour; the detour keeps the
        // identities valid
        with_digits(50, || {
            let rt = float_table(&ModelPreset::Gaussian, 1, 8, 50);
            let p = ModelPreset::Gaussian.potential();
            let z = Complex::from_rat_pair(&Rat::from(3), &Rat::from(0));
            let p0 = resolvent_quadrature(&rt, &p, 0, &z, 50).unwrap();
            let p1 = resolvent_quadrature(&rt, &p, 1, &z, 50).unwrap();
            let p2 = resolvent_quadrature(&rt, &p, 2, &z, 50).unwrap();
            let (rid1, rid2) = identity_residuals(&p0, &p1, &p2, &rt, &z).unwrap();
            assert!(rid1.to_f64() < 1e-30, "rid1 = {}", rid1.to_decimal(5));
            assert!(rid2.to_f64() < 1e-30, "rid2 = {}", rid2.to_decimal(5));
        });
    }

    #[test]
    fn identity_residuals_complex_point() {
        with_digits(50, || {
            let rt = float_table(&ModelPreset::Gaussian, 1, 10, 50);
            let p = ModelPreset::Gaussian.potential();
            let z = Complex::from_rat_pair(&Rat::from(2), &Rat::from(1));
            let pairs: Vec<_> = (1..=3)
                .map(|n| resolvent_quadrature(&rt, &p, n, &z, 50).unwrap())
                .collect();
            let (rid1, rid2) = identity_residuals(&pairs[0], &pairs[1], &pairs[2], &rt, &z).unwrap();
            assert!(rid1.to_f64() < 1e-30);
            assert!(rid2.to_f64() < 1e-30);
        });
    }
}
