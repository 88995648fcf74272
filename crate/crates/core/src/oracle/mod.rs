//! Ground-truth engine: moments of `e^{-N W}`, Hankel-based recurrence
//! coefficients, partition functions, resolvent values `R_n(z)`, `T_n(z)`,
//! and residual checks of the string equations and resolvent identities.

pub mod moments;
pub mod quadrature;
pub mod resolvent;

pub use moments::{detect_family, moments_exact, moments_float, ClassicalFamily, MomentTable};
pub use resolvent::{ladder_float, ladder_rational, resolvent_quadrature, resolvent_tridiagonal, ResolventPair};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::model::Potential;
use crate::numerics::{BigFloat, Complex, ExactVal, Rat};
use crate::series::LaurentTail;

/// Recurrence data `h_0..h_n`, `r_1..r_n`, `s_0..s_n` (with `r_0 = 0`).
///
/// For the exact backend the `h` column is stored relative to the symbolic
/// factor in `factor`; `r` and `s` are always plain backend scalars.
#[derive(Clone, Debug)]
pub struct RecurrenceTable<C: Field> {
    pub big_n: Rat,
    pub h: Vec<C>,
    pub r: Vec<C>,
    pub s: Vec<C>,
    pub factor: Option<ExactVal>,
}

impl<C: Field> RecurrenceTable<C> {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// Monic orthogonal polynomial `P_n` evaluated by the three-term
    /// recursion `P_{n+1} = (z - s_n) P_n - r_n P_{n-1}`.
    pub fn eval_p(&self, n: usize, z: &C) -> C {
        let mut pm = z.zero_like(); // P_{-1}
        let mut p = z.one_like(); // P_0
        for k in 0..n {
            let next = z.sub(&self.s[k]).mul(&p).sub(&self.r[k].mul(&pm));
            pm = p;
            p = next;
        }
        p
    }
}

impl RecurrenceTable<BigFloat> {
    /// `P_n` at a complex point.
    pub fn eval_p_complex(&self, n: usize, z: &Complex) -> Complex {
        let mut pm = Complex::zero();
        let mut p = Complex::one();
        for k in 0..n {
            let sk = Complex::from_real(self.s[k].clone());
            let next = z.sub(&sk).mul(&p).sub(&pm.mul_real(&self.r[k]));
            pm = p;
            p = next;
        }
        p
    }
}

/// Chebyshev (modified-moment with monomial basis) algorithm: recurrence
/// coefficients from raw moments. Exact over rationals; over floats the
/// caller is responsible for supplying enough guard digits.
///
/// Needs `m_0..m_{2 n_max + 1}`.
pub fn recurrence_from_moments<C: Field>(
    table: &MomentTable<C>,
    n_max: usize,
) -> Result<RecurrenceTable<C>> {
    let m = &table.m;
    if m.len() < 2 * n_max + 2 {
        return Err(Error::validation(format!(
            "need {} moments for n_max = {n_max}, got {}",
            2 * n_max + 2,
            m.len()
        )));
    }
    let zero = m[0].zero_like();
    if m[0].is_zero() {
        return Err(Error::Degeneracy("vanishing zeroth moment".into()));
    }

    // sigma[k][l] = integral of P_k(z) z^l against the weight
    let mut sig_prev: Vec<C> = Vec::new(); // sigma_{k-1, l}, offset l0 = k-1
    let mut sig: Vec<C> = m.clone(); // sigma_{0, l}, offset 0
    let mut h = vec![m[0].clone()];
    let mut r = vec![zero.clone()];
    let mut s = vec![m[1].div(&m[0]).map_err(|_| degeneracy(0))?];

    for k in 1..=n_max {
        // sigma_{k, l} = sigma_{k-1, l+1} - s_{k-1} sigma_{k-1, l} - r_{k-1} sigma_{k-2, l}
        let lo = k;
        let hi = 2 * n_max + 1 - k;
        let mut next: Vec<C> = Vec::with_capacity(hi - lo + 1);
        for l in lo..=hi {
            // previous rows are offset by their own k
            let prev_at = |row: &Vec<C>, row_lo: usize, idx: usize| -> C {
                row.get(idx - row_lo).cloned().unwrap_or_else(|| zero.clone())
            };
            let mut v = prev_at(&sig, k - 1, l + 1).sub(&s[k - 1].mul(&prev_at(&sig, k - 1, l)));
            if k >= 2 {
                v = v.sub(&r[k - 1].mul(&prev_at(&sig_prev, k - 2, l)));
            }
            next.push(v);
        }
        let hk = next[0].clone(); // sigma_{k,k}
        let h_prev = h[k - 1].clone();
        let rk = hk.div(&h_prev).map_err(|_| degeneracy(k))?;
        if hk.is_zero() {
            return Err(degeneracy(k));
        }
        let sk = if next.len() >= 2 {
            // s_k = sigma_{k,k+1}/sigma_{k,k} - sigma_{k-1,k}/sigma_{k-1,k-1}
            let t1 = next[1].div(&hk).map_err(|_| degeneracy(k))?;
            let t2 = sig[1].div(&sig[0]).map_err(|_| degeneracy(k))?;
            t1.sub(&t2)
        } else {
            zero.clone()
        };
        h.push(hk);
        r.push(rk);
        s.push(sk);
        sig_prev = std::mem::replace(&mut sig, next);
    }

    Ok(RecurrenceTable {
        big_n: table.big_n.clone(),
        h,
        r,
        s,
        factor: table.factor.clone(),
    })
}

fn degeneracy(k: usize) -> Error {
    Error::Degeneracy(format!(
        "vanishing Hankel determinant at level {k}; invalid contour or weight"
    ))
}

/// `log Z_n = n log h_0 + sum_{k=1}^{n-1} (n-k) log r_k` over floats.
pub fn log_partition_float(rt: &RecurrenceTable<BigFloat>, n: usize) -> Result<BigFloat> {
    if n == 0 {
        return Ok(BigFloat::zero());
    }
    if n > rt.h.len() {
        return Err(Error::validation("partition index beyond table length"));
    }
    let h0 = match &rt.factor {
        None => rt.h[0].clone(),
        Some(f) => f.to_bigfloat()?.mul(&rt.h[0]),
    };
    if !h0.is_positive() {
        return Err(Error::Degeneracy("non-positive h_0".into()));
    }
    let mut acc = h0.ln()?.mul_i64(n as i64);
    for k in 1..n {
        if !rt.r[k].is_positive() {
            return Err(Error::Degeneracy(format!("non-positive r_{k}")));
        }
        acc = acc.add(&rt.r[k].ln()?.mul_i64((n - k) as i64));
    }
    Ok(acc)
}

/// `Z_n` as an exact symbolic value: `factor^n` times a rational.
pub fn partition_exact(rt: &RecurrenceTable<Rat>, n: usize) -> Result<ExactVal> {
    if n > rt.h.len() {
        return Err(Error::validation("partition index beyond table length"));
    }
    let factor = rt
        .factor
        .clone()
        .ok_or_else(|| Error::unsupported("moment factor is outside the exact field"))?;
    let mut rational = Rat::from(1);
    for k in 0..n {
        rational *= &rt.h[k];
    }
    if rational <= 0 {
        return Err(Error::Degeneracy("non-positive partition function".into()));
    }
    Ok(factor.pow_i(n as i64)?.mul(&ExactVal::from_rat(&rational)?))
}

/// Band entries of Jacobi-matrix powers: `(L^k)_{n,n}` and `(L^k)_{n,n-1}`
/// for `k = 0..k_max`, computed by applying `L` to unit vectors on a window.
///
/// The table must extend to index `n + k_max`.
pub fn jacobi_power_entries<C: Field>(
    rt: &RecurrenceTable<C>,
    n: usize,
    k_max: usize,
) -> Result<(Vec<C>, Vec<C>)> {
    if n + k_max + 1 > rt.len() {
        return Err(Error::validation(format!(
            "jacobi_power_entries needs table up to index {}, have {}",
            n + k_max,
            rt.len() - 1
        )));
    }
    let zero = rt.s[0].zero_like();
    // v = L^k e_j over indices [0, n + k_max]; (L v)_i = r_i v_{i-1} + s_i v_i + v_{i+1}
    let apply = |v: &[C]| -> Vec<C> {
        let m = v.len();
        (0..m)
            .map(|i| {
                let mut acc = rt.s[i].mul(&v[i]);
                if i >= 1 {
                    acc = acc.add(&rt.r[i].mul(&v[i - 1]));
                }
                if i + 1 < m {
                    acc = acc.add(&v[i + 1]);
                }
                acc
            })
            .collect()
    };
    let dim = n + k_max + 1;
    let unit = |j: usize| -> Vec<C> {
        let mut v = vec![zero.clone(); dim];
        v[j] = rt.s[0].one_like();
        v
    };
    let mut diag = Vec::with_capacity(k_max + 1);
    let mut sub = Vec::with_capacity(k_max + 1);
    let mut vn = unit(n);
    let mut vm = if n >= 1 { unit(n - 1) } else { unit(0) };
    for _k in 0..=k_max {
        diag.push(vn[n].clone());
        sub.push(if n >= 1 { vm[n].clone() } else { zero.clone() });
        vn = apply(&vn);
        vm = apply(&vm);
    }
    Ok((diag, sub))
}

/// 1/z-expansions of `R_n` and of the tail of `T_n` (Laurent coefficients of
/// `T_n - 1`), built from Jacobi band powers to depth `k_max + 1`.
pub fn resolvent_tails<C: Field>(
    rt: &RecurrenceTable<C>,
    n: usize,
    k_max: usize,
) -> Result<(LaurentTail<C>, LaurentTail<C>)> {
    let (diag, sub) = jacobi_power_entries(rt, n, k_max)?;
    // R_n = sum_k (L^k)_{nn} z^{-k-1}  (the k = 0 term is 1/z)
    let r_tail = LaurentTail::new(diag);
    // T_n - 1 = 2 sum_{k>=1} (L^k)_{n,n-1} z^{-k-1}
    let two = Rat::from(2);
    let t_coeffs: Vec<C> = sub
        .iter()
        .enumerate()
        .map(|(k, v)| if k == 0 { v.zero_like() } else { v.scale(&two) })
        .collect();
    Ok((r_tail, LaurentTail::new(t_coeffs)))
}

/// Residuals of the resolvent identities at one point:
/// `res1 = |T_n^2 - 4 r_n R_n R_{n-1} - 1|`,
/// `res2 = |2 (z - s_n) R_n - T_{n+1} - T_n|`.
pub fn identity_residuals(
    prev: &ResolventPair,
    cur: &ResolventPair,
    next: &ResolventPair,
    rt: &RecurrenceTable<BigFloat>,
    z: &Complex,
) -> Result<(BigFloat, BigFloat)> {
    let n = cur.n;
    if prev.n + 1 != n || next.n != n + 1 {
        return Err(Error::validation("identity_residuals needs indices n-1, n, n+1"));
    }
    if n >= rt.len() {
        return Err(Error::validation("table too short for identity residuals"));
    }
    let four_r = rt.r[n].mul_i64(4);
    let res1 = cur
        .tn
        .mul(&cur.tn)
        .sub(&cur.rn.mul(&prev.rn).mul_real(&four_r))
        .sub(&Complex::one())
        .abs();
    let sn = Complex::from_real(rt.s[n].clone());
    let res2 = z
        .sub(&sn)
        .mul(&cur.rn)
        .mul_real(&BigFloat::from_i64(2))
        .sub(&next.tn)
        .sub(&cur.tn)
        .abs();
    Ok((res1, res2))
}

/// How `string_residuals` obtains resolvent values at the log-term points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResolventSource {
    /// Exact ladder seeded by the classical-family closed forms.
    ExactLadder,
    /// High-precision quadrature of the integral representations.
    Quadrature,
}

/// Absolute deviations of the two string equations at index `n` over exact
/// rationals. For Z2-symmetric potentials the second equation holds by
/// parity and `res2 = 0` is returned.
pub fn string_residuals_exact(
    rt: &RecurrenceTable<Rat>,
    p: &Potential,
    n: usize,
) -> Result<(Rat, Rat)> {
    let big_n = &rt.big_n;
    if p.z2_symmetric {
        // (1/2pi i) oint V'(lam) T_n(lam) dlam + sum mu_i (T_n(q_i^2) - 1) = n/N
        let vp = p.v_prime_coeffs()?;
        let depth = 2 * vp.len() + 1;
        let (diag, sub) = jacobi_power_entries(rt, n, depth)?;
        let _ = diag;
        // lambda-plane tail of T_n: coeff of lam^{-(j+1)} is 2 (L^{2j+1})_{n,n-1}
        let t_lam: Vec<Rat> = (0..vp.len())
            .map(|j| Rat::from(&sub[2 * j + 1] * Rat::from(2)))
            .collect();
        let tail = LaurentTail::new(if t_lam.is_empty() { vec![Rat::from(0)] } else { t_lam });
        let mut lhs = tail.residue_pair(&vp);
        for t in &p.logterms {
            // presets have q = 0; T_n(0) = (-1)^n by parity and rid2
            let tq = if n % 2 == 0 { Rat::from(1) } else { Rat::from(-1) };
            lhs += Rat::from(&t.mu * Rat::from(&tq - Rat::from(1)));
        }
        let res1 = Rat::from(&lhs - Rat::from(Rat::from(n as u64) / big_n.clone())).abs();
        return Ok((res1, Rat::from(0)));
    }

    let w0p = p.w0_prime_coeffs();
    let depth = w0p.len().max(1);
    let (r_tail, t_tail) = resolvent_tails(rt, n, depth)?;
    let mut lhs1 = t_tail.residue_pair(&w0p);
    let mut lhs2 = r_tail.residue_pair(&w0p);
    for t in &p.logterms {
        let (tq, rq) = ladder_values_exact(rt, p, &t.q_re, n)?;
        lhs1 += Rat::from(&t.mu * Rat::from(&tq - Rat::from(1)));
        lhs2 += Rat::from(&t.mu * &rq);
    }
    let two_x = Rat::from(Rat::from(2 * n as u64) / big_n.clone());
    Ok((Rat::from(&lhs1 - two_x).abs(), lhs2.abs()))
}

/// `(T_n(q), R_n(q))` by the exact resolvent ladder from the classical seed.
fn ladder_values_exact(
    rt: &RecurrenceTable<Rat>,
    p: &Potential,
    q: &Rat,
    n: usize,
) -> Result<(Rat, Rat)> {
    let seed = moments::exact_resolvent_seed(p, &rt.big_n, q)?;
    let vals = resolvent::ladder_rational(rt, q, &seed, n)?;
    Ok(vals)
}

/// Float version of the string residuals; resolvent values at the `q_i` come
/// from the requested source.
pub fn string_residuals_float(
    rt: &RecurrenceTable<BigFloat>,
    p: &Potential,
    n: usize,
    digits: u32,
    source: ResolventSource,
) -> Result<(BigFloat, BigFloat)> {
    let big_n = &rt.big_n;
    let nf = BigFloat::from_rat(big_n);
    if p.z2_symmetric {
        let vp = p.v_prime_coeffs()?;
        let depth = 2 * vp.len() + 1;
        let (_, sub) = jacobi_power_entries(rt, n, depth)?;
        let t_lam: Vec<BigFloat> = (0..vp.len())
            .map(|j| sub[2 * j + 1].mul_i64(2))
            .collect();
        let tail = LaurentTail::new(if t_lam.is_empty() {
            vec![BigFloat::zero()]
        } else {
            t_lam
        });
        let vpf: Vec<BigFloat> = vp.iter().map(BigFloat::from_rat).collect();
        let mut lhs = tail.residue_pair(&vpf);
        for t in &p.logterms {
            let tq = if n % 2 == 0 {
                BigFloat::from_i64(1)
            } else {
                BigFloat::from_i64(-1)
            };
            lhs = lhs.add(&tq.sub(&BigFloat::from_i64(1)).mul_rat(&t.mu));
        }
        let res1 = lhs.sub(&BigFloat::from_i64(n as i64).div(&nf)).abs();
        return Ok((res1, BigFloat::zero()));
    }

    let w0p = p.w0_prime_coeffs();
    let depth = w0p.len().max(1);
    let (r_tail, t_tail) = resolvent_tails(rt, n, depth)?;
    let w0pf: Vec<BigFloat> = w0p.iter().map(BigFloat::from_rat).collect();
    let mut lhs1 = t_tail.residue_pair(&w0pf);
    let mut lhs2 = r_tail.residue_pair(&w0pf);
    for t in &p.logterms {
        let (tq, rq) = match source {
            ResolventSource::Quadrature => {
                let q = Complex::from_rat_pair(&t.q_re, &Rat::from(0));
                let pair = resolvent_quadrature(rt, p, n, &q, digits)?;
                (pair.tn.re.clone(), pair.rn.re.clone())
            }
            ResolventSource::ExactLadder => {
                let seed = moments::exact_resolvent_seed(p, big_n, &t.q_re)?;
                let seedf = BigFloat::from_rat(&seed);
                let qf = BigFloat::from_rat(&t.q_re);
                resolvent::ladder_float(rt, &qf, &seedf, n)?
            }
        };
        lhs1 = lhs1.add(&tq.sub(&BigFloat::from_i64(1)).mul_rat(&t.mu));
        lhs2 = lhs2.add(&rq.mul_rat(&t.mu));
    }
    let two_x = BigFloat::from_i64(2 * n as i64).div(&nf);
    Ok((lhs1.sub(&two_x).abs(), lhs2.abs()))
}
