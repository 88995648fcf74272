use penner_core::model::ModelPreset;
use penner_core::numerics::{with_digits, Complex, Rat};
use penner_core::oracle::{moments_float, recurrence_from_moments};

fn entry(rt: &penner_core::oracle::RecurrenceTable<penner_core::BigFloat>, m_dim: usize, z: &Complex) -> Complex {
    let mut diag: Vec<Complex> = (0..m_dim).map(|i| z.sub(&Complex::from_real(rt.s[i].clone()))).collect();
    let mut rhs: Vec<Complex> = (0..m_dim).map(|_| Complex::zero()).collect();
    rhs[3] = Complex::one();
    for i in 1..m_dim {
        let w = Complex::from_real(rt.r[i].neg()).div(&diag[i-1]).unwrap();
        diag[i] = diag[i].add(&w);
        let upd = w.mul(&rhs[i-1]);
        rhs[i] = rhs[i].sub(&upd);
    }
    let mut u = vec![Complex::zero(); m_dim];
    u[m_dim-1] = rhs[m_dim-1].div(&diag[m_dim-1]).unwrap();
    for i in (0..m_dim-1).rev() {
        u[i] = rhs[i].add(&u[i+1]).div(&diag[i]).unwrap();
    }
    u[3].clone()
}

fn main() {
    with_digits(60, || {
        let p = ModelPreset::LinearPenner.potential();
        let n_max = 200;
        let work = 50 + 10 + 2 * n_max as u32;
        let m = with_digits(work, || moments_float(&p, &Rat::from(1), 2 * n_max + 2, work).unwrap());
        let rt = recurrence_from_moments(&m, n_max).unwrap();
        for (zr, zi) in [(-4i64, 0i64), (-9, 0), (-1, 3), (2, 4)] {
            let z = Complex::from_rat_pair(&Rat::from(zr), &Rat::from(zi));
            print!("z = {zr}+{zi}i: ");
            let mut prev: Option<Complex> = None;
            for m_dim in [40usize, 80, 120, 160, 200] {
                let cur = entry(&rt, m_dim, &z);
                if let Some(p) = &prev {
                    print!(" M{m_dim}:{:8.1e}", cur.sub(p).abs().to_f64());
                }
                prev = Some(cur);
            }
            println!();
        }
    });
}
