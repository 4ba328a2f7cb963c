//! Refining a computation must stay within the error bound reported by the
//! coarser one.

use num_complex::Complex64;
use pmskit::numerics::{
    eval_hurwitz, eval_k, eval_l_quadrature, eval_pms, z_y, ComplexEstimate, KMethod,
    NumericOptions, SumVariant,
};
use pmskit::{Composition, LinComb};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(p: &[u32]) -> Composition {
    Composition::from_parts(p)
}

fn with_n(n: usize) -> NumericOptions {
    NumericOptions {
        trunc_n: n,
        ..NumericOptions::default()
    }
}

fn honest(coarse: ComplexEstimate, fine: ComplexEstimate, what: &str) {
    let moved = (coarse.value - fine.value).norm();
    assert!(
        moved <= coarse.err,
        "{what}: moved {moved:.2e} beyond bound {:.2e}",
        coarse.err
    );
}

#[test]
fn doubling_n_stays_within_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let ks = [
        c(&[2]),
        c(&[3]),
        c(&[1, 2]),
        c(&[2, 2]),
        c(&[1, 1, 2]),
        c(&[1, 3]),
    ];
    for _ in 0..6 {
        let alpha = Complex64::new(rng.gen_range(-0.8..1.5), rng.gen_range(-0.5..0.5));
        for n in [5_000, 40_000] {
            let (lo, hi) = (with_n(n), with_n(2 * n));
            for k in &ks {
                honest(
                    eval_pms(k, alpha, &lo).unwrap(),
                    eval_pms(k, alpha, &hi).unwrap(),
                    &format!("pms {k} at {alpha}, N={n}"),
                );
                for v in [SumVariant::Strict, SumVariant::Weak] {
                    honest(
                        eval_hurwitz(k, alpha, v, &lo).unwrap(),
                        eval_hurwitz(k, alpha, v, &hi).unwrap(),
                        &format!("hurwitz {k} {v:?} at {alpha}, N={n}"),
                    );
                }
            }
            honest(
                z_y(alpha, &lo).unwrap(),
                z_y(alpha, &hi).unwrap(),
                &format!("z_y at {alpha}"),
            );
        }
    }
}

#[test]
fn tightening_quadrature_stays_within_bound() {
    let coarse = NumericOptions {
        quad_tol: 1e-7,
        ..NumericOptions::default()
    };
    let fine = NumericOptions {
        quad_tol: 5e-8,
        ..NumericOptions::default()
    };
    for k in [c(&[2]), c(&[1, 2]), c(&[3])] {
        for a in [0.3, -0.4] {
            let a = Complex64::new(a, 0.1);
            honest(
                eval_l_quadrature(&k, a, &coarse).unwrap(),
                eval_l_quadrature(&k, a, &fine).unwrap(),
                &format!("unit interval {k} at {a}"),
            );
        }
    }
    for w in [&[1][..], &[2], &[1, 1]] {
        let u = LinComb::from_parts(w);
        let a = Complex64::new(0.4, 0.2);
        honest(
            eval_k(&u, a, KMethod::Quadrature, &coarse).unwrap(),
            eval_k(&u, a, KMethod::Quadrature, &fine).unwrap(),
            &format!("path integral {w:?}"),
        );
    }
}
