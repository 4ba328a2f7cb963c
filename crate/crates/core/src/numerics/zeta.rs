//! Riemann zeta at real arguments by Euler-Maclaurin, with Bernoulli
//! numbers generated exactly.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::Q;

/// `B_0, ..., B_n` from `sum_{j<=m} binom(m+1, j) B_j = 0`, with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Vec<Q> {
    let mut b: Vec<Q> = Vec::with_capacity(n + 1);
    b.push(Q::from_integer(1.into()));
    for m in 1..=n {
        let mut s = Q::zero();
        for (j, bj) in b.iter().enumerate() {
            s += bj * Q::from_integer(binomial(BigInt::from(m + 1), BigInt::from(j)));
        }
        b.push(-s / Q::from_integer(BigInt::from(m + 1)));
    }
    b
}

const EM_TERMS: usize = 14;
const EM_CUTOFF: f64 = 16.0;

fn b2k() -> &'static [f64] {
    static CELL: OnceLock<Vec<f64>> = OnceLock::new();
    CELL.get_or_init(|| {
        let b = bernoulli(2 * EM_TERMS);
        (1..=EM_TERMS).map(|k| b[2 * k].to_f64().unwrap()).collect()
    })
}

/// `zeta(s)` for real `s > 1`, accurate to a few ulps at moderate `s`.
pub fn zeta(s: f64) -> f64 {
    assert!(s > 1.0, "zeta needs s > 1, got {s}");
    let n = EM_CUTOFF;
    if s > 60.0 {
        // 1 + 2^-s + 3^-s already exhausts double precision.
        return 1.0 + 2f64.powf(-s) + 3f64.powf(-s);
    }
    let mut sum = 0.0;
    for m in (1..n as usize).rev() {
        sum += (m as f64).powf(-s);
    }
    sum += n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    // Correction terms B_{2k}/(2k)! * s(s+1)...(s+2k-2) * n^{-s-2k+1}.
    let mut rising = s;
    let mut fact = 2.0;
    let mut npow = n.powf(-s - 1.0);
    for (k, b) in b2k().iter().enumerate() {
        let k = k + 1;
        let term = b / fact * rising * npow;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
        rising *= (s + 2.0 * k as f64 - 1.0) * (s + 2.0 * k as f64);
        fact *= (2 * k + 1) as f64 * (2 * k + 2) as f64;
        npow /= n * n;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qf;
    use std::f64::consts::PI;

    #[test]
    fn bernoulli_values() {
        let b = bernoulli(8);
        assert_eq!(b[1], qf(-1, 2));
        assert_eq!(b[2], qf(1, 6));
        assert_eq!(b[4], qf(-1, 30));
        assert_eq!(b[8], qf(-1, 30));
        assert!(b[3].is_zero() && b[5].is_zero());
    }

    #[test]
    fn zeta_values() {
        assert!((zeta(2.0) - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta(4.0) - PI.powi(4) / 90.0).abs() < 1e-15);
        // Apery's constant.
        assert!((zeta(3.0) - 1.202_056_903_159_594_3).abs() < 1e-15);
        assert!((zeta(30.0) - 1.0 - 2f64.powi(-30) - 3f64.powi(-30)).abs() < 1e-16);
    }
}
