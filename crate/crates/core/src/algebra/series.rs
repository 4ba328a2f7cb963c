//! Truncated power series in a formal variable `alpha` with coefficients in
//! `H^1`.

use std::fmt;

use super::lincomb::LinComb;
use super::maps::{coproduct_word, sigma_word, HeadMap};
use super::products::stuffle;

/// `c_0 + c_1 alpha + ... + c_M alpha^M`, truncated at a fixed order.
#[derive(Clone, PartialEq, Eq)]
pub struct AlphaSeries {
    coeffs: Vec<LinComb>,
}

impl AlphaSeries {
    pub fn zero(order: usize) -> Self {
        AlphaSeries {
            coeffs: vec![LinComb::zero(); order + 1],
        }
    }

    pub fn constant(u: LinComb, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = u;
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, m: usize) -> &LinComb {
        &self.coeffs[m]
    }

    pub fn coeffs(&self) -> &[LinComb] {
        &self.coeffs
    }

    pub fn add_assign(&mut self, other: &AlphaSeries) {
        assert_eq!(self.order(), other.order(), "series orders differ");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    /// Cauchy product with `*` on coefficients, dropping powers above the
    /// common order.
    pub fn stuffle(&self, other: &AlphaSeries) -> AlphaSeries {
        assert_eq!(self.order(), other.order(), "series orders differ");
        let m = self.order();
        let mut out = Self::zero(m);
        for i in 0..=m {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(m - i) {
                out.coeffs[i + j] += &stuffle(&self.coeffs[i], &other.coeffs[j]);
            }
        }
        out
    }
}

impl fmt::Debug for AlphaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "a^{m}[{c}]")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `sigma = sum_m alpha^m sigma_m`, truncated at `order`.
pub fn sigma_series(u: &LinComb, order: usize) -> AlphaSeries {
    AlphaSeries {
        coeffs: (0..=order)
            .map(|m| u.map_linear(|w| sigma_word(m, w)))
            .collect(),
    }
}

/// `lambda = (*) . (id (x) Stilde sigma) . Delta`, truncated at `order`.
/// Its `alpha^1` coefficient is `psi` on `yH`.
pub fn lambda_truncated(u: &LinComb, order: usize) -> AlphaSeries {
    let delta = u
        .iter()
        .fold(super::tensor::TensorComb::zero(), |mut acc, (w, c)| {
            acc.add_scaled(&coproduct_word(w), c);
            acc
        });
    let mut out = AlphaSeries::zero(order);
    for ((a, b), c) in delta.iter() {
        let left = LinComb::word(a.clone());
        for m in 0..=order {
            let right = HeadMap::Stilde.apply(&sigma_word(m, b));
            if right.is_zero() {
                continue;
            }
            out.coeffs[m].add_scaled(&stuffle(&left, &right), c);
        }
    }
    out
}
