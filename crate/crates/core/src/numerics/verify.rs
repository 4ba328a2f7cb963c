//! Regularized values on `H^1`, the evaluator `K_alpha = Z^(alpha) o psi`,
//! and numeric checks of the identities built on them.

use std::collections::HashMap;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use super::quad::eval_k_quadrature;
use super::sums::{eval_hurwitz, eval_pms, z_y, SumVariant};
use super::{check_alpha, ComplexEstimate, NumericOptions};
use crate::algebra::{harmonic_regularize, psi, sigma, stuffle, HeadMap, LinComb};
use crate::error::{Error, Result};
use crate::words::{Composition, Letter, Word};

fn zero_c() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Strict Hurwitz values memoized for one `alpha`.
struct HurwitzCache<'a> {
    alpha: Complex64,
    opts: &'a NumericOptions,
    values: HashMap<Composition, ComplexEstimate>,
}

impl<'a> HurwitzCache<'a> {
    fn new(alpha: Complex64, opts: &'a NumericOptions) -> Self {
        HurwitzCache {
            alpha,
            opts,
            values: HashMap::new(),
        }
    }

    fn get(&mut self, w: &Composition) -> Result<ComplexEstimate> {
        if let Some(v) = self.values.get(w) {
            return Ok(*v);
        }
        let v = eval_hurwitz(w, self.alpha, SumVariant::Strict, self.opts)?;
        self.values.insert(w.clone(), v);
        Ok(v)
    }

    fn linear(&mut self, u: &LinComb) -> Result<ComplexEstimate> {
        let mut acc = ComplexEstimate::zero();
        for (w, c) in u.iter() {
            acc = acc + self.get(w)?.scale_q(c);
        }
        Ok(acc)
    }
}

/// The stuffle-regularized value on `H^1`: writes `u = sum_j y^{*j} * w_j`
/// and maps `y` to [`z_y`], so the result is multiplicative for `*`.
pub fn eval_zstar_reg(
    u: &LinComb,
    alpha: Complex64,
    opts: &NumericOptions,
) -> Result<ComplexEstimate> {
    check_alpha(alpha)?;
    let mut cache = HurwitzCache::new(alpha, opts);
    zstar_with(u, &mut cache)
}

fn zstar_with(u: &LinComb, cache: &mut HurwitzCache<'_>) -> Result<ComplexEstimate> {
    let reg = harmonic_regularize(u);
    let zy = if reg.parts.iter().any(|(j, _)| *j > 0) {
        z_y(cache.alpha, cache.opts)?
    } else {
        ComplexEstimate::zero()
    };
    let mut acc = ComplexEstimate::zero();
    for (j, w) in &reg.parts {
        acc = acc + zy.powi(*j) * cache.linear(w)?;
    }
    Ok(acc)
}

/// How to evaluate `K_alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KMethod {
    /// Series route: the regularized value of `psi(w)`.
    LemmaKey,
    /// Iterated integral along the negative real axis.
    Quadrature,
}

impl FromStr for KMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemma-key" | "lemma_key" | "series" => Ok(KMethod::LemmaKey),
            "quadrature" | "quad" => Ok(KMethod::Quadrature),
            _ => Err(Error::Usage(format!(
                "unknown method '{s}' (lemma-key, quadrature)"
            ))),
        }
    }
}

/// `K_alpha(w)` for `w` in `yH`.
pub fn eval_k(
    w: &LinComb,
    alpha: Complex64,
    method: KMethod,
    opts: &NumericOptions,
) -> Result<ComplexEstimate> {
    match method {
        KMethod::LemmaKey => eval_zstar_reg(&psi(w)?, alpha, opts),
        KMethod::Quadrature => eval_k_quadrature(w, alpha, opts),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Eq3Report {
    pub word: Composition,
    pub alpha: [f64; 2],
    pub order: usize,
    pub lhs: ComplexEstimate,
    pub rhs: ComplexEstimate,
    pub residual: f64,
    /// Bound on the omitted terms `m > order`.
    pub tail_allowance: f64,
    pub passed: bool,
}

/// Compares `K_alpha(w)` with `sum_{m <= order} (-alpha)^m K_0(sigma_m(w))`.
pub fn verify_eq3(
    w: &Composition,
    alpha: Complex64,
    order: usize,
    tol: f64,
    opts: &NumericOptions,
) -> Result<Eq3Report> {
    check_alpha(alpha)?;
    let u = LinComb::word(w.clone());
    let lhs = eval_k(&u, alpha, KMethod::LemmaKey, opts)?;
    let mut cache = HurwitzCache::new(zero_c(), opts);
    let mut rhs = ComplexEstimate::zero();
    let mut pow = Complex64::new(1.0, 0.0);
    let mut last = 0.0;
    for m in 0..=order {
        let km = zstar_with(&psi(&sigma(m, &u))?, &mut cache)?;
        let term = km.scale(pow);
        last = term.abs();
        rhs = rhs + term;
        pow *= -alpha;
    }
    let a = alpha.norm();
    // Coefficients grow polynomially in m, so a few ratios of slack suffice
    // well inside |alpha| < 1/2.
    let tail_allowance = if a < 1.0 {
        let ratio =
            (a * ((order + 3) as f64 / (order + 1) as f64).powi(w.depth() as i32 + 1)).min(0.999);
        last * ratio / (1.0 - ratio)
    } else {
        f64::INFINITY
    };
    let residual = (lhs.value - rhs.value).norm();
    Ok(Eq3Report {
        word: w.clone(),
        alpha: [alpha.re, alpha.im],
        order,
        lhs,
        rhs,
        residual,
        tail_allowance,
        passed: residual <= tol + tail_allowance + lhs.err + rhs.err,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct KyxReport {
    pub word: Composition,
    pub lhs: ComplexEstimate,
    pub rhs: ComplexEstimate,
    pub residual: f64,
    pub passed: bool,
}

/// `L_0(S beta(k) x) = sum_i (-1)^{r-i+1} Z*(S(k_1..k_i)) Z(sigma_1(k_r..k_{i+1}))`
/// with the right side regularized.
pub fn verify_lemma_kyx(k: &Composition, tol: f64, opts: &NumericOptions) -> Result<KyxReport> {
    if k.is_empty() {
        return Err(crate::error::domain("the identity needs a non-empty index"));
    }
    let r = k.depth();
    let left = HeadMap::S
        .apply(&HeadMap::Beta.apply(&LinComb::word(k.clone())))
        .to_xy()
        .append(Letter::X)
        .to_z()?;
    let mut lhs = ComplexEstimate::zero();
    for (w, c) in left.iter() {
        lhs = lhs + eval_pms(w, zero_c(), opts)?.scale_q(c);
    }
    let mut cache = HurwitzCache::new(zero_c(), opts);
    let mut rhs = ComplexEstimate::zero();
    for i in 0..r {
        let star = zstar_with(&HeadMap::S.apply(&LinComb::word(k.prefix(i))), &mut cache)?;
        let tail = zstar_with(&sigma(1, &LinComb::word(k.reversed_suffix(i))), &mut cache)?;
        let term = star * tail;
        rhs = if (r - i + 1).is_multiple_of(2) {
            rhs + term
        } else {
            rhs - term
        };
    }
    let residual = (lhs.value - rhs.value).norm();
    Ok(KyxReport {
        word: k.clone(),
        lhs,
        rhs,
        residual,
        passed: residual < tol,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Report {
    pub w1: Composition,
    pub w2: Composition,
    pub alpha: [f64; 2],
    /// `psi(w1 * w2) = 0` exactly.
    pub symbolic_zero: bool,
    /// Quadrature value of `K_alpha(w1 * w2)`, when that route applies.
    pub quadrature: Option<ComplexEstimate>,
    pub passed: bool,
}

/// Weight cap for the numeric route.
const THEOREM1_QUAD_WEIGHT: usize = 4;

/// `K_alpha(w1 * w2) = 0`, symbolically and, for `Re alpha > 0` and small
/// weight, by quadrature.
pub fn verify_theorem1(
    w1: &Composition,
    w2: &Composition,
    alpha: Complex64,
    tol: f64,
    opts: &NumericOptions,
) -> Result<Theorem1Report> {
    check_alpha(alpha)?;
    if w1.is_empty() || w2.is_empty() {
        return Err(crate::error::domain("both factors must lie in yH"));
    }
    let prod = stuffle(&LinComb::word(w1.clone()), &LinComb::word(w2.clone()));
    let symbolic_zero = psi(&prod)?.is_zero();
    let quadrature = if alpha.re > 0.0 && w1.weight() + w2.weight() <= THEOREM1_QUAD_WEIGHT {
        Some(eval_k_quadrature(&prod, alpha, opts)?)
    } else {
        None
    };
    let passed = symbolic_zero && quadrature.is_none_or(|q| q.abs() < tol);
    Ok(Theorem1Report {
        w1: w1.clone(),
        w2: w2.clone(),
        alpha: [alpha.re, alpha.im],
        symbolic_zero,
        quadrature,
        passed,
    })
}

/// `sum_{m <= order} (-alpha)^m Z(sigma_m(u))` at the base point, the
/// truncated expansion of the regularized value in `alpha`.
pub fn sigma_expansion(
    u: &LinComb,
    alpha: Complex64,
    order: usize,
    opts: &NumericOptions,
) -> Result<ComplexEstimate> {
    let mut cache = HurwitzCache::new(zero_c(), opts);
    let mut acc = ComplexEstimate::zero();
    let mut pow = Complex64::new(1.0, 0.0);
    for m in 0..=order {
        acc = acc + zstar_with(&sigma(m, u), &mut cache)?.scale(pow);
        pow *= -alpha;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{stuffle, HeadMap};
    use crate::numerics::zeta::zeta;
    use crate::words::{enumerate_words, WordSpace};
    use std::f64::consts::PI;

    fn c(p: &[u32]) -> Composition {
        Composition::from_parts(p)
    }
    fn lc(p: &[u32]) -> LinComb {
        LinComb::from_parts(p)
    }
    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }
    fn opts() -> NumericOptions {
        NumericOptions {
            trunc_n: 200_000,
            ..NumericOptions::default()
        }
    }

    #[test]
    fn regularized_examples() {
        let o = opts();
        let a = re(0.4);
        let v = eval_zstar_reg(&lc(&[1]), a, &o).unwrap();
        assert!(v.agrees_with(&z_y(a, &o).unwrap(), 1e-14));
        let v = eval_zstar_reg(&lc(&[1, 1]), re(0.0), &o).unwrap();
        assert!((v.value - re(-zeta(2.0) / 2.0)).norm() < 1e-10, "{v}");
        let h = eval_hurwitz(&c(&[1, 3]), a, SumVariant::Strict, &o).unwrap();
        let v = eval_zstar_reg(&lc(&[1, 3]), a, &o).unwrap();
        assert_eq!(v.value, h.value);
    }

    #[test]
    fn weak_is_strict_after_s() {
        let o = opts();
        for wt in 2..=4 {
            for w in enumerate_words(wt, WordSpace::YHX) {
                for a in [re(0.0), re(0.5), Complex64::new(-0.3, 0.2)] {
                    let weak = eval_hurwitz(&w, a, SumVariant::Weak, &o).unwrap();
                    let s = eval_zstar_reg(&HeadMap::S.apply(&LinComb::word(w.clone())), a, &o)
                        .unwrap();
                    assert!(weak.agrees_with(&s, 1e-12), "{w} {a}: {weak} vs {s}");
                }
            }
        }
    }

    #[test]
    fn regularized_value_is_multiplicative() {
        let o = opts();
        let words: Vec<Composition> = (1..=3)
            .flat_map(|n| enumerate_words(n, WordSpace::H1))
            .collect();
        for a in [re(0.0), re(0.5), re(-0.3)] {
            for u in &words {
                for v in &words {
                    let lu = LinComb::word(u.clone());
                    let lv = LinComb::word(v.clone());
                    let prod = eval_zstar_reg(&stuffle(&lu, &lv), a, &o).unwrap();
                    let sep =
                        eval_zstar_reg(&lu, a, &o).unwrap() * eval_zstar_reg(&lv, a, &o).unwrap();
                    assert!(prod.agrees_with(&sep, 1e-11), "{u} * {v} at {a}");
                }
            }
        }
    }

    #[test]
    fn sigma_expansion_recovers_shift() {
        let o = NumericOptions::default();
        let a = re(0.3);
        let s = sigma_expansion(&lc(&[2]), a, 20, &o).unwrap();
        let h = eval_hurwitz(&c(&[2]), a, SumVariant::Strict, &o).unwrap();
        assert!((s.value - h.value).norm() < 1e-8, "{s} vs {h}");
    }

    #[test]
    fn key_lemma_examples() {
        let o = opts();
        let v = eval_k(&lc(&[2]), re(0.0), KMethod::LemmaKey, &o).unwrap();
        assert!((v.value + re(2.0 * zeta(3.0))).norm() < 1e-10, "{v}");
        let a = re(0.5);
        let v = eval_k(&lc(&[1]), a, KMethod::LemmaKey, &o).unwrap();
        assert!((v.value + re(PI * PI / 2.0 - 4.0)).norm() < 1e-10, "{v}");
        let yy = stuffle(&lc(&[1]), &lc(&[1]));
        let v = eval_k(&yy, a, KMethod::LemmaKey, &o).unwrap();
        assert_eq!(v.value, zero_c());
    }

    #[test]
    fn methods_agree() {
        let o = opts();
        for w in [lc(&[1]), lc(&[2]), lc(&[1, 1])] {
            for a in [re(0.5), Complex64::new(0.3, 0.3)] {
                let s = eval_k(&w, a, KMethod::LemmaKey, &o).unwrap();
                let q = eval_k(&w, a, KMethod::Quadrature, &o).unwrap();
                assert!(s.agrees_with(&q, 1e-9), "{w:?} {a}: {s} vs {q}");
            }
        }
    }

    #[test]
    fn eq3_examples() {
        let o = NumericOptions::default();
        let r = verify_eq3(&c(&[2]), re(0.0), 0, 0.0, &o).unwrap();
        assert_eq!(r.residual, 0.0);
        for (w, a) in [(c(&[2]), 0.2), (c(&[1, 1]), 0.1)] {
            let r = verify_eq3(&w, re(a), 20, 1e-8, &o).unwrap();
            assert!(r.residual < 1e-8 && r.passed, "{r:?}");
        }
    }

    #[test]
    fn kyx_small() {
        let o = opts();
        let r = verify_lemma_kyx(&c(&[2]), 1e-8, &o).unwrap();
        assert!((r.lhs.value - re(2.0 * zeta(3.0))).norm() < 1e-9, "{r:?}");
        for k in [c(&[1]), c(&[1, 2]), c(&[2, 1]), c(&[1, 1, 1])] {
            let r = verify_lemma_kyx(&k, 1e-7, &o).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn theorem1_examples() {
        let o = opts();
        let r = verify_theorem1(&c(&[1]), &c(&[1]), re(0.5), 1e-6, &o).unwrap();
        assert!(r.symbolic_zero && r.passed, "{r:?}");
        assert!(r.quadrature.is_some());
        let r = verify_theorem1(&c(&[1]), &c(&[2]), re(-0.5), 1e-6, &o).unwrap();
        assert!(r.passed && r.quadrature.is_none());
    }
}
