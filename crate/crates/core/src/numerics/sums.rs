//! Nested sums `sum_{0 < n_1 < ... < n_r} w(n) prod (n_i + alpha)^{-k_i}` by
//! prefix-sum dynamic programming, with a continuous model of the tail.
//!
//! Level `j` holds `A_j[n] = S_{j-1}[n] (n + alpha)^{-k_j}` where `S_{j-1}`
//! is the running sum of the previous level, so depth `r` costs `O(r N)`.
//! Beyond `N` the running sums are continued by an ODE in `s = ln(x / x0)`,
//! `x0 = N + 1/2`, integrated with RK4 until the outer integrand is
//! negligible.

use num_complex::Complex64;
use serde::Serialize;

use super::{check_alpha, ComplexEstimate, NumericOptions};
use crate::error::{domain, Error, Result};
use crate::par;
use crate::words::{Composition, Word};

/// Strict (`n_1 < ... < n_r`) or weak (`n_1 <= ... <= n_r`) nesting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SumVariant {
    Strict,
    Weak,
}

impl std::str::FromStr for SumVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(SumVariant::Strict),
            "weak" => Ok(SumVariant::Weak),
            _ => Err(Error::Usage(format!(
                "unknown variant '{s}' (strict, weak)"
            ))),
        }
    }
}

/// Compensated complex accumulator.
#[derive(Clone, Copy, Default)]
pub(crate) struct Neumaier {
    sum: Complex64,
    comp: Complex64,
}

impl Neumaier {
    #[inline]
    pub fn add(&mut self, x: Complex64) {
        self.sum.re = two_sum(self.sum.re, x.re, &mut self.comp.re);
        self.sum.im = two_sum(self.sum.im, x.im, &mut self.comp.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

#[inline]
fn two_sum(s: f64, x: f64, comp: &mut f64) -> f64 {
    let t = s + x;
    if s.abs() >= x.abs() {
        *comp += (s - t) + x;
    } else {
        *comp += (x - t) + s;
    }
    t
}

const CHUNK: usize = 1 << 14;

fn reduce(terms: &[Complex64], sequential: bool) -> Complex64 {
    if sequential {
        let mut acc = Neumaier::default();
        for &t in terms {
            acc.add(t);
        }
        return acc.value();
    }
    let partial = par::map_chunks(terms, CHUNK, |c| {
        let mut acc = Neumaier::default();
        for &t in c {
            acc.add(t);
        }
        acc.value()
    });
    let mut acc = Neumaier::default();
    for p in partial {
        acc.add(p);
    }
    acc.value()
}

/// Which weight multiplies the innermost and divides the outermost term.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Weight {
    One,
    /// `P(n) = (alpha+1)_{n-1} / (n-1)!`.
    Pochhammer,
}

/// Largest index needed before the tail model is already below double
/// precision: the model error scales like `N^{-k_r}`.
fn effective_n(requested: usize, k_last: u32) -> usize {
    if k_last <= 2 {
        return requested;
    }
    let need = 1e18f64.powf(1.0 / k_last as f64).ceil() as usize;
    requested.min(need.max(2000))
}

fn nested_sum(
    k: &Composition,
    alpha: Complex64,
    weight: Weight,
    variant: SumVariant,
    opts: &NumericOptions,
) -> Result<ComplexEstimate> {
    check_alpha(alpha)?;
    if k.is_empty() {
        return Ok(ComplexEstimate::one());
    }
    if !k.is_admissible() {
        return Err(Error::Divergent(format!(
            "{k} ends in 1; the series diverges (regularize first)"
        )));
    }
    let parts = k.parts();
    let r = parts.len();
    let weight = if r == 1 { Weight::One } else { weight };
    let n = effective_n(opts.trunc_n.max(16), parts[r - 1]);

    // inv[i] = 1 / (i + 1 + alpha)
    let inv: Vec<Complex64> =
        par::map_range(n, |i| (Complex64::new((i + 1) as f64, 0.0) + alpha).inv());
    let pw: Vec<Complex64> = match weight {
        Weight::One => Vec::new(),
        Weight::Pochhammer => {
            let mut p = Vec::with_capacity(n + 1);
            let mut cur = Complex64::new(1.0, 0.0);
            for i in 0..=n {
                p.push(cur);
                // P(m+1) = P(m) (m + alpha) / m with m = i + 1.
                let m = (i + 1) as f64;
                cur = cur * (Complex64::new(m, 0.0) + alpha) / m;
            }
            p
        }
    };
    let p_at = |i: usize| -> Complex64 {
        match weight {
            Weight::One => Complex64::new(1.0, 0.0),
            Weight::Pochhammer => pw[i],
        }
    };

    // Running sums S_j up to index N (inclusive), fed to the tail model.
    let mut level_totals: Vec<Complex64> = Vec::with_capacity(r);
    let mut prev: Vec<Complex64> = (0..n).map(p_at).collect();
    for (j, &kj) in parts.iter().enumerate() {
        let g: Vec<Complex64> = par::map_range(n, |i| inv[i].powi(kj as i32));
        let mut cur = Vec::with_capacity(n);
        if j == 0 {
            for i in 0..n {
                cur.push(prev[i] * g[i]);
            }
        } else {
            let mut acc = Neumaier::default();
            for i in 0..n {
                let s = match variant {
                    SumVariant::Strict => acc.value(),
                    SumVariant::Weak => {
                        let mut t = acc;
                        t.add(prev[i]);
                        t.value()
                    }
                };
                acc.add(prev[i]);
                cur.push(s * g[i]);
            }
        }
        if j + 1 < r {
            level_totals.push(reduce(&cur, true));
        }
        prev = cur;
    }
    let last: Vec<Complex64> = match weight {
        Weight::One => prev,
        Weight::Pochhammer => par::map_range(n, |i| prev[i] / pw[i]),
    };
    let head = reduce(&last, opts.sequential_sum);

    let p_next = match weight {
        Weight::One => Complex64::new(1.0, 0.0),
        Weight::Pochhammer => pw[n],
    };
    let tail = tail_model(parts, alpha, weight, n, p_next, &level_totals);

    let abs_a = alpha.norm();
    let ksum: u32 = parts.iter().sum();
    let model_err =
        tail.norm() * 2.0 * (1.0 + r as f64 + ksum as f64 + abs_a * (1.0 + abs_a)) / n as f64;
    let round_err = 8.0 * f64::EPSILON * (r as f64) * (n as f64).sqrt() * head.norm().max(1e-300);
    Ok(ComplexEstimate::new(head + tail, model_err + round_err))
}

/// Integrates the continuous continuation of the running sums from
/// `x0 = N + 1/2` outward and returns the missing part of the outer sum.
fn tail_model(
    parts: &[u32],
    alpha: Complex64,
    weight: Weight,
    n: usize,
    p_next: Complex64,
    init: &[Complex64],
) -> Complex64 {
    let r = parts.len();
    let x0 = n as f64 + 0.5;
    let n1 = (n + 1) as f64;
    let p_of = |x: f64| -> Complex64 {
        match weight {
            Weight::One => Complex64::new(1.0, 0.0),
            Weight::Pochhammer => p_next * Complex64::new(x / n1, 0.0).powc(alpha),
        }
    };
    // State: C_1..C_{r-1}, then T.
    let deriv = |s: f64, st: &[Complex64]| -> Vec<Complex64> {
        let x = x0 * s.exp();
        let px = p_of(x);
        let mut d = Vec::with_capacity(r);
        for (j, &kj) in parts.iter().enumerate() {
            let g = (Complex64::new(x, 0.0) + alpha).powi(-(kj as i32)) * x;
            let below = if j == 0 { px } else { st[j - 1] };
            if j + 1 == r {
                d.push(g * below / px);
            } else {
                d.push(g * below);
            }
        }
        d
    };
    let mut st: Vec<Complex64> = init.to_vec();
    st.push(Complex64::new(0.0, 0.0));
    let h = 1.0 / 32.0;
    let mut s = 0.0;
    while s < 90.0 {
        let k1 = deriv(s, &st);
        let y2: Vec<_> = st.iter().zip(&k1).map(|(a, b)| a + b * (h / 2.0)).collect();
        let k2 = deriv(s + h / 2.0, &y2);
        let y3: Vec<_> = st.iter().zip(&k2).map(|(a, b)| a + b * (h / 2.0)).collect();
        let k3 = deriv(s + h / 2.0, &y3);
        let y4: Vec<_> = st.iter().zip(&k3).map(|(a, b)| a + b * h).collect();
        let k4 = deriv(s + h, &y4);
        for i in 0..st.len() {
            st[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0);
        }
        s += h;
        let t = st[r - 1];
        if k4[r - 1].norm() <= 1e-19 * t.norm().max(1e-300) || k4[r - 1].norm() < 1e-300 {
            break;
        }
    }
    st[r - 1]
}

/// `sum_{0 < n_1 < ... < n_r} P(n_1)/P(n_r) prod (n_i + alpha)^{-k_i}` with
/// `P(n) = (alpha+1)_{n-1}/(n-1)!`: the parametrized series at parameter
/// `alpha + 1`. At `alpha = 0` this is the multiple zeta value.
pub fn eval_pms(
    k: &Composition,
    alpha: Complex64,
    opts: &NumericOptions,
) -> Result<ComplexEstimate> {
    nested_sum(k, alpha, Weight::Pochhammer, SumVariant::Strict, opts)
}

/// `sum prod (n_i + alpha)^{-k_i}` over strict or weak chains.
pub fn eval_hurwitz(
    k: &Composition,
    alpha: Complex64,
    variant: SumVariant,
    opts: &NumericOptions,
) -> Result<ComplexEstimate> {
    nested_sum(k, alpha, Weight::One, variant, opts)
}

/// `sum_{m >= 1} (1/(m + alpha) - 1/m)`, the regularized value of `y`.
pub fn z_y(alpha: Complex64, opts: &NumericOptions) -> Result<ComplexEstimate> {
    check_alpha(alpha)?;
    if alpha.im == 0.0 && alpha.re < 0.0 && alpha.re.fract() == 0.0 {
        return Err(domain(format!("z_y has a pole at alpha = {}", alpha.re)));
    }
    let n = opts.trunc_n.max(16);
    let terms = par::map_range(n, |i| {
        let m = (i + 1) as f64;
        -alpha / ((Complex64::new(m, 0.0) + alpha) * m)
    });
    let head = reduce(&terms, opts.sequential_sum);
    let x0 = n as f64 + 0.5;
    // Integral of -alpha / (x (x + alpha)) over (x0, inf).
    let tail = -(Complex64::new(1.0, 0.0) + alpha / x0).ln();
    let a = alpha.norm();
    let err = a * (1.0 + a) * (1.0 + a) / (x0 * x0 * x0)
        + 8.0 * f64::EPSILON * (n as f64).sqrt() * head.norm().max(1e-300);
    Ok(ComplexEstimate::new(head + tail, err))
}
