//! Iterated integrals `int_{0 < u_1 < ... < u_k < 1} w_1(u_1) ... w_k(u_k)`
//! by a double-exponential substitution and cumulative quadrature.
//!
//! With `u = 1 / (1 + e^{-s})`, `s = pi sinh(tau)`, every form in use is a
//! smooth function of `tau` times `du/dtau = u v pi cosh(tau)` (`v = 1 - u`),
//! decaying doubly exponentially at both ends. Each level is integrated
//! cumulatively on a uniform `tau` grid with a sixth-order interval rule,
//! and the step is halved until two successive results agree.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{check_alpha, ComplexEstimate, NumericOptions};
use crate::algebra::{LinComb, XYComb};
use crate::error::{domain, Error, Result};
use crate::par;
use crate::words::{Composition, Letter, Word, XYWord};

/// A one-form on `(0, 1)` written per `d tau`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Form {
    /// `du / (u v)`
    DuOverUv,
    /// `du / u`
    DuOverU,
    /// `du / v`
    DuOverV,
}

/// `c (u/v)^{e alpha} form`, where `e` is -1, 0 or 1.
#[derive(Clone, Copy, Debug)]
pub struct WeightedForm {
    pub form: Form,
    pub coef: f64,
    pub power: i8,
}

const MAX_FORMS: usize = 8;

/// Grid node data shared by all forms.
struct Node {
    /// `s = pi sinh tau`, so that `ln(u/v) = s`.
    s: f64,
    u: f64,
    v: f64,
    jac: f64,
}

fn node(tau: f64) -> Node {
    let s = PI * tau.sinh();
    // u = 1/(1+e^{-s}) and v = 1/(1+e^{s}), each computed without cancellation.
    let (u, v) = if s >= 0.0 {
        let e = (-s).exp();
        (1.0 / (1.0 + e), e / (1.0 + e))
    } else {
        let e = s.exp();
        (e / (1.0 + e), 1.0 / (1.0 + e))
    };
    Node {
        s,
        u,
        v,
        jac: PI * tau.cosh(),
    }
}

fn eval_form(f: &WeightedForm, n: &Node, alpha: Complex64) -> Complex64 {
    let base = match f.form {
        Form::DuOverUv => n.jac,
        Form::DuOverU => n.v * n.jac,
        Form::DuOverV => n.u * n.jac,
    };
    let w = match f.power {
        0 => Complex64::new(1.0, 0.0),
        p => (alpha * (p as f64 * n.s)).exp(),
    };
    w * (base * f.coef)
}

/// Cumulative integral: `out[i]` is the integral over `[tau_0, tau_i]`.
fn cumulative(f: &[Complex64], h: f64) -> Vec<Complex64> {
    let n = f.len();
    let mut out = Vec::with_capacity(n);
    let mut acc = Complex64::new(0.0, 0.0);
    out.push(acc);
    for i in 0..n - 1 {
        let step = if i >= 2 && i + 3 < n {
            (f[i - 2] * 11.0 - f[i - 1] * 93.0 + (f[i] + f[i + 1]) * 802.0 - f[i + 2] * 93.0
                + f[i + 3] * 11.0)
                * (h / 1440.0)
        } else {
            (f[i] + f[i + 1]) * (h / 2.0)
        };
        acc += step;
        out.push(acc);
    }
    out
}

fn integrate_on_grid(forms: &[WeightedForm], alpha: Complex64, t_max: f64, h: f64) -> Complex64 {
    let m = (2.0 * t_max / h).ceil() as usize + 1;
    let nodes: Vec<Node> = par::map_range(m, |i| node(-t_max + i as f64 * h));
    let mut inner: Vec<Complex64> = vec![Complex64::new(1.0, 0.0); m];
    for f in forms {
        let g: Vec<Complex64> = nodes
            .iter()
            .zip(&inner)
            .map(|(nd, prev)| prev * eval_form(f, nd, alpha))
            .collect();
        inner = cumulative(&g, h);
    }
    inner[m - 1]
}

/// Integrates the nested forms; the first and last must carry enough decay
/// at `u -> 0` and `u -> 1` respectively (at least `min(1, Re alpha + 1)`).
pub fn iterated_integral(
    forms: &[WeightedForm],
    alpha: Complex64,
    tol: f64,
) -> Result<ComplexEstimate> {
    if forms.len() > MAX_FORMS {
        return Err(Error::Resource(format!(
            "{} nested forms exceed the cap of {MAX_FORMS}",
            forms.len()
        )));
    }
    if forms.is_empty() {
        return Ok(ComplexEstimate::one());
    }
    let beta = (alpha.re + 1.0).min(1.0);
    // Decay ~ exp(-beta (pi/2) e^T); stop once that is e^{-40}, while keeping
    // e^{|s|} finite.
    let t_max = ((80.0 / (PI * beta)).ln()).min(5.5);
    let mut h = 1.0 / 32.0;
    let mut prev = integrate_on_grid(forms, alpha, t_max, h);
    loop {
        h /= 2.0;
        let cur = integrate_on_grid(forms, alpha, t_max, h);
        let diff = (cur - prev).norm();
        let scale = cur.norm().max(1.0);
        if diff <= tol * scale || h < 1.0 / 1024.0 {
            let err = diff + 64.0 * f64::EPSILON * scale * (2.0 * t_max / h);
            return Ok(ComplexEstimate::new(cur, err));
        }
        prev = cur;
    }
}

fn letter_forms_unit_interval(l: Letter) -> WeightedForm {
    // On (0,1): x = du/u, y = du/(1-u).
    match l {
        Letter::X => WeightedForm {
            form: Form::DuOverU,
            coef: 1.0,
            power: 0,
        },
        Letter::Y => WeightedForm {
            form: Form::DuOverV,
            coef: 1.0,
            power: 0,
        },
    }
}

/// The parametrized series at `alpha + 1` through its integral form
/// `I_{0,1}((t/(1-t))^alpha y, u_1, ..., u_k, ((1-t)/t)^alpha x)`.
pub fn eval_l_quadrature(
    k: &Composition,
    alpha: Complex64,
    opts: &NumericOptions,
) -> Result<ComplexEstimate> {
    check_alpha(alpha)?;
    if alpha.re >= 1.0 {
        return Err(domain(format!(
            "the unit-interval integral needs Re alpha < 1, got {alpha}"
        )));
    }
    if k.weight() > 6 {
        return Err(Error::Resource(format!(
            "weight {} exceeds the quadrature cap of 6",
            k.weight()
        )));
    }
    if !k.is_admissible() || k.is_empty() {
        return Err(Error::Divergent(format!("{k} is not admissible")));
    }
    let letters = k.to_xy();
    let n = letters.letters().len();
    let forms: Vec<WeightedForm> = letters
        .letters()
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let mut f = letter_forms_unit_interval(l);
            if i == 0 {
                f.power = 1;
            }
            if i + 1 == n {
                f.power = -1;
            }
            f
        })
        .collect();
    iterated_integral(&forms, alpha, opts.quad_tol)
}

/// Forms along `t = u/(u-1)` running from 0 to `-inf`, for the word
/// `w` followed by the final letter. Pulled back, `dt/t = du/(u v)` and
/// `dt/(1-t) = -du/v`; the final form `x + y` becomes `du/u`.
fn path_forms(w: &XYWord) -> Vec<WeightedForm> {
    let mut forms: Vec<WeightedForm> = w
        .letters()
        .iter()
        .map(|&l| match l {
            Letter::X => WeightedForm {
                form: Form::DuOverUv,
                coef: 1.0,
                power: 0,
            },
            Letter::Y => WeightedForm {
                form: Form::DuOverV,
                coef: -1.0,
                power: 0,
            },
        })
        .collect();
    forms[0].power = 1;
    forms.push(WeightedForm {
        form: Form::DuOverU,
        coef: 1.0,
        power: -1,
    });
    forms
}

/// The key-lemma quantity for a combination `w` in `yH`, computed as the
/// iterated integral `I_{0,-inf}((-t)^alpha w, (-t)^{-alpha} (x + y))`.
pub fn eval_k_quadrature(
    w: &LinComb,
    alpha: Complex64,
    opts: &NumericOptions,
) -> Result<ComplexEstimate> {
    check_alpha(alpha)?;
    if alpha.re <= 0.0 {
        return Err(domain(format!(
            "the path integral is only used for Re alpha > 0, got {alpha}"
        )));
    }
    if !w.constant_term().eq(&crate::algebra::Q::default()) {
        return Err(domain("the path integral needs an element of yH"));
    }
    if let Some(wt) = w.words().map(Word::weight).max() {
        if wt + 2 > MAX_FORMS {
            return Err(Error::Resource(format!(
                "weight {wt} needs {} forms, above the cap of {MAX_FORMS}",
                wt + 2
            )));
        }
    }
    let xy: XYComb = w.to_xy();
    let terms: Vec<(XYWord, crate::algebra::Q)> =
        xy.iter().map(|(a, c)| (a.clone(), c.clone())).collect();
    let vals = par::map(&terms, |(word, _)| {
        iterated_integral(&path_forms(word), alpha, opts.quad_tol)
    });
    let mut acc = ComplexEstimate::zero();
    for ((_, c), v) in terms.iter().zip(vals) {
        acc = acc + v?.scale_q(c);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::sums::eval_pms;
    use crate::numerics::zeta::zeta;

    fn c(p: &[u32]) -> Composition {
        Composition::from_parts(p)
    }
    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn classical_integrals() {
        let o = NumericOptions::default();
        let v = eval_l_quadrature(&c(&[2]), re(0.0), &o).unwrap();
        assert!((v.value - re(zeta(2.0))).norm() < 1e-9, "{v}");
        let v = eval_l_quadrature(&c(&[1, 2]), re(0.0), &o).unwrap();
        assert!((v.value - re(zeta(3.0))).norm() < 1e-9, "{v}");
        let v = eval_l_quadrature(&c(&[4]), re(0.0), &o).unwrap();
        assert!((v.value - re(zeta(4.0))).norm() < 1e-9, "{v}");
    }

    #[test]
    fn unit_interval_matches_series() {
        let o = NumericOptions::default();
        for k in [c(&[2]), c(&[1, 2]), c(&[3])] {
            for a in [re(0.3), re(-0.4), Complex64::new(0.2, 0.3)] {
                let q = eval_l_quadrature(&k, a, &o).unwrap();
                let s = eval_pms(&k, a, &o).unwrap();
                assert!((q.value - s.value).norm() < 1e-8, "{k} {a}: {q} vs {s}");
            }
        }
    }

    #[test]
    fn limits() {
        let o = NumericOptions::default();
        assert!(matches!(
            eval_l_quadrature(&c(&[7]), re(0.0), &o),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            eval_k_quadrature(&LinComb::from_parts(&[1]), re(-0.2), &o),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            eval_k_quadrature(&LinComb::from_parts(&[7]), re(0.5), &o),
            Err(Error::Resource(_))
        ));
    }
}
