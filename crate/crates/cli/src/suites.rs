//! Verification suites. Each produces `{"name", "cases", "passed"}`.

use clap::ValueEnum;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use pmskit::algebra::{
    coproduct, iota, lambda_truncated, psi, psi_bar, rho, sigma_series, stuffle, HeadMap,
    IotaVariant,
};
use pmskit::lie::{orthocomplement_check, partitions};
use pmskit::numerics::{
    eval_k, eval_zstar_reg, verify_eq3, verify_lemma_kyx, verify_theorem1, KMethod, NumericOptions,
};
use pmskit::qsym::{phi_qsym, ttt_rhs};
use pmskit::relations::{containment_checks, verify_kernel_equality, word_pairs};
use pmskit::words::enumerate_words;
use pmskit::{Composition, Error, LinComb, Word, WordSpace};

use crate::{Flags, Outcome};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Kernel of psi equals the stuffle span, weight by weight.
    KernelEquality,
    /// psi maps every word into the admissible words.
    Lemma3,
    /// Image of psi in quasi-symmetric polynomials.
    Ttt,
    /// Kernel of rho lies in the tilde-shuffle span.
    Lemma6,
    /// Kernel of psi-bar lies in the kernel of rho.
    Lemma7,
    /// Shuffles span the orthocomplement of Lie polynomials.
    Lie,
    /// Alternating-sum identity for the base-point values.
    Kyx,
    /// Series and quadrature evaluations of K agree.
    KeyLemma,
    /// Expansion of K in powers of alpha.
    Eq3,
    /// K vanishes on stuffle products.
    Theorem1,
    /// Sampled stuffle-homomorphism identities.
    Homomorphism,
}

fn name(s: Suite) -> String {
    s.to_possible_value().unwrap().get_name().to_string()
}

fn report(suite: Suite, cases: Vec<Value>, passed: bool) -> Outcome {
    Outcome {
        doc: json!({"name": name(suite), "cases": cases, "passed": passed}),
        passed,
    }
}

fn words(weight: usize) -> Vec<Composition> {
    enumerate_words(weight, WordSpace::YH)
}

fn words_upto(max: usize) -> Vec<Composition> {
    (1..=max).flat_map(words).collect()
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub fn run(
    suite: Suite,
    flags: &Flags,
    opts: &NumericOptions,
    samples: usize,
) -> Result<Outcome, Error> {
    let max = flags.max_weight;
    let mut cases = Vec::new();
    let mut passed = true;
    match suite {
        Suite::KernelEquality => {
            for w in 1..=max {
                let r = verify_kernel_equality(w)?;
                passed &= r.equal;
                cases.push(serde_json::to_value(r).unwrap());
            }
        }
        Suite::Lemma3 => {
            for w in 1..=max {
                let ws = words(w);
                let mut ok = true;
                for k in &ws {
                    ok &= psi(&LinComb::word(k.clone()))?.in_yhx();
                }
                passed &= ok;
                cases.push(json!({"weight": w, "words": ws.len(), "all_admissible": ok}));
            }
        }
        Suite::Ttt => {
            for w in 1..=max {
                let ws = words(w);
                let mut ok = true;
                for k in &ws {
                    let lhs = phi_qsym(&psi(&LinComb::word(k.clone()))?, w)?;
                    ok &= lhs == ttt_rhs(k, w)?;
                }
                passed &= ok;
                cases.push(json!({"weight": w, "words": ws.len(), "matches": ok}));
            }
        }
        Suite::Lemma6 | Suite::Lemma7 => {
            for w in 1..=max {
                let r = containment_checks(w)?;
                if suite == Suite::Lemma6 {
                    passed &= r.ker_rho_in_tshuffle_span;
                    cases.push(json!({
                        "weight": w,
                        "ker_rho_dim": r.ker_rho_dim,
                        "tshuffle_span_dim": r.tshuffle_span_dim,
                        "ker_rho_in_tshuffle_span": r.ker_rho_in_tshuffle_span,
                    }));
                } else {
                    let mut composites = true;
                    for k in words(w) {
                        let u = LinComb::word(k);
                        let pb = psi_bar(&u)?;
                        let r = rho(&u)?;
                        composites &= iota(IotaVariant::Prime, &pb)? == r;
                        composites &= iota(IotaVariant::Standard, &r)? == -pb;
                    }
                    let ok = r.ker_psi_bar_in_ker_rho && composites;
                    passed &= ok;
                    cases.push(json!({
                        "weight": w,
                        "ker_psi_bar_dim": r.ker_psi_bar_dim,
                        "ker_rho_dim": r.ker_rho_dim,
                        "ker_psi_bar_in_ker_rho": r.ker_psi_bar_in_ker_rho,
                        "iota_composites_hold": composites,
                    }));
                }
            }
        }
        Suite::Lie => {
            for n in 1..=max as u32 {
                for m in partitions(n) {
                    let r = orthocomplement_check(&m)?;
                    passed &= r.equal;
                    cases.push(serde_json::to_value(r).unwrap());
                }
            }
        }
        Suite::Kyx => {
            let tol = flags.tol.unwrap_or(1e-6);
            for k in words_upto(max.min(5)) {
                let r = verify_lemma_kyx(&k, tol, opts)?;
                passed &= r.passed;
                cases.push(serde_json::to_value(r).unwrap());
            }
        }
        Suite::KeyLemma => {
            let tol = flags.tol.unwrap_or(1e-6);
            let alphas = flags.alphas(&[re(0.5), Complex64::new(0.3, 0.3)])?;
            for k in words_upto(max.min(3)) {
                let u = LinComb::word(k.clone());
                for a in &alphas {
                    let s = eval_k(&u, *a, KMethod::LemmaKey, opts)?;
                    let q = eval_k(&u, *a, KMethod::Quadrature, opts)?;
                    let diff = (s.value - q.value).norm();
                    let ok = diff < tol;
                    passed &= ok;
                    cases.push(json!({
                        "word": k, "alpha": [a.re, a.im],
                        "lemma_key": s, "quadrature": q,
                        "difference": diff, "passed": ok,
                    }));
                }
            }
        }
        Suite::Eq3 => {
            let tol = flags.tol.unwrap_or(1e-8);
            let order = flags.order_m.unwrap_or(20);
            let alphas = flags.alphas(&[re(0.1), re(0.2)])?;
            for k in words_upto(max.min(2)) {
                for a in &alphas {
                    let r = verify_eq3(&k, *a, order, tol, opts)?;
                    passed &= r.passed;
                    cases.push(serde_json::to_value(r).unwrap());
                }
            }
        }
        Suite::Theorem1 => {
            let tol = flags.tol.unwrap_or(1e-6);
            let alphas = flags.alphas(&[re(0.5), Complex64::new(0.25, 0.25)])?;
            for w in 2..=max {
                for (u, v) in word_pairs(w) {
                    for a in &alphas {
                        let r = verify_theorem1(&u, &v, *a, tol, opts)?;
                        passed &= r.passed;
                        cases.push(serde_json::to_value(r).unwrap());
                    }
                }
            }
        }
        Suite::Homomorphism => {
            let mut rng = ChaCha8Rng::seed_from_u64(flags.seed);
            let alphas = flags.alphas(&[re(0.0), re(0.5), re(-0.3)])?;
            let half = (max / 2).max(1);
            let st = |u: &LinComb| HeadMap::Stilde.apply(u);
            for _ in 0..samples {
                let u = random_word(&mut rng, half);
                let v = random_word(&mut rng, half);
                let (lu, lv) = (LinComb::word(u.clone()), LinComb::word(v.clone()));
                let prod = stuffle(&lu, &lv);
                let stilde = st(&prod) == stuffle(&st(&lu), &st(&lv));
                let delta = coproduct(&prod) == coproduct(&lu).stuffle(&coproduct(&lv));
                let sig =
                    sigma_series(&prod, 3) == sigma_series(&lu, 3).stuffle(&sigma_series(&lv, 3));
                let lam = lambda_truncated(&prod, 2)
                    == lambda_truncated(&lu, 2).stuffle(&lambda_truncated(&lv, 2));
                let mut numeric = Vec::new();
                let mut num_ok = true;
                if u.weight() <= 3 && v.weight() <= 3 {
                    for a in &alphas {
                        let lhs = eval_zstar_reg(&prod, *a, opts)?;
                        let rhs = eval_zstar_reg(&lu, *a, opts)? * eval_zstar_reg(&lv, *a, opts)?;
                        let ok = lhs.agrees_with(&rhs, 1e-10);
                        num_ok &= ok;
                        numeric
                            .push(json!({"alpha": [a.re, a.im], "product": lhs, "factored": rhs}));
                    }
                }
                let ok = stilde && delta && sig && lam && num_ok;
                passed &= ok;
                cases.push(json!({
                    "u": u, "v": v, "stilde": stilde, "coproduct": delta,
                    "sigma": sig, "lambda": lam, "regularized_values": numeric, "passed": ok,
                }));
            }
        }
    }
    Ok(report(suite, cases, passed))
}

/// A uniformly random composition of a random weight in `1..=max`.
fn random_word(rng: &mut ChaCha8Rng, max: usize) -> Composition {
    let n = rng.gen_range(1..=max);
    let mut parts = vec![1u32];
    for _ in 1..n {
        if rng.gen_bool(0.5) {
            parts.push(1);
        } else {
            *parts.last_mut().unwrap() += 1;
        }
    }
    Composition::from_parts(&parts)
}
