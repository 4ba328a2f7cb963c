//! End-to-end acceptance run. Prints one line per criterion and fails if
//! any of them fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use pmskit::algebra::products::{shuffle_xy_words, stuffle_words, tshuffle_words};
use pmskit::algebra::{
    coproduct, iota, lambda_truncated, psi, psi_bar, rho, sigma_series, stuffle, HeadMap,
    IotaVariant, TensorComb,
};
use pmskit::lie::{
    descent_expansion, nested_bracket, orthocomplement_check, pairing, partitions,
    same_multidegree, small_compositions, XPoly,
};
use pmskit::numerics::{
    eval_hurwitz, eval_k, eval_l_quadrature, eval_pms, sigma_expansion, verify_eq3,
    verify_lemma_kyx, verify_theorem1, z_y, zeta, KMethod, NumericOptions, SumVariant,
};
use pmskit::qsym::{phi_qsym, ttt_rhs};
use pmskit::relations::{
    containment_checks, decompose_kernel_element, kernel_of, verify_kernel_equality, KernelMap,
};
use pmskit::words::{enumerate_words, enumerate_xy_words};
use pmskit::{Composition, LinComb, Word, WordSpace, XYWord};

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

fn c(p: &[u32]) -> Composition {
    Composition::from_parts(p)
}
fn lc(p: &[u32]) -> LinComb {
    LinComb::from_parts(p)
}
fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Nonempty words of weight `1..=max`.
fn words_upto(max: usize) -> Vec<Composition> {
    (1..=max)
        .flat_map(|n| enumerate_words(n, WordSpace::YH))
        .collect()
}

/// Ordered pairs of nonempty words with total weight at most `max`.
fn pairs_upto(max: usize) -> Vec<(Composition, Composition)> {
    let ws = words_upto(max);
    let mut out = Vec::new();
    for u in &ws {
        for v in &ws {
            if u.weight() + v.weight() <= max {
                out.push((u.clone(), v.clone()));
            }
        }
    }
    out
}

fn triples_upto(max: usize) -> Vec<(Composition, Composition, Composition)> {
    let ws = words_upto(max);
    let mut out = Vec::new();
    for (u, v) in pairs_upto(max) {
        for w in &ws {
            if u.weight() + v.weight() + w.weight() <= max {
                out.push((u.clone(), v.clone(), w.clone()));
            }
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    for w in 2..=8 {
        let r = verify_kernel_equality(w).expect("kernel equality");
        ok &= r.equal;
        notes.push(format!("w{w}:{}", r.kernel_dim));
    }
    let k2 = kernel_of(KernelMap::Psi, 2).unwrap();
    let anchor = &lc(&[2]) + &lc(&[1, 1]).scale(&pmskit::algebra::q(2));
    ok &= k2.dim() == 1 && k2.contains(&anchor);
    let r3 = verify_kernel_equality(3).unwrap();
    ok &= (r3.slice_dim, r3.kernel_dim, r3.span_dim) == (4, 2, 2);
    let el = t.elapsed();
    ok &= el < Duration::from_secs(60);
    (ok, format!("kernel dims {} in {:.1?}", notes.join(" "), el))
}

fn criterion_2() -> Outcome {
    let mut cases = 0;
    let mut ok = true;
    for w in 2..=8 {
        for k in enumerate_words(w, WordSpace::YH) {
            let p = psi(&LinComb::word(k)).unwrap();
            ok &= p.in_yhx();
            cases += 1;
        }
    }
    (
        ok && cases == 254,
        format!("{cases} words, all images admissible"),
    )
}

fn criterion_3() -> Outcome {
    let mut cases = 0;
    let mut ok = true;
    for w in 1..=7 {
        for k in enumerate_words(w, WordSpace::YH) {
            let lhs = phi_qsym(&psi(&LinComb::word(k.clone())).unwrap(), w).unwrap();
            let rhs = ttt_rhs(&k, w).unwrap();
            ok &= lhs == rhs;
            cases += 1;
        }
    }
    (ok, format!("{cases} words through weight 7"))
}

fn criterion_4() -> Outcome {
    let mut ok = true;
    for w in 1..=7 {
        ok &= containment_checks(w).unwrap().passed();
    }
    let mut slices = 0;
    for n in 1..=6 {
        for m in partitions(n) {
            ok &= orthocomplement_check(&m).unwrap().equal;
            slices += 1;
        }
    }
    let small = small_compositions(5, 3);
    for k in &small {
        let b = nested_bracket(k).unwrap();
        ok &= descent_expansion(k) == b;
        let mono = XPoly::monomial(k.parts());
        for w in same_multidegree(k) {
            let u = LinComb::word(w);
            ok &= pairing(&b, &u) == pairing(&mono, &rho(&u).unwrap());
        }
    }
    (
        ok,
        format!(
            "containments w<=7, {slices} Lie slices, {} bracket cases",
            small.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut ok = true;
    let mut fails = Vec::new();
    let mut check = |name: &'static str, good: bool| {
        if !good && !fails.contains(&name) {
            fails.push(name);
        }
        ok &= good;
    };

    // Commutativity on pairs, associativity on triples, total weight <= 6.
    for (u, v) in pairs_upto(6) {
        check(
            "stuffle comm",
            stuffle_words(&u, &v) == stuffle_words(&v, &u),
        );
        check(
            "tshuffle comm",
            tshuffle_words(&u, &v) == tshuffle_words(&v, &u),
        );
    }
    for (u, v, w) in triples_upto(6) {
        let (lu, lv, lw) = (LinComb::word(u), LinComb::word(v), LinComb::word(w));
        check(
            "stuffle assoc",
            stuffle(&stuffle(&lu, &lv), &lw) == stuffle(&lu, &stuffle(&lv, &lw)),
        );
        check(
            "tshuffle assoc",
            pmskit::algebra::tshuffle(&pmskit::algebra::tshuffle(&lu, &lv), &lw)
                == pmskit::algebra::tshuffle(&lu, &pmskit::algebra::tshuffle(&lv, &lw)),
        );
    }
    let xy: Vec<XYWord> = (1..=6).flat_map(enumerate_xy_words).collect();
    for a in &xy {
        for b in &xy {
            let n = a.weight() + b.weight();
            if n > 6 {
                continue;
            }
            check(
                "shuffle comm",
                shuffle_xy_words(a, b) == shuffle_xy_words(b, a),
            );
            for d in &xy {
                if n + d.weight() > 6 {
                    continue;
                }
                let la = pmskit::LinComb::word(a.clone());
                let lb = pmskit::LinComb::word(b.clone());
                let ld = pmskit::LinComb::word(d.clone());
                use pmskit::algebra::shuffle_xy;
                check(
                    "shuffle assoc",
                    shuffle_xy(&shuffle_xy(&la, &lb), &ld)
                        == shuffle_xy(&la, &shuffle_xy(&lb, &ld)),
                );
            }
        }
    }

    let st = |u: &LinComb| HeadMap::Stilde.apply(u);
    for (u, v) in pairs_upto(6) {
        let (lu, lv) = (LinComb::word(u), LinComb::word(v));
        let prod = stuffle(&lu, &lv);
        check("Stilde hom", st(&prod) == stuffle(&st(&lu), &st(&lv)));
        let du = coproduct(&lu);
        let dv = coproduct(&lv);
        check("coproduct hom", coproduct(&prod) == du.stuffle(&dv));
        let lhs = coproduct(&st(&lu));
        let rhs: TensorComb = du.map_each(
            |a| st(&LinComb::word(a.clone())),
            |b| st(&LinComb::word(b.clone())),
        );
        check("coproduct Stilde", lhs == rhs);
    }
    for (u, v) in pairs_upto(5) {
        let (lu, lv) = (LinComb::word(u), LinComb::word(v));
        let prod = stuffle(&lu, &lv);
        check(
            "sigma hom",
            sigma_series(&prod, 3) == sigma_series(&lu, 3).stuffle(&sigma_series(&lv, 3)),
        );
        check(
            "lambda hom",
            lambda_truncated(&prod, 2)
                == lambda_truncated(&lu, 2).stuffle(&lambda_truncated(&lv, 2)),
        );
    }
    for w in words_upto(7) {
        let u = LinComb::word(w);
        let pb = psi_bar(&u).unwrap();
        let r = rho(&u).unwrap();
        check(
            "iota' psibar = rho",
            iota(IotaVariant::Prime, &pb).unwrap() == r,
        );
        check(
            "iota rho = -psibar",
            iota(IotaVariant::Standard, &r).unwrap() == -pb,
        );
    }
    let detail = if fails.is_empty() {
        "products, Stilde, coproduct, sigma, lambda, iota composites".to_string()
    } else {
        format!("failed: {}", fails.join(", "))
    };
    (ok, detail)
}

fn criterion_6() -> Outcome {
    let mut ok = true;
    let mut n = 0;
    for w in 2..=7 {
        for b in kernel_of(KernelMap::Psi, w).unwrap().basis() {
            let cert = decompose_kernel_element(&b).unwrap();
            ok &= cert.remainder.is_zero() && cert.replay() == b;
            n += 1;
        }
    }
    (ok, format!("{n} kernel basis elements replayed"))
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn criterion_7() -> Outcome {
    let o = NumericOptions::default();
    let (a, ta) = timed(|| eval_pms(&c(&[2]), re(0.0), &o).unwrap());
    let (b, tb) = timed(|| eval_pms(&c(&[1, 2]), re(0.0), &o).unwrap());
    let ea = (a.value - re(PI * PI / 6.0)).norm();
    let eb = (b.value - re(zeta(3.0))).norm();
    let limit = Duration::from_secs(1);
    (
        ea < 1e-8 && eb < 1e-7 && ta < limit && tb < limit,
        format!("errors {ea:.1e}, {eb:.1e}; times {ta:.0?}, {tb:.0?}"),
    )
}

fn criterion_8() -> Outcome {
    let o = NumericOptions::default();
    let h = eval_hurwitz(&c(&[2]), re(0.5), SumVariant::Strict, &o).unwrap();
    let eh = (h.value - re(PI * PI / 2.0 - 4.0)).norm();
    let e1 = (z_y(re(1.0), &o).unwrap().value - re(-1.0)).norm();
    let e2 = (z_y(re(0.5), &o).unwrap().value - re(2.0 * std::f64::consts::LN_2 - 2.0)).norm();
    (
        eh < 1e-8 && e1 < 1e-9 && e2 < 1e-9,
        format!("errors {eh:.1e}, {e1:.1e}, {e2:.1e}"),
    )
}

fn criterion_9() -> Outcome {
    let o = NumericOptions::default();
    let s = sigma_expansion(&lc(&[2]), re(0.3), 20, &o).unwrap();
    let h = eval_hurwitz(&c(&[2]), re(0.3), SumVariant::Strict, &o).unwrap();
    let e = (s.value - h.value).norm();
    (e < 1e-8, format!("residual {e:.1e}"))
}

fn criterion_10() -> Outcome {
    let o = NumericOptions::default();
    let mut worst: f64 = 0.0;
    for k in [c(&[2]), c(&[1, 2])] {
        let q = eval_l_quadrature(&k, re(0.3), &o).unwrap();
        let s = eval_pms(&k, re(0.3), &o).unwrap();
        worst = worst.max((q.value - s.value).norm());
    }
    (worst < 1e-7, format!("max difference {worst:.1e}"))
}

fn criterion_11() -> Outcome {
    let o = NumericOptions::default();
    let mut worst: f64 = 0.0;
    for w in [lc(&[1]), lc(&[2]), lc(&[1, 1])] {
        for a in [re(0.5), Complex64::new(0.3, 0.3)] {
            let s = eval_k(&w, a, KMethod::LemmaKey, &o).unwrap();
            let q = eval_k(&w, a, KMethod::Quadrature, &o).unwrap();
            worst = worst.max((s.value - q.value).norm());
        }
    }
    (worst < 1e-6, format!("max difference {worst:.1e}"))
}

fn criterion_12() -> Outcome {
    let o = NumericOptions::default();
    let mut worst: f64 = 0.0;
    for w in [c(&[2]), c(&[1, 1])] {
        for a in [0.1, 0.2] {
            worst = worst.max(verify_eq3(&w, re(a), 20, 1e-8, &o).unwrap().residual);
        }
    }
    (worst < 1e-8, format!("max residual {worst:.1e}"))
}

fn criterion_13() -> Outcome {
    let o = NumericOptions::default();
    let mut worst: f64 = 0.0;
    let ks = words_upto(4);
    for k in &ks {
        worst = worst.max(verify_lemma_kyx(k, 1e-6, &o).unwrap().residual);
    }
    (
        worst < 1e-6,
        format!("{} indices, max residual {worst:.1e}", ks.len()),
    )
}

fn criterion_14() -> Outcome {
    let o = NumericOptions::default();
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for (u, v) in [(c(&[1]), c(&[1])), (c(&[1]), c(&[2])), (c(&[2]), c(&[1]))] {
        for a in [re(0.5), Complex64::new(0.25, 0.25)] {
            let r = verify_theorem1(&u, &v, a, 1e-6, &o).unwrap();
            match r.quadrature {
                Some(q) => worst = worst.max(q.abs()),
                None => ok = false,
            }
            ok &= r.passed;
        }
    }
    let pairs = pairs_upto(7);
    for (u, v) in &pairs {
        ok &= psi(&stuffle_words(u, v)).unwrap().is_zero();
    }
    (
        ok && worst < 1e-6,
        format!("max |K| {worst:.1e}; {} symbolic pairs vanish", pairs.len()),
    )
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 14] = [
        ("kernel equality", criterion_1),
        ("admissible images", criterion_2),
        ("quasi-symmetric image", criterion_3),
        ("containments and Lie pairing", criterion_4),
        ("homomorphism suite", criterion_5),
        ("decomposition certificates", criterion_6),
        ("zeta anchors", criterion_7),
        ("Hurwitz and z_y anchors", criterion_8),
        ("sigma expansion", criterion_9),
        ("unit-interval quadrature", criterion_10),
        ("key lemma cross-check", criterion_11),
        ("alpha expansion of K", criterion_12),
        ("alternating sum identity", criterion_13),
        ("stuffle products vanish", criterion_14),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (ok, detail) = f();
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("{tag} criterion {:>2} ({name}): {detail}", i + 1);
        if !ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
