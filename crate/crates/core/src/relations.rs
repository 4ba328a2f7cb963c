//! Exact relation spaces on graded slices of `yH`: kernels of the relation
//! maps, spans of products, the equality `ker psi = yH * yH`, and explicit
//! certificates writing kernel elements as sums of stuffle products.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::maps::{psi, psi_bar, rho, RingMap};
use crate::algebra::products::{stuffle, stuffle_words, tshuffle_words};
use crate::algebra::{LinComb, XYComb, Q};
use crate::error::{domain, Error, Result};
use crate::linalg::{kernel, Echelon, Row, Subspace};
use crate::par;
use crate::words::{
    enumerate_words, enumerate_xy_words, Composition, Letter, Word, WordSpace, XYWord,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelMap {
    Psi,
    PsiBar,
    Rho,
}

impl FromStr for KernelMap {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "psi" => Ok(KernelMap::Psi),
            "psi_bar" | "psi-bar" | "psibar" => Ok(KernelMap::PsiBar),
            "rho" => Ok(KernelMap::Rho),
            _ => Err(Error::Usage(format!(
                "unknown map '{s}' (psi, psi_bar, rho)"
            ))),
        }
    }
}

impl KernelMap {
    pub fn apply(self, u: &LinComb) -> Result<LinComb> {
        match self {
            KernelMap::Psi => psi(u),
            KernelMap::PsiBar => psi_bar(u),
            KernelMap::Rho => rho(u),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Product {
    Stuffle,
    Tshuffle,
}

impl FromStr for Product {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stuffle" => Ok(Product::Stuffle),
            "tshuffle" => Ok(Product::Tshuffle),
            _ => Err(Error::Usage(format!(
                "unknown product '{s}' (stuffle, tshuffle)"
            ))),
        }
    }
}

impl Product {
    pub fn words(self, a: &Composition, b: &Composition) -> LinComb {
        match self {
            Product::Stuffle => stuffle_words(a, b),
            Product::Tshuffle => tshuffle_words(a, b),
        }
    }
}

fn yh_slice(weight: usize) -> Vec<Composition> {
    enumerate_words(weight, WordSpace::YH)
}

/// Nullspace of `map` on the weight slice of `yH`.
pub fn kernel_of(map: KernelMap, weight: usize) -> Result<Subspace<Composition>> {
    if weight == 0 {
        return Err(domain("kernel_of needs weight >= 1"));
    }
    let dom = yh_slice(weight);
    let images: Vec<Result<LinComb>> = par::map(&dom, |w| map.apply(&LinComb::word(w.clone())));
    let images = images.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(kernel(&dom, &images))
}

/// Unordered pairs `{u, v}` of nonempty words with `wt(u) + wt(v) = weight`.
pub fn word_pairs(weight: usize) -> Vec<(Composition, Composition)> {
    let mut out = Vec::new();
    for a in 1..=weight / 2 {
        let left = yh_slice(a);
        let right = yh_slice(weight - a);
        for u in &left {
            for v in &right {
                if a < weight - a || u <= v {
                    out.push((u.clone(), v.clone()));
                }
            }
        }
    }
    out
}

/// Span of all products `u * v` (or `u sh v`) landing in the weight slice.
pub fn product_span(product: Product, weight: usize) -> Subspace<Composition> {
    let mut s = Subspace::zero(yh_slice(weight));
    let gens = par::map(&word_pairs(weight), |(u, v)| product.words(u, v));
    for g in &gens {
        s.insert(g).expect("products stay in the slice");
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelEqualityReport {
    pub weight: usize,
    pub slice_dim: usize,
    pub kernel_dim: usize,
    pub span_dim: usize,
    pub kernel_in_span: bool,
    pub span_in_kernel: bool,
    pub equal: bool,
}

pub fn verify_kernel_equality(weight: usize) -> Result<KernelEqualityReport> {
    let k = kernel_of(KernelMap::Psi, weight)?;
    let s = product_span(Product::Stuffle, weight);
    let kernel_in_span = s.contains_subspace(&k);
    let span_in_kernel = k.contains_subspace(&s);
    Ok(KernelEqualityReport {
        weight,
        slice_dim: k.ambient().len(),
        kernel_dim: k.dim(),
        span_dim: s.dim(),
        kernel_in_span,
        span_in_kernel,
        equal: kernel_in_span && span_in_kernel && k.dim() == s.dim(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ContainmentReport {
    pub weight: usize,
    pub ker_rho_dim: usize,
    pub ker_psi_bar_dim: usize,
    pub tshuffle_span_dim: usize,
    pub ker_rho_in_tshuffle_span: bool,
    pub ker_psi_bar_in_ker_rho: bool,
    pub ker_psi_bar_in_tshuffle_span: bool,
}

impl ContainmentReport {
    pub fn passed(&self) -> bool {
        self.ker_rho_in_tshuffle_span
            && self.ker_psi_bar_in_ker_rho
            && self.ker_psi_bar_in_tshuffle_span
    }
}

pub fn containment_checks(weight: usize) -> Result<ContainmentReport> {
    let kr = kernel_of(KernelMap::Rho, weight)?;
    let kb = kernel_of(KernelMap::PsiBar, weight)?;
    let sh = product_span(Product::Tshuffle, weight);
    Ok(ContainmentReport {
        weight,
        ker_rho_dim: kr.dim(),
        ker_psi_bar_dim: kb.dim(),
        tshuffle_span_dim: sh.dim(),
        ker_rho_in_tshuffle_span: sh.contains_subspace(&kr),
        ker_psi_bar_in_ker_rho: kr.contains_subspace(&kb),
        ker_psi_bar_in_tshuffle_span: sh.contains_subspace(&kb),
    })
}

/// One product `coef * (u * v)` in a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductTerm {
    pub left: Composition,
    pub right: Composition,
    #[serde(serialize_with = "ser_q")]
    pub coef: Q,
}

fn ser_q<S: serde::Serializer>(q: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// A kernel element written as `sum coef * (u * v)`, one level per depth.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionCertificate {
    pub levels: Vec<Vec<ProductTerm>>,
    pub remainder: LinComb,
}

impl DecompositionCertificate {
    /// `sum` over all levels of `coef * (u * v)`, plus the remainder.
    pub fn replay(&self) -> LinComb {
        let mut out = self.remainder.clone();
        for t in self.levels.iter().flatten() {
            out.add_scaled(&stuffle_words(&t.left, &t.right), &t.coef);
        }
        out
    }
}

/// Pairs `{u, v}` with fixed total weight and depth; the generators of the
/// top-depth part of `yH sh yH` in that bidegree.
fn pairs_of_bidegree(weight: usize, depth: usize) -> Vec<(Composition, Composition)> {
    word_pairs(weight)
        .into_iter()
        .filter(|(u, v)| u.depth() + v.depth() == depth)
        .collect()
}

/// Integer row for `lcm * u`, returned with that `lcm`.
fn encode(u: &LinComb, index: &BTreeMap<Composition, usize>) -> (Row, BigInt) {
    let l = u.denominator_lcm();
    let mut r: Row = u
        .iter()
        .map(|(w, c)| (index[w], c.numer() * (&l / c.denom())))
        .collect();
    r.sort_by_key(|e| e.0);
    (r, l)
}

/// Writes `target` (homogeneous of one weight and depth) in the span of
/// `u sh v` over the given pairs. Generators are scanned in order and only
/// those independent of their predecessors are used, which makes the
/// solution unique.
fn solve_in_tshuffle_span(
    target: &LinComb,
    pairs: &[(Composition, Composition)],
) -> Option<Vec<(usize, Q)>> {
    let gens = par::map(pairs, |(u, v)| tshuffle_words(u, v));
    let mut words: Vec<Composition> = gens.iter().flat_map(|g| g.words().cloned()).collect();
    words.extend(target.words().cloned());
    words.sort();
    words.dedup();
    let index: BTreeMap<Composition, usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let m = words.len();

    let mut basis = Echelon::new();
    let mut chosen = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if basis.insert(encode(g, &index).0).is_some() {
            chosen.push(i);
        }
    }
    // Rows (g_i | e_j) for the chosen generators and (target | e_last); the
    // single row with vanishing left half is the relation we want.
    let mut ech = Echelon::new();
    for (j, &i) in chosen.iter().enumerate() {
        let (mut r, l) = encode(&gens[i], &index);
        r.push((m + j, l));
        ech.insert(r);
    }
    let t = chosen.len();
    let (mut r, l) = encode(target, &index);
    r.push((m + t, l));
    ech.insert(r);
    let rel = ech.rows_from(m).next()?;
    let tc = rel.iter().find(|(c, _)| *c == m + t)?.1.clone();
    Some(
        rel.iter()
            .filter(|(c, _)| *c < m + t)
            .map(|(c, x)| (chosen[c - m], -Q::new(x.clone(), tc.clone())))
            .collect(),
    )
}

/// Expresses an element of `ker psi` as a combination of stuffle products.
///
/// The top-depth part of a kernel element lies in the z-letter shuffle span;
/// swapping each `u sh v` for `u * v` leaves a remainder of strictly lower
/// depth, which is again in the kernel.
pub fn decompose_kernel_element(u: &LinComb) -> Result<DecompositionCertificate> {
    let image = psi(u)?;
    if !image.is_zero() {
        return Err(Error::NotInKernel(format!("psi({u}) = {image}")));
    }
    let mut cur = u.clone();
    let mut levels = Vec::new();
    while let Some(d) = cur.max_depth() {
        let top = cur.depth_part(d);
        let mut by_weight: BTreeMap<usize, LinComb> = BTreeMap::new();
        for (w, c) in top.iter() {
            by_weight
                .entry(w.weight())
                .or_default()
                .add_term(w.clone(), c.clone());
        }
        let mut level = Vec::new();
        for (wt, part) in by_weight {
            let pairs = pairs_of_bidegree(wt, d);
            let sol = solve_in_tshuffle_span(&part, &pairs).ok_or_else(|| {
                Error::Invariant(format!("top-depth part {part} is not in the shuffle span"))
            })?;
            for (i, c) in sol {
                let (l, r) = pairs[i].clone();
                cur.add_scaled(&stuffle_words(&l, &r), &-c.clone());
                level.push(ProductTerm {
                    left: l,
                    right: r,
                    coef: c,
                });
            }
        }
        if cur.max_depth().is_some_and(|nd| nd >= d) {
            return Err(Error::Invariant(format!(
                "depth did not drop below {d} while decomposing {u}"
            )));
        }
        levels.push(level);
    }
    Ok(DecompositionCertificate {
        levels,
        remainder: cur,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DimsRow {
    pub weight: usize,
    pub slice_dim: usize,
    pub kernel_dim: usize,
    pub span_dim: usize,
    pub equal: bool,
}

pub fn dims_table(max_weight: usize) -> Result<Vec<DimsRow>> {
    (1..=max_weight)
        .map(|w| {
            let r = verify_kernel_equality(w)?;
            Ok(DimsRow {
                weight: w,
                slice_dim: r.slice_dim,
                kernel_dim: r.kernel_dim,
                span_dim: r.span_dim,
                equal: r.equal,
            })
        })
        .collect()
}

/// `span{ f(u * v) x : wt(u) + wt(v) = weight - 1 }` intersected with the
/// `yHx` slice, computed inside all of `Hx`. `f` is `phi` for the literal
/// reading; the Landen map gives the span relevant to the series.
pub fn phi_span_intersect_domain(weight: usize, map: RingMap) -> Result<Subspace<XYWord>> {
    if weight == 0 {
        return Err(domain("weight must be >= 1"));
    }
    let ambient: Vec<XYWord> = enumerate_xy_words(weight)
        .into_iter()
        .filter(|w| w.letters().last() == Some(&Letter::X))
        .collect();
    let gens: Vec<XYComb> = if weight >= 3 {
        par::map(&word_pairs(weight - 1), |(u, v)| {
            let p = stuffle(&LinComb::word(u.clone()), &LinComb::word(v.clone()));
            map.apply(&p.to_xy()).append(Letter::X)
        })
    } else {
        Vec::new()
    };
    let span = Subspace::spanned_by(ambient.clone(), &gens)?;
    let domain_words: Vec<XYComb> = ambient
        .iter()
        .filter(|w| w.in_yhx())
        .map(|w| LinComb::word(w.clone()))
        .collect();
    let dom = Subspace::spanned_by(ambient, &domain_words)?;
    span.intersect(&dom)
}

/// Converts a `yHx` element of xy-form back to compositions.
pub fn xy_to_z(u: &XYComb) -> Result<LinComb> {
    u.to_z()
}
