//! Quasisymmetric polynomials in `t_1, ..., t_n`: the realization
//! `z_{k_1}...z_{k_r} -> sum_{m_1 < ... < m_r} t_{m_1}^{k_1} ... t_{m_r}^{k_r}`,
//! under which the stuffle becomes ordinary multiplication.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{q, LinComb, Q};
use crate::error::{domain, Result};
use crate::words::{Composition, Word};

/// A monomial `prod t_v^{e_v}` stored as `(v, e_v)` pairs sorted by `v`,
/// with `v` 1-based and every `e_v > 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn new(mut factors: Vec<(u32, u32)>) -> Self {
        factors.retain(|f| f.1 > 0);
        factors.sort();
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn factors(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial::new(v)
    }
}

// The Word impl lets monomials index columns in exact linear algebra.
impl Word for Monomial {
    fn weight(&self) -> usize {
        self.0.iter().map(|f| f.1 as usize).sum()
    }
    fn depth(&self) -> usize {
        self.0.len()
    }
    fn empty() -> Self {
        Monomial(Vec::new())
    }
    fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "t{v}")?;
            } else {
                write!(f, "t{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A polynomial in `n` commuting variables with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSymPoly {
    n: usize,
    terms: LinComb<Monomial>,
}

impl QSymPoly {
    pub fn zero(n: usize) -> Self {
        QSymPoly {
            n,
            terms: LinComb::zero(),
        }
    }

    pub fn one(n: usize) -> Self {
        QSymPoly {
            n,
            terms: LinComb::one(),
        }
    }

    pub fn vars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &LinComb<Monomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn scale(&self, c: &Q) -> Self {
        QSymPoly {
            n: self.n,
            terms: self.terms.scale(c),
        }
    }

    fn add_monomial(&mut self, m: Monomial, c: Q) {
        self.terms.add_term(m, c);
    }
}

impl std::ops::Add for &QSymPoly {
    type Output = QSymPoly;
    fn add(self, rhs: &QSymPoly) -> QSymPoly {
        assert_eq!(self.n, rhs.n, "variable counts differ");
        QSymPoly {
            n: self.n,
            terms: &self.terms + &rhs.terms,
        }
    }
}

/// Calls `f` on every strictly increasing sequence of length `r` in `1..=n`.
fn increasing(n: u32, r: usize, f: &mut impl FnMut(&[u32])) {
    fn go(start: u32, n: u32, cur: &mut Vec<u32>, r: usize, f: &mut impl FnMut(&[u32])) {
        if cur.len() == r {
            f(cur);
            return;
        }
        let need = (r - cur.len()) as u32;
        for m in start..=n.saturating_sub(need - 1) {
            cur.push(m);
            go(m + 1, n, cur, r, f);
            cur.pop();
        }
    }
    go(1, n, &mut Vec::with_capacity(r), r, f);
}

fn monomial_of(vars: &[u32], exps: &[u32]) -> Monomial {
    Monomial::new(vars.iter().copied().zip(exps.iter().copied()).collect())
}

/// The monomial quasisymmetric image of a word, truncated to `n` variables.
pub fn phi_word(w: &Composition, n: usize) -> QSymPoly {
    let mut out = QSymPoly::zero(n);
    increasing(n as u32, w.depth(), &mut |m| {
        out.add_monomial(monomial_of(m, w.parts()), Q::one());
    });
    out
}

/// Linear extension of [`phi_word`]. Fails when `n` is below the depth of
/// some word, where the truncation stops being injective.
pub fn phi_qsym(u: &LinComb, n: usize) -> Result<QSymPoly> {
    if let Some(d) = u.max_depth().filter(|&d| d > n) {
        return Err(domain(format!(
            "{n} variables cannot separate words of depth {d}"
        )));
    }
    let mut out = QSymPoly::zero(n);
    for (w, c) in u.iter() {
        out.terms.add_scaled(&phi_word(w, n).terms, c);
    }
    Ok(out)
}

pub fn qsym_product(a: &QSymPoly, b: &QSymPoly) -> Result<QSymPoly> {
    if a.n != b.n {
        return Err(domain(format!(
            "cannot multiply polynomials in {} and {} variables",
            a.n, b.n
        )));
    }
    let mut acc: BTreeMap<Monomial, Q> = BTreeMap::new();
    for (x, cx) in a.terms.iter() {
        for (y, cy) in b.terms.iter() {
            *acc.entry(x.mul(y)).or_insert_with(Q::zero) += cx * cy;
        }
    }
    Ok(QSymPoly {
        n: a.n,
        terms: acc.into_iter().collect(),
    })
}

/// `sum_j k_j (-1)^{r-j+1} sum t_{m_1}^{k_1}...t_{m_r}^{k_r} t_{m_j}` over
/// `m_1 < ... < m_j` and `m_j >= m_{j+1} >= ... >= m_r >= 1`.
pub fn ttt_rhs(k: &Composition, n: usize) -> Result<QSymPoly> {
    let r = k.depth();
    if r > n {
        return Err(domain(format!(
            "{n} variables cannot separate words of depth {r}"
        )));
    }
    let parts = k.parts();
    let mut out = QSymPoly::zero(n);
    for j in 1..=r {
        let sign = if (r - j + 1).is_multiple_of(2) { 1 } else { -1 };
        let coef = q(sign * parts[j - 1] as i64);
        increasing(n as u32, j, &mut |head| {
            let mut m = head.to_vec();
            weakly_decreasing(head[j - 1], r - j, &mut m, &mut |full| {
                let mut mono = monomial_of(full, parts);
                mono = mono.mul(&Monomial::new(vec![(full[j - 1], 1)]));
                out.add_monomial(mono, coef.clone());
            });
        });
    }
    Ok(out)
}

/// Extends `cur` by `len` values, each at most the previous one and at
/// least 1, the first one at most `top`.
fn weakly_decreasing(top: u32, len: usize, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if len == 0 {
        f(cur);
        return;
    }
    for m in 1..=top {
        cur.push(m);
        weakly_decreasing(m, len - 1, cur, f);
        cur.pop();
    }
}
