//! The linear maps on `H^1`: letter automorphisms, head-fixed maps, the
//! weight-raising `sigma_m`, the coproduct and the relation generators
//! `psi`, `psi_bar`, `rho`, `iota`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use super::lincomb::{q, qf, LinComb, XYComb, Q};
use super::products::{shuffle_xy_words, stuffle, tshuffle_words};
use super::tensor::TensorComb;
use crate::error::{domain, Error, Result};
use crate::words::{Composition, Letter, Word, XYWord};

/// Ring automorphisms of `Q<x, y>` given by their letter images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingMap {
    /// `x -> x`, `y -> x + y`.
    Phi,
    /// `x -> x`, `y -> -y`.
    D,
    /// `x -> x + y`, `y -> -y`. The change of variables `t -> 1 - t`
    /// pulled back to letters; an involution.
    Landen,
}

impl FromStr for RingMap {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phi" => Ok(RingMap::Phi),
            "d" => Ok(RingMap::D),
            "landen" => Ok(RingMap::Landen),
            _ => Err(Error::Usage(format!("unknown ring map '{s}'"))),
        }
    }
}

impl RingMap {
    fn image(self, l: Letter) -> Vec<(Letter, i64)> {
        use Letter::{X, Y};
        match (self, l) {
            (RingMap::Phi, X) | (RingMap::D, X) => vec![(X, 1)],
            (RingMap::Phi, Y) => vec![(X, 1), (Y, 1)],
            (RingMap::D, Y) | (RingMap::Landen, Y) => vec![(Y, -1)],
            (RingMap::Landen, X) => vec![(X, 1), (Y, 1)],
        }
    }

    pub fn apply_word(self, w: &XYWord) -> XYComb {
        let mut acc = XYComb::one();
        for &l in w.letters() {
            let mut next = XYComb::zero();
            for (img, c) in self.image(l) {
                next.add_scaled(&acc.append(img), &q(c));
            }
            acc = next;
        }
        acc
    }

    pub fn apply(self, u: &XYComb) -> XYComb {
        u.map_linear(|w| self.apply_word(w))
    }
}

/// Maps fixing `1` and acting as `yw -> y g(w)` for an automorphism `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HeadMap {
    /// `g = S_1`: `x -> x`, `y -> x + y`.
    S,
    /// `g` swaps `x` and `y`.
    Beta,
    /// `S` composed with `d`.
    Stilde,
}

impl FromStr for HeadMap {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" | "s" => Ok(HeadMap::S),
            "beta" => Ok(HeadMap::Beta),
            "Stilde" | "stilde" => Ok(HeadMap::Stilde),
            _ => Err(Error::Usage(format!("unknown head-fixed map '{s}'"))),
        }
    }
}

impl HeadMap {
    pub fn apply_word(self, w: &Composition) -> LinComb {
        match self {
            HeadMap::S => s_word(w),
            HeadMap::Stilde => {
                let s = s_word(w);
                if w.depth() % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
            HeadMap::Beta => beta_word(w),
        }
    }

    pub fn apply(self, u: &LinComb) -> LinComb {
        u.map_linear(|w| self.apply_word(w))
    }
}

/// `S` sends each non-leading `y` to `x + y`, which in z-form means every
/// way of merging runs of adjacent parts.
fn s_word(w: &Composition) -> LinComb {
    let parts = w.parts();
    if parts.len() <= 1 {
        return LinComb::word(w.clone());
    }
    let gaps = parts.len() - 1;
    let mut out = LinComb::zero();
    for mask in 0u64..(1u64 << gaps) {
        let mut v = Vec::with_capacity(parts.len());
        v.push(parts[0]);
        for (j, &k) in parts[1..].iter().enumerate() {
            if mask >> j & 1 == 1 {
                *v.last_mut().unwrap() += k;
            } else {
                v.push(k);
            }
        }
        out.add_term(Composition::from_vec_unchecked(v), Q::one());
    }
    out
}

fn beta_word(w: &Composition) -> LinComb {
    if w.is_empty() {
        return LinComb::one();
    }
    let xy = w.to_xy();
    let mut letters = xy.letters().to_vec();
    for l in &mut letters[1..] {
        *l = match l {
            Letter::X => Letter::Y,
            Letter::Y => Letter::X,
        };
    }
    let c = XYWord::new(letters)
        .to_composition()
        .expect("head letter is y");
    LinComb::word(c)
}

/// `sigma_m` on a word: `sigma_m(1) = [m = 0]`, `sigma_m(yw) = y(w sh x^m)`.
pub fn sigma_word(m: usize, w: &Composition) -> LinComb {
    if w.is_empty() {
        return if m == 0 {
            LinComb::one()
        } else {
            LinComb::zero()
        };
    }
    if m == 0 {
        return LinComb::word(w.clone());
    }
    let xy = w.to_xy();
    let tail = XYWord::new(xy.letters()[1..].to_vec());
    let xs = XYWord::new(vec![Letter::X; m]);
    let head = XYWord::new(vec![Letter::Y]);
    let mut out = LinComb::zero();
    for (v, c) in shuffle_xy_words(&tail, &xs).iter() {
        let z = head.concat(v).to_composition().expect("head letter is y");
        out.add_term(z, c.clone());
    }
    out
}

pub fn sigma(m: usize, u: &LinComb) -> LinComb {
    u.map_linear(|w| sigma_word(m, w))
}

/// `sum over e_1 + ... + e_r = m of prod binom(k_j + e_j - 1, e_j) z_{k+e}`,
/// the expanded form of `sigma_m`.
pub fn sigma_closed_form_word(m: usize, w: &Composition) -> LinComb {
    let parts = w.parts();
    if parts.is_empty() {
        return if m == 0 {
            LinComb::one()
        } else {
            LinComb::zero()
        };
    }
    let mut out = LinComb::zero();
    let mut e = vec![0u32; parts.len()];
    distribute(m as u32, 0, &mut e, &mut |e| {
        let mut coef = BigInt::one();
        let mut v = Vec::with_capacity(parts.len());
        for (&k, &ej) in parts.iter().zip(e) {
            coef *= binomial(BigInt::from(k + ej - 1), BigInt::from(ej));
            v.push(k + ej);
        }
        out.add_term(Composition::from_vec_unchecked(v), Q::from_integer(coef));
    });
    out
}

fn distribute(rest: u32, j: usize, e: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if j + 1 == e.len() {
        e[j] = rest;
        f(e);
        return;
    }
    for a in 0..=rest {
        e[j] = a;
        distribute(rest - a, j + 1, e, f);
    }
}

pub fn sigma_closed_form(m: usize, u: &LinComb) -> LinComb {
    u.map_linear(|w| sigma_closed_form_word(m, w))
}

/// `Delta(z_{k_1}...z_{k_r}) = sum_i z_{k_1}...z_{k_i} (x) z_{k_r}...z_{k_{i+1}}`.
pub fn coproduct_word(w: &Composition) -> TensorComb {
    let mut out = TensorComb::zero();
    for i in 0..=w.depth() {
        out.add_term(w.prefix(i), w.reversed_suffix(i), Q::one());
    }
    out
}

pub fn coproduct(u: &LinComb) -> TensorComb {
    let mut out = TensorComb::zero();
    for (w, c) in u.iter() {
        out.add_scaled(&coproduct_word(w), c);
    }
    out
}

fn require_yh(u: &LinComb, what: &str) -> Result<()> {
    let c = u.constant_term();
    if c.is_zero() {
        Ok(())
    } else {
        Err(domain(format!(
            "{what} is defined on yH; input has constant term {c}"
        )))
    }
}

fn psi_word(w: &Composition) -> LinComb {
    let mut out = LinComb::zero();
    for i in 0..w.depth() {
        let inner = HeadMap::Stilde.apply(&sigma_word(1, &w.reversed_suffix(i)));
        out += &stuffle(&LinComb::word(w.prefix(i)), &inner);
    }
    out
}

/// `psi(w) = sum_{i<r} z_{k_1}...z_{k_i} * Stilde(sigma_1(z_{k_r}...z_{k_{i+1}}))`.
///
/// The image always lies in `yHx`; this is re-checked on every call.
pub fn psi(u: &LinComb) -> Result<LinComb> {
    require_yh(u, "psi")?;
    let out = u.map_linear(psi_word);
    if !out.in_yhx() {
        return Err(Error::Invariant(format!("psi({u}) = {out} left yHx")));
    }
    Ok(out)
}

fn append_part(u: &LinComb, k: u32) -> LinComb {
    u.map_linear(|w| LinComb::word(w.push(k)))
}

fn sign(e: usize) -> Q {
    if e.is_multiple_of(2) {
        q(1)
    } else {
        q(-1)
    }
}

fn psi_bar_word(w: &Composition) -> LinComb {
    let r = w.depth();
    let mut out = LinComb::zero();
    for i in 0..r {
        let s1 = sigma_word(1, &w.reversed_suffix(i));
        let mut t = LinComb::zero();
        for (v, c) in s1.iter() {
            t.add_scaled(&tshuffle_words(&w.prefix(i), v), c);
        }
        out.add_scaled(&t, &sign(r - i));
    }
    out
}

/// The top-depth part of `psi`: the same sum with `*` replaced by the
/// z-letter shuffle and `Stilde` by its depth sign.
pub fn psi_bar(u: &LinComb) -> Result<LinComb> {
    require_yh(u, "psi_bar")?;
    Ok(u.map_linear(psi_bar_word))
}

fn psi_bar_closed_word(w: &Composition) -> LinComb {
    let r = w.depth();
    let parts = w.parts();
    let mut out = LinComb::zero();
    for i in 1..=r {
        let k = parts[i - 1];
        let sh = tshuffle_words(&w.prefix(i - 1), &w.reversed_suffix(i));
        let c = &sign(r - i + 1) * q(k as i64);
        out.add_scaled(&append_part(&sh, k + 1), &c);
    }
    out
}

/// `sum_{i=1}^r (-1)^{r-i+1} k_i (z_{k_1}...z_{k_{i-1}} sh z_{k_r}...z_{k_{i+1}}) z_{k_i+1}`.
pub fn psi_bar_closed_form(u: &LinComb) -> Result<LinComb> {
    require_yh(u, "psi_bar")?;
    Ok(u.map_linear(psi_bar_closed_word))
}

fn rho_word(w: &Composition) -> LinComb {
    let r = w.depth();
    let parts = w.parts();
    let mut out = LinComb::zero();
    for i in 1..=r {
        let sh = tshuffle_words(&w.prefix(i - 1), &w.reversed_suffix(i));
        out.add_scaled(&append_part(&sh, parts[i - 1]), &sign(r - i));
    }
    out
}

/// `rho(w) = sum_{i=1}^r (-1)^{r-i} (z_{k_1}...z_{k_{i-1}} sh z_{k_r}...z_{k_{i+1}}) z_{k_i}`.
pub fn rho(u: &LinComb) -> Result<LinComb> {
    require_yh(u, "rho")?;
    Ok(u.map_linear(rho_word))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IotaVariant {
    /// `w z_l -> -(1/(l-1)) w z_{l-1}`, so that `rho = iota' . psi_bar`.
    Prime,
    /// `w z_l -> l w z_{l+1}`, so that `iota . rho = -psi_bar`.
    Standard,
}

impl FromStr for IotaVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prime" => Ok(IotaVariant::Prime),
            "standard" => Ok(IotaVariant::Standard),
            _ => Err(Error::Usage(format!("unknown iota variant '{s}'"))),
        }
    }
}

pub fn iota(variant: IotaVariant, u: &LinComb) -> Result<LinComb> {
    u.try_map_linear(|w| {
        let l = w
            .last()
            .ok_or_else(|| domain("iota is undefined on the empty word"))?;
        let head = w.prefix(w.depth() - 1);
        match variant {
            IotaVariant::Standard => Ok(LinComb::term(head.push(l + 1), q(l as i64))),
            IotaVariant::Prime => {
                if l < 2 {
                    return Err(domain(format!("iota' needs last part >= 2, got {w}")));
                }
                Ok(LinComb::term(head.push(l - 1), qf(-1, l as i64 - 1)))
            }
        }
    })
}
