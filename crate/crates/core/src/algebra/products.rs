//! The stuffle (`*`), the z-letter shuffle without merge term, and the
//! letter shuffle on xy-words.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::lincomb::{LinComb, XYComb, Q};
use crate::words::{Composition, Letter, Word, XYWord};

/// Word-level quasi-shuffle with integer multiplicities.
///
/// `merge` supplies the diagonal term `z_{k+l}`; `None` gives the plain
/// shuffle. Computed bottom-up over suffix pairs, so the cost is one map per
/// `(i, j)` cell rather than exponential recursion.
pub(crate) fn quasi_shuffle<T, M>(a: &[T], b: &[T], merge: Option<M>) -> BTreeMap<Vec<T>, u128>
where
    T: Ord + Clone,
    M: Fn(&T, &T) -> T,
{
    let (la, lb) = (a.len(), b.len());
    // row[j] holds the product of a[i..] and b[j..] for the current i.
    let mut next: Vec<BTreeMap<Vec<T>, u128>> = (0..=lb)
        .map(|j| {
            let mut m = BTreeMap::new();
            m.insert(b[j..].to_vec(), 1u128);
            m
        })
        .collect();
    for i in (0..la).rev() {
        let mut cur: Vec<BTreeMap<Vec<T>, u128>> = vec![BTreeMap::new(); lb + 1];
        let mut only_a = BTreeMap::new();
        only_a.insert(a[i..].to_vec(), 1u128);
        cur[lb] = only_a;
        for j in (0..lb).rev() {
            let mut m: BTreeMap<Vec<T>, u128> = BTreeMap::new();
            prepend_into(&mut m, &a[i], &next[j]);
            prepend_into(&mut m, &b[j], &cur[j + 1]);
            if let Some(f) = &merge {
                prepend_into(&mut m, &f(&a[i], &b[j]), &next[j + 1]);
            }
            cur[j] = m;
        }
        next = cur;
    }
    next.swap_remove(0)
}

fn prepend_into<T: Ord + Clone>(
    out: &mut BTreeMap<Vec<T>, u128>,
    head: &T,
    src: &BTreeMap<Vec<T>, u128>,
) {
    for (w, c) in src {
        let mut v = Vec::with_capacity(w.len() + 1);
        v.push(head.clone());
        v.extend_from_slice(w);
        *out.entry(v).or_insert(0) += c;
    }
}

fn count_to_q(c: u128) -> Q {
    Q::from_integer(BigInt::from(c))
}

/// Stuffle of two words.
pub fn stuffle_words(a: &Composition, b: &Composition) -> LinComb {
    let m = quasi_shuffle(a.parts(), b.parts(), Some(|x: &u32, y: &u32| x + y));
    m.into_iter()
        .map(|(w, c)| (Composition::from_vec_unchecked(w), count_to_q(c)))
        .collect()
}

/// Z-letter shuffle (stuffle without the merge term) of two words.
pub fn tshuffle_words(a: &Composition, b: &Composition) -> LinComb {
    let m = quasi_shuffle(a.parts(), b.parts(), None::<fn(&u32, &u32) -> u32>);
    m.into_iter()
        .map(|(w, c)| (Composition::from_vec_unchecked(w), count_to_q(c)))
        .collect()
}

/// Letter shuffle of two xy-words.
pub fn shuffle_xy_words(a: &XYWord, b: &XYWord) -> XYComb {
    let m = quasi_shuffle(
        a.letters(),
        b.letters(),
        None::<fn(&Letter, &Letter) -> Letter>,
    );
    m.into_iter()
        .map(|(w, c)| (XYWord::new(w), count_to_q(c)))
        .collect()
}

fn bilinear<W: Word>(
    u: &LinComb<W>,
    v: &LinComb<W>,
    f: impl Fn(&W, &W) -> LinComb<W>,
) -> LinComb<W> {
    let mut out = LinComb::zero();
    for (a, ca) in u.iter() {
        for (b, cb) in v.iter() {
            let c = ca * cb;
            out.add_scaled(&f(a, b), &c);
        }
    }
    out
}

/// The harmonic product `*`, extended bilinearly.
pub fn stuffle(u: &LinComb, v: &LinComb) -> LinComb {
    bilinear(u, v, stuffle_words)
}

/// The z-letter shuffle, extended bilinearly.
pub fn tshuffle(u: &LinComb, v: &LinComb) -> LinComb {
    bilinear(u, v, tshuffle_words)
}

/// The letter shuffle on xy-form combinations.
pub fn shuffle_xy(u: &XYComb, v: &XYComb) -> XYComb {
    bilinear(u, v, shuffle_xy_words)
}

/// `u^{*n}` with `u^{*0} = 1`.
pub fn stuffle_power(u: &LinComb, n: usize) -> LinComb {
    let mut acc = LinComb::one();
    for _ in 0..n {
        acc = stuffle(&acc, u);
    }
    acc
}
