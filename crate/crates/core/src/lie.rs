//! Noncommutative polynomials in letters `X_1, X_2, ...`, nested Lie
//! brackets, and the pairing with z-words under which Lie polynomials are
//! exactly the annihilator of proper z-letter shuffles.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::products::tshuffle_words;
use crate::algebra::{LinComb, Q};
use crate::error::{domain, Result};
use crate::linalg::Subspace;
use crate::words::Composition;

/// A polynomial in noncommuting `X_k`, with the word `X_{k_1}...X_{k_r}`
/// keyed by the composition `(k_1, ..., k_r)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct XPoly(LinComb);

impl XPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn letter(k: u32) -> Self {
        XPoly(LinComb::from_parts(&[k]))
    }

    pub fn monomial(ks: &[u32]) -> Self {
        XPoly(LinComb::from_parts(ks))
    }

    pub fn terms(&self) -> &LinComb {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Concatenation product.
    pub fn mul(&self, other: &XPoly) -> XPoly {
        let mut out = LinComb::zero();
        for (a, ca) in self.0.iter() {
            for (b, cb) in other.0.iter() {
                out.add_term(a.concat(b), ca * cb);
            }
        }
        XPoly(out)
    }

    /// `[self, other] = self other - other self`.
    pub fn bracket(&self, other: &XPoly) -> XPoly {
        XPoly(&self.mul(other).0 - &other.mul(self).0)
    }
}

impl std::ops::Add for &XPoly {
    type Output = XPoly;
    fn add(self, rhs: &XPoly) -> XPoly {
        XPoly(&self.0 + &rhs.0)
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*")?;
            for k in w.parts() {
                write!(f, "X{k}")?;
            }
        }
        Ok(())
    }
}

/// `[X_{k_1}, [X_{k_2}, [..., [X_{k_{r-1}}, X_{k_r}]...]]]` expanded.
pub fn nested_bracket(k: &Composition) -> Result<XPoly> {
    let parts = k.parts();
    let (&last, init) = parts
        .split_last()
        .ok_or_else(|| domain("nested bracket of the empty word"))?;
    let mut acc = XPoly::letter(last);
    for &p in init.iter().rev() {
        acc = XPoly::letter(p).bracket(&acc);
    }
    Ok(acc)
}

/// `sum_{i=1}^r (-1)^{r-i} sum X_{k_{s(1)}}...X_{k_{s(r)}}` over the
/// permutations `s` increasing up to position `i` and decreasing after it.
/// The peak is necessarily `r`; each subset of `{1..r-1}` placed left of it
/// gives exactly one such permutation.
pub fn descent_expansion(k: &Composition) -> XPoly {
    let parts = k.parts();
    let r = parts.len();
    if r == 0 {
        return XPoly(LinComb::one());
    }
    let mut out = LinComb::zero();
    for mask in 0u64..(1u64 << (r - 1)) {
        let left: Vec<usize> = (0..r - 1).filter(|j| mask >> j & 1 == 1).collect();
        let right: Vec<usize> = (0..r - 1).rev().filter(|j| mask >> j & 1 == 0).collect();
        let i = left.len() + 1;
        let mut w: Vec<u32> = left.iter().map(|&j| parts[j]).collect();
        w.push(parts[r - 1]);
        w.extend(right.iter().map(|&j| parts[j]));
        let sign = if (r - i).is_multiple_of(2) { 1 } else { -1 };
        out.add_term(Composition::from_vec_unchecked(w), crate::algebra::q(sign));
    }
    XPoly(out)
}

/// `<X_{k_1}...X_{k_r}, z_{l_1}...z_{l_s}> = [k = l]`, extended bilinearly.
pub fn pairing(a: &XPoly, u: &LinComb) -> Q {
    let mut acc = Q::default();
    for (w, c) in a.0.iter() {
        acc += c * u.coeff(w);
    }
    acc
}

/// Distinct orderings of a multiset, in lexicographic order.
pub fn distinct_permutations(multiset: &[u32]) -> Vec<Vec<u32>> {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &k in multiset {
        *counts.entry(k).or_default() += 1;
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(multiset.len());
    fn go(
        counts: &mut BTreeMap<u32, usize>,
        cur: &mut Vec<u32>,
        n: usize,
        out: &mut Vec<Vec<u32>>,
    ) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let keys: Vec<u32> = counts
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&k, _)| k)
            .collect();
        for k in keys {
            *counts.get_mut(&k).unwrap() -= 1;
            cur.push(k);
            go(counts, cur, n, out);
            cur.pop();
            *counts.get_mut(&k).unwrap() += 1;
        }
    }
    go(&mut counts, &mut cur, multiset.len(), &mut out);
    out
}

/// Nested brackets over every distinct ordering of the multiset. Spans the
/// Lie polynomials of that multidegree, with repetitions.
pub fn lie_spanning_set(multidegree: &[u32]) -> Result<Vec<XPoly>> {
    if multidegree.is_empty() {
        return Err(domain("empty multidegree"));
    }
    distinct_permutations(multidegree)
        .iter()
        .map(|p| nested_bracket(&Composition::from_parts(p)))
        .collect()
}

/// Partitions of `n` as weakly decreasing part lists.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Outcome of comparing the shuffle span with the Lie annihilator on one
/// multidegree slice.
#[derive(Clone, Debug, serde::Serialize)]
pub struct OrthocomplementReport {
    pub multidegree: Vec<u32>,
    pub slice_dim: usize,
    pub lie_dim: usize,
    pub shuffle_span_dim: usize,
    pub equal: bool,
}

/// Checks `span{u sh v : u, v nonempty} = L^perp` on the words whose parts
/// form the given multiset.
pub fn orthocomplement_check(multidegree: &[u32]) -> Result<OrthocomplementReport> {
    let slice: Vec<Composition> = distinct_permutations(multidegree)
        .into_iter()
        .map(Composition::from_vec_unchecked)
        .collect();
    let lie: Vec<LinComb> = lie_spanning_set(multidegree)?
        .into_iter()
        .map(|p| p.0)
        .collect();
    let lie_span = Subspace::spanned_by(slice.clone(), &lie)?;
    let perp = lie_span.orthogonal_complement();

    let mut shuffles = Subspace::zero(slice.clone());
    for w in &slice {
        // Every proper split of every word covers all pairs (u, v) whose
        // parts together form the multiset.
        let p = w.parts();
        for cut in 1..p.len() {
            let u = Composition::from_vec_unchecked(p[..cut].to_vec());
            let v = Composition::from_vec_unchecked(p[cut..].to_vec());
            shuffles.insert(&tshuffle_words(&u, &v))?;
        }
    }
    Ok(OrthocomplementReport {
        multidegree: multidegree.to_vec(),
        slice_dim: slice.len(),
        lie_dim: lie_span.dim(),
        shuffle_span_dim: shuffles.dim(),
        equal: shuffles.same_as(&perp),
    })
}

/// All compositions of length at most `max_len` with parts in `1..=max_part`.
pub fn small_compositions(max_len: usize, max_part: u32) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut level: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &level {
            for k in 1..=max_part {
                let mut v = w.clone();
                v.push(k);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned().map(Composition::from_vec_unchecked));
        level = next;
    }
    out
}

/// Words with the same multiset of parts as `k`.
pub fn same_multidegree(k: &Composition) -> Vec<Composition> {
    distinct_permutations(k.parts())
        .into_iter()
        .map(Composition::from_vec_unchecked)
        .collect()
}

/// Total weight of a multidegree.
pub fn multidegree_weight(m: &[u32]) -> usize {
    m.iter().map(|&k| k as usize).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, rho};

    fn c(p: &[u32]) -> Composition {
        Composition::from_parts(p)
    }

    fn xp(terms: &[(&[u32], i64)]) -> XPoly {
        let mut out = LinComb::zero();
        for (w, k) in terms {
            out.add_term(c(w), q(*k));
        }
        XPoly(out)
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(nested_bracket(&c(&[2])).unwrap(), XPoly::letter(2));
        assert_eq!(
            nested_bracket(&c(&[1, 2])).unwrap(),
            xp(&[(&[1, 2], 1), (&[2, 1], -1)])
        );
        assert_eq!(
            nested_bracket(&c(&[1, 1, 2])).unwrap(),
            xp(&[(&[1, 1, 2], 1), (&[1, 2, 1], -2), (&[2, 1, 1], 1)])
        );
        assert!(nested_bracket(&Composition::default()).is_err());
    }

    #[test]
    fn descent_matches_bracket() {
        assert_eq!(
            descent_expansion(&c(&[1, 2])),
            xp(&[(&[1, 2], 1), (&[2, 1], -1)])
        );
        assert_eq!(descent_expansion(&c(&[2])), XPoly::letter(2));
        for k in small_compositions(5, 3) {
            assert_eq!(descent_expansion(&k), nested_bracket(&k).unwrap(), "{k}");
        }
    }

    #[test]
    fn pairing_examples() {
        let x12 = XPoly::monomial(&[1, 2]);
        assert_eq!(pairing(&x12, &LinComb::from_parts(&[1, 2])), q(1));
        assert_eq!(pairing(&x12, &LinComb::from_parts(&[2, 1])), q(0));
        let b = nested_bracket(&c(&[1, 2])).unwrap();
        let sh = &LinComb::from_parts(&[1, 2]) + &LinComb::from_parts(&[2, 1]);
        assert_eq!(pairing(&b, &sh), q(0));
    }

    #[test]
    fn spanning_set_examples() {
        let s = lie_spanning_set(&[1, 2]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0], nested_bracket(&c(&[1, 2])).unwrap());
        assert_eq!(s[1], nested_bracket(&c(&[2, 1])).unwrap());
        assert_eq!(lie_spanning_set(&[2]).unwrap(), vec![XPoly::letter(2)]);
        assert!(lie_spanning_set(&[1, 1]).unwrap()[0].is_zero());
    }

    #[test]
    fn bracket_is_adjoint_to_rho() {
        for k in small_compositions(5, 3) {
            let b = nested_bracket(&k).unwrap();
            let mono = XPoly::monomial(k.parts());
            for w in same_multidegree(&k) {
                let lhs = pairing(&b, &LinComb::word(w.clone()));
                let rhs = pairing(&mono, &rho(&LinComb::word(w.clone())).unwrap());
                assert_eq!(lhs, rhs, "k={k} w={w}");
            }
        }
    }

    #[test]
    fn shuffles_are_lie_annihilator() {
        for n in 1..=6 {
            for m in partitions(n) {
                let r = orthocomplement_check(&m).unwrap();
                assert!(r.equal, "{r:?}");
            }
        }
    }
}
