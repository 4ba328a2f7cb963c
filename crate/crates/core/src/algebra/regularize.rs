//! Harmonic regularization: writing an element of `H^1` as a polynomial in
//! `y` over admissible words, `u = sum_j y^{*j} * w_j`.

use std::collections::{BTreeMap, HashMap};

use super::lincomb::{q, LinComb, Q};
use super::products::{stuffle, stuffle_power, stuffle_words};
use crate::words::{Composition, Word};

/// `(j, w_j)` pairs with every `w_j` supported on admissible words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegDecomposition {
    pub parts: Vec<(usize, LinComb)>,
}

impl RegDecomposition {
    /// `sum_j y^{*j} * w_j`.
    pub fn reconstruct(&self) -> LinComb {
        let y = LinComb::from_parts(&[1]);
        let mut out = LinComb::zero();
        for (j, w) in &self.parts {
            out += &stuffle(&stuffle_power(&y, *j), w);
        }
        out
    }

    pub fn get(&self, j: usize) -> Option<&LinComb> {
        self.parts.iter().find(|(k, _)| *k == j).map(|(_, w)| w)
    }
}

type Poly = BTreeMap<usize, LinComb>;

fn add_poly(acc: &mut Poly, p: &Poly, c: &Q) {
    for (j, w) in p {
        let e = acc.entry(*j).or_default();
        e.add_scaled(w, c);
    }
}

/// Regularizes one word, memoizing every subword met along the way.
fn reg_word(w: &Composition, memo: &mut HashMap<Composition, Poly>) -> Poly {
    if let Some(p) = memo.get(w) {
        return p.clone();
    }
    let n = w.trailing_ones();
    let out = if n == 0 {
        Poly::from([(0, LinComb::word(w.clone()))])
    } else {
        // y * u = n w + (terms with fewer trailing ones), with u = w minus its last part.
        let u = w.prefix(w.depth() - 1);
        let mut rest = stuffle_words(&Composition::from_parts(&[1]), &u);
        rest.add_term(w.clone(), -q(n as i64));
        let mut acc: Poly = reg_word(&u, memo)
            .into_iter()
            .map(|(j, p)| (j + 1, p))
            .collect();
        for (v, c) in rest.iter() {
            let sub = reg_word(v, memo);
            add_poly(&mut acc, &sub, &-c.clone());
        }
        let inv = Q::new(1.into(), (n as i64).into());
        acc.into_iter()
            .map(|(j, p)| (j, p.scale(&inv)))
            .filter(|(_, p)| !p.is_zero())
            .collect()
    };
    memo.insert(w.clone(), out.clone());
    out
}

pub fn harmonic_regularize(u: &LinComb) -> RegDecomposition {
    let mut memo = HashMap::new();
    let mut acc = Poly::new();
    for (w, c) in u.iter() {
        let p = reg_word(w, &mut memo);
        add_poly(&mut acc, &p, c);
    }
    RegDecomposition {
        parts: acc.into_iter().filter(|(_, p)| !p.is_zero()).collect(),
    }
}
