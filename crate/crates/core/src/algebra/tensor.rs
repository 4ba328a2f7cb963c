use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::lincomb::{LinComb, Q};
use super::products::stuffle_words;
use crate::words::Composition;

/// A rational combination of ordered pairs of words, i.e. an element of
/// `H^1 (x) H^1`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct TensorComb {
    terms: BTreeMap<(Composition, Composition), Q>,
}

impl TensorComb {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, a: Composition, b: Composition, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((a, b)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorComb, c: &Q) {
        for ((a, b), v) in &other.terms {
            self.add_term(a.clone(), b.clone(), v * c);
        }
    }

    /// `sum c * (a (x) b)` over the pairs of two combinations.
    pub fn from_product(u: &LinComb, v: &LinComb) -> Self {
        let mut out = Self::zero();
        for (a, ca) in u.iter() {
            for (b, cb) in v.iter() {
                out.add_term(a.clone(), b.clone(), ca * cb);
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Composition, Composition), &Q)> {
        self.terms.iter()
    }

    /// Number of terms; `is_zero` is the emptiness test.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies `f (x) g` termwise.
    pub fn map_each(
        &self,
        f: impl Fn(&Composition) -> LinComb,
        g: impl Fn(&Composition) -> LinComb,
    ) -> TensorComb {
        let mut out = TensorComb::zero();
        for ((a, b), c) in &self.terms {
            let fa = f(a);
            let gb = g(b);
            out.add_scaled(&TensorComb::from_product(&fa, &gb), c);
        }
        out
    }

    pub fn scaled(&self, c: &Q) -> TensorComb {
        let mut out = TensorComb::zero();
        out.add_scaled(self, c);
        out
    }

    /// The multiplication map `a (x) b -> a * b`.
    pub fn contract_stuffle(&self) -> LinComb {
        let mut out = LinComb::zero();
        for ((a, b), c) in &self.terms {
            out.add_scaled(&stuffle_words(a, b), c);
        }
        out
    }

    /// Componentwise stuffle `(a (x) b) * (c (x) d) = (a * c) (x) (b * d)`.
    pub fn stuffle(&self, other: &TensorComb) -> TensorComb {
        let mut out = TensorComb::zero();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                let left = stuffle_words(a, c);
                let right = stuffle_words(b, d);
                let t = TensorComb::from_product(&left, &right);
                out.add_scaled(&t, &(x * y));
            }
        }
        out
    }
}

impl fmt::Debug for TensorComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{a}⊗{b}")?;
        }
        Ok(())
    }
}
