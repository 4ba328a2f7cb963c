use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::words::{Composition, Word, XYWord};

/// Exact rational coefficients.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// A finite Q-linear combination of words. Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<W: Word = Composition> {
    terms: BTreeMap<W, Q>,
}

pub type XYComb = LinComb<XYWord>;

impl<W: Word> Default for LinComb<W> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<W: Word> LinComb<W> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit, i.e. the empty word with coefficient 1.
    pub fn one() -> Self {
        Self::word(W::empty())
    }

    pub fn word(w: W) -> Self {
        Self::term(w, Q::one())
    }

    pub fn term(w: W, c: Q) -> Self {
        let mut out = Self::zero();
        out.add_term(w, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (W, Q)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (w, c) in iter {
            out.add_term(w, c);
        }
        out
    }

    pub fn add_term(&mut self, w: W, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (w, a) in &other.terms {
            self.add_term(w.clone(), a * c);
        }
    }

    pub fn coeff(&self, w: &W) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&W::empty())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&W, &Q)> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &W> {
        self.terms.keys()
    }

    pub fn into_terms(self) -> BTreeMap<W, Q> {
        self.terms
    }

    /// Number of terms; `is_zero` is the emptiness test.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// Largest depth among supported words (the least `d` with `self` in `H_d`).
    pub fn max_depth(&self) -> Option<usize> {
        self.terms.keys().map(Word::depth).max()
    }

    /// The common weight of all terms, if the combination is homogeneous
    /// and nonzero.
    pub fn homogeneous_weight(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Word::weight);
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// The part supported on words of depth exactly `d`.
    pub fn depth_part(&self, d: usize) -> Self {
        self.filter(|w| w.depth() == d)
    }

    pub fn filter(&self, keep: impl Fn(&W) -> bool) -> Self {
        LinComb {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Linear extension of a word-level map.
    pub fn map_linear<V: Word>(&self, f: impl Fn(&W) -> LinComb<V>) -> LinComb<V> {
        let mut out = LinComb::zero();
        for (w, c) in &self.terms {
            out.add_scaled(&f(w), c);
        }
        out
    }

    pub fn try_map_linear<V: Word>(
        &self,
        f: impl Fn(&W) -> Result<LinComb<V>>,
    ) -> Result<LinComb<V>> {
        let mut out = LinComb::zero();
        for (w, c) in &self.terms {
            out.add_scaled(&f(w)?, c);
        }
        Ok(out)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl LinComb<Composition> {
    pub fn from_parts(parts: &[u32]) -> Self {
        Self::word(Composition::from_parts(parts))
    }

    /// True when every supported word is nonempty and admissible (`yHx`).
    pub fn in_yhx(&self) -> bool {
        self.terms
            .keys()
            .all(|w| !w.is_empty() && w.is_admissible())
    }

    pub fn to_xy(&self) -> XYComb {
        self.map_linear(|w| LinComb::word(w.to_xy()))
    }
}

impl LinComb<XYWord> {
    /// Converts to z-letter form; fails if some word does not start with `y`.
    pub fn to_z(&self) -> Result<LinComb<Composition>> {
        let mut out = LinComb::zero();
        for (w, c) in &self.terms {
            out.add_term(w.to_composition()?, c.clone());
        }
        Ok(out)
    }

    /// Right multiplication by a single letter.
    pub fn append(&self, l: crate::words::Letter) -> Self {
        LinComb {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.push(l), c.clone()))
                .collect(),
        }
    }
}

impl<W: Word> FromIterator<(W, Q)> for LinComb<W> {
    fn from_iter<I: IntoIterator<Item = (W, Q)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

impl<W: Word> AddAssign<&LinComb<W>> for LinComb<W> {
    fn add_assign(&mut self, rhs: &LinComb<W>) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl<W: Word> SubAssign<&LinComb<W>> for LinComb<W> {
    fn sub_assign(&mut self, rhs: &LinComb<W>) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), -c.clone());
        }
    }
}

impl<W: Word> Add for &LinComb<W> {
    type Output = LinComb<W>;
    fn add(self, rhs: &LinComb<W>) -> LinComb<W> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<W: Word> Add for LinComb<W> {
    type Output = LinComb<W>;
    fn add(mut self, rhs: LinComb<W>) -> LinComb<W> {
        self += &rhs;
        self
    }
}

impl<W: Word> Sub for &LinComb<W> {
    type Output = LinComb<W>;
    fn sub(self, rhs: &LinComb<W>) -> LinComb<W> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<W: Word> Sub for LinComb<W> {
    type Output = LinComb<W>;
    fn sub(mut self, rhs: LinComb<W>) -> LinComb<W> {
        self -= &rhs;
        self
    }
}

impl<W: Word> Neg for &LinComb<W> {
    type Output = LinComb<W>;
    fn neg(self) -> LinComb<W> {
        LinComb {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl<W: Word> Neg for LinComb<W> {
    type Output = LinComb<W>;
    fn neg(self) -> LinComb<W> {
        -&self
    }
}

impl<W: Word> fmt::Display for LinComb<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl<W: Word> fmt::Debug for LinComb<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Words that know how to appear in JSON output.
pub trait JsonWord: Word {
    fn serialize_word<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error>;
    /// Output order key: weight first, then plain lexicographic order.
    fn output_key(&self) -> (usize, Vec<u32>);
}

impl JsonWord for Composition {
    fn serialize_word<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.depth()))?;
        for k in self.parts() {
            seq.serialize_element(k)?;
        }
        seq.end()
    }
    fn output_key(&self) -> (usize, Vec<u32>) {
        (self.weight(), self.parts().to_vec())
    }
}

impl JsonWord for XYWord {
    fn serialize_word<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_empty() {
            s.serialize_str("")
        } else {
            s.serialize_str(&self.to_string())
        }
    }
    fn output_key(&self) -> (usize, Vec<u32>) {
        (
            self.weight(),
            self.letters().iter().map(|l| *l as u32).collect(),
        )
    }
}

struct WordRef<'a, W>(&'a W);

impl<W: JsonWord> Serialize for WordRef<'_, W> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize_word(s)
    }
}

struct TermRef<'a, W>(&'a W, &'a Q);

impl<W: JsonWord> Serialize for TermRef<'_, W> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("coef", &self.1.to_string())?;
        m.serialize_entry("word", &WordRef(self.0))?;
        m.end()
    }
}

struct TermsRef<'a, W: Word>(&'a LinComb<W>);

impl<W: JsonWord> Serialize for TermsRef<'_, W> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut items: Vec<(&W, &Q)> = self.0.iter().collect();
        items.sort_by_key(|(w, _)| w.output_key());
        let mut seq = s.serialize_seq(Some(items.len()))?;
        for (w, c) in items {
            seq.serialize_element(&TermRef(w, c))?;
        }
        seq.end()
    }
}

/// Serializes as `{"terms":[{"coef":"p/q","word":[k_1,...]}]}` with
/// coefficients in lowest terms.
impl<W: JsonWord> Serialize for LinComb<W> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(1))?;
        m.serialize_entry("terms", &TermsRef(self))?;
        m.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: &[u32]) -> Composition {
        Composition::from_parts(p)
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut a = LinComb::from_parts(&[1, 2]);
        a.add_term(w(&[1, 2]), q(-1));
        assert!(a.is_zero());
        let b = LinComb::from_parts(&[2]) - LinComb::from_parts(&[2]);
        assert_eq!(b.len(), 0);
    }

    #[test]
    fn display_and_grading() {
        let a = LinComb::from_terms([(w(&[1, 1]), q(2)), (w(&[2]), q(1)), (w(&[3]), qf(-1, 2))]);
        assert_eq!(a.to_string(), "(2) + 2*(1,1) - 1/2*(3)");
        assert_eq!(a.max_depth(), Some(2));
        assert_eq!(a.homogeneous_weight(), None);
        assert_eq!(a.depth_part(1).len(), 2);
        assert_eq!(LinComb::<Composition>::zero().to_string(), "0");
    }
}
