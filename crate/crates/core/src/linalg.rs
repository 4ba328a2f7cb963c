//! Exact sparse linear algebra over `Q`, done fraction-free over `Z`.
//!
//! Rows are sparse integer vectors kept primitive (content 1, positive
//! leading entry). Elimination pivots on the leading column, so the column
//! order fixes the echelon form and results never depend on scheduling.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{LinComb, Q};
use crate::error::{Error, Result};
use crate::par;
use crate::words::Word;

/// Sparse integer row, sorted by column, no zero entries.
pub type Row = Vec<(usize, BigInt)>;

fn lead(r: &Row) -> Option<usize> {
    r.first().map(|(c, _)| *c)
}

fn make_primitive(r: &mut Row) {
    let mut g = BigInt::zero();
    for (_, v) in r.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if r.first().is_some_and(|(_, v)| v.is_negative()) {
        g = -g;
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in r.iter_mut() {
            *v /= &g;
        }
    }
}

/// `a*v - b*p` on sparse rows.
fn combine(v: &Row, a: &BigInt, p: &Row, b: &BigInt) -> Row {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        let ci = v.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = p.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let (c, x) = if ci < cj {
            i += 1;
            (ci, a * &v[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(b * &p[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, a * &v[i - 1].1 - b * &p[j - 1].1)
        };
        if !x.is_zero() {
            out.push((c, x));
        }
    }
    out
}

fn entry(r: &Row, col: usize) -> Option<&BigInt> {
    r.binary_search_by_key(&col, |e| e.0).ok().map(|i| &r[i].1)
}

/// A row echelon form grown one vector at a time.
#[derive(Clone, Default)]
pub struct Echelon {
    rows: Vec<Row>,
    pivots: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates pivot columns from `v` until its leading column is free.
    pub fn reduce(&self, mut v: Row) -> Row {
        while let Some(c) = lead(&v) {
            let Some(&pi) = self.pivots.get(&c) else {
                break;
            };
            let p = &self.rows[pi];
            let pa = &p[0].1;
            let va = &v[0].1;
            let g = pa.gcd(va);
            v = combine(&v, &(pa / &g), p, &(va / &g));
            make_primitive(&mut v);
        }
        v
    }

    /// Adds `v` to the row space; returns its leading column if it was new.
    pub fn insert(&mut self, v: Row) -> Option<usize> {
        let mut r = self.reduce(v);
        let c = lead(&r)?;
        make_primitive(&mut r);
        self.pivots.insert(c, self.rows.len());
        self.rows.push(r);
        Some(c)
    }

    pub fn contains(&self, v: Row) -> bool {
        self.reduce(v).is_empty()
    }

    /// Rows whose leading column is at least `col`, i.e. the part of the
    /// row space vanishing on all earlier columns.
    pub fn rows_from(&self, col: usize) -> impl Iterator<Item = &Row> {
        self.pivots.range(col..).map(|(_, &i)| &self.rows[i])
    }

    /// Reduced row echelon form with unit pivots, sorted by pivot column.
    pub fn rref(&self) -> Vec<BTreeMap<usize, Q>> {
        let order: Vec<usize> = self.pivots.values().copied().collect();
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        let mut rows: Vec<Row> = order.iter().map(|&i| self.rows[i].clone()).collect();
        // Back substitution from the last pivot upward.
        for k in (0..rows.len()).rev() {
            let c = cols[k];
            let (above, below) = rows.split_at_mut(k);
            let p = &below[0];
            for r in above.iter_mut() {
                if let Some(x) = entry(r, c).cloned() {
                    let pa = &p[0].1;
                    let g = pa.gcd(&x);
                    *r = combine(r, &(pa / &g), p, &(&x / &g));
                    make_primitive(r);
                }
            }
        }
        rows.into_iter()
            .map(|r| {
                let d = r[0].1.clone();
                r.into_iter()
                    .map(|(c, v)| (c, Q::new(v, d.clone())))
                    .collect()
            })
            .collect()
    }
}

/// Integer row proportional to a rational vector.
fn row_from_rational<'a>(entries: impl Iterator<Item = (usize, &'a Q)> + Clone) -> Row {
    let l = entries
        .clone()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut r: Row = entries
        .map(|(i, c)| (i, c.numer() * (&l / c.denom())))
        .collect();
    r.sort_by_key(|e| e.0);
    r
}

/// A subspace of the span of an ordered list of words, stored in reduced
/// row echelon form.
#[derive(Clone)]
pub struct Subspace<W: Word> {
    ambient: Vec<W>,
    index: BTreeMap<W, usize>,
    echelon: Echelon,
}

impl<W: Word> Subspace<W> {
    /// The zero subspace of the span of `ambient`. Word order in `ambient`
    /// is the column order; it is sorted and deduplicated here.
    pub fn zero(mut ambient: Vec<W>) -> Self {
        ambient.sort();
        ambient.dedup();
        let index = ambient
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        Subspace {
            ambient,
            index,
            echelon: Echelon::new(),
        }
    }

    pub fn spanned_by(ambient: Vec<W>, vectors: &[LinComb<W>]) -> Result<Self> {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn full(ambient: Vec<W>) -> Self {
        let mut s = Self::zero(ambient);
        for i in 0..s.ambient.len() {
            s.echelon.insert(vec![(i, BigInt::one())]);
        }
        s
    }

    pub fn ambient(&self) -> &[W] {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    fn to_row(&self, v: &LinComb<W>) -> Result<Row> {
        let mut idx = Vec::with_capacity(v.len());
        for (w, c) in v.iter() {
            let i = *self.index.get(w).ok_or_else(|| {
                Error::Invariant(format!("word {w} is outside the ambient slice"))
            })?;
            idx.push((i, c));
        }
        Ok(row_from_rational(idx.into_iter()))
    }

    /// Adds a vector; returns whether the dimension grew.
    pub fn insert(&mut self, v: &LinComb<W>) -> Result<bool> {
        let r = self.to_row(v)?;
        Ok(self.echelon.insert(r).is_some())
    }

    /// Exact membership. Vectors with words outside the ambient slice are
    /// never members unless zero.
    pub fn contains(&self, v: &LinComb<W>) -> bool {
        match self.to_row(v) {
            Ok(r) => self.echelon.contains(r),
            Err(_) => v.is_zero(),
        }
    }

    /// The canonical basis: reduced row echelon rows with unit pivots.
    pub fn basis(&self) -> Vec<LinComb<W>> {
        self.echelon
            .rref()
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|(c, q)| (self.ambient[c].clone(), q))
                    .collect()
            })
            .collect()
    }

    pub fn contains_subspace(&self, other: &Subspace<W>) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    /// Equality as subspaces of the common ambient span.
    pub fn same_as(&self, other: &Subspace<W>) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    /// `U cap V` by Zassenhaus: reduce rows `(u | u)` and `(v | 0)`; rows
    /// whose left half vanishes span the intersection.
    pub fn intersect(&self, other: &Subspace<W>) -> Result<Subspace<W>> {
        let mut amb = self.ambient.clone();
        amb.extend(other.ambient.iter().cloned());
        let out = Subspace::zero(amb);
        let n = out.ambient.len();
        let mut ech = Echelon::new();
        for v in self.basis() {
            let r = out.to_row(&v)?;
            let mut both = r.clone();
            both.extend(r.into_iter().map(|(c, x)| (c + n, x)));
            ech.insert(both);
        }
        for v in other.basis() {
            ech.insert(out.to_row(&v)?);
        }
        let mut res = out;
        for r in ech.rows_from(n) {
            let shifted: Row = r.iter().map(|(c, x)| (c - n, x.clone())).collect();
            res.echelon.insert(shifted);
        }
        Ok(res)
    }

    /// `{ w : <v, w> = 0 for all v here }` for the standard pairing in which
    /// distinct words are orthonormal. Each free column `f` of the reduced
    /// basis contributes `e_f - sum_i R[i][f] e_{pivot(i)}`.
    pub fn orthogonal_complement(&self) -> Subspace<W> {
        let rref = self.echelon.rref();
        let pivots: Vec<usize> = rref.iter().map(|r| *r.keys().next().unwrap()).collect();
        let mut out = Subspace::zero(self.ambient.clone());
        for f in 0..self.ambient.len() {
            if pivots.contains(&f) {
                continue;
            }
            let mut v: Vec<(usize, Q)> = vec![(f, Q::one())];
            for (r, &p) in rref.iter().zip(&pivots) {
                if let Some(x) = r.get(&f) {
                    v.push((p, -x.clone()));
                }
            }
            let row = row_from_rational(v.iter().map(|(c, x)| (*c, x)));
            out.echelon.insert(row);
        }
        out
    }

    /// Rebuilds this subspace over a larger ambient word list.
    pub fn embed(&self, ambient: Vec<W>) -> Result<Subspace<W>> {
        Subspace::spanned_by(ambient, &self.basis())
    }
}

impl<W: Word> fmt::Debug for Subspace<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} of {}) [",
            self.dim(),
            self.ambient.len()
        )?;
        for (i, v) in self.basis().iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Kernel of the linear map sending `domain[i]` to `images[i]`.
///
/// Each domain word becomes the row `(image | e_i)` with denominators
/// cleared; after elimination, rows whose image half vanished carry the
/// kernel in their tracking half.
pub fn kernel<W: Word, V: Word>(domain: &[W], images: &[LinComb<V>]) -> Subspace<W> {
    assert_eq!(domain.len(), images.len());
    let mut cod: Vec<V> = images.iter().flat_map(|u| u.words().cloned()).collect();
    cod.sort();
    cod.dedup();
    let cidx: BTreeMap<&V, usize> = cod.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let m = cod.len();
    let rows: Vec<Row> = par::map_range(domain.len(), |i| {
        let u = &images[i];
        let l = u.denominator_lcm();
        let mut r: Row = u
            .iter()
            .map(|(w, c)| (cidx[w], c.numer() * (&l / c.denom())))
            .collect();
        r.sort_by_key(|e| e.0);
        r.push((m + i, l));
        r
    });
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    let mut out = Subspace::zero(domain.to_vec());
    // The domain is assumed sorted; map tracking columns through the index.
    let remap: Vec<usize> = domain.iter().map(|w| out.index[w]).collect();
    for r in ech.rows_from(m) {
        let mut k: Row = r.iter().map(|(c, x)| (remap[c - m], x.clone())).collect();
        k.sort_by_key(|e| e.0);
        out.echelon.insert(k);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;
    use crate::words::Composition;

    fn w(p: &[u32]) -> Composition {
        Composition::from_parts(p)
    }
    fn l(p: &[u32]) -> LinComb {
        LinComb::from_parts(p)
    }

    #[test]
    fn membership_and_rref() {
        let amb = vec![w(&[1, 1]), w(&[2]), w(&[3])];
        let s = Subspace::spanned_by(
            amb,
            &[&l(&[1, 1]).scale(&q(2)) + &l(&[2]), l(&[2]).scale(&q(4))],
        )
        .unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&l(&[1, 1])));
        assert!(!s.contains(&l(&[3])));
        assert_eq!(s.basis()[0], LinComb::from_parts(&[2]));
    }

    #[test]
    fn kernel_of_small_map() {
        // (1,1) -> (3), (2) -> -2(3): kernel spanned by 2(1,1) + (2).
        let dom = vec![w(&[2]), w(&[1, 1])];
        let imgs = vec![l(&[3]).scale(&q(-2)), l(&[3])];
        let k = kernel(&dom, &imgs);
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&(&l(&[1, 1]).scale(&q(2)) + &l(&[2]))));
    }

    #[test]
    fn intersection() {
        let amb = vec![w(&[1, 1, 1]), w(&[1, 2]), w(&[2, 1]), w(&[3])];
        let a = Subspace::spanned_by(amb.clone(), &[l(&[3]), l(&[1, 2])]).unwrap();
        let b = Subspace::spanned_by(amb, &[&l(&[3]) + &l(&[1, 2]), l(&[2, 1])]).unwrap();
        let c = a.intersect(&b).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&(&l(&[3]) + &l(&[1, 2]))));
        assert!(a.contains_subspace(&c) && b.contains_subspace(&c));
    }

    #[test]
    fn complement() {
        let amb = vec![w(&[1, 1]), w(&[2]), w(&[3])];
        let a = Subspace::spanned_by(amb.clone(), &[&l(&[1, 1]) + &l(&[2])]).unwrap();
        let c = a.orthogonal_complement();
        assert_eq!(c.dim(), 2);
        assert!(c.contains(&(&l(&[1, 1]) - &l(&[2]))));
        assert!(c.contains(&l(&[3])));
        assert!(Subspace::full(amb).orthogonal_complement().is_zero());
    }

    #[test]
    fn echelon_is_canonical() {
        let amb = vec![w(&[1, 1]), w(&[2])];
        let a = Subspace::spanned_by(amb.clone(), &[&l(&[1, 1]) + &l(&[2])]).unwrap();
        let b = Subspace::spanned_by(amb, &[(&l(&[1, 1]) + &l(&[2])).scale(&q(-3))]).unwrap();
        assert_eq!(a.basis(), b.basis());
        assert!(a.same_as(&b));
    }
}
