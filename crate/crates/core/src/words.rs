//! Words of the Hoffman algebra in z-letter form (compositions) and in
//! xy-letter form, with conversions and graded enumeration.
//!
//! The z-letter `z_k` is the xy-word `y x^{k-1}`, so a word starting with `y`
//! corresponds to exactly one composition. Compositions are the canonical form
//! for everything in `H^1 = Q + yH`; xy-words are used only by maps that act
//! letter by letter.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{domain, Error, Result};

/// Common behaviour of the two word representations.
pub trait Word: Ord + Clone + fmt::Debug + fmt::Display + Send + Sync {
    /// Number of letters in xy-form.
    fn weight(&self) -> usize;
    /// Number of `y` letters.
    fn depth(&self) -> usize;
    fn empty() -> Self;
    fn is_empty(&self) -> bool;
}

/// A finite sequence of positive integers `(k_1, ..., k_r)`, i.e. the word
/// `z_{k_1} ... z_{k_r}`.
///
/// Ordering is graded: by weight, then by depth, then lexicographically on
/// the parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if let Some(pos) = parts.iter().position(|&k| k == 0) {
            return Err(domain(format!(
                "composition part {} is 0; parts must be >= 1",
                pos + 1
            )));
        }
        Ok(Composition(parts))
    }

    /// Builds a composition from parts known to be positive.
    ///
    /// # Panics
    /// Panics if a part is zero.
    pub fn from_parts(parts: &[u32]) -> Self {
        assert!(parts.iter().all(|&k| k > 0), "zero part in {parts:?}");
        Composition(parts.to_vec())
    }

    pub(crate) fn from_vec_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.iter().all(|&k| k > 0));
        Composition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    /// Admissible words (`k_r >= 2`, or empty) span `H^0 = Q + yHx`.
    pub fn is_admissible(&self) -> bool {
        self.0.last().is_none_or(|&k| k >= 2)
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// `(k_1, ..., k_i)`.
    pub fn prefix(&self, i: usize) -> Composition {
        Composition(self.0[..i].to_vec())
    }

    /// `(k_r, k_{r-1}, ..., k_{i+1})`: the suffix after position `i`, reversed.
    pub fn reversed_suffix(&self, i: usize) -> Composition {
        Composition(self.0[i..].iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Composition(v)
    }

    pub fn push(&self, k: u32) -> Composition {
        assert!(k > 0);
        let mut v = self.0.clone();
        v.push(k);
        Composition(v)
    }

    /// Number of trailing parts equal to 1.
    pub fn trailing_ones(&self) -> usize {
        self.0.iter().rev().take_while(|&&k| k == 1).count()
    }

    pub fn to_xy(&self) -> XYWord {
        let mut letters = Vec::with_capacity(self.weight());
        for &k in &self.0 {
            letters.push(Letter::Y);
            letters.extend(std::iter::repeat_n(Letter::X, k as usize - 1));
        }
        XYWord(letters)
    }
}

impl Word for Composition {
    fn weight(&self) -> usize {
        self.0.iter().map(|&k| k as usize).sum()
    }
    fn depth(&self) -> usize {
        self.0.len()
    }
    fn empty() -> Self {
        Composition(Vec::new())
    }
    fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl serde::Serialize for Composition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.depth().cmp(&other.depth()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }
}

/// A word over `{x, y}`. Ordered by length, then lexicographically with
/// `x < y`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct XYWord(Vec<Letter>);

impl XYWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        XYWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn starts_with_y(&self) -> bool {
        self.0.first() == Some(&Letter::Y)
    }

    pub fn ends_with_x(&self) -> bool {
        self.0.last() == Some(&Letter::X)
    }

    /// Membership in the letter-level domain `yHx`.
    pub fn in_yhx(&self) -> bool {
        self.starts_with_y() && self.ends_with_x()
    }

    pub fn concat(&self, other: &XYWord) -> XYWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        XYWord(v)
    }

    pub fn push(&self, l: Letter) -> XYWord {
        let mut v = self.0.clone();
        v.push(l);
        XYWord(v)
    }

    /// Converts to z-letter form. Fails unless the word is empty or starts
    /// with `y`.
    pub fn to_composition(&self) -> Result<Composition> {
        let mut parts: Vec<u32> = Vec::new();
        for (i, l) in self.0.iter().enumerate() {
            match l {
                Letter::Y => parts.push(1),
                Letter::X => match parts.last_mut() {
                    Some(k) => *k += 1,
                    None => {
                        debug_assert_eq!(i, 0);
                        return Err(Error::NotInH1(self.to_string()));
                    }
                },
            }
        }
        Ok(Composition(parts))
    }
}

impl Word for XYWord {
    fn weight(&self) -> usize {
        self.0.len()
    }
    fn depth(&self) -> usize {
        self.0.iter().filter(|&&l| l == Letter::Y).count()
    }
    fn empty() -> Self {
        XYWord(Vec::new())
    }
    fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for XYWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for XYWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for XYWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for XYWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Result of [`parse_word`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedWord {
    Composition(Composition),
    XY(XYWord),
}

impl ParsedWord {
    /// The z-letter form, converting from xy-form if needed.
    pub fn into_composition(self) -> Result<Composition> {
        match self {
            ParsedWord::Composition(c) => Ok(c),
            ParsedWord::XY(w) => w.to_composition(),
        }
    }

    pub fn into_xy(self) -> XYWord {
        match self {
            ParsedWord::Composition(c) => c.to_xy(),
            ParsedWord::XY(w) => w,
        }
    }
}

/// Parses `"1,2"` as a composition and `"yxx"` as an xy-word. `"()"` and the
/// empty string denote the empty composition.
pub fn parse_word(text: &str) -> Result<ParsedWord> {
    let t = text.trim();
    if t.is_empty() || t == "()" {
        return Ok(ParsedWord::Composition(Composition::default()));
    }
    let offset = text.find(t).unwrap_or(0);
    let first = t.chars().next().unwrap();
    if first == 'x' || first == 'y' {
        let mut letters = Vec::with_capacity(t.len());
        for (i, c) in t.char_indices() {
            letters.push(match c {
                'x' => Letter::X,
                'y' => Letter::Y,
                other => {
                    return Err(Error::Parse {
                        input: text.to_string(),
                        position: offset + i,
                        found: other,
                    })
                }
            });
        }
        return Ok(ParsedWord::XY(XYWord(letters)));
    }
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(t);
    let inner_offset = offset + t.find(inner).unwrap_or(0);
    let mut parts = Vec::new();
    let mut pos = inner_offset;
    for field in inner.split(',') {
        let trimmed = field.trim();
        let lead = field.len() - field.trim_start().len();
        if trimmed.is_empty() {
            let found = inner[pos - inner_offset..].chars().next().unwrap_or(',');
            return Err(Error::Parse {
                input: text.to_string(),
                position: pos,
                found,
            });
        }
        if let Some((i, c)) = trimmed.char_indices().find(|(_, c)| !c.is_ascii_digit()) {
            return Err(Error::Parse {
                input: text.to_string(),
                position: pos + lead + i,
                found: c,
            });
        }
        let k: u32 = trimmed
            .parse()
            .map_err(|_| domain(format!("part {trimmed:?} is out of range")))?;
        parts.push(k);
        pos += field.len() + 1;
    }
    Composition::new(parts).map(ParsedWord::Composition)
}

/// Parses a word and insists on z-letter form (converting `y...` xy-words).
pub fn parse_composition(text: &str) -> Result<Composition> {
    parse_word(text)?.into_composition()
}

/// The three graded word spaces used by the relation machinery.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WordSpace {
    /// `yH`: all nonempty compositions.
    YH,
    /// `yHx`: admissible nonempty compositions.
    YHX,
    /// `H^1 = Q + yH`: includes the empty word at weight 0.
    H1,
}

/// All words of the given weight in `space`, in the canonical word order.
pub fn enumerate_words(weight: usize, space: WordSpace) -> Vec<Composition> {
    if weight == 0 {
        return match space {
            WordSpace::H1 => vec![Composition::default()],
            _ => Vec::new(),
        };
    }
    let mut out = Vec::with_capacity(1 << (weight - 1));
    let mut cur = Vec::new();
    compositions_into(weight as u32, &mut cur, &mut out);
    if space == WordSpace::YHX {
        out.retain(|c| c.is_admissible());
    }
    out.sort();
    out
}

fn compositions_into(rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
    if rest == 0 {
        out.push(Composition(cur.clone()));
        return;
    }
    for k in 1..=rest {
        cur.push(k);
        compositions_into(rest - k, cur, out);
        cur.pop();
    }
}

/// All xy-words of the given length, in xy-word order.
pub fn enumerate_xy_words(length: usize) -> Vec<XYWord> {
    let mut out = Vec::with_capacity(1 << length);
    for bits in 0..(1u64 << length) {
        let letters = (0..length)
            .map(|i| {
                if bits >> (length - 1 - i) & 1 == 1 {
                    Letter::Y
                } else {
                    Letter::X
                }
            })
            .collect();
        out.push(XYWord(letters));
    }
    out.sort();
    out
}
