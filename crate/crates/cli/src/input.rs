//! Parsing of command-line words, linear combinations and parameters.

use num_complex::Complex64;
use pmskit::algebra::XYComb;
use pmskit::words::{parse_word, ParsedWord};
use pmskit::{Error, LinComb, Q};

/// Splits `"c*word"`, `"-word"` or `"word"` into coefficient and word text.
fn split_term(t: &str) -> Result<(Q, &str), Error> {
    if let Some((c, w)) = t.split_once('*') {
        let coef = c
            .trim()
            .parse::<Q>()
            .map_err(|_| Error::Usage(format!("bad coefficient {c:?} in {t:?}")))?;
        return Ok((coef, w));
    }
    if let Some(rest) = t.strip_prefix('-') {
        return Ok((Q::from_integer((-1).into()), rest));
    }
    Ok((Q::from_integer(1.into()), t))
}

fn parse_terms(terms: &[String]) -> Result<Vec<(Q, ParsedWord)>, Error> {
    terms
        .iter()
        .map(|t| {
            let (c, w) = split_term(t)?;
            Ok((c, parse_word(w)?))
        })
        .collect()
}

/// A combination in z-letter form; xy-words must start with `y`.
pub fn parse_comb(terms: &[String]) -> Result<LinComb, Error> {
    let mut out = LinComb::zero();
    for (c, w) in parse_terms(terms)? {
        out.add_term(w.into_composition()?, c);
    }
    Ok(out)
}

/// A combination of xy-words; compositions are spelled out in letters.
pub fn parse_xy_comb(terms: &[String]) -> Result<XYComb, Error> {
    let mut out = XYComb::zero();
    for (c, w) in parse_terms(terms)? {
        out.add_term(w.into_xy(), c);
    }
    Ok(out)
}

/// `"re"` or `"re,im"`.
pub fn parse_alpha(s: &str) -> Result<Complex64, Error> {
    let bad = || Error::Usage(format!("bad alpha {s:?}; expected \"re\" or \"re,im\""));
    let mut it = s.split(',');
    let re: f64 = it
        .next()
        .ok_or_else(bad)?
        .trim()
        .parse()
        .map_err(|_| bad())?;
    let im: f64 = match it.next() {
        Some(t) => t.trim().parse().map_err(|_| bad())?,
        None => 0.0,
    };
    if it.next().is_some() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms() {
        let u = parse_comb(&["2*1,2".into(), "-3".into(), "-1/2*yx".into()]).unwrap();
        let mut expect = LinComb::from_parts(&[1, 2]).scale(&Q::from_integer(2.into()));
        expect -= &LinComb::from_parts(&[3]);
        expect.add_term(
            pmskit::Composition::from_parts(&[2]),
            Q::new((-1).into(), 2.into()),
        );
        assert_eq!(u, expect);
        assert!(parse_comb(&["xy".into()]).is_err());
        assert!(parse_comb(&["a*1".into()]).is_err());
    }

    #[test]
    fn alphas() {
        assert_eq!(parse_alpha("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(parse_alpha("0.3,-0.2").unwrap(), Complex64::new(0.3, -0.2));
        assert!(parse_alpha("a").is_err());
        assert!(parse_alpha("1,2,3").is_err());
    }
}
