//! Text and JSON forms of monomial ideals.
//!
//! Text: generators separated by `,`, each a `*`-product of `x<i>` or
//! `x<i>^<e>` factors (1-based indices); whitespace is ignored; `0` is the
//! zero ideal and `1` the unit ideal. JSON: `{"n": .., "gens": [[..], ..]}`.

use crate::error::{Error, Result};
use crate::ideal::{minimalize, MonomialIdeal};
use crate::monomial::Monomial;

fn parse_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

/// Parses the text form. Without `n` the ambient count is the largest index
/// that occurs (at least 1).
pub fn parse_ideal(text: &str, n: Option<usize>) -> Result<MonomialIdeal> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return parse_err("empty ideal text");
    }
    if compact == "0" {
        return Ok(MonomialIdeal::zero(n.unwrap_or(1)));
    }
    let mut raw: Vec<Vec<(usize, u32)>> = Vec::new();
    for term in compact.split(',') {
        raw.push(parse_monomial(term)?);
    }
    let max_index = raw.iter().flatten().map(|&(i, _)| i).max().unwrap_or(0);
    let n = match n {
        Some(n) if n < max_index => {
            return parse_err(format!("variable x{max_index} exceeds n = {n}"));
        }
        Some(n) => n,
        None => max_index.max(1),
    };
    let gens = raw
        .into_iter()
        .map(|factors| {
            let mut e = vec![0u32; n];
            for (i, p) in factors {
                e[i - 1] = e[i - 1].checked_add(p).ok_or(Error::Overflow)?;
            }
            Ok(Monomial::new(e))
        })
        .collect::<Result<Vec<_>>>()?;
    minimalize(gens, n)
}

fn parse_monomial(term: &str) -> Result<Vec<(usize, u32)>> {
    if term.is_empty() {
        return parse_err("empty generator");
    }
    if term == "1" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for factor in term.split('*') {
        let rest = match factor.strip_prefix('x') {
            Some(r) => r,
            None => return parse_err(format!("bad factor `{factor}`")),
        };
        let (idx, exp) = match rest.split_once('^') {
            Some((i, e)) => (i, e),
            None => (rest, "1"),
        };
        let idx: usize = idx.parse().map_err(|_| Error::Parse(format!("bad index in `{factor}`")))?;
        let exp: u32 = exp.parse().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
        if idx == 0 {
            return parse_err("variable indices start at 1");
        }
        out.push((idx, exp));
    }
    Ok(out)
}

/// Canonical text form; identical to `Display`.
pub fn to_text(ideal: &MonomialIdeal) -> String {
    ideal.to_string()
}

pub fn to_json(ideal: &MonomialIdeal) -> String {
    serde_json::to_string(ideal).expect("ideal serializes")
}

pub fn from_json(text: &str) -> Result<MonomialIdeal> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Accepts either form: JSON when the input starts with `{`.
pub fn parse_any(text: &str, n: Option<usize>) -> Result<MonomialIdeal> {
    let t = text.trim();
    if t.starts_with('{') {
        let ideal = from_json(t)?;
        match n {
            Some(n) if n != ideal.n() => parse_err(format!("JSON has n = {}, expected {n}", ideal.n())),
            _ => Ok(ideal),
        }
    } else {
        parse_ideal(t, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_text() {
        let i = parse_ideal("x2*x3, x1^2 ,x1*x2", None).unwrap();
        assert_eq!(i.n(), 3);
        assert_eq!(i.to_string(), "x1^2, x1*x2, x2*x3");
        assert!(parse_ideal("0", Some(4)).unwrap().is_zero());
        assert!(parse_ideal("1", Some(2)).unwrap().is_unit());
        assert_eq!(parse_ideal("x1", Some(3)).unwrap().n(), 3);
    }

    #[test]
    fn rejects_bad_text() {
        assert!(matches!(parse_ideal("y1", None), Err(Error::Parse(_))));
        assert!(matches!(parse_ideal("x0", None), Err(Error::Parse(_))));
        assert!(matches!(parse_ideal("x1,,x2", None), Err(Error::Parse(_))));
        assert!(matches!(parse_ideal("x5", Some(3)), Err(Error::Parse(_))));
        assert!(matches!(parse_ideal("x1^", None), Err(Error::Parse(_))));
    }

    #[test]
    fn round_trips() {
        let i = parse_ideal("x1*x2*x3*x4, x2^2*x3^2*x4^2, x1^2*x2^2*x3^2", None).unwrap();
        let text = to_text(&i);
        assert_eq!(parse_ideal(&text, Some(4)).unwrap(), i);
        let json = to_json(&i);
        assert_eq!(json, r#"{"n":4,"gens":[[1,1,1,1],[2,2,2,0],[0,2,2,2]]}"#);
        assert_eq!(from_json(&json).unwrap(), i);
        assert_eq!(to_json(&from_json(&json).unwrap()), json);
        assert_eq!(parse_any(&json, None).unwrap(), i);
    }

    #[test]
    fn json_is_minimalized_on_read() {
        let i = from_json(r#"{"n":2,"gens":[[1,1],[1,0]]}"#).unwrap();
        assert_eq!(to_json(&i), r#"{"n":2,"gens":[[1,0]]}"#);
        assert!(from_json(r#"{"n":2,"gens":[[1]]}"#).is_err());
    }
}
