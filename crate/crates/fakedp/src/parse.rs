//! Command-line grammars.
//!
//! * `EXPR`: signed integer combinations of component names, `2D1+D2-E1`.
//! * integer lists: `1,-1,0,0`.
//! * bundles: `(1,-1,0,0)[2,1,2]`.
//! * numerical collections: a preset name or `0,0,0,0;1,-1,0,0;...`.
//! * collections: `NUMERICAL#K` (the K-th enumerated twist tuple, from 1) or
//!   bundles separated by `;`.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty {0}")]
    Empty(&'static str),
    #[error("invalid integer {0:?}")]
    Integer(String),
    #[error("invalid term {0:?} in expression")]
    Term(String),
    #[error("invalid bundle {0:?}; expected (d0,d1,...)[t1,t2,...]")]
    Bundle(String),
}

pub fn parse_ints(s: &str) -> Result<Vec<i64>, ParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            let x = x.trim();
            x.parse::<i64>().map_err(|_| ParseError::Integer(x.to_string()))
        })
        .collect()
}

/// Terms of an expression, in order of appearance.
pub fn parse_expr(s: &str) -> Result<Vec<(String, i64)>, ParseError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(ParseError::Empty("expression"));
    }
    let mut out = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ if out.is_empty() => (1, rest),
            _ => return Err(ParseError::Term(rest.to_string())),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
        let name = &term[digits..];
        let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(ParseError::Term(term.to_string()));
        }
        let coeff = if digits == 0 {
            1
        } else {
            term[..digits]
                .parse::<i64>()
                .map_err(|_| ParseError::Integer(term[..digits].to_string()))?
        };
        out.push((name.to_string(), sign * coeff));
        rest = &body[end..];
    }
    Ok(out)
}

/// `(d)[t]`, with an empty or omitted torsion part allowed.
pub fn parse_bundle(s: &str) -> Result<(Vec<i64>, Vec<i64>), ParseError> {
    let s = s.trim();
    let bad = || ParseError::Bundle(s.to_string());
    let inner = s.strip_prefix('(').ok_or_else(bad)?;
    let close = inner.find(')').ok_or_else(bad)?;
    let d = parse_ints(&inner[..close])?;
    let tail = inner[close + 1..].trim();
    let t = if tail.is_empty() {
        Vec::new()
    } else {
        let t = tail.strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
        parse_ints(t)?
    };
    Ok((d, t))
}

pub fn parse_class_list(s: &str) -> Result<Vec<Vec<i64>>, ParseError> {
    let items: Vec<&str> = s.split(';').map(str::trim).filter(|x| !x.is_empty()).collect();
    if items.is_empty() {
        return Err(ParseError::Empty("class list"));
    }
    items.into_iter().map(parse_ints).collect()
}

#[derive(Debug, PartialEq, Eq)]
pub enum CollectionSpec {
    Enumerated { numerical: String, index: usize },
    Explicit(Vec<(Vec<i64>, Vec<i64>)>),
}

pub fn parse_collection(s: &str) -> Result<CollectionSpec, ParseError> {
    let s = s.trim();
    if let Some((num, k)) = s.split_once('#') {
        let index = k
            .trim()
            .parse::<usize>()
            .map_err(|_| ParseError::Integer(k.to_string()))?;
        return Ok(CollectionSpec::Enumerated {
            numerical: num.trim().to_string(),
            index,
        });
    }
    let items: Vec<&str> = s.split(';').map(str::trim).filter(|x| !x.is_empty()).collect();
    if items.is_empty() {
        return Err(ParseError::Empty("collection"));
    }
    Ok(CollectionSpec::Explicit(
        items.into_iter().map(parse_bundle).collect::<Result<_, _>>()?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions() {
        let e = parse_expr("2D1+D2 - E1+12E2").unwrap();
        assert_eq!(
            e,
            vec![("D1".into(), 2), ("D2".into(), 1), ("E1".into(), -1), ("E2".into(), 12)]
        );
        assert_eq!(parse_expr("-A0").unwrap(), vec![("A0".into(), -1)]);
        assert!(parse_expr("").is_err());
        assert!(parse_expr("2+D1").is_err());
        assert!(parse_expr("D1++D2").is_err());
    }

    #[test]
    fn bundles_and_lists() {
        assert_eq!(parse_ints("1, -1,0").unwrap(), vec![1, -1, 0]);
        assert!(parse_ints("1,x").is_err());
        assert_eq!(
            parse_bundle("(1,-1,0,0)[2,1,2]").unwrap(),
            (vec![1, -1, 0, 0], vec![2, 1, 2])
        );
        assert_eq!(parse_bundle("(3)").unwrap(), (vec![3], vec![]));
        assert!(parse_bundle("1,2[0]").is_err());
        assert_eq!(
            parse_collection("default#2").unwrap(),
            CollectionSpec::Enumerated { numerical: "default".into(), index: 2 }
        );
        assert_eq!(parse_class_list("0,0;1,-1").unwrap(), vec![vec![0, 0], vec![1, -1]]);
    }
}
