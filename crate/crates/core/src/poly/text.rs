//! Polynomial text grammar.
//!
//! ```text
//! poly   := term ( "+" term )*
//! term   := [ coeff "*" ] factor ( "*" factor )*  |  coeff
//! factor := VAR index [ "^" exponent ]
//! ```
//!
//! `VAR` is `x` for ordinary polynomials and `E` for decompositions. A `+`
//! only separates terms when it follows a complete term, so symmetrization
//! literals such as `+3` can be used as coefficients.

use super::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::semiring::{unit, Semiring};

pub fn parse_poly(x: &dyn Semiring, s: &str, n: usize) -> Result<Poly> {
    parse_poly_in(x, s, n, "x")
}

pub fn format_poly(x: &dyn Semiring, p: &Poly) -> String {
    format_poly_in(x, p, "x")
}

fn parse_error(message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        message: message.into(),
    }
}

fn split_terms(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                let so_far = s[start..i].trim();
                if !so_far.is_empty() && !so_far.ends_with('*') {
                    parts.push(&s[start..i]);
                    start = i + 1;
                }
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// `x3^2` ↦ `(2, 2)` (zero-based index, exponent).
fn parse_factor(f: &str, var: &str, n: usize) -> Result<Option<(usize, u32)>> {
    let Some(rest) = f.strip_prefix(var) else {
        return Ok(None);
    };
    let (idx, exp) = match rest.split_once('^') {
        Some((i, e)) => (i, Some(e)),
        None => (rest, None),
    };
    if idx.is_empty() || !idx.bytes().all(|b| b.is_ascii_digit()) {
        return Ok(None);
    }
    let index: usize = idx
        .parse()
        .map_err(|_| parse_error(format!("bad variable `{f}`")))?;
    if index == 0 || index > n {
        return Err(Error::IndexOutOfRange { index, n });
    }
    let exp = match exp {
        Some(e) => e
            .trim()
            .parse()
            .map_err(|_| parse_error(format!("bad exponent in `{f}`")))?,
        None => 1,
    };
    Ok(Some((index - 1, exp)))
}

pub fn parse_poly_in(x: &dyn Semiring, s: &str, n: usize, var: &str) -> Result<Poly> {
    if s.trim().is_empty() {
        return Err(parse_error("empty polynomial"));
    }
    let mut terms = Vec::new();
    for raw in split_terms(s) {
        let term = raw.trim();
        if term.is_empty() {
            return Err(parse_error(format!("empty term in `{s}`")));
        }
        let mut coeff = None;
        let mut exps = vec![0u32; n];
        for (k, factor) in crate::instances::quasi::split_top_level(term, '*')
            .into_iter()
            .enumerate()
        {
            let factor = factor.trim();
            match parse_factor(factor, var, n)? {
                Some((j, d)) => exps[j] += d,
                None if k == 0 => coeff = Some(x.parse_literal(factor)?),
                None => return Err(parse_error(format!("expected a variable, found `{factor}`"))),
            }
        }
        let coeff = match coeff {
            Some(c) => c,
            None => unit(x)?,
        };
        terms.push(Monomial::new(coeff, exps));
    }
    Poly::new(n, terms)
}

pub fn format_poly_in(x: &dyn Semiring, p: &Poly, var: &str) -> String {
    if p.is_zero() {
        return x.format(&x.zero());
    }
    let one = x.one();
    let rendered: Vec<String> = p
        .terms()
        .iter()
        .map(|t| {
            let mut factors = Vec::new();
            let constant = t.exps.iter().all(|&d| d == 0);
            if constant || one.as_ref() != Some(&t.coeff) {
                factors.push(x.format(&t.coeff));
            }
            for (j, &d) in t.exps.iter().enumerate() {
                match d {
                    0 => {}
                    1 => factors.push(format!("{var}{}", j + 1)),
                    _ => factors.push(format!("{var}{}^{d}", j + 1)),
                }
            }
            factors.join("*")
        })
        .collect();
    rendered.join(" + ")
}
