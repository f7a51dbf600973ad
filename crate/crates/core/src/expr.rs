//! Text form of elements: `1/2 h1 - 3 h2 + r`, `2*h1`, or a coordinate
//! list `[1/2, 0, 1]` (last entry is the `r` coefficient).
//!
//! With `n = 1` the single `h` generator may be written `h` or `h1`.

use crate::algebra::{Element, Generator};
use crate::error::{EacpError, Result};
use crate::scalar::{parse_rational, Scalar};

fn parse_err(message: impl Into<String>) -> EacpError {
    EacpError::Parse { field: "element".into(), message: message.into() }
}

fn parse_generator(tok: &str, n: usize) -> Result<Generator> {
    if tok == "r" {
        return Ok(Generator::R);
    }
    if tok == "h" {
        return if n == 1 { Ok(Generator::H(0)) } else { Err(parse_err("bare `h` needs n = 1")) };
    }
    let idx = tok
        .strip_prefix('h')
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| parse_err(format!("unknown generator `{tok}`")))?;
    if idx == 0 || idx > n {
        return Err(EacpError::IndexOutOfRange(format!("{tok} with n = {n}")));
    }
    Ok(Generator::H(idx - 1))
}

/// Parses an element of an algebra with `n` h-generators.
pub fn parse_element(text: &str, n: usize) -> Result<Element> {
    let text = text.trim();
    if text.is_empty() {
        return Err(parse_err("empty element"));
    }
    if let Some(inner) = text.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
        let coords = inner
            .split(',')
            .map(|s| parse_rational(s.trim()).map(Scalar::rational))
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != n + 1 {
            return Err(EacpError::DimensionMismatch(format!(
                "{} coordinates given, expected {}",
                coords.len(),
                n + 1
            )));
        }
        return Ok(Element::from_coords(&coords));
    }
    if text == "0" {
        return Ok(Element::zero(n));
    }

    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut negative = false;
    let mut current = String::new();
    for ch in text.chars() {
        match ch {
            '+' | '-' => {
                if !current.trim().is_empty() {
                    terms.push((negative, current.trim().to_string()));
                    negative = false;
                }
                current.clear();
                if ch == '-' {
                    negative = !negative;
                }
            }
            _ => current.push(ch),
        }
    }
    if current.trim().is_empty() {
        return Err(parse_err("dangling sign"));
    }
    terms.push((negative, current.trim().to_string()));

    let mut x = Element::zero(n);
    for (neg, term) in terms {
        let term = term.replace('*', " ");
        let parts: Vec<&str> = term.split_whitespace().collect();
        let (coef, gen) = match parts.as_slice() {
            [g] => (Scalar::one(), parse_generator(g, n)?),
            [c, g] => (Scalar::rational(parse_rational(c)?), parse_generator(g, n)?),
            _ => return Err(parse_err(format!("cannot read term `{term}`"))),
        };
        let coef = if neg { -coef } else { coef };
        x = x.add(&Element::generator(n, gen).scale(&coef));
    }
    Ok(x)
}

fn coefficient_text(c: &Scalar) -> (bool, String) {
    match c {
        Scalar::Rational(r) => {
            let neg = r < &num_rational::BigRational::from_integer(0.into());
            let abs = if neg { -r.clone() } else { r.clone() };
            (neg, crate::scalar::fmt_rational(&abs))
        }
        other => (false, format!("({other})")),
    }
}

/// Formats an element as a linear combination of generators.
pub fn format_element(x: &Element) -> String {
    let n = x.n();
    let mut out = String::new();
    let gens = (0..n).map(Generator::H).chain(std::iter::once(Generator::R));
    for g in gens {
        let c = x.coefficient(g);
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = coefficient_text(c);
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            out.push_str(&mag);
            out.push(' ');
        }
        out.push_str(&g.name(n));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
