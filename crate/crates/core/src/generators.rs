//! Text forms of permutation generators.
//!
//! One permutation per line, either in cycle notation (`(0 1 2)(3 4 5)`,
//! `()` for the identity) or as an image sequence (`[1, 2, 0]` or
//! `1 2 0`). Blank lines and lines starting with `#` are skipped.

use crate::error::{Error, Result};
use crate::perm::Permutation;

fn line_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        location: format!("line {line}"),
        message: message.into(),
    }
}

fn parse_point(token: &str, line: usize, degree: usize) -> Result<usize> {
    let p: usize = token
        .parse()
        .map_err(|_| line_error(line, format!("{token:?} is not a point")))?;
    if p >= degree {
        return Err(line_error(
            line,
            format!("point {p} is outside 0..{degree}"),
        ));
    }
    Ok(p)
}

fn parse_cycles(text: &str, line: usize, degree: usize) -> Result<Permutation> {
    let mut images: Vec<usize> = (0..degree).collect();
    let mut used = vec![false; degree];
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return Err(line_error(line, format!("expected '(' at {rest:?}")));
        };
        let Some(close) = body.find(')') else {
            return Err(line_error(line, "unclosed cycle"));
        };
        let points = body[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| parse_point(t, line, degree))
            .collect::<Result<Vec<_>>>()?;
        for (i, &p) in points.iter().enumerate() {
            if used[p] {
                return Err(line_error(line, format!("point {p} is repeated")));
            }
            used[p] = true;
            images[p] = points[(i + 1) % points.len()];
        }
        rest = body[close + 1..].trim_start();
    }
    Permutation::new(images).map_err(|e| line_error(line, e.to_string()))
}

fn parse_images(text: &str, line: usize, degree: usize) -> Result<Permutation> {
    let inner = text.trim();
    let inner = inner
        .strip_prefix('[')
        .map(|s| s.strip_suffix(']').ok_or_else(|| line_error(line, "unclosed '['")))
        .transpose()?
        .unwrap_or(inner);
    let images = inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| parse_point(t, line, degree))
        .collect::<Result<Vec<_>>>()?;
    if images.len() != degree {
        return Err(line_error(
            line,
            format!("{} images given for degree {degree}", images.len()),
        ));
    }
    let mut seen = vec![false; degree];
    for &p in &images {
        if seen[p] {
            return Err(line_error(line, format!("point {p} is repeated")));
        }
        seen[p] = true;
    }
    Permutation::new(images).map_err(|e| line_error(line, e.to_string()))
}

/// Parses one permutation per non-comment line, at the given degree.
pub fn parse_generators(text: &str, degree: usize) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let perm = match t.chars().next() {
            Some('(') => parse_cycles(t, line, degree)?,
            Some('[') => parse_images(t, line, degree)?,
            Some(c) if c.is_ascii_digit() => parse_images(t, line, degree)?,
            _ => return Err(line_error(line, format!("unrecognised generator {t:?}"))),
        };
        out.push(perm);
    }
    Ok(out)
}
