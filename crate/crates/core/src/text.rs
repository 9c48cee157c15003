//! Small tokenizer helpers for the textual element, vector, polynomial and
//! matrix formats.
//!
//! Elements nest parentheses, e.g. `((0,1),(1,0))`, so splitting has to track
//! depth instead of cutting at every separator.

use crate::error::{Error, Result};

fn depth_step(c: char, depth: &mut i32) -> Result<()> {
    match c {
        '(' | '[' => *depth += 1,
        ')' | ']' => {
            *depth -= 1;
            if *depth < 0 {
                return Err(Error::Parse("unbalanced brackets".into()));
            }
        }
        _ => {}
    }
    Ok(())
}

/// Splits on whitespace that is not inside brackets.
pub fn split_whitespace_top(s: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for c in s.chars() {
        depth_step(c, &mut depth)?;
        if c.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else if !c.is_whitespace() {
            cur.push(c);
        }
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced brackets".into()));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

/// Splits on `sep` at bracket depth zero, trimming each piece.
pub fn split_top(s: &str, sep: char) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for c in s.chars() {
        depth_step(c, &mut depth)?;
        if c == sep && depth == 0 {
            out.push(cur.trim().to_string());
            cur.clear();
        } else {
            cur.push(c);
        }
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced brackets".into()));
    }
    out.push(cur.trim().to_string());
    Ok(out)
}

/// Returns the contents of `open ... close` if `s` is wrapped by exactly one
/// such pair.
pub fn strip_wrapping(s: &str, open: char, close: char) -> Option<&str> {
    let s = s.trim();
    let inner = s.strip_prefix(open)?.strip_suffix(close)?;
    // Reject "(a),(b)" which starts and ends with brackets but is not wrapped.
    let mut depth = 0;
    for c in inner.chars() {
        if c == open {
            depth += 1;
        } else if c == close {
            depth -= 1;
            if depth < 0 {
                return None;
            }
        }
    }
    Some(inner)
}

/// Splits a comma-separated tuple `(a,b,...)` into its items.
pub fn tuple_items(s: &str) -> Option<Result<Vec<String>>> {
    strip_wrapping(s, '(', ')').map(|inner| split_top(inner, ','))
}

/// Non-empty lines with `#` comments removed.
pub fn content_lines(s: &str) -> impl Iterator<Item = &str> {
    s.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
}
