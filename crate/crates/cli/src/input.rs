//! Plain-text inputs: decimal or complex matrices and element vectors.
//! Blank lines and `#` comments are ignored everywhere.

use anyhow::{anyhow, bail, Context};
use gabrec_core::text;
use gabrec_core::{Field, FieldElement, Tower};
use num::complex::Complex64;

/// A matrix of floating-point literals; `complex` is set once any entry is
/// written with an imaginary part.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericMatrix {
    pub entries: Vec<Vec<Complex64>>,
    pub complex: bool,
}

impl NumericMatrix {
    pub fn real_parts(&self) -> Vec<Vec<f64>> {
        self.entries.iter().map(|row| row.iter().map(|z| z.re).collect()).collect()
    }
}

fn is_complex_literal(s: &str) -> bool {
    s.ends_with(['i', 'j'])
}

/// Parses `1.5`, `-2e-3`, `3i`, `-i`, `1.5+2i` and similar.
pub fn parse_number(s: &str) -> anyhow::Result<Complex64> {
    if !is_complex_literal(s) {
        return s.parse::<f64>().map(Complex64::from).map_err(|_| anyhow!("invalid number `{s}`"));
    }
    s.parse::<Complex64>().map_err(|_| anyhow!("invalid complex number `{s}`"))
}

/// One matrix row per line, entries separated by whitespace.
pub fn parse_numeric_matrix(s: &str) -> anyhow::Result<NumericMatrix> {
    let mut entries = Vec::new();
    let mut complex = false;
    for (i, line) in text::content_lines(s).enumerate() {
        let row = line
            .split_whitespace()
            .map(|tok| {
                complex |= is_complex_literal(tok);
                parse_number(tok)
            })
            .collect::<anyhow::Result<Vec<_>>>()
            .with_context(|| format!("row {}", i + 1))?;
        if let Some(first) = entries.first().map(Vec::len) {
            if row.len() != first {
                bail!("row {} has {} entries, expected {first}", i + 1, row.len());
            }
        }
        entries.push(row);
    }
    if entries.is_empty() {
        bail!("empty matrix");
    }
    Ok(NumericMatrix { entries, complex })
}

/// Whitespace-separated field elements in the tower's text format.
pub fn parse_vector(tower: &Tower, s: &str) -> anyhow::Result<Vec<FieldElement>> {
    let mut out = Vec::new();
    for line in text::content_lines(s) {
        for tok in text::split_whitespace_top(line)? {
            out.push(tower.parse_elem(&tok).with_context(|| format!("element `{tok}`"))?);
        }
    }
    if out.is_empty() {
        bail!("empty vector");
    }
    Ok(out)
}
