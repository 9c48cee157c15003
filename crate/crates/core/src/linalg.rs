//! Exact Gaussian elimination over any [`Field`]: reduced row echelon form,
//! rank, right kernel and linear solving.
//!
//! Elimination keeps fractions and canonicalizes after every operation. The
//! pivot in each column is the first nonzero entry at or below the current
//! row, so results (in particular kernel bases) are deterministic.

use std::ops::Index;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::text;

/// Dense row-major matrix of field elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix<E> {
    rows: usize,
    cols: usize,
    entries: Vec<E>,
}

impl<E: Clone> ExactMatrix<E> {
    pub fn new(rows: usize, cols: usize, entries: Vec<E>) -> Result<Self> {
        if rows * cols != entries.len() {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    /// Builds a matrix from rows; `cols` is needed to describe a 0-row matrix.
    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(ExactMatrix { rows: n, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, entries }
    }

    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { field.one() } else { field.zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<E> {
        self.entries
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<T: Clone>(&self, f: impl FnMut(&E) -> T) -> ExactMatrix<T> {
        ExactMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(field.zero(), |acc, l| {
                field.add(&acc, &field.mul(self.get(i, l), other.get(l, j)))
            })
        }))
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Result<Vec<E>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} matrix by vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows).map(|i| dot(field, self.row(i), v)).collect())
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.entries.iter().all(|e| field.is_zero(e))
    }
}

impl<E> Index<(usize, usize)> for ExactMatrix<E> {
    type Output = E;

    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.entries[i * self.cols + j]
    }
}

pub fn dot<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter().zip(b).fold(field.zero(), |acc, (x, y)| field.add(&acc, &field.mul(x, y)))
}

/// Reduced row echelon form together with rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<E> {
    pub reduced: ExactMatrix<E>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn rref<F: Field>(field: &F, m: &ExactMatrix<F::Elem>) -> Rref<F::Elem> {
    let mut r = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..r.cols {
        if row == r.rows {
            break;
        }
        let Some(p) = (row..r.rows).find(|&i| !field.is_zero(r.get(i, col))) else {
            continue;
        };
        r.swap_rows(row, p);
        let inv = field.inv(r.get(row, col)).expect("pivot is nonzero");
        for j in col..r.cols {
            let v = field.mul(r.get(row, j), &inv);
            r.set(row, j, v);
        }
        for i in 0..r.rows {
            if i == row || field.is_zero(r.get(i, col)) {
                continue;
            }
            let factor = r.get(i, col).clone();
            for j in col..r.cols {
                let v = field.sub(r.get(i, j), &field.mul(&factor, r.get(row, j)));
                r.set(i, j, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    Rref { rank: pivots.len(), reduced: r, pivots }
}

pub fn rank<F: Field>(field: &F, m: &ExactMatrix<F::Elem>) -> usize {
    rref(field, m).rank
}

/// Basis of `{v : M·vᵀ = 0}`, one vector per row. The basis vector for free
/// column `f` has a 1 at `f` and zeros at the other free columns.
pub fn right_kernel<F: Field>(field: &F, m: &ExactMatrix<F::Elem>) -> ExactMatrix<F::Elem> {
    let Rref { reduced, pivots, .. } = rref(field, m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let rows = free
        .iter()
        .map(|&f| {
            let mut v = vec![field.zero(); m.cols];
            v[f] = field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(reduced.get(i, f));
            }
            v
        })
        .collect();
    ExactMatrix::from_rows(m.cols, rows).expect("kernel rows have matching length")
}

/// Some `x` with `M·x = b`, free variables set to zero; `None` if the system
/// is inconsistent.
pub fn solve<F: Field>(
    field: &F,
    m: &ExactMatrix<F::Elem>,
    b: &[F::Elem],
) -> Result<Option<Vec<F::Elem>>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows
        )));
    }
    let aug = ExactMatrix::from_fn(m.rows, m.cols + 1, |i, j| {
        if j < m.cols {
            m.get(i, j).clone()
        } else {
            b[i].clone()
        }
    });
    let Rref { reduced, pivots, .. } = rref(field, &aug);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![field.zero(); m.cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = reduced.get(i, m.cols).clone();
    }
    Ok(Some(x))
}

/// `rows cols` header followed by one line per row of whitespace-separated
/// entries.
pub fn format_matrix<F: Field>(field: &F, m: &ExactMatrix<F::Elem>) -> String {
    let mut out = format!("{} {}\n", m.rows, m.cols);
    for i in 0..m.rows {
        let line: Vec<String> = m.row(i).iter().map(|e| field.format_elem(e)).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_matrix<F: Field>(field: &F, s: &str) -> Result<ExactMatrix<F::Elem>> {
    let (rows, cols, tokens) = parse_matrix_tokens(s)?;
    let entries = tokens.iter().map(|t| field.parse_elem(t)).collect::<Result<Vec<_>>>()?;
    ExactMatrix::new(rows, cols, entries)
}

/// Header plus raw entry tokens; shared with readers of non-exact literals.
pub fn parse_matrix_tokens(s: &str) -> Result<(usize, usize, Vec<String>)> {
    let mut lines = text::content_lines(s);
    let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad matrix header `{header}`"))))
        .collect::<Result<_>>()?;
    let [rows, cols] = dims[..] else {
        return Err(Error::Parse(format!("matrix header must be `rows cols`, got `{header}`")));
    };
    let mut tokens = Vec::new();
    for line in lines {
        tokens.extend(text::split_whitespace_top(line)?);
    }
    if tokens.len() != rows * cols {
        return Err(Error::Parse(format!(
            "{rows}x{cols} matrix needs {} entries, found {}",
            rows * cols,
            tokens.len()
        )));
    }
    Ok((rows, cols, tokens))
}
