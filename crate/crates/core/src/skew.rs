//! The θ-polynomial ring `L[x;θ]`.
//!
//! Addition is coefficient-wise; multiplication follows `x·a = θ(a)·x`, so the
//! coefficient of `x^{i+j}` in `a·b` collects `a_i·θ^i(b_j)`. A polynomial `f`
//! acts on `L` as the `K`-linear operator `g ↦ Σ f_i·θ^i(g)`, and the product
//! corresponds to composition of operators.

use crate::algebra::{FieldElement, Tower};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::text;

/// Dense θ-polynomial, lowest degree first, with no trailing zeros (the zero
/// polynomial has no coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewPoly {
    coeffs: Vec<FieldElement>,
}

impl SkewPoly {
    pub fn zero() -> Self {
        SkewPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(tower: &Tower, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| tower.is_zero(c)) {
            coeffs.pop();
        }
        SkewPoly { coeffs }
    }

    pub fn constant(tower: &Tower, c: FieldElement) -> Self {
        Self::from_coeffs(tower, vec![c])
    }

    pub fn one(tower: &Tower) -> Self {
        Self::constant(tower, tower.one())
    }

    /// `c·x^d`.
    pub fn monomial(tower: &Tower, c: FieldElement, d: usize) -> Self {
        let mut coeffs = vec![tower.zero(); d + 1];
        coeffs[d] = c;
        Self::from_coeffs(tower, coeffs)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, tower: &Tower, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| tower.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self, tower: &Tower) -> bool {
        self.leading().is_some_and(|c| tower.is_one(c))
    }

    /// `[c0, c1, …]` in element text format, lowest degree first.
    pub fn format(&self, tower: &Tower) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| tower.format_elem(c)).collect();
        format!("[{}]", parts.join(", "))
    }

    pub fn parse(tower: &Tower, s: &str) -> Result<Self> {
        let inner = text::strip_wrapping(s, '[', ']')
            .ok_or_else(|| Error::Parse(format!("polynomial must be wrapped in [...]: `{s}`")))?;
        if inner.trim().is_empty() {
            return Ok(Self::zero());
        }
        let coeffs =
            text::split_top(inner, ',')?.iter().map(|t| tower.parse_elem(t)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(tower, coeffs))
    }
}

/// Ring operations of `L[x;θ]` for a given tower.
#[derive(Clone, Copy, Debug)]
pub struct SkewRing<'a> {
    tower: &'a Tower,
}

impl<'a> SkewRing<'a> {
    pub fn new(tower: &'a Tower) -> Self {
        SkewRing { tower }
    }

    pub fn tower(&self) -> &'a Tower {
        self.tower
    }

    pub fn add(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        self.zip_with(a, b, |x, y| self.tower.add(x, y))
    }

    pub fn sub(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        self.zip_with(a, b, |x, y| self.tower.sub(x, y))
    }

    pub fn neg(&self, a: &SkewPoly) -> SkewPoly {
        SkewPoly { coeffs: a.coeffs.iter().map(|c| self.tower.neg(c)).collect() }
    }

    fn zip_with(&self, a: &SkewPoly, b: &SkewPoly, f: impl Fn(&FieldElement, &FieldElement) -> FieldElement) -> SkewPoly {
        let len = a.coeffs.len().max(b.coeffs.len());
        let coeffs = (0..len).map(|i| f(&a.coeff(self.tower, i), &b.coeff(self.tower, i))).collect();
        SkewPoly::from_coeffs(self.tower, coeffs)
    }

    /// `(a·b)_{i+j} += a_i·θ^i(b_j)`.
    pub fn mul(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        if a.is_zero() || b.is_zero() {
            return SkewPoly::zero();
        }
        let t = self.tower;
        let mut out = vec![t.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if t.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if t.is_zero(bj) {
                    continue;
                }
                out[i + j] = t.add(&out[i + j], &t.mul(ai, &t.apply_theta(bj, i)));
            }
        }
        SkewPoly::from_coeffs(t, out)
    }

    /// `f(g) = Σ f_i·θ^i(g)`.
    pub fn evaluate(&self, f: &SkewPoly, g: &FieldElement) -> FieldElement {
        let t = self.tower;
        f.coeffs.iter().enumerate().fold(t.zero(), |acc, (i, c)| {
            if t.is_zero(c) {
                acc
            } else {
                t.add(&acc, &t.mul(c, &t.apply_theta(g, i)))
            }
        })
    }

    /// Left division: returns `(q, r)` with `n = v·q + r` and
    /// `deg r < deg v`.
    pub fn left_divide(&self, n: &SkewPoly, v: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        let t = self.tower;
        let dv = v.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = t.inv(v.leading().expect("nonzero"))?;
        let mut rem = n.clone();
        let mut quot = vec![t.zero(); n.coeffs.len().saturating_sub(dv)];
        while let Some(dr) = rem.degree().filter(|&d| d >= dv) {
            // v_dv·θ^dv(c) must equal the leading coefficient of rem
            let shift = dr - dv;
            let twisted = t.mul(&lead_inv, rem.leading().expect("nonzero"));
            let c = t.apply_theta(&twisted, t.degree() - dv % t.degree());
            let term = SkewPoly::monomial(t, c.clone(), shift);
            let next = self.sub(&rem, &self.mul(v, &term));
            debug_assert!(next.degree().is_none_or(|d| d < dr));
            quot[shift] = c;
            rem = next;
        }
        Ok((SkewPoly::from_coeffs(t, quot), rem))
    }

    /// Monic minimal subspace polynomial of the `K`-span of `elements`:
    /// starting from `P = 1`, every element `u` with `w = P(u) ≠ 0` updates
    /// `P ← (x − θ(w)·w⁻¹)·P`.
    pub fn msp(&self, elements: &[FieldElement]) -> SkewPoly {
        let t = self.tower;
        let mut p = SkewPoly::one(t);
        for u in elements {
            let w = self.evaluate(&p, u);
            if t.is_zero(&w) {
                continue;
            }
            let c = t.mul(&t.apply_theta(&w, 1), &t.inv(&w).expect("nonzero"));
            let factor = SkewPoly::from_coeffs(t, vec![t.neg(&c), t.one()]);
            p = self.mul(&factor, &p);
        }
        p
    }
}
