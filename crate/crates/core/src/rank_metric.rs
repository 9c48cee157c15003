//! The `ext` correspondence between `L^n` and `K^{m×n}`, and the four rank
//! weights on `L^n`.

use std::fmt;

use crate::algebra::{CyclotomicElement, FieldElement, Tower};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, ExactMatrix};
use crate::skew::SkewRing;

/// An ordered `K`-basis of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    elements: Vec<FieldElement>,
    /// Maps power-basis coordinates to coordinates in this basis; `None` for
    /// the power basis itself.
    from_power: Option<ExactMatrix<CyclotomicElement>>,
}

impl Basis {
    pub fn power(tower: &Tower) -> Self {
        Basis { elements: tower.basis(), from_power: None }
    }

    /// A caller-supplied ordering; fails unless the elements form a `K`-basis.
    pub fn new(tower: &Tower, elements: Vec<FieldElement>) -> Result<Self> {
        let m = tower.degree();
        if elements.len() != m {
            return Err(Error::WrongLength { expected: m, got: elements.len() });
        }
        let k = tower.base();
        let change = ExactMatrix::from_fn(m, m, |i, j| elements[j].coords()[i].clone());
        let mut inverse_cols = Vec::with_capacity(m);
        for j in 0..m {
            let unit: Vec<_> = (0..m).map(|i| if i == j { k.one() } else { k.zero() }).collect();
            let col = linalg::solve(k, &change, &unit)?
                .ok_or_else(|| Error::InvalidInput("basis elements are K-linearly dependent".into()))?;
            inverse_cols.push(col);
        }
        let inverse = ExactMatrix::from_fn(m, m, |i, j| inverse_cols[j][i].clone());
        Ok(Basis { elements, from_power: Some(inverse) })
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn is_power_basis(&self) -> bool {
        self.from_power.is_none()
    }

    fn coords_of(&self, tower: &Tower, x: &FieldElement) -> Vec<CyclotomicElement> {
        match &self.from_power {
            None => x.coords().to_vec(),
            Some(inv) => inv.mul_vec(tower.base(), x.coords()).expect("square change of basis"),
        }
    }

    fn combine(&self, tower: &Tower, coords: &[CyclotomicElement]) -> FieldElement {
        coords
            .iter()
            .zip(&self.elements)
            .fold(tower.zero(), |acc, (c, b)| tower.add(&acc, &tower.scale(c, b)))
    }
}

/// `m×n` matrix over `K` whose column `j` is the coordinate vector of `x_j`,
/// so that `x = β·X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtMatrix {
    matrix: ExactMatrix<CyclotomicElement>,
    basis: Basis,
}

impl ExtMatrix {
    pub fn new(tower: &Tower, matrix: ExactMatrix<CyclotomicElement>, basis: Basis) -> Result<Self> {
        if matrix.rows() != tower.degree() {
            return Err(Error::DimensionMismatch(format!(
                "ext matrix needs {} rows, got {}",
                tower.degree(),
                matrix.rows()
            )));
        }
        Ok(ExtMatrix { matrix, basis })
    }

    pub fn matrix(&self) -> &ExactMatrix<CyclotomicElement> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ExactMatrix<CyclotomicElement> {
        self.matrix
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }
}

/// `ext` with respect to the power basis.
pub fn ext(tower: &Tower, x: &[FieldElement]) -> ExtMatrix {
    ext_with(tower, x, &Basis::power(tower))
}

pub fn ext_with(tower: &Tower, x: &[FieldElement], basis: &Basis) -> ExtMatrix {
    let cols: Vec<Vec<CyclotomicElement>> = x.iter().map(|xi| basis.coords_of(tower, xi)).collect();
    let matrix = ExactMatrix::from_fn(tower.degree(), x.len(), |i, j| cols[j][i].clone());
    ExtMatrix { matrix, basis: basis.clone() }
}

/// Inverse of [`ext`]: `x_j = Σ_i X_{ij}·β_i`.
pub fn ext_inv(tower: &Tower, x: &ExtMatrix) -> Result<Vec<FieldElement>> {
    if x.matrix.rows() != tower.degree() {
        return Err(Error::DimensionMismatch(format!(
            "ext matrix needs {} rows, got {}",
            tower.degree(),
            x.matrix.rows()
        )));
    }
    Ok((0..x.matrix.cols()).map(|j| x.basis.combine(tower, &x.matrix.column(j))).collect())
}

/// The `s×n` matrix with entry `(j, i) = θ^j(x_i)`.
pub fn theta_matrix(tower: &Tower, x: &[FieldElement], s: usize) -> ExactMatrix<FieldElement> {
    ExactMatrix::from_fn(s, x.len(), |j, i| tower.apply_theta(&x[i], j))
}

/// Which rank weight to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightKind {
    /// Degree of the minimal subspace polynomial of the entries.
    A,
    /// Rank over `L` of the θ-matrix with `m` rows.
    ThetaL,
    /// Rank over `K` of the θ-matrix with `m` rows, after expanding every
    /// entry into its `K`-coordinates.
    ThetaK,
    /// Rank over `K` of `ext(x)`.
    B,
}

impl WeightKind {
    pub const ALL: [WeightKind; 4] = [WeightKind::A, WeightKind::ThetaL, WeightKind::ThetaK, WeightKind::B];
}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightKind::A => "A",
            WeightKind::ThetaL => "thetaL",
            WeightKind::ThetaK => "thetaK",
            WeightKind::B => "B",
        })
    }
}

pub fn rank_weight(tower: &Tower, x: &[FieldElement], kind: WeightKind) -> usize {
    let m = tower.degree();
    match kind {
        WeightKind::A => SkewRing::new(tower).msp(x).degree().expect("msp is monic"),
        WeightKind::ThetaL => linalg::rank(tower, &theta_matrix(tower, x, m)),
        WeightKind::ThetaK => {
            let theta = theta_matrix(tower, x, m);
            let stacked = ExactMatrix::from_fn(m * m, x.len(), |r, i| theta.get(r / m, i).coords()[r % m].clone());
            linalg::rank(tower.base(), &stacked)
        }
        WeightKind::B => linalg::rank(tower.base(), ext(tower, x).matrix()),
    }
}

/// `rank_weight(x − y, kind)`.
pub fn rank_distance(tower: &Tower, x: &[FieldElement], y: &[FieldElement], kind: WeightKind) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::WrongLength { expected: x.len(), got: y.len() });
    }
    let diff: Vec<_> = x.iter().zip(y).map(|(a, b)| tower.sub(a, b)).collect();
    Ok(rank_weight(tower, &diff, kind))
}

/// All four weights of one vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Weights {
    pub a: usize,
    pub theta_l: usize,
    pub theta_k: usize,
    pub b: usize,
}

impl Weights {
    pub fn of(tower: &Tower, x: &[FieldElement]) -> Self {
        Weights {
            a: rank_weight(tower, x, WeightKind::A),
            theta_l: rank_weight(tower, x, WeightKind::ThetaL),
            theta_k: rank_weight(tower, x, WeightKind::ThetaK),
            b: rank_weight(tower, x, WeightKind::B),
        }
    }

    /// `A = thetaL ≤ thetaK = B`.
    pub fn chain_holds(&self) -> bool {
        self.a == self.theta_l && self.theta_l <= self.theta_k && self.theta_k == self.b
    }

    pub fn get(&self, kind: WeightKind) -> usize {
        match kind {
            WeightKind::A => self.a,
            WeightKind::ThetaL => self.theta_l,
            WeightKind::ThetaK => self.theta_k,
            WeightKind::B => self.b,
        }
    }
}
