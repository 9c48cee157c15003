//! Gabidulin codes over a cyclic extension `L/K`: construction, encoding,
//! interpolation (Welch–Berlekamp style) decoding and syndrome decoding.
//!
//! A code of length `n` and dimension `k` evaluates θ-polynomials of degree
//! `< k` at `n` points `g_1, …, g_n ∈ L` that are linearly independent over
//! `K`. Its minimum rank distance is `n − k + 1`, so errors of rank weight up
//! to `t = ⌊(n − k)/2⌋` are uniquely decodable.
//!
//! The decoder solves one homogeneous linear system over `L` for a pair
//! `(V, N)` with `deg V ≤ t`, `deg N ≤ k − 1 + t` and `V(r_i) = N(g_i)`, then
//! recovers the message as the left quotient `N = V·f`. It costs `O(n³)`
//! field operations.

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{FieldElement, Tower, TowerSpec};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, ExactMatrix};
use crate::rank_metric::{self, WeightKind};
use crate::skew::{SkewPoly, SkewRing};

/// Why a received word could not be decoded within the radius.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DecodeFailure {
    #[error("received word has length {got}, code length is {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("syndrome has no preimage")]
    InconsistentSyndrome,
    #[error("interpolation system has only the trivial solution")]
    NoInterpolant,
    #[error("interpolation polynomial is not left-divisible by the error locator")]
    NotDivisible,
    #[error("recovered message has degree {0}, at least the code dimension")]
    DegreeTooLarge(usize),
    #[error("candidate error has rank weight {weight} above the radius {radius}")]
    WeightAboveRadius { weight: usize, radius: usize },
}

/// Successful decoding: `received = codeword + error` and
/// `codeword_i = message(g_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub codeword: Vec<FieldElement>,
    pub error: Vec<FieldElement>,
    pub message: SkewPoly,
}

/// Serializable description of a code; the generator and parity-check
/// matrices are recomputed on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CodeDescriptor {
    pub tower_kind: String,
    pub tower_param: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radicand: Option<i64>,
    pub n: usize,
    pub k: usize,
    /// Evaluation points in element text format; the first `n` basis
    /// elements when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<String>>,
}

impl CodeDescriptor {
    pub fn tower_spec(&self) -> Result<TowerSpec> {
        TowerSpec::from_parts(&self.tower_kind, self.tower_param, self.radicand)
    }
}

#[derive(Clone, Debug)]
pub struct GabidulinCode {
    tower: Arc<Tower>,
    n: usize,
    k: usize,
    points: Vec<FieldElement>,
    generator: ExactMatrix<FieldElement>,
    parity_check: ExactMatrix<FieldElement>,
}

impl GabidulinCode {
    /// Builds the code; `points` defaults to the first `n` power-basis
    /// elements.
    pub fn new(tower: Arc<Tower>, n: usize, k: usize, points: Option<Vec<FieldElement>>) -> Result<Self> {
        let m = tower.degree();
        if k == 0 || k > n {
            return Err(Error::InvalidCode(format!("need 1 ≤ k ≤ n, got k = {k}, n = {n}")));
        }
        if n > m {
            return Err(Error::InvalidCode(format!("length {n} exceeds the extension degree {m}")));
        }
        let points = match points {
            Some(p) if p.len() != n => return Err(Error::WrongLength { expected: n, got: p.len() }),
            Some(p) => p,
            None => (0..n).map(|j| tower.basis_element(j)).collect(),
        };
        if linalg::rank(tower.base(), rank_metric::ext(&tower, &points).matrix()) != n {
            return Err(Error::InvalidCode("evaluation points are linearly dependent over K".into()));
        }
        let generator = rank_metric::theta_matrix(&tower, &points, k);
        let parity_check = linalg::right_kernel(tower.as_ref(), &generator);
        if parity_check.rows() != n - k {
            return Err(Error::InvalidCode("generator matrix is rank deficient".into()));
        }
        Ok(GabidulinCode { tower, n, k, points, generator, parity_check })
    }

    pub fn from_descriptor(d: &CodeDescriptor) -> Result<Self> {
        let tower = Arc::new(Tower::new(d.tower_spec()?)?);
        let points = d
            .g
            .as_ref()
            .map(|g| g.iter().map(|s| tower.parse_elem(s)).collect::<Result<Vec<_>>>())
            .transpose()?;
        Self::new(tower, d.n, d.k, points)
    }

    pub fn descriptor(&self) -> CodeDescriptor {
        let spec = self.tower.spec();
        CodeDescriptor {
            tower_kind: spec.kind_name().to_string(),
            tower_param: spec.param(),
            radicand: spec.radicand(),
            n: self.n,
            k: self.k,
            g: Some(self.points.iter().map(|p| self.tower.format_elem(p)).collect()),
        }
    }

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `t = ⌊(n − k)/2⌋`.
    pub fn radius(&self) -> usize {
        (self.n - self.k) / 2
    }

    /// `d = n − k + 1`.
    pub fn design_distance(&self) -> usize {
        self.n - self.k + 1
    }

    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    /// `k×n` θ-Moore matrix, `G_{ij} = θ^i(g_j)`.
    pub fn generator(&self) -> &ExactMatrix<FieldElement> {
        &self.generator
    }

    /// `(n−k)×n` matrix with `G·Hᵀ = 0`.
    pub fn parity_check(&self) -> &ExactMatrix<FieldElement> {
        &self.parity_check
    }

    pub fn encode(&self, f: &SkewPoly) -> Result<Vec<FieldElement>> {
        if let Some(d) = f.degree().filter(|&d| d >= self.k) {
            return Err(Error::DegreeTooLarge { degree: d, bound: self.k - 1 });
        }
        let ring = SkewRing::new(&self.tower);
        Ok(self.points.iter().map(|g| ring.evaluate(f, g)).collect())
    }

    /// `H·xᵀ`.
    pub fn syndrome(&self, x: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.parity_check.mul_vec(self.tower.as_ref(), x)
    }

    pub fn is_codeword(&self, x: &[FieldElement]) -> bool {
        self.syndrome(x).is_ok_and(|s| s.iter().all(|e| self.tower.is_zero(e)))
    }

    /// Random message polynomial of degree `< k`.
    pub fn random_message<R: Rng + ?Sized>(&self, rng: &mut R, height: u32) -> SkewPoly {
        SkewPoly::from_coeffs(&self.tower, (0..self.k).map(|_| self.tower.random_elem(rng, height)).collect())
    }

    /// Interpolation decoding of a received word.
    pub fn decode(&self, received: &[FieldElement]) -> Result<Decoded, DecodeFailure> {
        if received.len() != self.n {
            return Err(DecodeFailure::WrongLength { expected: self.n, got: received.len() });
        }
        let tower = self.tower.as_ref();
        let ring = SkewRing::new(tower);
        let t = self.radius();
        let v_len = t + 1;
        let n_len = self.k + t;
        // Row i: V(r_i) − N(g_i) = 0 in the unknown coefficients of V and N.
        let system = ExactMatrix::from_fn(self.n, v_len + n_len, |i, j| {
            if j < v_len {
                tower.apply_theta(&received[i], j)
            } else {
                tower.neg(&tower.apply_theta(&self.points[i], j - v_len))
            }
        });
        let kernel = linalg::right_kernel(tower, &system);
        if kernel.rows() == 0 {
            return Err(DecodeFailure::NoInterpolant);
        }
        let sol = kernel.row(0);
        let v = SkewPoly::from_coeffs(tower, sol[..v_len].to_vec());
        let n_poly = SkewPoly::from_coeffs(tower, sol[v_len..].to_vec());
        if v.is_zero() {
            return Err(DecodeFailure::NoInterpolant);
        }
        let (message, rem) = ring.left_divide(&n_poly, &v).expect("V is nonzero");
        if !rem.is_zero() {
            return Err(DecodeFailure::NotDivisible);
        }
        if let Some(d) = message.degree().filter(|&d| d >= self.k) {
            return Err(DecodeFailure::DegreeTooLarge(d));
        }
        let codeword = self.encode(&message).expect("degree checked");
        let error: Vec<_> = received.iter().zip(&codeword).map(|(r, c)| tower.sub(r, c)).collect();
        let weight = rank_metric::rank_weight(tower, &error, WeightKind::B);
        if weight > t {
            return Err(DecodeFailure::WeightAboveRadius { weight, radius: t });
        }
        Ok(Decoded { codeword, error, message })
    }

    /// Finds the error of weight `≤ t` whose syndrome is `s`.
    pub fn syndrome_decode(&self, syndrome: &[FieldElement]) -> Result<Vec<FieldElement>, DecodeFailure> {
        if syndrome.len() != self.n - self.k {
            return Err(DecodeFailure::WrongLength { expected: self.n - self.k, got: syndrome.len() });
        }
        let preimage = linalg::solve(self.tower.as_ref(), &self.parity_check, syndrome)
            .expect("dimensions checked")
            .ok_or(DecodeFailure::InconsistentSyndrome)?;
        Ok(self.decode(&preimage)?.error)
    }
}
