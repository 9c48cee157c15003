//! Low-rank matrix recovery through syndrome decoding.
//!
//! The unknown `X₀ ∈ K^{m×n}` is treated as a rank-metric error: the
//! measurement map sends it to the syndrome `H·ext⁻¹(X₀)ᵀ ∈ L^{n−k}`, written
//! out as `p = n·(n−k)` base-field scalars. Recovery decodes the syndrome and
//! is exact whenever `rank X₀ ≤ ⌊(n−k)/2⌋`.
//!
//! Pipelines require `n = m`, where the syndrome expansion
//! `Y = ext(ỹ)ᵀ ∈ K^{(n−k)×m}` has exactly `n·(n−k)` entries.
//!
//! Also provides the rational approximations used to move real or complex
//! data into `K`.

use num::complex::Complex64;
use num::{BigInt, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{CyclotomicElement, CyclotomicField, Tower};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::gabidulin::{CodeDescriptor, GabidulinCode};
use crate::linalg::{self, ExactMatrix};
use crate::rank_metric::{self, Basis, ExtMatrix};

/// How the `(n−k)×n` measurement matrix is flattened into `y`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum VectorOrder {
    #[default]
    #[serde(rename = "row-major")]
    RowMajor,
}

/// Output of [`measure`]: `p = n·(n−k)` scalars of `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurementRecord {
    pub code: CodeDescriptor,
    pub order: VectorOrder,
    pub y: Vec<CyclotomicElement>,
}

#[derive(Serialize, Deserialize)]
struct RecordFile {
    code: CodeDescriptor,
    order: VectorOrder,
    y: Vec<String>,
}

impl MeasurementRecord {
    /// Number of measurements `p`.
    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn to_json(&self, tower: &Tower) -> Result<String> {
        let file = RecordFile {
            code: self.code.clone(),
            order: self.order,
            y: self.y.iter().map(|v| tower.base().format_elem(v)).collect(),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    /// Parses a record and rebuilds the code it refers to.
    pub fn from_json(s: &str) -> Result<(GabidulinCode, MeasurementRecord)> {
        let file: RecordFile = serde_json::from_str(s)?;
        let code = GabidulinCode::from_descriptor(&file.code)?;
        let base = code.tower().base();
        let y = file.y.iter().map(|v| base.parse_elem(v)).collect::<Result<Vec<_>>>()?;
        Ok((code, MeasurementRecord { code: file.code, order: file.order, y }))
    }
}

fn check_pipeline_code(code: &GabidulinCode) -> Result<()> {
    let m = code.tower().degree();
    if code.n() != m {
        return Err(Error::DimensionMismatch(format!(
            "recovery pipelines need n = m; code has n = {}, m = {m}",
            code.n()
        )));
    }
    Ok(())
}

/// The linear measurement operator:
/// `X₀ ↦ x₀ = ext⁻¹(X₀) ↦ ỹ = H·x₀ᵀ ↦ Y = ext(ỹ)ᵀ ↦ y = vec(Y)`.
pub fn measure(code: &GabidulinCode, x0: &ExactMatrix<CyclotomicElement>) -> Result<MeasurementRecord> {
    check_pipeline_code(code)?;
    let tower = code.tower().as_ref();
    if x0.rows() != tower.degree() || x0.cols() != code.n() {
        return Err(Error::DimensionMismatch(format!(
            "expected a {}x{} matrix, got {}x{}",
            tower.degree(),
            code.n(),
            x0.rows(),
            x0.cols()
        )));
    }
    let x = rank_metric::ext_inv(tower, &ExtMatrix::new(tower, x0.clone(), Basis::power(tower))?)?;
    let syndrome = code.syndrome(&x)?;
    // Row j of Y = ext(ỹ)ᵀ is the coordinate vector of ỹ_j.
    let y_mat = rank_metric::ext(tower, &syndrome).into_matrix().transpose();
    Ok(MeasurementRecord { code: code.descriptor(), order: VectorOrder::RowMajor, y: y_mat.into_entries() })
}

/// Reconstructs `X₀` from its measurements by syndrome decoding.
pub fn recover(code: &GabidulinCode, record: &MeasurementRecord) -> Result<ExactMatrix<CyclotomicElement>> {
    check_pipeline_code(code)?;
    let tower = code.tower().as_ref();
    let expected = code.descriptor();
    if (&record.code.tower_kind, record.code.tower_param, record.code.n, record.code.k)
        != (&expected.tower_kind, expected.tower_param, expected.n, expected.k)
    {
        return Err(Error::DimensionMismatch("measurement record belongs to a different code".into()));
    }
    let m = tower.degree();
    let rows = code.n() - code.k();
    if record.y.len() != rows * m {
        return Err(Error::WrongLength { expected: rows * m, got: record.y.len() });
    }
    let syndrome = match record.order {
        VectorOrder::RowMajor => record
            .y
            .chunks(m)
            .map(|c| tower.from_coords(c.to_vec()))
            .collect::<Result<Vec<_>>>()?,
    };
    let error = code.syndrome_decode(&syndrome)?;
    Ok(rank_metric::ext(tower, &error).into_matrix())
}

/// A random matrix of known rank over `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowRankInstance {
    pub matrix: ExactMatrix<CyclotomicElement>,
    pub planted_rank: usize,
}

/// `X₀ = Σ_{j<r} u_j·v_jᵀ` with integer coordinates in `[−height, height]`,
/// resampled until its rank is exactly `r`.
pub fn random_low_rank<R: Rng + ?Sized>(
    field: &CyclotomicField,
    rows: usize,
    cols: usize,
    rank: usize,
    height: u32,
    rng: &mut R,
) -> Result<LowRankInstance> {
    if rank > rows.min(cols) {
        return Err(Error::InvalidInput(format!("rank {rank} is impossible for a {rows}x{cols} matrix")));
    }
    if height == 0 {
        return Err(Error::InvalidInput("height bound must be at least 1".into()));
    }
    loop {
        let mut x = ExactMatrix::zeros(field, rows, cols);
        for _ in 0..rank {
            let u: Vec<_> = (0..rows).map(|_| field.random_elem(rng, height)).collect();
            let v: Vec<_> = (0..cols).map(|_| field.random_elem(rng, height)).collect();
            x = ExactMatrix::from_fn(rows, cols, |i, j| field.add(x.get(i, j), &field.mul(&u[i], &v[j])));
        }
        if linalg::rank(field, &x) == rank {
            return Ok(LowRankInstance { matrix: x, planted_rank: rank });
        }
    }
}

/// An exact matrix together with its exact squared Frobenius distance to the
/// floating-point input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximation<E> {
    pub matrix: ExactMatrix<E>,
    pub frobenius_error_sq: Rational,
}

impl<E> Approximation<E> {
    pub fn frobenius_error(&self) -> f64 {
        self.frobenius_error_sq.to_f64().unwrap_or(f64::INFINITY).sqrt()
    }
}

/// First continued-fraction convergent `p/q` of `x` with `(x − p/q)² < tol_sq`.
///
/// The expansion is taken of the exact binary value of `x`, so it always
/// terminates.
pub fn rational_approximation(x: f64, tol_sq: &Rational) -> Result<Rational> {
    let exact = Rational::from_float(x).ok_or_else(|| Error::InvalidInput(format!("non-finite value {x}")))?;
    let (mut h1, mut h2) = (BigInt::from(1), BigInt::from(0));
    let (mut k1, mut k2) = (BigInt::from(0), BigInt::from(1));
    let mut rest = exact.clone();
    loop {
        let a = rest.floor().to_integer();
        let h = &a * &h1 + &h2;
        let k = &a * &k1 + &k2;
        let conv = Rational::new(h.clone(), k.clone());
        let diff = &conv - &exact;
        if &(&diff * &diff) < tol_sq {
            return Ok(conv);
        }
        let frac = &rest - Rational::from_integer(a);
        if frac.is_zero() {
            // conv == exact here, so only a non-positive tolerance gets here
            return Ok(conv);
        }
        rest = frac.recip();
        (h2, h1) = (h1, h);
        (k2, k1) = (k1, k);
    }
}

fn check_epsilon(eps: f64) -> Result<Rational> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidInput(format!("epsilon must be positive and finite, got {eps}")));
    }
    Ok(Rational::from_float(eps).expect("finite"))
}

fn check_shape<T>(x: &[Vec<T>]) -> Result<(usize, usize)> {
    let cols = x.first().map_or(0, Vec::len);
    if x.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch("rows have different lengths".into()));
    }
    Ok((x.len(), cols))
}

fn sq_diff(q: &Rational, x: f64) -> Rational {
    let d = q - Rational::from_float(x).expect("finite");
    &d * &d
}

/// Entrywise rational approximation with `‖X′ − X‖_F < ε`; each entry gets
/// the budget `ε/√(m·n)`.
pub fn approximate_real(x: &[Vec<f64>], eps: f64) -> Result<Approximation<Rational>> {
    let eps = check_epsilon(eps)?;
    let (rows, cols) = check_shape(x)?;
    if let Some(bad) = x.iter().flatten().find(|v| !v.is_finite()) {
        return Err(Error::InvalidInput(format!("non-finite entry {bad}")));
    }
    let cells = (rows * cols).max(1);
    let tol_sq = &eps * &eps / Rational::from_integer(BigInt::from(cells));
    let mut entries = Vec::with_capacity(rows * cols);
    let mut err = Rational::zero();
    for &v in x.iter().flatten() {
        let q = rational_approximation(v, &tol_sq)?;
        err += sq_diff(&q, v);
        entries.push(q);
    }
    Ok(Approximation { matrix: ExactMatrix::new(rows, cols, entries)?, frobenius_error_sq: err })
}

/// Approximates `a + bi` by `a′ + b′·ζ_n^{n/4}` in `K = ℚ(ζ_n)`; each real
/// part gets the budget `ε/√(2·m·n)`. Needs a Kummer tower (`4 | n`).
pub fn approximate_complex(x: &[Vec<Complex64>], eps: f64, tower: &Tower) -> Result<Approximation<CyclotomicElement>> {
    let eps = check_epsilon(eps)?;
    let base = tower.base();
    let i = base
        .imaginary_unit()
        .ok_or_else(|| Error::InvalidInput(format!("base field of {} does not contain i", tower.spec())))?;
    let (rows, cols) = check_shape(x)?;
    if let Some(bad) = x.iter().flatten().find(|v| !v.is_finite()) {
        return Err(Error::InvalidInput(format!("non-finite entry {bad}")));
    }
    let parts = (2 * rows * cols).max(1);
    let tol_sq = &eps * &eps / Rational::from_integer(BigInt::from(parts));
    let mut entries = Vec::with_capacity(rows * cols);
    let mut err = Rational::zero();
    for z in x.iter().flatten() {
        let re = rational_approximation(z.re, &tol_sq)?;
        let im = rational_approximation(z.im, &tol_sq)?;
        err += sq_diff(&re, z.re) + sq_diff(&im, z.im);
        entries.push(base.add(&base.from_rational(&re), &base.scale(&im, &i)));
    }
    Ok(Approximation { matrix: ExactMatrix::new(rows, cols, entries)?, frobenius_error_sq: err })
}

/// Largest numerator or denominator magnitude in a matrix; used to keep an
/// eye on coefficient growth.
pub fn max_height(m: &ExactMatrix<CyclotomicElement>) -> BigInt {
    m.entries()
        .iter()
        .flat_map(|e| e.coeffs())
        .map(|q| q.numer().abs().max(q.denom().clone()))
        .max()
        .unwrap_or_else(|| BigInt::from(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn code_5() -> GabidulinCode {
        GabidulinCode::new(Arc::new(Tower::cyclotomic(5).unwrap()), 4, 2, None).unwrap()
    }

    #[test]
    fn measure_zero_and_codewords() {
        let code = code_5();
        let t = code.tower();
        let k = t.base();
        let rec = measure(&code, &ExactMatrix::zeros(k, 4, 4)).unwrap();
        assert_eq!(rec.len(), 8);
        assert!(rec.y.iter().all(|v| k.is_zero(v)));
        assert_eq!(recover(&code, &rec).unwrap(), ExactMatrix::zeros(k, 4, 4));
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..5 {
            let c = code.encode(&code.random_message(&mut rng, 5)).unwrap();
            let rec = measure(&code, rank_metric::ext(t, &c).matrix()).unwrap();
            assert!(rec.y.iter().all(|v| k.is_zero(v)));
        }
    }

    #[test]
    fn rank_one_round_trip() {
        let code = code_5();
        let k = code.tower().base();
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..10 {
            let inst = random_low_rank(k, 4, 4, 1, 10, &mut rng).unwrap();
            let rec = measure(&code, &inst.matrix).unwrap();
            assert_eq!(recover(&code, &rec).unwrap(), inst.matrix);
        }
    }

    #[test]
    fn record_json_round_trip() {
        let code = GabidulinCode::new(Arc::new(Tower::kummer(4).unwrap()), 4, 2, None).unwrap();
        let k = code.tower().base();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let inst = random_low_rank(k, 4, 4, 1, 3, &mut rng).unwrap();
        let rec = measure(&code, &inst.matrix).unwrap();
        let json = rec.to_json(code.tower()).unwrap();
        assert!(json.contains("\"order\": \"row-major\""));
        let (code2, rec2) = MeasurementRecord::from_json(&json).unwrap();
        assert_eq!(rec2, rec);
        assert_eq!(recover(&code2, &rec2).unwrap(), inst.matrix);
    }

    #[test]
    fn shape_errors() {
        let code = code_5();
        let k = code.tower().base();
        assert!(measure(&code, &ExactMatrix::zeros(k, 4, 3)).is_err());
        let short = GabidulinCode::new(code.tower().clone(), 3, 1, None).unwrap();
        assert!(measure(&short, &ExactMatrix::zeros(k, 4, 3)).is_err());
        let mut rec = measure(&code, &ExactMatrix::zeros(k, 4, 4)).unwrap();
        rec.y.pop();
        assert!(recover(&code, &rec).is_err());
    }

    #[test]
    fn random_low_rank_ranks() {
        let k = CyclotomicField::rationals();
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let zero = random_low_rank(&k, 4, 4, 0, 10, &mut rng).unwrap();
        assert!(zero.matrix.is_zero(&k));
        for r in 1..=3 {
            let inst = random_low_rank(&k, 4, 4, r, 10, &mut rng).unwrap();
            assert_eq!(linalg::rank(&k, &inst.matrix), r);
        }
        assert!(random_low_rank(&k, 2, 3, 3, 10, &mut rng).is_err());
        assert!(random_low_rank(&k, 2, 3, 1, 0, &mut rng).is_err());
    }

    #[test]
    fn continued_fraction_examples() {
        let tol = |e: f64| {
            let q = Rational::from_float(e).unwrap();
            &q * &q
        };
        assert_eq!(rational_approximation(0.5, &tol(1e-3)).unwrap(), parse_rational("1/2").unwrap());
        let pi = rational_approximation(std::f64::consts::PI, &tol(1e-4)).unwrap();
        assert_eq!(pi, parse_rational("333/106").unwrap());
        assert_eq!(rational_approximation(-2.0, &tol(1e-9)).unwrap(), parse_rational("-2").unwrap());
        assert!(rational_approximation(f64::NAN, &tol(1e-3)).is_err());
    }

    #[test]
    fn approximation_bounds() {
        let x = vec![vec![0.5, -0.25], vec![std::f64::consts::PI, 1.0 / 3.0]];
        let a = approximate_real(&x, 1e-6).unwrap();
        assert_eq!(a.matrix.get(0, 0), &parse_rational("1/2").unwrap());
        assert!(a.frobenius_error() < 1e-6);
        assert!(approximate_real(&x, 0.0).is_err());
        assert!(approximate_real(&[vec![f64::INFINITY]], 1e-3).is_err());
        assert!(approximate_real(&[vec![1.0], vec![1.0, 2.0]], 1e-3).is_err());

        let t = Tower::kummer(4).unwrap();
        let z = vec![vec![Complex64::new(0.0, 1.0), Complex64::new(1.5, -0.5)]];
        let a = approximate_complex(&z, 1e-6, &t).unwrap();
        assert_eq!(a.matrix.get(0, 0), &t.base().imaginary_unit().unwrap());
        assert_eq!(t.base().format_elem(a.matrix.get(0, 1)), "(3/2,-1/2)");
        assert!(approximate_complex(&z, 1e-6, &Tower::cyclotomic(5).unwrap()).is_err());
    }
}
