#![allow(dead_code)]

use std::sync::Arc;

use gabrec_core::lrmr;
use gabrec_core::rank_metric::{self, Basis, ExtMatrix};
use gabrec_core::{Field, FieldElement, GabidulinCode, SkewPoly, Tower, TowerSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn towers() -> Vec<Tower> {
    vec![Tower::cyclotomic(5).unwrap(), Tower::kummer(4).unwrap()]
}

pub fn code(spec: TowerSpec, n: usize, k: usize) -> GabidulinCode {
    GabidulinCode::new(Arc::new(Tower::new(spec).unwrap()), n, k, None).unwrap()
}

pub fn random_vec(t: &Tower, rng: &mut ChaCha8Rng, n: usize, height: u32) -> Vec<FieldElement> {
    (0..n).map(|_| t.random_elem(rng, height)).collect()
}

pub fn random_poly(t: &Tower, rng: &mut ChaCha8Rng, max_deg: usize, height: u32) -> SkewPoly {
    let d = rng.random_range(0..=max_deg);
    SkewPoly::from_coeffs(t, (0..=d).map(|_| t.random_elem(rng, height)).collect())
}

/// Vector in `L^n` whose ext matrix has rank exactly `r` over K.
pub fn vector_of_rank(t: &Tower, rng: &mut ChaCha8Rng, n: usize, r: usize, height: u32) -> Vec<FieldElement> {
    let inst = lrmr::random_low_rank(t.base(), t.degree(), n, r, height, rng).unwrap();
    rank_metric::ext_inv(t, &ExtMatrix::new(t, inst.matrix, Basis::power(t)).unwrap()).unwrap()
}

pub fn add_vec(t: &Tower, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    a.iter().zip(b).map(|(x, y)| t.add(x, y)).collect()
}
