//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use gabrec_core::lrmr::{self, LowRankInstance};
use gabrec_core::{Field, FieldElement, GabidulinCode, Tower, TowerSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn code(spec: TowerSpec, n: usize, k: usize) -> GabidulinCode {
    let tower = Arc::new(Tower::new(spec).expect("valid tower"));
    GabidulinCode::new(tower, n, k, None).expect("valid code")
}

/// A received word `c + e` with `e` of rank weight exactly `weight`.
pub fn noisy_word(code: &GabidulinCode, weight: usize, seed: u64) -> Vec<FieldElement> {
    let mut rng = rng(seed);
    let tower = code.tower();
    let c = code.encode(&code.random_message(&mut rng, 5)).expect("degree < k");
    let inst = lrmr::random_low_rank(tower.base(), tower.degree(), code.n(), weight, 5, &mut rng)
        .expect("feasible rank");
    let e = gabrec_core::rank_metric::ext_inv(
        tower,
        &gabrec_core::rank_metric::ExtMatrix::new(tower, inst.matrix, gabrec_core::rank_metric::Basis::power(tower))
            .expect("m rows"),
    )
    .expect("m rows");
    c.iter().zip(&e).map(|(a, b)| tower.add(a, b)).collect()
}

pub fn instance(code: &GabidulinCode, rank: usize, seed: u64) -> LowRankInstance {
    let tower = code.tower();
    lrmr::random_low_rank(tower.base(), tower.degree(), code.n(), rank, 10, &mut rng(seed)).expect("feasible rank")
}
