//! Acceptance suite. Each criterion prints one `PASS`/`FAIL` line; run with
//! `cargo test -p gabrec-core --test acceptance -- --nocapture` to see them.

mod common;

use std::time::{Duration, Instant};

use gabrec_core::linalg::{self, ExactMatrix};
use gabrec_core::lrmr::{self, approximate_complex, approximate_real};
use gabrec_core::rank_metric::{self, WeightKind, Weights};
use gabrec_core::{Field, GabidulinCode, Rational, SkewPoly, SkewRing, Tower, TowerSpec};
use num::complex::Complex64;
use num::Zero;
use rand::Rng;

use common::*;

const HEIGHT: u32 = 10;

fn report(id: u32, title: &str, pass: bool, detail: String) {
    println!("{} criterion {id}: {title} ({detail})", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {id} failed: {detail}");
}

/// Measures and recovers `trials` random instances of rank `rank`; returns
/// the number of exact recoveries and the elapsed time.
fn round_trips(code: &GabidulinCode, rank: usize, trials: usize, seed: u64) -> (usize, Duration) {
    let tower = code.tower();
    let mut r = rng(seed);
    let instances: Vec<_> = (0..trials)
        .map(|_| lrmr::random_low_rank(tower.base(), tower.degree(), code.n(), rank, HEIGHT, &mut r).unwrap())
        .collect();
    let start = Instant::now();
    let exact = instances
        .iter()
        .filter(|inst| {
            let rec = lrmr::measure(code, &inst.matrix).unwrap();
            assert_eq!(rec.len(), code.n() * (code.n() - code.k()));
            matches!(lrmr::recover(code, &rec), Ok(x) if x == inst.matrix)
        })
        .count();
    (exact, start.elapsed())
}

#[test]
fn criterion_1_round_trip_real() {
    let code = code(TowerSpec::Cyclotomic { p: 5 }, 4, 2);
    assert_eq!((code.tower().degree(), code.radius()), (4, 1));
    let (exact, elapsed) = round_trips(&code, 1, 100, 1);
    report(
        1,
        "rank-1 round trip over Q(zeta_5)/Q, (n,k)=(4,2), p=8",
        exact == 100 && elapsed < Duration::from_secs(10),
        format!("{exact}/100 exact in {elapsed:.2?}, limit 10s"),
    );
}

#[test]
fn criterion_2_round_trip_complex() {
    let code = code(TowerSpec::kummer(4), 4, 2);
    assert_eq!(code.tower().base().conductor(), 4);
    let (exact, elapsed) = round_trips(&code, 1, 100, 2);
    report(
        2,
        "rank-1 round trip over Q(i)(2^(1/4))/Q(i), (n,k)=(4,2)",
        exact == 100 && elapsed < Duration::from_secs(60),
        format!("{exact}/100 exact in {elapsed:.2?}, limit 60s"),
    );
}

#[test]
fn criterion_3_radius_sharpness() {
    let mut failures = 0;
    let mut valid_alternatives = 0;
    let mut violations = 0;
    for (spec, seed) in [(TowerSpec::Cyclotomic { p: 5 }, 3), (TowerSpec::kummer(4), 33)] {
        let code = code(spec, 4, 2);
        let tower = code.tower();
        let k = tower.base();
        let mut r = rng(seed);
        for _ in 0..100 {
            let inst = lrmr::random_low_rank(k, 4, 4, 2, HEIGHT, &mut r).unwrap();
            let rec = lrmr::measure(&code, &inst.matrix).unwrap();
            match lrmr::recover(&code, &rec) {
                Err(_) => failures += 1,
                Ok(x) => {
                    let consistent = lrmr::measure(&code, &x).unwrap().y == rec.y;
                    if consistent && linalg::rank(k, &x) <= code.radius() {
                        valid_alternatives += 1;
                    } else {
                        violations += 1;
                    }
                }
            }
        }
    }
    report(
        3,
        "rank-2 instances never yield a silently wrong success",
        violations == 0,
        format!("200 trials: {failures} reported failures, {valid_alternatives} valid alternatives, {violations} violations"),
    );
}

#[test]
fn criterion_4_weight_chain() {
    let mut checked = 0;
    let mut violations = 0;
    let mut seen = std::collections::BTreeSet::new();
    for (i, tower) in towers().into_iter().enumerate() {
        let mut r = rng(40 + i as u64);
        for trial in 0..200 {
            let n = 4;
            let x = if trial % 2 == 0 {
                let rank = r.random_range(0..=n);
                vector_of_rank(&tower, &mut r, n, rank, HEIGHT)
            } else {
                random_vec(&tower, &mut r, n, 1)
            };
            let w = Weights::of(&tower, &x);
            seen.insert(w.b);
            checked += 1;
            if !w.chain_holds() {
                violations += 1;
            }
        }
    }
    report(
        4,
        "weight chain A = thetaL <= thetaK = B",
        violations == 0 && checked == 400,
        format!("{checked} vectors over 2 towers, {violations} violations, B-weights seen {seen:?}"),
    );
}

#[test]
fn criterion_5_design_distance() {
    let codes = [
        code(TowerSpec::Cyclotomic { p: 5 }, 4, 2),
        code(TowerSpec::kummer(4), 4, 2),
        code(TowerSpec::Cyclotomic { p: 17 }, 8, 4),
    ];
    let mut details = Vec::new();
    let mut pass = true;
    for (i, code) in codes.iter().enumerate() {
        let tower = code.tower();
        let mut r = rng(50 + i as u64);
        let mut min_weight = usize::MAX;
        let mut count = 0;
        while count < 100 {
            let f = code.random_message(&mut r, HEIGHT);
            if f.is_zero() {
                continue;
            }
            let c = code.encode(&f).unwrap();
            min_weight = min_weight.min(rank_metric::rank_weight(tower, &c, WeightKind::B));
            count += 1;
        }
        pass &= min_weight >= code.design_distance();
        details.push(format!("{} ({},{}): min {min_weight} >= {}", tower.spec(), code.n(), code.k(), code.design_distance()));
    }
    report(5, "random nonzero codewords reach the design distance", pass, details.join("; "));
}

const CASES: usize = 1000;

fn field_axiom_violations(t: &Tower, r: &mut rand_chacha::ChaCha8Rng) -> usize {
    let mut bad = 0;
    for _ in 0..CASES {
        let (a, b, c) = (t.random_elem(r, HEIGHT), t.random_elem(r, HEIGHT), t.random_elem(r, HEIGHT));
        let ok = t.add(&t.add(&a, &b), &c) == t.add(&a, &t.add(&b, &c))
            && t.mul(&t.mul(&a, &b), &c) == t.mul(&a, &t.mul(&b, &c))
            && t.add(&a, &b) == t.add(&b, &a)
            && t.mul(&a, &b) == t.mul(&b, &a)
            && t.mul(&a, &t.add(&b, &c)) == t.add(&t.mul(&a, &b), &t.mul(&a, &c))
            && t.is_zero(&t.add(&a, &t.neg(&a)))
            && t.mul(&a, &t.one()) == a
            && (t.is_zero(&a) || t.is_one(&t.mul(&a, &t.inv(&a).unwrap())));
        bad += usize::from(!ok);
    }
    bad
}

fn theta_violations(t: &Tower, r: &mut rand_chacha::ChaCha8Rng) -> usize {
    let m = t.degree();
    let gen = t.generator();
    let mut bad = (1..m).filter(|&j| t.apply_theta(&gen, j) == gen).count();
    bad += usize::from(t.apply_theta(&gen, m) != gen);
    for _ in 0..CASES {
        let (a, b) = (t.random_elem(r, HEIGHT), t.random_elem(r, HEIGHT));
        let k = t.embed(&t.base().random_elem(r, HEIGHT));
        let ok = t.apply_theta(&t.mul(&a, &b), 1) == t.mul(&t.apply_theta(&a, 1), &t.apply_theta(&b, 1))
            && t.apply_theta(&t.add(&a, &b), 1) == t.add(&t.apply_theta(&a, 1), &t.apply_theta(&b, 1))
            && t.apply_theta(&k, 1) == k
            && t.apply_theta(&a, m) == a;
        bad += usize::from(!ok);
    }
    bad
}

fn skew_ring_violations(t: &Tower, r: &mut rand_chacha::ChaCha8Rng) -> usize {
    let ring = SkewRing::new(t);
    let mut bad = 0;
    for _ in 0..CASES {
        let a = random_poly(t, r, 4, 3);
        let b = random_poly(t, r, 4, 3);
        let c = random_poly(t, r, 4, 3);
        let ok = ring.mul(&ring.mul(&a, &b), &c) == ring.mul(&a, &ring.mul(&b, &c))
            && ring.mul(&a, &ring.add(&b, &c)) == ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c))
            && ring.mul(&ring.add(&a, &b), &c) == ring.add(&ring.mul(&a, &c), &ring.mul(&b, &c));
        bad += usize::from(!ok);
    }
    bad
}

fn division_violations(t: &Tower, r: &mut rand_chacha::ChaCha8Rng) -> usize {
    let ring = SkewRing::new(t);
    let mut bad = 0;
    let mut done = 0;
    while done < CASES {
        let n = random_poly(t, r, 6, 3);
        let v = random_poly(t, r, 4, 3);
        if v.is_zero() {
            continue;
        }
        done += 1;
        let (q, rem) = ring.left_divide(&n, &v).unwrap();
        let ok = ring.add(&ring.mul(&v, &q), &rem) == n && rem.degree().is_none_or(|d| d < v.degree().unwrap());
        bad += usize::from(!ok);
    }
    bad
}

fn msp_violations(t: &Tower, r: &mut rand_chacha::ChaCha8Rng) -> usize {
    let ring = SkewRing::new(t);
    let k = t.base();
    let mut bad = 0;
    for _ in 0..CASES {
        // A few free elements plus K-combinations of them, so spans vary in dimension.
        let free = r.random_range(0..=t.degree());
        let mut elems = random_vec(t, r, free, 3);
        for _ in 0..r.random_range(0..=2) {
            let combo = elems.iter().fold(t.zero(), |acc, e| t.add(&acc, &t.scale(&k.random_elem(r, 3), e)));
            elems.push(combo);
        }
        if r.random_bool(0.2) {
            elems.push(t.zero());
        }
        let p = ring.msp(&elems);
        let coords = ExactMatrix::from_fn(t.degree(), elems.len(), |i, j| elems[j].coords()[i].clone());
        let probe = elems.iter().fold(t.zero(), |acc, e| t.add(&acc, &t.scale(&k.random_elem(r, 5), e)));
        let ok = p.is_monic(t)
            && p.degree() == Some(linalg::rank(k, &coords))
            && t.is_zero(&ring.evaluate(&p, &probe))
            && elems.iter().all(|e| t.is_zero(&ring.evaluate(&p, e)));
        bad += usize::from(!ok);
    }
    bad
}

#[test]
fn criterion_6_algebra_suites() {
    type Suite = fn(&Tower, &mut rand_chacha::ChaCha8Rng) -> usize;
    let suites: [(&str, Suite); 5] = [
        ("field axioms", field_axiom_violations),
        ("theta automorphism/order", theta_violations),
        ("skew ring axioms", skew_ring_violations),
        ("division identity", division_violations),
        ("msp degree = span dimension", msp_violations),
    ];
    let mut total = 0;
    let mut details = Vec::new();
    for (si, (name, suite)) in suites.iter().enumerate() {
        let mut bad = 0;
        for (ti, t) in towers().iter().enumerate() {
            bad += suite(t, &mut rng(600 + 10 * si as u64 + ti as u64));
        }
        total += bad;
        details.push(format!("{name}: {bad}"));
    }
    report(
        6,
        "algebra suites, 1000 cases per suite and tower",
        total == 0,
        format!("violations: {}", details.join(", ")),
    );
}

#[test]
fn criterion_7_measurement_contract() {
    let mut bad = 0;
    let mut trials = 0;
    for (i, spec) in [TowerSpec::Cyclotomic { p: 5 }, TowerSpec::kummer(4)].into_iter().enumerate() {
        let code = code(spec, 4, 2);
        let tower = code.tower();
        let k = tower.base();
        let mut r = rng(70 + i as u64);
        let p = code.n() * (code.n() - code.k());
        for _ in 0..100 {
            let x = ExactMatrix::from_fn(4, 4, |_, _| k.random_elem(&mut r, HEIGHT));
            let y = ExactMatrix::from_fn(4, 4, |_, _| k.random_elem(&mut r, HEIGHT));
            let a = k.random_elem(&mut r, HEIGHT);
            let combo = ExactMatrix::from_fn(4, 4, |i, j| k.add(&k.mul(&a, x.get(i, j)), y.get(i, j)));
            let (mx, my, mc) = (
                lrmr::measure(&code, &x).unwrap(),
                lrmr::measure(&code, &y).unwrap(),
                lrmr::measure(&code, &combo).unwrap(),
            );
            let expected: Vec<_> = mx.y.iter().zip(&my.y).map(|(u, v)| k.add(&k.mul(&a, u), v)).collect();
            let codeword = code.encode(&code.random_message(&mut r, HEIGHT)).unwrap();
            let mz = lrmr::measure(&code, rank_metric::ext(tower, &codeword).matrix()).unwrap();
            let ok = mc.y == expected
                && [&mx, &my, &mc, &mz].iter().all(|m| m.len() == p)
                && mz.y.iter().all(|v| k.is_zero(v));
            bad += usize::from(!ok);
            trials += 1;
        }
    }
    report(
        7,
        "measure is K-linear, has p = n(n-k) outputs and kills codewords",
        bad == 0,
        format!("{trials} trials over 2 towers, {bad} violations"),
    );
}

fn exact(x: f64) -> Rational {
    Rational::from_float(x).unwrap()
}

#[test]
fn criterion_8_approximation() {
    let eps = 1e-6;
    let eps_sq = exact(eps) * exact(eps);
    let mut r = rng(80);
    let mut worst = 0f64;
    let mut bad = 0;
    for _ in 0..100 {
        let x: Vec<Vec<f64>> = (0..4).map(|_| (0..4).map(|_| r.random_range(-10.0..10.0)).collect()).collect();
        let a = approximate_real(&x, eps).unwrap();
        // Independent exact recomputation of the squared Frobenius error.
        let err = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .fold(Rational::zero(), |acc, (i, j)| {
                let d = a.matrix.get(i, j) - exact(x[i][j]);
                acc + &d * &d
            });
        worst = worst.max(err.clone().to_f64_lossy().sqrt());
        bad += usize::from(err >= eps_sq);
    }
    let tower = Tower::kummer(4).unwrap();
    let k = tower.base();
    for _ in 0..100 {
        let z: Vec<Vec<Complex64>> = (0..3)
            .map(|_| (0..3).map(|_| Complex64::new(r.random_range(-10.0..10.0), r.random_range(-10.0..10.0))).collect())
            .collect();
        let a = approximate_complex(&z, eps, &tower).unwrap();
        let mut err = Rational::zero();
        for i in 0..3 {
            for j in 0..3 {
                // K = Q(i) with power basis (1, i): coordinates are (re, im).
                let c = a.matrix.get(i, j).coeffs();
                assert_eq!(k.degree(), 2);
                let dr = &c[0] - exact(z[i][j].re);
                let di = &c[1] - exact(z[i][j].im);
                err += &dr * &dr + &di * &di;
            }
        }
        worst = worst.max(err.clone().to_f64_lossy().sqrt());
        bad += usize::from(err >= eps_sq);
    }
    report(
        8,
        "Frobenius error below epsilon = 1e-6 (real 4x4, complex 3x3)",
        bad == 0,
        format!("200 trials, {bad} violations, worst error {worst:.3e}"),
    );
}

trait ToF64Lossy {
    fn to_f64_lossy(self) -> f64;
}

impl ToF64Lossy for Rational {
    fn to_f64_lossy(self) -> f64 {
        num::ToPrimitive::to_f64(&self).unwrap_or(f64::INFINITY)
    }
}

#[test]
fn criterion_9_scale_check() {
    let code = code(TowerSpec::Cyclotomic { p: 17 }, 8, 4);
    assert_eq!((code.tower().degree(), code.radius()), (16, 2));
    let tower = code.tower();
    let mut r = rng(90);
    let f = code.random_message(&mut r, HEIGHT);
    let c = code.encode(&f).unwrap();
    let e = vector_of_rank(tower, &mut r, 8, 2, HEIGHT);
    let received = add_vec(tower, &c, &e);
    let start = Instant::now();
    let decoded = code.decode(&received);
    let elapsed = start.elapsed();
    let recovered = matches!(&decoded, Ok(d) if d.error == e && d.message == f);
    report(
        9,
        "one rank-2 decode at n=8, k=4 over Q(zeta_17)",
        recovered && elapsed < Duration::from_secs(60),
        format!("recovered={recovered} in {elapsed:.2?}, limit 60s"),
    );
}

#[test]
fn zero_polynomial_encodes_to_zero() {
    let code = code(TowerSpec::kummer(4), 4, 2);
    let t = code.tower();
    assert!(code.encode(&SkewPoly::zero()).unwrap().iter().all(|x| t.is_zero(x)));
}
