use criterion::{criterion_group, criterion_main, Criterion};

use gabrec_bench::{code, instance, noisy_word};
use gabrec_core::{lrmr, TowerSpec};

fn decode(c: &mut Criterion) {
    let small = code(TowerSpec::Cyclotomic { p: 5 }, 4, 2);
    let word = noisy_word(&small, 1, 1);
    c.bench_function("decode cyclotomic:5 (4,2)", |b| b.iter(|| small.decode(&word).unwrap()));

    let kummer = code(TowerSpec::kummer(4), 4, 2);
    let word = noisy_word(&kummer, 1, 2);
    c.bench_function("decode kummer:4 (4,2)", |b| b.iter(|| kummer.decode(&word).unwrap()));

    let large = code(TowerSpec::Cyclotomic { p: 17 }, 8, 4);
    let word = noisy_word(&large, 2, 3);
    let mut group = c.benchmark_group("large");
    group.sample_size(10);
    group.bench_function("decode cyclotomic:17 (8,4)", |b| b.iter(|| large.decode(&word).unwrap()));
    group.finish();
}

fn pipeline(c: &mut Criterion) {
    let code = code(TowerSpec::Cyclotomic { p: 5 }, 4, 2);
    let inst = instance(&code, 1, 4);
    c.bench_function("measure+recover cyclotomic:5 rank 1", |b| {
        b.iter(|| {
            let rec = lrmr::measure(&code, &inst.matrix).unwrap();
            lrmr::recover(&code, &rec).unwrap()
        })
    });
}

criterion_group!(benches, decode, pipeline);
criterion_main!(benches);
