use criterion::{black_box, criterion_group, criterion_main, Criterion};
use modalid_core::evolution::sort_fitness;
use modalid_core::{run, synth_target, CoefficientSet, EAConfig, FitnessPair, SynthOptions};

fn sort(c: &mut Criterion) {
    // scrambled but deterministic objective pairs spanning several fronts
    let fits: Vec<FitnessPair> = (0..200u64)
        .map(|i| FitnessPair {
            mse1: ((i * 7919) % 211) as f64,
            mse2: ((i * 104_729) % 223) as f64,
        })
        .collect();
    c.bench_function("nondominated sort 200", |b| b.iter(|| sort_fitness(black_box(&fits))));
}

fn identify(c: &mut Criterion) {
    let truth = CoefficientSet::new(vec![0.8, -0.6, 0.3], vec![-0.4, 1.2, -0.2]).unwrap();
    let target = synth_target(&truth, &SynthOptions::default()).unwrap();
    let config = EAConfig::default();
    let mut group = c.benchmark_group("run");
    group.sample_size(20);
    group.bench_function("default 20x10", |b| b.iter(|| run(black_box(&config), &target).unwrap()));
    group.finish();
}

criterion_group!(benches, sort, identify);
criterion_main!(benches);
