use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use qpulba::builder::build_machine;
use qpulba::machine::{enumerate, MachineSpec, DEFAULT_GUARD};
use qpulba::sim::{simulate, Backend};
use qpulba::transpile::{transpile, LoweringStrategy};
use qpulba::verify::{check_equivalence, EquivalenceOptions};
use qpulba_bench::fixtures;

fn bench_enumerate(c: &mut Criterion) {
    let spec = MachineSpec::program_sized(2, 2).unwrap();
    c.bench_function("enumerate 2-2-1", |b| b.iter(|| enumerate(black_box(&spec), DEFAULT_GUARD).unwrap()));
}

fn bench_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build");
    for f in fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(f.name), &f, |b, f| {
            b.iter(|| build_machine(black_box(&f.spec), f.mode).unwrap())
        });
    }
    group.finish();
}

fn bench_transpile(c: &mut Criterion) {
    let mut group = c.benchmark_group("transpile");
    for f in fixtures() {
        let (_, circuit) = build_machine(&f.spec, f.mode).unwrap();
        for strategy in [LoweringStrategy::Borrowed, LoweringStrategy::Clean] {
            let id = BenchmarkId::new(format!("{strategy:?}"), f.name);
            group.bench_with_input(id, &circuit, |b, circuit| b.iter(|| transpile(black_box(circuit), strategy).unwrap()));
        }
    }
    group.finish();
}

fn bench_simulate(c: &mut Criterion) {
    let mut group = c.benchmark_group("simulate");
    for f in fixtures() {
        let (_, circuit) = build_machine(&f.spec, f.mode).unwrap();
        group.bench_with_input(BenchmarkId::new("sparse", f.name), &circuit, |b, circuit| {
            b.iter(|| simulate(black_box(circuit), Backend::Sparse, 0).unwrap())
        });
        if circuit.num_qubits() <= 20 {
            group.bench_with_input(BenchmarkId::new("dense", f.name), &circuit, |b, circuit| {
                b.iter(|| simulate(black_box(circuit), Backend::Dense, 0).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(20);
    for f in fixtures() {
        let options = EquivalenceOptions {
            mode: f.mode,
            ..EquivalenceOptions::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(f.name), &f, |b, f| {
            b.iter(|| check_equivalence(black_box(&f.spec), options).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_enumerate, bench_build, bench_transpile, bench_simulate, bench_verify);
criterion_main!(benches);
