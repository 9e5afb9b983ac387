use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use monideal::families::veronese;
use monideal::linearity::{betti_table, BettiOptions};
use monideal::packing::{is_packed, DEFAULT_PACKED_MAX_N};
use monideal::par::{with_mode, Mode};
use monideal::rees::rees_generators;
use monideal::sweep::{verify_conjectures, Family, SweepOptions};
use monideal::symbolic::{symbolic_power_with, SymbolicOptions};

const MODES: [(&str, Mode); 2] = [("parallel", Mode::Parallel), ("sequential", Mode::Sequential)];

fn symbolic(c: &mut Criterion) {
    let mut g = c.benchmark_group("symbolic_power_naive");
    let i = veronese(6, 3);
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::new(name, "I_{6,3}^(3)"), |b| {
            b.iter(|| with_mode(mode, || symbolic_power_with(&i, 3, SymbolicOptions { naive: true }).unwrap()))
        });
    }
    g.finish();
}

fn betti(c: &mut Criterion) {
    let mut g = c.benchmark_group("betti_table");
    let s = symbolic_power_with(&veronese(5, 3), 2, SymbolicOptions::default()).unwrap();
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::new(name, "I_{5,3}^(2)"), |b| {
            b.iter(|| with_mode(mode, || betti_table(&s, BettiOptions::default()).unwrap()))
        });
    }
    g.finish();
}

fn covers(c: &mut Criterion) {
    let mut g = c.benchmark_group("rees_generators");
    let i = veronese(5, 3);
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::new(name, "I_{5,3} k<=4"), |b| {
            b.iter(|| with_mode(mode, || rees_generators(&i, 4).unwrap()))
        });
    }
    g.finish();
}

fn packed(c: &mut Criterion) {
    let mut g = c.benchmark_group("is_packed");
    let i = veronese(7, 2);
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::new(name, "I_{7,2}"), |b| {
            b.iter(|| with_mode(mode, || is_packed(&i, DEFAULT_PACKED_MAX_N).unwrap()))
        });
    }
    g.finish();
}

fn sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_conjectures");
    g.sample_size(10);
    let family = Family::Matroidal { max_n: 4 };
    let opts = SweepOptions::default();
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::new(name, "matroidal n<=4"), |b| {
            b.iter(|| with_mode(mode, || verify_conjectures(&family, &opts).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, symbolic, betti, covers, packed, sweep);
criterion_main!(benches);
