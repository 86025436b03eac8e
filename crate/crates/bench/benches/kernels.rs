use cayley_core::markov::{continuant, r_match_search, SearchBounds};
use cayley_core::pell::pell_oracle;
use cayley_core::search::{classify, enumerate_solutions, DEFAULT_BUDGET};
use cayley_core::seqcore::r_val;
use cayley_core::{PellForm, PellInstance, RFamilyParams, Word};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_solutions");
    for bound in [200u64, 800] {
        g.bench_with_input(BenchmarkId::new("s=3", bound), &bound, |b, &bound| {
            b.iter(|| enumerate_solutions(3, black_box(bound), DEFAULT_BUDGET).unwrap())
        });
    }
    g.finish();
    c.bench_function("classify s=24 bound=200", |b| {
        b.iter(|| classify(24, black_box(200), DEFAULT_BUDGET).unwrap())
    });
}

fn sequences(c: &mut Criterion) {
    let fam = RFamilyParams::new(3, 6).unwrap();
    let mut g = c.benchmark_group("r_val");
    for n in [64usize, 1024] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| r_val(&fam, black_box(n)).unwrap())
        });
    }
    g.finish();

    let word = Word::new((0..200).map(|i| 1 + i % 4).collect()).unwrap();
    c.bench_function("continuant len=200", |b| {
        b.iter(|| continuant(black_box(&word)))
    });
    c.bench_function("r_match_search default", |b| {
        b.iter(|| r_match_search(black_box(SearchBounds::default())))
    });
}

fn pell(c: &mut Criterion) {
    let inst = PellInstance::new(3, 1, PellForm::ZSquared).unwrap();
    c.bench_function("pell_oracle d=3 bound=1e5", |b| {
        b.iter(|| pell_oracle(&inst, black_box(100_000)))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = enumeration, sequences, pell
}
criterion_main!(benches);
