//! Throughput of the verification suite over a corpus slice, parallel
//! against sequential.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use nec_core::corpus::{check_corpus_seq, generate_corpus};

fn bench_corpus_checks(c: &mut Criterion) {
    let corpus = generate_corpus();
    let mut group = c.benchmark_group("corpus-checks");
    group.sample_size(10);

    for &size in &[16usize, 64] {
        let slice = &corpus[..size];
        group.bench_with_input(
            BenchmarkId::new("sequential", size),
            &size,
            |b, _| {
                b.iter(|| {
                    let reports = check_corpus_seq(slice, 8);
                    assert!(reports.iter().all(|r| r.all_pass()));
                })
            },
        );
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", size), &size, |b, _| {
            b.iter(|| {
                let reports = nec_core::corpus::check_corpus(slice, 8);
                assert!(reports.iter().all(|r| r.all_pass()));
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_corpus_checks);
criterion_main!(benches);
