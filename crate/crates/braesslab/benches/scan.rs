//! Compares the data-parallel Braess scan against the sequential lane on a
//! graph with a few hundred candidate edges. Run with
//! `cargo bench -p braesslab` (and `--no-default-features` to see the
//! sequential-only build).

use criterion::{criterion_group, criterion_main, Criterion};

use braesslab::braess;
use braesslab::forest;
use braesslab::graph::Graph;

fn scan_target() -> Graph {
    // Star with a handful of chords: 20 vertices, ~160 non-edges, each
    // costing one exact Kemeny evaluation on the modified graph.
    let mut g = Graph::star(20).unwrap();
    for (u, v) in [(0, 1), (2, 3), (4, 5), (6, 7)] {
        g = g.with_edge(u, v).unwrap();
    }
    g
}

fn bench_scan(c: &mut Criterion) {
    let g = scan_target();
    let mut group = c.benchmark_group("braess_scan");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| {
            forest::clear_cache();
            braess::braess_scan(&g).unwrap()
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            forest::clear_cache();
            braess::braess_scan_sequential(&g).unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, bench_scan);
criterion_main!(benches);
