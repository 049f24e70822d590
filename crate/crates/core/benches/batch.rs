use std::path::Path;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fillgeo::batch;
use fillgeo::catalog::{bundled_catalog_dir, load_catalog, TableId};
use fillgeo::moves::{load_certificate, verify_chain, CobordismChain};
use fillgeo::reproduce::reproduce_table;

fn corpus() -> Vec<CobordismChain> {
    let dir = Path::new(fillgeo::BUNDLED_DATA_DIR).join("chains");
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "cert"))
        .collect();
    files.sort();
    files.iter().map(|p| load_certificate(p).unwrap()).collect()
}

fn chains(c: &mut Criterion) {
    let all = corpus();
    let mut g = c.benchmark_group("verify_corpus");
    for parallel in [false, true] {
        let label = if parallel { "parallel" } else { "sequential" };
        g.bench_with_input(BenchmarkId::from_parameter(label), &parallel, |b, &p| {
            b.iter(|| batch::map(&all, p, verify_chain).iter().all(|r| r.accepted()))
        });
    }
    g.finish();
}

fn tables(c: &mut Criterion) {
    let entries = load_catalog(bundled_catalog_dir()).unwrap();
    let mut g = c.benchmark_group("reproduce_all_tables");
    g.sample_size(10);
    for parallel in [false, true] {
        let label = if parallel { "parallel" } else { "sequential" };
        g.bench_with_input(BenchmarkId::from_parameter(label), &parallel, |b, &p| {
            b.iter(|| {
                TableId::ALL
                    .iter()
                    .all(|&id| reproduce_table(&entries, id, p).unwrap().all_match())
            })
        });
    }
    g.finish();
}

criterion_group!(benches, chains, tables);
criterion_main!(benches);
