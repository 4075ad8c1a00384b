use std::hint::black_box;

use annular_core::exec::ExecMode;
use annular_core::invariant::{link_class_with, ClassOptions};
use annular_core::ladder::braid_closure;
use annular_core::sakh::{build_complex, homology};
use annular_core::Sign;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, ExecMode); 2] = [
    ("sequential", ExecMode::Sequential),
    ("parallel", ExecMode::Parallel),
];

fn braid(len: usize, strands: usize) -> Vec<(usize, Sign)> {
    (0..len)
        .map(|t| {
            let s = if t % 3 == 2 {
                Sign::Negative
            } else {
                Sign::Positive
            };
            (1 + t % (strands - 1), s)
        })
        .collect()
}

fn link_classes(c: &mut Criterion) {
    let mut group = c.benchmark_group("link_class");
    group.sample_size(10);
    for (n, colors, len) in [
        (2u32, vec![1, 1, 1], 8),
        (3, vec![1, 1, 1], 7),
        (3, vec![2, 2], 4),
    ] {
        let b = braid(len, colors.len());
        let Ok(w) = braid_closure(n, &colors, &b) else {
            continue;
        };
        let label = format!("n{n}_c{}_x{len}", colors[0]);
        for (name, mode) in MODES {
            let opts = ClassOptions {
                mode,
                ..Default::default()
            };
            group.bench_with_input(BenchmarkId::new(name, &label), &w, |bench, w| {
                bench.iter(|| link_class_with(black_box(w), opts).unwrap())
            });
        }
    }
    group.finish();
}

fn sakh_homology(c: &mut Criterion) {
    let mut group = c.benchmark_group("sakh_homology");
    group.sample_size(10);
    for len in [6, 8, 10] {
        let w = braid_closure(2, &[1, 1, 1], &braid(len, 3)).unwrap();
        let complex = build_complex(&w).unwrap();
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, len), &complex, |bench, cx| {
                bench.iter(|| homology(black_box(cx), mode).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, link_classes, sakh_homology);
criterion_main!(benches);
