use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use plderham::cochains::{Cohomology, NormalizedCochains};
use plderham::derham::{derham_check, derham_check_compact};
use plderham::forms::TruncatedComplex;
use plderham::mv::{instances, mv_v1};
use plderham::nabla::{extend_faces, PolyForm};
use plderham::simplicial::{torus, torus_grid, PlaneExhaustion};

fn integration(c: &mut Criterion) {
    let w = PolyForm::parse(3, 3, "3/2 t1^2 t2 t3 dt1 dt2 dt3 + -1 t3^4 dt1 dt2 dt3").unwrap();
    c.bench_function("integrate degree-4 top form on the 3-simplex", |b| b.iter(|| black_box(&w).integrate()));
}

fn extension(c: &mut Criterion) {
    let w = PolyForm::parse(3, 1, "1 t1^2 t2 dt3 + 1 t2 dt1").unwrap();
    let faces: Vec<PolyForm> = (0..4).map(|i| w.face(i).unwrap()).collect();
    c.bench_function("extend boundary of a 1-form on the 3-simplex", |b| {
        b.iter(|| extend_faces(black_box(faces.clone())).unwrap())
    });
}

fn truncated(c: &mut Criterion) {
    let x = torus();
    c.bench_function("truncated complex of the minimal torus, D = 3", |b| {
        b.iter(|| TruncatedComplex::new(black_box(&x), 3).unwrap())
    });
}

fn cohomology(c: &mut Criterion) {
    let x = torus_grid(4, 4).unwrap();
    let complex = NormalizedCochains::new(&x).complex().clone();
    c.bench_function("cochain cohomology of the 4 x 4 grid torus", |b| b.iter(|| Cohomology::new(black_box(&complex))));
}

fn comparisons(c: &mut Criterion) {
    let mut group = c.benchmark_group("end to end");
    group.sample_size(10);
    let x = torus();
    group.bench_function("de Rham comparison on the torus, D = 2", |b| b.iter(|| derham_check("torus", &x, 2).unwrap()));
    group.bench_function("compact comparison on the plane, D = 2", |b| {
        b.iter(|| derham_check_compact(&PlaneExhaustion, 2, 4).unwrap())
    });
    let (u, v) = instances::circle_by_arcs().unwrap();
    group.bench_function("Mayer-Vietoris on the hexagonal circle, D = 3", |b| b.iter(|| mv_v1("circle", &u, &v, 3).unwrap()));
    group.finish();
}

criterion_group!(benches, integration, extension, truncated, cohomology, comparisons);
criterion_main!(benches);
