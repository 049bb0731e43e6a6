use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hermint::valuation::kinematic_chi;
use hermint::verify::conjecture_check;
use hermint::{CurvModule, Dim, Lambda, ValAlgebra};

fn multiply(c: &mut Criterion) {
    let mut g = c.benchmark_group("multiply");
    for n in [3, 5] {
        let alg = ValAlgebra::finite(n, Lambda::Formal);
        let idx = alg.dim().mu_indices();
        let (a, b) = (idx[1], idx[idx.len() / 2]);
        let (x, y) = (alg.mu(a.k, a.q).unwrap(), alg.mu(b.k, b.q).unwrap());
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |bch, _| {
            bch.iter(|| alg.multiply(&x, &y).unwrap())
        });
    }
    g.finish();
}

fn kin_chi(c: &mut Criterion) {
    let mut g = c.benchmark_group("kin_chi");
    for n in [2, 4] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |bch, &n| {
            bch.iter(|| {
                let alg = ValAlgebra::finite(n, Lambda::Formal);
                kinematic_chi(&alg).unwrap().clone()
            })
        });
    }
    g.finish();
}

fn local_kinematic(c: &mut Criterion) {
    let mut g = c.benchmark_group("local_kinematic");
    g.sample_size(10);
    for n in [2, 3] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |bch, &n| {
            bch.iter(|| {
                let m = CurvModule::new(Dim::Finite(n));
                m.kinematic_delta00().unwrap().clone()
            })
        });
    }
    g.finish();
}

fn conjecture(c: &mut Criterion) {
    let mut g = c.benchmark_group("conjecture");
    g.sample_size(10);
    g.bench_function("n_max_12", |bch| bch.iter(|| conjecture_check(12, None)));
    g.finish();
}

criterion_group!(benches, multiply, kin_chi, local_kinematic, conjecture);
criterion_main!(benches);
