use criterion::{black_box, criterion_group, criterion_main, Criterion};

use walgebra_bench::walgebra::brst::Brst;
use walgebra_bench::walgebra::characters::{class_characters, denominator_identity};
use walgebra_bench::walgebra::free_fields::preset;
use walgebra_bench::walgebra::lie::{Form, Kind};
use walgebra_bench::walgebra::miura::virasoro_certificate;
use walgebra_bench::walgebra::scalar::Scalar;
use walgebra_bench::walgebra::zhu::zhu_algebra_dims;

fn scalars(c: &mut Criterion) {
    let k = Scalar::k();
    let a = &(&k + &Scalar::int(1)).pow(3) / &(&k + &Scalar::int(2));
    let b = &(&k - &Scalar::frac(1, 3)).pow(2) / &(&k + &Scalar::int(3));
    c.bench_function("rational_function_mul_add", |bch| bch.iter(|| black_box(&(&a * &b) + &a)));
}

fn vertex(c: &mut Criterion) {
    let e = preset("affine-sl2").unwrap();
    let s = e.parse_state("e12(-1)h1(-2)|0>").unwrap();
    let t = e.parse_state("e21(-2)h1(-1)|0>").unwrap();
    c.bench_function("lambda_bracket_affine_sl2", |bch| {
        bch.iter(|| {
            e.clear_cache();
            black_box(e.lambda_bracket(&s, &t))
        })
    });
}

fn reduction(c: &mut Criterion) {
    let mut g = c.benchmark_group("reduction");
    g.sample_size(10);
    g.bench_function("brst_sl2_weight4", |bch| {
        bch.iter(|| {
            let b = Brst::new(Kind::Sl, 2, &Form::KNormalized).unwrap();
            black_box(b.cohomology_dims(4))
        })
    });
    g.bench_function("central_charge_sl3", |bch| bch.iter(|| black_box(virasoro_certificate(3, &Scalar::k()).unwrap())));
    g.bench_function("zhu_affine_sl2_weight3", |bch| {
        let e = preset("affine-sl2").unwrap();
        bch.iter(|| black_box(zhu_algebra_dims(&e, 3).unwrap()))
    });
    g.finish();
}

fn characters(c: &mut Criterion) {
    c.bench_function("pentagonal_q20", |bch| bch.iter(|| black_box(denominator_identity(2, 20).unwrap())));
    c.bench_function("potts_characters_q8", |bch| bch.iter(|| black_box(class_characters(3, 4, 5, 8, 1000).unwrap())));
}

criterion_group!(benches, scalars, vertex, reduction, characters);
criterion_main!(benches);
