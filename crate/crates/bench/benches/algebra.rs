use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use premod::classify::{classify_rank5, ClassifyConfig};
use premod::data::DataSet;
use premod::fusion_ring::{enumerate_fusion_rings, fp_dimensions, DimensionVector, FusionConstraints};
use premod::groups::{census, character_table, named_group, rep_fusion_ring};
use premod::premodular::{check_balancing, PremodularDatum};
use premod::{CyclotomicNumber, RootOfUnity};

fn cyclotomic(c: &mut Criterion) {
    let a = &CyclotomicNumber::zeta(60) + &CyclotomicNumber::sqrt_int(5);
    let b = &CyclotomicNumber::zeta(12) - &CyclotomicNumber::golden_ratio();
    c.bench_function("cyclotomic mul in Q(ζ60)", |bn| bn.iter(|| black_box(&a) * black_box(&b)));
    c.bench_function("cyclotomic inverse in Q(ζ60)", |bn| bn.iter(|| black_box(&a).inv().unwrap()));
    c.bench_function("minimal polynomial of ζ60 + √5", |bn| bn.iter(|| black_box(&a).minimal_polynomial()));
}

fn fusion(c: &mut Criterion) {
    let s4 = rep_fusion_ring(&named_group("S4").unwrap()).unwrap();
    c.bench_function("fp_dimensions Rep(S4)", |bn| bn.iter(|| fp_dimensions(black_box(&s4)).unwrap()));
    let dims = DimensionVector::from_integers(&[1, 1, 2, 1, 1]);
    c.bench_function("enumerate rings dims (1,1,2,1,1)", |bn| {
        bn.iter(|| enumerate_fusion_rings(5, black_box(&dims), &FusionConstraints::new()).unwrap())
    });
    let twists = [0, 0, 0, 1, 1].map(|k| RootOfUnity::new(k, 2)).to_vec();
    let datum = PremodularDatum::from_twists(s4, twists).unwrap();
    c.bench_function("check_balancing Rep(S4)-type", |bn| bn.iter(|| check_balancing(black_box(&datum))));
}

fn groups(c: &mut Criterion) {
    let a5 = named_group("A5").unwrap();
    c.bench_function("character table A5", |bn| bn.iter(|| character_table(black_box(&a5)).unwrap()));
    let data = DataSet::bundled().unwrap();
    let mut g = c.benchmark_group("slow");
    g.sample_size(10);
    g.bench_function("census k=5 up to order 60", |bn| bn.iter(|| census(&data.catalog, 5, 60).unwrap()));
    g.bench_function("classify rank 5", |bn| bn.iter(|| classify_rank5(&data, &ClassifyConfig::default()).unwrap()));
    g.finish();
}

criterion_group!(benches, cyclotomic, fusion, groups);
criterion_main!(benches);
