use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use superpos::harness::{Experiment, ExperimentSpec};
use superpos::{BindingKind, Scheme};

fn trial(c: &mut Criterion, name: &str, spec: ExperimentSpec) {
    let exp = Experiment::new(spec).expect("valid spec");
    let mut i = 0u64;
    c.bench_function(name, |b| {
        b.iter_batched(
            || {
                i += 1;
                i
            },
            |idx| exp.trial(idx).expect("trial"),
            BatchSize::SmallInput,
        )
    });
}

fn encode(c: &mut Criterion) {
    trial(c, "cycle HDC N=1000 M=200", ExperimentSpec::new(Scheme::Hdc, BindingKind::Permutation, 1000, 27, vec![200], 1));
    trial(c, "spectral HRR N=1024 M=200", ExperimentSpec::new(Scheme::Hrr, BindingKind::Circulant, 1024, 27, vec![200], 1));
    trial(
        c,
        "spectral unitary N=256 M=100",
        ExperimentSpec::new(Scheme::RandomUnitary, BindingKind::RandomUnitary, 256, 27, vec![100], 1),
    );
    let mut clip = ExperimentSpec::new(Scheme::Hdc, BindingKind::Permutation, 1000, 27, vec![200], 1);
    clip.activation = superpos::Activation::ClippedLinear { kappa: 7 };
    trial(c, "direct clipped N=1000 M=200", clip);
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = encode
}
criterion_main!(benches);
