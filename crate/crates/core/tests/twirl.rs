use nalgebra::Matrix2;
use num_complex::Complex64;
use proptest::prelude::*;

use errprop::rng::stream;
use errprop::twirl::{
    builtin_channel, haar_twirl_oracle, haar_unitary, lambda_from_kraus, ChannelTag, KrausSet, Mat4,
};
use errprop::Error;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Random mixture of Haar unitaries with the given weights.
fn mixed_unitary(weights: &[f64], seed: u64) -> KrausSet {
    let total: f64 = weights.iter().sum();
    let mut rng = stream(seed, 0);
    let ops = weights
        .iter()
        .map(|w| haar_unitary(&mut rng).map(|z| z * (w / total).sqrt()))
        .collect();
    KrausSet::new(ops).unwrap()
}

/// Amplitude damping with rate `gamma` on the first qubit.
fn amplitude_damping(gamma: f64) -> KrausSet {
    let k0 = Matrix2::new(c(1.0), c(0.0), c(0.0), c((1.0 - gamma).sqrt()));
    let k1 = Matrix2::new(c(0.0), c(gamma.sqrt()), c(0.0), c(0.0));
    let id = Matrix2::<Complex64>::identity();
    KrausSet::new(vec![k0.kronecker(&id), k1.kronecker(&id)]).unwrap()
}

#[test]
fn oracle_agrees_with_builtin_values() {
    for (tag, want) in [(ChannelTag::TraceQubit1, 0.2), (ChannelTag::Depolarize2, 0.0), (ChannelTag::TraceQubit2, 0.2)] {
        let mc = haar_twirl_oracle(&builtin_channel(tag), 10_000, 42).unwrap();
        assert!((mc.lambda - want).abs() <= 0.02, "{tag}: {}", mc.lambda);
        assert!(mc.stderr >= 0.0);
    }
}

#[test]
fn identity_oracle_is_exact_at_full_size() {
    let mc = haar_twirl_oracle(&builtin_channel(ChannelTag::Identity), 10_000, 1).unwrap();
    assert!((mc.lambda - 1.0).abs() < 1e-12);
}

#[test]
fn non_unital_channel_oracle_within_three_sigma() {
    let k = amplitude_damping(0.3);
    let analytic = lambda_from_kraus(&k).lambda;
    // tr K0 = 2 (1 + sqrt(1 - gamma)), tr K1 = 0
    let want = ((2.0 + 2.0 * 0.7f64.sqrt()).powi(2) - 1.0) / 15.0;
    assert!((analytic - want).abs() < 1e-12);
    let mc = haar_twirl_oracle(&k, 10_000, 9).unwrap();
    assert!((mc.lambda - analytic).abs() <= 3.0 * mc.stderr + 1e-10);
}

#[test]
fn oracle_is_reproducible() {
    let k = amplitude_damping(0.5);
    let a = haar_twirl_oracle(&k, 500, 3).unwrap();
    let b = haar_twirl_oracle(&k, 500, 3).unwrap();
    assert_eq!(a.lambda.to_bits(), b.lambda.to_bits());
}

#[test]
fn incomplete_kraus_sets_are_rejected() {
    let half = Mat4::identity().map(|z| z * 0.5);
    assert!(matches!(KrausSet::new(vec![half]), Err(Error::NotTracePreserving { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lambda_is_conjugation_invariant(
        weights in prop::collection::vec(0.01f64..1.0, 1..5),
        seed in any::<u64>(),
    ) {
        let k = mixed_unitary(&weights, seed);
        let u = haar_unitary(&mut stream(seed, 1));
        let a = lambda_from_kraus(&k).lambda;
        let b = lambda_from_kraus(&k.conjugated(&u)).lambda;
        prop_assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn lambda_stays_in_physical_range(weights in prop::collection::vec(0.01f64..1.0, 1..6), seed in any::<u64>()) {
        let lambda = lambda_from_kraus(&mixed_unitary(&weights, seed)).lambda;
        prop_assert!((-1.0 / 15.0 - 1e-12..=1.0 + 1e-12).contains(&lambda));
    }
}
