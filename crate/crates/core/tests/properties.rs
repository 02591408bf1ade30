//! Property tests for the numerical building blocks and a statistical check
//! on the channel sampler.

use num_complex::Complex64;
use proptest::prelude::*;

use imac_ia::channel::{sample_channels, SystemConfig};
use imac_ia::codebook::{decode_compound, encode_compound};
use imac_ia::linalg::{hermitian_eig_ascending, invert, CMat, RECONSTRUCTION_TOL};
use imac_ia::rng::TrialStream;
use imac_ia::rxdesign::{interference_gram, rho_k};

fn complex() -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn square(n: usize) -> impl Strategy<Value = CMat> {
    proptest::collection::vec(complex(), n * n).prop_map(move |d| CMat::from_vec(n, n, d))
}

fn hermitian(n: usize) -> impl Strategy<Value = CMat> {
    square(n).prop_map(move |m| CMat::from_fn(n, n, |r, c| (m[(r, c)] + m[(c, r)].conj()) * 0.5))
}

proptest! {
    #[test]
    fn compound_index_round_trips(b_bits in 1u32..=6, k in 1usize..=4, raw in any::<u64>()) {
        let m = raw % (1u64 << (b_bits as usize * k));
        let digits = decode_compound(m, b_bits, k);
        prop_assert_eq!(digits.len(), k);
        prop_assert!(digits.iter().all(|&d| d < 1 << b_bits));
        prop_assert_eq!(encode_compound(&digits, b_bits), m);
    }

    #[test]
    fn eigendecomposition_reconstructs(a in (1usize..=5).prop_flat_map(hermitian)) {
        let eig = hermitian_eig_ascending(&a).unwrap();
        prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        let d = CMat::from_real_diag(&eig.values);
        let rebuilt = eig.vectors.matmul(&d).matmul(&eig.vectors.adjoint());
        let scale = a.fro_norm_sq().sqrt().max(1.0);
        prop_assert!(rebuilt.sub(&a).max_abs() <= RECONSTRUCTION_TOL * scale);
    }

    #[test]
    fn rho_is_between_zero_and_trace(
        g in proptest::collection::vec(square(3), 2),
        v in proptest::collection::vec(proptest::collection::vec(complex(), 3), 2),
    ) {
        prop_assume!(v.iter().all(|x| x.iter().map(|c| c.norm_sqr()).sum::<f64>() > 1e-3));
        let a = interference_gram(&g, &v);
        let rho = rho_k(&a, 2).unwrap();
        prop_assert!(rho >= 0.0);
        prop_assert!(rho <= a.trace().re * (1.0 + 1e-12) + 1e-12);
    }

    #[test]
    fn inverse_is_two_sided(m in square(3)) {
        if let Ok(inv) = invert(&m) {
            let err = m.matmul(&inv).sub(&CMat::identity(3)).max_abs();
            prop_assert!(err < 1e-6, "residual {}", err);
        }
    }
}

#[test]
fn channel_entries_have_unit_second_moment() {
    let cfg = SystemConfig::new(5, 5, 2, 1).unwrap();
    let mut sum = 0.0;
    let mut count = 0usize;
    let mut trial = 0;
    while count < 100_000 {
        let ch = sample_channels(&cfg, TrialStream::new(9, trial));
        for m in ch.direct.iter().chain(&ch.cross).flatten() {
            sum += m.fro_norm_sq();
            count += m.rows() * m.cols();
        }
        trial += 1;
    }
    let second_moment = sum / count as f64;
    assert!(
        (second_moment - 1.0).abs() < 0.02,
        "E|h|^2 = {second_moment}"
    );
}
