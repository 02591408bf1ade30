//! Receive side of a base station: interference Gram matrix, the
//! interference-minimising receive basis, intra-cell zero-forcing filters
//! and the per-user throughput.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    dot, hermitian_eig_ascending, hermitian_eigenvalues, invert_with_rcond, norm_sq, CMat, CVec,
};

/// Reciprocal condition number of the effective channel below which the
/// design is flagged as ill-conditioned (but still usable).
pub const COND_WARN_RCOND: f64 = 1e-8;

/// `A = G~ G~^H` where column `n` of `G~` is `G_n v_n`.
pub fn interference_gram(cross: &[CMat], v: &[CVec]) -> CMat {
    assert_eq!(cross.len(), v.len(), "one beamformer per interfering user");
    let n_r = cross[0].rows();
    let received: Vec<CVec> = cross.iter().zip(v).map(|(g, v)| g.mul_vec(v)).collect();
    CMat::from_fn(n_r, n_r, |r, c| {
        received.iter().map(|y| y[r] * y[c].conj()).sum()
    })
}

/// The `k` eigenvectors of `a` with the smallest eigenvalues, as columns.
pub fn optimal_receive_basis(a: &CMat, k: usize) -> Result<CMat> {
    if k == 0 || k >= a.rows() {
        return Err(Error::InvalidConfig(format!(
            "receive basis needs 0 < K < n_r (K={k}, n_r={})",
            a.rows()
        )));
    }
    let eig = hermitian_eig_ascending(a)?;
    Ok(eig.vectors.column_range(0, k))
}

/// Sum of the `k` smallest eigenvalues of the Hermitian PSD matrix `a`.
pub fn rho_k(a: &CMat, k: usize) -> Result<f64> {
    if k == 0 || k > a.rows() {
        return Err(Error::InvalidConfig(format!(
            "rho_K needs 0 < K <= n_r (K={k}, n_r={})",
            a.rows()
        )));
    }
    let values = hermitian_eigenvalues(a)?;
    Ok(values[..k].iter().sum::<f64>().max(0.0))
}

/// Overall residual interference inside the receive subspace,
/// `sum_n ||U^H G_n v_n||^2`.
pub fn residual_ici(u: &CMat, cross: &[CMat], v: &[CVec]) -> f64 {
    assert_eq!(cross.len(), v.len());
    cross
        .iter()
        .zip(v)
        .map(|(g, v)| norm_sq(&u.adjoint_mul_vec(&g.mul_vec(v))))
        .sum()
}

#[derive(Debug, Clone)]
pub struct RxDesign {
    /// Orthonormal receive basis `U`, `n_r x K`.
    pub u_basis: CMat,
    /// Unit-norm intra-cell filters `r_k`, each of length `K`.
    pub filters: Vec<CVec>,
    /// `H_e = U^H [H_1 v_1, ..., H_K v_K]`.
    pub eff_channel: CMat,
    pub residual_ici: f64,
    pub cond_flag: bool,
    pub rcond: f64,
}

impl RxDesign {
    /// Overall combiner `U r_k`, so that `r_k^H U^H x = combiner^H x`.
    pub fn combiner(&self, user: usize) -> CVec {
        self.u_basis.mul_vec(&self.filters[user])
    }

    /// `|r_k^H U^H H v|^2`.
    pub fn signal_power(&self, user: usize, direct: &CMat, v: &[Complex64]) -> f64 {
        dot(&self.combiner(user), &direct.mul_vec(v)).norm_sqr()
    }

    /// Final residual interference of one user,
    /// `sum_n |r_k^H U^H G_n v_n|^2`.
    pub fn interference_power(&self, user: usize, cross: &[CMat], v_neighbor: &[CVec]) -> f64 {
        let w = self.combiner(user);
        cross
            .iter()
            .zip(v_neighbor)
            .map(|(g, v)| dot(&w, &g.mul_vec(v)).norm_sqr())
            .sum()
    }
}

/// Effective channel, zero-forcing filters and residual interference for
/// a given receive basis.
pub fn build_rx(
    u: &CMat,
    direct_home: &[CMat],
    v_home: &[CVec],
    cross: &[CMat],
    v_neighbor: &[CVec],
) -> Result<RxDesign> {
    let k = u.cols();
    if direct_home.len() != k || v_home.len() != k {
        return Err(Error::InvalidConfig(format!(
            "receive basis has {k} columns but {} home users",
            direct_home.len()
        )));
    }
    let desired: Vec<CVec> = direct_home
        .iter()
        .zip(v_home)
        .map(|(h, v)| h.mul_vec(v))
        .collect();
    let eff_channel = u.adjoint_mul(&CMat::from_columns(&desired));
    let (inv, rcond) = invert_with_rcond(&eff_channel).map_err(|e| match e {
        Error::Singular { rcond } => Error::SingularEffectiveChannel { rcond },
        other => other,
    })?;
    let filters = (0..k)
        .map(|row| {
            let r: CVec = inv.row(row).iter().map(|z| z.conj()).collect();
            let n = norm_sq(&r).sqrt();
            r.into_iter().map(|z| z / n).collect()
        })
        .collect();
    Ok(RxDesign {
        u_basis: u.clone(),
        filters,
        eff_channel,
        residual_ici: residual_ici(u, cross, v_neighbor),
        cond_flag: rcond < COND_WARN_RCOND,
        rcond,
    })
}

/// `log2(1 + snr * signal / (1 + snr * interference))`, `snr` linear.
#[inline]
pub fn rate_from_powers(signal: f64, interference: f64, snr: f64) -> f64 {
    (1.0 + snr * signal / (1.0 + snr * interference)).log2()
}

/// Throughput of one home user under residual inter-cell interference.
pub fn per_user_rate(
    rx: &RxDesign,
    user: usize,
    direct: &CMat,
    v: &[Complex64],
    cross: &[CMat],
    v_neighbor: &[CVec],
    snr: f64,
) -> f64 {
    rate_from_powers(
        rx.signal_power(user, direct, v),
        rx.interference_power(user, cross, v_neighbor),
        snr,
    )
}

/// Throughput with perfectly aligned interference: no interference term.
pub fn perfect_feedback_rate(
    direct: &CMat,
    v_ideal: &[Complex64],
    u_ideal: &CMat,
    r_ideal: &[Complex64],
    snr: f64,
) -> f64 {
    let combiner = u_ideal.mul_vec(r_ideal);
    let signal = dot(&combiner, &direct.mul_vec(v_ideal)).norm_sqr();
    rate_from_powers(signal, 0.0, snr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{orthonormality_error, orthonormalize_columns, RECONSTRUCTION_TOL};
    use crate::rng::complex_gaussian;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn gaussian(rng: &mut ChaCha8Rng, r: usize, cols: usize) -> CMat {
        CMat::from_fn(r, cols, |_, _| complex_gaussian(rng))
    }

    fn unit(rng: &mut ChaCha8Rng, n: usize) -> CVec {
        crate::linalg::normalized(&gaussian(rng, n, 1).column(0)).unwrap()
    }

    #[test]
    fn gram_of_zero_channels() {
        let g = vec![CMat::zeros(3, 2); 2];
        let v = vec![vec![c(1.0), c(0.0)]; 2];
        assert_eq!(interference_gram(&g, &v), CMat::zeros(3, 3));
    }

    #[test]
    fn gram_rank_one() {
        let g = CMat::from_fn(
            3,
            3,
            |r, cc| if r == 0 && cc == 0 { c(1.0) } else { c(0.0) },
        );
        let a = interference_gram(&[g], &[vec![c(1.0), c(0.0), c(0.0)]]);
        assert_eq!(a, CMat::from_real_diag(&[1.0, 0.0, 0.0]));
    }

    #[test]
    fn gram_trace_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let g: Vec<CMat> = (0..3).map(|_| gaussian(&mut rng, 4, 2)).collect();
            let v: Vec<CVec> = (0..3).map(|_| unit(&mut rng, 2)).collect();
            let a = interference_gram(&g, &v);
            let expected: f64 = g.iter().zip(&v).map(|(g, v)| norm_sq(&g.mul_vec(v))).sum();
            assert!((a.trace().re - expected).abs() < 1e-9);
            assert!(a.is_hermitian());
        }
    }

    #[test]
    fn diagonal_receive_basis() {
        let u = optimal_receive_basis(&CMat::from_real_diag(&[5.0, 1.0, 2.0]), 2).unwrap();
        // span{e_2, e_3}: the first coordinate is unused
        assert!(u.row(0).iter().all(|z| z.norm() < 1e-15));
        assert!(orthonormality_error(&u) < 1e-12);
        let u0 = optimal_receive_basis(&CMat::zeros(3, 3), 2).unwrap();
        assert!(orthonormality_error(&u0) < 1e-12);
        assert!(optimal_receive_basis(&CMat::identity(2), 2).is_err());
    }

    #[test]
    fn rho_k_examples() {
        assert_eq!(rho_k(&CMat::identity(3), 2).unwrap(), 2.0);
        assert!((rho_k(&CMat::from_real_diag(&[4.0, 0.5, 1.0]), 2).unwrap() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn rho_k_equals_residual_at_optimal_basis() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let g: Vec<CMat> = (0..2).map(|_| gaussian(&mut rng, 3, 3)).collect();
            let v: Vec<CVec> = (0..2).map(|_| unit(&mut rng, 3)).collect();
            let a = interference_gram(&g, &v);
            let u = optimal_receive_basis(&a, 2).unwrap();
            let via_u = residual_ici(&u, &g, &v);
            let diag_sum: f64 = u.adjoint_mul(&a.matmul(&u)).trace().re;
            let rho = rho_k(&a, 2).unwrap();
            assert!((via_u - rho).abs() < RECONSTRUCTION_TOL);
            assert!((diag_sum - rho).abs() < RECONSTRUCTION_TOL);
            assert!(rho <= a.trace().re + 1e-12);
        }
    }

    #[test]
    fn rho_k_full_rank_equals_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let x = gaussian(&mut rng, 3, 3);
        let a = x.matmul(&x.adjoint());
        assert!((rho_k(&a, 3).unwrap() - a.trace().re).abs() < 1e-9);
    }

    #[test]
    fn residual_zero_when_orthogonal() {
        let g = vec![CMat::identity(3)];
        let v = vec![vec![c(1.0), c(0.0), c(0.0)]];
        let u = CMat::from_columns(&[vec![c(0.0), c(1.0), c(0.0)], vec![c(0.0), c(0.0), c(1.0)]]);
        assert_eq!(residual_ici(&u, &g, &v), 0.0);
        assert_eq!(residual_ici(&u, &[CMat::zeros(3, 3)], &v), 0.0);
    }

    #[test]
    fn identity_effective_channel_gives_standard_filters() {
        let u = CMat::from_columns(&[vec![c(1.0), c(0.0), c(0.0)], vec![c(0.0), c(1.0), c(0.0)]]);
        let h = vec![CMat::identity(3), CMat::identity(3)];
        let v = vec![vec![c(1.0), c(0.0), c(0.0)], vec![c(0.0), c(1.0), c(0.0)]];
        let rx = build_rx(&u, &h, &v, &[CMat::zeros(3, 3), CMat::zeros(3, 3)], &v).unwrap();
        assert_eq!(rx.filters[0], vec![c(1.0), c(0.0)]);
        assert_eq!(rx.filters[1], vec![c(0.0), c(1.0)]);
        assert_eq!(rx.residual_ici, 0.0);
        assert!(!rx.cond_flag);
        // zero interference, unit gain, SNR 1 -> log2(2)
        assert!(
            (per_user_rate(&rx, 0, &h[0], &v[0], &[CMat::zeros(3, 3)], &v[..1], 1.0) - 1.0).abs()
                < 1e-15
        );
        assert!(per_user_rate(&rx, 0, &h[0], &v[0], &[CMat::zeros(3, 3)], &v[..1], 1e-12) < 1e-11);
    }

    #[test]
    fn singular_effective_channel() {
        let u = CMat::from_columns(&[vec![c(1.0), c(0.0), c(0.0)], vec![c(0.0), c(1.0), c(0.0)]]);
        let h = vec![CMat::identity(3), CMat::identity(3)];
        let v = vec![vec![c(1.0), c(0.0), c(0.0)]; 2];
        let err = build_rx(&u, &h, &v, &h, &v).unwrap_err();
        assert!(matches!(err, Error::SingularEffectiveChannel { .. }));
    }

    #[test]
    fn zero_forcing_and_ici_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let h: Vec<CMat> = (0..2).map(|_| gaussian(&mut rng, 3, 3)).collect();
            let g: Vec<CMat> = (0..2).map(|_| gaussian(&mut rng, 3, 3)).collect();
            let vh: Vec<CVec> = (0..2).map(|_| unit(&mut rng, 3)).collect();
            let vg: Vec<CVec> = (0..2).map(|_| unit(&mut rng, 3)).collect();
            let u = orthonormalize_columns(&gaussian(&mut rng, 3, 2)).unwrap();
            let rx = build_rx(&u, &h, &vh, &g, &vg).unwrap();
            for k in 0..2 {
                assert!((norm_sq(&rx.filters[k]) - 1.0).abs() < 1e-12);
                let w = rx.combiner(k);
                for j in 0..2 {
                    let leak = dot(&w, &h[j].mul_vec(&vh[j])).norm();
                    if j != k && !rx.cond_flag {
                        assert!(leak < RECONSTRUCTION_TOL);
                    }
                    if j == k {
                        assert!(leak > 0.0);
                    }
                }
                assert!(rx.interference_power(k, &g, &vg) <= rx.residual_ici + 1e-9);
            }
        }
    }

    #[test]
    fn perfect_feedback_rate_examples() {
        // |r^H U^H H v|^2 = 3 at SNR 1 -> log2(4)
        let s3 = 3f64.sqrt();
        let h = CMat::from_real_diag(&[s3, 1.0]);
        let u = CMat::identity(2);
        let r = vec![c(1.0), c(0.0)];
        let v = vec![c(1.0), c(0.0)];
        assert!((perfect_feedback_rate(&h, &v, &u, &r, 1.0) - 2.0).abs() < 1e-12);
        assert!(rate_from_powers(3.0, 0.0, 1.0) >= rate_from_powers(3.0, 0.2, 1.0));
    }
}
