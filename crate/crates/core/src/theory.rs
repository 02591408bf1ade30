//! Wishart bound on the average throughput loss of joint quantization.
//!
//! With `n_t = n_r`, each compound codeword turns the interfering channels
//! into an independent complex Wishart matrix `CW_{n_r}(K, I)`. The expected
//! residual interference of the joint quantizer is then the expectation of
//! the minimum of `rho_K` over `2^(K B)` i.i.d. Wishart draws, which is
//! estimated here by Monte Carlo.

use rand::Rng;
use rayon::prelude::*;

use crate::channel::SystemConfig;
use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::rng::{complex_gaussian, Purpose, TrialStream};
use crate::rxdesign::rho_k;
use crate::stats::mean_and_stderr;

/// Default cap on the total number of Wishart draws of one estimate.
pub const DEFAULT_WISHART_DRAW_CAP: u64 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WishartSpec {
    /// Matrix dimension, `n_r`.
    pub dim: usize,
    /// Degrees of freedom, `K`.
    pub dof: usize,
    /// Each minimum is taken over `2^pool_bits` draws (`pool_bits = K B`).
    pub pool_bits: u32,
    pub trials: u64,
}

impl WishartSpec {
    /// Bound setup matching a system configuration. Only defined for
    /// `n_t = n_r`; otherwise the pool members are not independent.
    pub fn for_config(cfg: &SystemConfig, trials: u64) -> Result<Self> {
        if cfg.n_t != cfg.n_r {
            return Err(Error::InvalidConfig(format!(
                "the Wishart bound needs n_t = n_r (n_t={}, n_r={})",
                cfg.n_t, cfg.n_r
            )));
        }
        if cfg.k_users > cfg.n_r {
            return Err(Error::InvalidConfig(
                "the Wishart bound needs K <= n_r".into(),
            ));
        }
        Ok(WishartSpec {
            dim: cfg.n_r,
            dof: cfg.k_users,
            pool_bits: cfg.compound_bits() as u32,
            trials,
        })
    }

    pub fn draws_per_min(&self) -> u64 {
        1u64 << self.pool_bits
    }
}

/// `X X^H` with `X` an `dim x dof` matrix of i.i.d. CN(0, 1) entries.
pub fn sample_wishart<R: Rng + ?Sized>(spec: &WishartSpec, rng: &mut R) -> CMat {
    let x = CMat::from_fn(spec.dim, spec.dof, |_, _| complex_gaussian(rng));
    x.matmul(&x.adjoint())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinRhoEstimate {
    /// Number of Wishart draws each minimum was taken over.
    pub pool: u64,
    pub mean: f64,
    pub std_err: f64,
    pub trials: u64,
}

/// Running minimum of `rho_K` over one trial's pool, reported at every
/// power-of-two prefix: entry `j` is the minimum over the first `2^j`
/// draws. Smaller pools are prefixes of larger ones, so the sequence is
/// non-increasing by construction.
pub fn nested_min_rho(spec: &WishartSpec, seed: u64, trial: u64) -> Result<Vec<f64>> {
    let mut rng = TrialStream::new(seed, trial).rng(Purpose::Wishart);
    let mut mins = Vec::with_capacity(spec.pool_bits as usize + 1);
    let mut running = f64::INFINITY;
    let mut next_report = 1u64;
    for draw in 1..=spec.draws_per_min() {
        let a = sample_wishart(spec, &mut rng);
        running = running.min(rho_k(&a, spec.dof)?);
        if draw == next_report {
            mins.push(running);
            next_report <<= 1;
        }
    }
    Ok(mins)
}

fn check_budget(spec: &WishartSpec, draw_cap: u64) -> Result<()> {
    if spec.trials == 0 {
        return Err(Error::InvalidConfig(
            "the estimator needs at least one trial".into(),
        ));
    }
    let needed = spec.draws_per_min().saturating_mul(spec.trials);
    if needed > draw_cap {
        return Err(Error::BudgetExceeded {
            what: "Wishart draws",
            needed,
            cap: draw_cap,
        });
    }
    Ok(())
}

/// Estimates of `E[min rho_K]` for every nested pool size `2^0 ..= 2^pool_bits`.
pub fn nested_min_rho_expectation(
    spec: &WishartSpec,
    seed: u64,
    draw_cap: u64,
) -> Result<Vec<MinRhoEstimate>> {
    check_budget(spec, draw_cap)?;
    let per_trial: Vec<Vec<f64>> = (0..spec.trials)
        .into_par_iter()
        .map(|t| nested_min_rho(spec, seed, t))
        .collect::<Result<_>>()?;
    Ok((0..=spec.pool_bits as usize)
        .map(|j| {
            let column: Vec<f64> = per_trial.iter().map(|mins| mins[j]).collect();
            let (mean, std_err) = mean_and_stderr(&column);
            MinRhoEstimate {
                pool: 1 << j,
                mean,
                std_err,
                trials: spec.trials,
            }
        })
        .collect())
}

/// Monte Carlo estimate of `E[min_m rho_K(A_m)]` over `2^pool_bits`
/// i.i.d. Wishart matrices.
pub fn min_rho_expectation(spec: &WishartSpec, seed: u64, draw_cap: u64) -> Result<MinRhoEstimate> {
    Ok(*nested_min_rho_expectation(spec, seed, draw_cap)?
        .last()
        .expect("at least one pool size"))
}

/// Upper bound on the average per-user throughput loss,
/// `log2(1 + snr * E[min rho_K])`, `snr` linear.
pub fn loss_upper_bound(snr_linear: f64, emin: f64) -> f64 {
    (1.0 + snr_linear * emin).log2()
}

/// Lower bound on the average per-user throughput of joint quantization.
pub fn rate_lower_bound(mean_pfb_rate: f64, snr_linear: f64, emin: f64) -> f64 {
    mean_pfb_rate - loss_upper_bound(snr_linear, emin)
}

/// Derivative of [`loss_upper_bound`] in `emin`, for error propagation.
pub fn loss_bound_slope(snr_linear: f64, emin: f64) -> f64 {
    snr_linear / ((1.0 + snr_linear * emin) * std::f64::consts::LN_2)
}

/// Dominant-term flop count of one joint quantization search,
/// `2^(K B) n_r K (3 n_t + K - 1)`. Saturates at `u64::MAX`.
pub fn flop_estimate(cfg: &SystemConfig) -> u64 {
    let per_candidate =
        (cfg.n_r as u64) * (cfg.k_users as u64) * (3 * cfg.n_t as u64 + cfg.k_users as u64 - 1);
    cfg.compound_size().saturating_mul(per_candidate)
}
