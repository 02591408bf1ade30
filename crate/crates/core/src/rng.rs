//! Counter-style random substreams.
//!
//! Every random quantity of a trial comes from its own ChaCha stream keyed
//! by the run seed and addressed by `(trial, redraw attempt, purpose)`.
//! A trial therefore draws the same numbers no matter which worker runs it
//! or in which order trials complete.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Largest trial index representable in the stream address.
pub const MAX_TRIAL: u64 = (1 << 52) - 1;
/// Largest redraw attempt representable in the stream address.
pub const MAX_ATTEMPT: u32 = 255;

/// What a substream is used for. Part of the stream address.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Purpose {
    Channel = 1,
    Codebook = 2,
    AlignmentTarget = 3,
    Wishart = 4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TrialStream {
    pub seed: u64,
    pub trial: u64,
    pub attempt: u32,
}

impl TrialStream {
    pub fn new(seed: u64, trial: u64) -> Self {
        TrialStream {
            seed,
            trial,
            attempt: 0,
        }
    }

    /// Same trial, fresh numbers: used when a draw turns out degenerate.
    pub fn redraw(self, attempt: u32) -> Self {
        TrialStream { attempt, ..self }
    }

    fn stream_id(&self, purpose: Purpose) -> u64 {
        assert!(
            self.trial <= MAX_TRIAL,
            "trial index {} exceeds 2^52",
            self.trial
        );
        assert!(
            self.attempt <= MAX_ATTEMPT,
            "redraw attempt {} exceeds {}",
            self.attempt,
            MAX_ATTEMPT
        );
        (self.trial << 12) | (u64::from(self.attempt) << 4) | purpose as u64
    }

    pub fn rng(&self, purpose: Purpose) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id(purpose));
        rng
    }
}

/// One CN(0, 1) sample: independent real and imaginary parts of variance 1/2.
#[inline]
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2)
}
