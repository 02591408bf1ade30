//! System configuration and per-trial channel generation.

use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::rng::{complex_gaussian, Purpose, TrialStream};

/// Number of cells. The scheme is defined for a pair of interfering cells.
pub const CELLS: usize = 2;

/// Largest per-user codebook exponent accepted. Codebooks are materialised,
/// so `2^B` vectors must fit in memory.
pub const MAX_B_BITS: u32 = 20;
/// Largest total compound index width `K * B`.
pub const MAX_COMPOUND_BITS: u32 = 62;

#[inline]
pub fn neighbor(cell: usize) -> usize {
    debug_assert!(cell < CELLS);
    1 - cell
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SystemConfig {
    /// Antennas per user.
    pub n_t: usize,
    /// Antennas per base station.
    pub n_r: usize,
    /// Users per cell.
    pub k_users: usize,
    /// Feedback bits per user.
    pub b_bits: u32,
}

impl SystemConfig {
    pub fn new(n_t: usize, n_r: usize, k_users: usize, b_bits: u32) -> Result<Self> {
        let cfg = SystemConfig {
            n_t,
            n_r,
            k_users,
            b_bits,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_t == 0 || self.n_r == 0 || self.k_users == 0 {
            return Err(Error::InvalidConfig(format!(
                "antenna and user counts must be positive (n_t={}, n_r={}, k={})",
                self.n_t, self.n_r, self.k_users
            )));
        }
        if self.b_bits == 0 || self.b_bits > MAX_B_BITS {
            return Err(Error::InvalidConfig(format!(
                "b_bits must be in 1..={MAX_B_BITS}, got {}",
                self.b_bits
            )));
        }
        if self.compound_bits() > u64::from(MAX_COMPOUND_BITS) {
            return Err(Error::InvalidConfig(format!(
                "K*B = {} exceeds {MAX_COMPOUND_BITS} bits",
                self.compound_bits()
            )));
        }
        Ok(())
    }

    /// `K < n_r < 2K`: the antenna regime the scheme was analysed for. Other
    /// configurations run fine but are outside the validated range.
    pub fn in_reference_regime(&self) -> bool {
        self.k_users < self.n_r && self.n_r < 2 * self.k_users
    }

    /// Feedback bits per cell, `K * B`.
    pub fn compound_bits(&self) -> u64 {
        self.k_users as u64 * u64::from(self.b_bits)
    }

    /// Codewords per user, `2^B`.
    pub fn codebook_size(&self) -> usize {
        1usize << self.b_bits
    }

    /// Compound codewords per cell, `2^(K B)`.
    pub fn compound_size(&self) -> u64 {
        1u64 << self.compound_bits()
    }
}

/// All channel matrices of one trial, indexed `[cell][user]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSet {
    /// `H_{i,k}`: user `k` of cell `i` to its home base station.
    pub direct: Vec<Vec<CMat>>,
    /// `G_{i,k}`: user `k` of cell `i` to the neighbouring base station.
    pub cross: Vec<Vec<CMat>>,
}

/// Draws every direct and cross channel with i.i.d. CN(0, 1) entries.
pub fn sample_channels(cfg: &SystemConfig, stream: TrialStream) -> ChannelSet {
    let mut rng = stream.rng(Purpose::Channel);
    let mut draw = || {
        (0..CELLS)
            .map(|_| {
                (0..cfg.k_users)
                    .map(|_| CMat::from_fn(cfg.n_r, cfg.n_t, |_, _| complex_gaussian(&mut rng)))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
    };
    let direct = draw();
    let cross = draw();
    ChannelSet { direct, cross }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(SystemConfig::new(3, 3, 2, 4).is_ok());
        assert!(SystemConfig::new(0, 3, 2, 4).is_err());
        assert!(SystemConfig::new(3, 3, 2, 0).is_err());
        assert!(SystemConfig::new(3, 3, 4, 16).is_err());
        assert!(SystemConfig::new(3, 3, 2, 4).unwrap().in_reference_regime());
        assert!(!SystemConfig::new(3, 4, 2, 4).unwrap().in_reference_regime());
    }

    #[test]
    fn deterministic_per_trial() {
        let cfg = SystemConfig::new(2, 3, 2, 2).unwrap();
        let a = sample_channels(&cfg, TrialStream::new(7, 3));
        let b = sample_channels(&cfg, TrialStream::new(7, 3));
        assert_eq!(a, b);
        let c = sample_channels(&cfg, TrialStream::new(7, 4));
        assert_ne!(a, c);
    }

    #[test]
    fn shapes() {
        let cfg = SystemConfig::new(2, 3, 2, 2).unwrap();
        let ch = sample_channels(&cfg, TrialStream::new(1, 0));
        for set in [&ch.direct, &ch.cross] {
            assert_eq!(set.len(), 2);
            for cell in set {
                assert_eq!(cell.len(), 2);
                assert!(cell.iter().all(|m| m.rows() == 3 && m.cols() == 2));
            }
        }
    }
}
