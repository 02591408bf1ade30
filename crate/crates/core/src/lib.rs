//! Limited-feedback interference alignment for the two-cell interfering
//! multi-access channel.
//!
//! Each base station picks the beamformers of the neighbouring cell's users
//! from a compound random codebook so that the interference left inside its
//! `K`-dimensional receive subspace is as small as possible, then feeds back
//! a single `K B`-bit index. The crate provides the quantizers, the receive
//! chain, a Wishart-based bound on the throughput loss and a Monte Carlo
//! harness comparing the scheme with a chordal-distance baseline and with
//! perfect alignment.

pub mod channel;
pub mod codebook;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod rng;
pub mod rxdesign;
pub mod selftest;
pub mod stats;
pub mod theory;
pub mod txdesign;

pub use channel::{sample_channels, ChannelSet, SystemConfig};
pub use codebook::{compound_codeword, generate_codebooks, CodebookSet, CompoundCodeword};
pub use error::{Error, Result};
pub use harness::{run_sweep, run_trial, Scheme, SweepRecord, SweepSpec};
pub use linalg::{CMat, CVec, EigPairs};
pub use rng::TrialStream;
pub use rxdesign::RxDesign;
pub use txdesign::{AlignmentTarget, TxSelection};
