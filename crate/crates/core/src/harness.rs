//! Monte Carlo driver: per-trial evaluation of every scheme on a shared
//! channel and codebook draw, SNR sweeps, aggregation and CSV output.
//!
//! Trials are independent work units. Each one derives its random numbers
//! from `(seed, trial, redraw attempt)` and results are merged by trial
//! index, so output does not depend on the number of workers.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;

use crate::channel::{neighbor, sample_channels, ChannelSet, SystemConfig, CELLS};
use crate::codebook::{generate_codebooks, CodebookSet};
use crate::error::{Error, Result};
use crate::linalg::CVec;
use crate::rng::{Purpose, TrialStream};
use crate::rxdesign::{build_rx, interference_gram, optimal_receive_basis, rate_from_powers};
use crate::stats::mean_and_stderr;
use crate::theory::{
    flop_estimate, loss_bound_slope, loss_upper_bound, min_rho_expectation, MinRhoEstimate,
    WishartSpec, DEFAULT_WISHART_DRAW_CAP,
};
use crate::txdesign::{
    ideal_alignment_tb, joint_objective, quantize_chordal, quantize_joint, random_alignment_target,
    AlignmentTarget, TxSelection,
};

/// A trial is redrawn at most this many times before the run is aborted.
pub const MAX_REDRAWS: u32 = 16;
/// Default cap on `flop_estimate * cells * trials` for one sweep.
pub const DEFAULT_FLOP_CAP: u64 = 1_000_000_000_000;
pub const CSV_HEADER: &str = "scheme,snr_db,mean_sum_rate,std_err,trials,redraws";

/// Variant order is the lexicographic order of the tags, which is the CSV
/// row order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    BaselineChordal,
    /// Per-user loss bound summed over users; reported by `bound` only.
    LossUpperBound,
    LowerBound,
    PerfectFeedback,
    Proposed,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [
        Scheme::Proposed,
        Scheme::BaselineChordal,
        Scheme::PerfectFeedback,
        Scheme::LowerBound,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Scheme::Proposed => "proposed",
            Scheme::BaselineChordal => "baseline-chordal",
            Scheme::PerfectFeedback => "perfect-feedback",
            Scheme::LowerBound => "lower-bound",
            Scheme::LossUpperBound => "loss-upper-bound",
        }
    }

    /// Schemes that need the unquantized alignment construction, which only
    /// exists for square cross channels.
    pub fn needs_square(self) -> bool {
        !matches!(self, Scheme::Proposed)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|sc| sc.tag() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown scheme {s:?}")))
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub cfg: SystemConfig,
    pub snr_db: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub schemes: Vec<Scheme>,
    pub flop_cap: u64,
    pub wishart_draw_cap: u64,
}

impl SweepSpec {
    pub fn new(
        cfg: SystemConfig,
        snr_db: Vec<f64>,
        trials: u64,
        seed: u64,
        schemes: Vec<Scheme>,
    ) -> Self {
        SweepSpec {
            cfg,
            snr_db,
            trials,
            seed,
            schemes,
            flop_cap: DEFAULT_FLOP_CAP,
            wishart_draw_cap: DEFAULT_WISHART_DRAW_CAP,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.cfg.validate()?;
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.trials > crate::rng::MAX_TRIAL {
            return Err(Error::InvalidConfig("too many trials".into()));
        }
        if self.snr_db.is_empty() || self.snr_db.iter().any(|s| !s.is_finite()) {
            return Err(Error::InvalidConfig(
                "SNR list must be non-empty and finite".into(),
            ));
        }
        if self.schemes.is_empty() {
            return Err(Error::InvalidConfig("no schemes requested".into()));
        }
        if self.schemes.contains(&Scheme::LossUpperBound) {
            return Err(Error::InvalidConfig(
                "the loss bound is reported by the bound command only".into(),
            ));
        }
        if self.cfg.n_r <= self.cfg.k_users {
            return Err(Error::InvalidConfig(format!(
                "need n_r > K for a K-dimensional receive subspace (n_r={}, K={})",
                self.cfg.n_r, self.cfg.k_users
            )));
        }
        if let Some(s) = self.schemes.iter().find(|s| s.needs_square()) {
            if self.cfg.n_t != self.cfg.n_r {
                return Err(Error::InvalidConfig(format!(
                    "scheme {s} is only applicable with n_t = n_r (n_t={}, n_r={})",
                    self.cfg.n_t, self.cfg.n_r
                )));
            }
        }
        Ok(())
    }

    /// Checks the compute budget of the joint search.
    pub fn check_budget(&self) -> Result<()> {
        if self.schemes.contains(&Scheme::Proposed) {
            let needed = flop_estimate(&self.cfg)
                .saturating_mul(CELLS as u64)
                .saturating_mul(self.trials);
            if needed > self.flop_cap {
                return Err(Error::BudgetExceeded {
                    what: "joint quantization flops",
                    needed,
                    cap: self.flop_cap,
                });
            }
        }
        if self.schemes.contains(&Scheme::LowerBound) {
            let needed = (1u64 << self.cfg.compound_bits()).saturating_mul(self.trials);
            if needed > self.wishart_draw_cap {
                return Err(Error::BudgetExceeded {
                    what: "Wishart draws",
                    needed,
                    cap: self.wishart_draw_cap,
                });
            }
        }
        Ok(())
    }

    /// Non-fatal remarks about the configuration.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if !self.cfg.in_reference_regime() {
            w.push(format!(
                "configuration n_r={}, K={} is outside the validated regime K < n_r < 2K",
                self.cfg.n_r, self.cfg.k_users
            ));
        }
        w
    }

    /// Schemes that are simulated per trial. The lower bound is computed
    /// from the perfect-feedback arm, so it pulls that arm in.
    fn simulated_schemes(&self) -> Vec<Scheme> {
        let mut out: Vec<Scheme> = self
            .schemes
            .iter()
            .copied()
            .filter(|s| !matches!(s, Scheme::LowerBound | Scheme::LossUpperBound))
            .collect();
        if self.schemes.contains(&Scheme::LowerBound) && !out.contains(&Scheme::PerfectFeedback) {
            out.push(Scheme::PerfectFeedback);
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Receive-side result at one base station.
#[derive(Debug, Clone, PartialEq)]
pub struct CellOutcome {
    /// `|r_k^H U^H H_k v_k|^2` per home user.
    pub signal: Vec<f64>,
    /// Final residual interference `sum_n |r_k^H U^H G_n v_n|^2` per home user.
    pub interference: Vec<f64>,
    /// Overall residual interference `sum_n ||U^H G_n v_n||^2`.
    pub residual_ici: f64,
    /// `rho_K(A(V))` of the neighbour cell's selection (joint-search route).
    pub rho_k: f64,
    /// Fed-back compound index of the neighbour cell, when quantized.
    pub neighbor_index: Option<u64>,
    pub cond_flag: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchemeOutcome {
    pub scheme: Scheme,
    /// Indexed by base station.
    pub cells: Vec<CellOutcome>,
}

impl SchemeOutcome {
    pub fn user_rates(&self, cell: usize, snr_linear: f64) -> Vec<f64> {
        let c = &self.cells[cell];
        c.signal
            .iter()
            .zip(&c.interference)
            .map(|(&s, &i)| match self.scheme {
                Scheme::PerfectFeedback => rate_from_powers(s, 0.0, snr_linear),
                _ => rate_from_powers(s, i, snr_linear),
            })
            .collect()
    }

    pub fn cell_sum_rate(&self, cell: usize, snr_linear: f64) -> f64 {
        self.user_rates(cell, snr_linear).iter().sum()
    }

    pub fn sum_rate(&self, snr_linear: f64) -> f64 {
        (0..self.cells.len())
            .map(|c| self.cell_sum_rate(c, snr_linear))
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub trial: u64,
    pub redraws: u32,
    pub schemes: Vec<SchemeOutcome>,
}

impl TrialOutcome {
    pub fn scheme(&self, scheme: Scheme) -> Option<&SchemeOutcome> {
        self.schemes.iter().find(|s| s.scheme == scheme)
    }
}

/// Everything drawn for one attempt of one trial.
struct TrialDraw {
    channels: ChannelSet,
    codebooks: CodebookSet,
    /// Alignment target at each base station, when needed.
    targets: Option<Vec<AlignmentTarget>>,
}

impl TrialDraw {
    fn new(cfg: &SystemConfig, stream: TrialStream, with_targets: bool) -> Result<Self> {
        let channels = sample_channels(cfg, stream);
        let codebooks = generate_codebooks(cfg, stream);
        let targets = if with_targets {
            let mut rng = stream.rng(Purpose::AlignmentTarget);
            Some(
                (0..CELLS)
                    .map(|i| random_alignment_target(cfg.n_r, cfg.k_users, i, &mut rng))
                    .collect::<Result<_>>()?,
            )
        } else {
            None
        };
        Ok(TrialDraw {
            channels,
            codebooks,
            targets,
        })
    }

    /// Unquantized alignment vectors of each cell's users, aimed at the
    /// target of the neighbouring station.
    fn ideal_vectors(&self) -> Result<Vec<Vec<CVec>>> {
        let targets = self.targets.as_ref().expect("alignment targets drawn");
        (0..CELLS)
            .map(|c| ideal_alignment_tb(&self.channels.cross[c], &targets[neighbor(c)]))
            .collect()
    }

    fn receive(
        &self,
        k: usize,
        selections: &[Vec<CVec>],
        indices: [Option<u64>; CELLS],
        fixed_basis: bool,
    ) -> Result<Vec<CellOutcome>> {
        (0..CELLS)
            .map(|i| {
                let nb = neighbor(i);
                let cross = &self.channels.cross[nb];
                let u = if fixed_basis {
                    self.targets.as_ref().expect("alignment targets drawn")[i]
                        .complement
                        .clone()
                } else {
                    optimal_receive_basis(&interference_gram(cross, &selections[nb]), k)?
                };
                let rx = build_rx(
                    &u,
                    &self.channels.direct[i],
                    &selections[i],
                    cross,
                    &selections[nb],
                )?;
                Ok(CellOutcome {
                    signal: (0..k)
                        .map(|u| rx.signal_power(u, &self.channels.direct[i][u], &selections[i][u]))
                        .collect(),
                    interference: (0..k)
                        .map(|u| rx.interference_power(u, cross, &selections[nb]))
                        .collect(),
                    residual_ici: rx.residual_ici,
                    rho_k: joint_objective(cross, &selections[nb])?,
                    neighbor_index: indices[nb],
                    cond_flag: rx.cond_flag,
                })
            })
            .collect()
    }

    fn evaluate(&self, cfg: &SystemConfig, scheme: Scheme) -> Result<SchemeOutcome> {
        let k = cfg.k_users;
        let cells = match scheme {
            Scheme::Proposed | Scheme::BaselineChordal => {
                let sel: Vec<TxSelection> = if scheme == Scheme::Proposed {
                    (0..CELLS)
                        .map(|c| quantize_joint(&self.channels.cross[c], &self.codebooks, c))
                        .collect::<Result<_>>()?
                } else {
                    let ideal = self.ideal_vectors()?;
                    (0..CELLS)
                        .map(|c| quantize_chordal(&ideal[c], &self.codebooks, c))
                        .collect::<Result<_>>()?
                };
                let vectors: Vec<Vec<CVec>> = sel.iter().map(|s| s.vectors.clone()).collect();
                self.receive(
                    k,
                    &vectors,
                    [Some(sel[0].m_star), Some(sel[1].m_star)],
                    false,
                )?
            }
            Scheme::PerfectFeedback => {
                self.receive(k, &self.ideal_vectors()?, [None, None], true)?
            }
            Scheme::LowerBound | Scheme::LossUpperBound => {
                return Err(Error::InvalidConfig(format!(
                    "{scheme} is not a per-trial scheme"
                )));
            }
        };
        Ok(SchemeOutcome { scheme, cells })
    }
}

fn run_trial_for(spec: &SweepSpec, trial: u64, schemes: &[Scheme]) -> Result<TrialOutcome> {
    let with_targets = schemes.iter().any(|s| s.needs_square());
    let base = TrialStream::new(spec.seed, trial);
    for attempt in 0..=MAX_REDRAWS {
        let attempt_result = TrialDraw::new(&spec.cfg, base.redraw(attempt), with_targets)
            .and_then(|draw| {
                schemes
                    .iter()
                    .map(|&s| draw.evaluate(&spec.cfg, s))
                    .collect::<Result<Vec<_>>>()
            });
        match attempt_result {
            Ok(outcomes) => {
                return Ok(TrialOutcome {
                    trial,
                    redraws: attempt,
                    schemes: outcomes,
                })
            }
            // one degenerate scheme redraws the trial for all of them, keeping the comparison paired
            Err(e) if e.is_redraw_signal() => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::DegenerateRun {
        trial,
        redraws: MAX_REDRAWS,
    })
}

/// Every simulated scheme of `spec` on the shared draw of `trial`.
pub fn run_trial_paired(spec: &SweepSpec, trial: u64) -> Result<TrialOutcome> {
    run_trial_for(spec, trial, &spec.simulated_schemes())
}

/// Per-cell outcome of one scheme at one trial. The redraw decision is
/// shared with the other schemes of `spec`, so results pair up with
/// [`run_trial_paired`].
pub fn run_trial(spec: &SweepSpec, trial: u64, scheme: Scheme) -> Result<SchemeOutcome> {
    if matches!(scheme, Scheme::LowerBound | Scheme::LossUpperBound) {
        return Err(Error::InvalidConfig(format!(
            "{scheme} is not a per-trial scheme"
        )));
    }
    let mut schemes = spec.simulated_schemes();
    if !schemes.contains(&scheme) {
        schemes.push(scheme);
        schemes.sort();
    }
    let out = run_trial_for(spec, trial, &schemes)?;
    Ok(out
        .schemes
        .into_iter()
        .find(|s| s.scheme == scheme)
        .expect("requested scheme evaluated"))
}

/// All trials of a sweep, ordered by trial index.
pub fn run_trials(spec: &SweepSpec) -> Result<Vec<TrialOutcome>> {
    spec.validate()?;
    spec.check_budget()?;
    let schemes = spec.simulated_schemes();
    (0..spec.trials)
        .into_par_iter()
        .map(|t| run_trial_for(spec, t, &schemes))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub scheme: Scheme,
    pub snr_db: f64,
    /// Bits per channel use, summed over both cells and all users.
    pub mean_sum_rate: f64,
    pub std_err: f64,
    pub trials: u64,
    pub redraws: u64,
}

/// Averages trial outcomes into one record per (scheme, SNR), sorted by
/// scheme tag then SNR. `emin` is required when the lower bound is
/// requested.
pub fn aggregate(
    spec: &SweepSpec,
    outcomes: &[TrialOutcome],
    emin: Option<&MinRhoEstimate>,
) -> Result<Vec<SweepRecord>> {
    let redraws: u64 = outcomes.iter().map(|o| u64::from(o.redraws)).sum();
    let users = (CELLS * spec.cfg.k_users) as f64;
    let mut schemes = spec.schemes.clone();
    schemes.sort();
    schemes.dedup();
    let mut records = Vec::new();
    for &scheme in &schemes {
        let mut snrs = spec.snr_db.clone();
        snrs.sort_by(f64::total_cmp);
        snrs.dedup();
        for snr_db in snrs {
            let snr = db_to_linear(snr_db);
            let arm = if scheme == Scheme::LowerBound {
                Scheme::PerfectFeedback
            } else {
                scheme
            };
            let samples: Vec<f64> = outcomes
                .iter()
                .map(|o| o.scheme(arm).expect("arm simulated").sum_rate(snr))
                .collect();
            let (mean, std_err) = mean_and_stderr(&samples);
            let (mean, std_err) = if scheme == Scheme::LowerBound {
                let e = emin.ok_or_else(|| {
                    Error::InvalidConfig("lower bound requested without Wishart estimate".into())
                })?;
                let lb = users * crate::theory::rate_lower_bound(mean / users, snr, e.mean);
                let se_loss = users * loss_bound_slope(snr, e.mean) * e.std_err;
                // a negative bound is vacuous: rates are non-negative
                (lb.max(0.0), std_err.hypot(se_loss))
            } else {
                (mean, std_err)
            };
            records.push(SweepRecord {
                scheme,
                snr_db,
                mean_sum_rate: mean,
                std_err,
                trials: samples.len() as u64,
                redraws,
            });
        }
    }
    Ok(records)
}

/// The Wishart estimate backing the lower bound of `spec`.
pub fn lower_bound_emin(spec: &SweepSpec) -> Result<MinRhoEstimate> {
    min_rho_expectation(
        &WishartSpec::for_config(&spec.cfg, spec.trials)?,
        spec.seed,
        spec.wishart_draw_cap,
    )
}

/// Runs the whole sweep on the current rayon pool.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRecord>> {
    let outcomes = run_trials(spec)?;
    let emin = if spec.schemes.contains(&Scheme::LowerBound) {
        Some(lower_bound_emin(spec)?)
    } else {
        None
    };
    aggregate(spec, &outcomes, emin.as_ref())
}

/// Runs the sweep on a dedicated pool of `workers` threads.
pub fn run_sweep_with_workers(spec: &SweepSpec, workers: usize) -> Result<Vec<SweepRecord>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    pool.install(|| run_sweep(spec))
}

/// Loss and rate bounds for the `bound` command: the simulated perfect
/// feedback arm, the per-user loss bound summed over all users, and the
/// resulting lower bound on the sum rate.
pub fn bound_curves(spec: &SweepSpec) -> Result<Vec<SweepRecord>> {
    let mut lb_spec = spec.clone();
    lb_spec.schemes = vec![Scheme::PerfectFeedback, Scheme::LowerBound];
    let mut records = run_sweep(&lb_spec)?;
    let emin = lower_bound_emin(&lb_spec)?;
    let users = (CELLS * spec.cfg.k_users) as f64;
    let redraws = records.first().map(|r| r.redraws).unwrap_or(0);
    for &snr_db in &spec.snr_db {
        let snr = db_to_linear(snr_db);
        records.push(SweepRecord {
            scheme: Scheme::LossUpperBound,
            snr_db,
            mean_sum_rate: users * loss_upper_bound(snr, emin.mean),
            std_err: users * loss_bound_slope(snr, emin.mean) * emin.std_err,
            trials: spec.trials,
            redraws,
        });
    }
    Ok(records)
}

/// Formats `x` with ten significant digits in positional notation.
pub fn format_sig10(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 {
            "0.000000000".to_string()
        } else {
            x.to_string()
        };
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (9 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn write_csv<W: Write>(records: &[SweepRecord], mut out: W) -> io::Result<()> {
    let mut rows: Vec<&SweepRecord> = records.iter().collect();
    rows.sort_by(|a, b| {
        a.scheme
            .tag()
            .cmp(b.scheme.tag())
            .then(a.snr_db.total_cmp(&b.snr_db))
    });
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.scheme.tag(),
            format_sig10(r.snr_db),
            format_sig10(r.mean_sum_rate),
            format_sig10(r.std_err),
            r.trials,
            r.redraws
        )?;
    }
    Ok(())
}

pub fn csv_string(records: &[SweepRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(records, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ASCII output")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(schemes: Vec<Scheme>) -> SweepSpec {
        SweepSpec::new(
            SystemConfig::new(3, 3, 2, 2).unwrap(),
            vec![0.0, 10.0, 20.0],
            8,
            1,
            schemes,
        )
    }

    #[test]
    fn scheme_tags_round_trip() {
        for s in Scheme::ALL {
            assert_eq!(s.tag().parse::<Scheme>().unwrap(), s);
        }
        assert!("zf".parse::<Scheme>().is_err());
        let mut tags: Vec<&str> = Scheme::ALL.iter().map(|s| s.tag()).collect();
        let mut sorted = Scheme::ALL.to_vec();
        sorted.sort();
        tags.sort();
        assert_eq!(tags, sorted.iter().map(|s| s.tag()).collect::<Vec<_>>());
    }

    #[test]
    fn sig10_formatting() {
        assert_eq!(format_sig10(0.0), "0.000000000");
        assert_eq!(format_sig10(5.0), "5.000000000");
        assert_eq!(format_sig10(12.3456789012), "12.34567890");
        assert_eq!(format_sig10(0.001234), "0.001234000000");
        assert_eq!(format_sig10(-5.0), "-5.000000000");
    }

    #[test]
    fn validation() {
        let mut s = spec(vec![Scheme::Proposed]);
        assert!(s.validate().is_ok());
        s.trials = 0;
        assert!(s.validate().is_err());
        let mut s = spec(vec![Scheme::BaselineChordal]);
        s.cfg = SystemConfig::new(2, 3, 2, 2).unwrap();
        assert!(matches!(s.validate(), Err(Error::InvalidConfig(_))));
        let mut s = spec(vec![Scheme::Proposed]);
        s.snr_db.clear();
        assert!(s.validate().is_err());
    }

    #[test]
    fn budget() {
        let mut s = spec(vec![Scheme::Proposed]);
        s.flop_cap = 10;
        assert!(matches!(run_sweep(&s), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn perfect_feedback_has_no_interference() {
        let s = spec(vec![Scheme::PerfectFeedback]);
        for t in 0..8 {
            let out = run_trial(&s, t, Scheme::PerfectFeedback).unwrap();
            for cell in &out.cells {
                assert!(cell.interference.iter().all(|&i| i <= 1e-9));
                assert!(cell.residual_ici <= 1e-9);
            }
        }
    }

    #[test]
    fn outcome_shape() {
        let s = spec(vec![Scheme::Proposed]);
        let out = run_trial(&s, 0, Scheme::Proposed).unwrap();
        assert_eq!(out.cells.len(), 2);
        for c in 0..2 {
            let rates = out.user_rates(c, 10.0);
            assert_eq!(rates.len(), 2);
            assert!(rates.iter().all(|r| r.is_finite() && *r >= 0.0));
        }
        assert!(run_trial(&s, 0, Scheme::LowerBound).is_err());
    }

    #[test]
    fn single_trial_has_zero_stderr() {
        let mut s = spec(vec![Scheme::Proposed]);
        s.trials = 1;
        let recs = run_sweep(&s).unwrap();
        assert!(recs.iter().all(|r| r.std_err == 0.0 && r.trials == 1));
    }

    #[test]
    fn records_sorted_and_complete() {
        let s = spec(vec![
            Scheme::Proposed,
            Scheme::LowerBound,
            Scheme::BaselineChordal,
        ]);
        let recs = run_sweep(&s).unwrap();
        assert_eq!(recs.len(), 9);
        let csv = csv_string(&recs);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert!(lines[1].starts_with("baseline-chordal,0.000000000,"));
        assert!(lines[4].starts_with("lower-bound,"));
        assert!(lines[9].starts_with("proposed,20.00000000,"));
    }
}
