//! Quick invariant checks behind the `selftest` command. These are reduced
//! versions of the acceptance tests, sized to finish in a few seconds.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::channel::SystemConfig;
use crate::codebook::generate_codebooks;
use crate::harness::{csv_string, run_sweep_with_workers, run_trials, Scheme, SweepSpec};
use crate::linalg::{normalized, orthonormalize_columns, CMat, CVec, RECONSTRUCTION_TOL};
use crate::rng::{complex_gaussian, TrialStream};
use crate::rxdesign::{interference_gram, optimal_receive_basis, residual_ici, rho_k};
use crate::theory::{
    nested_min_rho_expectation, sample_wishart, WishartSpec, DEFAULT_WISHART_DRAW_CAP,
};
use crate::txdesign::quantize_joint;

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> CheckResult {
    CheckResult {
        name,
        passed,
        detail,
    }
}

fn gaussian(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

fn unit(rng: &mut ChaCha8Rng, n: usize) -> CVec {
    normalized(&gaussian(rng, n, 1).column(0)).expect("nonzero draw")
}

fn rho_identity() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for (n_r, k) in [(3, 2), (4, 3), (5, 3)] {
        for _ in 0..100 {
            let g: Vec<CMat> = (0..k).map(|_| gaussian(&mut rng, n_r, n_r)).collect();
            let v: Vec<CVec> = (0..k).map(|_| unit(&mut rng, n_r)).collect();
            let a = interference_gram(&g, &v);
            let u = optimal_receive_basis(&a, k).expect("eigensolver");
            worst =
                worst.max((residual_ici(&u, &g, &v) - rho_k(&a, k).expect("eigensolver")).abs());
        }
    }
    check(
        "residual ICI at optimal basis equals rho_K",
        worst <= RECONSTRUCTION_TOL,
        format!("max gap {worst:.2e}"),
    )
}

fn basis_optimality() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut violations = 0;
    for _ in 0..20 {
        let g: Vec<CMat> = (0..2).map(|_| gaussian(&mut rng, 3, 3)).collect();
        let v: Vec<CVec> = (0..2).map(|_| unit(&mut rng, 3)).collect();
        let best = residual_ici(
            &optimal_receive_basis(&interference_gram(&g, &v), 2).expect("eigensolver"),
            &g,
            &v,
        );
        for _ in 0..20 {
            let u = orthonormalize_columns(&gaussian(&mut rng, 3, 2)).expect("full rank draw");
            if best > residual_ici(&u, &g, &v) + 1e-9 {
                violations += 1;
            }
        }
    }
    check(
        "optimal basis beats random bases",
        violations == 0,
        format!("{violations} violations in 400"),
    )
}

fn joint_search() -> CheckResult {
    let cfg = SystemConfig {
        n_t: 3,
        n_r: 3,
        k_users: 2,
        b_bits: 3,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut mismatches = 0;
    for trial in 0..20 {
        let cb = generate_codebooks(&cfg, TrialStream::new(3, trial));
        let cross: Vec<CMat> = (0..2).map(|_| gaussian(&mut rng, 3, 3)).collect();
        let sel = quantize_joint(&cross, &cb, 0).expect("valid config");
        let mut best = (0, f64::INFINITY);
        for m in 0..cb.compound_size() {
            let cw = cb.compound_codeword(0, m).expect("index in range");
            let obj = rho_k(&interference_gram(&cross, &cw.vectors), 2).expect("eigensolver");
            if obj < best.1 {
                best = (m, obj);
            }
        }
        if best.0 != sel.m_star {
            mismatches += 1;
        }
    }
    check(
        "joint search matches exhaustive rescan",
        mismatches == 0,
        format!("{mismatches} mismatches in 20"),
    )
}

fn paired_run() -> Vec<CheckResult> {
    let cfg = SystemConfig {
        n_t: 3,
        n_r: 3,
        k_users: 2,
        b_bits: 3,
    };
    let spec = SweepSpec::new(
        cfg,
        vec![0.0, 20.0],
        50,
        4,
        vec![Scheme::Proposed, Scheme::BaselineChordal],
    );
    let trials = match run_trials(&spec) {
        Ok(t) => t,
        Err(e) => return vec![check("paired trial run", false, e.to_string())],
    };
    let mut ici_violations = 0;
    let mut dominance_violations = 0;
    for t in &trials {
        let prop = t.scheme(Scheme::Proposed).expect("simulated");
        let base = t.scheme(Scheme::BaselineChordal).expect("simulated");
        for (p, b) in prop.cells.iter().zip(&base.cells) {
            if p.rho_k > b.rho_k {
                dominance_violations += 1;
            }
            for cell in [p, b] {
                ici_violations += cell
                    .interference
                    .iter()
                    .filter(|&&i| i > cell.residual_ici + 1e-9)
                    .count();
            }
        }
    }
    vec![
        check(
            "final ICI bounded by overall ICI",
            ici_violations == 0,
            format!("{ici_violations} violations"),
        ),
        check(
            "joint rho_K dominates chordal baseline",
            dominance_violations == 0,
            format!("{dominance_violations} violations"),
        ),
    ]
}

fn wishart() -> Vec<CheckResult> {
    let spec = WishartSpec {
        dim: 3,
        dof: 2,
        pool_bits: 6,
        trials: 200,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let draws = 4000;
    let mean_trace: f64 = (0..draws)
        .map(|_| sample_wishart(&spec, &mut rng).trace().re)
        .sum::<f64>()
        / draws as f64;
    let rel = (mean_trace - 6.0).abs() / 6.0;
    let nested = nested_min_rho_expectation(&spec, 5, DEFAULT_WISHART_DRAW_CAP);
    let monotone = nested
        .as_ref()
        .map(|n| n.windows(2).all(|w| w[1].mean <= w[0].mean))
        .unwrap_or(false);
    vec![
        check(
            "Wishart mean trace",
            rel < 0.03,
            format!("{mean_trace:.4} vs 6 ({:.2}%)", 100.0 * rel),
        ),
        check(
            "nested Wishart minima monotone",
            monotone,
            format!("{} pool sizes", nested.map(|n| n.len()).unwrap_or(0)),
        ),
    ]
}

fn determinism() -> CheckResult {
    let cfg = SystemConfig {
        n_t: 3,
        n_r: 3,
        k_users: 2,
        b_bits: 2,
    };
    let spec = SweepSpec::new(cfg, vec![0.0, 10.0], 20, 6, Scheme::ALL.to_vec());
    let one = run_sweep_with_workers(&spec, 1).map(|r| csv_string(&r));
    let many = run_sweep_with_workers(&spec, 3).map(|r| csv_string(&r));
    let same = matches!((&one, &many), (Ok(a), Ok(b)) if a == b);
    check(
        "sweep output independent of worker count",
        same,
        "1 vs 3 workers".into(),
    )
}

pub fn run_all() -> Vec<CheckResult> {
    let mut out = vec![rho_identity(), basis_optimality(), joint_search()];
    out.extend(paired_run());
    out.extend(wishart());
    out.push(determinism());
    out
}
