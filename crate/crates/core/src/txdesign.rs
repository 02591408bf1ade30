//! Transmit beamformer selection.
//!
//! Three ways to pick the vectors the users of one cell transmit with, all
//! judged by the interference they cause at the neighbouring base station:
//!
//! * [`quantize_joint`]: exhaustive search of the compound codebook for the
//!   entry with the least residual interference `rho_K(A(V))`.
//! * [`quantize_chordal`]: per-user nearest codeword (chordal distance) to an
//!   ideal alignment vector. This is the conventional baseline.
//! * [`ideal_alignment_tb`]: unquantized vectors that squeeze all
//!   interference into a fixed `(n_r - K)`-dimensional subspace.

use num_complex::Complex64;
use rand::Rng;

use crate::codebook::{decode_compound, encode_compound, CodebookSet};
use crate::error::{Error, Result};
use crate::linalg::{
    dot, eigenvalues_into, invert, normalized, orthonormalize_columns, CMat, CVec,
};
use crate::rng::complex_gaussian;

#[derive(Debug, Clone, PartialEq)]
pub struct TxSelection {
    pub cell: usize,
    /// Compound index fed back to the users of `cell` (zero-based).
    pub m_star: u64,
    /// Per-user codeword index.
    pub digits: Vec<usize>,
    pub vectors: Vec<CVec>,
    /// Achieved `rho_K`; only the joint quantizer optimises it.
    pub objective: Option<f64>,
}

/// Reference interference subspace at a victim base station.
#[derive(Debug, Clone, PartialEq)]
pub struct AlignmentTarget {
    pub cell: usize,
    /// `n_r x (n_r - K)`, orthonormal columns.
    pub basis: CMat,
    /// Orthonormal complement of `basis`, `n_r x K`: the interference-free
    /// receive subspace.
    pub complement: CMat,
}

/// Scratch space for repeated objective evaluations.
struct ObjectiveWork {
    gram: Vec<Complex64>,
    eig: Vec<f64>,
}

impl ObjectiveWork {
    fn new(k: usize) -> Self {
        ObjectiveWork {
            gram: vec![Complex64::new(0.0, 0.0); k * k],
            eig: vec![0.0; k],
        }
    }

    /// `rho_K(Y Y^H)` for the received interference vectors `y`, computed
    /// through the `K x K` Gram `Y^H Y`. `Y Y^H` shares its nonzero spectrum
    /// with `Y^H Y` and adds `n_r - K` zeros, so the `K` smallest eigenvalues
    /// of `Y Y^H` sum to the `2K - n_r` smallest of `Y^H Y`.
    fn rho(&mut self, y: &[&CVec], n_r: usize) -> Result<f64> {
        let k = y.len();
        let keep = (2 * k).saturating_sub(n_r);
        if keep == 0 {
            return Ok(0.0);
        }
        for a in 0..k {
            self.gram[a * k + a] = Complex64::new(crate::linalg::norm_sq(y[a]), 0.0);
            for b in a + 1..k {
                let ip = dot(y[a], y[b]);
                self.gram[a * k + b] = ip;
                self.gram[b * k + a] = ip.conj();
            }
        }
        eigenvalues_into(&mut self.gram, k, &mut self.eig)?;
        Ok(self.eig[..keep].iter().sum::<f64>().max(0.0))
    }
}

fn check_joint_pre(cross: &[CMat]) -> Result<usize> {
    let k = cross.len();
    let n_r = cross.first().map(CMat::rows).unwrap_or(0);
    if k == 0 || n_r <= k {
        return Err(Error::InvalidConfig(format!(
            "joint quantization needs n_r > K >= 1 (n_r={n_r}, K={k})"
        )));
    }
    Ok(n_r)
}

/// Residual interference `rho_K(A(V))` that the beamformers `v` of the
/// interfering users leave at the victim station, after the optimal receive
/// basis. Same numerical route as the search in [`quantize_joint`].
pub fn joint_objective(cross: &[CMat], v: &[CVec]) -> Result<f64> {
    let n_r = check_joint_pre(cross)?;
    let y: Vec<CVec> = cross.iter().zip(v).map(|(g, v)| g.mul_vec(v)).collect();
    let refs: Vec<&CVec> = y.iter().collect();
    ObjectiveWork::new(cross.len()).rho(&refs, n_r)
}

/// Joint quantization over the compound codebook of `cell`.
///
/// `cross[n]` is the channel from user `n` of `cell` to the neighbouring
/// station. Returns the compound codeword minimising `rho_K`, lowest index
/// on ties.
pub fn quantize_joint(cross: &[CMat], cb: &CodebookSet, cell: usize) -> Result<TxSelection> {
    let n_r = check_joint_pre(cross)?;
    let k = cross.len();
    if k != cb.k_users() {
        return Err(Error::InvalidConfig(format!(
            "{k} cross channels for {} codebook users",
            cb.k_users()
        )));
    }
    // Every candidate vector as seen by the victim station.
    let received: Vec<Vec<CVec>> = (0..k)
        .map(|n| {
            cb.user_book(cell, n)
                .iter()
                .map(|c| cross[n].mul_vec(c))
                .collect()
        })
        .collect();

    let size = cb.size();
    let mut work = ObjectiveWork::new(k);
    let mut digits = vec![0usize; k];
    let mut best = (0u64, f64::INFINITY);
    for m in 0..cb.compound_size() {
        let y: Vec<&CVec> = digits
            .iter()
            .enumerate()
            .map(|(n, &d)| &received[n][d])
            .collect();
        let obj = work.rho(&y, n_r)?;
        if obj < best.1 {
            best = (m, obj);
        }
        // odometer increment, user 0 fastest
        for d in digits.iter_mut() {
            *d += 1;
            if *d < size {
                break;
            }
            *d = 0;
        }
    }
    let digits = decode_compound(best.0, cb.b_bits(), k);
    let vectors = digits
        .iter()
        .enumerate()
        .map(|(n, &d)| cb.codeword(cell, n, d).clone())
        .collect();
    Ok(TxSelection {
        cell,
        m_star: best.0,
        digits,
        vectors,
        objective: Some(best.1),
    })
}

/// `sqrt(1 - |a^H b|^2)` for unit vectors.
pub fn chordal_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    (1.0 - dot(a, b).norm_sqr()).max(0.0).sqrt()
}

/// Per-user minimum chordal distance quantization of the `ideal` vectors.
pub fn quantize_chordal(ideal: &[CVec], cb: &CodebookSet, cell: usize) -> Result<TxSelection> {
    if ideal.len() != cb.k_users() {
        return Err(Error::InvalidConfig(format!(
            "{} ideal vectors for {} users",
            ideal.len(),
            cb.k_users()
        )));
    }
    let digits: Vec<usize> = ideal
        .iter()
        .enumerate()
        .map(|(n, target)| {
            let mut best = (0usize, f64::NEG_INFINITY);
            for (idx, c) in cb.user_book(cell, n).iter().enumerate() {
                let overlap = dot(c, target).norm();
                if overlap > best.1 {
                    best = (idx, overlap);
                }
            }
            best.0
        })
        .collect();
    let vectors = digits
        .iter()
        .enumerate()
        .map(|(n, &d)| cb.codeword(cell, n, d).clone())
        .collect();
    Ok(TxSelection {
        cell,
        m_star: encode_compound(&digits, cb.b_bits()),
        digits,
        vectors,
        objective: None,
    })
}

/// Draws a uniformly oriented target: a random unitary split into an
/// `(n_r - K)`-column interference basis and its `K`-column complement.
pub fn random_alignment_target<R: Rng + ?Sized>(
    n_r: usize,
    k: usize,
    cell: usize,
    rng: &mut R,
) -> Result<AlignmentTarget> {
    if k == 0 || k >= n_r {
        return Err(Error::InvalidConfig(format!(
            "alignment target needs 0 < K < n_r (K={k}, n_r={n_r})"
        )));
    }
    let q = loop {
        let raw = CMat::from_fn(n_r, n_r, |_, _| complex_gaussian(rng));
        if let Ok(q) = orthonormalize_columns(&raw) {
            break q;
        }
    };
    Ok(AlignmentTarget {
        cell,
        basis: q.column_range(0, n_r - k),
        complement: q.column_range(n_r - k, n_r),
    })
}

/// Unquantized alignment: `v_n = normalize(G_n^{-1} w_n)`, with users
/// assigned round-robin to the columns `w` of the target basis, so every
/// `G_n v_n` lands inside the target subspace.
pub fn ideal_alignment_tb(cross: &[CMat], target: &AlignmentTarget) -> Result<Vec<CVec>> {
    let dims = target.basis.cols();
    cross
        .iter()
        .enumerate()
        .map(|(n, g)| {
            if !g.is_square() {
                return Err(Error::InvalidConfig(format!(
                    "ideal alignment needs square cross channels (n_t = n_r), got {}x{}",
                    g.rows(),
                    g.cols()
                )));
            }
            let w = target.basis.column(n % dims);
            let raw = invert(g)?.mul_vec(&w);
            normalized(&raw).ok_or(Error::Singular { rcond: 0.0 })
        })
        .collect()
}
