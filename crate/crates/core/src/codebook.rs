//! Random vector quantization codebooks and the compound-codeword view.
//!
//! Each user owns `2^B` unit vectors. A compound codeword picks one codeword
//! per user of a cell; the `2^(K B)` compound codewords are the Cartesian
//! product of the per-user books, addressed by a single `K B`-bit index in
//! which user 0 occupies the least-significant `B` bits.

use crate::channel::{SystemConfig, CELLS};
use crate::error::{Error, Result};
use crate::linalg::{norm_sq, normalized, CVec};
use crate::rng::{complex_gaussian, Purpose, TrialStream};

/// Unit-norm tolerance for codewords.
pub const UNIT_NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct CodebookSet {
    b_bits: u32,
    /// `[cell][user][codeword]`
    books: Vec<Vec<Vec<CVec>>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompoundCodeword {
    pub cell: usize,
    /// Zero-based compound index, `0..2^(K B)`.
    pub m: u64,
    /// Per-user codeword index, `0..2^B`.
    pub digits: Vec<usize>,
    pub vectors: Vec<CVec>,
}

/// Splits a compound index into per-user codeword indices.
pub fn decode_compound(m: u64, b_bits: u32, k_users: usize) -> Vec<usize> {
    let mask = (1u64 << b_bits) - 1;
    (0..k_users)
        .map(|n| ((m >> (n as u32 * b_bits)) & mask) as usize)
        .collect()
}

/// Inverse of [`decode_compound`].
pub fn encode_compound(digits: &[usize], b_bits: u32) -> u64 {
    digits.iter().enumerate().fold(0u64, |acc, (n, &d)| {
        debug_assert!((d as u64) < (1u64 << b_bits));
        acc | ((d as u64) << (n as u32 * b_bits))
    })
}

impl CodebookSet {
    /// Wraps explicit codebooks `[cell][user][codeword]`. Every user must
    /// hold `2^b_bits` unit vectors of a common length.
    pub fn from_books(b_bits: u32, books: Vec<Vec<Vec<CVec>>>) -> Result<Self> {
        if books.len() != CELLS {
            return Err(Error::InvalidConfig(format!(
                "expected {CELLS} cells of codebooks, got {}",
                books.len()
            )));
        }
        let k = books[0].len();
        let size = 1usize << b_bits;
        let dim = books[0]
            .first()
            .and_then(|u| u.first())
            .map(Vec::len)
            .unwrap_or(0);
        for cell in &books {
            if cell.len() != k || k == 0 {
                return Err(Error::InvalidConfig(
                    "every cell needs the same positive user count".into(),
                ));
            }
            for user in cell {
                if user.len() != size {
                    return Err(Error::InvalidConfig(format!(
                        "codebook has {} entries, expected {size}",
                        user.len()
                    )));
                }
                for w in user {
                    if w.len() != dim || (norm_sq(w).sqrt() - 1.0).abs() > UNIT_NORM_TOL {
                        return Err(Error::InvalidConfig(
                            "codewords must be unit vectors of equal length".into(),
                        ));
                    }
                }
            }
        }
        Ok(CodebookSet { b_bits, books })
    }

    pub fn b_bits(&self) -> u32 {
        self.b_bits
    }

    pub fn k_users(&self) -> usize {
        self.books[0].len()
    }

    pub fn size(&self) -> usize {
        1usize << self.b_bits
    }

    pub fn compound_size(&self) -> u64 {
        1u64 << (self.b_bits as u64 * self.k_users() as u64)
    }

    /// Codebook of one user.
    pub fn user_book(&self, cell: usize, user: usize) -> &[CVec] {
        &self.books[cell][user]
    }

    pub fn codeword(&self, cell: usize, user: usize, index: usize) -> &CVec {
        &self.books[cell][user][index]
    }

    pub fn compound_codeword(&self, cell: usize, m: u64) -> Result<CompoundCodeword> {
        compound_codeword(self, cell, m)
    }
}

/// Fresh random codebooks: each codeword is a normalised vector of i.i.d.
/// CN(0, 1) entries, i.e. uniform on the complex unit sphere.
pub fn generate_codebooks(cfg: &SystemConfig, stream: TrialStream) -> CodebookSet {
    let mut rng = stream.rng(Purpose::Codebook);
    let books = (0..CELLS)
        .map(|_| {
            (0..cfg.k_users)
                .map(|_| {
                    (0..cfg.codebook_size())
                        .map(|_| loop {
                            let raw: CVec =
                                (0..cfg.n_t).map(|_| complex_gaussian(&mut rng)).collect();
                            if let Some(unit) = normalized(&raw) {
                                break unit;
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    CodebookSet {
        b_bits: cfg.b_bits,
        books,
    }
}

/// The `m`-th compound codeword of `cell`.
pub fn compound_codeword(cb: &CodebookSet, cell: usize, m: u64) -> Result<CompoundCodeword> {
    if cell >= CELLS {
        return Err(Error::IndexOutOfRange {
            index: cell as u64,
            size: CELLS as u64,
        });
    }
    let size = cb.compound_size();
    if m >= size {
        return Err(Error::IndexOutOfRange { index: m, size });
    }
    let digits = decode_compound(m, cb.b_bits, cb.k_users());
    let vectors = digits
        .iter()
        .enumerate()
        .map(|(n, &d)| cb.books[cell][n][d].clone())
        .collect();
    Ok(CompoundCodeword {
        cell,
        m,
        digits,
        vectors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn cfg(n_t: usize, k: usize, b: u32) -> SystemConfig {
        SystemConfig::new(n_t, k + 1, k, b).unwrap()
    }

    #[test]
    fn counts_and_norms() {
        let cb = generate_codebooks(&cfg(3, 2, 2), TrialStream::new(1, 0));
        for cell in 0..CELLS {
            for user in 0..2 {
                let book = cb.user_book(cell, user);
                assert_eq!(book.len(), 4);
                for w in book {
                    assert_eq!(w.len(), 3);
                    assert!((norm_sq(w).sqrt() - 1.0).abs() <= UNIT_NORM_TOL);
                }
            }
        }
    }

    #[test]
    fn no_duplicate_codewords() {
        for trial in 0..50 {
            let cb = generate_codebooks(&cfg(2, 2, 4), TrialStream::new(3, trial));
            let book = cb.user_book(0, 1);
            for a in 0..book.len() {
                for b in a + 1..book.len() {
                    let overlap = crate::linalg::dot(&book[a], &book[b]).norm();
                    assert!(overlap < 1.0 - 1e-9);
                }
            }
        }
    }

    #[test]
    fn first_and_last_compound() {
        let cb = generate_codebooks(&cfg(2, 2, 1), TrialStream::new(2, 0));
        let first = compound_codeword(&cb, 0, 0).unwrap();
        assert_eq!(first.digits, vec![0, 0]);
        assert_eq!(&first.vectors[0], cb.codeword(0, 0, 0));
        assert_eq!(&first.vectors[1], cb.codeword(0, 1, 0));
        let last = compound_codeword(&cb, 0, 3).unwrap();
        assert_eq!(last.digits, vec![1, 1]);
        assert_eq!(&last.vectors[1], cb.codeword(0, 1, 1));
        assert!(matches!(
            compound_codeword(&cb, 0, 4),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            compound_codeword(&cb, 2, 0),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn user_zero_is_least_significant() {
        assert_eq!(decode_compound(1, 2, 2), vec![1, 0]);
        assert_eq!(decode_compound(4, 2, 2), vec![0, 1]);
    }

    #[test]
    fn compound_enumeration_is_a_bijection() {
        let cb = generate_codebooks(&cfg(2, 2, 2), TrialStream::new(4, 0));
        let mut pairs = HashSet::new();
        for m in 0..16 {
            let cw = compound_codeword(&cb, 1, m).unwrap();
            assert!(pairs.insert((cw.digits[0], cw.digits[1])));
        }
        assert_eq!(pairs.len(), 16);
    }

    #[test]
    fn encode_decode_exhaustive() {
        for k in 1..=4usize {
            for b in 1..=(12 / k as u32) {
                for m in 0..(1u64 << (k as u32 * b)) {
                    assert_eq!(encode_compound(&decode_compound(m, b, k), b), m);
                }
            }
        }
    }
}
