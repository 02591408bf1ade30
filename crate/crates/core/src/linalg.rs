//! Small dense complex linear algebra.
//!
//! Everything here works on matrices of a handful of rows (antenna counts),
//! so the routines favour accuracy and simplicity over blocking: a cyclic
//! Jacobi solver for Hermitian eigenproblems, Gauss-Jordan inversion with
//! partial pivoting and modified Gram-Schmidt.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Symmetry and orthonormality tolerance.
pub const HERMITIAN_TOL: f64 = 1e-9;
/// Tolerance for reconstruction and eigen-residual checks.
pub const RECONSTRUCTION_TOL: f64 = 1e-7;
/// Reciprocal condition number below which a matrix counts as singular.
pub const RCOND_MIN: f64 = 1e-12;

const MAX_SWEEPS: usize = 64;

pub type CVec = Vec<Complex64>;

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMat {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix must be at least 1x1");
        assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
        CMat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_vec(rows, cols, vec![Complex64::new(0.0, 0.0); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self::from_vec(rows, cols, data)
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |r, c| {
            if r == c {
                Complex64::new(diag[r], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[CVec]) -> Self {
        assert!(!columns.is_empty());
        let rows = columns[0].len();
        assert!(
            columns.iter().all(|c| c.len() == rows),
            "columns must share a length"
        );
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r])
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, c: usize) -> CVec {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn row(&self, r: usize) -> CVec {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    /// Columns `start..end` as a new matrix.
    pub fn column_range(&self, start: usize, end: usize) -> CMat {
        assert!(start < end && end <= self.cols);
        CMat::from_fn(self.rows, end - start, |r, c| self[(r, start + c)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn matmul(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..rhs.cols {
                    out.data[r * rhs.cols + c] += a * rhs[(k, c)];
                }
            }
        }
        out
    }

    /// `self^H * rhs` without materialising the adjoint.
    pub fn adjoint_mul(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.rows, rhs.rows, "row counts must agree");
        CMat::from_fn(self.cols, rhs.cols, |r, c| {
            (0..self.rows)
                .map(|k| self[(k, r)].conj() * rhs[(k, c)])
                .sum()
        })
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> CVec {
        assert_eq!(self.cols, v.len(), "vector length must equal column count");
        (0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `self^H * v`.
    pub fn adjoint_mul_vec(&self, v: &[Complex64]) -> CVec {
        assert_eq!(self.rows, v.len(), "vector length must equal row count");
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self[(r, c)].conj() * v[r]).sum())
            .collect()
    }

    pub fn scale(&self, s: Complex64) -> CMat {
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn sub(&self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn fro_norm_sq(&self) -> f64 {
        fro_norm_sq(self)
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// Frobenius norm of `self - self^H`.
    pub fn hermitian_asymmetry(&self) -> f64 {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = 0.0;
        for r in 0..n {
            for c in 0..n {
                acc += (self[(r, c)] - self[(c, r)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square()
            && self.hermitian_asymmetry() <= HERMITIAN_TOL * self.fro_norm_sq().sqrt().max(1.0)
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = Complex64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &CMat {
    type Output = CMat;

    fn mul(self, rhs: &CMat) -> CMat {
        self.matmul(rhs)
    }
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self
                .row(r)
                .iter()
                .map(|z| format!("{:+.4}{:+.4}i", z.re, z.im))
                .collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Sum of squared moduli of all entries.
pub fn fro_norm_sq(m: &CMat) -> f64 {
    m.data.iter().map(|z| z.norm_sqr()).sum()
}

/// `a^H b`.
#[inline]
pub fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

#[inline]
pub fn norm_sq(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Scales `v` to unit Euclidean norm. Returns `None` for a zero vector.
pub fn normalized(v: &[Complex64]) -> Option<CVec> {
    let n = norm_sq(v).sqrt();
    if n == 0.0 || !n.is_finite() {
        return None;
    }
    Some(v.iter().map(|z| z / n).collect())
}

/// Eigenvalues in ascending order with matching unit eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct EigPairs {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

fn check_hermitian(a: &CMat) -> Result<()> {
    if !a.is_square() {
        return Err(Error::InvalidConfig(format!(
            "eigendecomposition of a non-square {}x{} matrix",
            a.rows, a.cols
        )));
    }
    let asym = a.hermitian_asymmetry();
    if asym > HERMITIAN_TOL * a.fro_norm_sq().sqrt().max(1.0) {
        return Err(Error::NotHermitian { asymmetry: asym });
    }
    Ok(())
}

/// Cyclic complex Jacobi on a row-major `n x n` buffer. On return the
/// diagonal of `a` holds the eigenvalues; `v`, when given, accumulates the
/// rotations so its columns are the eigenvectors.
fn jacobi_in_place(a: &mut [Complex64], n: usize, mut v: Option<&mut [Complex64]>) -> Result<()> {
    let scale_sq: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    if scale_sq == 0.0 {
        return Ok(());
    }
    let target = (f64::EPSILON * f64::EPSILON) * scale_sq;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p * n + q].norm_sqr();
            }
        }
        if off <= target {
            for i in 0..n {
                a[i * n + i].im = 0.0;
            }
            return Ok(());
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let phase = apq / g;
                let tau = (aqq - app) / (2.0 * g);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // J = diag(1, conj(phase)) * [[c, s], [-s, c]] in the (p, q) plane.
                let j_pp = Complex64::new(c, 0.0);
                let j_pq = Complex64::new(s, 0.0);
                let j_qp = -phase.conj() * s;
                let j_qq = phase.conj() * c;

                // A <- A J
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * j_pp + akq * j_qp;
                    a[k * n + q] = akp * j_pq + akq * j_qq;
                }
                // A <- J^H A
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = j_pp.conj() * apk + j_qp.conj() * aqk;
                    a[q * n + k] = j_pq.conj() * apk + j_qq.conj() * aqk;
                }
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;

                if let Some(v) = v.as_deref_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = vkp * j_pp + vkq * j_qp;
                        v[k * n + q] = vkp * j_pq + vkq * j_qq;
                    }
                }
            }
        }
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
}

/// Full Hermitian eigendecomposition, eigenvalues ascending.
///
/// Degenerate eigenvalues get an arbitrary orthonormal basis of their
/// eigenspace; callers may rely on spanned subspaces, never on individual
/// vectors inside a cluster.
pub fn hermitian_eig_ascending(a: &CMat) -> Result<EigPairs> {
    check_hermitian(a)?;
    let n = a.rows;
    let mut work = a.data.clone();
    let mut vecs = CMat::identity(n).data;
    jacobi_in_place(&mut work, n, Some(&mut vecs))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| work[i * n + i].re.total_cmp(&work[j * n + j].re));
    let values = order.iter().map(|&i| work[i * n + i].re).collect();
    let vectors = CMat::from_fn(n, n, |r, c| vecs[r * n + order[c]]);
    Ok(EigPairs { values, vectors })
}

/// Eigenvalues only, ascending. Skips eigenvector accumulation.
pub fn hermitian_eigenvalues(a: &CMat) -> Result<Vec<f64>> {
    check_hermitian(a)?;
    let mut work = a.data.clone();
    let mut values = vec![0.0; a.rows];
    eigenvalues_into(&mut work, a.rows, &mut values)?;
    Ok(values)
}

/// Eigenvalues of the Hermitian matrix held in `work` (row-major `n x n`,
/// destroyed) written ascending into `out`. No symmetry check: meant for
/// hot loops whose input is Hermitian by construction.
pub fn eigenvalues_into(work: &mut [Complex64], n: usize, out: &mut [f64]) -> Result<()> {
    debug_assert_eq!(work.len(), n * n);
    debug_assert_eq!(out.len(), n);
    jacobi_in_place(work, n, None)?;
    for i in 0..n {
        out[i] = work[i * n + i].re;
    }
    out.sort_by(f64::total_cmp);
    Ok(())
}

/// Inverse together with the 1-norm reciprocal condition number.
pub fn invert_with_rcond(m: &CMat) -> Result<(CMat, f64)> {
    if !m.is_square() {
        return Err(Error::InvalidConfig(format!(
            "inverse of a non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    let mut a = m.data.clone();
    let mut inv = CMat::identity(n).data;

    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i * n + col].norm().total_cmp(&a[j * n + col].norm()))
            .expect("non-empty pivot range");
        let pv = a[pivot * n + col];
        if pv.norm() == 0.0 || !pv.norm().is_finite() {
            return Err(Error::Singular { rcond: 0.0 });
        }
        if pivot != col {
            for k in 0..n {
                a.swap(pivot * n + k, col * n + k);
                inv.swap(pivot * n + k, col * n + k);
            }
        }
        let recip = Complex64::new(1.0, 0.0) / pv;
        for k in 0..n {
            a[col * n + k] *= recip;
            inv[col * n + k] *= recip;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a[r * n + col];
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..n {
                let ack = a[col * n + k];
                let ick = inv[col * n + k];
                a[r * n + k] -= f * ack;
                inv[r * n + k] -= f * ick;
            }
        }
    }

    let inv = CMat::from_vec(n, n, inv);
    let rcond = 1.0 / (one_norm(m) * one_norm(&inv));
    if !(rcond >= RCOND_MIN) {
        return Err(Error::Singular {
            rcond: if rcond.is_finite() { rcond } else { 0.0 },
        });
    }
    Ok((inv, rcond))
}

pub fn invert(m: &CMat) -> Result<CMat> {
    invert_with_rcond(m).map(|(inv, _)| inv)
}

/// Maximum absolute column sum.
pub fn one_norm(m: &CMat) -> f64 {
    (0..m.cols)
        .map(|c| (0..m.rows).map(|r| m[(r, c)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Orthonormal basis for the column space of `m` (modified Gram-Schmidt
/// with one reorthogonalisation pass). Fails if the columns are linearly
/// dependent to working precision.
pub fn orthonormalize_columns(m: &CMat) -> Result<CMat> {
    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    let mut basis: Vec<CVec> = Vec::with_capacity(m.cols);
    for c in 0..m.cols {
        let mut v = m.column(c);
        for _ in 0..2 {
            for b in &basis {
                let proj = dot(b, &v);
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= proj * bi;
                }
            }
        }
        let n = norm_sq(&v).sqrt();
        if n <= 1e-12 * scale {
            return Err(Error::Singular { rcond: n / scale });
        }
        basis.push(v.into_iter().map(|z| z / n).collect());
    }
    Ok(CMat::from_columns(&basis))
}

/// Largest entrywise deviation of `q^H q` from the identity.
pub fn orthonormality_error(q: &CMat) -> f64 {
    let g = q.adjoint_mul(q);
    let mut worst: f64 = 0.0;
    for r in 0..g.rows {
        for c in 0..g.cols {
            let target = if r == c { 1.0 } else { 0.0 };
            worst = worst.max((g[(r, c)] - target).norm());
        }
    }
    worst
}
