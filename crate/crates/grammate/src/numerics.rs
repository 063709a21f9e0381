//! Small dense SVD, singular value sign flips and recovery of zero-one
//! matrices from their two Gram matrices.

use serde::Serialize;
use thiserror::Error;

use crate::matrix::{BinaryMatrix, Dense, IntMatrix};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_REL_TOL: f64 = 1e-8;
const MAX_SWEEPS: usize = 60;
const JACOBI_EPS: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("jacobi sweeps did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("sign pattern has {found} entries but there are {expected} positive singular values")]
    PatternLength { expected: usize, found: usize },
    #[error("sign pattern flips nothing")]
    EmptyPattern,
    #[error("degenerate spectrum unsupported")]
    DegenerateSpectrum,
    #[error("spectra mismatch")]
    SpectraMismatch,
    #[error("gram matrices must be square and symmetric")]
    NotSymmetric,
    #[error("non-finite entry")]
    NonFinite,
}

/// Row-major real matrix.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct RealMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_dense<M: Dense + ?Sized>(m: &M) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.data[i * m.cols() + j] = m.at(i, j) as f64;
            }
        }
        out
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn mul(&self, other: &RealMatrix) -> RealMatrix {
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn scale(&self, s: f64) -> RealMatrix {
        RealMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &RealMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Flips `v` so that its first component above `eps` in magnitude is positive.
/// Returns whether a flip happened.
pub fn canonical_sign(v: &mut [f64], eps: f64) -> bool {
    if let Some(first) = v.iter().find(|x| x.abs() > eps) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
            return true;
        }
    }
    false
}

#[derive(Clone, Debug, Serialize)]
pub struct SvdBundle {
    pub u: RealMatrix,
    pub sigma: Vec<f64>,
    pub v: RealMatrix,
    /// Absolute threshold below which singular values count as zero.
    pub tol: f64,
}

impl SvdBundle {
    pub fn rank(&self) -> usize {
        self.sigma.iter().filter(|&&s| s > 0.0).count()
    }

    pub fn left(&self, i: usize) -> Vec<f64> {
        self.u.column(i)
    }

    pub fn right(&self, i: usize) -> Vec<f64> {
        self.v.column(i)
    }

    pub fn reassemble(&self) -> RealMatrix {
        let mut out = RealMatrix::zeros(self.u.rows, self.v.rows);
        for (k, &s) in self.sigma.iter().enumerate() {
            for i in 0..out.rows {
                let us = self.u.get(i, k) * s;
                for j in 0..out.cols {
                    out.data[i * out.cols + j] += us * self.v.get(j, k);
                }
            }
        }
        out
    }
}

/// One-sided Jacobi SVD. `tol` is relative to `max(1, ‖A‖∞)`.
pub fn svd(a: &RealMatrix, tol: f64) -> Result<SvdBundle, NumericsError> {
    if a.data.iter().any(|x| !x.is_finite()) {
        return Err(NumericsError::NonFinite);
    }
    if a.rows < a.cols {
        let t = svd(&a.transpose(), tol)?;
        return Ok(SvdBundle {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
            tol: t.tol,
        });
    }
    let (m, n) = (a.rows, a.cols);
    let thresh = tol * a.norm_inf().max(1.0);
    // columns of W and V stored contiguously
    let mut w: Vec<Vec<f64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let frob2: f64 = a.data.iter().map(|x| x * x).sum();
    let floor = f64::EPSILON * f64::EPSILON * frob2;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = dot(&w[p], &w[p]);
                let beta = dot(&w[q], &w[q]);
                let gamma = dot(&w[p], &w[q]);
                if gamma == 0.0
                    || alpha <= floor
                    || beta <= floor
                    || gamma.abs() <= JACOBI_EPS * (alpha * beta).sqrt()
                {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for k in 0..m {
                    let (x, y) = (w[p][k], w[q][k]);
                    w[p][k] = c * x - s * y;
                    w[q][k] = s * x + c * y;
                }
                for k in 0..n {
                    let (x, y) = (v[p][k], v[q][k]);
                    v[p][k] = c * x - s * y;
                    v[q][k] = s * x + c * y;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(NumericsError::NoConvergence(MAX_SWEEPS));
    }
    let norms: Vec<f64> = w.iter().map(|c| norm(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap().then(i.cmp(&j)));

    let mut sigma = Vec::with_capacity(n);
    let mut ucols: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut vm = RealMatrix::zeros(n, n);
    for (k, &j) in order.iter().enumerate() {
        let s = norms[j];
        for i in 0..n {
            vm.set(i, k, v[j][i]);
        }
        if s > thresh {
            sigma.push(s);
            ucols.push(w[j].iter().map(|x| x / s).collect());
        } else {
            sigma.push(0.0);
        }
    }
    complete_basis(&mut ucols, m);
    let mut um = RealMatrix::zeros(m, m);
    for (k, col) in ucols.iter().enumerate() {
        for i in 0..m {
            um.set(i, k, col[i]);
        }
    }
    Ok(SvdBundle {
        u: um,
        sigma,
        v: vm,
        tol: thresh,
    })
}

/// Extends orthonormal columns to a basis of R^m with Gram–Schmidt on e_1, e_2, ...
fn complete_basis(cols: &mut Vec<Vec<f64>>, m: usize) {
    let mut k = 0;
    while cols.len() < m && k < m {
        let mut e = vec![0.0; m];
        e[k] = 1.0;
        for _ in 0..2 {
            for c in cols.iter() {
                let d = dot(&e, c);
                e.iter_mut().zip(c).for_each(|(x, y)| *x -= d * y);
            }
        }
        let nrm = norm(&e);
        if nrm > 1e-6 {
            cols.push(e.into_iter().map(|x| x / nrm).collect());
        }
        k += 1;
    }
}

/// Which positive singular values get their sign changed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignPattern {
    pub mask: Vec<bool>,
}

/// `U S Σ Vᵀ` for the sign matrix `S` given by `pattern`.
pub fn flip_singular_signs(
    a: &BinaryMatrix,
    pattern: &SignPattern,
    tol: f64,
) -> Result<RealMatrix, NumericsError> {
    let bundle = svd(&RealMatrix::from_dense(a), tol)?;
    let r = bundle.rank();
    if pattern.mask.len() != r {
        return Err(NumericsError::PatternLength {
            expected: r,
            found: pattern.mask.len(),
        });
    }
    if !pattern.mask.iter().any(|&b| b) {
        return Err(NumericsError::EmptyPattern);
    }
    let mut out = RealMatrix::from_dense(a);
    for (k, _) in pattern.mask.iter().enumerate().filter(|(_, &b)| b) {
        let s = bundle.sigma[k];
        let (u, v) = (bundle.left(k), bundle.right(k));
        subtract_outer(&mut out, 2.0 * s, &u, &v);
    }
    Ok(out)
}

/// `A - 2 Σ σᵢ uᵢ vᵢᵀ` for explicit singular triplets.
pub fn flip_triplets(
    a: &BinaryMatrix,
    values: &[f64],
    left: &[Vec<f64>],
    right: &[Vec<f64>],
) -> RealMatrix {
    let mut out = RealMatrix::from_dense(a);
    for ((s, u), v) in values.iter().zip(left).zip(right) {
        subtract_outer(&mut out, 2.0 * s, u, v);
    }
    out
}

fn subtract_outer(m: &mut RealMatrix, s: f64, u: &[f64], v: &[f64]) {
    for i in 0..m.rows {
        for j in 0..m.cols {
            m.data[i * m.cols + j] -= s * u[i] * v[j];
        }
    }
}

/// Nearest zero-one matrix when every entry is within `tol` of 0 or 1.
pub fn round_to_binary(b: &RealMatrix, tol: f64) -> Option<BinaryMatrix> {
    let mut data = Vec::with_capacity(b.data.len());
    for &x in &b.data {
        if x.abs() <= tol {
            data.push(0);
        } else if (x - 1.0).abs() <= tol {
            data.push(1);
        } else {
            return None;
        }
    }
    BinaryMatrix::new(b.rows, b.cols, data).ok()
}

pub fn singular_values<M: Dense + ?Sized>(a: &M, tol: f64) -> Result<Vec<f64>, NumericsError> {
    Ok(svd(&RealMatrix::from_dense(a), tol)?.sigma)
}

fn all_distinct(sorted_desc: &[f64], rel_tol: f64) -> bool {
    sorted_desc
        .windows(2)
        .all(|w| (w[0] - w[1]).abs() > rel_tol * w[0].abs().max(1.0))
}

/// True when the singular values of `a` (zeros included) are pairwise distinct.
pub fn distinct_singular_values(a: &BinaryMatrix, rel_tol: f64) -> bool {
    match singular_values(a, DEFAULT_TOL) {
        Ok(s) => all_distinct(&s, rel_tol),
        Err(_) => false,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Reconstruction {
    pub matrices: Vec<BinaryMatrix>,
    /// Set when a Gram matrix has a kernel of dimension above one.
    pub wide_kernel: bool,
}

/// All zero-one `B` with `B Bᵀ = g_row` and `Bᵀ B = g_col`, found by sign
/// search over the shared positive spectrum.
pub fn reconstruct_from_grams(
    g_row: &IntMatrix,
    g_col: &IntMatrix,
    tol: f64,
    rel_tol: f64,
) -> Result<Reconstruction, NumericsError> {
    if !g_row.is_symmetric() || !g_col.is_symmetric() {
        return Err(NumericsError::NotSymmetric);
    }
    let (m, n) = (g_row.rows, g_col.rows);
    let er = svd(&RealMatrix::from_dense(g_row), tol)?;
    let ec = svd(&RealMatrix::from_dense(g_col), tol)?;
    let lr: Vec<f64> = er.sigma.iter().copied().filter(|&x| x > 0.0).collect();
    let lc: Vec<f64> = ec.sigma.iter().copied().filter(|&x| x > 0.0).collect();
    let scale = er.tol.max(ec.tol);
    if lr.len() != lc.len() || lr.iter().zip(&lc).any(|(a, b)| (a - b).abs() > scale) {
        return Err(NumericsError::SpectraMismatch);
    }
    if !all_distinct(&lr, rel_tol) {
        return Err(NumericsError::DegenerateSpectrum);
    }
    let r = lr.len();
    let eps = 1e-9;
    let mut us = Vec::with_capacity(r);
    let mut vs = Vec::with_capacity(r);
    for k in 0..r {
        let mut u = er.right(k);
        let mut v = ec.right(k);
        canonical_sign(&mut u, eps);
        canonical_sign(&mut v, eps);
        us.push(u);
        vs.push(v);
    }
    let s: Vec<f64> = lr.iter().map(|x| x.sqrt()).collect();
    let round_tol = (tol * 1e3).max(1e-6);
    let mut found = Vec::new();
    for mask in 0u64..(1u64 << r) {
        let mut b = RealMatrix::zeros(m, n);
        for k in 0..r {
            let sign = if mask >> k & 1 == 1 { -1.0 } else { 1.0 };
            subtract_outer(&mut b, -sign * s[k], &us[k], &vs[k]);
        }
        if let Some(bin) = round_to_binary(&b, round_tol) {
            if &bin.gram_rows() == g_row && &bin.gram_cols() == g_col {
                found.push(bin);
            }
        }
    }
    found.sort();
    found.dedup();
    Ok(Reconstruction {
        matrices: found,
        wide_kernel: m - r > 1 || n - r > 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_handles_wide_input() {
        let a = RealMatrix {
            rows: 2,
            cols: 3,
            data: vec![1.0, 1.0, 0.0, 0.0, 1.0, 1.0],
        };
        let b = svd(&a, DEFAULT_TOL).unwrap();
        assert!(b.reassemble().max_abs_diff(&a) < 1e-12);
        assert!((b.sigma[0] - 3f64.sqrt()).abs() < 1e-12);
        assert!((b.sigma[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn completion_is_orthonormal() {
        let a = RealMatrix {
            rows: 3,
            cols: 1,
            data: vec![1.0, 1.0, 1.0],
        };
        let b = svd(&a, DEFAULT_TOL).unwrap();
        let utu = b.u.transpose().mul(&b.u);
        assert!(utu.max_abs_diff(&RealMatrix::identity(3)) < 1e-12);
    }
}
