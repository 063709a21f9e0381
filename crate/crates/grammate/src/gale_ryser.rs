//! Degree sequences of zero-one matrices: conjugates, majorization, the
//! Gale–Ryser criterion and constructions of matrices with prescribed row and
//! column sums, including the signed block layouts used for rank-two
//! witnesses.

use thiserror::Error;

use crate::matrix::{BinaryMatrix, BlockCanvas, MatrixError};

pub type DegreeVector = Vec<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaleRyserError {
    #[error("no zero-one matrix has row sums {rows:?} and column sums {cols:?}")]
    Infeasible { rows: Vec<usize>, cols: Vec<usize> },
    #[error("entry {value} exceeds the available length {limit}")]
    TooLarge { value: usize, limit: usize },
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Entry `i` (1-based) counts the entries of `a` that are at least `i`.
pub fn conjugate(a: &[usize], length: usize) -> DegreeVector {
    (1..=length)
        .map(|i| a.iter().filter(|&&x| x >= i).count())
        .collect()
}

/// True when `a` majorizes `b`: equal totals and sorted prefix sums of `a`
/// dominate those of `b`.
pub fn majorizes(a: &[usize], b: &[usize]) -> bool {
    let len = a.len().max(b.len());
    let sorted = |v: &[usize]| {
        let mut s = v.to_vec();
        s.resize(len, 0);
        s.sort_unstable_by(|x, y| y.cmp(x));
        s
    };
    let (sa, sb) = (sorted(a), sorted(b));
    let (mut pa, mut pb) = (0usize, 0usize);
    for (x, y) in sa.iter().zip(&sb) {
        pa += x;
        pb += y;
        if pa < pb {
            return false;
        }
    }
    pa == pb
}

pub fn exists_urs(r: &[usize], s: &[usize]) -> bool {
    let n = s.len();
    if r.iter().any(|&x| x > n) {
        return false;
    }
    majorizes(&conjugate(r, n), s)
}

/// Rows of a member of U(R,S) built column by column; empty dimensions allowed.
pub(crate) fn urs_rows(r: &[usize], s: &[usize]) -> Result<Vec<Vec<i8>>, GaleRyserError> {
    let infeasible = || GaleRyserError::Infeasible {
        rows: r.to_vec(),
        cols: s.to_vec(),
    };
    if !exists_urs(r, s) {
        return Err(infeasible());
    }
    let mut out = vec![vec![0i8; s.len()]; r.len()];
    let mut residual: Vec<usize> = r.to_vec();
    let mut cols: Vec<usize> = (0..s.len()).collect();
    cols.sort_by(|&i, &j| s[j].cmp(&s[i]).then(i.cmp(&j)));
    for j in cols {
        let mut rows: Vec<usize> = (0..r.len()).collect();
        rows.sort_by(|&x, &y| residual[y].cmp(&residual[x]).then(x.cmp(&y)));
        for &i in rows.iter().take(s[j]) {
            if residual[i] == 0 {
                return Err(infeasible());
            }
            residual[i] -= 1;
            out[i][j] = 1;
        }
    }
    if residual.iter().any(|&x| x != 0) {
        return Err(infeasible());
    }
    Ok(out)
}

/// A matrix with row sums `r` and column sums `s`.
pub fn construct_urs(r: &[usize], s: &[usize]) -> Result<BinaryMatrix, GaleRyserError> {
    let rows = urs_rows(r, s)?;
    Ok(BinaryMatrix::from_rows(&rows)?)
}

/// `(q+1, ..., q+1, q, ..., q)` of length `len` summing to `total`.
pub fn balanced(total: usize, len: usize) -> DegreeVector {
    if len == 0 {
        return Vec::new();
    }
    let (q, r) = (total / len, total % len);
    (0..len).map(|i| if i < r { q + 1 } else { q }).collect()
}

/// Lays the ones of each row consecutively along a strip of width `n` and
/// folds the strip, giving row sums `r` and balanced column sums.
pub fn spread_construction(r: &[usize], n: usize) -> Result<BinaryMatrix, GaleRyserError> {
    Ok(BinaryMatrix::from_rows(&spread_rows(r, n)?)?)
}

fn spread_rows(r: &[usize], n: usize) -> Result<Vec<Vec<i8>>, GaleRyserError> {
    if let Some(&value) = r.iter().find(|&&x| x > n) {
        return Err(GaleRyserError::TooLarge { value, limit: n });
    }
    let mut pos = 0usize;
    let mut out = Vec::with_capacity(r.len());
    for &ri in r {
        let mut row = vec![0i8; n];
        for _ in 0..ri {
            row[pos % n] = 1;
            pos += 1;
        }
        out.push(row);
    }
    Ok(out)
}

/// Column sums `s` over `m` rows with balanced row sums.
pub fn balanced_rows_for_colsum(s: &[usize], m: usize) -> Result<BinaryMatrix, GaleRyserError> {
    Ok(BinaryMatrix::from_rows(&balanced_rows(s, m)?)?)
}

pub(crate) fn balanced_rows(s: &[usize], m: usize) -> Result<Vec<Vec<i8>>, GaleRyserError> {
    if let Some(&value) = s.iter().find(|&&x| x > m) {
        return Err(GaleRyserError::TooLarge { value, limit: m });
    }
    urs_rows(&balanced(s.iter().sum(), m), s)
}

pub(crate) fn swap_row_blocks(rows: Vec<Vec<i8>>, top: usize) -> Vec<Vec<i8>> {
    let (a, b) = rows.split_at(top);
    b.iter().chain(a.iter()).cloned().collect()
}

pub(crate) fn swap_col_blocks(rows: Vec<Vec<i8>>, left: usize) -> Vec<Vec<i8>> {
    rows.into_iter()
        .map(|r| {
            let (a, b) = r.split_at(left);
            b.iter().chain(a.iter()).copied().collect()
        })
        .collect()
}

/// `X (1;−1) = (n₁−n₂)/2 · 1` and `Xᵀ (1;−1) = (m₁−m₂)/2 · 1`.
pub fn even_block(
    m1: usize,
    m2: usize,
    n1: usize,
    n2: usize,
) -> Result<BinaryMatrix, GaleRyserError> {
    if m1 + m2 == 0 || n1 + n2 == 0 {
        return Err(GaleRyserError::Hypothesis("empty block".into()));
    }
    Ok(BinaryMatrix::from_rows(&even_rows(m1, m2, n1, n2)?)?)
}

pub(crate) fn even_rows(
    m1: usize,
    m2: usize,
    n1: usize,
    n2: usize,
) -> Result<Vec<Vec<i8>>, GaleRyserError> {
    if (m1 + m2) % 2 != 0 || (n1 + n2) % 2 != 0 {
        return Err(GaleRyserError::Parity(format!(
            "m1+m2={} n1+n2={}",
            m1 + m2,
            n1 + n2
        )));
    }
    if m1 < m2 {
        return Ok(swap_row_blocks(even_rows(m2, m1, n1, n2)?, m2));
    }
    if n1 < n2 {
        return Ok(swap_col_blocks(even_rows(m1, m2, n2, n1)?, n2));
    }
    let (alpha, beta) = ((m1 - m2) / 2, (n1 - n2) / 2);
    if beta == 0 {
        let mut c = BlockCanvas::new(vec![alpha, m1 + m2 - alpha], vec![n1 + n2]);
        c.fill(0, 0, 1);
        return Ok(c.into_rows());
    }
    if alpha == 0 {
        let mut c = BlockCanvas::new(vec![m1 + m2], vec![beta, n1 + n2 - beta]);
        c.fill(0, 0, 1);
        return Ok(c.into_rows());
    }
    let mut c = BlockCanvas::new(vec![alpha, m2, alpha, m2], vec![beta, n2, beta, n2]);
    c.fill(0, 0, 1);
    c.fill(1, 2, 1);
    c.fill(2, 1, 1);
    c.fill(2, 2, 1);
    c.fill(2, 3, 1);
    c.fill(3, 2, 1);
    Ok(c.into_rows())
}

/// `Y (1;−1) = (b₁·1; −b₂·1)` and `Yᵀ (1;−1) = (a₁·1; −a₂·1)` for the
/// proportional size regime `m₁−m₂ = a₁−a₂`, `n₁−n₂ = b₁−b₂`,
/// `(n₁+n₂)/(m₁+m₂) = (b₁+b₂)/(a₁+a₂)`.
///
/// Equal sizes are accepted and give `diag(J, J)`.
#[allow(clippy::too_many_arguments)]
pub fn proportional_block(
    a1: usize,
    a2: usize,
    b1: usize,
    b2: usize,
    m1: usize,
    m2: usize,
    n1: usize,
    n2: usize,
) -> Result<BinaryMatrix, GaleRyserError> {
    if m1 + m2 == 0 || n1 + n2 == 0 {
        return Err(GaleRyserError::Hypothesis("empty block".into()));
    }
    Ok(BinaryMatrix::from_rows(&proportional_rows(
        a1, a2, b1, b2, m1, m2, n1, n2,
    )?)?)
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn proportional_rows(
    a1: usize,
    a2: usize,
    b1: usize,
    b2: usize,
    m1: usize,
    m2: usize,
    n1: usize,
    n2: usize,
) -> Result<Vec<Vec<i8>>, GaleRyserError> {
    let i = |x: usize| x as i64;
    let hyp = |msg: &str| GaleRyserError::Hypothesis(msg.to_string());
    if i(m1) - i(m2) != i(a1) - i(a2) {
        return Err(hyp("m1 - m2 must equal a1 - a2"));
    }
    if i(n1) - i(n2) != i(b1) - i(b2) {
        return Err(hyp("n1 - n2 must equal b1 - b2"));
    }
    if (n1 + n2) * (a1 + a2) != (b1 + b2) * (m1 + m2) {
        return Err(hyp("sizes are not proportional"));
    }
    if m1 + m2 < a1 + a2 || n1 + n2 < b1 + b2 {
        return Err(hyp("block smaller than its targets"));
    }
    let (p1, p2) = (m1 * b1, n1 * a1);
    if p1 < p2 {
        let t = proportional_rows(b1, b2, a1, a2, n1, n2, m1, m2)?;
        return Ok(transpose_rows(&t, m1 + m2));
    }
    let mut c = BlockCanvas::new(vec![m1, m2], vec![n1, n2]);
    if p1 == p2 {
        c.put(0, 0, &urs_rows(&vec![b1; m1], &vec![a1; n1])?);
        c.put(1, 1, &urs_rows(&vec![b2; m2], &vec![a2; n2])?);
        return Ok(c.into_rows());
    }
    let ell = p1 - p2;
    let s_tilde = balanced(ell, n1);
    let y11_cols: Vec<usize> = s_tilde.iter().map(|s| a1 + s).collect();
    c.put(0, 0, &urs_rows(&vec![b1; m1], &y11_cols)?);
    let y21 = balanced_rows(&s_tilde, m2)?;
    let r21: Vec<usize> = y21
        .iter()
        .map(|r| r.iter().filter(|&&x| x == 1).count())
        .collect();
    c.put(1, 0, &y21);
    let y22_rows: Vec<usize> = r21.iter().map(|r| b2 + r).collect();
    c.put(1, 1, &urs_rows(&y22_rows, &vec![a2; n2])?);
    Ok(c.into_rows())
}

fn transpose_rows(rows: &[Vec<i8>], width: usize) -> Vec<Vec<i8>> {
    (0..width)
        .map(|j| rows.iter().map(|r| r[j]).collect())
        .collect()
}

/// Signed sums `X(1_{n₁};−1_{n₂})` per row and `Xᵀ(1_{m₁};−1_{m₂})` per column.
pub fn signed_sums(rows: &[Vec<i8>], m1: usize, n1: usize) -> (Vec<i64>, Vec<i64>) {
    let width = rows.first().map_or(0, |r| r.len());
    let row = rows
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .map(|(j, &x)| if j < n1 { x as i64 } else { -(x as i64) })
                .sum()
        })
        .collect();
    let col = (0..width)
        .map(|j| {
            rows.iter()
                .enumerate()
                .map(|(i, r)| if i < m1 { r[j] as i64 } else { -(r[j] as i64) })
                .sum()
        })
        .collect();
    (row, col)
}
