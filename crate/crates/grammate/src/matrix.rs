//! Dense exact matrices over {0,1}, {-1,0,1} and the integers, plus
//! permutations, block partitions and the `.mtxt` text format.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("line {line}: malformed dimension line")]
    BadDimensions { line: usize },
    #[error("line {line}: entry out of range: {token}")]
    EntryOutOfRange { line: usize, token: String },
    #[error("line {line}: expected {expected} entries, found {found}")]
    RowLength {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("dimensions must be positive")]
    EmptyMatrix,
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("entry {value} at ({row},{col}) is not in the matrix alphabet")]
    Alphabet { row: usize, col: usize, value: i64 },
    #[error("not a permutation: {0:?}")]
    NotPermutation(Vec<usize>),
}

/// Read access shared by all dense matrix kinds.
pub trait Dense {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn at(&self, i: usize, j: usize) -> i64;

    fn row_sums(&self) -> Vec<i64> {
        (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.at(i, j)).sum())
            .collect()
    }

    fn col_sums(&self) -> Vec<i64> {
        (0..self.cols())
            .map(|j| (0..self.rows()).map(|i| self.at(i, j)).sum())
            .collect()
    }

    fn to_int(&self) -> IntMatrix {
        let mut data = Vec::with_capacity(self.rows() * self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                data.push(self.at(i, j));
            }
        }
        IntMatrix {
            rows: self.rows(),
            cols: self.cols(),
            data,
        }
    }

    fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.at(i, j) as f64).collect())
            .collect()
    }
}

macro_rules! small_matrix {
    ($name:ident, $lo:expr, $what:expr) => {
        #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub struct $name {
            rows: usize,
            cols: usize,
            data: Vec<i8>,
        }

        impl $name {
            pub fn new(rows: usize, cols: usize, data: Vec<i8>) -> Result<Self, MatrixError> {
                if rows == 0 || cols == 0 {
                    return Err(MatrixError::EmptyMatrix);
                }
                if data.len() != rows * cols {
                    return Err(MatrixError::SizeMismatch(format!(
                        "{} entries for a {}x{} matrix",
                        data.len(),
                        rows,
                        cols
                    )));
                }
                for (idx, &v) in data.iter().enumerate() {
                    if !($lo..=1).contains(&v) {
                        return Err(MatrixError::Alphabet {
                            row: idx / cols,
                            col: idx % cols,
                            value: v as i64,
                        });
                    }
                }
                Ok(Self { rows, cols, data })
            }

            pub fn from_rows(rows: &[Vec<i8>]) -> Result<Self, MatrixError> {
                let m = rows.len();
                let n = rows.first().map_or(0, |r| r.len());
                if rows.iter().any(|r| r.len() != n) {
                    return Err(MatrixError::SizeMismatch("ragged rows".into()));
                }
                Self::new(m, n, rows.concat())
            }

            pub fn from_fn(
                rows: usize,
                cols: usize,
                mut f: impl FnMut(usize, usize) -> i8,
            ) -> Self {
                let mut data = Vec::with_capacity(rows * cols);
                for i in 0..rows {
                    for j in 0..cols {
                        data.push(f(i, j));
                    }
                }
                Self::new(rows, cols, data).expect(concat!(
                    "from_fn produced a non-",
                    $what,
                    " entry"
                ))
            }

            pub fn zeros(rows: usize, cols: usize) -> Self {
                Self {
                    rows,
                    cols,
                    data: vec![0; rows * cols],
                }
            }

            pub fn get(&self, i: usize, j: usize) -> i8 {
                self.data[i * self.cols + j]
            }

            pub fn data(&self) -> &[i8] {
                &self.data
            }

            pub fn row(&self, i: usize) -> &[i8] {
                &self.data[i * self.cols..(i + 1) * self.cols]
            }

            pub fn column(&self, j: usize) -> Vec<i8> {
                (0..self.rows).map(|i| self.get(i, j)).collect()
            }

            pub fn transpose(&self) -> Self {
                Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
            }

            pub fn is_zero(&self) -> bool {
                self.data.iter().all(|&v| v == 0)
            }

            /// Rows `rs` and columns `cs`, in the given order.
            pub fn submatrix(&self, rs: &[usize], cs: &[usize]) -> Option<Self> {
                if rs.is_empty() || cs.is_empty() {
                    return None;
                }
                Some(Self::from_fn(rs.len(), cs.len(), |i, j| {
                    self.get(rs[i], cs[j])
                }))
            }

            pub fn apply_perms(
                &self,
                p: &Permutation,
                q: &Permutation,
            ) -> Result<Self, MatrixError> {
                if p.size() != self.rows || q.size() != self.cols {
                    return Err(MatrixError::SizeMismatch(format!(
                        "permutations of sizes {}x{} for a {}x{} matrix",
                        p.size(),
                        q.size(),
                        self.rows,
                        self.cols
                    )));
                }
                let pi = p.inverse();
                let qi = q.inverse();
                Ok(Self::from_fn(self.rows, self.cols, |i, j| {
                    self.get(pi.image()[i], qi.image()[j])
                }))
            }

            pub fn kron(&self, other: &Self) -> Self {
                let (m2, n2) = (other.rows, other.cols);
                Self::from_fn(self.rows * m2, self.cols * n2, |i, j| {
                    self.get(i / m2, j / n2) * other.get(i % m2, j % n2)
                })
            }

            /// Block matrix assembled from a grid of equally tall / wide pieces.
            pub fn from_blocks(grid: &[Vec<&Self>]) -> Result<Self, MatrixError> {
                if grid.is_empty() || grid.iter().any(|r| r.is_empty()) {
                    return Err(MatrixError::SizeMismatch("empty block grid".into()));
                }
                let heights: Vec<usize> = grid.iter().map(|r| r[0].rows).collect();
                let widths: Vec<usize> = grid[0].iter().map(|b| b.cols).collect();
                for (bi, row) in grid.iter().enumerate() {
                    if row.len() != widths.len() {
                        return Err(MatrixError::SizeMismatch("ragged block grid".into()));
                    }
                    for (bj, b) in row.iter().enumerate() {
                        if b.rows != heights[bi] || b.cols != widths[bj] {
                            return Err(MatrixError::SizeMismatch("block shapes disagree".into()));
                        }
                    }
                }
                let m: usize = heights.iter().sum();
                let n: usize = widths.iter().sum();
                let mut data = Vec::with_capacity(m * n);
                for (bi, row) in grid.iter().enumerate() {
                    for i in 0..heights[bi] {
                        for b in row.iter() {
                            data.extend_from_slice(b.row(i));
                        }
                    }
                }
                Self::new(m, n, data)
            }
        }

        impl Dense for $name {
            fn rows(&self) -> usize {
                self.rows
            }
            fn cols(&self) -> usize {
                self.cols
            }
            fn at(&self, i: usize, j: usize) -> i64 {
                self.get(i, j) as i64
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", serialize_matrix(self))
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", serialize_matrix(self))
            }
        }
    };
}

small_matrix!(BinaryMatrix, 0i8, "binary");
small_matrix!(SignedMatrix, -1i8, "signed");

impl BinaryMatrix {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| (i == j) as i8)
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| 1)
    }

    pub fn complement(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| 1 - self.get(i, j))
    }

    pub fn to_signed(&self) -> SignedMatrix {
        SignedMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j))
    }

    /// `self + e` when every entry lands in {0,1}.
    pub fn add_signed(&self, e: &SignedMatrix) -> Result<BinaryMatrix, MatrixError> {
        if self.rows != e.rows || self.cols != e.cols {
            return Err(MatrixError::SizeMismatch("A + E".into()));
        }
        let data: Vec<i8> = self.data.iter().zip(&e.data).map(|(a, b)| a + b).collect();
        BinaryMatrix::new(self.rows, self.cols, data)
    }

    /// `self - other` as a signed matrix.
    pub fn sub(&self, other: &BinaryMatrix) -> Result<SignedMatrix, MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::SizeMismatch("A - B".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        SignedMatrix::new(self.rows, self.cols, data)
    }

    pub fn gram_rows(&self) -> IntMatrix {
        let m = self.to_int();
        m.mul(&m.transpose())
    }

    pub fn gram_cols(&self) -> IntMatrix {
        let m = self.to_int();
        m.transpose().mul(&m)
    }
}

impl SignedMatrix {
    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| -self.get(i, j))
    }

    pub fn to_binary(&self) -> Result<BinaryMatrix, MatrixError> {
        BinaryMatrix::new(self.rows, self.cols, self.data.clone())
    }

    pub fn rank(&self) -> usize {
        rank_exact(self)
    }
}

/// Dense integer matrix used for Gram matrices and exact products.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        if m == 0 || n == 0 {
            return Err(MatrixError::EmptyMatrix);
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(MatrixError::SizeMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: m,
            cols: n,
            data: rows.concat(),
        })
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn rank(&self) -> usize {
        rank_exact(self)
    }
}

impl Dense for IntMatrix {
    fn rows(&self) -> usize {
        self.rows
    }
    fn cols(&self) -> usize {
        self.cols
    }
    fn at(&self, i: usize, j: usize) -> i64 {
        self.get(i, j)
    }
}

/// Rank over the rationals by Bareiss fraction-free elimination.
///
/// Runs in `i128` and restarts with big integers if an intermediate overflows.
pub fn rank_exact<M: Dense + ?Sized>(m: &M) -> usize {
    let rows: Vec<Vec<i128>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.at(i, j) as i128).collect())
        .collect();
    match bareiss_i128(rows) {
        Some(r) => r,
        None => {
            let rows: Vec<Vec<BigInt>> = (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| BigInt::from(m.at(i, j))).collect())
                .collect();
            bareiss_big(rows)
        }
    }
}

fn bareiss_i128(mut a: Vec<Vec<i128>>) -> Option<usize> {
    let h = a.len();
    let w = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..w {
        if rank == h {
            break;
        }
        let Some(piv) = (rank..h).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let p = a[rank][col];
        for r in rank + 1..h {
            let f = a[r][col];
            for c in col..w {
                let lhs = a[r][c].checked_mul(p)?;
                let rhs = a[rank][c].checked_mul(f)?;
                a[r][c] = lhs.checked_sub(rhs)? / prev;
            }
        }
        prev = p;
        rank += 1;
    }
    Some(rank)
}

fn bareiss_big(mut a: Vec<Vec<BigInt>>) -> usize {
    let h = a.len();
    let w = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..w {
        if rank == h {
            break;
        }
        let Some(piv) = (rank..h).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let p = a[rank][col].clone();
        for r in rank + 1..h {
            let f = a[r][col].clone();
            for c in col..w {
                let v = (&a[r][c] * &p - &a[rank][c] * &f) / &prev;
                a[r][c] = v;
            }
        }
        prev = p;
        rank += 1;
    }
    rank
}

/// Indices of a linearly independent subset of rows spanning the row space.
pub fn independent_rows<M: Dense + ?Sized>(m: &M) -> Vec<usize> {
    let mut chosen = Vec::new();
    let mut current = 0;
    for i in 0..m.rows() {
        let mut trial = chosen.clone();
        trial.push(i);
        let sub = IntMatrix {
            rows: trial.len(),
            cols: m.cols(),
            data: trial
                .iter()
                .flat_map(|&r| (0..m.cols()).map(move |j| (r, j)))
                .map(|(r, j)| m.at(r, j))
                .collect(),
        };
        let r = rank_exact(&sub);
        if r > current {
            current = r;
            chosen.push(i);
        }
    }
    chosen
}

/// A bijection on `0..size`; `image[i]` is where index `i` is sent.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).collect(),
        }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Self, MatrixError> {
        let mut seen = vec![false; image.len()];
        for &v in &image {
            if v >= image.len() || seen[v] {
                return Err(MatrixError::NotPermutation(image));
            }
            seen[v] = true;
        }
        Ok(Self { image })
    }

    /// The permutation sending `order[k]` to position `k`.
    pub fn from_order(order: &[usize]) -> Result<Self, MatrixError> {
        let mut image = vec![usize::MAX; order.len()];
        for (k, &o) in order.iter().enumerate() {
            if o >= order.len() || image[o] != usize::MAX {
                return Err(MatrixError::NotPermutation(order.to_vec()));
            }
            image[o] = k;
        }
        Ok(Self { image })
    }

    pub fn size(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v] = i;
        }
        Self { image: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        Self {
            image: other.image.iter().map(|&v| self.image[v]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_involution(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(i, &v)| self.image[v] == i)
    }

    /// Vector `out` with `out[image[i]] = v[i]`.
    pub fn permute<T: Clone>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (i, x) in v.iter().enumerate() {
            out[self.image[i]] = x.clone();
        }
        out
    }
}

/// Row and column block sizes of a partitioned matrix.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BlockSpec {
    pub row_sizes: Vec<usize>,
    pub col_sizes: Vec<usize>,
}

impl BlockSpec {
    pub fn new(row_sizes: Vec<usize>, col_sizes: Vec<usize>) -> Self {
        Self {
            row_sizes,
            col_sizes,
        }
    }

    pub fn fits<M: Dense + ?Sized>(&self, m: &M) -> bool {
        self.row_sizes.iter().sum::<usize>() == m.rows()
            && self.col_sizes.iter().sum::<usize>() == m.cols()
    }

    pub fn row_range(&self, b: usize) -> std::ops::Range<usize> {
        let start: usize = self.row_sizes[..b].iter().sum();
        start..start + self.row_sizes[b]
    }

    pub fn col_range(&self, b: usize) -> std::ops::Range<usize> {
        let start: usize = self.col_sizes[..b].iter().sum();
        start..start + self.col_sizes[b]
    }

    /// Entries of block `(bi, bj)` as row vectors; empty when the block is.
    pub fn block<M: Dense + ?Sized>(&self, m: &M, bi: usize, bj: usize) -> Vec<Vec<i64>> {
        self.row_range(bi)
            .map(|i| self.col_range(bj).map(|j| m.at(i, j)).collect())
            .collect()
    }
}

/// Mutable grid addressed by block, for assembling partitioned matrices
/// whose blocks may be empty.
#[derive(Clone, Debug)]
pub struct BlockCanvas {
    spec: BlockSpec,
    cells: Vec<Vec<i8>>,
}

impl BlockCanvas {
    pub fn new(row_sizes: Vec<usize>, col_sizes: Vec<usize>) -> Self {
        let spec = BlockSpec::new(row_sizes, col_sizes);
        let m = spec.row_sizes.iter().sum();
        let n = spec.col_sizes.iter().sum();
        Self {
            spec,
            cells: vec![vec![0; n]; m],
        }
    }

    pub fn spec(&self) -> &BlockSpec {
        &self.spec
    }

    pub fn fill(&mut self, bi: usize, bj: usize, v: i8) {
        for i in self.spec.row_range(bi) {
            for j in self.spec.col_range(bj) {
                self.cells[i][j] = v;
            }
        }
    }

    /// Copies `block` (row vectors) into block `(bi, bj)`.
    pub fn put(&mut self, bi: usize, bj: usize, block: &[Vec<i8>]) {
        let rr = self.spec.row_range(bi);
        let cr = self.spec.col_range(bj);
        assert_eq!(block.len(), rr.len(), "block height");
        for (bi_, i) in rr.enumerate() {
            assert_eq!(block[bi_].len(), cr.len(), "block width");
            for (bj_, j) in cr.clone().enumerate() {
                self.cells[i][j] = block[bi_][bj_];
            }
        }
    }

    pub fn cells(&self) -> &[Vec<i8>] {
        &self.cells
    }

    pub fn into_rows(self) -> Vec<Vec<i8>> {
        self.cells
    }
}

/// Parses `.mtxt` text with entries in {-1,0,1}.
pub fn parse_matrix(text: &str) -> Result<SignedMatrix, MatrixError> {
    let (rows, cols, data) = parse_grid(text, |v| (-1..=1).contains(&v))?;
    let data = data.into_iter().map(|v| v as i8).collect();
    SignedMatrix::new(rows, cols, data)
}

pub fn parse_binary(text: &str) -> Result<BinaryMatrix, MatrixError> {
    let (rows, cols, data) = parse_grid(text, |v| (0..=1).contains(&v))?;
    let data = data.into_iter().map(|v| v as i8).collect();
    BinaryMatrix::new(rows, cols, data)
}

/// Same layout with arbitrary integer entries, for Gram matrices.
pub fn parse_int_matrix(text: &str) -> Result<IntMatrix, MatrixError> {
    let (rows, cols, data) = parse_grid(text, |_| true)?;
    Ok(IntMatrix { rows, cols, data })
}

fn parse_grid(
    text: &str,
    allowed: impl Fn(i64) -> bool,
) -> Result<(usize, usize, Vec<i64>), MatrixError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (dline, dims) = lines.next().ok_or(MatrixError::BadDimensions { line: 1 })?;
    let dims: Vec<&str> = dims.split_whitespace().collect();
    let parse_dim = |s: &str| s.parse::<usize>().ok().filter(|&d| d > 0 && d <= 1 << 20);
    let (rows, cols) = match dims.as_slice() {
        [r, c] => match (parse_dim(r), parse_dim(c)) {
            (Some(r), Some(c)) => (r, c),
            _ => return Err(MatrixError::BadDimensions { line: dline }),
        },
        _ => return Err(MatrixError::BadDimensions { line: dline }),
    };
    let mut data = Vec::with_capacity(rows.saturating_mul(cols).min(1 << 20));
    let mut seen = 0;
    for (line, l) in lines {
        if seen == rows {
            return Err(MatrixError::RowCount {
                expected: rows,
                found: seen + 1,
            });
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != cols {
            return Err(MatrixError::RowLength {
                line,
                expected: cols,
                found: toks.len(),
            });
        }
        for t in toks {
            match t.parse::<i64>() {
                Ok(v) if allowed(v) => data.push(v),
                _ => {
                    return Err(MatrixError::EntryOutOfRange {
                        line,
                        token: t.to_string(),
                    })
                }
            }
        }
        seen += 1;
    }
    if seen != rows {
        return Err(MatrixError::RowCount {
            expected: rows,
            found: seen,
        });
    }
    Ok((rows, cols, data))
}

pub fn serialize_matrix<M: Dense + ?Sized>(m: &M) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| m.at(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_matches_big_path() {
        let e = SignedMatrix::from_rows(&[vec![1, -1, 0], vec![-1, 1, 0], vec![0, 1, -1]]).unwrap();
        let rows: Vec<Vec<BigInt>> = (0..3)
            .map(|i| (0..3).map(|j| BigInt::from(e.at(i, j))).collect())
            .collect();
        assert_eq!(bareiss_big(rows), 2);
        assert_eq!(rank_exact(&e), 2);
    }

    #[test]
    fn permutation_order_roundtrip() {
        let p = Permutation::from_order(&[2, 0, 1]).unwrap();
        assert_eq!(p.image(), &[1, 2, 0]);
        assert!(p.compose(&p.inverse()).is_identity());
    }
}
