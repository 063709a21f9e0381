//! Exact verification of Gram mates, realizability witnesses and the
//! sign-change convertibility test.

use serde::Serialize;
use thiserror::Error;

use crate::matrix::{independent_rows, BinaryMatrix, Dense, MatrixError, SignedMatrix};
use crate::numerics::{self, canonical_sign, dot, norm, NumericsError, RealMatrix};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GramError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("A + E is not a zero-one matrix")]
    NotBinary,
    #[error("convertibility checks disagree: {0:?}")]
    Inconsistent(ConvertibilityChecks),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A verified pair of Gram mates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GramPair {
    a: BinaryMatrix,
    b: BinaryMatrix,
    diff_rank: usize,
}

impl GramPair {
    pub fn a(&self) -> &BinaryMatrix {
        &self.a
    }

    pub fn b(&self) -> &BinaryMatrix {
        &self.b
    }

    pub fn diff_rank(&self) -> usize {
        self.diff_rank
    }

    /// `E = B - A`.
    pub fn difference(&self) -> SignedMatrix {
        self.b.sub(&self.a).expect("pair shapes agree")
    }

    pub fn swapped(&self) -> GramPair {
        GramPair {
            a: self.b.clone(),
            b: self.a.clone(),
            diff_rank: self.diff_rank,
        }
    }

    pub fn into_parts(self) -> (BinaryMatrix, BinaryMatrix) {
        (self.a, self.b)
    }
}

fn same_shape(a: &BinaryMatrix, b: &BinaryMatrix) -> Result<(), GramError> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(GramError::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(())
}

/// `Some(pair)` when `a` and `b` are Gram mates.
pub fn is_gram_pair(a: &BinaryMatrix, b: &BinaryMatrix) -> Result<Option<GramPair>, GramError> {
    same_shape(a, b)?;
    if a == b || a.gram_rows() != b.gram_rows() || a.gram_cols() != b.gram_cols() {
        return Ok(None);
    }
    debug_assert_eq!(a.row_sums(), b.row_sums());
    debug_assert_eq!(a.col_sums(), b.col_sums());
    let diff_rank = b.sub(a)?.rank();
    Ok(Some(GramPair {
        a: a.clone(),
        b: b.clone(),
        diff_rank,
    }))
}

/// True when `(A, A + E)` is a pair of Gram mates.
pub fn is_realizable_witness(e: &SignedMatrix, a: &BinaryMatrix) -> Result<bool, GramError> {
    if e.rows() != a.rows() || e.cols() != a.cols() {
        return Err(GramError::DimensionMismatch("E and A".into()));
    }
    let b = a.add_signed(e).map_err(|_| GramError::NotBinary)?;
    Ok(is_gram_pair(a, &b)?.is_some())
}

/// `Ẽ X₂ᵀ = 0` and `Ẽᵀ X₁ = 0` for the borders of a bordered difference.
pub fn embed_check(
    e_tilde: &SignedMatrix,
    x1: &BinaryMatrix,
    x2: &BinaryMatrix,
) -> Result<bool, GramError> {
    if x1.rows() != e_tilde.rows() || x2.cols() != e_tilde.cols() {
        return Err(GramError::DimensionMismatch("borders do not fit E".into()));
    }
    let e = e_tilde.to_int();
    let left = e.transpose().mul(&x1.to_int());
    let right = e.mul(&x2.to_int().transpose());
    Ok(left.is_zero() && right.is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GramSource {
    Numeric,
    ClosedFormRank1,
    ClosedFormRank2,
}

/// Gram singular values of a pair with their singular vectors.
#[derive(Clone, Debug, Serialize)]
pub struct GramSingularReport {
    pub values: Vec<f64>,
    pub right_vectors: Vec<Vec<f64>>,
    pub left_vectors: Vec<Vec<f64>>,
    pub source: GramSource,
    /// The 2×2 matrix whose eigenvalues are the squared values, rank two only.
    pub m_matrix: Option<[[f64; 2]; 2]>,
    /// `(ζ₁, ζ₂, λ)` eigenpairs of `m_matrix`.
    pub eigenpairs: Vec<(f64, f64, f64)>,
}

impl GramSingularReport {
    /// Fixes the sign of each right vector (first significant entry positive)
    /// and flips the paired left vector with it.
    pub fn canonicalize(&mut self) {
        for (v, u) in self
            .right_vectors
            .iter_mut()
            .zip(self.left_vectors.iter_mut())
        {
            if canonical_sign(v, 1e-9) {
                u.iter_mut().for_each(|x| *x = -*x);
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConvertibilityChecks {
    /// (A+B)(A−B)ᵀ = 0
    pub sum_diff_t_zero: bool,
    /// (A−B)ᵀ(A+B) = 0
    pub diff_t_sum_zero: bool,
    /// B is A with the signs of rank(A−B) singular values flipped
    pub sign_flip: bool,
    /// right singular vectors of A span Row(A−B) and are null vectors of A+B
    pub right_null_vectors: bool,
    /// left singular vectors of A span Col(A−B) and are null vectors of (A+B)ᵀ
    pub left_null_vectors: bool,
    /// A(A−B)ᵀ symmetric
    pub a_diff_t_symmetric: bool,
    /// Aᵀ(A−B) symmetric
    pub a_t_diff_symmetric: bool,
}

impl ConvertibilityChecks {
    pub fn as_array(&self) -> [bool; 7] {
        [
            self.sum_diff_t_zero,
            self.diff_t_sum_zero,
            self.sign_flip,
            self.right_null_vectors,
            self.left_null_vectors,
            self.a_diff_t_symmetric,
            self.a_t_diff_symmetric,
        ]
    }

    pub fn agree(&self) -> bool {
        let arr = self.as_array();
        arr.iter().all(|&b| b == arr[0])
    }

    pub const NAMES: [&'static str; 7] = [
        "(A+B)(A-B)^T = 0",
        "(A-B)^T(A+B) = 0",
        "sign flip of singular values",
        "right vectors null for A+B",
        "left vectors null for (A+B)^T",
        "A(A-B)^T symmetric",
        "A^T(A-B) symmetric",
    ];
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvertibilityReport {
    pub convertible: bool,
    pub checks: ConvertibilityChecks,
    pub gram_singular: Option<GramSingularReport>,
}

fn orthonormal_basis(vectors: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for mut v in vectors {
        for _ in 0..2 {
            for b in &basis {
                let d = dot(&v, b);
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
            }
        }
        let n = norm(&v);
        if n > 1e-12 {
            basis.push(v.into_iter().map(|x| x / n).collect());
        }
    }
    basis
}

fn projection_residual(v: &[f64], basis: &[Vec<f64>]) -> f64 {
    let mut r = v.to_vec();
    for b in basis {
        let d = dot(&r, b);
        r.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
    }
    norm(&r)
}

fn residual(a: &[f64], b: &[f64], s: f64) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - s * y).abs())
        .fold(0.0, f64::max)
}

/// Checks whether `B` arises from `A` by changing the signs of some positive
/// singular values, evaluating seven equivalent conditions.
pub fn convertibility(pair: &GramPair, tol: f64) -> Result<ConvertibilityReport, GramError> {
    let (a, b) = (pair.a.to_int(), pair.b.to_int());
    let sum = a.add(&b);
    let diff = a.sub(&b);
    let sum_diff_t_zero = sum.mul(&diff.transpose()).is_zero();
    let diff_t_sum_zero = diff.transpose().mul(&sum).is_zero();
    let a_diff_t_symmetric = a.mul(&diff.transpose()).is_symmetric();
    let a_t_diff_symmetric = a.transpose().mul(&diff).is_symmetric();

    let ar = RealMatrix::from_dense(&a);
    let br = RealMatrix::from_dense(&b);
    let sr = RealMatrix::from_dense(&sum);
    let half = RealMatrix::from_dense(&diff).scale(0.5);
    let bundle = numerics::svd(&half, tol)?;
    let k = bundle.rank();
    let ntol = tol * ar.norm_inf().max(1.0);
    let ata = ar.transpose().mul(&ar);
    let aat = ar.mul(&ar.transpose());
    let at = ar.transpose();
    let st = sr.transpose();

    let values: Vec<f64> = bundle.sigma[..k].to_vec();
    let lefts: Vec<Vec<f64>> = (0..k).map(|i| bundle.left(i)).collect();
    let rights: Vec<Vec<f64>> = (0..k).map(|i| bundle.right(i)).collect();

    let rank_ok = k == pair.diff_rank;
    let mut sign_flip = rank_ok;
    for i in 0..k {
        sign_flip &= residual(&ar.mul_vec(&rights[i]), &lefts[i], values[i]) <= ntol;
        sign_flip &= residual(&at.mul_vec(&lefts[i]), &rights[i], values[i]) <= ntol;
    }
    if sign_flip {
        let flipped = numerics::flip_triplets(&pair.a, &values, &lefts, &rights);
        sign_flip = flipped.max_abs_diff(&br) <= ntol;
    }

    let row_basis = orthonormal_basis(
        independent_rows(&diff)
            .into_iter()
            .map(|i| (0..diff.cols).map(|j| diff.get(i, j) as f64).collect())
            .collect(),
    );
    let diff_t = diff.transpose();
    let col_basis = orthonormal_basis(
        independent_rows(&diff_t)
            .into_iter()
            .map(|i| (0..diff_t.cols).map(|j| diff_t.get(i, j) as f64).collect())
            .collect(),
    );
    let gscale = ntol * ar.norm_inf().max(1.0);
    let zero_n = vec![0.0; ar.cols];
    let zero_m = vec![0.0; ar.rows];
    let mut right_null_vectors = rank_ok;
    let mut left_null_vectors = rank_ok;
    for i in 0..k {
        let (u, v, s2) = (&lefts[i], &rights[i], values[i] * values[i]);
        right_null_vectors &= residual(&sr.mul_vec(v), &zero_m, 0.0) <= ntol
            && residual(&ata.mul_vec(v), v, s2) <= gscale
            && projection_residual(v, &row_basis) <= ntol;
        left_null_vectors &= residual(&st.mul_vec(u), &zero_n, 0.0) <= ntol
            && residual(&aat.mul_vec(u), u, s2) <= gscale
            && projection_residual(u, &col_basis) <= ntol;
    }

    let checks = ConvertibilityChecks {
        sum_diff_t_zero,
        diff_t_sum_zero,
        sign_flip,
        right_null_vectors,
        left_null_vectors,
        a_diff_t_symmetric,
        a_t_diff_symmetric,
    };
    if !checks.agree() {
        return Err(GramError::Inconsistent(checks));
    }
    let convertible = checks.sum_diff_t_zero;
    let gram_singular = convertible.then(|| {
        let mut rep = GramSingularReport {
            values,
            right_vectors: rights,
            left_vectors: lefts,
            source: GramSource::Numeric,
            m_matrix: None,
            eigenpairs: Vec::new(),
        };
        rep.canonicalize();
        rep
    });
    Ok(ConvertibilityReport {
        convertible,
        checks,
        gram_singular,
    })
}

/// Positive singular values of `½(A − B)` with vectors, for any pair.
pub fn half_difference_svd(e: &SignedMatrix, tol: f64) -> Result<GramSingularReport, GramError> {
    let half = RealMatrix::from_dense(e).scale(-0.5);
    let bundle = numerics::svd(&half, tol)?;
    let k = bundle.rank();
    let mut rep = GramSingularReport {
        values: bundle.sigma[..k].to_vec(),
        right_vectors: (0..k).map(|i| bundle.right(i)).collect(),
        left_vectors: (0..k).map(|i| bundle.left(i)).collect(),
        source: GramSource::Numeric,
        m_matrix: None,
        eigenpairs: Vec::new(),
    };
    rep.canonicalize();
    Ok(rep)
}
