//! Canonical forms of realizable difference matrices of rank one and two,
//! their realizability, witnesses and closed-form Gram singular data.

mod rank1;
mod rank2;
mod witness;

pub use rank1::{classify_rank1, rank1_complete, rank1_gram_data, rank1_witness_check, Rank1Form};
pub use rank2::{classify_rank2, rank2_realizable, Rank2Form, Rank2Indices, Rank2Type};
pub use witness::{
    rank2_complete, rank2_gram_data, rank2_witness_check, Rank2WitnessProfile, WitnessCheck,
};

use thiserror::Error;

use crate::gale_ryser::GaleRyserError;
use crate::gram::GramError;
use crate::matrix::{Dense, MatrixError, SignedMatrix};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormError {
    #[error("matrix is zero")]
    Zero,
    #[error("rank is {0}")]
    Rank(usize),
    #[error("row or column sums are not all zero")]
    NonzeroSums,
    #[error("no rank-two form matches in either orientation")]
    NoMatch,
    #[error("invalid indices: {0}")]
    InvalidIndices(String),
    #[error("layout mismatch: {0}")]
    Layout(String),
    #[error("not realizable")]
    NotRealizable,
    #[error("not convertible")]
    NotConvertible,
    #[error("a witness profile is required for this form")]
    MissingProfile,
    #[error("internal: {0}")]
    Internal(String),
    #[error(transparent)]
    GaleRyser(#[from] GaleRyserError),
    #[error(transparent)]
    Gram(#[from] GramError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

fn check_rank_and_sums(e: &SignedMatrix, want: usize) -> Result<(), FormError> {
    if e.is_zero() {
        return Err(FormError::Zero);
    }
    let r = e.rank();
    if r != want {
        return Err(FormError::Rank(r));
    }
    if e.row_sums()
        .iter()
        .chain(e.col_sums().iter())
        .any(|&s| s != 0)
    {
        return Err(FormError::NonzeroSums);
    }
    Ok(())
}

/// Maps a vector given in canonical coordinates back to original ones.
fn to_original(v: &[f64], perm: &crate::matrix::Permutation) -> Vec<f64> {
    (0..v.len()).map(|j| v[perm.apply(j)]).collect()
}
