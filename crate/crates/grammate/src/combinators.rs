//! Constructions of new Gram pairs and realizable matrices from known ones.
//! Every output is checked with [`is_gram_pair`] before it is returned.

use thiserror::Error;

use crate::gram::{is_gram_pair, GramError, GramPair};
use crate::matrix::{BinaryMatrix, Dense, MatrixError, SignedMatrix};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CombinatorError {
    #[error("the two products are equal")]
    Degenerate,
    #[error("the two blocks are equal")]
    EqualBlocks,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("X must be nonzero")]
    ZeroFactor,
    #[error("witness does not realize E")]
    BadWitness,
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Gram(#[from] GramError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

fn verify(a: BinaryMatrix, b: BinaryMatrix, what: &str) -> Result<GramPair, CombinatorError> {
    if a == b {
        return Err(CombinatorError::Degenerate);
    }
    is_gram_pair(&a, &b)?.ok_or_else(|| CombinatorError::Verification(what.to_string()))
}

/// `(J − A, J − B)`.
pub fn complement_pair(p: &GramPair) -> Result<GramPair, CombinatorError> {
    verify(p.a().complement(), p.b().complement(), "complement")
}

/// `(diag(A₁, A₂), diag(B₁, B₂))`.
pub fn direct_sum_pair(p1: &GramPair, p2: &GramPair) -> Result<GramPair, CombinatorError> {
    let assemble =
        |x: &BinaryMatrix, y: &BinaryMatrix, fill: i8| -> Result<BinaryMatrix, MatrixError> {
            let tr = BinaryMatrix::from_fn(x.rows(), y.cols(), |_, _| fill);
            let bl = BinaryMatrix::from_fn(y.rows(), x.cols(), |_, _| fill);
            BinaryMatrix::from_blocks(&[vec![x, &tr], vec![&bl, y]])
        };
    let a = assemble(p1.a(), p2.a(), 0)?;
    let b = assemble(p1.b(), p2.b(), 0)?;
    verify(a, b, "direct sum")
}

/// `([[A₁, J], [J, A₂]], [[B₁, J], [J, B₂]])`.
pub fn join_pair(p1: &GramPair, p2: &GramPair) -> Result<GramPair, CombinatorError> {
    let assemble = |x: &BinaryMatrix, y: &BinaryMatrix| -> Result<BinaryMatrix, MatrixError> {
        let tr = BinaryMatrix::ones(x.rows(), y.cols());
        let bl = BinaryMatrix::ones(y.rows(), x.cols());
        BinaryMatrix::from_blocks(&[vec![x, &tr], vec![&bl, y]])
    };
    verify(assemble(p1.a(), p2.a())?, assemble(p1.b(), p2.b())?, "join")
}

/// `(A₁ ⊗ A₂, B₁ ⊗ B₂)`, which is always a pair of Gram mates when the
/// products differ.
pub fn kron_pair(p1: &GramPair, p2: &GramPair) -> Result<GramPair, CombinatorError> {
    verify(p1.a().kron(p2.a()), p1.b().kron(p2.b()), "kron")
}

/// `(A₁ ⊗ B₁, A₂ ⊗ B₂)` checked as is. `Ok(None)` when the two products are
/// not Gram mates.
pub fn kron_pair_literal(
    p1: &GramPair,
    p2: &GramPair,
) -> Result<Option<GramPair>, CombinatorError> {
    let x = p1.a().kron(p1.b());
    let y = p2.a().kron(p2.b());
    if x.rows() != y.rows() || x.cols() != y.cols() {
        return Err(CombinatorError::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            x.rows(),
            x.cols(),
            y.rows(),
            y.cols()
        )));
    }
    Ok(is_gram_pair(&x, &y)?)
}

/// `(A ⊗ B, B ⊗ A)`.
pub fn kron_swap(p: &GramPair) -> Result<GramPair, CombinatorError> {
    verify(p.a().kron(p.b()), p.b().kron(p.a()), "kron swap")
}

/// Which side of the Kronecker product `X` goes on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum KronSide {
    /// `X ⊗ E`
    #[default]
    Left,
    /// `E ⊗ X`
    Right,
}

/// `(X ⊗ E, X ⊗ W)` (or `E ⊗ X`, `W ⊗ X`) where `W` realizes `E`.
pub fn kron_realizable(
    x: &BinaryMatrix,
    e: &SignedMatrix,
    witness: &BinaryMatrix,
    side: KronSide,
) -> Result<(SignedMatrix, BinaryMatrix), CombinatorError> {
    if x.is_zero() {
        return Err(CombinatorError::ZeroFactor);
    }
    if e.rows() != witness.rows() || e.cols() != witness.cols() {
        return Err(CombinatorError::DimensionMismatch("E and witness".into()));
    }
    let mate = witness
        .add_signed(e)
        .map_err(|_| CombinatorError::BadWitness)?;
    if is_gram_pair(witness, &mate)?.is_none() {
        return Err(CombinatorError::BadWitness);
    }
    let xs = x.to_signed();
    let (ke, kw) = match side {
        KronSide::Left => (xs.kron(e), x.kron(witness)),
        KronSide::Right => (e.kron(&xs), witness.kron(x)),
    };
    let kb = kw
        .add_signed(&ke)
        .map_err(|_| CombinatorError::Verification("X ⊗ W + X ⊗ E".into()))?;
    verify(kw.clone(), kb, "realizable kron")?;
    Ok((ke, kw))
}

/// `([[A₁, A₂], [A₂, A₁]], [[A₂, A₁], [A₁, A₂]])`.
pub fn block_swap_pair(a1: &BinaryMatrix, a2: &BinaryMatrix) -> Result<GramPair, CombinatorError> {
    if a1.rows() != a2.rows() || a1.cols() != a2.cols() {
        return Err(CombinatorError::DimensionMismatch("A1 and A2".into()));
    }
    if a1 == a2 {
        return Err(CombinatorError::EqualBlocks);
    }
    let a = BinaryMatrix::from_blocks(&[vec![a1, a2], vec![a2, a1]])?;
    let b = BinaryMatrix::from_blocks(&[vec![a2, a1], vec![a1, a2]])?;
    verify(a, b, "block swap")
}
