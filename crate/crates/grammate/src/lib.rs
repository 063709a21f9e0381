//! Gram mates of zero-one matrices.
//!
//! Two distinct zero-one matrices `A` and `B` are Gram mates when
//! `A Aᵀ = B Bᵀ` and `Aᵀ A = Bᵀ B`. This crate verifies the relation exactly,
//! classifies rank-one and rank-two differences `E = B - A`, builds witnesses
//! for realizable `E`, combines known pairs into new ones and decides
//! isomorphism of pairs.

pub mod combinators;
pub mod gale_ryser;
pub mod gram;
pub mod iso;
pub mod matrix;
pub mod numerics;
pub mod oracle;
pub mod rank_forms;

pub use matrix::{
    parse_binary, parse_int_matrix, parse_matrix, rank_exact, serialize_matrix, BinaryMatrix,
    BlockSpec, Dense, IntMatrix, MatrixError, Permutation, SignedMatrix,
};
