use serde::Serialize;

use super::{check_rank_and_sums, to_original, FormError};
use crate::gram::{is_gram_pair, GramSingularReport, GramSource};
use crate::matrix::{BinaryMatrix, BlockCanvas, BlockSpec, Dense, Permutation, SignedMatrix};

/// A rank-one difference `[[J, −J, 0], [−J, J, 0], [0, 0, 0]]` with
/// `k1 × k2` blocks, up to the stored row and column permutations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank1Form {
    pub k1: usize,
    pub k2: usize,
    pub row_perm: Permutation,
    pub col_perm: Permutation,
}

impl Rank1Form {
    /// The canonical layout itself, with `zero_rows` and `zero_cols` appended.
    pub fn canonical(
        k1: usize,
        k2: usize,
        zero_rows: usize,
        zero_cols: usize,
    ) -> Result<Self, FormError> {
        if k1 == 0 || k2 == 0 {
            return Err(FormError::InvalidIndices(
                "k1 and k2 must be positive".into(),
            ));
        }
        Ok(Self {
            k1,
            k2,
            row_perm: Permutation::identity(2 * k1 + zero_rows),
            col_perm: Permutation::identity(2 * k2 + zero_cols),
        })
    }

    pub fn rows(&self) -> usize {
        self.row_perm.size()
    }

    pub fn cols(&self) -> usize {
        self.col_perm.size()
    }

    pub fn spec(&self) -> BlockSpec {
        BlockSpec::new(
            vec![self.k1, self.k1, self.rows() - 2 * self.k1],
            vec![self.k2, self.k2, self.cols() - 2 * self.k2],
        )
    }

    pub fn canonical_e(&self) -> SignedMatrix {
        let spec = self.spec();
        let mut c = BlockCanvas::new(spec.row_sizes, spec.col_sizes);
        c.fill(0, 0, 1);
        c.fill(0, 1, -1);
        c.fill(1, 0, -1);
        c.fill(1, 1, 1);
        SignedMatrix::from_rows(&c.into_rows()).expect("canonical layout is nonempty")
    }

    /// `E` in original coordinates.
    pub fn e(&self) -> SignedMatrix {
        self.canonical_e()
            .apply_perms(&self.row_perm.inverse(), &self.col_perm.inverse())
            .expect("sizes agree")
    }
}

pub fn classify_rank1(e: &SignedMatrix) -> Result<Rank1Form, FormError> {
    check_rank_and_sums(e, 1)?;
    let first = (0..e.rows())
        .find(|&i| e.row(i).iter().any(|&x| x != 0))
        .expect("nonzero");
    let pattern = e.row(first).to_vec();
    let neg: Vec<i8> = pattern.iter().map(|x| -x).collect();
    let mut groups: [Vec<usize>; 3] = Default::default();
    for i in 0..e.rows() {
        let row = e.row(i);
        let g = if row == pattern.as_slice() {
            0
        } else if row == neg.as_slice() {
            1
        } else if row.iter().all(|&x| x == 0) {
            2
        } else {
            return Err(FormError::Rank(2));
        };
        groups[g].push(i);
    }
    let mut cgroups: [Vec<usize>; 3] = Default::default();
    for (j, &x) in pattern.iter().enumerate() {
        cgroups[match x {
            1 => 0,
            -1 => 1,
            _ => 2,
        }]
        .push(j);
    }
    let (k1, k2) = (groups[0].len(), cgroups[0].len());
    if groups[1].len() != k1 || cgroups[1].len() != k2 {
        return Err(FormError::NonzeroSums);
    }
    let row_perm = Permutation::from_order(&groups.concat())?;
    let col_perm = Permutation::from_order(&cgroups.concat())?;
    let form = Rank1Form {
        k1,
        k2,
        row_perm,
        col_perm,
    };
    debug_assert_eq!(&form.e(), e);
    Ok(form)
}

fn block_col_sums(b: &[Vec<i64>], width: usize) -> Vec<i64> {
    (0..width).map(|j| b.iter().map(|r| r[j]).sum()).collect()
}

fn block_row_sums(b: &[Vec<i64>]) -> Vec<i64> {
    b.iter().map(|r| r.iter().sum()).collect()
}

/// Checks the fixed blocks `[[0, J], [J, 0]]` and the border conditions
/// `1ᵀX₁ = 1ᵀX₂`, `X₃1 = X₄1`.
pub fn rank1_witness_check(a: &BinaryMatrix, form: &Rank1Form) -> Result<bool, FormError> {
    if a.rows() != form.rows() || a.cols() != form.cols() {
        return Err(FormError::Layout(format!(
            "{}x{} witness for a {}x{} form",
            a.rows(),
            a.cols(),
            form.rows(),
            form.cols()
        )));
    }
    let ac = a.apply_perms(&form.row_perm, &form.col_perm)?;
    let spec = form.spec();
    let all = |bi, bj, v: i64| spec.block(&ac, bi, bj).iter().flatten().all(|&x| x == v);
    let fixed = all(0, 0, 0) && all(0, 1, 1) && all(1, 0, 1) && all(1, 1, 0);
    let w = spec.col_sizes[2];
    let ok = fixed
        && block_col_sums(&spec.block(&ac, 0, 2), w) == block_col_sums(&spec.block(&ac, 1, 2), w)
        && block_row_sums(&spec.block(&ac, 2, 0)) == block_row_sums(&spec.block(&ac, 2, 1));
    debug_assert!(
        a.add_signed(&form.e()).is_err()
            || ok
                == is_gram_pair(a, &a.add_signed(&form.e()).unwrap())
                    .unwrap()
                    .is_some()
    );
    Ok(ok)
}

/// The witness with zero borders, in the form's original coordinates.
pub fn rank1_complete(form: &Rank1Form) -> BinaryMatrix {
    let spec = form.spec();
    let mut c = BlockCanvas::new(spec.row_sizes, spec.col_sizes);
    c.fill(0, 1, 1);
    c.fill(1, 0, 1);
    BinaryMatrix::from_rows(&c.into_rows())
        .expect("nonempty")
        .apply_perms(&form.row_perm.inverse(), &form.col_perm.inverse())
        .expect("sizes agree")
}

/// Value `√(k1 k2)` with its singular vectors, in original coordinates.
pub fn rank1_gram_data(form: &Rank1Form) -> GramSingularReport {
    let (k1, k2) = (form.k1, form.k2);
    let (m, n) = (form.rows(), form.cols());
    let cu = 1.0 / ((2 * k1) as f64).sqrt();
    let cv = 1.0 / ((2 * k2) as f64).sqrt();
    let u: Vec<f64> = (0..m)
        .map(|i| {
            if i < k1 {
                -cu
            } else if i < 2 * k1 {
                cu
            } else {
                0.0
            }
        })
        .collect();
    let v: Vec<f64> = (0..n)
        .map(|j| {
            if j < k2 {
                cv
            } else if j < 2 * k2 {
                -cv
            } else {
                0.0
            }
        })
        .collect();
    let mut rep = GramSingularReport {
        values: vec![((k1 * k2) as f64).sqrt()],
        right_vectors: vec![to_original(&v, &form.col_perm)],
        left_vectors: vec![to_original(&u, &form.row_perm)],
        source: GramSource::ClosedFormRank1,
        m_matrix: None,
        eigenpairs: Vec::new(),
    };
    rep.canonicalize();
    rep
}
