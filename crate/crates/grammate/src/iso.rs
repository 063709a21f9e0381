//! Isomorphism of zero-one matrices under independent row and column
//! permutations, the remaining matrix of a rank-one pair and its fixability.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::gram::GramPair;
use crate::matrix::{BinaryMatrix, Dense, MatrixError, Permutation};
use crate::numerics::distinct_singular_values;
use crate::rank_forms::{classify_rank1, FormError};

pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IsoError {
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("matrix must be square")]
    NotSquare,
    #[error("singular values are not pairwise distinct")]
    SpectrumNotDistinct,
    #[error("difference has rank {0}, expected 1")]
    NotRankOne(usize),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// `B = apply_perms(A, row_perm, col_perm)`, i.e. `B[σ(i)][τ(j)] = A[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    pub row_perm: Permutation,
    pub col_perm: Permutation,
}

impl IsoWitness {
    pub fn verify(&self, a: &BinaryMatrix, b: &BinaryMatrix) -> bool {
        a.apply_perms(&self.row_perm, &self.col_perm)
            .map_or(false, |x| &x == b)
    }

    /// Both permutations preserve the Gram matrices of `a`.
    pub fn preserves_grams(&self, a: &BinaryMatrix) -> bool {
        let g = a.gram_rows();
        let h = a.gram_cols();
        let p = &self.row_perm;
        let q = &self.col_perm;
        (0..g.rows()).all(|i| (0..g.cols()).all(|j| g.get(p.apply(i), p.apply(j)) == g.get(i, j)))
            && (0..h.rows())
                .all(|i| (0..h.cols()).all(|j| h.get(q.apply(i), q.apply(j)) == h.get(i, j)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum IsoVerdict {
    Isomorphic { witness: IsoWitness, nodes: u64 },
    NonIsomorphic { nodes: u64 },
    Undecided { nodes: u64 },
}

impl IsoVerdict {
    pub fn witness(&self) -> Option<&IsoWitness> {
        match self {
            IsoVerdict::Isomorphic { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn is_undecided(&self) -> bool {
        matches!(self, IsoVerdict::Undecided { .. })
    }
}

/// Initial colour classes; rows (columns) may only be matched within a class.
#[derive(Clone, Debug, Default)]
struct Classes {
    rows_a: Vec<u32>,
    rows_b: Vec<u32>,
    cols_a: Vec<u32>,
    cols_b: Vec<u32>,
}

impl Classes {
    fn uniform(m: usize, n: usize) -> Self {
        Classes {
            rows_a: vec![0; m],
            rows_b: vec![0; m],
            cols_a: vec![0; n],
            cols_b: vec![0; n],
        }
    }
}

/// Joint colour refinement of rows and columns of both matrices. `None` when
/// the colour histograms of `a` and `b` differ.
fn refine(a: &BinaryMatrix, b: &BinaryMatrix, c: &Classes) -> Option<Classes> {
    let (m, n) = (a.rows(), a.cols());
    let mut rows = [Vec::new(), Vec::new()];
    let mut cols = [Vec::new(), Vec::new()];
    for (s, x) in [a, b].iter().enumerate() {
        let rc = if s == 0 { &c.rows_a } else { &c.rows_b };
        let cc = if s == 0 { &c.cols_a } else { &c.cols_b };
        let (rs, cs) = (x.row_sums(), x.col_sums());
        rows[s] = (0..m).map(|i| (rc[i], rs[i])).collect::<Vec<_>>();
        cols[s] = (0..n).map(|j| (cc[j], cs[j])).collect::<Vec<_>>();
    }
    let relabel = |keys: [Vec<(u32, i64)>; 2]| -> Option<[Vec<u32>; 2]> {
        let mut ids: HashMap<(u32, i64), u32> = HashMap::new();
        let mut out = [Vec::new(), Vec::new()];
        for s in 0..2 {
            for k in &keys[s] {
                let next = ids.len() as u32;
                out[s].push(*ids.entry(*k).or_insert(next));
            }
        }
        histograms_match(&out).then_some(out)
    };
    let mut row_col = relabel(rows)?;
    let mut col_col = relabel(cols)?;
    let mut classes = count_classes(&row_col) + count_classes(&col_col);
    loop {
        let mut rkeys: [Vec<Vec<u32>>; 2] = [Vec::new(), Vec::new()];
        let mut ckeys: [Vec<Vec<u32>>; 2] = [Vec::new(), Vec::new()];
        for (s, x) in [a, b].iter().enumerate() {
            for i in 0..m {
                let mut k: Vec<u32> = (0..n)
                    .filter(|&j| x.get(i, j) == 1)
                    .map(|j| col_col[s][j])
                    .collect();
                k.sort_unstable();
                k.insert(0, row_col[s][i]);
                rkeys[s].push(k);
            }
            for j in 0..n {
                let mut k: Vec<u32> = (0..m)
                    .filter(|&i| x.get(i, j) == 1)
                    .map(|i| row_col[s][i])
                    .collect();
                k.sort_unstable();
                k.insert(0, col_col[s][j]);
                ckeys[s].push(k);
            }
        }
        row_col = relabel_vec(rkeys)?;
        col_col = relabel_vec(ckeys)?;
        let now = count_classes(&row_col) + count_classes(&col_col);
        if now == classes {
            break;
        }
        classes = now;
    }
    let [rows_a, rows_b] = row_col;
    let [cols_a, cols_b] = col_col;
    Some(Classes {
        rows_a,
        rows_b,
        cols_a,
        cols_b,
    })
}

fn relabel_vec(keys: [Vec<Vec<u32>>; 2]) -> Option<[Vec<u32>; 2]> {
    let mut ids: HashMap<&[u32], u32> = HashMap::new();
    let mut out = [Vec::new(), Vec::new()];
    for s in 0..2 {
        for k in &keys[s] {
            let next = ids.len() as u32;
            out[s].push(*ids.entry(k.as_slice()).or_insert(next));
        }
    }
    histograms_match(&out).then_some(out)
}

fn histograms_match(c: &[Vec<u32>; 2]) -> bool {
    let mut x = c[0].clone();
    let mut y = c[1].clone();
    x.sort_unstable();
    y.sort_unstable();
    x == y
}

fn count_classes(c: &[Vec<u32>; 2]) -> usize {
    let mut x = c[0].clone();
    x.sort_unstable();
    x.dedup();
    x.len()
}

fn mix(h: u64, bit: i8) -> u64 {
    (h ^ (bit as u64 + 1))
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .rotate_left(29)
}

enum Outcome {
    Found(IsoWitness),
    Exhausted,
    Capped,
}

struct Search<'a> {
    a: &'a BinaryMatrix,
    b: &'a BinaryMatrix,
    c: Classes,
    involution: bool,
    cap: u64,
    nodes: u64,
    sigma: Vec<Option<usize>>,
    used: Vec<bool>,
    order: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(
        a: &'a BinaryMatrix,
        b: &'a BinaryMatrix,
        c: Classes,
        involution: bool,
        cap: u64,
    ) -> Self {
        let m = a.rows();
        let mut size: HashMap<u32, usize> = HashMap::new();
        for &x in &c.rows_a {
            *size.entry(x).or_default() += 1;
        }
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| (size[&c.rows_a[i]], i));
        Search {
            a,
            b,
            c,
            involution,
            cap,
            nodes: 0,
            sigma: vec![None; m],
            used: vec![false; m],
            order,
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes > self.cap
    }

    /// Column partial signatures of both sides must agree as multisets.
    fn compatible(&self, sa: &[u64], sb: &[u64]) -> bool {
        let mut x: Vec<u64> = sa
            .iter()
            .zip(&self.c.cols_a)
            .map(|(&h, &c)| mix(h, 0) ^ c as u64)
            .collect();
        let mut y: Vec<u64> = sb
            .iter()
            .zip(&self.c.cols_b)
            .map(|(&h, &c)| mix(h, 0) ^ c as u64)
            .collect();
        x.sort_unstable();
        y.sort_unstable();
        x == y
    }

    fn extend(&self, sa: &[u64], sb: &[u64], i: usize, r: usize) -> (Vec<u64>, Vec<u64>) {
        let na = sa
            .iter()
            .enumerate()
            .map(|(j, &h)| mix(h, self.a.get(i, j)))
            .collect();
        let nb = sb
            .iter()
            .enumerate()
            .map(|(j, &h)| mix(h, self.b.get(r, j)))
            .collect();
        (na, nb)
    }

    fn run(&mut self) -> Outcome {
        let n = self.a.cols();
        self.descend(0, vec![0; n], vec![0; n])
    }

    fn descend(&mut self, depth: usize, sa: Vec<u64>, sb: Vec<u64>) -> Outcome {
        let mut depth = depth;
        while depth < self.order.len() && self.sigma[self.order[depth]].is_some() {
            depth += 1;
        }
        if depth == self.order.len() {
            return self.match_columns();
        }
        let i = self.order[depth];
        let mut tried: Vec<&[i8]> = Vec::new();
        for r in 0..self.b.rows() {
            if self.used[r] || self.c.rows_b[r] != self.c.rows_a[i] {
                continue;
            }
            if self.involution {
                if r != i
                    && (self.sigma[r].is_some()
                        || self.used[i]
                        || self.c.rows_a[r] != self.c.rows_b[i])
                {
                    continue;
                }
            } else {
                let row = self.b.row(r);
                if tried.contains(&row) {
                    continue;
                }
                tried.push(row);
            }
            if self.tick() {
                return Outcome::Capped;
            }
            let (mut na, mut nb) = self.extend(&sa, &sb, i, r);
            let paired = self.involution && r != i;
            if paired {
                (na, nb) = self.extend(&na, &nb, r, i);
            }
            if !self.compatible(&na, &nb) {
                continue;
            }
            self.sigma[i] = Some(r);
            self.used[r] = true;
            if paired {
                self.sigma[r] = Some(i);
                self.used[i] = true;
            }
            let out = self.descend(depth + 1, na, nb);
            self.sigma[i] = None;
            self.used[r] = false;
            if paired {
                self.sigma[r] = None;
                self.used[i] = false;
            }
            match out {
                Outcome::Exhausted => {}
                other => return other,
            }
        }
        Outcome::Exhausted
    }

    /// Exact column vectors of `a` (in row order) and of `b` (read through σ).
    fn column_keys(&self) -> (Vec<(u32, Vec<i8>)>, Vec<(u32, Vec<i8>)>) {
        let m = self.a.rows();
        let sigma: Vec<usize> = self.sigma.iter().map(|s| s.expect("complete")).collect();
        let ka = (0..self.a.cols())
            .map(|j| (self.c.cols_a[j], (0..m).map(|i| self.a.get(i, j)).collect()))
            .collect();
        let kb = (0..self.b.cols())
            .map(|j| {
                (
                    self.c.cols_b[j],
                    (0..m).map(|i| self.b.get(sigma[i], j)).collect(),
                )
            })
            .collect();
        (ka, kb)
    }

    fn match_columns(&mut self) -> Outcome {
        let (ka, kb) = self.column_keys();
        let n = ka.len();
        let tau = if self.involution {
            let mut tau = vec![usize::MAX; n];
            match self.pair_columns(&ka, &kb, &mut tau) {
                Some(true) => tau,
                Some(false) => return Outcome::Exhausted,
                None => return Outcome::Capped,
            }
        } else {
            let mut pool: HashMap<&(u32, Vec<i8>), Vec<usize>> = HashMap::new();
            for (j, k) in kb.iter().enumerate().rev() {
                pool.entry(k).or_default().push(j);
            }
            let mut tau = Vec::with_capacity(n);
            for k in &ka {
                match pool.get_mut(k).and_then(|v| v.pop()) {
                    Some(j) => tau.push(j),
                    None => return Outcome::Exhausted,
                }
            }
            tau
        };
        let sigma: Vec<usize> = self.sigma.iter().map(|s| s.expect("complete")).collect();
        let w = IsoWitness {
            row_perm: Permutation::from_image(sigma).expect("bijection"),
            col_perm: Permutation::from_image(tau).expect("bijection"),
        };
        if w.verify(self.a, self.b) {
            Outcome::Found(w)
        } else {
            Outcome::Exhausted
        }
    }

    /// Involutive column matching: `Some(true)` with `tau` complete,
    /// `Some(false)` when none exists, `None` at the cap.
    fn pair_columns(
        &mut self,
        ka: &[(u32, Vec<i8>)],
        kb: &[(u32, Vec<i8>)],
        tau: &mut [usize],
    ) -> Option<bool> {
        let Some(j) = tau.iter().position(|&t| t == usize::MAX) else {
            return Some(true);
        };
        let mut tried: Vec<(&(u32, Vec<i8>), &(u32, Vec<i8>))> = Vec::new();
        for t in j..tau.len() {
            if tau[t] != usize::MAX || kb[t] != ka[j] || (t != j && ka[t] != kb[j]) {
                continue;
            }
            if t != j {
                let key = (&ka[t], &kb[t]);
                if tried.contains(&key) {
                    continue;
                }
                tried.push(key);
            }
            if self.tick() {
                return None;
            }
            tau[j] = t;
            tau[t] = j;
            if self.pair_columns(ka, kb, tau)? {
                return Some(true);
            }
            tau[j] = usize::MAX;
            tau[t] = usize::MAX;
        }
        Some(false)
    }
}

fn search(
    a: &BinaryMatrix,
    b: &BinaryMatrix,
    classes: Classes,
    involution: bool,
    cap: u64,
) -> IsoVerdict {
    let Some(refined) = refine(a, b, &classes) else {
        return IsoVerdict::NonIsomorphic { nodes: 0 };
    };
    let mut s = Search::new(a, b, refined, involution, cap);
    let out = s.run();
    let nodes = s.nodes;
    match out {
        Outcome::Found(witness) => {
            debug_assert!(witness.verify(a, b));
            IsoVerdict::Isomorphic { witness, nodes }
        }
        Outcome::Exhausted => IsoVerdict::NonIsomorphic { nodes },
        Outcome::Capped => IsoVerdict::Undecided { nodes },
    }
}

fn same_dims(a: &BinaryMatrix, b: &BinaryMatrix) -> Result<(), IsoError> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(IsoError::DimensionMismatch(
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols(),
        ));
    }
    Ok(())
}

/// Complete backtracking search for `B = P A Q` within `node_cap` nodes.
pub fn are_isomorphic(
    a: &BinaryMatrix,
    b: &BinaryMatrix,
    node_cap: u64,
) -> Result<IsoVerdict, IsoError> {
    same_dims(a, b)?;
    Ok(search(
        a,
        b,
        Classes::uniform(a.rows(), a.cols()),
        false,
        node_cap,
    ))
}

/// Search restricted to involutive `P` and `Q`, for square Gram mates whose
/// singular values are pairwise distinct.
pub fn iso_distinct_sv(
    pair: &GramPair,
    rel_tol: f64,
    node_cap: u64,
) -> Result<IsoVerdict, IsoError> {
    let (a, b) = (pair.a(), pair.b());
    if a.rows() != a.cols() {
        return Err(IsoError::NotSquare);
    }
    if !distinct_singular_values(a, rel_tol) {
        return Err(IsoError::SpectrumNotDistinct);
    }
    Ok(search(
        a,
        b,
        Classes::uniform(a.rows(), a.cols()),
        true,
        node_cap,
    ))
}

/// A rank-one pair in the layout
/// `A = [[0, J, X₁], [J, 0, X₂], [X₃, X₄, Y]]`, `B = [[J, 0, X₁], [0, J, X₂], [X₃, X₄, Y]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemainingContext {
    pub k1: usize,
    pub k2: usize,
    /// Original coordinates to the layout above.
    pub row_perm: Permutation,
    pub col_perm: Permutation,
    pub a: BinaryMatrix,
    pub b: BinaryMatrix,
    /// Rows and columns touched by `A − B`, original indices.
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub y: Option<BinaryMatrix>,
    pub x1: Option<BinaryMatrix>,
    pub x2: Option<BinaryMatrix>,
    pub x3: Option<BinaryMatrix>,
    pub x4: Option<BinaryMatrix>,
}

impl RemainingContext {
    fn row_groups(&self) -> [std::ops::Range<usize>; 3] {
        let (k, m) = (self.k1, self.a.rows());
        [0..k, k..2 * k, 2 * k..m]
    }

    fn col_groups(&self) -> [std::ops::Range<usize>; 3] {
        let (k, n) = (self.k2, self.a.cols());
        [0..k, k..2 * k, 2 * k..n]
    }
}

pub fn remaining_context(pair: &GramPair) -> Result<RemainingContext, IsoError> {
    if pair.diff_rank() != 1 {
        return Err(IsoError::NotRankOne(pair.diff_rank()));
    }
    let form = classify_rank1(&pair.difference())?;
    let a = pair.a().apply_perms(&form.row_perm, &form.col_perm)?;
    let b = pair.b().apply_perms(&form.row_perm, &form.col_perm)?;
    let (m, n) = (a.rows(), a.cols());
    let (k1, k2) = (form.k1, form.k2);
    let inv_r = form.row_perm.inverse();
    let inv_c = form.col_perm.inverse();
    let alpha: Vec<usize> = (0..2 * k1).map(|i| inv_r.apply(i)).collect();
    let beta: Vec<usize> = (0..2 * k2).map(|j| inv_c.apply(j)).collect();
    let r = |s: std::ops::Range<usize>| s.collect::<Vec<usize>>();
    let block =
        |rs: std::ops::Range<usize>, cs: std::ops::Range<usize>| a.submatrix(&r(rs), &r(cs));
    Ok(RemainingContext {
        k1,
        k2,
        y: block(2 * k1..m, 2 * k2..n),
        x1: block(0..k1, 2 * k2..n),
        x2: block(k1..2 * k1, 2 * k2..n),
        x3: block(2 * k1..m, 0..k2),
        x4: block(2 * k1..m, k2..2 * k2),
        row_perm: form.row_perm,
        col_perm: form.col_perm,
        alpha,
        beta,
        a,
        b,
    })
}

/// Which of the two permutation patterns certifies fixability.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FixCase {
    /// `(P₁, P₂, Q) ∈ R(X₁, X₂)` and `(P, Q₃, Q₄) ∈ L(X₃, X₄)`
    Rows,
    /// the same with the roles of rows and columns exchanged
    Columns,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FixVerdict {
    /// `witness` maps the original `A` to the original `B`.
    Fixable {
        case: FixCase,
        witness: IsoWitness,
        nodes: u64,
    },
    NotFixable {
        nodes: u64,
    },
    Undecided {
        nodes: u64,
    },
}

impl FixVerdict {
    pub fn is_fixable(&self) -> bool {
        matches!(self, FixVerdict::Fixable { .. })
    }

    pub fn is_undecided(&self) -> bool {
        matches!(self, FixVerdict::Undecided { .. })
    }
}

fn group_labels(groups: &[std::ops::Range<usize>; 3], labels: [u32; 3], len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for (g, range) in groups.iter().enumerate() {
        for i in range.clone() {
            out[i] = labels[g];
        }
    }
    out
}

/// Decides whether the remaining matrix is fixable.
///
/// Fixability in the row pattern is the existence of `B = M A N` with `M`
/// exchanging the first two row groups and keeping the third, and `N`
/// keeping every column group; the column pattern is the same on `Aᵀ, Bᵀ`.
pub fn is_fixable(ctx: &RemainingContext, node_cap: u64) -> FixVerdict {
    let rg = ctx.row_groups();
    let cg = ctx.col_groups();
    let (m, n) = (ctx.a.rows(), ctx.a.cols());
    let mut nodes = 0;
    let mut capped = false;
    for case in [FixCase::Rows, FixCase::Columns] {
        let (a, b, c) = match case {
            FixCase::Rows => (
                ctx.a.clone(),
                ctx.b.clone(),
                Classes {
                    rows_a: group_labels(&rg, [0, 1, 2], m),
                    rows_b: group_labels(&rg, [1, 0, 2], m),
                    cols_a: group_labels(&cg, [0, 1, 2], n),
                    cols_b: group_labels(&cg, [0, 1, 2], n),
                },
            ),
            FixCase::Columns => (
                ctx.a.transpose(),
                ctx.b.transpose(),
                Classes {
                    rows_a: group_labels(&cg, [0, 1, 2], n),
                    rows_b: group_labels(&cg, [1, 0, 2], n),
                    cols_a: group_labels(&rg, [0, 1, 2], m),
                    cols_b: group_labels(&rg, [0, 1, 2], m),
                },
            ),
        };
        match search(&a, &b, c, false, node_cap.saturating_sub(nodes)) {
            IsoVerdict::Isomorphic { witness, nodes: k } => {
                let (p, q) = match case {
                    FixCase::Rows => (witness.row_perm, witness.col_perm),
                    FixCase::Columns => (witness.col_perm, witness.row_perm),
                };
                let row_perm = ctx.row_perm.inverse().compose(&p).compose(&ctx.row_perm);
                let col_perm = ctx.col_perm.inverse().compose(&q).compose(&ctx.col_perm);
                return FixVerdict::Fixable {
                    case,
                    witness: IsoWitness { row_perm, col_perm },
                    nodes: nodes + k,
                };
            }
            IsoVerdict::NonIsomorphic { nodes: k } => nodes += k,
            IsoVerdict::Undecided { nodes: k } => {
                nodes += k;
                capped = true;
            }
        }
    }
    if capped {
        FixVerdict::Undecided { nodes }
    } else {
        FixVerdict::NotFixable { nodes }
    }
}

/// Row sums of the first two row groups share no value with those of the
/// third, and likewise for column sums.
pub fn sum_separation(ctx: &RemainingContext) -> bool {
    let rs = ctx.a.row_sums();
    let cs = ctx.a.col_sums();
    let disjoint = |sums: &[i64], g: &[std::ops::Range<usize>; 3]| {
        let rest: Vec<i64> = sums[g[2].clone()].to_vec();
        sums[g[0].start..g[1].end].iter().all(|v| !rest.contains(v))
    };
    disjoint(&rs, &ctx.row_groups()) && disjoint(&cs, &ctx.col_groups())
}
