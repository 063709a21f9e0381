//! Exhaustive ground truth at small sizes: every Gram pair of a shape, every
//! mate of a matrix, and sweeps that check the other modules against them.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::combinators::{
    block_swap_pair, complement_pair, direct_sum_pair, join_pair, kron_pair, kron_swap,
    CombinatorError,
};
use crate::gram::{convertibility, half_difference_svd, is_gram_pair, GramError, GramPair};
use crate::matrix::{serialize_matrix, BinaryMatrix, Dense};
use crate::numerics::{reconstruct_from_grams, singular_values, DEFAULT_TOL};
use crate::rank_forms::{
    classify_rank1, classify_rank2, rank1_gram_data, rank1_witness_check, rank2_gram_data,
    rank2_realizable, rank2_witness_check, FormError,
};

/// Largest `m·n` accepted by [`enumerate_gram_pairs`] unless overridden.
pub const DEFAULT_CELL_CAP: usize = 25;
/// Default node budget of [`enumerate_mates_of`].
pub const DEFAULT_MATE_CAP: u64 = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("{m}x{n} has {cells} cells, above the cap of {cap}")]
    CellCap {
        m: usize,
        n: usize,
        cells: usize,
        cap: usize,
    },
    #[error("search exceeded {0} nodes")]
    NodeCap(u64),
    #[error("matrix has {0} columns, at most 64 are supported")]
    TooWide(usize),
    #[error("bad filter: {0}")]
    BadFilter(String),
    #[error("bad scope: {0}")]
    BadScope(String),
    #[error("violation of {check}:\n{counterexample}")]
    Violation {
        check: String,
        counterexample: String,
    },
    #[error(transparent)]
    Gram(#[from] GramError),
    #[error(transparent)]
    Combinator(#[from] CombinatorError),
}

/// Optional restrictions on enumerated pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairFilters {
    pub row_sums: Option<Vec<usize>>,
    pub col_sums: Option<Vec<usize>>,
    pub diff_rank: Option<usize>,
    /// Overrides [`DEFAULT_CELL_CAP`].
    pub cell_cap: Option<usize>,
}

/// Worker count from `GRAMMATE_THREADS`, else the available parallelism.
pub fn worker_count() -> usize {
    std::env::var("GRAMMATE_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

/// Row-major bit layout with the first entry in the highest bit, so numeric
/// order of codes is lexicographic order of matrices.
#[derive(Clone, Copy)]
struct Shape {
    m: usize,
    n: usize,
}

impl Shape {
    fn cells(self) -> usize {
        self.m * self.n
    }

    fn row(self, code: u32, i: usize) -> u32 {
        (code >> (self.n * (self.m - 1 - i))) & ((1u32 << self.n) - 1)
    }

    fn col(self, code: u32, j: usize) -> u32 {
        let mut c = 0;
        for i in 0..self.m {
            c = (c << 1) | (self.row(code, i) >> (self.n - 1 - j)) & 1;
        }
        c
    }

    fn matrix(self, code: u32) -> BinaryMatrix {
        let mn = self.cells();
        BinaryMatrix::from_fn(self.m, self.n, |i, j| {
            ((code >> (mn - 1 - (i * self.n + j))) & 1) as i8
        })
    }

    /// Upper triangles of `A Aᵀ` and `Aᵀ A`.
    fn fingerprint(self, code: u32) -> Vec<u8> {
        let rows: Vec<u32> = (0..self.m).map(|i| self.row(code, i)).collect();
        let cols: Vec<u32> = (0..self.n).map(|j| self.col(code, j)).collect();
        let mut out = Vec::with_capacity(rows.len() * rows.len() + cols.len() * cols.len());
        for set in [&rows, &cols] {
            for (i, x) in set.iter().enumerate() {
                for y in &set[i..] {
                    out.push((x & y).count_ones() as u8);
                }
            }
        }
        out
    }

    fn passes(self, code: u32, f: &PairFilters) -> bool {
        if let Some(rs) = &f.row_sums {
            if (0..self.m).any(|i| self.row(code, i).count_ones() as usize != rs[i]) {
                return false;
            }
        }
        if let Some(cs) = &f.col_sums {
            if (0..self.n).any(|j| self.col(code, j).count_ones() as usize != cs[j]) {
                return false;
            }
        }
        true
    }
}

fn hash_of(bytes: &[u8]) -> u64 {
    let mut h = DefaultHasher::new();
    bytes.hash(&mut h);
    h.finish()
}

/// All unordered pairs of distinct `m × n` Gram mates, ordered
/// lexicographically by `(A, B)` with `A < B`.
pub fn enumerate_gram_pairs(
    m: usize,
    n: usize,
    filters: &PairFilters,
) -> Result<Vec<GramPair>, OracleError> {
    let cap = filters.cell_cap.unwrap_or(DEFAULT_CELL_CAP).min(31);
    if m == 0 || n == 0 || m * n > cap {
        return Err(OracleError::CellCap {
            m,
            n,
            cells: m * n,
            cap,
        });
    }
    if filters.row_sums.as_ref().is_some_and(|r| r.len() != m) {
        return Err(OracleError::BadFilter(format!("need {} row sums", m)));
    }
    if filters.col_sums.as_ref().is_some_and(|c| c.len() != n) {
        return Err(OracleError::BadFilter(format!("need {} column sums", n)));
    }
    let shape = Shape { m, n };
    let total: u64 = 1 << shape.cells();
    let workers = (worker_count() as u64).clamp(1, total) as usize;
    let chunk = total.div_ceil(workers as u64);
    let mut keyed: Vec<(u64, u32)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| {
                let lo = w * chunk;
                let hi = ((w + 1) * chunk).min(total);
                s.spawn(move || {
                    (lo..hi)
                        .map(|c| c as u32)
                        .filter(|&c| shape.passes(c, filters))
                        .map(|c| (hash_of(&shape.fingerprint(c)), c))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    keyed.sort_unstable();

    let mut codes: Vec<(u32, u32)> = Vec::new();
    let mut start = 0;
    while start < keyed.len() {
        let mut end = start + 1;
        while end < keyed.len() && keyed[end].0 == keyed[start].0 {
            end += 1;
        }
        if end - start > 1 {
            let mut groups: BTreeMap<Vec<u8>, Vec<u32>> = BTreeMap::new();
            for &(_, c) in &keyed[start..end] {
                groups.entry(shape.fingerprint(c)).or_default().push(c);
            }
            for members in groups.values() {
                for (i, &x) in members.iter().enumerate() {
                    for &y in &members[i + 1..] {
                        codes.push((x.min(y), x.max(y)));
                    }
                }
            }
        }
        start = end;
    }
    codes.sort_unstable();

    let mut out = Vec::with_capacity(codes.len());
    for (x, y) in codes {
        let pair = is_gram_pair(&shape.matrix(x), &shape.matrix(y))?.ok_or_else(|| {
            OracleError::Violation {
                check: "fingerprint grouping".into(),
                counterexample: pair_text(&shape.matrix(x), &shape.matrix(y)),
            }
        })?;
        if filters.diff_rank.map_or(true, |r| r == pair.diff_rank()) {
            out.push(pair);
        }
    }
    Ok(out)
}

struct MateSearch<'a> {
    n: usize,
    row_sums: Vec<u32>,
    col_target: Vec<u32>,
    gram_rows: &'a [Vec<u32>],
    gram_cols: Vec<Vec<u32>>,
    col_now: Vec<u32>,
    pair_now: Vec<Vec<u32>>,
    placed: Vec<u64>,
    found: Vec<Vec<u64>>,
    nodes: u64,
    cap: u64,
}

impl MateSearch<'_> {
    fn tick(&mut self) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(OracleError::NodeCap(self.cap));
        }
        Ok(())
    }

    fn rows(&mut self) -> Result<(), OracleError> {
        let i = self.placed.len();
        if i == self.row_sums.len() {
            self.found.push(self.placed.clone());
            return Ok(());
        }
        let left_after = (self.row_sums.len() - i - 1) as u32;
        self.cells(0, 0, self.row_sums[i], left_after)
    }

    fn cells(
        &mut self,
        j: usize,
        mask: u64,
        need: u32,
        left_after: u32,
    ) -> Result<(), OracleError> {
        self.tick()?;
        if j == self.n {
            return if need == 0 { self.place(mask) } else { Ok(()) };
        }
        if (self.n - j) < need as usize {
            return Ok(());
        }
        let gap = self.col_target[j] - self.col_now[j];
        if need > 0 && gap > 0 {
            let ok = (0..j)
                .filter(|&k| mask >> k & 1 == 1)
                .all(|k| self.pair_now[k][j] < self.gram_cols[k][j]);
            if ok {
                self.cells(j + 1, mask | 1 << j, need - 1, left_after)?;
            }
        }
        if gap <= left_after {
            self.cells(j + 1, mask, need, left_after)?;
        }
        Ok(())
    }

    fn place(&mut self, mask: u64) -> Result<(), OracleError> {
        let i = self.placed.len();
        let consistent = self
            .placed
            .iter()
            .enumerate()
            .all(|(k, &r)| (r & mask).count_ones() == self.gram_rows[i][k]);
        if !consistent {
            return Ok(());
        }
        let left_after = (self.row_sums.len() - i - 1) as u32;
        let bits: Vec<usize> = (0..self.n).filter(|&j| mask >> j & 1 == 1).collect();
        for &j in &bits {
            self.col_now[j] += 1;
        }
        for (x, &j) in bits.iter().enumerate() {
            for &k in &bits[..x] {
                self.pair_now[k][j] += 1;
            }
        }
        let pairs_ok = (0..self.n).all(|j| {
            (j + 1..self.n).all(|k| self.gram_cols[j][k] - self.pair_now[j][k] <= left_after)
        });
        self.placed.push(mask);
        let res = if pairs_ok { self.rows() } else { Ok(()) };
        self.placed.pop();
        for (x, &j) in bits.iter().enumerate() {
            for &k in &bits[..x] {
                self.pair_now[k][j] -= 1;
            }
        }
        for &j in &bits {
            self.col_now[j] -= 1;
        }
        res
    }
}

/// Every `B ≠ A` with `B Bᵀ = A Aᵀ` and `Bᵀ B = Aᵀ A`, in lexicographic
/// order. Backtracks over rows with the sums and inner products of `A`.
pub fn enumerate_mates_of(a: &BinaryMatrix, cap: u64) -> Result<Vec<BinaryMatrix>, OracleError> {
    let (m, n) = (a.rows(), a.cols());
    if n > 64 {
        return Err(OracleError::TooWide(n));
    }
    let to_u32 = |g: crate::matrix::IntMatrix| -> Vec<Vec<u32>> {
        (0..g.rows)
            .map(|i| (0..g.cols).map(|j| g.get(i, j) as u32).collect())
            .collect()
    };
    let gram_rows = to_u32(a.gram_rows());
    let gram_cols = to_u32(a.gram_cols());
    let mut s = MateSearch {
        n,
        row_sums: (0..m).map(|i| gram_rows[i][i]).collect(),
        col_target: (0..n).map(|j| gram_cols[j][j]).collect(),
        gram_rows: &gram_rows,
        gram_cols,
        col_now: vec![0; n],
        pair_now: vec![vec![0; n]; n],
        placed: Vec::with_capacity(m),
        found: Vec::new(),
        nodes: 0,
        cap,
    };
    s.rows()?;
    let mut out: Vec<BinaryMatrix> = s
        .found
        .iter()
        .map(|rows| BinaryMatrix::from_fn(m, n, |i, j| (rows[i] >> j & 1) as i8))
        .filter(|b| b != a)
        .collect();
    out.sort();
    Ok(out)
}

/// What [`validate_theorems`] sweeps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Every pair with `2 ≤ m, n ≤ max_dim` and `m·n ≤ max_cells`: equal
    /// sums, rank-one and rank-two classification, agreement of the seven
    /// convertibility conditions and completeness against pairwise checks
    /// where the shape is small.
    Exhaustive { max_dim: usize, max_cells: usize },
    /// Mates of the identity of order `n`.
    IdentityMates { n: usize },
    /// Random combinator compositions from the 2×2 exchange pair.
    Combinators { steps: usize, seed: u64 },
    /// Reconstruction of every 3×3 matrix with distinct positive singular
    /// values from its two Gram matrices.
    Reconstruction,
}

impl Scope {
    pub fn name(&self) -> String {
        match self {
            Scope::Exhaustive { max_dim, max_cells } => {
                format!("exhaustive:{}:{}", max_dim, max_cells)
            }
            Scope::IdentityMates { n } => format!("identity-mates:{}", n),
            Scope::Combinators { steps, seed } => format!("combinators:{}:{}", steps, seed),
            Scope::Reconstruction => "reconstruction".into(),
        }
    }
}

impl FromStr for Scope {
    type Err = OracleError;

    /// `exhaustive[:D[:C]]`, `identity-mates[:N]`, `combinators[:STEPS[:SEED]]`,
    /// `reconstruction`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.trim().split(':');
        let head = parts.next().unwrap_or_default();
        let nums: Vec<u64> = parts
            .map(|p| p.parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|_| OracleError::BadScope(s.to_string()))?;
        let arg = |i: usize, default: u64| nums.get(i).copied().unwrap_or(default);
        let scope = match head {
            "exhaustive" if nums.len() <= 2 => Scope::Exhaustive {
                max_dim: arg(0, 4) as usize,
                max_cells: arg(1, 16) as usize,
            },
            "identity-mates" if nums.len() <= 1 => Scope::IdentityMates {
                n: arg(0, 4) as usize,
            },
            "combinators" if nums.len() <= 2 => Scope::Combinators {
                steps: arg(0, 500) as usize,
                seed: arg(1, 0),
            },
            "reconstruction" if nums.is_empty() => Scope::Reconstruction,
            _ => return Err(OracleError::BadScope(s.to_string())),
        };
        Ok(scope)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct EnumerationReport {
    pub scope: String,
    pub shapes: Vec<(usize, usize)>,
    pub pairs: usize,
    pub by_diff_rank: BTreeMap<usize, usize>,
    pub tags: BTreeMap<String, usize>,
    pub convertible: usize,
    pub checks: usize,
    pub violations: usize,
    pub elapsed_ms: u128,
}

impl EnumerationReport {
    fn tag(&mut self, t: impl Into<String>) {
        *self.tags.entry(t.into()).or_default() += 1;
    }
}

fn pair_text(a: &BinaryMatrix, b: &BinaryMatrix) -> String {
    format!("A:\n{}B:\n{}", serialize_matrix(a), serialize_matrix(b))
}

struct Checker<'r> {
    report: &'r mut EnumerationReport,
}

impl Checker<'_> {
    fn ensure(
        &mut self,
        ok: bool,
        check: &str,
        ctx: impl FnOnce() -> String,
    ) -> Result<(), OracleError> {
        self.report.checks += 1;
        if ok {
            Ok(())
        } else {
            Err(OracleError::Violation {
                check: check.to_string(),
                counterexample: ctx(),
            })
        }
    }
}

fn close(x: &[f64], y: &[f64], tol: f64) -> bool {
    x.len() == y.len() && x.iter().zip(y).all(|(a, b)| (a - b).abs() <= tol)
}

fn check_pair(c: &mut Checker, p: &GramPair) -> Result<(), OracleError> {
    let (a, b) = (p.a(), p.b());
    let text = || pair_text(a, b);
    c.ensure(
        a.row_sums() == b.row_sums() && a.col_sums() == b.col_sums(),
        "equal row and column sums",
        text,
    )?;
    *c.report.by_diff_rank.entry(p.diff_rank()).or_default() += 1;

    let conv = match convertibility(p, DEFAULT_TOL) {
        Ok(r) => r,
        Err(GramError::Inconsistent(ch)) => {
            return Err(OracleError::Violation {
                check: "convertibility conditions agree".into(),
                counterexample: format!("{}{:?}\n", text(), ch),
            })
        }
        Err(e) => return Err(e.into()),
    };
    c.report.checks += 1;
    if conv.convertible {
        c.report.convertible += 1;
    }

    let e = p.difference();
    let numeric = half_difference_svd(&e, DEFAULT_TOL)?;
    match p.diff_rank() {
        1 => {
            let form = classify_rank1(&e);
            c.ensure(form.is_ok(), "rank-one classification", text)?;
            let form = form.expect("checked");
            c.report.tag("rank1");
            c.ensure(
                rank1_witness_check(a, &form).unwrap_or(false),
                "rank-one witness",
                text,
            )?;
            let g = rank1_gram_data(&form);
            c.ensure(
                close(&g.values, &numeric.values, 1e-9),
                "rank-one Gram value",
                text,
            )?;
        }
        2 => {
            let form = classify_rank2(&e);
            c.ensure(form.is_ok(), "rank-two classification", text)?;
            let form = form.expect("checked");
            c.report.tag(format!("{:?}", form.mtype));
            c.ensure(rank2_realizable(&form), "rank-two realizability", text)?;
            let w = rank2_witness_check(a, &form);
            let valid = w.as_ref().map(|w| w.valid).unwrap_or(false);
            c.ensure(valid, "rank-two witness", text)?;
            let profile = w.expect("checked").profile;
            match rank2_gram_data(&form, profile.as_ref()) {
                Ok(g) => {
                    c.ensure(conv.convertible, "closed form implies convertible", text)?;
                    c.ensure(
                        close(&g.values, &numeric.values, 1e-9),
                        "rank-two Gram values",
                        text,
                    )?;
                }
                Err(FormError::NotConvertible) => {
                    c.ensure(!conv.convertible, "closed form convertibility", text)?
                }
                Err(err) => {
                    return Err(OracleError::Violation {
                        check: "rank-two Gram data".into(),
                        counterexample: format!("{}{}\n", text(), err),
                    })
                }
            }
        }
        _ => c.report.tag("rank3+"),
    }
    Ok(())
}

fn exhaustive(c: &mut Checker, max_dim: usize, max_cells: usize) -> Result<(), OracleError> {
    for m in 2..=max_dim {
        for n in 2..=max_dim {
            if m * n > max_cells {
                continue;
            }
            c.report.shapes.push((m, n));
            let filters = PairFilters {
                cell_cap: Some(max_cells.max(DEFAULT_CELL_CAP)),
                ..Default::default()
            };
            let pairs = enumerate_gram_pairs(m, n, &filters)?;
            if m * n <= 9 {
                let shape = Shape { m, n };
                let all: Vec<BinaryMatrix> =
                    (0..1u32 << (m * n)).map(|x| shape.matrix(x)).collect();
                let mut direct = 0;
                for (i, x) in all.iter().enumerate() {
                    for y in &all[i + 1..] {
                        if x.gram_rows() == y.gram_rows() && x.gram_cols() == y.gram_cols() {
                            direct += 1;
                        }
                    }
                }
                c.ensure(direct == pairs.len(), "enumeration completeness", || {
                    format!(
                        "{}x{}: {} direct vs {} enumerated\n",
                        m,
                        n,
                        direct,
                        pairs.len()
                    )
                })?;
            }
            for p in &pairs {
                c.report.pairs += 1;
                check_pair(c, p)?;
            }
        }
    }
    Ok(())
}

fn involutions(n: usize) -> usize {
    let mut t = vec![1usize, 1];
    for k in 2..=n {
        t.push(t[k - 1] + (k - 1) * t[k - 2]);
    }
    t[n]
}

fn identity_mates(c: &mut Checker, n: usize) -> Result<(), OracleError> {
    c.report.shapes.push((n, n));
    let id = BinaryMatrix::identity(n);
    let mates = enumerate_mates_of(&id, DEFAULT_MATE_CAP)?;
    let factorial: usize = (1..=n).product();
    c.ensure(mates.len() + 1 == factorial, "identity mates count", || {
        format!("{} mates of I_{}\n", mates.len(), n)
    })?;
    for b in &mates {
        let perm = b.row_sums().iter().all(|&s| s == 1) && b.col_sums().iter().all(|&s| s == 1);
        c.ensure(perm, "identity mates are permutations", || {
            serialize_matrix(b)
        })?;
        let p = is_gram_pair(&id, b)?.expect("mate");
        c.report.pairs += 1;
        check_pair(c, &p)?;
        c.ensure(
            convertibility(&p, DEFAULT_TOL)?.convertible == (b.transpose() == *b),
            "identity mate convertible iff symmetric",
            || serialize_matrix(b),
        )?;
    }
    let want = involutions(n) - 1;
    let got = c.report.convertible;
    c.ensure(got == want, "convertible identity mates", || {
        format!("{} convertible, expected {}\n", got, want)
    })
}

const COMBINATOR_DIM_LIMIT: usize = 64;

fn combinators(c: &mut Checker, steps: usize, seed: u64) -> Result<(), OracleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = BinaryMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).expect("exchange");
    let seed_pair = is_gram_pair(&x, &BinaryMatrix::identity(2))?.expect("seed pair");
    let mut pool = vec![seed_pair];
    let mut done = 0;
    while done < steps {
        let p = pool.choose(&mut rng).expect("nonempty").clone();
        let q = pool.choose(&mut rng).expect("nonempty").clone();
        let (m, n) = (p.a().rows(), p.a().cols());
        let (m2, n2) = (q.a().rows(), q.a().cols());
        let op = rng.gen_range(0..6);
        let fits = match op {
            0 => true,
            1 | 2 => m + m2 <= COMBINATOR_DIM_LIMIT && n + n2 <= COMBINATOR_DIM_LIMIT,
            3 => m * m2 <= COMBINATOR_DIM_LIMIT && n * n2 <= COMBINATOR_DIM_LIMIT,
            4 => m * m <= COMBINATOR_DIM_LIMIT && n * n <= COMBINATOR_DIM_LIMIT,
            _ => 2 * m <= COMBINATOR_DIM_LIMIT && 2 * n <= COMBINATOR_DIM_LIMIT,
        };
        if !fits {
            continue;
        }
        let (name, out) = match op {
            0 => ("complement", complement_pair(&p)),
            1 => ("direct sum", direct_sum_pair(&p, &q)),
            2 => ("join", join_pair(&p, &q)),
            3 => ("kron", kron_pair(&p, &q)),
            4 => ("kron swap", kron_swap(&p)),
            _ => ("block swap", block_swap_pair(p.a(), p.b())),
        };
        let out = match out {
            Ok(r) => r,
            Err(CombinatorError::Degenerate) => continue,
            Err(e) => {
                return Err(OracleError::Violation {
                    check: format!("combinator {}", name),
                    counterexample: format!("{}{}\n", pair_text(p.a(), p.b()), e),
                })
            }
        };
        let again = is_gram_pair(out.a(), out.b())?;
        c.ensure(again.is_some(), "combinator output is a Gram pair", || {
            pair_text(out.a(), out.b())
        })?;
        c.report.tag(name);
        c.report.pairs += 1;
        *c.report.by_diff_rank.entry(out.diff_rank()).or_default() += 1;
        pool.push(out);
        done += 1;
    }
    Ok(())
}

fn reconstruction(c: &mut Checker) -> Result<(), OracleError> {
    let shape = Shape { m: 3, n: 3 };
    c.report.shapes.push((3, 3));
    for code in 0..512u32 {
        let a = shape.matrix(code);
        let pos: Vec<f64> = singular_values(&a, DEFAULT_TOL)
            .map_err(GramError::from)?
            .into_iter()
            .filter(|&s| s > 0.0)
            .collect();
        if pos.windows(2).any(|w| w[0] - w[1] <= 1e-6 * w[0].max(1.0)) {
            continue;
        }
        c.report.tag("distinct");
        let rec = reconstruct_from_grams(&a.gram_rows(), &a.gram_cols(), DEFAULT_TOL, 1e-6)
            .map_err(GramError::from);
        let rec = match rec {
            Ok(r) => r,
            Err(e) => {
                return Err(OracleError::Violation {
                    check: "reconstruction runs".into(),
                    counterexample: format!("{}{}\n", serialize_matrix(&a), e),
                })
            }
        };
        c.ensure(
            rec.matrices.contains(&a),
            "reconstruction contains A",
            || serialize_matrix(&a),
        )?;
        for b in &rec.matrices {
            c.ensure(
                b.gram_rows() == a.gram_rows() && b.gram_cols() == a.gram_cols(),
                "reconstructed Grams",
                || pair_text(&a, b),
            )?;
        }
        c.report.pairs += rec.matrices.len();
    }
    Ok(())
}

/// Runs the invariant suite of `scope`; the first violation is returned as an
/// error carrying the serialized counterexample.
pub fn validate_theorems(scope: &Scope) -> Result<EnumerationReport, OracleError> {
    let start = Instant::now();
    let mut report = EnumerationReport {
        scope: scope.name(),
        ..Default::default()
    };
    let mut c = Checker {
        report: &mut report,
    };
    match *scope {
        Scope::Exhaustive { max_dim, max_cells } => exhaustive(&mut c, max_dim, max_cells)?,
        Scope::IdentityMates { n } => identity_mates(&mut c, n)?,
        Scope::Combinators { steps, seed } => combinators(&mut c, steps, seed)?,
        Scope::Reconstruction => reconstruction(&mut c)?,
    }
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}
