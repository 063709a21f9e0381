use serde::Serialize;

use super::rank2::{rank2_realizable, Rank2Form, Rank2Type};
use super::{to_original, FormError};
use crate::gale_ryser::{
    even_rows, proportional_rows, signed_sums, swap_col_blocks, swap_row_blocks,
};
use crate::gram::{embed_check, is_gram_pair, GramSingularReport, GramSource};
use crate::matrix::{BinaryMatrix, BlockCanvas, BlockSpec, Dense};

/// Constant signed block sums read off an M5 witness; `None` marks a
/// parameter whose block is empty.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Rank2WitnessProfile {
    pub x1: Option<i64>,
    pub x2: Option<i64>,
    pub y1: Option<i64>,
    pub y2: Option<i64>,
    pub z1: Option<i64>,
    pub z2: Option<i64>,
    pub alpha1: Option<i64>,
    pub alpha2: Option<i64>,
    pub beta1: Option<i64>,
    pub beta2: Option<i64>,
    pub gamma1: Option<i64>,
    pub gamma2: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub valid: bool,
    pub profile: Option<Rank2WitnessProfile>,
}

/// Free blocks of the canonical witness: `(row groups, column groups)`.
/// Family: X on rows (0,1) × cols (g,h), Y on rows (2,3) × cols (e,f).
/// M5: X on (k,l) × (e,f), Y on (p,q) × (c,d), Z on (r,s) × (a,b).
const FAMILY_FREE: [((usize, usize), (usize, usize)); 2] = [((0, 1), (6, 7)), ((2, 3), (4, 5))];
const M5_FREE: [((usize, usize), (usize, usize)); 3] =
    [((0, 1), (4, 5)), ((2, 3), (2, 3)), ((4, 5), (0, 1))];

/// Canonical witness with the fixed entries set and the free blocks zero.
fn fixed_canvas(form: &Rank2Form) -> BlockCanvas {
    let spec = form.spec();
    let nr = spec.row_sizes.len() - 1;
    let nc = spec.col_sizes.len() - 1;
    let mut canvas = BlockCanvas::new(spec.row_sizes, spec.col_sizes);
    for (bi, pat) in form.group_patterns().iter().enumerate().take(nr) {
        for (bj, &v) in pat.iter().enumerate().take(nc) {
            if v == -1 {
                canvas.fill(bi, bj, 1);
            }
        }
    }
    canvas
}

/// Writes a block given over the row groups `rg` and column groups `cg`.
fn put_pair_block(
    canvas: &mut BlockCanvas,
    rg: (usize, usize),
    cg: (usize, usize),
    rows: &[Vec<i8>],
) {
    let spec = canvas.spec().clone();
    let (m1, n1) = (spec.row_sizes[rg.0], spec.col_sizes[cg.0]);
    let split = |r: &Vec<i8>| (r[..n1].to_vec(), r[n1..].to_vec());
    for (gi, range) in [(rg.0, 0..m1), (rg.1, m1..rows.len())] {
        let (left, right): (Vec<_>, Vec<_>) = rows[range].iter().map(split).unzip();
        canvas.put(gi, cg.0, &left);
        canvas.put(gi, cg.1, &right);
    }
}

/// Reads a free block back as row vectors.
fn get_pair_block<M: Dense>(
    spec: &BlockSpec,
    a: &M,
    rg: (usize, usize),
    cg: (usize, usize),
) -> Vec<Vec<i8>> {
    let mut out = Vec::new();
    for gi in [rg.0, rg.1] {
        for i in spec.row_range(gi) {
            let row: Vec<i8> = spec
                .col_range(cg.0)
                .chain(spec.col_range(cg.1))
                .map(|j| a.at(i, j) as i8)
                .collect();
            out.push(row);
        }
    }
    out
}

fn to_original_witness(form: &Rank2Form, canonical: BinaryMatrix) -> BinaryMatrix {
    let oriented = canonical
        .apply_perms(&form.row_perm.inverse(), &form.col_perm.inverse())
        .expect("sizes agree");
    if form.transposed {
        oriented.transpose()
    } else {
        oriented
    }
}

/// Block with prescribed signed sums: rows of the first group sum to `rt.0`,
/// of the second to `rt.1`; columns likewise with `ct`.
fn signed_block(
    m: (usize, usize),
    n: (usize, usize),
    rt: (i64, i64),
    ct: (i64, i64),
) -> Result<Vec<Vec<i8>>, FormError> {
    let (mi, ni) = ((m.0 as i64, m.1 as i64), (n.0 as i64, n.1 as i64));
    if n.0 + n.1 == 0 || m.0 + m.1 == 0 {
        return Ok(vec![Vec::new(); m.0 + m.1]);
    }
    let half_n = ni.0 - ni.1;
    let half_m = mi.0 - mi.1;
    if 2 * rt.0 == half_n && 2 * rt.1 == half_n && 2 * ct.0 == half_m && 2 * ct.1 == half_m {
        return Ok(even_rows(m.0, m.1, n.0, n.1)?);
    }
    for (row_swap, col_swap) in [(false, false), (true, false), (false, true), (true, true)] {
        let (mut m1, mut m2, mut n1, mut n2) = (m.0, m.1, n.0, n.1);
        let (mut r1, mut r2, mut c1, mut c2) = (rt.0, rt.1, ct.0, ct.1);
        if row_swap {
            (m1, m2, r1, r2, c1, c2) = (m2, m1, r2, r1, -c1, -c2);
        }
        if col_swap {
            (n1, n2, r1, r2, c1, c2) = (n2, n1, -r1, -r2, c2, c1);
        }
        if r1 < 0 || r2 > 0 || c1 < 0 || c2 > 0 {
            continue;
        }
        let (a1, a2, b1, b2) = (c1 as usize, (-c2) as usize, r1 as usize, (-r2) as usize);
        let Ok(mut rows) = proportional_rows(a1, a2, b1, b2, m1, m2, n1, n2) else {
            continue;
        };
        if col_swap {
            rows = swap_col_blocks(rows, n1);
        }
        if row_swap {
            rows = swap_row_blocks(rows, m1);
        }
        return Ok(rows);
    }
    Err(FormError::Internal(format!(
        "no signed block for m={:?} n={:?} rows={:?} cols={:?}",
        m, n, rt, ct
    )))
}

/// A witness `A` with `(A, A + E)` Gram mates, verified before return.
pub fn rank2_complete(form: &Rank2Form) -> Result<BinaryMatrix, FormError> {
    if !rank2_realizable(form) {
        return Err(FormError::NotRealizable);
    }
    let mut canvas = fixed_canvas(form);
    let x = form.indices;
    if !form.is_m5() {
        let fill_half = |canvas: &mut BlockCanvas,
                         rg: (usize, usize),
                         cg: (usize, usize),
                         p: usize,
                         q: usize| {
            let (target, width) = if p >= q {
                (cg.0, (p - q) / 2)
            } else {
                (cg.1, (q - p) / 2)
            };
            let spec = canvas.spec().clone();
            for gi in [rg.0, rg.1] {
                let rows = spec.row_range(gi).len();
                let mut block = vec![vec![0i8; spec.col_sizes[target]]; rows];
                for row in block.iter_mut() {
                    row[..width].iter_mut().for_each(|v| *v = 1);
                }
                canvas.put(gi, target, &block);
            }
        };
        fill_half(&mut canvas, FAMILY_FREE[0].0, FAMILY_FREE[0].1, x.g, x.h);
        fill_half(&mut canvas, FAMILY_FREE[1].0, FAMILY_FREE[1].1, x.e, x.f);
    } else {
        let i = |v: usize| v as i64;
        let all_even = [
            x.a + x.b,
            x.c + x.d,
            x.e + x.f,
            x.k + x.l,
            x.p + x.q,
            x.r + x.s,
        ]
        .iter()
        .all(|s| s % 2 == 0);
        let (x1, x2, a1, a2);
        if all_even {
            x1 = (i(x.e) - i(x.f)) / 2;
            x2 = x1;
            a1 = (i(x.k) - i(x.l)) / 2;
            a2 = a1;
        } else {
            let sizes = [x.k + x.l, x.p + x.q, x.r + x.s];
            let smallest = (0..3).min_by_key(|&t| (sizes[t], t)).unwrap();
            (x1, x2, a1, a2) = match smallest {
                0 => (i(x.e), -i(x.f), i(x.k), -i(x.l)),
                1 => (-i(x.d), i(x.c), -i(x.p), i(x.q)),
                _ => (i(x.b), -i(x.a), i(x.s), -i(x.r)),
            };
        }
        let (y1, y2, z1, z2) = (x2, x1, -x2, -x1);
        let (b1, b2, g1, g2) = (-a1, -a2, -a2, -a1);
        let targets = [
            ((x1, x2), (a1, a2)),
            ((y1, y2), (b1, b2)),
            ((z1, z2), (g1, g2)),
        ];
        let spec = canvas.spec().clone();
        for (&(rg, cg), &(rt, ct)) in M5_FREE.iter().zip(targets.iter()) {
            let m = (spec.row_sizes[rg.0], spec.row_sizes[rg.1]);
            let n = (spec.col_sizes[cg.0], spec.col_sizes[cg.1]);
            let rows = signed_block(m, n, rt, ct)?;
            put_pair_block(&mut canvas, rg, cg, &rows);
        }
    }
    let canonical = BinaryMatrix::from_rows(&canvas.into_rows())?;
    let a = to_original_witness(form, canonical);
    let b = a
        .add_signed(&form.e())
        .map_err(|_| FormError::Internal("witness plus E is not zero-one".into()))?;
    if is_gram_pair(&a, &b)?.is_none() {
        return Err(FormError::Internal(format!(
            "constructed witness fails for {:?}",
            form.indices
        )));
    }
    Ok(a)
}

fn constant(v: &[i64]) -> Result<Option<i64>, ()> {
    match v.first() {
        None => Ok(None),
        Some(&x) if v.iter().all(|&y| y == x) => Ok(Some(x)),
        _ => Err(()),
    }
}

/// Present members of a chain must agree.
fn chain_ok(vals: &[Option<i64>]) -> bool {
    let present: Vec<i64> = vals.iter().flatten().copied().collect();
    present.windows(2).all(|w| w[0] == w[1])
}

fn pair_sum(a: Option<i64>, b: Option<i64>, sign: i64) -> Option<i64> {
    Some(sign * (a? + b?))
}

/// Reads the free blocks `(block, m1, n1)` as signed row sums per group and
/// signed column sums per group.
fn group_constants(rows: &[Vec<i8>], m1: usize, n1: usize) -> Result<[Option<i64>; 4], ()> {
    let (r, c) = signed_sums(rows, m1, n1);
    Ok([
        constant(&r[..m1])?,
        constant(&r[m1..])?,
        constant(&c[..n1.min(c.len())])?,
        constant(&c[n1.min(c.len())..])?,
    ])
}

/// Evaluates the block-sum conditions of the form on a candidate witness.
pub fn rank2_witness_check(a: &BinaryMatrix, form: &Rank2Form) -> Result<WitnessCheck, FormError> {
    let oriented = if form.transposed {
        a.transpose()
    } else {
        a.clone()
    };
    if oriented.rows() != form.row_perm.size() || oriented.cols() != form.col_perm.size() {
        return Err(FormError::Layout(
            "witness dimensions differ from the form".into(),
        ));
    }
    let ac = oriented.apply_perms(&form.row_perm, &form.col_perm)?;
    let spec = form.spec();
    let fixed = fixed_canvas(form);
    let free = if form.is_m5() {
        &M5_FREE[..]
    } else {
        &FAMILY_FREE[..]
    };
    let nr = spec.row_sizes.len() - 1;
    let nc = spec.col_sizes.len() - 1;
    let is_free = |bi: usize, bj: usize| {
        free.iter()
            .any(|&(rg, cg)| (bi == rg.0 || bi == rg.1) && (bj == cg.0 || bj == cg.1))
    };
    let mut valid = true;
    for bi in 0..nr {
        for bj in 0..nc {
            if is_free(bi, bj) {
                continue;
            }
            for i in spec.row_range(bi) {
                for j in spec.col_range(bj) {
                    valid &= ac.get(i, j) == fixed.cells()[i][j];
                }
            }
        }
    }

    let used_r: usize = spec.row_sizes[..nr].iter().sum();
    let used_c: usize = spec.col_sizes[..nc].iter().sum();
    let (m, n) = (ac.rows(), ac.cols());
    if valid && (used_r < m || used_c < n) {
        let inner_rows: Vec<usize> = (0..used_r).collect();
        let inner_cols: Vec<usize> = (0..used_c).collect();
        let e_tilde = form
            .canonical_e()
            .submatrix(&inner_rows, &inner_cols)
            .expect("nonempty");
        let outer_cols: Vec<usize> = (used_c..n).collect();
        let outer_rows: Vec<usize> = (used_r..m).collect();
        if let Some(x1) = ac.submatrix(&inner_rows, &outer_cols) {
            valid &= embed_check(&e_tilde, &x1, &BinaryMatrix::zeros(1, used_c))?;
        }
        if let Some(x2) = ac.submatrix(&outer_rows, &inner_cols) {
            valid &= embed_check(&e_tilde, &BinaryMatrix::zeros(used_r, 1), &x2)?;
        }
    }

    let x = form.indices;
    let i = |v: usize| v as i64;
    let mut profile = None;
    if valid {
        let mut consts = Vec::new();
        for &(rg, cg) in free {
            let rows = get_pair_block(&spec, &ac, rg, cg);
            match group_constants(&rows, spec.row_sizes[rg.0], spec.col_sizes[cg.0]) {
                Ok(c) => consts.push(c),
                Err(()) => {
                    valid = false;
                    break;
                }
            }
        }
        if valid && form.mtype == Rank2Type::M2 {
            // no fixed column blocks couple the halves: X and Y only constrain each other
            let [xr1, xr2, xc1, xc2] = consts[0];
            let [yr1, yr2, yc1, yc2] = consts[1];
            let neg = |v: Option<i64>| v.map(|x| -x);
            valid = chain_ok(&[xr1, neg(xr2), neg(yr1), yr2])
                && chain_ok(&[neg(xc1), xc2, yc1, neg(yc2)]);
            profile = Some(Rank2WitnessProfile {
                x1: xr1,
                x2: xr2,
                y1: yr1,
                y2: yr2,
                alpha1: xc1,
                alpha2: xc2,
                beta1: yc1,
                beta2: yc2,
                ..Default::default()
            });
        } else if valid && !form.is_m5() {
            // X: rows give (g-h)/2, column sums of the two halves agree
            let [xr1, xr2, xc1, xc2] = consts[0];
            let [yr1, yr2, yc1, yc2] = consts[1];
            let gh = i(x.g) - i(x.h);
            let ef = i(x.e) - i(x.f);
            let rows_ok = |v: Option<i64>, t: i64| v.map_or(true, |v| 2 * v == t);
            let zero = |v: Option<i64>| v.map_or(true, |v| v == 0);
            valid = rows_ok(xr1, gh) && rows_ok(xr2, gh) && rows_ok(yr1, ef) && rows_ok(yr2, ef);
            valid &= zero(xc1) && zero(xc2) && zero(yc1) && zero(yc2);
            // zero column sums of the signed block mean equal column sums of the halves
            valid &= columns_balanced(
                &get_pair_block(&spec, &ac, FAMILY_FREE[0].0, FAMILY_FREE[0].1),
                x.k,
            );
            valid &= columns_balanced(
                &get_pair_block(&spec, &ac, FAMILY_FREE[1].0, FAMILY_FREE[1].1),
                x.l,
            );
        } else if valid {
            let [x1, x2, a1, a2] = consts[0];
            let [y1, y2, b1, b2] = consts[1];
            let [z1, z2, g1, g2] = consts[2];
            let neg = |v: Option<i64>| v.map(|x| -x);
            let p = Rank2WitnessProfile {
                x1,
                x2,
                y1,
                y2,
                z1,
                z2,
                alpha1: a1,
                alpha2: a2,
                beta1: b1,
                beta2: b2,
                gamma1: g1,
                gamma2: g2,
            };
            let ef = i(x.e) - i(x.f);
            let lk = i(x.l) - i(x.k);
            let sums_ok = |vals: [Option<i64>; 3], t: i64| vals.iter().flatten().all(|&v| v == t);
            valid = chain_ok(&[x1, y2, neg(z2)])
                && chain_ok(&[x2, y1, neg(z1)])
                && sums_ok(
                    [
                        pair_sum(x1, x2, 1),
                        pair_sum(y1, y2, 1),
                        pair_sum(z1, z2, -1),
                    ],
                    ef,
                )
                && chain_ok(&[g1, b2, neg(a2)])
                && chain_ok(&[g2, b1, neg(a1)])
                && sums_ok(
                    [
                        pair_sum(g1, g2, 1),
                        pair_sum(b1, b2, 1),
                        pair_sum(a1, a2, -1),
                    ],
                    lk,
                );
            profile = Some(p);
        }
    }
    debug_assert!(a.add_signed(&form.e()).map_or(!valid, |b| {
        is_gram_pair(a, &b).map_or(true, |p| p.is_some() == valid)
    }));
    Ok(WitnessCheck { valid, profile })
}

/// Column sums of the first `top` rows equal those of the rest.
fn columns_balanced(rows: &[Vec<i8>], top: usize) -> bool {
    let width = rows.first().map_or(0, |r| r.len());
    (0..width).all(|j| {
        let s1: i64 = rows[..top].iter().map(|r| r[j] as i64).sum();
        let s2: i64 = rows[top..].iter().map(|r| r[j] as i64).sum();
        s1 == s2
    })
}

/// Eigenpairs of the 2×2 integer matrix `n`, largest first, as
/// `(λ, ζ)` with `ζ` a unit right eigenvector.
fn eig2(n: [[i64; 2]; 2]) -> [(f64, [f64; 2]); 2] {
    let tr = (n[0][0] + n[1][1]) as i128;
    let det = n[0][0] as i128 * n[1][1] as i128 - n[0][1] as i128 * n[1][0] as i128;
    let disc = (tr * tr - 4 * det).max(0);
    let root = (disc as f64).sqrt();
    let lams = [(tr as f64 + root) / 2.0, (tr as f64 - root) / 2.0];
    if n[0][1] == 0 && n[1][0] == 0 {
        let mut pairs = [(n[0][0] as f64, [1.0, 0.0]), (n[1][1] as f64, [0.0, 1.0])];
        if pairs[1].0 > pairs[0].0 {
            pairs.swap(0, 1);
        }
        return pairs;
    }
    let vec_for = |lam: f64| {
        let cand1 = [n[0][1] as f64, lam - n[0][0] as f64];
        let cand2 = [lam - n[1][1] as f64, n[1][0] as f64];
        let pick = if cand1[0].hypot(cand1[1]) >= cand2[0].hypot(cand2[1]) {
            cand1
        } else {
            cand2
        };
        let len = pick[0].hypot(pick[1]);
        [pick[0] / len, pick[1] / len]
    };
    [(lams[0], vec_for(lams[0])), (lams[1], vec_for(lams[1]))]
}

/// Gram singular values from the 2×2 matrix of the form.
///
/// M1, M3 and M4 pairs are always convertible. M2 pairs are convertible
/// exactly when the free blocks of the witness have zero signed sums, M5
/// pairs exactly when the profile has `x₁ = (e − f)/2`.
pub fn rank2_gram_data(
    form: &Rank2Form,
    profile: Option<&Rank2WitnessProfile>,
) -> Result<GramSingularReport, FormError> {
    let x = form.indices;
    let i = |v: usize| v as i64;
    // scaled integer matrix and its scale
    if form.mtype == Rank2Type::M2 {
        let p = profile.ok_or(FormError::MissingProfile)?;
        let sums = [p.x1, p.x2, p.y1, p.y2, p.alpha1, p.alpha2, p.beta1, p.beta2];
        if sums.iter().flatten().any(|&v| v != 0) {
            return Err(FormError::NotConvertible);
        }
    }
    let (n, scale) = if !form.is_m5() {
        let cross = i(x.a) - i(x.b) - i(x.c) + i(x.d);
        (
            [
                [2 * i(x.k) * (i(x.a) + i(x.b) + i(x.e)), i(x.k) * cross],
                [i(x.l) * cross, 2 * i(x.l) * (i(x.a) + i(x.c) + i(x.g))],
            ],
            2.0,
        )
    } else {
        let p = profile.ok_or(FormError::MissingProfile)?;
        let ef = i(x.e) - i(x.f);
        let half_ok = |v: Option<i64>, sign: i64| v.map_or(true, |v| 2 * v * sign == ef);
        let convertible = half_ok(p.x1, 1)
            && half_ok(p.x2, 1)
            && half_ok(p.y1, 1)
            && half_ok(p.y2, 1)
            && half_ok(p.z1, -1)
            && half_ok(p.z2, -1);
        if !convertible {
            return Err(FormError::NotConvertible);
        }
        let (k, l, pp, q, r, s) = (i(x.k), i(x.l), i(x.p), i(x.q), i(x.r), i(x.s));
        let (a, b, c, d, e, f) = (i(x.a), i(x.b), i(x.c), i(x.d), i(x.e), i(x.f));
        (
            [
                [
                    4 * l * (a + c) + 2 * s * (c + d) + (k - l) * (a + b),
                    2 * l * (a + b) - 2 * s * (e + f) + 2 * (k - l) * (a + e),
                ],
                [
                    2 * q * (a + b) - 2 * r * (c + d) + 2 * (pp - q) * (a + c),
                    4 * q * (a + e) + 2 * r * (e + f) + (pp - q) * (a + b),
                ],
            ],
            4.0,
        )
    };
    let pairs = eig2(n);
    let (x1, x2) = form.x_vectors();
    let e_can = form.canonical_e();
    let mut values = Vec::new();
    let mut rights = Vec::new();
    let mut lefts = Vec::new();
    let mut eigenpairs = Vec::new();
    for (lam_n, zeta) in pairs {
        let lam = lam_n / scale;
        let sigma = lam.max(0.0).sqrt();
        let mut v: Vec<f64> = x1
            .iter()
            .zip(&x2)
            .map(|(p, q)| zeta[0] * p + zeta[1] * q)
            .collect();
        let len = v.iter().map(|t| t * t).sum::<f64>().sqrt();
        v.iter_mut().for_each(|t| *t /= len);
        let u: Vec<f64> = (0..e_can.rows())
            .map(|r| {
                -0.5 * (0..e_can.cols())
                    .map(|c| e_can.get(r, c) as f64 * v[c])
                    .sum::<f64>()
                    / sigma
            })
            .collect();
        let (right, left) = if form.transposed {
            (
                to_original(&u, &form.row_perm),
                to_original(&v, &form.col_perm),
            )
        } else {
            (
                to_original(&v, &form.col_perm),
                to_original(&u, &form.row_perm),
            )
        };
        values.push(sigma);
        rights.push(right);
        lefts.push(left);
        eigenpairs.push((zeta[0], zeta[1], lam));
    }
    let m = [
        [n[0][0] as f64 / scale, n[0][1] as f64 / scale],
        [n[1][0] as f64 / scale, n[1][1] as f64 / scale],
    ];
    let mut rep = GramSingularReport {
        values,
        right_vectors: rights,
        left_vectors: lefts,
        source: GramSource::ClosedFormRank2,
        m_matrix: Some(m),
        eigenpairs,
    };
    rep.canonicalize();
    Ok(rep)
}
