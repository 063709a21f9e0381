use std::fmt;

use serde::Serialize;

use super::{check_rank_and_sums, FormError};
use crate::matrix::{BlockCanvas, BlockSpec, Dense, Permutation, SignedMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Rank2Type {
    M1,
    M2,
    M3,
    M4,
    M5,
}

impl fmt::Display for Rank2Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// Block counts. `k, l` and `a..h` describe M1–M4 (absent ones are zero);
/// M5 uses `k, l, p, q, r, s` and `a..f`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Rank2Indices {
    pub k: usize,
    pub l: usize,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub s: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub e: usize,
    pub f: usize,
    pub g: usize,
    pub h: usize,
}

impl Rank2Indices {
    /// `(name, value)` pairs relevant to `t`.
    pub fn named(&self, t: Rank2Type) -> Vec<(&'static str, usize)> {
        let x = self;
        match t {
            Rank2Type::M1 => vec![("k", x.k), ("l", x.l), ("a", x.a), ("b", x.b)],
            Rank2Type::M2 => vec![
                ("k", x.k),
                ("l", x.l),
                ("e", x.e),
                ("f", x.f),
                ("g", x.g),
                ("h", x.h),
            ],
            Rank2Type::M3 => vec![
                ("k", x.k),
                ("l", x.l),
                ("a", x.a),
                ("b", x.b),
                ("c", x.c),
                ("d", x.d),
                ("e", x.e),
                ("f", x.f),
            ],
            Rank2Type::M4 => vec![
                ("k", x.k),
                ("l", x.l),
                ("a", x.a),
                ("b", x.b),
                ("c", x.c),
                ("d", x.d),
                ("e", x.e),
                ("f", x.f),
                ("g", x.g),
                ("h", x.h),
            ],
            Rank2Type::M5 => vec![
                ("k", x.k),
                ("l", x.l),
                ("p", x.p),
                ("q", x.q),
                ("r", x.r),
                ("s", x.s),
                ("a", x.a),
                ("b", x.b),
                ("c", x.c),
                ("d", x.d),
                ("e", x.e),
                ("f", x.f),
            ],
        }
    }

    /// Tag of a two-pattern form, or an error when the counts are inconsistent.
    pub fn family_type(&self) -> Result<Rank2Type, FormError> {
        let x = self;
        let bad = |m: &str| Err(FormError::InvalidIndices(m.to_string()));
        if x.k == 0 || x.l == 0 {
            return bad("k and l must be positive");
        }
        if x.p + x.q + x.r + x.s != 0 {
            return bad("p, q, r, s are not used by M1-M4");
        }
        if x.a + x.b + x.e != x.c + x.d + x.f || x.a + x.c + x.g != x.b + x.d + x.h {
            return bad("row sums of the two patterns are not zero");
        }
        let abcd = x.a + x.b + x.c + x.d;
        let (ef, gh) = (x.e + x.f, x.g + x.h);
        if ef == 0 && gh == 0 {
            if x.a == 0 || x.b == 0 {
                return bad("M1 needs a, b > 0");
            }
            return Ok(Rank2Type::M1);
        }
        if abcd == 0 {
            if ef == 0 || gh == 0 {
                return bad("M2 needs e + f > 0 and g + h > 0");
            }
            return Ok(Rank2Type::M2);
        }
        if gh == 0 {
            return Ok(Rank2Type::M3);
        }
        if ef == 0 {
            return bad("e + f = 0 with g + h > 0; swap the roles of the two patterns");
        }
        Ok(Rank2Type::M4)
    }

    pub fn check_m5(&self) -> Result<(), FormError> {
        let x = self;
        let bad = |m: &str| Err(FormError::InvalidIndices(m.to_string()));
        if x.g + x.h != 0 {
            return bad("g, h are not used by M5");
        }
        let pos = [
            x.a + x.b,
            x.c + x.d,
            x.e + x.f,
            x.k + x.l,
            x.p + x.q,
            x.r + x.s,
        ];
        if pos.contains(&0) {
            return bad("every pair sum must be positive");
        }
        let i = |v: usize| v as i64;
        let ab = i(x.a) - i(x.b);
        if ab != i(x.d) - i(x.c) || ab != i(x.f) - i(x.e) {
            return bad("row sums are not zero");
        }
        let kl = i(x.k) - i(x.l);
        if kl != i(x.q) - i(x.p) || kl != i(x.s) - i(x.r) {
            return bad("column sums are not zero");
        }
        Ok(())
    }

    pub fn family_rows(&self) -> Vec<usize> {
        vec![self.k, self.k, self.l, self.l]
    }

    pub fn family_cols(&self) -> Vec<usize> {
        let x = self;
        vec![x.a, x.b, x.c, x.d, x.e, x.f, x.g, x.h]
    }

    pub fn m5_rows(&self) -> Vec<usize> {
        let x = self;
        vec![x.k, x.l, x.p, x.q, x.r, x.s]
    }

    pub fn m5_cols(&self) -> Vec<usize> {
        let x = self;
        vec![x.a, x.b, x.c, x.d, x.e, x.f]
    }
}

/// Signs of the two family patterns over the column groups `a..h`.
pub(crate) const FAMILY_X1: [i8; 8] = [1, 1, -1, -1, 1, -1, 0, 0];
pub(crate) const FAMILY_X2: [i8; 8] = [1, -1, 1, -1, 0, 0, 1, -1];
/// Signs of `t1`, `t2` over the M5 column groups `a..f`; `t3 = t1 - t2`.
pub(crate) const M5_T1: [i8; 6] = [1, -1, 1, -1, 0, 0];
pub(crate) const M5_T2: [i8; 6] = [1, -1, 0, 0, 1, -1];

/// A rank-two realizable candidate in one of the forms M1–M5.
///
/// `apply_perms(E', row_perm, col_perm)` is the canonical layout, where `E'`
/// is `E` or, when `transposed`, `Eᵀ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank2Form {
    pub mtype: Rank2Type,
    pub indices: Rank2Indices,
    pub row_perm: Permutation,
    pub col_perm: Permutation,
    pub transposed: bool,
}

impl Rank2Form {
    /// A form in canonical position with the given trailing zero rows/columns.
    pub fn canonical(
        indices: Rank2Indices,
        m5: bool,
        zero_rows: usize,
        zero_cols: usize,
    ) -> Result<Self, FormError> {
        let mtype = if m5 {
            indices.check_m5()?;
            Rank2Type::M5
        } else {
            indices.family_type()?
        };
        let (rs, cs) = if m5 {
            (indices.m5_rows(), indices.m5_cols())
        } else {
            (indices.family_rows(), indices.family_cols())
        };
        Ok(Self {
            mtype,
            indices,
            row_perm: Permutation::identity(rs.iter().sum::<usize>() + zero_rows),
            col_perm: Permutation::identity(cs.iter().sum::<usize>() + zero_cols),
            transposed: false,
        })
    }

    pub fn is_m5(&self) -> bool {
        self.mtype == Rank2Type::M5
    }

    /// Block partition of the canonical layout, zero rows and columns last.
    pub fn spec(&self) -> BlockSpec {
        let (mut rs, mut cs) = if self.is_m5() {
            (self.indices.m5_rows(), self.indices.m5_cols())
        } else {
            (self.indices.family_rows(), self.indices.family_cols())
        };
        let used_r: usize = rs.iter().sum();
        let used_c: usize = cs.iter().sum();
        rs.push(self.row_perm.size() - used_r);
        cs.push(self.col_perm.size() - used_c);
        BlockSpec::new(rs, cs)
    }

    /// Row patterns over column groups, one per row group.
    pub(crate) fn group_patterns(&self) -> Vec<Vec<i8>> {
        let neg = |v: &[i8]| v.iter().map(|x| -x).collect::<Vec<i8>>();
        if self.is_m5() {
            let t3: Vec<i8> = M5_T1.iter().zip(&M5_T2).map(|(a, b)| a - b).collect();
            vec![
                M5_T1.to_vec(),
                neg(&M5_T1),
                M5_T2.to_vec(),
                neg(&M5_T2),
                t3.clone(),
                neg(&t3),
            ]
        } else {
            vec![
                FAMILY_X1.to_vec(),
                neg(&FAMILY_X1),
                FAMILY_X2.to_vec(),
                neg(&FAMILY_X2),
            ]
        }
    }

    /// The canonical layout of `E` (or `Eᵀ` when transposed).
    pub fn canonical_e(&self) -> SignedMatrix {
        let spec = self.spec();
        let nr = spec.row_sizes.len() - 1;
        let nc = spec.col_sizes.len() - 1;
        let mut canvas = BlockCanvas::new(spec.row_sizes, spec.col_sizes);
        for (bi, pat) in self.group_patterns().iter().enumerate().take(nr) {
            for (bj, &v) in pat.iter().enumerate().take(nc) {
                canvas.fill(bi, bj, v);
            }
        }
        SignedMatrix::from_rows(&canvas.into_rows()).expect("nonempty")
    }

    /// `E` in original coordinates.
    pub fn e(&self) -> SignedMatrix {
        let oriented = self
            .canonical_e()
            .apply_perms(&self.row_perm.inverse(), &self.col_perm.inverse())
            .expect("sizes agree");
        if self.transposed {
            oriented.transpose()
        } else {
            oriented
        }
    }

    /// The two row vectors spanning the row space of the canonical layout.
    pub fn x_vectors(&self) -> (Vec<f64>, Vec<f64>) {
        let spec = self.spec();
        let (p1, p2): (&[i8], &[i8]) = if self.is_m5() {
            (&M5_T1, &M5_T2)
        } else {
            (&FAMILY_X1, &FAMILY_X2)
        };
        let expand = |p: &[i8]| {
            let mut v = Vec::new();
            for (bj, &size) in spec.col_sizes.iter().enumerate() {
                let x = p.get(bj).copied().unwrap_or(0) as f64;
                v.extend(std::iter::repeat(x).take(size));
            }
            v
        };
        (expand(p1), expand(p2))
    }
}

fn nonzero_patterns(e: &SignedMatrix) -> Vec<Vec<i8>> {
    let mut pats: Vec<Vec<i8>> = Vec::new();
    let mut seen: Vec<Vec<i8>> = Vec::new();
    for i in 0..e.rows() {
        let row = e.row(i);
        let Some(&first) = row.iter().find(|&&x| x != 0) else {
            continue;
        };
        let norm: Vec<i8> = row.iter().map(|x| x * first).collect();
        if !seen.contains(&norm) {
            seen.push(norm);
            pats.push(row.to_vec());
        }
    }
    pats
}

fn neg(v: &[i8]) -> Vec<i8> {
    v.iter().map(|x| -x).collect()
}

/// Groups rows by which of `patterns` (with sign) they equal; zero rows last.
fn group_rows(e: &SignedMatrix, patterns: &[Vec<i8>]) -> Option<Vec<Vec<usize>>> {
    let mut groups = vec![Vec::new(); patterns.len() + 1];
    for i in 0..e.rows() {
        let row = e.row(i);
        if row.iter().all(|&x| x == 0) {
            groups[patterns.len()].push(i);
            continue;
        }
        let g = patterns.iter().position(|p| p.as_slice() == row)?;
        groups[g].push(i);
    }
    Some(groups)
}

/// Groups columns by their joint sign signature against `sigs`; zero columns last.
fn group_cols(basis: &[&[i8]], sigs: &[Vec<i8>], n: usize) -> Option<Vec<Vec<usize>>> {
    let mut groups = vec![Vec::new(); sigs.len() + 1];
    for j in 0..n {
        let sig: Vec<i8> = basis.iter().map(|b| b[j]).collect();
        if sig.iter().all(|&x| x == 0) {
            groups[sigs.len()].push(j);
            continue;
        }
        let g = sigs.iter().position(|s| *s == sig)?;
        groups[g].push(j);
    }
    Some(groups)
}

fn family_attempt(e: &SignedMatrix, x1: &[i8], x2: &[i8]) -> Option<Rank2Form> {
    let rows = group_rows(e, &[x1.to_vec(), neg(x1), x2.to_vec(), neg(x2)])?;
    let sigs: Vec<Vec<i8>> = (0..8).map(|g| vec![FAMILY_X1[g], FAMILY_X2[g]]).collect();
    let cols = group_cols(&[x1, x2], &sigs, e.cols())?;
    let c = |g: usize| cols[g].len();
    let indices = Rank2Indices {
        k: rows[0].len(),
        l: rows[2].len(),
        a: c(0),
        b: c(1),
        c: c(2),
        d: c(3),
        e: c(4),
        f: c(5),
        g: c(6),
        h: c(7),
        ..Default::default()
    };
    if rows[1].len() != indices.k || rows[3].len() != indices.l {
        return None;
    }
    let mtype = indices.family_type().ok()?;
    Some(Rank2Form {
        mtype,
        indices,
        row_perm: Permutation::from_order(&rows.concat()).ok()?,
        col_perm: Permutation::from_order(&cols.concat()).ok()?,
        transposed: false,
    })
}

fn m5_attempt(e: &SignedMatrix, t1: &[i8], t2: &[i8]) -> Option<Rank2Form> {
    let t3: Vec<i8> = t1.iter().zip(t2).map(|(a, b)| a - b).collect();
    if t3.iter().any(|x| x.abs() > 1) {
        return None;
    }
    let rows = group_rows(
        e,
        &[
            t1.to_vec(),
            neg(t1),
            t2.to_vec(),
            neg(t2),
            t3.clone(),
            neg(&t3),
        ],
    )?;
    let sigs: Vec<Vec<i8>> = (0..6).map(|g| vec![M5_T1[g], M5_T2[g]]).collect();
    let cols = group_cols(&[t1, t2], &sigs, e.cols())?;
    let c = |g: usize| cols[g].len();
    let indices = Rank2Indices {
        k: rows[0].len(),
        l: rows[1].len(),
        p: rows[2].len(),
        q: rows[3].len(),
        r: rows[4].len(),
        s: rows[5].len(),
        a: c(0),
        b: c(1),
        c: c(2),
        d: c(3),
        e: c(4),
        f: c(5),
        ..Default::default()
    };
    indices.check_m5().ok()?;
    Some(Rank2Form {
        mtype: Rank2Type::M5,
        indices,
        row_perm: Permutation::from_order(&rows.concat()).ok()?,
        col_perm: Permutation::from_order(&cols.concat()).ok()?,
        transposed: false,
    })
}

fn classify_oriented(e: &SignedMatrix) -> Option<Rank2Form> {
    let pats = nonzero_patterns(e);
    match pats.len() {
        2 => {
            let (u, w) = (&pats[0], &pats[1]);
            [
                (u.clone(), w.clone()),
                (u.clone(), neg(w)),
                (w.clone(), u.clone()),
                (w.clone(), neg(u)),
            ]
            .iter()
            .find_map(|(x1, x2)| family_attempt(e, x1, x2))
        }
        3 => {
            let u = &pats[0];
            [
                (&pats[1], 1i8),
                (&pats[1], -1),
                (&pats[2], 1),
                (&pats[2], -1),
            ]
            .iter()
            .find_map(|(w, sign)| {
                let t2: Vec<i8> = w.iter().map(|x| x * sign).collect();
                m5_attempt(e, u, &t2)
            })
        }
        _ => None,
    }
}

/// Classifies a rank-two difference into M1–M5, trying `E` and then `Eᵀ`.
///
/// Within an orientation the first nonzero row fixes the sign of the first
/// pattern and the remaining patterns are taken in order of appearance.
pub fn classify_rank2(e: &SignedMatrix) -> Result<Rank2Form, FormError> {
    check_rank_and_sums(e, 2)?;
    let form = if let Some(f) = classify_oriented(e) {
        f
    } else if let Some(mut f) = classify_oriented(&e.transpose()) {
        f.transposed = true;
        f
    } else {
        return Err(FormError::NoMatch);
    };
    debug_assert_eq!(&form.e(), e);
    Ok(form)
}

/// Parity and proportionality conditions for the existence of a witness.
pub fn rank2_realizable(form: &Rank2Form) -> bool {
    let x = &form.indices;
    if !form.is_m5() {
        return (x.g + x.h) % 2 == 0 && (x.e + x.f) % 2 == 0;
    }
    let cs = [x.a + x.b, x.c + x.d, x.e + x.f];
    let rs = [x.k + x.l, x.p + x.q, x.r + x.s];
    let even = |v: &[usize]| v.iter().all(|s| s % 2 == 0);
    let odd = |v: &[usize]| v.iter().all(|s| s % 2 == 1);
    if even(&cs) && even(&rs) {
        return true;
    }
    let proportional = cs[2] * rs[1] == cs[1] * rs[0] && cs[1] * rs[2] == cs[0] * rs[1];
    (odd(&cs) || odd(&rs)) && proportional
}
