use grammate::gram::{is_gram_pair, GramPair};
use grammate::iso::*;
use grammate::numerics::distinct_singular_values;
use grammate::{parse_binary, BinaryMatrix, Dense};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture(name: &str) -> BinaryMatrix {
    let text = std::fs::read_to_string(format!("{}/fixtures/{}", env!("CARGO_MANIFEST_DIR"), name))
        .unwrap();
    parse_binary(&text).unwrap()
}

fn pair(a: &BinaryMatrix, b: &BinaryMatrix) -> GramPair {
    is_gram_pair(a, b).unwrap().unwrap()
}

/// `B` for the rank-one witness `A` in the canonical layout with `k × k` blocks.
fn mate(a: &BinaryMatrix, k1: usize, k2: usize) -> BinaryMatrix {
    BinaryMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        if i < 2 * k1 && j < 2 * k2 {
            1 - a.get(i, j)
        } else {
            a.get(i, j)
        }
    })
}

#[test]
fn exchange_pair_context() {
    let p = pair(&fixture("swap2.mtxt"), &fixture("identity2.mtxt"));
    let ctx = remaining_context(&p).unwrap();
    assert!(ctx.y.is_none() && ctx.x1.is_none() && ctx.x3.is_none());
    assert!(is_fixable(&ctx, DEFAULT_NODE_CAP).is_fixable());
    assert!(sum_separation(&ctx));
    assert_eq!(
        iso_distinct_sv(&p, 1e-8, DEFAULT_NODE_CAP),
        Err(IsoError::SpectrumNotDistinct)
    );
}

#[test]
fn seven_by_seven_is_not_isomorphic() {
    let (a, b) = (fixture("rank1_a.mtxt"), fixture("rank1_b.mtxt"));
    let p = pair(&a, &b);
    let ctx = remaining_context(&p).unwrap();
    assert_eq!(ctx.y, Some(BinaryMatrix::ones(3, 3)));
    assert_eq!(
        is_fixable(&ctx, DEFAULT_NODE_CAP),
        FixVerdict::NotFixable { nodes: 0 }
    );
    assert!(matches!(
        are_isomorphic(&a, &b, DEFAULT_NODE_CAP).unwrap(),
        IsoVerdict::NonIsomorphic { .. }
    ));
}

#[test]
fn ten_by_ten_is_fixable_and_isomorphic() {
    let a = fixture("fixable_a.mtxt");
    let b = mate(&a, 3, 3);
    let p = pair(&a, &b);
    let ctx = remaining_context(&p).unwrap();
    assert_eq!(ctx.y.as_ref().map(|y| (y.rows(), y.cols())), Some((4, 4)));
    assert!(sum_separation(&ctx));
    assert_eq!(a.row_sums(), vec![5, 5, 5, 5, 5, 5, 7, 9, 8, 8]);
    assert_eq!(a.col_sums(), vec![6, 6, 6, 6, 6, 6, 5, 8, 8, 5]);
    match is_fixable(&ctx, DEFAULT_NODE_CAP) {
        FixVerdict::Fixable { witness, .. } => assert!(witness.verify(&a, &b)),
        other => panic!("{:?}", other),
    }
    let v = are_isomorphic(&a, &b, DEFAULT_NODE_CAP).unwrap();
    let w = v.witness().unwrap();
    assert!(w.verify(&a, &b));
    assert!(w.preserves_grams(&a));
}

#[test]
fn identical_matrices() {
    let a = fixture("rank1_a.mtxt");
    let v = are_isomorphic(&a, &a, DEFAULT_NODE_CAP).unwrap();
    assert!(v.witness().unwrap().verify(&a, &a));
}

#[test]
fn cap_yields_undecided() {
    let a = fixture("fixable_a.mtxt");
    let b = mate(&a, 3, 3);
    assert!(are_isomorphic(&a, &b, 1).unwrap().is_undecided());
}

/// A random rank-one pair in canonical layout: borders with equal column
/// (row) sums obtained by shuffling each column (row).
fn random_rank1(rng: &mut ChaCha8Rng, k1: usize, k2: usize, extra: usize) -> BinaryMatrix {
    let n = 2 * k1 + extra;
    let m = 2 * k2 + extra;
    assert_eq!(n, m);
    let mut rows = vec![vec![0i8; n]; n];
    for i in 0..2 * k1 {
        for j in 0..2 * k2 {
            rows[i][j] = ((i < k1) != (j < k2)) as i8;
        }
    }
    for j in 2 * k2..n {
        let col: Vec<i8> = (0..k1).map(|_| rng.gen_range(0..2)).collect();
        let mut other = col.clone();
        other.shuffle(rng);
        for i in 0..k1 {
            rows[i][j] = col[i];
            rows[k1 + i][j] = other[i];
        }
    }
    for i in 2 * k1..n {
        let row: Vec<i8> = (0..k2).map(|_| rng.gen_range(0..2)).collect();
        let mut other = row.clone();
        other.shuffle(rng);
        for j in 0..k2 {
            rows[i][j] = row[j];
            rows[i][k2 + j] = other[j];
        }
        for j in 2 * k2..n {
            rows[i][j] = rng.gen_range(0..2);
        }
    }
    BinaryMatrix::from_rows(&rows).unwrap()
}

#[test]
fn random_rank1_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut distinct = 0;
    let mut separated = 0;
    for trial in 0..400 {
        let k = 1 + trial % 3;
        let extra = 2 + trial % 5;
        let a = random_rank1(&mut rng, k, k, extra);
        let b = mate(&a, k, k);
        let p = pair(&a, &b);
        let ctx = remaining_context(&p).unwrap();
        let fix = is_fixable(&ctx, DEFAULT_NODE_CAP);
        let iso = are_isomorphic(&a, &b, DEFAULT_NODE_CAP).unwrap();
        assert!(!fix.is_undecided() && !iso.is_undecided());
        if let FixVerdict::Fixable { witness, .. } = &fix {
            assert!(witness.verify(&a, &b));
            assert!(iso.witness().is_some());
        }
        if let Some(w) = iso.witness() {
            assert!(w.verify(&a, &b) && w.preserves_grams(&a));
        }
        if sum_separation(&ctx) {
            separated += 1;
            assert_eq!(fix.is_fixable(), iso.witness().is_some());
        }
        if distinct_singular_values(&a, 1e-8) {
            distinct += 1;
            let inv = iso_distinct_sv(&p, 1e-8, DEFAULT_NODE_CAP).unwrap();
            assert_eq!(inv.witness().is_some(), iso.witness().is_some());
            assert_eq!(inv.witness().is_some(), fix.is_fixable());
            if let Some(w) = inv.witness() {
                assert!(w.row_perm.is_involution() && w.col_perm.is_involution());
            }
        }
    }
    assert!(
        distinct > 20 && separated > 20,
        "{} {}",
        distinct,
        separated
    );
}
