use grammate::gram::*;
use grammate::numerics::{flip_triplets, round_to_binary, RealMatrix, DEFAULT_TOL};
use grammate::oracle::{enumerate_gram_pairs, PairFilters};
use grammate::{parse_binary, parse_matrix, BinaryMatrix, Dense, Permutation};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{}", env!("CARGO_MANIFEST_DIR"), name)).unwrap()
}

fn pairs() -> Vec<GramPair> {
    let mut out = Vec::new();
    for (m, n) in [(2, 2), (2, 3), (3, 3), (3, 4)] {
        out.extend(enumerate_gram_pairs(m, n, &PairFilters::default()).unwrap());
    }
    out
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Permutation::from_image(v).unwrap()
}

#[test]
fn gram_pair_examples() {
    let x = parse_binary(&fixture("swap2.mtxt")).unwrap();
    let i = BinaryMatrix::identity(2);
    let p = is_gram_pair(&x, &i).unwrap().unwrap();
    assert_eq!(p.diff_rank(), 1);
    assert_eq!(p.swapped().a(), &i);
    assert!(is_gram_pair(&i, &i).unwrap().is_none());
    assert!(is_gram_pair(&i, &BinaryMatrix::ones(2, 2))
        .unwrap()
        .is_none());
    assert!(matches!(
        is_gram_pair(&i, &BinaryMatrix::identity(3)),
        Err(GramError::DimensionMismatch(_))
    ));
    let (a, b) = p.into_parts();
    assert_eq!((a, b), (x, i));
}

#[test]
fn rank1_example_is_convertible() {
    let a = parse_binary(&fixture("rank1_a.mtxt")).unwrap();
    let e = parse_matrix(&fixture("rank1_e.mtxt")).unwrap();
    assert!(is_realizable_witness(&e, &a).unwrap());
    let p = is_gram_pair(&a, &a.add_signed(&e).unwrap())
        .unwrap()
        .unwrap();
    let r = convertibility(&p, DEFAULT_TOL).unwrap();
    assert!(r.convertible && r.checks.agree());
    let g = r.gram_singular.unwrap();
    assert!((g.values[0] - 2.0).abs() < 1e-9);
    let h = half_difference_svd(&e, DEFAULT_TOL).unwrap();
    assert!((h.values[0] - 2.0).abs() < 1e-9);
}

#[test]
fn realizable_witness_rejects_non_binary_sum() {
    let e = parse_matrix("2 2\n1 -1\n-1 1\n").unwrap();
    let a = BinaryMatrix::identity(2);
    assert!(matches!(
        is_realizable_witness(&e, &a),
        Err(GramError::NotBinary)
    ));
    let x = parse_binary(&fixture("swap2.mtxt")).unwrap();
    assert!(is_realizable_witness(&e, &x).unwrap());
}

#[test]
fn embed_check_example() {
    let e = parse_matrix("2 2\n1 -1\n-1 1\n").unwrap();
    let x1 = parse_binary("2 1\n1\n1\n").unwrap();
    let x2 = parse_binary("1 2\n1 1\n").unwrap();
    assert!(embed_check(&e, &x1, &x2).unwrap());
    let bad = parse_binary("2 1\n1\n0\n").unwrap();
    assert!(!embed_check(&e, &bad, &x2).unwrap());
}

#[test]
fn realizability_is_transpose_and_permutation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(260);
    for p in pairs() {
        let (a, e) = (p.a(), p.difference());
        assert_eq!(a.row_sums(), p.b().row_sums());
        assert_eq!(a.col_sums(), p.b().col_sums());
        assert!(is_realizable_witness(&e, a).unwrap());
        assert!(is_realizable_witness(&e.transpose(), &a.transpose()).unwrap());
        let (rp, cp) = (
            random_perm(&mut rng, a.rows()),
            random_perm(&mut rng, a.cols()),
        );
        let pe = e.apply_perms(&rp, &cp).unwrap();
        let pa = a.apply_perms(&rp, &cp).unwrap();
        assert!(is_realizable_witness(&pe, &pa).unwrap());
    }
}

#[test]
fn convertibility_invariants() {
    let mut convertible = 0;
    for p in pairs() {
        let r = convertibility(&p, DEFAULT_TOL).unwrap();
        assert!(r.checks.agree(), "{:?}\n{:?}", p, r.checks);
        assert_eq!(r.convertible, r.checks.as_array()[0]);
        let Some(g) = r.gram_singular else {
            assert!(!r.convertible);
            continue;
        };
        assert!(r.convertible);
        convertible += 1;
        assert_eq!(g.values.len(), p.diff_rank());
        let flipped = flip_triplets(p.a(), &g.values, &g.left_vectors, &g.right_vectors);
        assert_eq!(round_to_binary(&flipped, 1e-6).as_ref(), Some(p.b()));
        let s = RealMatrix::from_dense(&p.a().to_int().add(&p.b().to_int()));
        let h = half_difference_svd(&p.difference(), DEFAULT_TOL).unwrap();
        for v in &g.right_vectors {
            assert!(s.mul_vec(v).iter().all(|x| x.abs() < 1e-9));
            let mut residual = v.clone();
            for w in &h.right_vectors {
                let d: f64 = v.iter().zip(w).map(|(x, y)| x * y).sum();
                for (r, y) in residual.iter_mut().zip(w) {
                    *r -= d * y;
                }
            }
            assert!(residual.iter().all(|x| x.abs() < 1e-9));
        }
    }
    assert!(convertible > 0);
}
