use grammate::combinators::*;
use grammate::gram::{convertibility, is_gram_pair, GramPair};
use grammate::numerics::singular_values;
use grammate::rank_forms::{classify_rank2, Rank2Type};
use grammate::{parse_binary, parse_matrix, rank_exact, BinaryMatrix, Dense};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{}", env!("CARGO_MANIFEST_DIR"), name)).unwrap()
}

fn exchange_pair() -> GramPair {
    let x = parse_binary(&fixture("swap2.mtxt")).unwrap();
    let i = parse_binary(&fixture("identity2.mtxt")).unwrap();
    is_gram_pair(&x, &i).unwrap().unwrap()
}

fn seven_pair() -> GramPair {
    let a = parse_binary(&fixture("rank1_a.mtxt")).unwrap();
    let b = parse_binary(&fixture("rank1_b.mtxt")).unwrap();
    is_gram_pair(&a, &b).unwrap().unwrap()
}

#[test]
fn complement_is_an_involution() {
    for p in [exchange_pair(), seven_pair()] {
        let c = complement_pair(&p).unwrap();
        assert_eq!(complement_pair(&c).unwrap(), p);
    }
}

#[test]
fn direct_sum_and_join() {
    let p = exchange_pair();
    let s = direct_sum_pair(&p, &p).unwrap();
    assert_eq!((s.a().rows(), s.diff_rank()), (4, 2));
    assert_eq!(
        classify_rank2(&s.difference()).unwrap().mtype,
        Rank2Type::M2
    );
    let j = join_pair(&p, &p).unwrap();
    assert_eq!(j.a().rows(), 4);

    let q = seven_pair();
    let s = direct_sum_pair(&p, &q).unwrap();
    assert_eq!(s.diff_rank(), p.diff_rank() + q.diff_rank());
    join_pair(&q, &p).unwrap();
}

#[test]
fn kron_pairs() {
    let p = exchange_pair();
    let k = kron_pair(&p, &p).unwrap();
    let x = p.a().kron(p.a());
    assert_eq!((k.a(), k.b()), (&x, &BinaryMatrix::identity(4)));
    assert!(k.diff_rank() >= 1);

    let k = kron_pair(&p, &seven_pair()).unwrap();
    assert_eq!(k.a().rows(), 14);
    assert!(k.diff_rank() >= 1);
}

#[test]
fn kron_swaps() {
    let p = exchange_pair();
    let k = kron_swap(&p).unwrap();
    assert_eq!(k.a(), &p.a().kron(p.b()));
    assert!(k.diff_rank() >= 1);
    let k = kron_swap(&seven_pair()).unwrap();
    assert_eq!(k.a().rows(), 49);
}

#[test]
fn literal_kron_is_checked_not_trusted() {
    let p = exchange_pair();
    let q = seven_pair();
    let x = p.a().kron(p.b());
    let y = q.a().kron(q.b());
    assert!(x.rows() != y.rows());
    assert!(kron_pair_literal(&p, &q).is_err());
    // equal shapes: (X⊗I, C⊗C') with the complement pair
    let c = complement_pair(&p).unwrap();
    let lit = kron_pair_literal(&p, &c).unwrap();
    let expect = is_gram_pair(&p.a().kron(p.b()), &c.a().kron(c.b())).unwrap();
    assert_eq!(lit, expect);
}

#[test]
fn kron_realizable_cases() {
    let e = parse_matrix(&fixture("rank1_e.mtxt")).unwrap();
    let w = parse_binary(&fixture("rank1_a.mtxt")).unwrap();
    let one = BinaryMatrix::ones(1, 1);
    let (ke, kw) = kron_realizable(&one, &e, &w, KronSide::Left).unwrap();
    assert_eq!((ke, kw), (e.clone(), w.clone()));

    let j12 = BinaryMatrix::ones(1, 2);
    let (ke, kw) = kron_realizable(&j12, &e, &w, KronSide::Left).unwrap();
    assert_eq!((ke.rows(), ke.cols(), kw.cols()), (7, 14, 14));
    let (ke, _) = kron_realizable(&j12, &e, &w, KronSide::Right).unwrap();
    assert_eq!((ke.rows(), ke.cols()), (7, 14));

    let i2 = BinaryMatrix::identity(2);
    let (ke, _) = kron_realizable(&i2, &e, &w, KronSide::Left).unwrap();
    assert_eq!(rank_exact(&ke), 2);

    assert_eq!(
        kron_realizable(&BinaryMatrix::zeros(1, 1), &e, &w, KronSide::Left),
        Err(CombinatorError::ZeroFactor)
    );
}

#[test]
fn block_swap_examples() {
    let zero = BinaryMatrix::zeros(1, 1);
    let one = BinaryMatrix::ones(1, 1);
    let p = block_swap_pair(&zero, &one).unwrap();
    let r = convertibility(&p, 1e-9).unwrap();
    assert!(r.convertible);
    let vals = r.gram_singular.unwrap().values;
    assert!(vals.len() == 1 && (vals[0] - 1.0).abs() < 1e-9);

    let i2 = BinaryMatrix::identity(2);
    let j2 = BinaryMatrix::ones(2, 2);
    let p = block_swap_pair(&i2, &j2).unwrap();
    let vals = convertibility(&p, 1e-9)
        .unwrap()
        .gram_singular
        .unwrap()
        .values;
    assert_eq!(vals.len(), 2);
    assert!(vals.iter().all(|v| (v - 1.0).abs() < 1e-9));

    assert_eq!(block_swap_pair(&i2, &i2), Err(CombinatorError::EqualBlocks));
}

#[test]
fn block_swap_random_convertible() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut trials = 0;
    while trials < 100 {
        let a1 = BinaryMatrix::from_fn(3, 3, |_, _| rng.gen_range(0..2));
        let a2 = BinaryMatrix::from_fn(3, 3, |_, _| rng.gen_range(0..2));
        if a1 == a2 {
            continue;
        }
        trials += 1;
        let p = block_swap_pair(&a1, &a2).unwrap();
        let r = convertibility(&p, 1e-9).unwrap();
        assert!(r.convertible);
        let diff = a1.sub(&a2).unwrap();
        let expect: Vec<f64> = singular_values(&diff, 1e-9)
            .unwrap()
            .into_iter()
            .filter(|&s| s > 0.0)
            .collect();
        let got = r.gram_singular.unwrap().values;
        assert_eq!(got.len(), expect.len());
        assert!(
            got.iter().zip(&expect).all(|(x, y)| (x - y).abs() < 1e-8),
            "{:?} {:?}",
            got,
            expect
        );
    }
}
