mod common;

use common::{count_by_evaluation, is_symmetrized_by, mutate_rows, random_skew_symmetrizable, Counts};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scab_core::catalog::{a_n_polygon, d_n_punctured_polygon, get_example, BUNDLE_NAMES};
use scab_core::exchange::expr::parse;
use scab_core::exchange::{
    check_yhat_mutation, check_yhat_mutation_numeric, enumerate_exchange_graph, laurent_check, mutate_extended,
    mutate_matrix, mutate_seed_geometric, mutate_seed_nonnormalized, yhat, ExchangeMatrix, ExtendedMatrix,
    GeometricSeed, NumericSeed, Seed, SplitPolicy,
};
use scab_core::semifields::TropicalElement;

fn skew_symmetrizable() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<i64>)> {
    (1usize..=6, any::<u64>()).prop_map(|(n, s)| random_skew_symmetrizable(&mut ChaCha8Rng::seed_from_u64(s), n, 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn mutation_matches_five_case_rule((b, d) in skew_symmetrizable(), k in 0usize..6) {
        let k = k % b.len();
        let m = ExchangeMatrix::new(b.clone()).unwrap();
        let once = mutate_matrix(&m, k).unwrap();
        prop_assert_eq!(once.rows(), mutate_rows(&b, k));
        prop_assert!(is_symmetrized_by(&once.rows(), &d));
        prop_assert_eq!(mutate_matrix(&once, k).unwrap(), m);
    }

    #[test]
    fn extended_mutation_is_involutive((b, _d) in skew_symmetrizable(), extra in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 0..4), k in 0usize..6) {
        let n = b.len();
        let k = k % n;
        let mut rows = b.clone();
        rows.extend(extra.iter().map(|r| r[..n].to_vec()));
        let ext = ExtendedMatrix::new(rows.clone()).unwrap();
        let once = mutate_extended(&ext, k).unwrap();
        prop_assert_eq!(once.rows(), mutate_rows(&rows, k));
        prop_assert_eq!(mutate_extended(&once, k).unwrap(), ext);
    }
}

#[test]
fn rank_two_matrix_mutation() {
    let b = ExchangeMatrix::new(vec![vec![0, -1], vec![1, 0]]).unwrap();
    assert_eq!(mutate_matrix(&b, 0).unwrap().rows(), vec![vec![0, 1], vec![-1, 0]]);
    let z = ExchangeMatrix::zero(4);
    for k in 0..4 {
        assert_eq!(mutate_matrix(&z, k).unwrap(), z);
    }
    assert!(mutate_matrix(&b, 2).is_err());
    assert!(ExchangeMatrix::new(vec![vec![0, 1], vec![1, 0]]).is_err());
}

#[test]
fn printed_extended_mutations() {
    let digon = ExtendedMatrix::new(vec![vec![0, 0], vec![0, 0], vec![-1, 0]]).unwrap();
    assert_eq!(mutate_extended(&digon, 0).unwrap().rows(), vec![vec![0, 0], vec![0, 0], vec![1, 0]]);
    let sl2 = ExtendedMatrix::new(vec![vec![0], vec![1], vec![1]]).unwrap();
    assert_eq!(mutate_extended(&sl2, 0).unwrap().rows(), vec![vec![0], vec![-1], vec![-1]]);
}

#[test]
fn catalog_matrices_are_involutive() {
    for name in BUNDLE_NAMES {
        let bundle = get_example(name).unwrap();
        let ext = bundle.seed.ext().clone();
        let mut matrices = vec![ext];
        for t in &bundle.triangulations {
            matrices.push(ExtendedMatrix::new(t.triangulation.signed_adjacency().rows()).unwrap());
        }
        for m in matrices {
            for k in 0..m.rank() {
                assert_eq!(m.mutate(k).unwrap().mutate(k).unwrap(), m, "{name} at {k}");
            }
        }
    }
}

#[test]
fn rank_two_exchange_relation() {
    let b = ExchangeMatrix::new(vec![vec![0, -1], vec![1, 0]]).unwrap();
    let s = Seed::trivial(b);
    let m = mutate_seed_nonnormalized(&s, 0, SplitPolicy::KeepMinus).unwrap();
    assert_eq!(m.cluster()[0], parse("(x2 + 1)/x1", 2, 0).unwrap());
}

fn random_coefficients(rng: &mut ChaCha8Rng, n: usize, gens: usize) -> Vec<(TropicalElement, TropicalElement)> {
    let mut mono = || {
        let e: Vec<i64> = (0..gens).map(|_| rng.gen_range(-2..=2)).collect();
        TropicalElement::from_exponents(&e).unwrap()
    };
    (0..n).map(|_| (mono(), mono())).collect()
}

#[test]
fn nonnormalized_mutation_follows_the_ratio_rule() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let n = rng.gen_range(2..=4);
        let (b, _) = random_skew_symmetrizable(&mut rng, n, 2);
        let s = Seed::initial(ExchangeMatrix::new(b.clone()).unwrap(), random_coefficients(&mut rng, n, 3)).unwrap();
        for k in 0..n {
            let m = s.mutate(k, SplitPolicy::KeepMinus).unwrap();
            let (pk_plus, pk_minus) = &s.coefficients()[k];
            assert_eq!(&m.coefficients()[k], &(pk_minus.clone(), pk_plus.clone()));
            for y in (0..n).filter(|&y| y != k) {
                let factor = if b[k][y] >= 0 { pk_plus.pow(b[k][y]).unwrap() } else { pk_minus.pow(b[k][y]).unwrap() };
                assert_eq!(m.ratio(y), s.ratio(y).trop_mul(&factor).unwrap());
            }
            assert_eq!(m.mutate(k, SplitPolicy::KeepMinus).unwrap(), s);
            let normalized = s.mutate(k, SplitPolicy::Normalized).unwrap();
            for y in (0..n).filter(|&y| y != k) {
                assert_eq!(normalized.ratio(y), m.ratio(y));
                let (a, c) = &normalized.coefficients()[y];
                assert!(a.trop_add(c).unwrap().is_one());
            }
        }
    }
}

#[test]
fn rank_two_coefficient_ratio() {
    // B = [[0, −b], [c, 0]] with the cluster (z, x).
    let (b, c) = (2, 1);
    let m = ExchangeMatrix::new(vec![vec![0, -b], vec![c, 0]]).unwrap();
    let q = |e: &[i64]| TropicalElement::from_exponents(e).unwrap();
    let coeffs = vec![(q(&[1, 0, 0]), q(&[0, 1, 0])), (q(&[0, 0, 1]), q(&[1, 1, 0]))];
    let s = Seed::initial(m, coeffs).unwrap();
    let after = s.mutate(0, SplitPolicy::KeepMinus).unwrap();
    let expected = s.coefficients()[0].1.pow(-b).unwrap().trop_mul(&s.ratio(1)).unwrap();
    assert_eq!(after.ratio(1), expected);
}

#[test]
fn geometric_seeds_stay_normalized() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for name in ["punctured-digon", "punctured-hexagon", "gr3-6", "sl4n"] {
        let start = get_example(name).unwrap().seed;
        let mut s = start.clone();
        for _ in 0..8 {
            let k = rng.gen_range(0..s.rank());
            s = mutate_seed_geometric(&s, k).unwrap();
            assert!(s.to_seed().is_normalized(), "{name}");
            let back = s.mutate(k).unwrap();
            assert_eq!(back.mutate(k).unwrap(), s);
        }
    }
}

#[test]
fn sl2_relation() {
    let b = get_example("sl2").unwrap();
    let (lhs, rhs) = b.seed.exchange_relation(0, &b.names).unwrap();
    assert!(lhs.starts_with("(z11)*"), "{lhs}");
    assert_eq!(rhs, "z12*z21 + 1");
    assert_eq!(b.seed.exchange(0).unwrap().format_with(&b.names), "(z12*z21 + 1)/z11");
}

#[test]
fn yhat_rank_two_and_zero_matrix() {
    let b = ExchangeMatrix::new(vec![vec![0, -2], vec![3, 0]]).unwrap();
    let q = |e: &[i64]| TropicalElement::from_exponents(e).unwrap();
    let s = Seed::initial(b, vec![(q(&[1, 0]), q(&[0, 1])), (q(&[0, 1]), q(&[2, 0]))]).unwrap();
    let y = yhat(&s).unwrap();
    // ŷ_1 = (p⁺_1/p⁻_1) x_2^c with c = 3.
    assert_eq!(y[0], parse("q1*x2^3/q2", 2, 2).unwrap());
    for k in 0..2 {
        let after = yhat(&s.mutate(k, SplitPolicy::KeepMinus).unwrap()).unwrap();
        assert_eq!(after[k], y[k].inv().unwrap());
        assert!(check_yhat_mutation(&s, k, SplitPolicy::KeepMinus).unwrap().passed());
    }
    let z = Seed::trivial(ExchangeMatrix::zero(3));
    for k in 0..3 {
        let before = yhat(&z).unwrap();
        let after = yhat(&z.mutate(k, SplitPolicy::KeepMinus).unwrap()).unwrap();
        for f in (0..3).filter(|&f| f != k) {
            assert_eq!(after[f], before[f]);
        }
    }
}

#[test]
fn yhat_numeric_on_hexagon() {
    let b = get_example("punctured-hexagon").unwrap().triangulations[0].triangulation.signed_adjacency();
    let ext = ExtendedMatrix::principal(&b);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let x = (0..6).map(|_| rng.gen_range(0.1..10.0)).collect();
        let q = (0..6).map(|_| rng.gen_range(0.1..10.0)).collect();
        let s = NumericSeed::new(x, q, ext.clone()).unwrap();
        for k in 0..6 {
            assert!(check_yhat_mutation_numeric(&s, k, 1e-9).unwrap().passed());
        }
    }
}

#[test]
fn laurent_examples() {
    assert!(laurent_check(&parse("(x2 + 1)/x1", 2, 0).unwrap()));
    assert!(!laurent_check(&parse("(x2 + 1)/(x1 + 1)", 2, 0).unwrap()));
}

fn counts_of(seed: &GeometricSeed) -> Counts {
    let g = enumerate_exchange_graph(seed, 10_000).unwrap();
    assert!(!g.truncated);
    assert!(g.variables.iter().all(laurent_check));
    Counts {
        seeds: g.vertex_count(),
        variables: g.variables.len(),
        edges: g.edges().len(),
    }
}

#[test]
fn finite_type_counts_match_an_evaluation_oracle() {
    let digon = get_example("punctured-digon").unwrap().seed;
    assert_eq!(counts_of(&digon), Counts { seeds: 4, variables: 4, edges: 4 });
    for bundle in [a_n_polygon(3).unwrap(), d_n_punctured_polygon(4).unwrap()] {
        let b = bundle.seed.matrix();
        let principal = GeometricSeed::initial(ExtendedMatrix::principal(&b));
        let oracle = count_by_evaluation(&b.rows(), 10_000).unwrap();
        assert_eq!(counts_of(&principal), oracle, "{}", bundle.name);
        assert_eq!(counts_of(&bundle.seed), oracle, "{}", bundle.name);
    }
    assert_eq!(
        count_by_evaluation(&a_n_polygon(3).unwrap().seed.matrix().rows(), 100),
        Some(Counts { seeds: 14, variables: 9, edges: 21 })
    );
    assert_eq!(
        count_by_evaluation(&d_n_punctured_polygon(4).unwrap().seed.matrix().rows(), 100),
        Some(Counts { seeds: 50, variables: 16, edges: 100 })
    );
}

#[test]
fn closed_walks_return_the_seed() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for bundle in [a_n_polygon(3).unwrap(), d_n_punctured_polygon(4).unwrap()] {
        let start = bundle.seed.clone();
        let g = enumerate_exchange_graph(&start, 1000).unwrap();
        let mut found = 0;
        while found < 40 {
            let len = rng.gen_range(2..=10);
            let seq: Vec<usize> = (0..len).map(|_| rng.gen_range(0..start.rank())).collect();
            let (end, perm) = g.walk(0, &seq).unwrap();
            if end != 0 {
                continue;
            }
            found += 1;
            let s = start.mutate_sequence(&seq).unwrap();
            for (y, &p) in perm.iter().enumerate() {
                assert_eq!(s.cluster()[y], start.cluster()[p]);
            }
            assert_eq!(&s.ext().permuted(&perm), start.ext());
        }
    }
}
