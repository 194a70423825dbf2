use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scab_core::catalog::get_example;
use scab_core::exchange::rescale::tropical_exchange;
use scab_core::exchange::{
    enumerate_exchange_graph, is_normalized, rescale_pattern, tropical_propagate, verify_pattern, ExchangeGraph,
    ExchangeMatrix, ExtendedMatrix, GeometricSeed, RationalFunction, ScalarFamily, Seed,
};
use scab_core::semifields::TropicalElement;
use scab_core::Error;

fn pattern(seed: &GeometricSeed) -> ExchangeGraph<Seed> {
    let g = enumerate_exchange_graph(seed, 10_000).unwrap();
    assert!(!g.truncated);
    g.map(|s| Ok(s.to_seed())).unwrap()
}

fn random_family(g: &ExchangeGraph<Seed>, rng: &mut ChaCha8Rng) -> ScalarFamily {
    let gens = g.vertices[0].coefficients()[0].0.gens();
    let table: Vec<(RationalFunction, TropicalElement)> = g
        .variables
        .iter()
        .map(|f| {
            let halves: Vec<(usize, i64)> = (0..gens).map(|i| (i, 2 * rng.gen_range(-3i64..=3))).collect();
            (f.clone(), TropicalElement::from_halves(gens, halves).unwrap())
        })
        .collect();
    ScalarFamily::per_variable(g, |f| table.iter().find(|(g, _)| g == f).unwrap().1.clone())
}

#[test]
fn unit_family_is_the_identity() {
    let g = pattern(&get_example("punctured-digon").unwrap().seed);
    assert!(verify_pattern(&g).unwrap().is_empty());
    assert!(is_normalized(&g));
    let r = rescale_pattern(&g, &ScalarFamily::ones(&g)).unwrap();
    assert_eq!(r.vertices, g.vertices);
}

#[test]
fn single_variable_rescaling_divides_its_coefficients() {
    let b = ExchangeMatrix::new(vec![vec![0, -1], vec![1, 0]]).unwrap();
    let g = pattern(&GeometricSeed::initial(ExtendedMatrix::principal(&b)));
    let x1 = g.vertices[0].cluster()[0].clone();
    let gamma = TropicalElement::from_exponents(&[1, -2]).unwrap();
    let one = TropicalElement::one(2);
    let c = ScalarFamily::per_variable(&g, |f| if *f == x1 { gamma.clone() } else { one.clone() });
    let r = rescale_pattern(&g, &c).unwrap();
    assert!(verify_pattern(&r).unwrap().is_empty());
    let (p, m) = &g.vertices[0].coefficients()[0];
    let (rp, rm) = &r.vertices[0].coefficients()[0];
    // Across the edge the new variable keeps scalar 1, so both terms pick up 1/γ.
    assert_eq!(rp, &p.trop_div(&gamma).unwrap());
    assert_eq!(rm, &m.trop_div(&gamma).unwrap());
    assert_eq!(r.vertices[0].cluster()[0], x1.mul_tropical(&gamma.inv()).unwrap());
}

#[test]
fn incompatible_families_are_rejected() {
    let g = pattern(&get_example("punctured-digon").unwrap().seed);
    let mut c = ScalarFamily::ones(&g);
    c.values[1][0] = TropicalElement::from_exponents(&[1, 0]).unwrap();
    assert!(matches!(rescale_pattern(&g, &c), Err(Error::IncompatibleFamily(_))));
    c.values.pop();
    assert!(matches!(rescale_pattern(&g, &c), Err(Error::IncompatibleFamily(_))));
}

#[test]
fn tropical_relation_is_componentwise_min() {
    let b = ExchangeMatrix::new(vec![vec![0, -1], vec![1, 0]]).unwrap();
    let q = |e: &[i64]| TropicalElement::from_exponents(e).unwrap();
    let s = Seed::initial(b, vec![(q(&[2, -1]), q(&[0, 1])), (q(&[0, 0]), q(&[0, 0]))]).unwrap();
    let c = vec![q(&[1, 1]), q(&[-1, 3])];
    // Column 0 has b_10 = 1: c'_0 = (p⁺ c_1 ⊕ p⁻) / c_0.
    let expected = q(&[1, 2]).trop_add(&q(&[0, 1])).unwrap().trop_div(&c[0]).unwrap();
    assert_eq!(tropical_exchange(&s, &c, 0).unwrap(), expected);
    assert_eq!(expected, q(&[-1, 0]));
}

#[test]
fn unit_tropical_values_stay_one_with_trivial_coefficients() {
    let g = pattern(&GeometricSeed::initial(
        ExtendedMatrix::from_parts(&ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]]).unwrap(), &[]).unwrap(),
    ));
    let c = tropical_propagate(&g, &[TropicalElement::one(0), TropicalElement::one(0)]).unwrap();
    assert!(c.values.iter().flatten().all(TropicalElement::is_one));
}

#[test]
fn propagation_then_rescaling_normalizes() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for name in ["punctured-digon", "punctured-hexagon"] {
        let g = pattern(&get_example(name).unwrap().seed);
        assert!(is_normalized(&g));
        let skewed = rescale_pattern(&g, &random_family(&g, &mut rng)).unwrap();
        assert!(verify_pattern(&skewed).unwrap().is_empty(), "{name}");
        assert!(!is_normalized(&skewed), "{name}");
        let gens = skewed.vertices[0].coefficients()[0].0.gens();
        let start: Vec<TropicalElement> = (0..skewed.vertices[0].rank())
            .map(|_| {
                let e: Vec<i64> = (0..gens).map(|_| rng.gen_range(-2..=2)).collect();
                TropicalElement::from_exponents(&e).unwrap()
            })
            .collect();
        let c = tropical_propagate(&skewed, &start).unwrap();
        let fixed = rescale_pattern(&skewed, &c).unwrap();
        assert!(verify_pattern(&fixed).unwrap().is_empty(), "{name}");
        assert!(is_normalized(&fixed), "{name}");
    }
}

#[test]
fn digon_tropical_values_close_around_the_cycle() {
    let g = pattern(&get_example("punctured-digon").unwrap().seed);
    let q = |e: &[i64]| TropicalElement::from_exponents(e).unwrap();
    let c = tropical_propagate(&g, &[q(&[1, 0]), q(&[-1, 2])]).unwrap();
    assert_eq!(c.values.len(), 4);
    c.check_compatible(&g).unwrap();
}
