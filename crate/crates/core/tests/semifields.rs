use proptest::prelude::*;
use scab_core::semifields::{deformed_add, SemifieldDescriptor, SemifieldValue, TropicalElement};

fn monomial(gens: usize) -> impl Strategy<Value = TropicalElement> {
    prop::collection::vec(-10i64..=10, gens)
        .prop_map(move |halves| TropicalElement::from_halves(gens, halves.into_iter().enumerate()).unwrap())
}

fn triple() -> impl Strategy<Value = (TropicalElement, TropicalElement, TropicalElement)> {
    (0usize..=6).prop_flat_map(|g| (monomial(g), monomial(g), monomial(g)))
}

proptest! {
    #[test]
    fn tropical_addition_is_a_semiring_sum((a, b, c) in triple()) {
        let ab = a.trop_add(&b).unwrap();
        prop_assert_eq!(ab.trop_add(&c).unwrap(), a.trop_add(&b.trop_add(&c).unwrap()).unwrap());
        prop_assert_eq!(ab.clone(), b.trop_add(&a).unwrap());
        let lhs = a.trop_mul(&b.trop_add(&c).unwrap()).unwrap();
        let rhs = a.trop_mul(&b).unwrap().trop_add(&a.trop_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tropical_sum_takes_the_smaller_exponent((a, b, _c) in triple()) {
        let s = a.trop_add(&b).unwrap();
        for i in 0..a.gens() {
            prop_assert_eq!(s.half_exponent(i), a.half_exponent(i).min(b.half_exponent(i)));
        }
    }

    #[test]
    fn tropical_group_laws((a, b, _c) in triple()) {
        let one = TropicalElement::one(a.gens());
        prop_assert_eq!(a.trop_mul(&one).unwrap(), a.clone());
        prop_assert!(a.trop_mul(&a.inv()).unwrap().is_one());
        prop_assert_eq!(a.trop_mul(&b).unwrap().trop_div(&b).unwrap(), a.clone());
        prop_assert_eq!(a.pow(3).unwrap(), a.trop_mul(&a).unwrap().trop_mul(&a).unwrap());
    }

    #[test]
    fn json_round_trip((a, _b, _c) in triple()) {
        let back = TropicalElement::from_json(&a.to_json(), a.gens()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn deformed_sum_distributes(
        k in prop_oneof![-50.0f64..-0.1, 0.1f64..50.0],
        y in 0.01f64..100.0,
        z in 0.01f64..100.0,
        x in 0.01f64..100.0,
    ) {
        let scaled = deformed_add(k, y * x, z * x).unwrap();
        let expected = deformed_add(k, y, z).unwrap() * x;
        prop_assert!((scaled - expected).abs() <= 1e-12 * expected.abs());
        let swapped = deformed_add(k, z, y).unwrap();
        prop_assert!((swapped - deformed_add(k, y, z).unwrap()).abs() <= 1e-14 * swapped);
    }

    #[test]
    fn deformed_sum_moves_toward_min(y in 0.01f64..100.0, z in 0.01f64..100.0) {
        let m = y.min(z);
        let mut last = f64::INFINITY;
        for k in [-1.0, -10.0, -100.0, -1000.0] {
            let gap = (deformed_add(k, y, z).unwrap() - m).abs();
            prop_assert!(gap <= last + 8.0 * f64::EPSILON * m);
            last = gap;
        }
    }
}

#[test]
fn monomial_products() {
    let q = |e: &[i64]| TropicalElement::from_exponents(e).unwrap();
    assert_eq!(q(&[1, 1]).trop_mul(&q(&[-1, 0])).unwrap(), q(&[0, 1]));
    let a = q(&[2, -3, 1]);
    assert_eq!(a.trop_mul(&TropicalElement::one(3)).unwrap(), a);
    let root = TropicalElement::from_halves(1, [(0, 1)]).unwrap();
    assert_eq!(root.trop_mul(&root).unwrap(), q(&[1]));
    assert!(!root.is_integral());
    assert!(q(&[1]).trop_mul(&q(&[1, 0])).is_err());
}

#[test]
fn deformed_sum_values() {
    assert!((deformed_add(1.0, 2.0, 3.0).unwrap() - 5.0).abs() < 1e-12);
    assert!((deformed_add(-1000.0, 2.0, 3.0).unwrap() - 2.0).abs() < 1e-2);
    let closed_form = (2.0 * 2f64.powf(-1000.0)).powf(-1.0 / 1000.0);
    let v = deformed_add(-1000.0, 2.0, 2.0).unwrap();
    assert!((v - closed_form).abs() < 1e-12);
    assert!((v - 2.0).abs() < 1e-2);
    assert!(deformed_add(1.0, -1.0, 2.0).is_err());
    assert!(deformed_add(0.0, 1.0, 2.0).is_err());
}

#[test]
fn descriptor_operations() {
    let r = SemifieldDescriptor::PositiveReal;
    assert_eq!(r.add(&SemifieldValue::Real(2.0), &SemifieldValue::Real(3.0)).unwrap(), SemifieldValue::Real(5.0));
    assert!(r.add(&SemifieldValue::Real(-1.0), &SemifieldValue::Real(3.0)).is_err());
    let prod = SemifieldDescriptor::Product(vec![SemifieldDescriptor::Tropical(1), SemifieldDescriptor::PositiveReal]);
    let a = SemifieldValue::Tuple(vec![
        SemifieldValue::Tropical(TropicalElement::from_exponents(&[2]).unwrap()),
        SemifieldValue::Real(1.5),
    ]);
    let b = SemifieldValue::Tuple(vec![
        SemifieldValue::Tropical(TropicalElement::from_exponents(&[-1]).unwrap()),
        SemifieldValue::Real(0.5),
    ]);
    let expected = SemifieldValue::Tuple(vec![
        SemifieldValue::Tropical(TropicalElement::from_exponents(&[-1]).unwrap()),
        SemifieldValue::Real(2.0),
    ]);
    assert_eq!(prod.add(&a, &b).unwrap(), expected);
    assert_eq!(prod.mul(&a, &prod.inv(&a).unwrap()).unwrap(), prod.one());
    let trivial = SemifieldDescriptor::Trivial;
    assert_eq!(trivial.add(&trivial.one(), &trivial.one()).unwrap(), trivial.one());
}
