use std::collections::{HashMap, VecDeque};

use scab_core::catalog::{a_n_polygon, d_n_punctured_polygon, get_example};
use scab_core::exchange::expr::parse_with;
use scab_core::exchange::{enumerate_exchange_graph, mutate_extended, ExchangeMatrix, ExtendedMatrix, SymbolNames};
use scab_core::lamination::{
    assemble_extended, elementary_lamination, lamination_from_shear, parse_path, principal_seed, shear_coords,
    universal_multilamination, Lamination, MultiLamination, PathStep,
};
use scab_core::surface::{Encoding, TaggedTriangulation};

fn digon() -> TaggedTriangulation {
    get_example("punctured-digon").unwrap().triangulations[0].triangulation.clone()
}

fn at(t: &TaggedTriangulation, shear: &[i64]) -> Lamination {
    lamination_from_shear(t, shear.to_vec()).unwrap()
}

fn transport(l: &Lamination, path: &str) -> Vec<i64> {
    let steps = parse_path(path).unwrap();
    let mut target = l.reference.clone();
    for &s in &steps {
        target = match s {
            PathStep::Flip(k) => target.flip_at(k).unwrap().triangulation,
            PathStep::ChangeTags(p) => target.change_tags(p).unwrap(),
        };
    }
    shear_coords(l, &target, &steps).unwrap()
}

#[test]
fn digon_transport_table() {
    let t = digon();
    let l1 = at(&t, &[-1, 0]);
    let l3 = at(&t, &[0, 1]);
    assert_eq!(transport(&l1, ""), vec![-1, 0]);
    assert_eq!(transport(&l1, "f0"), vec![1, 0]);
    assert_eq!(transport(&l1, "f1"), vec![-1, 0]);
    assert_eq!(transport(&l1, "f0,f1"), vec![1, 0]);
    assert_eq!(transport(&l3, "f1"), vec![0, -1]);
    assert_eq!(transport(&l3, "f0,f1"), vec![0, -1]);
    assert_eq!(transport(&l3, "f1,f0"), vec![0, -1]);
}

#[test]
fn digon_extended_matrices() {
    let t = digon();
    let ml = MultiLamination::new(vec![at(&t, &[-1, 0])]).unwrap();
    let here = assemble_extended(&t, &ml).unwrap();
    assert_eq!(here.rows(), vec![vec![0, 0], vec![0, 0], vec![-1, 0]]);
    let t1 = t.flip_at(0).unwrap().triangulation;
    assert_eq!(assemble_extended(&t1, &ml).unwrap().rows(), vec![vec![0, 0], vec![0, 0], vec![1, 0]]);
    let empty = MultiLamination::default();
    assert_eq!(assemble_extended(&t, &empty).unwrap().rows(), t.signed_adjacency().rows());
}

#[test]
fn shear_round_trip_on_the_digon() {
    let t = digon();
    let p = t.surface().punctures().next().unwrap();
    for a in -2..=2 {
        for b in -2..=2 {
            let l = at(&t, &[a, b]);
            assert_eq!(shear_coords(&l, &t, &[]).unwrap(), vec![a, b]);
            assert_eq!(transport(&l, "f0,f0"), vec![a, b]);
            assert_eq!(transport(&l, &format!("t{p},t{p}")), vec![a, b]);
            assert_eq!(transport(&l, &format!("t{p}")), vec![a, b]);
        }
    }
    assert!(lamination_from_shear(&t, vec![1]).is_err());
}

#[test]
fn transport_rejects_paths_that_miss_the_target() {
    let t = digon();
    let l = at(&t, &[1, 1]);
    assert!(shear_coords(&l, &t, &[PathStep::Flip(0)]).is_err());
}

#[test]
fn elementary_laminations_give_principal_coefficients() {
    let t = digon();
    let e = elementary_lamination(&t, t.arc_id(0)).unwrap();
    assert_eq!(e.shear, vec![1, 0]);
    let hexagon = get_example("punctured-hexagon").unwrap().triangulations[0].triangulation.clone();
    let all = MultiLamination::new(
        hexagon
            .arc_ids()
            .iter()
            .map(|id| elementary_lamination(&hexagon, id).unwrap())
            .collect(),
    )
    .unwrap();
    let b = hexagon.signed_adjacency();
    let principal = ExtendedMatrix::principal(&b);
    assert_eq!(assemble_extended(&hexagon, &all).unwrap(), principal);
    assert_eq!(principal_seed(&b).ext(), &principal);
    assert_eq!(principal.rows_count(), 12);
    for k in 0..6 {
        let flipped = hexagon.flip_at(k).unwrap().triangulation;
        assert_eq!(assemble_extended(&flipped, &all).unwrap(), mutate_extended(&principal, k).unwrap());
    }
}

#[test]
fn principal_exchange_relation() {
    let hexagon = get_example("punctured-hexagon").unwrap().triangulations[0].triangulation.clone();
    let b = hexagon.signed_adjacency();
    let seed = principal_seed(&b);
    let names = SymbolNames::standard(6, 6);
    for k in 0..6 {
        let mut up = format!("q{}", k + 1);
        let mut down = String::from("1");
        for i in 0..6 {
            let e = b.get(i, k);
            if e > 0 {
                up.push_str(&format!("*x{}^{e}", i + 1));
            } else if e < 0 {
                down.push_str(&format!("*x{}^{}", i + 1, -e));
            }
        }
        let expected = parse_with(&format!("({up} + {down})/x{}", k + 1), &names).unwrap();
        assert_eq!(seed.exchange(k).unwrap(), expected);
    }
    let zero = principal_seed(&ExchangeMatrix::zero(2));
    assert_eq!(enumerate_exchange_graph(&zero, 100).unwrap().vertex_count(), 4);
}

#[test]
fn universal_laminations() {
    let t = digon();
    let u = universal_multilamination(&t, 100).unwrap();
    let mut vectors: Vec<Vec<i64>> = u.laminations.iter().map(|l| l.shear.clone()).collect();
    vectors.sort();
    assert_eq!(vectors, vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]);
    let a3 = a_n_polygon(3).unwrap().triangulations[0].triangulation.clone();
    assert_eq!(universal_multilamination(&a3, 100).unwrap().laminations.len(), 9);
    let d4 = d_n_punctured_polygon(4).unwrap().triangulations[0].triangulation.clone();
    assert_eq!(universal_multilamination(&d4, 100).unwrap().laminations.len(), 16);
    let sphere = get_example("four-punctured-sphere").unwrap().triangulations[0].triangulation.clone();
    assert!(universal_multilamination(&sphere, 50).is_err());
}

/// Checks that transport along any flip path of length at most `depth`
/// depends only on where the path ends. Searching breadth first, each
/// arrival is compared with the first arrival at that triangulation; once
/// they agree, every continuation of the later path is covered by the
/// continuations of the earlier one, so only first arrivals are expanded.
fn check_path_independence(l: &Lamination, depth: usize) -> usize {
    let mut first: HashMap<Encoding, Lamination> = HashMap::new();
    let mut queue = VecDeque::from([(0usize, l.clone())]);
    let mut checked = 0;
    while let Some((len, here)) = queue.pop_front() {
        let key = here.reference.key_encoding();
        if let Some(canonical) = first.get(&key) {
            let v = shear_coords(&here, &canonical.reference, &[]).unwrap();
            assert_eq!(v, canonical.shear, "after {len} flips");
            checked += 1;
            continue;
        }
        first.insert(key, here.clone());
        if len < depth {
            for k in 0..here.reference.arc_count() {
                let next = here.reference.flip_at(k).unwrap().triangulation;
                let shear = shear_coords(&here, &next, &[PathStep::Flip(k)]).unwrap();
                queue.push_back((len + 1, Lamination { reference: next, name: None, shear }));
            }
        }
    }
    checked
}

#[test]
fn transport_is_path_independent() {
    let t = digon();
    for v in [[-1, 0], [0, 1], [2, -3]] {
        assert!(check_path_independence(&at(&t, &v), 8) > 0);
    }
    let a3 = a_n_polygon(3).unwrap().triangulations[0].triangulation.clone();
    for v in [[1, 0, 0], [-2, 1, 3], [0, -1, 1]] {
        assert!(check_path_independence(&at(&a3, &v), 8) > 0);
    }
    let hexagon = get_example("punctured-hexagon").unwrap();
    let l = hexagon.multilaminations[0].laminations[0].clone();
    assert!(check_path_independence(&l, 8) > 0);
}
