use scab_core::catalog::{a_n_polygon, d_n_punctured_polygon, get_example, BUNDLE_NAMES};
use scab_core::exchange::{mutate_extended, mutate_matrix, ExchangeMatrix};
use scab_core::lamination::assemble_extended;
use scab_core::surface::{
    flip_graph, validate_surface, FlipKind, MarkedSurface, Side, TaggedTriangulation, Triangle,
};
use scab_core::Error;

fn bounded_entries(b: &ExchangeMatrix) -> bool {
    b.is_skew_symmetric() && b.rows().iter().flatten().all(|v| v.abs() <= 2)
}

#[test]
fn arc_counts_and_exclusions() {
    let torus = MarkedSurface::new(1, vec![3], 2).unwrap();
    assert_eq!(validate_surface(&torus).unwrap(), 12);
    assert_eq!(validate_surface(&MarkedSurface::disk(2, 1).unwrap()).unwrap(), 2);
    for bad in [
        MarkedSurface { genus: 0, boundary: vec![3], punctures: 0 },
        MarkedSurface { genus: 0, boundary: vec![2], punctures: 0 },
        MarkedSurface { genus: 0, boundary: vec![1], punctures: 1 },
        MarkedSurface { genus: 0, boundary: vec![], punctures: 3 },
        MarkedSurface { genus: 0, boundary: vec![0], punctures: 2 },
    ] {
        assert!(matches!(validate_surface(&bad), Err(Error::ExcludedSurface(_))), "{bad:?}");
    }
}

#[test]
fn square_boundary_rows_alternate() {
    // Square 0,1,2,3 with the diagonal 0-2 at position 0.
    let s = MarkedSurface::disk(4, 0).unwrap();
    let triangles = vec![
        Triangle::new([0, 1, 2], [Side::Boundary(0), Side::Boundary(1), Side::Arc(0)]),
        Triangle::new([0, 2, 3], [Side::Arc(0), Side::Boundary(2), Side::Boundary(3)]),
    ];
    let t = TaggedTriangulation::new(s, triangles, [], None).unwrap();
    let ext = t.boundary_extended_matrix();
    assert_eq!(ext.coefficient_rows(), 4);
    let col: Vec<i64> = ext.bottom_rows().iter().map(|r| r[0]).collect();
    assert!(col.iter().all(|v| v.abs() == 1), "{col:?}");
    for i in 0..4 {
        assert_eq!(col[i], -col[(i + 1) % 4], "{col:?}");
    }
    let flipped = t.flip_at(0).unwrap().triangulation;
    assert_eq!(flipped.boundary_extended_matrix(), mutate_extended(&ext, 0).unwrap());
}

#[test]
fn closed_surface_has_no_boundary_rows() {
    let t = get_example("four-punctured-sphere").unwrap().triangulations[0].triangulation.clone();
    assert_eq!(t.boundary_extended_matrix().coefficient_rows(), 0);
}

#[test]
fn catalog_flips_commute_with_mutation() {
    for name in BUNDLE_NAMES {
        let bundle = get_example(name).unwrap();
        for nt in &bundle.triangulations {
            let t = &nt.triangulation;
            let b = t.signed_adjacency();
            assert!(bounded_entries(&b), "{name}");
            for k in 0..t.arc_count() {
                let flipped = t.flip_at(k).unwrap();
                assert_eq!(flipped.position, k);
                assert_eq!(flipped.triangulation.signed_adjacency(), mutate_matrix(&b, k).unwrap(), "{name} at {k}");
                assert_eq!(
                    flipped.triangulation.boundary_extended_matrix(),
                    mutate_extended(&t.boundary_extended_matrix(), k).unwrap(),
                    "{name} at {k}"
                );
                for ml in &bundle.multilaminations {
                    let here = assemble_extended(t, ml).unwrap();
                    let there = assemble_extended(&flipped.triangulation, ml).unwrap();
                    assert_eq!(there, mutate_extended(&here, k).unwrap(), "{name} at {k}");
                }
                let back = flipped.triangulation.flip_at(k).unwrap().triangulation;
                assert_eq!(back.key_encoding(), t.key_encoding(), "{name} at {k}");
            }
        }
    }
}

#[test]
fn flip_graphs_are_regular_and_compatible() {
    for (t, vertices, arcs) in [
        (get_example("punctured-digon").unwrap().triangulations[0].triangulation.clone(), 4, 4),
        (a_n_polygon(3).unwrap().triangulations[0].triangulation.clone(), 14, 9),
        (d_n_punctured_polygon(4).unwrap().triangulations[0].triangulation.clone(), 50, 16),
    ] {
        let g = flip_graph(&t, 1000).unwrap();
        assert!(!g.truncated);
        assert!(g.is_regular());
        assert_eq!(g.vertex_count(), vertices);
        assert_eq!(g.arcs().len(), arcs);
        for (v, tri) in g.vertices.iter().enumerate() {
            let b = tri.signed_adjacency();
            assert!(bounded_entries(&b));
            for (k, nb) in g.neighbors[v].iter().enumerate() {
                let nb = nb.as_ref().unwrap();
                let there = g.vertices[nb.vertex].signed_adjacency();
                assert_eq!(mutate_matrix(&b, k).unwrap().permuted(&nb.perm), there);
            }
        }
    }
}

#[test]
fn digon_flip_is_type_d_and_notches_the_puncture() {
    let t = get_example("punctured-digon").unwrap().triangulations[0].triangulation.clone();
    let p = t.surface().punctures().next().unwrap();
    let r = t.flip_at(0).unwrap();
    assert_eq!(r.kind, FlipKind::D);
    let new_arc = r.triangulation.tagged_arc(0);
    let at_p = new_arc.ends.iter().position(|&e| e == p).unwrap();
    assert!(new_arc.notched[at_p], "{new_arc}");
    let other = r.triangulation.tagged_arc(1);
    assert!(!other.notched.iter().any(|&n| n));
}

#[test]
fn sphere_flip_at_theta_is_type_q() {
    let t = get_example("four-punctured-sphere").unwrap().triangulations[0].triangulation.clone();
    let r = t.flip_at(5).unwrap();
    assert_eq!(r.kind, FlipKind::Q);
    assert_eq!(r.triangulation.flip_at(5).unwrap().triangulation.key_encoding(), t.key_encoding());
}

#[test]
fn change_tags_is_an_involution_commuting_with_distant_flips() {
    let digon = get_example("punctured-digon").unwrap().triangulations[0].triangulation.clone();
    let hexagon = get_example("punctured-hexagon").unwrap().triangulations[0].triangulation.clone();
    let d4 = d_n_punctured_polygon(4).unwrap().triangulations[0].triangulation.clone();
    for t in [digon.clone(), hexagon, d4] {
        for p in t.surface().punctures() {
            let once = t.change_tags(p).unwrap();
            assert!(once.notched().contains(&p));
            assert_eq!(once.change_tags(p).unwrap(), t);
            assert_eq!(once.signed_adjacency(), t.signed_adjacency());
            for k in (0..t.arc_count()).filter(|&k| !t.is_incident(k, p)) {
                let a = t.flip_at(k).unwrap().triangulation.change_tags(p).unwrap();
                let b = once.flip_at(k).unwrap().triangulation;
                assert_eq!(a.key_encoding(), b.key_encoding());
            }
        }
    }
    // Flipping both arcs of the digon reaches the same triangulation as changing tags.
    let p = digon.surface().punctures().next().unwrap();
    let both = digon.flip_at(0).unwrap().triangulation.flip_at(1).unwrap().triangulation;
    let arcs = |t: &TaggedTriangulation| {
        let mut v: Vec<_> = (0..t.arc_count()).map(|k| t.tagged_arc(k)).collect();
        v.sort();
        v
    };
    assert_eq!(arcs(&both), arcs(&digon.change_tags(p).unwrap()));
}

#[test]
fn json_round_trip_preserves_triangulations() {
    for name in BUNDLE_NAMES {
        for nt in get_example(name).unwrap().triangulations {
            let back = TaggedTriangulation::from_json(&nt.triangulation.to_json()).unwrap();
            assert_eq!(back, nt.triangulation, "{name}");
        }
    }
}
