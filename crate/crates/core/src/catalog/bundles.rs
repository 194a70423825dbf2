//! Constructors for the individual bundles.

use super::{ExampleBundle, Expectation, Expected, NamedTriangulation, Provenance};
use crate::exchange::{ExchangeMatrix, ExtendedMatrix, GeometricSeed, SymbolNames};
use crate::lamination::{assemble_extended, lamination_from_shear, MultiLamination};
use crate::surface::{MarkedSurface, Side, TaggedTriangulation, Triangle};
use crate::{Error, Result};

use Provenance::{Computed, Elementary, Literature};

fn arc(i: usize) -> Side {
    Side::Arc(i)
}

fn seg(i: usize) -> Side {
    Side::Boundary(i)
}

fn expect(name: &str, anchor: &str, provenance: Provenance, expected: Expected) -> Expectation {
    Expectation {
        name: name.into(),
        anchor: anchor.into(),
        provenance,
        expected,
    }
}

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn names(x: &[&str], q: &[&str]) -> SymbolNames {
    SymbolNames { x: strings(x), q: strings(q) }
}

fn named(name: &str, triangulation: TaggedTriangulation) -> NamedTriangulation {
    NamedTriangulation {
        name: name.into(),
        triangulation,
    }
}

fn multilamination(t: &TaggedTriangulation, rows: &[Vec<i64>], labels: &[String]) -> Result<MultiLamination> {
    let laminations = rows
        .iter()
        .zip(labels)
        .map(|(r, name)| {
            let mut l = lamination_from_shear(t, r.clone())?;
            l.name = Some(name.clone());
            Ok(l)
        })
        .collect::<Result<Vec<_>>>()?;
    MultiLamination::new(laminations)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn counts(seeds: Option<usize>, variables: Option<usize>, edges: Option<usize>) -> Expected {
    Expected::Counts { seeds, variables, edges }
}

fn exchange(direction: usize, value: &str) -> Expected {
    Expected::Exchange {
        sequence: Vec::new(),
        direction,
        value: value.into(),
    }
}

pub(super) fn sl2() -> Result<ExampleBundle> {
    let ext = ExtendedMatrix::new(vec![vec![0], vec![1], vec![1]])?;
    Ok(ExampleBundle {
        name: "sl2".into(),
        description: "Coordinate ring of SL2: rank 1, coefficients z12 and z21".into(),
        surface: None,
        triangulations: Vec::new(),
        multilaminations: Vec::new(),
        seed: GeometricSeed::initial(ext).with_labels(strings(&["z11"]))?,
        names: names(&["z11"], &["z12", "z21"]),
        expectations: vec![
            expect(
                "sole exchange relation",
                "SL2 example, z11 z22 = z12 z21 + 1",
                Literature,
                exchange(0, "(z12*z21 + 1)/z11"),
            ),
            expect(
                "extended matrix at the first seed",
                "SL2 example, B(t1)",
                Literature,
                Expected::Mutation {
                    sequence: vec![],
                    rows: vec![vec![0], vec![1], vec![1]],
                },
            ),
            expect(
                "extended matrix at the second seed",
                "SL2 example, B(t2)",
                Literature,
                Expected::Mutation {
                    sequence: vec![0],
                    rows: vec![vec![0], vec![-1], vec![-1]],
                },
            ),
            expect(
                "two clusters",
                "SL2 example, clusters {z11} and {z22}",
                Literature,
                counts(Some(2), Some(2), Some(1)),
            ),
        ],
        notes: Vec::new(),
    })
}

/// The star triangulation of a disk with `n` boundary points around one
/// puncture `P = n`: triangles `[i, i+1, P]`, arc `i` joining `P` to `i`.
fn star(n: usize, labels: Option<Vec<String>>) -> Result<TaggedTriangulation> {
    let surface = MarkedSurface::disk(n as u32, 1)?;
    let p = n as u32;
    let triangles = (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            Triangle::new([i as u32, j as u32, p], [seg(i), arc(j), arc(i)])
        })
        .collect();
    TaggedTriangulation::new(surface, triangles, [], labels)
}

/// The star with arc `i` stored at position `perm[i]`.
fn relabelled_star(n: usize, perm: &[usize], labels: Vec<String>) -> Result<TaggedTriangulation> {
    let t = star(n, None)?;
    let triangles = t
        .triangles()
        .iter()
        .map(|tri| {
            Triangle::new(
                tri.corners,
                tri.sides.map(|s| match s {
                    Side::Arc(i) => Side::Arc(perm[i]),
                    b => b,
                }),
            )
        })
        .collect();
    TaggedTriangulation::new(t.surface().clone(), triangles, [], Some(labels))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for at in 0..n {
            let mut q = p.clone();
            q.insert(at, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// A position map under which the star's signed adjacency becomes `target`.
fn star_matching(n: usize, target: &ExchangeMatrix) -> Result<Vec<usize>> {
    let b = star(n, None)?.signed_adjacency();
    permutations(n)
        .into_iter()
        .find(|p| &b.permuted(p) == target)
        .ok_or_else(|| Error::Inconsistent(format!("no relabelling of the {n}-star has the required matrix")))
}

pub(super) fn punctured_digon() -> Result<ExampleBundle> {
    let t = star(2, Some(strings(&["ap", "bp"])))?;
    let l1_only = multilamination(&t, &[vec![-1, 0]], &strings(&["L1"]))?;
    let l1_l3 = multilamination(&t, &[vec![-1, 0], vec![0, 1]], &strings(&["L1", "L3"]))?;
    let seed = GeometricSeed::initial(t.boundary_extended_matrix()).with_labels(strings(&["ap", "bp"]))?;
    let anchor = "punctured digon example, shear coordinates of L1 and L3 at T, T1, T2, T12";
    // Rows of the printed table: (path, coordinates of L1, coordinates of L3).
    let table: [(&str, &str, [i64; 2], [i64; 2]); 4] = [
        ("T", "", [-1, 0], [0, 1]),
        ("T1", "f0", [1, 0], [0, 1]),
        ("T2", "f1", [-1, 0], [0, -1]),
        ("T12", "f0,f1", [1, 0], [0, -1]),
    ];
    let mut expectations = vec![
        expect(
            "B is zero",
            "the contributions of the two triangles cancel",
            Elementary,
            Expected::SignedAdjacency {
                triangulation: 0,
                path: String::new(),
                rows: vec![vec![0, 0], vec![0, 0]],
            },
        ),
        expect(
            "extended matrix at T",
            "punctured digon example continued, B(T, L)",
            Literature,
            Expected::Extended {
                triangulation: 0,
                multilamination: 0,
                path: String::new(),
                rows: vec![vec![0, 0], vec![0, 0], vec![-1, 0]],
            },
        ),
        expect(
            "extended matrix at T1",
            "punctured digon example continued, B(T1, L)",
            Literature,
            Expected::Extended {
                triangulation: 0,
                multilamination: 0,
                path: "f0".into(),
                rows: vec![vec![0, 0], vec![0, 0], vec![1, 0]],
            },
        ),
    ];
    for (label, path, l1, l3) in table {
        for (j, (lam, v)) in [("L1", l1), ("L3", l3)].into_iter().enumerate() {
            expectations.push(expect(
                &format!("shear coordinates of {lam} at {label}"),
                anchor,
                Literature,
                Expected::Shear {
                    multilamination: 1,
                    lamination: j,
                    path: path.into(),
                    coordinates: v.to_vec(),
                },
            ));
        }
    }
    expectations.extend([
        expect(
            "four seeds in a 4-cycle, four cluster variables",
            "four clusters correspond to the four tagged triangulations",
            Literature,
            counts(Some(4), Some(4), Some(4)),
        ),
        expect(
            "four tagged triangulations",
            "four tagged triangulations of the punctured digon",
            Literature,
            Expected::FlipCounts {
                triangulation: 0,
                triangulations: 4,
                arcs: 4,
            },
        ),
        expect(
            "digon relation at ap",
            "digon relation, lambda(gamma') lambda(theta) = lambda(alpha) + lambda(beta)",
            Literature,
            exchange(0, "(ab + ba)/ap"),
        ),
        expect(
            "digon relation at bp",
            "digon relation, lambda(gamma') lambda(theta) = lambda(alpha) + lambda(beta)",
            Literature,
            exchange(1, "(ab + ba)/bp"),
        ),
    ]);
    Ok(ExampleBundle {
        name: "punctured-digon".into(),
        description: "Once-punctured digon with arcs from both boundary points to the puncture".into(),
        surface: Some(t.surface().clone()),
        triangulations: vec![named("T", t)],
        multilaminations: vec![l1_only, l1_l3],
        seed,
        names: names(&["ap", "bp"], &["ab", "ba"]),
        expectations,
        notes: vec![
            "Boundary points a = 0, b = 1, puncture p = 2; segment ab runs from a to b.".into(),
            "T1 flips position 0, T2 flips position 1; positions keep their role across flips.".into(),
        ],
    })
}

pub(super) fn punctured_hexagon() -> Result<ExampleBundle> {
    let surface = MarkedSurface::disk(6, 1)?;
    // Boundary points 0..5 counterclockwise starting at the south-east corner,
    // puncture 6 in the middle.
    let triangles = vec![
        Triangle::new([6, 0, 1], [arc(1), seg(0), arc(0)]),
        Triangle::new([6, 5, 0], [arc(2), seg(5), arc(1)]),
        Triangle::new([6, 4, 5], [arc(3), seg(4), arc(2)]),
        Triangle::new([6, 3, 4], [arc(4), seg(3), arc(3)]),
        Triangle::new([6, 1, 3], [arc(0), arc(5), arc(4)]),
        Triangle::new([1, 2, 3], [seg(1), seg(2), arc(5)]),
    ];
    let labels = strings(&["P-E", "P-SE", "P-SW", "P-W", "P-NW", "NW-E"]);
    let t = TaggedTriangulation::new(surface.clone(), triangles, [], Some(labels.clone()))?;
    let ml = multilamination(&t, &[vec![2, 0, -2, -2, 1, -3]], &strings(&["L"]))?;
    let ext = assemble_extended(&t, &ml)?;
    let b = vec![
        vec![0, -1, 0, 0, 1, -1],
        vec![1, 0, -1, 0, 0, 0],
        vec![0, 1, 0, -1, 0, 0],
        vec![0, 0, 1, 0, -1, 0],
        vec![-1, 0, 0, 1, 0, 1],
        vec![1, 0, 0, 0, -1, 0],
    ];
    let mut bt = b.clone();
    bt.push(vec![2, 0, -2, -2, 1, -3]);
    Ok(ExampleBundle {
        name: "punctured-hexagon".into(),
        description: "Once-punctured hexagon with one lamination".into(),
        surface: Some(surface),
        triangulations: vec![named("T", t)],
        multilaminations: vec![ml],
        seed: GeometricSeed::initial(ext).with_labels(labels.clone())?,
        names: SymbolNames {
            x: labels.iter().map(|l| l.replace('-', "_")).collect(),
            q: strings(&["L"]),
        },
        expectations: vec![
            expect(
                "signed adjacency",
                "signed adjacency matrix for a triangulation of a once-punctured hexagon",
                Literature,
                Expected::SignedAdjacency {
                    triangulation: 0,
                    path: String::new(),
                    rows: b,
                },
            ),
            expect(
                "extended matrix with the lamination row",
                "the matrix B(T, L) for the once-punctured hexagon example",
                Literature,
                Expected::Extended {
                    triangulation: 0,
                    multilamination: 0,
                    path: String::new(),
                    rows: bt,
                },
            ),
            expect(
                "type D6 sizes",
                "D_n counts: n^2 cluster variables, (3n-2)/n binom(2n-2, n-1) seeds",
                Computed,
                counts(Some(672), Some(36), Some(672 * 3)),
            ),
        ],
        notes: vec!["Arc P-E is at position 0; the lamination is stored as its shear vector.".into()],
    })
}

pub(super) fn four_punctured_sphere() -> Result<ExampleBundle> {
    let surface = MarkedSurface::new(0, vec![], 4)?;
    let (a, b, c, d) = (0, 1, 2, 3);
    // Two self-folded triangles (around C at A and around D at B) glued to
    // the two triangles between A and B.
    let triangles = vec![
        Triangle::new([a, a, c], [arc(1), arc(0), arc(0)]),
        Triangle::new([b, b, d], [arc(3), arc(2), arc(2)]),
        Triangle::new([a, a, b], [arc(1), arc(4), arc(5)]),
        Triangle::new([b, b, a], [arc(3), arc(4), arc(5)]),
    ];
    let labels = strings(&["alpha1", "alpha2", "gamma1", "gamma2", "beta", "theta"]);
    let t = TaggedTriangulation::new(surface.clone(), triangles, [], Some(labels.clone()))?;
    let ext = ExtendedMatrix::from_parts(&t.signed_adjacency(), &[])?;
    Ok(ExampleBundle {
        name: "four-punctured-sphere".into(),
        description: "Sphere with four punctures A, B, C, D; self-folded triangles around C and D".into(),
        surface: Some(surface),
        triangulations: vec![named("T", t)],
        multilaminations: Vec::new(),
        seed: GeometricSeed::initial(ext).with_labels(labels.clone())?,
        names: SymbolNames { x: labels, q: Vec::new() },
        expectations: vec![expect(
            "tagged Ptolemy relation at theta",
            "Ptolemy relation for a tagged flip in a 4-punctured sphere",
            Literature,
            exchange(5, "(alpha1*alpha2*gamma1*gamma2 + beta^2)/theta"),
        )],
        notes: vec![
            "alpha1/alpha2 are the radius A-C and the loop at A around C; the loop stands for the notched arc A-C.".into(),
            "gamma1/gamma2 are the same pair at B around D.".into(),
        ],
    })
}

/// The fan triangulation of an `(n+3)`-gon at vertex 0 with boundary coefficients.
fn fan(n: usize) -> Result<TaggedTriangulation> {
    if n == 0 {
        return Err(Error::Domain("the polygon family starts at n = 1".into()));
    }
    let m = n + 3;
    let surface = MarkedSurface::disk(m as u32, 0)?;
    let triangles = (1..m - 1)
        .map(|j| {
            let first = if j == 1 { seg(0) } else { arc(j - 2) };
            let last = if j + 1 == m - 1 { seg(m - 1) } else { arc(j - 1) };
            Triangle::new([0, j as u32, (j + 1) as u32], [first, seg(j), last])
        })
        .collect();
    let labels = (2..m - 1).map(|j| format!("0-{j}")).collect();
    TaggedTriangulation::new(surface, triangles, [], Some(labels))
}

fn catalan(n: usize) -> usize {
    binomial(2 * n, n) / (n + 1)
}

pub fn a_n_polygon(n: usize) -> Result<ExampleBundle> {
    let t = fan(n)?;
    let m = n + 3;
    let seeds = catalan(n + 1);
    let variables = n * (n + 3) / 2;
    let x: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let q: Vec<String> = (1..=m).map(|i| format!("b{i}")).collect();
    Ok(ExampleBundle {
        name: format!("a_n-polygon({n})"),
        description: format!("Unpunctured {m}-gon, fan triangulation, boundary coefficients"),
        surface: Some(t.surface().clone()),
        seed: GeometricSeed::initial(t.boundary_extended_matrix()).with_labels(t.root_labels().to_vec())?,
        triangulations: vec![named("fan", t)],
        multilaminations: Vec::new(),
        names: SymbolNames { x, q },
        expectations: vec![
            expect(
                "cluster variables are the diagonals",
                "n(n+3)/2 cluster variables for type A_n",
                Literature,
                counts(None, Some(variables), None),
            ),
            expect(
                "seeds are the triangulations",
                "Catalan number of triangulations of the polygon",
                Computed,
                counts(Some(seeds), None, Some(seeds * n / 2)),
            ),
            expect(
                "flip graph matches the exchange graph",
                "Catalan number of triangulations of the polygon",
                Computed,
                Expected::FlipCounts {
                    triangulation: 0,
                    triangulations: seeds,
                    arcs: variables,
                },
            ),
        ],
        notes: vec!["Coefficient b_i belongs to the boundary segment from point i-1 to point i.".into()],
    })
}

pub fn d_n_punctured_polygon(n: usize) -> Result<ExampleBundle> {
    if n < 2 {
        return Err(Error::Domain("the punctured polygon family starts at n = 2".into()));
    }
    let labels: Vec<String> = (0..n).map(|i| format!("P-{i}")).collect();
    let t = star(n, Some(labels.clone()))?;
    let seeds = (3 * n - 2) * binomial(2 * n - 2, n - 1) / n;
    Ok(ExampleBundle {
        name: format!("d_n-punctured-polygon({n})"),
        description: format!("Once-punctured {n}-gon, star triangulation, boundary coefficients"),
        surface: Some(t.surface().clone()),
        seed: GeometricSeed::initial(t.boundary_extended_matrix()).with_labels(labels)?,
        triangulations: vec![named("star", t)],
        multilaminations: Vec::new(),
        names: SymbolNames {
            x: (1..=n).map(|i| format!("x{i}")).collect(),
            q: (1..=n).map(|i| format!("b{i}")).collect(),
        },
        expectations: vec![
            expect(
                "n^2 cluster variables",
                "grand total of n^2 cluster variables for the once-punctured n-gon",
                Literature,
                counts(None, Some(n * n), None),
            ),
            expect(
                "number of seeds",
                "(3n-2)/n binom(2n-2, n-1) seeds of type D_n",
                Computed,
                counts(Some(seeds), None, Some(seeds * n / 2)),
            ),
            expect(
                "tagged flip graph matches the exchange graph",
                "tagged arcs correspond to cluster variables",
                Computed,
                Expected::FlipCounts {
                    triangulation: 0,
                    triangulations: seeds,
                    arcs: n * n,
                },
            ),
        ],
        notes: Vec::new(),
    })
}

pub(super) fn gr2_6() -> Result<ExampleBundle> {
    let mut bundle = a_n_polygon(3)?;
    bundle.name = "gr2-6".into();
    bundle.description = "Homogeneous coordinate ring of Gr(2,6) as the A3 pattern of a hexagon".into();
    // Vertex i of the hexagon is point i-1; diagonals of the fan at vertex 1.
    bundle.names = names(&["D13", "D14", "D15"], &["D12", "D23", "D34", "D45", "D56", "D16"]);
    let anchor = "Grassmann-Pluecker relation D_ik D_jl = D_ij D_kl + D_il D_jk";
    bundle.expectations.extend([
        expect("Pluecker relation for 1234", anchor, Literature, exchange(0, "(D12*D34 + D14*D23)/D13")),
        expect("Pluecker relation for 1345", anchor, Literature, exchange(1, "(D13*D45 + D15*D34)/D14")),
        expect("Pluecker relation for 1456", anchor, Literature, exchange(2, "(D14*D56 + D16*D45)/D15")),
    ]);
    bundle.notes = vec![
        "Hexagon vertex i is marked point i-1; D_ij is the arc or segment between them.".into(),
        "The coefficient rows are the boundary laminations, one per side.".into(),
    ];
    Ok(bundle)
}

fn gr36_rows() -> Vec<Vec<i64>> {
    vec![
        vec![0, -1, 0, 1],
        vec![1, 0, -1, 0],
        vec![0, 1, 0, -1],
        vec![-1, 0, 1, 0],
        vec![0, 0, -1, 1],
        vec![0, 0, 0, -1],
        vec![1, 0, 0, 0],
        vec![-1, 1, 0, 0],
        vec![0, -1, 0, 0],
        vec![0, 0, 1, 0],
    ]
}

const GR36_X: [&str; 4] = ["D245", "D256", "D125", "D235"];
const GR36_Q: [&str; 6] = ["D123", "D234", "D345", "D456", "D156", "D126"];

fn d4_expectations() -> Vec<Expectation> {
    vec![
        expect(
            "16 cluster variables",
            "A has 16 cluster variables",
            Literature,
            counts(None, Some(16), None),
        ),
        expect(
            "50 seeds",
            "(3n-2)/n binom(2n-2, n-1) seeds of type D_4",
            Computed,
            counts(Some(50), None, Some(100)),
        ),
    ]
}

pub(super) fn gr3_6() -> Result<ExampleBundle> {
    let rows = gr36_rows();
    let ext = ExtendedMatrix::new(rows.clone())?;
    let perm = star_matching(4, &ext.principal_part())?;
    let t = relabelled_star(4, &perm, strings(&GR36_X))?;
    let ml = multilamination(&t, &ext.bottom_rows(), &strings(&GR36_Q))?;
    let anchor = "exchange relations from the initial seed of Gr(3,6)";
    let mut expectations = vec![
        expect("relation at D245", anchor, Literature, exchange(0, "(D345*D256 + D456*D235)/D245")),
        expect("relation at D256", anchor, Literature, exchange(1, "(D456*D125 + D156*D245)/D256")),
        expect("relation at D125", anchor, Literature, exchange(2, "(D126*D235 + D123*D256)/D125")),
        expect("relation at D235", anchor, Literature, exchange(3, "(D123*D245 + D234*D125)/D235")),
        expect(
            "printed 10x4 matrix",
            "extended exchange matrix of Gr(3,6) with rows labelled by Pluecker coordinates",
            Literature,
            Expected::Mutation { sequence: vec![], rows },
        ),
        expect(
            "star triangulation realizes the principal part",
            "triangulation representing the initial cluster of Gr(3,6)",
            Literature,
            Expected::SignedAdjacency {
                triangulation: 0,
                path: String::new(),
                rows: ext.principal_part().rows(),
            },
        ),
        expect(
            "multi-lamination gives the coefficient rows",
            "six single-curve laminations on a once-punctured quadrilateral",
            Elementary,
            Expected::SeedFromLamination {
                triangulation: 0,
                multilamination: 0,
            },
        ),
    ];
    expectations.extend(d4_expectations());
    Ok(ExampleBundle {
        name: "gr3-6".into(),
        description: "Homogeneous coordinate ring of Gr(3,6), cluster type D4".into(),
        surface: Some(t.surface().clone()),
        triangulations: vec![named("star", t)],
        multilaminations: vec![ml],
        seed: GeometricSeed::initial(ext).with_labels(strings(&GR36_X))?,
        names: names(&GR36_X, &GR36_Q),
        expectations,
        notes: vec![format!(
            "Arc from the puncture to quadrilateral corner i sits at position {perm:?}[i]."
        )],
    })
}

fn specialization(name: &str, description: &str, dropped: &[usize], anchor: &str) -> Result<ExampleBundle> {
    let keep: Vec<usize> = (0..GR36_Q.len()).filter(|i| !dropped.contains(i)).collect();
    let ext = ExtendedMatrix::new(gr36_rows())?.select_coefficient_rows(&keep)?;
    let q: Vec<&str> = keep.iter().map(|&i| GR36_Q[i]).collect();
    let mut expectations = vec![expect(
        "coefficient specialization of Gr(3,6)",
        anchor,
        Literature,
        Expected::Specializes {
            parent: "gr3-6".into(),
            dropped: dropped.to_vec(),
        },
    )];
    expectations.extend(d4_expectations());
    Ok(ExampleBundle {
        name: name.into(),
        description: description.into(),
        surface: None,
        triangulations: Vec::new(),
        multilaminations: Vec::new(),
        seed: GeometricSeed::initial(ext).with_labels(strings(&GR36_X))?,
        names: names(&GR36_X, &q),
        expectations,
        notes: vec!["Cluster variables keep their Pluecker names; the minors of z are their images.".into()],
    })
}

pub(super) fn mat33() -> Result<ExampleBundle> {
    specialization(
        "mat33",
        "Polynomial ring of 3x3 matrices, D4 with five coefficients",
        &[3],
        "Mat3x3 example, the sole exception being phi(D456) = 1",
    )
}

pub(super) fn sl3() -> Result<ExampleBundle> {
    specialization(
        "sl3",
        "Coordinate ring of SL3, D4 with four coefficients",
        &[0, 3],
        "SL3 example, both D123 and D456 sent to 1",
    )
}

const SL4N_X: [&str; 3] = ["D2", "D3", "D23"];
const SL4N_Q: [&str; 6] = ["D1", "D12", "D123", "D4", "D34", "D234"];

fn sl4n_rows() -> Vec<Vec<i64>> {
    vec![
        vec![-1, 0, 0],
        vec![1, 0, -1],
        vec![0, 0, 1],
        vec![0, 1, 0],
        vec![0, -1, 1],
        vec![0, 0, -1],
    ]
}

fn sl4n_b() -> Result<ExchangeMatrix> {
    ExchangeMatrix::new(vec![vec![0, -1, 1], vec![1, 0, -1], vec![-1, 1, 0]])
}

pub(super) fn sl4n() -> Result<ExampleBundle> {
    let surface = MarkedSurface::disk(6, 0)?;
    // Arcs: position 0 joins 5 and 3, position 1 joins 5 and 1, position 2 joins 1 and 3.
    let triangles = vec![
        Triangle::new([5, 0, 1], [seg(5), seg(0), arc(1)]),
        Triangle::new([5, 1, 3], [arc(1), arc(2), arc(0)]),
        Triangle::new([1, 2, 3], [seg(1), seg(2), arc(2)]),
        Triangle::new([3, 4, 5], [seg(3), seg(4), arc(0)]),
    ];
    let t = TaggedTriangulation::new(surface.clone(), triangles, [], Some(strings(&SL4N_X)))?;
    let ml = multilamination(&t, &sl4n_rows(), &strings(&SL4N_Q))?;
    let ext = assemble_extended(&t, &ml)?;
    let anchor = "SL4/N example, exchange relations from the initial seed";
    Ok(ExampleBundle {
        name: "sl4n".into(),
        description: "Affine base space SL4/N, cluster type A3, on a hexagon".into(),
        surface: Some(surface),
        triangulations: vec![named("T", t)],
        multilaminations: vec![ml],
        seed: GeometricSeed::initial(ext).with_labels(strings(&SL4N_X))?,
        names: names(&SL4N_X, &SL4N_Q),
        expectations: vec![
            expect("relation at D2", anchor, Literature, exchange(0, "(D12*D3 + D1*D23)/D2")),
            expect("relation at D3", anchor, Literature, exchange(1, "(D4*D23 + D34*D2)/D3")),
            expect(
                "relation at D23",
                anchor,
                Literature,
                exchange(2, "(D123*D34*D2 + D12*D234*D3)/D23"),
            ),
            expect(
                "signed adjacency of the hexagon triangulation",
                "forced by the three printed exchange relations",
                Computed,
                Expected::SignedAdjacency {
                    triangulation: 0,
                    path: String::new(),
                    rows: sl4n_b()?.rows(),
                },
            ),
            expect(
                "6 coefficients and 9 cluster variables",
                "SL4/N example, 6 coefficient variables and 9 cluster variables",
                Literature,
                counts(None, Some(9), None),
            ),
            expect(
                "14 seeds",
                "Catalan number of triangulations of the hexagon",
                Computed,
                counts(Some(14), None, Some(21)),
            ),
            expect(
                "same algebra on a once-punctured triangle",
                "two different topological realizations",
                Literature,
                Expected::SameAlgebra {
                    other: "sl4n-punctured-triangle".into(),
                },
            ),
        ],
        notes: vec![
            "The hexagon is labelled 0..5 counterclockwise with diagonals 5-3, 5-1 and 1-3.".into(),
            "Lamination shear vectors are fixed by requiring the three printed exchange relations; \
             each row is the unique vector giving the coefficient pattern of its minor."
                .into(),
        ],
    })
}

pub(super) fn sl4n_punctured_triangle() -> Result<ExampleBundle> {
    let b = sl4n_b()?;
    let perm = star_matching(3, &b)?;
    let t = relabelled_star(3, &perm, strings(&SL4N_X))?;
    let ml = multilamination(&t, &sl4n_rows(), &strings(&SL4N_Q))?;
    let ext = assemble_extended(&t, &ml)?;
    Ok(ExampleBundle {
        name: "sl4n-punctured-triangle".into(),
        description: "SL4/N realized on a once-punctured triangle (type D3 = A3)".into(),
        surface: Some(t.surface().clone()),
        triangulations: vec![named("star", t)],
        multilaminations: vec![ml],
        seed: GeometricSeed::initial(ext).with_labels(strings(&SL4N_X))?,
        names: names(&SL4N_X, &SL4N_Q),
        expectations: vec![
            expect(
                "same algebra as the hexagon realization",
                "two different topological realizations",
                Literature,
                Expected::SameAlgebra { other: "sl4n".into() },
            ),
            expect(
                "9 tagged arcs",
                "n^2 cluster variables for D3",
                Literature,
                counts(Some(14), Some(9), Some(21)),
            ),
        ],
        notes: vec![format!("Arc from the puncture to corner i sits at position {perm:?}[i].")],
    })
}
