//! Replaying bundle expectations against live computation.

use std::fmt;

use serde::Serialize;
use serde_json::Value;

use super::{get_example, list, ExampleBundle, Expectation, Expected, Provenance};
use crate::exchange::expr::parse_with;
use crate::exchange::{enumerate_exchange_graph, ExtendedMatrix, RationalFunction};
use crate::lamination::{apply_path, assemble_extended, parse_path, shear_coords};
use crate::surface::flip_graph;
use crate::{Error, Result};

/// Enumeration bound used by the regressions.
const SEED_BOUND: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegressionEntry {
    pub bundle: String,
    pub check: String,
    pub anchor: String,
    pub provenance: Provenance,
    pub passed: bool,
    /// Empty on success; otherwise what differed.
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RegressionReport {
    pub entries: Vec<RegressionEntry>,
}

impl RegressionReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RegressionEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl fmt::Display for RegressionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let status = if e.passed { "PASS" } else { "FAIL" };
            write!(f, "{status} {}: {} [{}; {}]", e.bundle, e.check, e.provenance, e.anchor)?;
            if !e.passed {
                write!(f, " -- {}", e.detail)?;
            }
            writeln!(f)?;
        }
        let passed = self.entries.iter().filter(|e| e.passed).count();
        write!(f, "{passed}/{} checks passed", self.entries.len())
    }
}

/// Runs the expectations of one bundle, or of every listed bundle for `"all"`.
pub fn run_regressions(name: &str) -> RegressionReport {
    let names = if name == "all" { list() } else { vec![name.to_string()] };
    let mut report = RegressionReport::default();
    for n in names {
        match get_example(&n) {
            Ok(bundle) => report.entries.extend(run_bundle(&bundle)),
            Err(e) => report.entries.push(RegressionEntry {
                bundle: n,
                check: "construct bundle".into(),
                anchor: String::new(),
                provenance: Provenance::Elementary,
                passed: false,
                detail: e.to_string(),
            }),
        }
    }
    report
}

fn run_bundle(bundle: &ExampleBundle) -> Vec<RegressionEntry> {
    bundle
        .expectations
        .iter()
        .map(|e| {
            let outcome = check(bundle, e);
            let (passed, detail) = match outcome {
                Ok(None) => (true, String::new()),
                Ok(Some(d)) => (false, d),
                Err(err) => (false, format!("error: {err}")),
            };
            RegressionEntry {
                bundle: bundle.name.clone(),
                check: e.name.clone(),
                anchor: e.anchor.clone(),
                provenance: e.provenance,
                passed,
                detail,
            }
        })
        .collect()
}

fn compare<T: PartialEq + fmt::Debug>(got: T, want: T) -> Option<String> {
    (got != want).then(|| format!("expected {want:?}, got {got:?}"))
}

fn triangulation(bundle: &ExampleBundle, i: usize) -> Result<&crate::surface::TaggedTriangulation> {
    bundle
        .triangulations
        .get(i)
        .map(|t| &t.triangulation)
        .ok_or(Error::IndexOutOfRange {
            index: i,
            size: bundle.triangulations.len(),
        })
}

fn multilamination(bundle: &ExampleBundle, i: usize) -> Result<&crate::lamination::MultiLamination> {
    bundle.multilaminations.get(i).ok_or(Error::IndexOutOfRange {
        index: i,
        size: bundle.multilaminations.len(),
    })
}

/// `Ok(None)` on success, `Ok(Some(reason))` on a mismatch.
fn check(bundle: &ExampleBundle, e: &Expectation) -> Result<Option<String>> {
    Ok(match &e.expected {
        Expected::SignedAdjacency { triangulation: t, path, rows } => {
            let target = apply_path(triangulation(bundle, *t)?, &parse_path(path)?)?;
            compare(&target.signed_adjacency().rows(), rows)
        }
        Expected::Extended {
            triangulation: t,
            multilamination: m,
            path,
            rows,
        } => {
            let target = apply_path(triangulation(bundle, *t)?, &parse_path(path)?)?;
            compare(&assemble_extended(&target, multilamination(bundle, *m)?)?.rows(), rows)
        }
        Expected::Shear {
            multilamination: m,
            lamination,
            path,
            coordinates,
        } => {
            let ml = multilamination(bundle, *m)?;
            let l = ml.laminations.get(*lamination).ok_or(Error::IndexOutOfRange {
                index: *lamination,
                size: ml.laminations.len(),
            })?;
            let steps = parse_path(path)?;
            let target = apply_path(&l.reference, &steps)?;
            compare(&shear_coords(l, &target, &steps)?, coordinates)
        }
        Expected::Mutation { sequence, rows } => {
            compare(&bundle.seed.mutate_sequence(sequence)?.ext().rows(), rows)
        }
        Expected::Exchange {
            sequence,
            direction,
            value,
        } => {
            let s = bundle.seed.mutate_sequence(sequence)?;
            let got = s.exchange(*direction)?;
            let want = parse_with(value, &bundle.names)?;
            (got != want).then(|| format!("expected {value}, got {}", got.format_with(&bundle.names)))
        }
        Expected::Counts { seeds, variables, edges } => {
            let g = enumerate_exchange_graph(&bundle.seed, SEED_BOUND)?;
            if g.truncated {
                Some(format!("enumeration did not close within {SEED_BOUND} seeds"))
            } else {
                let mismatch = [
                    ("seeds", *seeds, g.vertex_count()),
                    ("variables", *variables, g.variables.len()),
                    ("edges", *edges, g.edges().len()),
                ]
                .into_iter()
                .filter_map(|(what, want, got)| want.filter(|w| *w != got).map(|w| format!("{what}: expected {w}, got {got}")))
                .collect::<Vec<_>>();
                (!mismatch.is_empty()).then(|| mismatch.join("; "))
            }
        }
        Expected::FlipCounts {
            triangulation: t,
            triangulations,
            arcs,
        } => {
            let g = flip_graph(triangulation(bundle, *t)?, SEED_BOUND)?;
            compare((g.truncated, g.vertex_count(), g.arcs().len()), (false, *triangulations, *arcs))
        }
        Expected::Specializes { parent, dropped } => specializes(bundle, &get_example(parent)?, dropped)?,
        Expected::SameAlgebra { other } => same_algebra(bundle, &get_example(other)?)?,
        Expected::SeedFromLamination {
            triangulation: t,
            multilamination: m,
        } => compare(
            &assemble_extended(triangulation(bundle, *t)?, multilamination(bundle, *m)?)?,
            bundle.seed.ext(),
        ),
    })
}

fn specializes(bundle: &ExampleBundle, parent: &ExampleBundle, dropped: &[usize]) -> Result<Option<String>> {
    let pext = parent.seed.ext();
    let keep: Vec<usize> = (0..pext.coefficient_rows()).filter(|i| !dropped.contains(i)).collect();
    if let Some(d) = compare(&pext.select_coefficient_rows(&keep)?, bundle.seed.ext()) {
        return Ok(Some(format!("matrix: {d}")));
    }
    let mut order = dropped.to_vec();
    order.sort_unstable_by(|a, b| b.cmp(a));
    for k in 0..bundle.seed.rank() {
        let mut f: RationalFunction = parent.seed.exchange(k)?;
        for &i in &order {
            f = f.specialize_coefficient(i).remove_coefficient_symbol(i)?;
        }
        if f != bundle.seed.exchange(k)? {
            return Ok(Some(format!("relation in direction {k} differs after specialization")));
        }
    }
    Ok(None)
}

/// Looks for a relabelling of positions taking one seed to the other.
fn same_algebra(bundle: &ExampleBundle, other: &ExampleBundle) -> Result<Option<String>> {
    let (a, b): (&ExtendedMatrix, &ExtendedMatrix) = (bundle.seed.ext(), other.seed.ext());
    if a.rank() != b.rank() || a.coefficient_rows() != b.coefficient_rows() {
        return Ok(Some("ranks or coefficient counts differ".into()));
    }
    let n = a.rank();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if &a.permuted(&perm) == b {
            return Ok(None);
        }
        if !next_permutation(&mut perm) {
            return Ok(Some("no relabelling of positions identifies the seeds".into()));
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("a larger element exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
