//! Named example bundles: surfaces, triangulations, laminations and seeds,
//! each with the values they are expected to reproduce.

mod bundles;
mod regress;

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::exchange::{GeometricSeed, SymbolNames};
use crate::lamination::MultiLamination;
use crate::surface::{MarkedSurface, TaggedTriangulation};
use crate::{Error, Result};

pub use bundles::{a_n_polygon, d_n_punctured_polygon};
pub use regress::{run_regressions, RegressionEntry, RegressionReport};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Printed in the literature the example is taken from.
    Literature,
    /// Immediate from the definitions.
    Elementary,
    /// Obtained by an independent computation.
    Computed,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Literature => "literature",
            Provenance::Elementary => "elementary",
            Provenance::Computed => "computed",
        })
    }
}

/// A value a bundle must reproduce. Paths use the `f0,t2` syntax of
/// [`crate::lamination::parse_path`].
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Expected {
    /// Signed adjacency matrix of a triangulation after a path.
    SignedAdjacency { triangulation: usize, path: String, rows: Vec<Vec<i64>> },
    /// Extended matrix of a triangulation (after a path) and a multi-lamination.
    Extended {
        triangulation: usize,
        multilamination: usize,
        path: String,
        rows: Vec<Vec<i64>>,
    },
    /// Shear coordinates of one lamination transported along a path.
    Shear {
        multilamination: usize,
        lamination: usize,
        path: String,
        coordinates: Vec<i64>,
    },
    /// Extended matrix of the bundle seed after a mutation sequence.
    Mutation { sequence: Vec<usize>, rows: Vec<Vec<i64>> },
    /// The variable produced by mutating the bundle seed at `direction`
    /// after `sequence`, written with the bundle's symbol names.
    Exchange { sequence: Vec<usize>, direction: usize, value: String },
    /// Exchange-graph sizes of the bundle seed.
    Counts { seeds: Option<usize>, variables: Option<usize>, edges: Option<usize> },
    /// Flip-graph sizes from a triangulation.
    FlipCounts { triangulation: usize, triangulations: usize, arcs: usize },
    /// The seed is `parent`'s with the listed coefficient rows removed, and
    /// every exchange relation is `parent`'s with those symbols set to 1.
    Specializes { parent: String, dropped: Vec<usize> },
    /// The seed equals `other`'s seed up to relabelling positions.
    SameAlgebra { other: String },
    /// The bundle seed equals the extended matrix of a triangulation and
    /// multi-lamination.
    SeedFromLamination { triangulation: usize, multilamination: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Expectation {
    pub name: String,
    /// Where in the source the value is printed or what it follows from.
    pub anchor: String,
    pub provenance: Provenance,
    #[serde(flatten)]
    pub expected: Expected,
}

#[derive(Clone, Debug)]
pub struct NamedTriangulation {
    pub name: String,
    pub triangulation: TaggedTriangulation,
}

#[derive(Clone, Debug)]
pub struct ExampleBundle {
    pub name: String,
    pub description: String,
    /// `None` for purely algebraic examples.
    pub surface: Option<MarkedSurface>,
    pub triangulations: Vec<NamedTriangulation>,
    pub multilaminations: Vec<MultiLamination>,
    pub seed: GeometricSeed,
    pub names: SymbolNames,
    pub expectations: Vec<Expectation>,
    pub notes: Vec<String>,
}

/// Fixed bundle names. The two families are listed with their default parameter.
/// `sl4n-punctured-triangle` is the second realization of `sl4n`.
pub const BUNDLE_NAMES: [&str; 12] = [
    "sl2",
    "punctured-digon",
    "punctured-hexagon",
    "four-punctured-sphere",
    "gr2-6",
    "gr3-6",
    "mat33",
    "sl3",
    "sl4n",
    "sl4n-punctured-triangle",
    "a_n-polygon(3)",
    "d_n-punctured-polygon(4)",
];

/// Names accepted by [`get_example`], in the order `catalog list` prints them.
pub fn list() -> Vec<String> {
    BUNDLE_NAMES.iter().map(|s| s.to_string()).collect()
}

fn family_parameter(name: &str, long: &str, short: &str) -> Option<Result<usize>> {
    let arg = name
        .strip_prefix(long)
        .and_then(|r| r.strip_prefix('('))
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| name.strip_prefix(short).filter(|r| !r.is_empty() && r.chars().all(|c| c.is_ascii_digit())))?;
    Some(arg.trim().parse().map_err(|_| Error::UnknownExample(name.to_string())))
}

/// Looks up a bundle by name. The families also accept `a3`, `d4`, and so on.
pub fn get_example(name: &str) -> Result<ExampleBundle> {
    if let Some(n) = family_parameter(name, "a_n-polygon", "a") {
        return a_n_polygon(n?);
    }
    if let Some(n) = family_parameter(name, "d_n-punctured-polygon", "d") {
        return d_n_punctured_polygon(n?);
    }
    match name {
        "sl2" => bundles::sl2(),
        "punctured-digon" => bundles::punctured_digon(),
        "punctured-hexagon" => bundles::punctured_hexagon(),
        "four-punctured-sphere" => bundles::four_punctured_sphere(),
        "gr2-6" => bundles::gr2_6(),
        "gr3-6" => bundles::gr3_6(),
        "mat33" => bundles::mat33(),
        "sl3" => bundles::sl3(),
        "sl4n" => bundles::sl4n(),
        "sl4n-punctured-triangle" => bundles::sl4n_punctured_triangle(),
        _ => Err(Error::UnknownExample(name.to_string())),
    }
}

impl ExampleBundle {
    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "description": self.description,
            "surface": self.surface.as_ref().map(MarkedSurface::to_json),
            "triangulations": self.triangulations.iter().map(|t| json!({
                "name": t.name,
                "triangulation": t.triangulation.to_json(),
            })).collect::<Vec<_>>(),
            "multilaminations": self.multilaminations.iter().enumerate().map(|(i, m)| {
                let reference = self
                    .triangulations
                    .iter()
                    .find(|t| m.laminations.first().is_some_and(|l| l.reference == t.triangulation))
                    .map_or_else(|| format!("multilamination {i}"), |t| t.name.clone());
                m.to_json(&reference)
            }).collect::<Vec<_>>(),
            "seed": self.seed.to_json(),
            "symbols": { "x": self.names.x, "q": self.names.q },
            "expectations": self.expectations,
            "notes": self.notes,
        })
    }
}
