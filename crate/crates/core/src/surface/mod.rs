//! Bordered surfaces, tagged triangulations, flips and signed adjacency matrices.

mod flipgraph;
mod marked;
mod triangulation;

pub use flipgraph::{flip_graph, FlipGraph};
pub use marked::{validate_surface, MarkedPoint, MarkedSurface};
pub use triangulation::{
    ArcId, Encoding, FlipKind, FlipResult, Side, SideCode, TaggedArc, TaggedTriangulation, Triangle,
};
