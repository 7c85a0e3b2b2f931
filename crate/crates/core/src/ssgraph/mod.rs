//! Supersingular points with level structure and their isogeny graphs.

mod context;
mod cover;
mod enumerate;
mod export;
mod graph;

pub use context::{JData, LevelContext, Transition};
pub use cover::{atkin_lehner, cover_map, covering, Covering, VertexCover};
pub use enumerate::{eichler_mass, ss_j_enumerate, SupersingularJ};
pub use export::{default_labels, from_json, to_dot, to_json, twist_labels, SCHEMA_VERSION};
pub use graph::{build_graph, vertex_set, EnhancedVertex, LevelGraph, VertexSet};
