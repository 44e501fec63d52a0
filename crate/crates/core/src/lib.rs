//! Extensions between string modules over gentle algebras from triangulated
//! surfaces, computed by crossing arcs, by snake graphs and by linear algebra.
//!
//! A triangulation of a marked surface without punctures gives a gentle
//! quiver with potential. Its string modules correspond to arcs, and the
//! dimension of `Ext¹(M, N)` counts the ways the arc of `M` crosses the arc
//! of `N`. This crate computes those crossings and their smoothings, checks
//! them against the snake graph calculus, and certifies the resulting
//! dimensions with an independent linear-algebra oracle.

pub mod corpus;
pub mod error;
pub mod extensions;
pub mod linalg;
pub mod oracle;
pub mod snake;
pub mod strings;
pub mod surface;

pub use error::{Error, Result};
pub use extensions::{
    cluster_triangles, enumerate_crossings, ext_basis, ext_dim, ext_report, find_cycle_completion, smooth,
    smooth_checked, Crossing, CrossingKind, Direction, Smoothing, Term,
};
pub use oracle::ext1_dim_oracle;
pub use snake::{build_snake_graph, SnakeGraph};
pub use strings::{parse_string, validate_string, StringWord, Walk};
pub use surface::{derive_quiver, load_triangulation, Quiver, Triangulation};
