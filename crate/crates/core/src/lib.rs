//! Exact vertex-distortion analysis of knots in the cubic lattice.
//!
//! * [`lattice`]: points, the ℓ1 metric, staircase walks, bounding boxes.
//! * [`knot`]: stick tabulations, knot construction and validation, levels.
//! * [`distortion`]: the exact all-pairs vertex-distortion scan.
//! * [`oracle`]: an independent BFS recomputation used for cross-checks.
//! * [`torus`]: the T(p, p+1) family and its structural checks.
//! * [`reduction`]: stick reduction and extension moves, irreducibility.
//! * [`explorer`]: enumeration of small polygons and distortion searches.
//! * [`io`]: JSON, CSV and OBJ formats.

pub mod distortion;
pub mod explorer;
pub mod io;
pub mod knot;
pub mod lattice;
pub mod oracle;
pub mod reduction;
pub mod torus;

pub use distortion::{vertex_distortion, DistortionReport, Rational};
pub use knot::{build_knot, LatticeKnot, Tabulation};
pub use lattice::{l1_distance, Axis, LatticePoint, StickType};
