//! Exact mixed volumes of zonotopes and the polyhedral cones spanned by their
//! partition monomials.
//!
//! The pipeline is:
//!
//! 1. [`mixed_volume`] computes mixed volumes of segments, zonotopes and planar polygons.
//! 2. [`config_space`] collects the pure mixed volumes of an `n`-tuple of bodies and maps them
//!    through the partition monomial map.
//! 3. [`rigid`] enumerates the rigid projective configurations whose images generate the cones.
//! 4. [`cone`] runs an exact double description to recover facets from generators.
//! 5. [`symmetry`] classifies facets into orbits under relabeling of the bodies.
//! 6. [`verify`] bundles the structural checks built on top of the above.
//!
//! Every number in a computation is an arbitrary-precision integer or rational.

pub mod bitset;
pub mod cone;
pub mod config_space;
pub mod exact;
pub mod golden;
pub mod mixed_volume;
pub mod pipeline;
pub mod rigid;
pub mod scheme;
pub mod symmetry;
pub mod verify;

pub use cone::{check_point, conic_hull, face_dimension, is_2_neighborly, Cone, Membership, PointStatus};
pub use config_space::{abs_grassmann_point, big_phi, phi_monomial, pure_config, MonomialPoint, PureConfiguration};
pub use exact::{det, rank, Rational};
pub use mixed_volume::{minkowski_sum, mv_polygons, mv_segments, mv_zonotopes, polygon_area, ConvexPolygon, Segment, Zonotope};
pub use rigid::{generators_for, Generator, GeneratorKind, Labeling, ProjectiveConfiguration};
pub use scheme::{enumerate_scheme, Partition, PartitionScheme, Subset};
pub use symmetry::{induced_action, match_table1, orbit_classify, FacetOrbit, InducedPermutation, Permutation};

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("block size {d} does not divide {n}")]
    Indivisible { n: usize, d: usize },
    #[error("unsupported parameters n={n}, d={d}")]
    Unsupported { n: usize, d: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("expected {expected} bodies, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("invalid index set: {0}")]
    InvalidIndex(String),
    #[error("degenerate configuration: points do not span the projective space")]
    DegenerateConfiguration,
    #[error("input spans a subspace of rank {rank} in an ambient space of dimension {ambient}")]
    NotFullDimensional { rank: usize, ambient: usize },
    #[error("cone is not pointed: facet normals have rank {rank} < {ambient}")]
    NotPointed { rank: usize, ambient: usize },
    #[error("no nonzero input vectors")]
    EmptyInput,
    #[error("ray index {0} is not an extreme ray of the cone")]
    NotExtreme(usize),
    #[error("facet set is not closed under relabeling (image of facet {0} is missing)")]
    NotClosed(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
