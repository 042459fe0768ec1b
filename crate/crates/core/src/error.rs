use alloc::string::String;

use crate::hyperplane::label;

/// Errors raised by graph constructions and map factorizations.
///
/// Variant names double as the stable error names printed by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("edge endpoint `{0}` is not a declared vertex")]
    UnknownEndpoint(String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("invalid vertex identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown hyperplane {}", label(*.0))]
    UnknownHyperplane(usize),
    #[error("hyperplane {}: carrier vertex `{vertex}` meets two of its edges", label(*hyperplane))]
    NotWellDefined { hyperplane: usize, vertex: String },
    #[error("hyperplane {} does not delimit exactly two halfspaces", label(*.0))]
    HalfspacesUnavailable(usize),
    #[error("graph is not median")]
    NotMedian,
    #[error("vertex subset does not induce a connected subgraph")]
    DisconnectedSubset,
    #[error("hyperplanes {} and {} are not in contact (separation distance {distance})", label(*a), label(*b))]
    NotInContact { a: usize, b: usize, distance: usize },
    #[error("hyperplanes {} and {} are not tangent", label(*a), label(*b))]
    NotTangent { a: usize, b: usize },
    #[error("map does not factor: {0}")]
    NotFactorizable(String),
    #[error("no fourth corner completes the square at `{0}`")]
    MissingFourthCorner(String),
    #[error("edge {0}-{1} collapses to a vertex")]
    EdgeCollapsed(String, String),
    #[error("edge {0}-{1} is not sent to an edge")]
    EdgeNotPreserved(String, String),
    #[error("parallel edges {0} and {1} land in different hyperplanes")]
    ParallelBroken(String, String),
    #[error("vertex map is not total on the domain (expected {expected} images, got {got})")]
    MapNotTotal { expected: usize, got: usize },
    #[error("codomain of the inner map differs from the domain of the outer map")]
    DomainMismatch,
    #[error("hyperplanes {} and {} have different images", label(*a), label(*b))]
    ImagesDiffer { a: usize, b: usize },
    #[error("generator {0} is not an automorphism")]
    NotAutomorphism(usize),
    #[error("group closure exceeds {0} elements")]
    GroupTooLarge(usize),
    #[error("map is not equivariant for generator {0}")]
    NotEquivariant(usize),
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}

impl Error {
    /// Stable identifier of the variant, independent of the payload.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DuplicateVertex(_) => "DuplicateVertex",
            Error::UnknownEndpoint(_) => "UnknownEndpoint",
            Error::SelfLoop(_) => "SelfLoop",
            Error::Disconnected => "Disconnected",
            Error::Empty => "Empty",
            Error::InvalidIdentifier(_) => "InvalidIdentifier",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::UnknownHyperplane(_) => "UnknownHyperplane",
            Error::NotWellDefined { .. } => "NotWellDefined",
            Error::HalfspacesUnavailable(_) => "HalfspacesUnavailable",
            Error::NotMedian => "NotMedian",
            Error::DisconnectedSubset => "DisconnectedSubset",
            Error::NotInContact { .. } => "NotInContact",
            Error::NotTangent { .. } => "NotTangent",
            Error::NotFactorizable(_) => "NotFactorizable",
            Error::MissingFourthCorner(_) => "MissingFourthCorner",
            Error::EdgeCollapsed(..) => "EdgeCollapsed",
            Error::EdgeNotPreserved(..) => "EdgeNotPreserved",
            Error::ParallelBroken(..) => "ParallelBroken",
            Error::MapNotTotal { .. } => "MapNotTotal",
            Error::DomainMismatch => "DomainMismatch",
            Error::ImagesDiffer { .. } => "ImagesDiffer",
            Error::NotAutomorphism(_) => "NotAutomorphism",
            Error::GroupTooLarge(_) => "GroupTooLarge",
            Error::NotEquivariant(_) => "NotEquivariant",
            Error::Internal(_) => "Internal",
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
