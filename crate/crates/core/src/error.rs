use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("trivial class: word reduces to the identity")]
    TrivialClass,

    #[error("invalid word syntax: {0}")]
    Parse(String),

    #[error("invalid twist triple: {0}")]
    InvalidTriple(String),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("invalid ribbon structure: {0}")]
    InvalidRibbon(String),

    #[error("invalid boundary point: {0}")]
    InvalidBoundaryPoint(String),

    #[error("coincident points")]
    CoincidentPoints,

    #[error("degenerate pair: axes share an endpoint")]
    DegeneratePair,

    #[error("separation precondition violated: {0}")]
    SeparationPrecondition(String),

    #[error("requires primitive class")]
    NotPrimitive,

    #[error("not an interior class: {0}")]
    NotInterior(String),

    #[error("classes must be distinct")]
    IdenticalClasses,

    #[error("identical triples: a pair needs two distinct curves")]
    IdenticalTriples,

    #[error("invalid lift search: {0}")]
    InvalidSearch(String),

    #[error("unstable enumeration: count did not stabilize before radius {max_radius}")]
    UnstableEnumeration { max_radius: usize },

    #[error("invalid representation point: {0}")]
    InvalidRepresentation(String),
}
