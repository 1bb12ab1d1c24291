use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("generator `{0}` has degree 0; generators must have positive degree")]
    ZeroDegreeGenerator(String),
    #[error("generator `{0}` is declared twice")]
    DuplicateGenerator(String),
    #[error("generator name must be non-empty")]
    EmptyGeneratorName,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error(
        "element refers to generator index {index}, but the algebra has only {len} generators"
    )]
    ForeignElement { index: usize, len: usize },
    #[error("expected {expected} differentials, one per generator, got {found}")]
    DifferentialCount { expected: usize, found: usize },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("degree mismatch: expected degree {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("d(d({generator})) = {image} is non-zero")]
    DSquaredNonzero { generator: String, image: String },
    #[error("maximal degree {given} is too small, need at least {needed}")]
    MaxDegreeTooSmall { given: u32, needed: u32 },
    #[error("element is not a cocycle")]
    NotACocycle,
    #[error("the cohomology class of the attaching cocycle is zero")]
    ExactClass,
    #[error("algebra is not minimal: d({0}) has a linear term")]
    NotMinimal(String),
    #[error("algebra has degree-1 generators ({0}); a simply connected model is required")]
    DegreeOneGenerators(String),
    #[error("first Betti number is {0}; a simply connected input is required")]
    NotSimplyConnected(usize),
    #[error("sphere fibre dimension {0} is even; only odd-dimensional spheres are supported")]
    EvenSphereDimension(u32),
    #[error("manifold dimension {0} is even; an odd-dimensional manifold is required")]
    EvenDimension(usize),
    #[error("ring has odd top degree {0}; an even formal dimension is required")]
    OddTopDegree(u32),
    #[error("class is not homogeneous of degree 2")]
    NotDegreeTwo,
    #[error("invalid finite ring: {0}")]
    InvalidRing(String),
    #[error("Betti number b_{0} is unknown but needed")]
    UnknownBetti(usize),
    #[error("invalid Betti vector: {0}")]
    InvalidBetti(String),
    #[error("weight vector must be non-empty")]
    EmptyWeights,
    #[error(
        "subspace containment violated: a vector of the subspace lies outside the ambient space"
    )]
    ContainmentViolation,
    #[error("unknown catalog entry `{0}`")]
    UnknownSpace(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
