use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("duplicate generator id `{0}`")]
    DuplicateId(String),
    #[error("grading rule violated for `{id}`: {reason}")]
    GradingViolated { id: String, reason: String },
    #[error("antifield `{antifield}` refers to unknown field `{field}`")]
    UnknownPartner { antifield: String, field: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("polynomials belong to different algebras")]
    MixedAlgebras,
    #[error("requested order h^{hbar} l^{lambda} exceeds truncation ({max_hbar},{max_lambda})")]
    BeyondTruncation { hbar: i32, lambda: u32, max_hbar: i32, max_lambda: u32 },
    #[error("malformed truncation `{0}`, expected \"Kh,Kl\" with nonnegative integers")]
    BadTruncation(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BvError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("symmetry `{symmetry}` needs generator `{missing}` which is not declared")]
    MissingGenerator { symmetry: String, missing: String },
    #[error("symmetry component for `{field}` must be ghost- and antifield-free, got `{component}`")]
    FieldDependentStructure { field: String, component: String },
    #[error("structure constants are not antisymmetric in the lower indices at ({c};{a},{b})")]
    StructureNotAntisymmetric { c: usize, a: usize, b: usize },
    #[error("structure table has {got} ghosts but the model declares {expected} symmetries")]
    StructureShape { expected: usize, got: usize },
    #[error("action must be even, real, antifield-free and of ghost number 0")]
    BadAction,
    #[error("gauge fermion must have ghost number -1 and antifield number 0, got {0}")]
    BadGaugeFermion(String),
    #[error("no gauge fermion declared")]
    NoGaugeFermion,
    #[error("argument is not a vector field (antifield number 1, ghost number -1): {0}")]
    NotVectorField(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("image of `{source_monomial}` contains `{term}` outside the codomain basis; enlarge the codomain")]
    CodomainTooSmall { source_monomial: String, term: String },
    #[error("differential does not square to zero on `{0}`")]
    NotNilpotent(String),
    #[error("max_degree must be nonnegative")]
    NegativeDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("element has no lambda factor; the exponential series would not terminate")]
    NoCouplingFactor,
    #[error("leading coefficient is not an invertible constant")]
    NotInvertible,
    #[error("action is not quadratic and antifield-free")]
    NotQuadratic,
    #[error("requested order {order} exceeds the lambda truncation {max}")]
    OrderTooHigh { order: u32, max: u32 },
    #[error("test function has {got} entries, lattice has {expected} sites")]
    ShapeMismatch { expected: usize, got: usize },
}
