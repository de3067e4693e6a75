use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Variants are grouped by the layer that produces them. [`Error::is_budget`]
/// distinguishes resource exhaustion from malformed or inconsistent input,
/// which the command line maps to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // ---- groups -------------------------------------------------------
    #[error("order cap exceeded: group closure grew beyond {cap} elements")]
    OrderCapExceeded { cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("table is not square or has out-of-range entries: {0}")]
    MalformedTable(String),
    #[error("multiplication table is not a Latin square: {0}")]
    NotLatinSquare(String),
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: u32, b: u32, c: u32 },
    #[error("element 0 is not a two-sided identity: 0*{x} or {x}*0 differs from {x}")]
    IdentityNotAtZero { x: u32 },
    #[error("element {x} has no two-sided inverse")]
    MissingInverse { x: u32 },
    #[error("homomorphism check failed: {0}")]
    BadHomomorphism(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("subgroup element {0} is out of range")]
    BadSubgroup(u32),
    #[error("image not stabilized: automorphism does not map the image of the connecting map onto itself")]
    ImageNotStabilized,
    #[error("automorphism search budget exceeded ({budget} partial nodes)")]
    AutBudgetExceeded { budget: u64 },

    // ---- complexes ----------------------------------------------------
    #[error("complex has no vertices")]
    EmptyComplex,
    #[error("complex not connected")]
    NotConnected,
    #[error("vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { vertex: u32, n: u32 },
    #[error("not a simplex of the complex: {0}")]
    UnknownSimplex(String),
    #[error("{0} has rank 0")]
    RankZero(String),
    #[error("complex is not a subcomplex of the target: {0}")]
    NotSubcomplex(String),

    // ---- amalgams -----------------------------------------------------
    #[error("missing group for simplex {0}")]
    MissingGroup(String),
    #[error("missing connecting map {from} -> {to}")]
    MissingMap { from: String, to: String },
    #[error("connecting map {from} -> {to}: {reason}")]
    BadConnectingMap { from: String, to: String, reason: String },
    #[error("diamond incoherence: {sigma} <- {rho1} <- {tau} differs from {sigma} <- {rho2} <- {tau}")]
    DiamondIncoherent { sigma: String, rho1: String, rho2: String, tau: String },
    #[error("amalgams are not of the same type: {0}")]
    TypeMismatch(String),
    #[error("isomorphism violation: {0}")]
    IsoViolation(String),
    #[error("oracle budget exceeded ({budget})")]
    OracleBudgetExceeded { budget: u64 },

    // ---- coefficient systems -----------------------------------------
    #[error("automorphism budget exceeded at simplex {simplex} ({budget} partial nodes)")]
    AutBudgetAtSimplex { simplex: String, budget: u64 },
    #[error("coefficient system invalid: {0}")]
    InvalidSystem(String),
    #[error("not a normal subsystem: {0}")]
    NotNormalSubsystem(String),
    #[error("inner subsystem not isomorphic along alpha {from} -> {to}")]
    InnerNotIsomorphic { from: String, to: String },
    #[error("requires the full 2-simplex on vertices 1,2,3")]
    NotTriangle,
    #[error("requires the 1-simplex on vertices 1,2")]
    NotEdge,

    // ---- cohomology ---------------------------------------------------
    #[error("cochain shape mismatch: {0}")]
    BadCochain(String),
    #[error("not a 1-cocycle: d1 is nontrivial on {0}")]
    NotCocycle(String),
    #[error("cocycle enumeration budget exceeded ({budget} cocycles)")]
    CocycleBudgetExceeded { budget: usize },
    #[error("orbit search budget exceeded ({budget} moves)")]
    OrbitBudgetExceeded { budget: u64 },
    #[error("amalgam is not normalized with respect to the reference: {0}")]
    NotNormalized(String),
    #[error("action equation fails: z1 is not z2 acted on by f")]
    ActionMismatch,
    #[error("quotient lemma hypothesis fails: alpha {from} -> {to} does not restrict to an isomorphism of the subsystem")]
    QuotientHypothesis { from: String, to: String },
    #[error("internal consistency check failed: {0}")]
    Internal(String),

    // ---- interface ----------------------------------------------------
    #[error("input error: {0}")]
    Input(String),
}

impl Error {
    /// True for resource exhaustion (exit status 2 on the command line).
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::OrderCapExceeded { .. }
                | Error::AutBudgetExceeded { .. }
                | Error::AutBudgetAtSimplex { .. }
                | Error::OracleBudgetExceeded { .. }
                | Error::CocycleBudgetExceeded { .. }
                | Error::OrbitBudgetExceeded { .. }
        )
    }

    /// Short stable identifier used in machine-readable error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::OrderCapExceeded { .. } => "order-cap",
            Error::InvalidPermutation(_) => "invalid-permutation",
            Error::MalformedTable(_) => "malformed-table",
            Error::NotLatinSquare(_) => "not-latin-square",
            Error::NotAssociative { .. } => "not-associative",
            Error::IdentityNotAtZero { .. } => "identity",
            Error::MissingInverse { .. } => "inverse",
            Error::BadHomomorphism(_) => "homomorphism",
            Error::GroupMismatch(_) => "group-mismatch",
            Error::BadSubgroup(_) => "subgroup",
            Error::ImageNotStabilized => "image-not-stabilized",
            Error::AutBudgetExceeded { .. } => "aut-budget",
            Error::EmptyComplex => "empty-complex",
            Error::NotConnected => "not-connected",
            Error::VertexOutOfRange { .. } => "vertex-range",
            Error::UnknownSimplex(_) => "unknown-simplex",
            Error::RankZero(_) => "rank-zero",
            Error::NotSubcomplex(_) => "not-subcomplex",
            Error::MissingGroup(_) => "missing-group",
            Error::MissingMap { .. } => "missing-map",
            Error::BadConnectingMap { .. } => "bad-map",
            Error::DiamondIncoherent { .. } => "diamond",
            Error::TypeMismatch(_) => "type-mismatch",
            Error::IsoViolation(_) => "iso-violation",
            Error::OracleBudgetExceeded { .. } => "oracle-budget",
            Error::AutBudgetAtSimplex { .. } => "aut-budget",
            Error::InvalidSystem(_) => "invalid-system",
            Error::NotNormalSubsystem(_) => "not-normal",
            Error::InnerNotIsomorphic { .. } => "inner-not-isomorphic",
            Error::NotTriangle => "not-triangle",
            Error::NotEdge => "not-edge",
            Error::BadCochain(_) => "bad-cochain",
            Error::NotCocycle(_) => "not-cocycle",
            Error::CocycleBudgetExceeded { .. } => "cocycle-budget",
            Error::OrbitBudgetExceeded { .. } => "orbit-budget",
            Error::NotNormalized(_) => "not-normalized",
            Error::ActionMismatch => "action-mismatch",
            Error::QuotientHypothesis { .. } => "quotient-hypothesis",
            Error::Internal(_) => "internal",
            Error::Input(_) => "input",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
