use thiserror::Error;

/// Everything that can go wrong across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge `{edge}` is a loop at vertex `{vertex}`")]
    LoopEdge { edge: String, vertex: String },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("edge `{edge}` references `{vertex}`, which is not a declared vertex")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("invalid label `{0}` (allowed characters: A-Z a-z 0-9 _ .)")]
    InvalidLabel(String),
    #[error("graph has no vertices")]
    EmptyVertexSet,
    #[error("graph is not connected")]
    Disconnected,
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex label `{0}` is already taken")]
    VertexLabelCollision(String),
    #[error("vertex `{vertex}` has degree {degree}, expected 2")]
    DegreeNotTwo { vertex: String, degree: usize },
    #[error("smoothing `{0}` would create a loop: both incident edges join it to the same vertex")]
    WouldCreateLoop(String),
    #[error("not a spanning tree: {0}")]
    NotASpanningTree(String),
    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),
    #[error("ordering is empty")]
    EmptyOrdering,
    #[error("permutation has a fixed point at vertex `{0}`, smoothing is not guaranteed to preserve the orbit count")]
    FixedPointPrecondition(String),
    #[error("dart ({edge},{from},{to}) does not belong to the graph")]
    DartNotInGraph {
        edge: String,
        from: String,
        to: String,
    },
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("Euler formula gave a non-integer genus: |V|={vertices}, |E|={edges}, f={faces}")]
    NonIntegerGenus {
        vertices: usize,
        edges: usize,
        faces: usize,
    },
    #[error("Euler formula gave a negative genus: |V|={vertices}, |E|={edges}, f={faces}")]
    NegativeGenus {
        vertices: usize,
        edges: usize,
        faces: usize,
    },
    #[error("search space of {required} states exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("internal verification failure: {0}")]
    InternalVerificationFailure(String),
    #[error("ordering does not multiply to the identity permutation")]
    NotIdentityOrdering,
    #[error("graph is not simple: `{0}` and `{1}` are parallel")]
    NotSimple(String, String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// Stable machine-readable name, used by the CLI's error output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::LoopEdge { .. } => "LoopEdge",
            Error::DuplicateLabel(_) => "DuplicateLabel",
            Error::DanglingEndpoint { .. } => "DanglingEndpoint",
            Error::InvalidLabel(_) => "InvalidLabel",
            Error::EmptyVertexSet => "EmptyVertexSet",
            Error::Disconnected => "Disconnected",
            Error::UnknownEdge(_) => "UnknownEdge",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::VertexLabelCollision(_) => "VertexLabelCollision",
            Error::DegreeNotTwo { .. } => "DegreeNotTwo",
            Error::WouldCreateLoop(_) => "WouldCreateLoop",
            Error::NotASpanningTree(_) => "NotASpanningTree",
            Error::InvalidOrdering(_) => "InvalidOrdering",
            Error::EmptyOrdering => "EmptyOrdering",
            Error::FixedPointPrecondition(_) => "FixedPointPrecondition",
            Error::DartNotInGraph { .. } => "DartNotInGraph",
            Error::InvalidRotation(_) => "InvalidRotation",
            Error::NonIntegerGenus { .. } => "NonIntegerGenus",
            Error::NegativeGenus { .. } => "NegativeGenus",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::InternalVerificationFailure(_) => "InternalVerificationFailure",
            Error::NotIdentityOrdering => "NotIdentityOrdering",
            Error::NotSimple(_, _) => "NotSimple",
            Error::Parse { .. } => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
