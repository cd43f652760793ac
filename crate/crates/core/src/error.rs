use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coloring has {got} entries but the hypergraph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("color {color} at vertex {vertex} is outside the palette of {palette}")]
    ColorOutOfRange {
        vertex: usize,
        color: usize,
        palette: usize,
    },
    #[error("vertex {vertex} in edge {edge} is out of range for {n} vertices")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("edge {0} is not strictly increasing")]
    UnsortedEdge(usize),
    #[error("edge {0} is empty, so no coloring is proper")]
    EmptyEdge(usize),
    #[error("hypergraphs differ in vertex count ({0} vs {1})")]
    VertexCountMismatch(usize, usize),
    #[error("search exceeded the node budget of {0}")]
    NodeBudgetExceeded(u64),
    #[error("predicted size {predicted} exceeds the limit {limit}")]
    ResourceLimit { predicted: String, limit: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("coloring uses more colors than the construction guarantees against")]
    PaletteExceedsGuarantee,
    #[error("auxiliary hypergraph unavailable: {0}")]
    ProviderFailure(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("duplicate point at index {0} and {1}")]
    DuplicatePoints(usize, usize),
    #[error("coordinate tie between points {0} and {1}")]
    CoordinateTie(usize, usize),
    #[error("interval family is not nested (intervals {0} and {1} cross)")]
    NotNested(usize, usize),
    #[error("empty input")]
    EmptyInput,
    #[error("difference {0} is not a power of two")]
    NotPowerOfTwo(String),
    #[error("difference set exhausted before a term above {0}")]
    StreamExhausted(String),
    #[error("no unused residue left for node {0}")]
    ResidueAssignment(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// Resource errors map to a distinct CLI exit code.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::NodeBudgetExceeded(_) | Error::ResourceLimit { .. }
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::ColorOutOfRange { .. } => "color_out_of_range",
            Error::VertexOutOfRange { .. } => "vertex_out_of_range",
            Error::UnsortedEdge(_) => "unsorted_edge",
            Error::EmptyEdge(_) => "empty_edge",
            Error::VertexCountMismatch(..) => "vertex_count_mismatch",
            Error::NodeBudgetExceeded(_) => "node_budget_exceeded",
            Error::ResourceLimit { .. } => "resource_limit",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::PaletteExceedsGuarantee => "palette_exceeds_guarantee",
            Error::ProviderFailure(_) => "provider_failure",
            Error::VerificationFailed(_) => "verification_failed",
            Error::DuplicatePoints(..) => "duplicate_points",
            Error::CoordinateTie(..) => "coordinate_tie",
            Error::NotNested(..) => "not_nested",
            Error::EmptyInput => "empty_input",
            Error::NotPowerOfTwo(_) => "not_power_of_two",
            Error::StreamExhausted(_) => "stream_exhausted",
            Error::ResidueAssignment(_) => "residue_assignment",
            Error::Parse(_) => "parse",
        }
    }
}
