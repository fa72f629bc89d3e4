use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop at vertex {0} but the graph does not allow loops")]
    LoopNotAllowed(usize),

    #[error("vertices {0} and {1} lie in different components")]
    Disconnected(usize, usize),

    #[error("vertex set must be nonempty")]
    EmptyVertexSet,

    #[error("graph already has loops")]
    AlreadyLooped,

    #[error("power exponent must be at least 1, got {0}")]
    InvalidPower(usize),

    #[error("graph has no edges")]
    Edgeless,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    InvalidParameter(String),

    /// A theorem or claim hypothesis does not hold for the input.
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("no connected {d}-regular graph on {n} vertices after {attempts} attempts")]
    GenerationFailed { n: usize, d: usize, attempts: usize },

    /// `x ~ y` and `y ~ z` hold on insufficient vertices but `d(x, z) > 2`.
    #[error("distance-2 relation is not transitive on insufficient vertices: ({x}, {y}, {z})")]
    TransitivityViolation { x: usize, y: usize, z: usize },
}
