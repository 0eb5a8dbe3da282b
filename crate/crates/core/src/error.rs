use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge ({tail}, {head}) has invalid weight {weight}; weights must be finite and nonnegative")]
    InvalidWeight {
        tail: usize,
        head: usize,
        weight: f64,
    },
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error)]
pub enum ParamsError {
    #[error("invalid parameter {name}: {reason}")]
    Invalid { name: &'static str, reason: String },
}

impl ParamsError {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        ParamsError::Invalid {
            name,
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum HopsetError {
    #[error("the unweighted construction requires unit edge weights; edge ({tail}, {head}) has weight {weight}")]
    NonUnitWeight {
        tail: usize,
        head: usize,
        weight: f64,
    },
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error)]
pub enum GenerateError {
    #[error("infeasible {family} instance: {reason}")]
    Infeasible { family: &'static str, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}
