use thiserror::Error;

/// Errors produced anywhere in the solver pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("newton iteration for Lobatto node {index} of order {order} did not converge")]
    NodeConvergence { order: usize, index: usize },

    #[error("second-derivative table disagrees with numerical differentiation at ({row}, {col}): closed form {closed}, numeric {numeric}")]
    DerivativeSelfCheck {
        row: usize,
        col: usize,
        closed: f64,
        numeric: f64,
    },

    #[error("parse error at column {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("assembled operator not symmetric at ({row}, {col}): {upper} vs {lower}")]
    Asymmetric {
        row: usize,
        col: usize,
        upper: f64,
        lower: f64,
    },

    #[error("eigensolver failure: {0}")]
    Eigensolver(String),

    #[error("cannot normalize a zero wavefunction")]
    ZeroState,

    #[error(
        "bracket [{lo}, {hi}] holds {count} eigenvalues (node counts {nodes_lo} and {nodes_hi})"
    )]
    Bracket {
        lo: f64,
        hi: f64,
        nodes_lo: usize,
        nodes_hi: usize,
        count: isize,
    },

    #[error("state {index}: {source}")]
    State {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
