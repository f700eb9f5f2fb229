use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix entry at ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("SVD did not converge for a {rows}x{cols} matrix after {sweeps} sweeps")]
    SvdNonConvergence {
        rows: usize,
        cols: usize,
        sweeps: usize,
    },

    #[error("column {col} is linearly dependent on the preceding columns")]
    RankDeficient { col: usize },

    #[error("probability vector is invalid: {0}")]
    BadDistribution(String),

    #[error("matrix entry at ({row}, {col}) is not in the declared alphabet")]
    AlphabetViolation { row: usize, col: usize },

    #[error("cluster {cluster} is empty")]
    EmptyCluster { cluster: usize },

    #[error("enumeration oracle limited to n <= {max}, got n = {n}")]
    OracleInfeasible { n: usize, max: usize },

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures of the iterative numerical kernels, as opposed to
    /// bad inputs or configuration.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::SvdNonConvergence { .. } | Error::RankDeficient { .. }
        )
    }
}
