use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("polynomial degree must be at least 1, got {0}")]
    InvalidDegree(usize),

    #[error("no triangle quadrature rule of degree {degree}")]
    UnsupportedQuadrature { degree: usize },

    #[error("invalid mesh parameters: {0}")]
    InvalidMesh(String),

    #[error("malformed mesh file at line {line}: {message}")]
    MalformedMesh { line: usize, message: String },

    #[error("edge ({0}, {1}) is shared by more than two triangles")]
    NonManifoldEdge(usize, usize),

    #[error("triangle {0} has zero area")]
    DegenerateTriangle(usize),

    #[error("boundary edge {edge} has no periodic partner")]
    UnmatchedPeriodicEdge { edge: usize },

    #[error("boundary rule not supported: {0}")]
    UnsupportedBoundary(String),

    #[error("unknown case or Hamiltonian `{0}`")]
    UnknownCase(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0}")]
    Config(String),

    #[error("oracle unavailable: {0}")]
    Oracle(String),

    #[error("non-finite state at RK stage {stage}, element {element}, time {time}")]
    NonFinite {
        stage: usize,
        element: usize,
        time: f64,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
