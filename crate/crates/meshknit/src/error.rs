use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid tree type: {0}")]
    InvalidType(String),
    #[error("empty slice range [{0}, {1}]")]
    EmptyRange(i64, i64),
    #[error("tau is undefined on projective point {0}")]
    UndefinedTau(String),
    #[error("{0} is not a source")]
    NotSource(String),
    #[error("{0} is not a sink")]
    NotSink(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("group is not admissible: {0}")]
    NotAdmissible(String),
    #[error("invalid dimension vector: {0}")]
    InvalidDimensionVector(String),
    #[error("not a pedigree vector: {0}")]
    NotAPedigreeVector(String),
    #[error("wrong family: {0}")]
    WrongFamily(String),
    #[error("not a fundamental algebra: {0}")]
    NotFundamental(String),
    #[error("invalid Brauer quiver: {0}")]
    InvalidBrauer(String),
    #[error("Brauer quiver needs at least two points")]
    TooSmall,
    #[error("no special arrow: {0}")]
    NoSpecialArrow(String),
    #[error("invalid section: {0}")]
    InvalidSection(String),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("unsupported object for DOT export: {0}")]
    UnsupportedObject(String),
    #[error("unknown example: {0}")]
    UnknownExample(String),
    #[error("malformed argument: {0}")]
    BadArgument(String),
}

impl Error {
    /// Exit code convention of the command-line tool: 2 for malformed input, 3 for
    /// inputs that are well-formed but mathematically infeasible.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidDimensionVector(_) | Error::NotAdmissible(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
