use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("relation {index} is not admissible: {reason}")]
    NonAdmissible { index: usize, reason: String },
    #[error("possibly infinite-dimensional or non-confluent presentation: irreducible path {path} reaches the length bound {bound}")]
    LengthBound { path: String, bound: usize },
    #[error("presentation is not confluent: path {path} has two different normal forms")]
    NonConfluent { path: String },
    #[error("associativity fails on basis triple ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("unit axiom fails on basis element {0}")]
    BadUnit(String),
    #[error("idempotent axioms fail: {0}")]
    BadIdempotents(String),
    #[error("malformed structure constants: {0}")]
    Malformed(String),
    #[error("invalid Kupisch series: {0}")]
    BadKupisch(String),
    #[error("radical verification failed: {0}")]
    RadicalVerification(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("modules live over different algebras or sides")]
    AlgebraMismatch,
    #[error("side mismatch: {0}")]
    SideMismatch(String),
    #[error("module axiom fails: {0}")]
    BadAction(String),
    #[error("zero module not allowed here: {0}")]
    ZeroModule(String),
    #[error("{0} is not certified within the cap of {1}")]
    Uncertified(String, usize),
    #[error("module dimension {0} exceeds the working limit {1}")]
    TooLarge(usize, usize),
}

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("{file}:{line}:{column}: JSON syntax error: {msg}")]
    Syntax {
        file: String,
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("{file}:{line}:{column}: {msg}")]
    Schema {
        file: String,
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("{file}: field `{field}`: {msg}")]
    Field {
        file: String,
        field: String,
        msg: String,
    },
    #[error("{file}: {source}")]
    Algebra {
        file: String,
        #[source]
        source: AlgebraError,
    },
    #[error("{file}: {source}")]
    Module {
        file: String,
        #[source]
        source: ModuleError,
    },
    #[error("{file}: {source}")]
    Io {
        file: String,
        #[source]
        source: std::io::Error,
    },
}
