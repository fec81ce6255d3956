use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: relation is not homogeneous (Adams degrees {first} and {other})")]
    Inhomogeneous { line: usize, first: usize, other: usize },

    #[error("line {line}: {message}")]
    InvalidPresentation { line: usize, message: String },

    #[error("field error: {0}")]
    Field(String),

    #[error("family of {given} vectors is dependent (rank {rank})")]
    DependentFamily { given: usize, rank: usize },

    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),

    #[error("bases do not match for composition")]
    BasisMismatch,

    #[error("bidegree (hom {hom}, Adams -{adams}) is outside the cutoffs (hom <= {max_hom}, Adams >= -{max_adams})")]
    Truncation {
        hom: usize,
        adams: usize,
        max_hom: usize,
        max_adams: usize,
    },

    #[error("invalid cutoffs: {0}")]
    Cutoffs(String),

    #[error("unknown class label {0:?}")]
    UnknownClass(String),

    #[error("Massey product not defined: the obstruction for a[{i}][{j}] is a nonzero class")]
    MasseyUndefined { i: usize, j: usize },

    #[error("invalid Massey input: {0}")]
    MasseyInput(String),

    #[error("model file schema version {found} is not supported (expected {expected})")]
    SchemaVersion { found: u64, expected: u64 },

    #[error("corrupt model file: {0}")]
    CorruptModel(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
