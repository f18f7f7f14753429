use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation of zero undefined")]
    ZeroPolynomial,

    #[error("weight mismatch: expected {expected:?}, got {found:?}")]
    WeightMismatch { expected: Vec<u32>, found: Vec<u32> },

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("polynomial parse error at byte {pos}: {msg}")]
    PolyParse { pos: usize, msg: String },

    #[error("invalid blowup weights ({a},{b}): {reason}")]
    InvalidBlowup { a: u64, b: u64, reason: &'static str },

    #[error("not an anticanonical-degree-2 blowup: (-K_X)^3 = {cube}")]
    NotDegreeTwo { cube: i64 },

    #[error("({genus},{degree}) is not admissible for {space}; admissible pairs: {admissible}")]
    Inadmissible {
        space: &'static str,
        genus: u32,
        degree: u32,
        admissible: String,
    },

    #[error("Riemann-Roch value at n = {n} is not an integer ({numerator}/12)")]
    NonIntegralRiemannRoch { n: u32, numerator: i128 },

    #[error("n_max must be at least {min}, got {got}")]
    ProfileTooShort { min: u32, got: u32 },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("catalog line {line}: {msg}")]
    CatalogParse { line: usize, msg: String },

    #[error("catalog line {line}: duplicate label {label:?}")]
    DuplicateLabel { line: usize, label: String },

    #[error("catalog line {line}: ({genus},{degree}) is not admissible for {space}")]
    CatalogInadmissible {
        line: usize,
        space: &'static str,
        genus: u32,
        degree: u32,
    },

    #[error("unknown ambient space {0:?} (expected p3 or cubic)")]
    UnknownSpace(String),

    #[error("unknown chi label {0:?}")]
    UnknownLabel(String),

    #[error("word parse error: {0}")]
    WordParse(String),

    #[error("permutation parse error: {0}")]
    PermParse(String),

    #[error("section is only defined on chi words; found g-letter {0:?}")]
    NotChiWord(String),

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
