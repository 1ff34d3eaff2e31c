use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("cyclic family needs modulus >= 2, got {0}")]
    TrivialModulus(i64),
    #[error("unknown group family `{0}` (expected `z` or `zmod:<m>`)")]
    UnknownFamily(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("type index 0 at column {position}; type indices start at 1")]
    ZeroTypeIndex { position: usize },
    #[error("malformed exponent at column {position}")]
    MalformedExponent { position: usize },
    #[error("value {value} at column {position} is not an element of the letter's group")]
    InvalidValue { position: usize, value: i64 },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match *self {
            ParseError::Syntax { position, .. }
            | ParseError::ZeroTypeIndex { position }
            | ParseError::MalformedExponent { position }
            | ParseError::InvalidValue { position, .. } => position,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("letter {index} is the identity of H_{type_index}")]
    IdentityLetter { index: usize, type_index: u32 },
    #[error("letters {index} and {} are both of type {type_index}", index + 1)]
    AdjacentSameType { index: usize, type_index: u32 },
    #[error("letter of type 0 at position {index}")]
    ZeroTypeIndex { index: usize },
    #[error("psi_{n} is defined on G_{} but the word has a letter of type {found}", n + 1)]
    PsiDomain { n: u32, found: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LimitError {
    #[error("cannot combine elements over families `{left}` and `{right}`")]
    MixedFamilies { left: String, right: String },
    #[error("coordinate {n} of `{description}` has a letter of type {found} > {n}")]
    CoordinateOutOfLevel {
        description: String,
        n: usize,
        found: u32,
    },
    #[error("coordinates start at 1")]
    ZeroCoordinate,
    #[error("psi_{n}(coordinate {}) differs from coordinate {n}", n + 1)]
    Incoherent { n: usize },
    #[error("sigma undefined at this depth: `{description}` is not stable by depth {depth}")]
    SigmaUndefined { description: String, depth: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error(transparent)]
    Limit(#[from] LimitError),
    #[error("perturbation level must be at least 2, got {0}")]
    LevelTooSmall(usize),
    #[error(
        "`{description}` has no exact sigma; witnesses need a finitely described element of G"
    )]
    NotExact { description: String },
    #[error("probe level {n} must exceed sigma = {sigma}")]
    LevelNotAboveSigma { n: usize, sigma: usize },
    #[error("dichotomy check failed at level {n}: {reason}")]
    Violated { n: usize, reason: String },
}
