use alloc::string::String;
use core::fmt;

/// What went wrong while reading the text form of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    ZeroVariableIndex,
    NonIntegerExponent,
    NegativeExponent,
    NumberTooLarge,
    EmptyPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input where the problem was detected.
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => {
                write!(f, "unexpected character {c:?} at byte {}", self.offset)
            }
            ParseErrorKind::UnexpectedEnd => {
                write!(f, "unexpected end of input at byte {}", self.offset)
            }
            ParseErrorKind::ZeroVariableIndex => {
                write!(
                    f,
                    "variable index must be at least 1 (byte {})",
                    self.offset
                )
            }
            ParseErrorKind::NonIntegerExponent => {
                write!(f, "exponent must be an integer (byte {})", self.offset)
            }
            ParseErrorKind::NegativeExponent => {
                write!(f, "exponent must be nonnegative (byte {})", self.offset)
            }
            ParseErrorKind::NumberTooLarge => write!(f, "number too large at byte {}", self.offset),
            ParseErrorKind::EmptyPolynomial => {
                write!(f, "polynomial is empty after combining terms")
            }
        }
    }
}

/// Errors produced by the library.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    Parse(ParseError),
    /// Polynomial or point data violates a structural requirement.
    InvalidInput(String),
    /// A coordinate was zero where a negative exponent needs to divide by it.
    DivisionByZero,
    /// Support is not affinely full-dimensional where that is required.
    NotHonest {
        dimension: usize,
        variables: usize,
    },
    /// Support cardinality does not match what the operation needs.
    WrongCardinality {
        expected: usize,
        found: usize,
    },
    /// More terms than `dimension + 2`.
    UnsupportedSparsity {
        terms: usize,
        dimension: usize,
    },
    /// A configured resource cap (variables, padding size) would be exceeded.
    ResourceLimit(String),
    /// An exponent no longer fits in 64 bits after a lattice transform.
    ExponentOverflow,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(e) => write!(f, "parse error: {e}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NotHonest {
                dimension,
                variables,
            } => write!(
                f,
                "support spans dimension {dimension}, not the {variables} variables required"
            ),
            Error::WrongCardinality { expected, found } => {
                write!(f, "support has {found} points, expected {expected}")
            }
            Error::UnsupportedSparsity { terms, dimension } => write!(
                f,
                "{terms} terms exceed dimension + 2 = {} (unsupported sparsity)",
                dimension + 2
            ),
            Error::ResourceLimit(msg) => write!(f, "resource limit: {msg}"),
            Error::ExponentOverflow => write!(f, "exponent overflow"),
        }
    }
}

impl core::error::Error for ParseError {}
impl core::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}
