use alloc::string::String;
use core::fmt;

/// Errors raised by the algebraic constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A construction parameter is out of its allowed range.
    InvalidParameter(String),
    /// Operands belong to different algebras.
    AlgebraMismatch,
    /// Vector lengths or basis sizes disagree.
    DimensionMismatch { expected: usize, found: usize },
    /// The element has zero norm and no inverse.
    SingularElement,
    /// A frame or basis index is outside the algebra.
    IndexOutOfRange { index: usize, bound: usize },
    /// Input to a graded map had components outside the expected degree.
    NotHomogeneous,
    /// The chosen simple root has coefficient greater than one in the highest root.
    NonAbelianRadical { node: usize, coefficient: i64 },
    /// The requested root-system type or rank is not supported.
    Unsupported(String),
    /// A construction step failed to find the data it needs.
    Construction(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(s) => write!(f, "invalid parameter: {s}"),
            Error::AlgebraMismatch => write!(f, "operands belong to different algebras"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::SingularElement => write!(f, "element is singular (zero norm)"),
            Error::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range (bound {bound})")
            }
            Error::NotHomogeneous => write!(f, "element is not homogeneous of the required degree"),
            Error::NonAbelianRadical { node, coefficient } => write!(
                f,
                "simple root {node} has coefficient {coefficient} in the highest root; radical is not abelian"
            ),
            Error::Unsupported(s) => write!(f, "unsupported: {s}"),
            Error::Construction(s) => write!(f, "construction failed: {s}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
