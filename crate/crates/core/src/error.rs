use core::fmt;

/// A named validity condition on a state or parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Invariant {
    Dimension,
    Hermitian,
    Trace,
    PositiveSemidefinite,
    Tetrahedron,
    SchmidtNormalization,
}

impl Invariant {
    pub fn name(self) -> &'static str {
        match self {
            Invariant::Dimension => "dimension",
            Invariant::Hermitian => "hermitian",
            Invariant::Trace => "trace",
            Invariant::PositiveSemidefinite => "positive_semidefinite",
            Invariant::Tetrahedron => "tetrahedron",
            Invariant::SchmidtNormalization => "schmidt_normalization",
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operand dimensions do not fit together.
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    /// Row lengths differ from the row count.
    NotSquare {
        rows: usize,
        cols: usize,
    },
    NotHermitian {
        residual: f64,
    },
    /// A density-matrix invariant failed by `residual`.
    InvalidState {
        invariant: Invariant,
        residual: f64,
    },
    NonUnitVector {
        norm: f64,
    },
    NotOrthonormal {
        residual: f64,
    },
    NegativeProbability {
        value: f64,
    },
    ProbabilitySum {
        sum: f64,
    },
    OutOfRange {
        name: &'static str,
        value: f64,
    },
    /// The classical-correlation optimizer only handles a qubit `A`.
    UnsupportedDimension {
        dim: usize,
    },
    /// Helstrom discrimination is implemented for two outcomes only.
    UnsupportedOutcomes {
        count: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotSquare { rows, cols } => write!(f, "matrix is not square: {rows}x{cols}"),
            Error::NotHermitian { residual } => {
                write!(f, "matrix is not Hermitian (residual {residual:.3e})")
            }
            Error::InvalidState {
                invariant,
                residual,
            } => {
                write!(
                    f,
                    "invalid state: {invariant} violated (residual {residual:.3e})"
                )
            }
            Error::NonUnitVector { norm } => write!(f, "Bloch vector is not unit (norm {norm})"),
            Error::NotOrthonormal { residual } => {
                write!(f, "basis is not orthonormal (residual {residual:.3e})")
            }
            Error::NegativeProbability { value } => write!(f, "negative probability {value}"),
            Error::ProbabilitySum { sum } => write!(f, "probabilities sum to {sum}, not 1"),
            Error::OutOfRange { name, value } => {
                write!(f, "parameter {name} = {value} out of range")
            }
            Error::UnsupportedDimension { dim } => {
                write!(
                    f,
                    "unsupported subsystem dimension {dim} (qubit A required)"
                )
            }
            Error::UnsupportedOutcomes { count } => {
                write!(f, "unsupported number of outcomes {count} (two required)")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
