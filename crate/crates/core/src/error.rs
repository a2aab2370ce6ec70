use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong in the library.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Operand shapes do not fit, e.g. `a.cols != b.rows` in a product.
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        found: usize,
    },
    /// A square matrix was required.
    NotSquare {
        rows: usize,
        cols: usize,
    },
    /// Minor order larger than `min(rows, cols)`.
    OrderOutOfRange {
        order: usize,
        max: usize,
    },
    /// `leading_row_coeff` is undefined on a zero row.
    ZeroRow {
        row: usize,
    },
    /// Signal space block names must be unique and non-empty, dims positive.
    InvalidSignalSpace(String),
    UnknownBlock(String),
    /// Two objects that must share a signal space do not.
    SignalSpaceMismatch,
    /// The chosen output columns do not form an input-output partition.
    InvalidPartition(String),
    /// The behavior has no outputs (the whole signal space is free).
    NoOutputs,
    EmptyNetwork,
    InvalidComponentPartition(String),
    /// The leading row coefficient of an SVAR row is not one on the diagonal.
    DiagonalNotMonic {
        row: usize,
    },
    /// The leading row coefficient matrix of `X` is singular.
    SingularLeadingMatrix,
    /// Row `row` of `Q` has a degree above the lag of that row.
    InputDegreeExceedsLag {
        row: usize,
        degree: usize,
        lag: usize,
    },
    /// A component has output cardinality different from one.
    NotSingleOutput {
        component: usize,
        cardinality: usize,
    },
    NotRegularFeedback,
    HorizonTooShort {
        horizon: usize,
        required: usize,
    },
    /// Initial window violates a kernel equation at `(time, row)`.
    InconsistentInitialData {
        time: usize,
        row: usize,
    },
    InputHorizonTooShort {
        available: usize,
        required: usize,
    },
    /// The I/O partition is not proper, so it cannot be simulated causally.
    NotProper,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch {
                op,
                expected,
                found,
            } => {
                write!(
                    f,
                    "dimension mismatch in {op}: expected {expected}, found {found}"
                )
            }
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix is not square ({rows}x{cols})")
            }
            Error::OrderOutOfRange { order, max } => {
                write!(f, "minor order {order} exceeds {max}")
            }
            Error::ZeroRow { row } => write!(f, "row {row} is zero"),
            Error::InvalidSignalSpace(msg) => write!(f, "invalid signal space: {msg}"),
            Error::UnknownBlock(name) => write!(f, "unknown signal block `{name}`"),
            Error::SignalSpaceMismatch => write!(f, "signal spaces differ"),
            Error::InvalidPartition(msg) => write!(f, "not an input-output partition: {msg}"),
            Error::NoOutputs => write!(f, "behavior has output cardinality 0"),
            Error::EmptyNetwork => write!(f, "network has no components"),
            Error::InvalidComponentPartition(msg) => {
                write!(f, "invalid component partition: {msg}")
            }
            Error::DiagonalNotMonic { row } => write!(
                f,
                "leading row coefficient matrix of X has no unit diagonal entry in row {row}"
            ),
            Error::SingularLeadingMatrix => {
                write!(f, "leading row coefficient matrix of X is singular")
            }
            Error::InputDegreeExceedsLag { row, degree, lag } => write!(
                f,
                "row {row} of Q has degree {degree}, exceeding the lag {lag}"
            ),
            Error::NotSingleOutput {
                component,
                cardinality,
            } => write!(
                f,
                "component {component} has output cardinality {cardinality}, expected 1"
            ),
            Error::NotRegularFeedback => write!(f, "not a regular feedback interconnection"),
            Error::HorizonTooShort { horizon, required } => write!(
                f,
                "horizon {horizon} too short, at least {required} samples required"
            ),
            Error::InconsistentInitialData { time, row } => {
                write!(f, "initial data inconsistent with row {row} at time {time}")
            }
            Error::InputHorizonTooShort {
                available,
                required,
            } => write!(f, "input has {available} samples, {required} required"),
            Error::NotProper => write!(f, "input-output partition is not proper"),
        }
    }
}

impl core::error::Error for Error {}
