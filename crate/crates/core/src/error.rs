use thiserror::Error;

use crate::analysis::PairClass;

/// A vector too short to normalize.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("degenerate vector: norm {norm:e} below {eps:e}")]
pub struct Degenerate {
    pub norm: f64,
    pub eps: f64,
}

/// Whether an error stems from bad input or from the analysis itself.
/// The CLI maps these onto distinct exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Domain,
}

#[derive(Debug, Error)]
pub enum QtcError {
    #[error(transparent)]
    Degenerate(#[from] Degenerate),

    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("non-uniform sampling for object '{object_id}' at t = {t}")]
    NonUniformSampling { object_id: String, t: f64 },

    #[error("trajectory '{object_id}' has {len} samples, at least 3 required")]
    TooShort { object_id: String, len: usize },

    #[error("window [{start}, {start}+{count}) out of range for length {len}")]
    OutOfRange { start: usize, count: usize, len: usize },

    #[error("trajectories are not synchronized: {0}")]
    Unsynchronized(String),

    #[error("no usable frame in trajectory '{object_id}': every sample is degenerate")]
    AllDegenerate { object_id: String },

    #[error("2D variant requires planar input, found |z| = {z} at sample {index}")]
    NotPlanar { index: usize, z: f64 },

    #[error("frames belong to different samples ({0} vs {1})")]
    FrameIndexMismatch(usize, usize),

    #[error("frame at sample {0} is undefined")]
    UndefinedFrame(usize),

    #[error("empty symbol sequence")]
    EmptySequence,

    #[error("no pairs of class {0}")]
    EmptyClass(PairClass),

    #[error("division by zero: entropy sum of the denominator class is 0")]
    DivisionByZero,

    #[error("unknown object id '{0}'")]
    UnknownObject(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl QtcError {
    pub fn kind(&self) -> ErrorKind {
        use QtcError::*;
        match self {
            Parse { .. }
            | NonUniformSampling { .. }
            | TooShort { .. }
            | OutOfRange { .. }
            | Unsynchronized(_)
            | NotPlanar { .. }
            | UnknownObject(_)
            | InvalidArgument(_)
            | Io(_)
            | Json(_) => ErrorKind::Input,
            Degenerate(_)
            | AllDegenerate { .. }
            | FrameIndexMismatch(..)
            | UndefinedFrame(_)
            | EmptySequence
            | EmptyClass(_)
            | DivisionByZero => ErrorKind::Domain,
        }
    }

    /// Stable variant name for machine-readable reporting.
    pub fn code(&self) -> &'static str {
        use QtcError::*;
        match self {
            Degenerate(_) => "Degenerate",
            Parse { .. } => "ParseError",
            NonUniformSampling { .. } => "NonUniformSampling",
            TooShort { .. } => "TooShort",
            OutOfRange { .. } => "OutOfRange",
            Unsynchronized(_) => "Unsynchronized",
            AllDegenerate { .. } => "AllDegenerate",
            NotPlanar { .. } => "NotPlanar",
            FrameIndexMismatch(..) => "FrameIndexMismatch",
            UndefinedFrame(_) => "UndefinedFrame",
            EmptySequence => "EmptySequence",
            EmptyClass(_) => "EmptyClass",
            DivisionByZero => "DivisionByZero",
            UnknownObject(_) => "UnknownObject",
            InvalidArgument(_) => "InvalidArgument",
            Io(_) => "IoError",
            Json(_) => "JsonError",
        }
    }
}

pub type Result<T, E = QtcError> = std::result::Result<T, E>;
