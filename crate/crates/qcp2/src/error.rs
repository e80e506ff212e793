//! Crate error type.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    SignatureMismatch { expected: String, found: String },
    FactorKindMismatch { index: usize, expected: &'static str },
    QMismatch,
    UnknownDiagram(String),
    UnknownMorphism(String),
    UnknownSuite(String),
    SourceMismatch { morphism: String, detail: String },
    DiagramMismatch { expected: String, found: String },
    ShapeMismatch { detail: String },
    CommutingSquareDefect { defect: f64, tol: f64 },
    NotSelfAdjoint { defect: f64, tol: f64 },
    NotAComodule { detail: String },
    QuadratureDidNotConverge { achieved: f64, target: f64 },
    BadConfig(String),
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SignatureMismatch { expected, found } => {
                write!(f, "signature mismatch: expected {expected}, found {found}")
            }
            Error::FactorKindMismatch { index, expected } => {
                write!(f, "factor {index} is not a {expected} factor")
            }
            Error::QMismatch => write!(f, "deformation parameters q differ"),
            Error::UnknownDiagram(name) => write!(f, "unknown diagram `{name}`"),
            Error::UnknownMorphism(name) => write!(f, "unknown morphism `{name}`"),
            Error::UnknownSuite(name) => write!(f, "unknown suite `{name}`"),
            Error::SourceMismatch { morphism, detail } => {
                write!(f, "input does not match the source of `{morphism}`: {detail}")
            }
            Error::DiagramMismatch { expected, found } => {
                write!(f, "diagram mismatch: expected {expected}, found {found}")
            }
            Error::ShapeMismatch { detail } => write!(f, "shape mismatch: {detail}"),
            Error::CommutingSquareDefect { defect, tol } => {
                write!(f, "commuting-square defect {defect:.3e} exceeds tolerance {tol:.3e}")
            }
            Error::NotSelfAdjoint { defect, tol } => {
                write!(f, "matrix is not self-adjoint: defect {defect:.3e} > {tol:.3e}")
            }
            Error::NotAComodule { detail } => write!(f, "coaction matrix fails comodule laws: {detail}"),
            Error::QuadratureDidNotConverge { achieved, target } => {
                write!(f, "quadrature refinement stalled at {achieved:.3e} (target {target:.3e})")
            }
            Error::BadConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
