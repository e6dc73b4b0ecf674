//! Numerical machinery for $L_p$-Brunn-Minkowski theory at desk scale.
//!
//! The crate provides generalized means, $L_p$-Minkowski set combinations,
//! $L_{p,s}$-supremal convolutions of gridded functions, bodies of revolution,
//! measure-theoretic surface-area functionals, and a harness that evaluates
//! both sides of the associated inequalities on configured fixtures.

pub mod config;
pub mod densities;
pub mod functionals;
pub mod geometry;
pub mod grid;
pub mod harness;
pub mod means;
pub mod report;
pub mod revolution;
pub mod supconv;

pub use densities::{Density, Quadrature};
pub use geometry::{SampledSet, SupportBody};
pub use grid::{Box3, Grid, GridFunction};
pub use harness::{CheckParams, CheckReport, Fixture, FixtureKind, TheoremId};
pub use means::{Alpha, LpWeights, MeanParams};
pub use supconv::{ConvolutionParams, SValue};

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("empty set or support: {0}")]
    EmptyInput(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unknown theorem id: {0}")]
    UnknownTheorem(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
