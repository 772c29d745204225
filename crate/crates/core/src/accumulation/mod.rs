//! Accumulation rays of real Schur roots.
//!
//! Special eigenvectors of the Coxeter matrix, τ-orbits, rank-two
//! subcategories generated by exceptional pairs and their isotropic points,
//! rational accumulation tests, and numerical probes of the structural
//! statements about the quadric `q = 0`.

mod eigen;
mod probes;
mod rank2;
mod rational;
mod surd;

use thiserror::Error;

use crate::candecomp::CandecompError;
use crate::homext::HomExtError;
use crate::quiver_core::DimVector;
use crate::roots::RootError;

pub use eigen::{
    lambda_plus_from_char_poly, special_eigenvectors, tau_orbit, ConvergenceReport, Direction,
    SpecialEigenData, TauOrbit,
};
pub use probes::{
    quadric_samples, segment_sign_probe, strict_imaginary_neighborhood_probe, tangency_report,
    y_pm_avoidance_check, AvoidanceReport, AvoidanceStatus, NeighborhoodReport, SegmentReport,
    TangencyReport,
};
pub use rank2::{
    acc2_scan, enumerate_exceptional_pairs, rank2_isotropic_rays, Acc2Entry, CategoryType,
    RankTwoInfo,
};
pub use rational::{is_rational_accumulation, isotropic_witness_sequence, RationalAccumulation};
pub use surd::{AccRay, ExactPoint, QuadSurd};

/// Power iteration step tolerance.
pub const POWER_TOL: f64 = 1e-12;
/// Float rays closer than this are merged (after an exact comparison).
pub const MERGE_TOL: f64 = 1e-9;
/// Margin for empirical property checks.
pub const PROPERTY_TOL: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AccError {
    #[error("the quiver is of Dynkin type")]
    DynkinInput,
    #[error("the quiver is not connected")]
    Disconnected,
    #[error("power iteration did not converge in {0} steps")]
    NoConvergence(usize),
    #[error("{0} is not a real Schur root")]
    NotRealSchur(DimVector),
    #[error("{0} is not an isotropic Schur root")]
    NotIsotropicSchur(DimVector),
    #[error("{0} is not a positive vector")]
    NotPositive(DimVector),
    #[error("vector is not on the quadric: |q(v)| = {0:e}")]
    NotOnQuadric(f64),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Candecomp(#[from] CandecompError),
    #[error(transparent)]
    HomExt(#[from] HomExtError),
}
