//! Explicit surfaces over prime fields: sampling, interpolation of ideal
//! pieces, node and plane certificates, and exhaustive residuation scans.

pub mod construct;
pub mod field;
pub mod ideal;
pub mod node;
pub mod param;
pub mod planes;
pub mod poly;
pub mod scan;

use thiserror::Error;

pub use construct::{build_nodal_del_pezzo, build_two_nodal_scroll, with_retries, NodalDelPezzo, TwoNodalScroll};
pub use field::PrimeFieldSpec;
pub use ideal::{ideal_piece, IdealPiece};
pub use node::{node_certificate, NodeCertificate};
pub use param::{
    linear_projection, parametrize_del_pezzo, parametrize_scroll, sample_points, Domain, Parametrization,
    ProjPointSet,
};
pub use planes::{cubic_through, plane_containment_check, PlaneContainmentReport};
pub use poly::Poly;
pub use scan::{residual_scan, singular_scan, ResidualScan};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("{0} is not a prime in (3, 2^31)")]
    NotPrime(u64),
    #[error("p = {p} is below the minimum {min}")]
    PrimeTooSmall { p: u64, min: u64 },
    #[error("only {found} of {wanted} distinct points found")]
    ExhaustedDomain { wanted: usize, found: usize },
    #[error("bad projection center: {0}")]
    BadCenter(String),
    #[error("projection center lies on the image")]
    CenterOnImage,
    #[error("{have} points, need at least {need}")]
    TooFewPoints { have: usize, need: usize },
    #[error("degree {degree}: half sample gives {half}, full sample gives {full}")]
    RankNotStabilized { degree: u32, half: usize, full: usize },
    #[error("preimages do not map to the same point")]
    NotIdentified,
    #[error("branches meet in a {0}-dimensional tangent space")]
    NotTransverse(usize),
    #[error("span has rank {0}, not a plane")]
    SpanNotPlane(usize),
    #[error("{failures} sampled plane points off the quadrics")]
    ContainmentFails { failures: usize },
    #[error("{attempts} attempts failed; last: {last}")]
    RetriesExhausted { attempts: usize, last: String },
    #[error("{0} points exceed the enumeration bound")]
    EnumerationTooLarge(u64),
    #[error("genericity condition failed: {0}")]
    NotGeneric(String),
}
