//! Certificates for transverse double points of parametrized surfaces.

use serde::Serialize;

use super::param::Parametrization;
use super::GeometryError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeCertificate {
    pub image: Vec<u64>,
    /// Ranks of the affine-cone tangent spaces of the two branches.
    pub branch_ranks: (usize, usize),
    /// Rank of their sum.
    pub span_rank: usize,
    /// Dimensions of the branch tangent planes in an affine chart.
    pub chart_dims: (usize, usize),
    /// Dimension of the intersection of the two tangent planes in the chart.
    pub intersection_dim: usize,
}

impl NodeCertificate {
    pub fn is_transverse(&self) -> bool {
        self.branch_ranks == (3, 3) && self.intersection_dim == 0
    }
}

/// Both preimages must map to the same point; the branches are transverse
/// when their cone tangent spaces (each of rank 3) meet only in the line of
/// the image point.
pub fn node_certificate(
    par: &Parametrization,
    preimages: (&[u64], &[u64]),
) -> Result<NodeCertificate, GeometryError> {
    let f = &par.field;
    let a = par.image_point(preimages.0).ok_or(GeometryError::NotIdentified)?;
    let b = par.image_point(preimages.1).ok_or(GeometryError::NotIdentified)?;
    if a != b || preimages.0 == preimages.1 {
        return Err(GeometryError::NotIdentified);
    }
    let ja = par.jacobian(preimages.0);
    let jb = par.jacobian(preimages.1);
    let ra = f.rank(&ja);
    let rb = f.rank(&jb);
    let mut both = ja;
    both.extend(jb);
    let span = f.rank(&both);
    let cert = NodeCertificate {
        image: a,
        branch_ranks: (ra, rb),
        span_rank: span,
        chart_dims: (ra.saturating_sub(1), rb.saturating_sub(1)),
        intersection_dim: (ra + rb).saturating_sub(span + 1),
    };
    if !cert.is_transverse() {
        return Err(GeometryError::NotTransverse(cert.intersection_dim));
    }
    Ok(cert)
}
