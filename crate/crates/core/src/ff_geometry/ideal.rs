//! Graded pieces of vanishing ideals interpolated from point samples.

use serde::Serialize;

use super::field::PrimeFieldSpec;
use super::param::ProjPointSet;
use super::poly::{eval_monomial, monomials, Exponent, Poly};
use super::GeometryError;

pub const MIN_INTERPOLATION_PRIME: u64 = 31;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealPiece {
    pub p: u64,
    pub degree: u32,
    pub ambient_dim: usize,
    pub monomial_order: &'static str,
    pub monomials: Vec<Exponent>,
    /// Coefficient rows against `monomials`.
    pub basis: Vec<Vec<u64>>,
}

impl IdealPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn field(&self) -> PrimeFieldSpec {
        PrimeFieldSpec::new(self.p).expect("constructed from a valid field")
    }

    pub fn eval_all(&self, x: &[u64]) -> Vec<u64> {
        let f = self.field();
        let mv: Vec<u64> = self.monomials.iter().map(|e| eval_monomial(&f, e, x)).collect();
        self.basis.iter().map(|row| f.dot(row, &mv)).collect()
    }

    pub fn vanishes_at(&self, x: &[u64]) -> bool {
        self.eval_all(x).iter().all(|&v| v == 0)
    }

    pub fn forms(&self) -> Vec<Poly> {
        let f = self.field();
        self.basis.iter().map(|row| Poly::from_dense(&f, &self.monomials, row)).collect()
    }

    pub fn form(&self, coeffs: &[u64]) -> Poly {
        let f = self.field();
        let row = f.combine(coeffs, &self.basis);
        Poly::from_dense(&f, &self.monomials, &row)
    }
}

fn kernel_dim_and_basis(f: &PrimeFieldSpec, points: &[Vec<u64>], monos: &[Exponent]) -> Vec<Vec<u64>> {
    let rows: Vec<Vec<u64>> = points
        .iter()
        .map(|x| monos.iter().map(|e| eval_monomial(f, e, x)).collect())
        .collect();
    f.kernel(&rows, monos.len())
}

/// Forms of degree `d` vanishing on every point, after checking that the
/// first half of the sample already gives the same dimension.
pub fn ideal_piece(points: &ProjPointSet, d: u32) -> Result<IdealPiece, GeometryError> {
    if points.p < MIN_INTERPOLATION_PRIME {
        return Err(GeometryError::PrimeTooSmall {
            p: points.p,
            min: MIN_INTERPOLATION_PRIME,
        });
    }
    let f = PrimeFieldSpec::new(points.p)?;
    let monos = monomials(points.n + 1, d);
    if points.len() < 2 * monos.len() {
        return Err(GeometryError::TooFewPoints {
            have: points.len(),
            need: 2 * monos.len(),
        });
    }
    let basis = kernel_dim_and_basis(&f, &points.points, &monos);
    let half = kernel_dim_and_basis(&f, &points.points[..points.len() / 2], &monos);
    if half.len() != basis.len() {
        return Err(GeometryError::RankNotStabilized {
            degree: d,
            half: half.len(),
            full: basis.len(),
        });
    }
    Ok(IdealPiece {
        p: points.p,
        degree: d,
        ambient_dim: points.n,
        monomial_order: "grlex",
        monomials: monos,
        basis,
    })
}
