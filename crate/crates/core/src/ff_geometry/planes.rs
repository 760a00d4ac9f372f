//! The planes spanned by the nodal cubic curves N and N′ on a nodal sextic
//! del Pezzo surface, and cubic fourfolds through the surface.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::construct::NodalDelPezzo;
use super::field::PrimeFieldSpec;
use super::ideal::{ideal_piece, IdealPiece};
use super::param::ProjPointSet;
use super::poly::Poly;
use super::GeometryError;

/// Images of the line through w₊, w₋ in the blown-up plane (class R).
pub fn curve_n_points(dp: &NodalDelPezzo, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let f = dp.projected.field;
    let a = dp.w_plus.clone();
    let b = dp.w_minus.clone();
    curve_points(dp, count, rng, move |s, t| f.combine(&[s, t], &[a.clone(), b.clone()]))
}

/// Images of the conic through the three base points and w₊, w₋ (class
/// 2L − E1 − E2 − E3): the Cremona transform of a line.
pub fn curve_n_prime_points(dp: &NodalDelPezzo, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let f = dp.projected.field;
    let inv = |w: &[u64]| w.iter().map(|&x| f.inv(x)).collect::<Vec<_>>();
    let a = inv(&dp.w_plus);
    let b = inv(&dp.w_minus);
    curve_points(dp, count, rng, move |s, t| {
        let l = f.combine(&[s, t], &[a.clone(), b.clone()]);
        vec![f.mul(l[1], l[2]), f.mul(l[0], l[2]), f.mul(l[0], l[1])]
    })
}

fn curve_points(
    dp: &NodalDelPezzo,
    count: usize,
    rng: &mut ChaCha8Rng,
    domain_point: impl Fn(u64, u64) -> Vec<u64>,
) -> Vec<Vec<u64>> {
    let par = &dp.projected;
    let f = par.field;
    let mut out: Vec<Vec<u64>> = Vec::new();
    for _ in 0..(20 * count + 200) {
        if out.len() == count {
            break;
        }
        let (s, t) = (rng.gen_range(0..f.p()), rng.gen_range(0..f.p()));
        let Some(x) = f.normalize(&domain_point(s, t)) else { continue };
        if par.is_excluded(&x) {
            continue;
        }
        if let Some(y) = par.image_point(&x) {
            if !out.contains(&y) {
                out.push(y);
            }
        }
    }
    out
}

/// Row-reduced basis of the span; errors unless it is a plane.
pub fn span_plane(f: &PrimeFieldSpec, points: &[Vec<u64>]) -> Result<Vec<Vec<u64>>, GeometryError> {
    let mut m = points.to_vec();
    let pivots = f.rref(&mut m);
    if pivots.len() != 3 {
        return Err(GeometryError::SpanNotPlane(pivots.len()));
    }
    m.truncate(3);
    Ok(m)
}

pub fn random_plane_points(f: &PrimeFieldSpec, basis: &[Vec<u64>], count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let c: Vec<u64> = (0..basis.len()).map(|_| rng.gen_range(0..f.p())).collect();
        if let Some(x) = f.normalize(&f.combine(&c, basis)) {
            out.push(x);
        }
    }
    out
}

/// Evaluates every quadric at `count` random points of the plane.
pub fn check_plane_in_quadrics(
    f: &PrimeFieldSpec,
    basis: &[Vec<u64>],
    quadrics: &IdealPiece,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(), GeometryError> {
    let failures = random_plane_points(f, basis, count, rng)
        .iter()
        .filter(|x| !quadrics.vanishes_at(x))
        .count();
    if failures > 0 {
        return Err(GeometryError::ContainmentFails { failures });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneContainmentReport {
    pub plane_p: Vec<Vec<u64>>,
    pub plane_p_prime: Vec<Vec<u64>>,
    pub points_tested: usize,
    /// Dimension of the cubics on N inside P, in plane coordinates.
    pub n_cubic_dim: usize,
    /// Random planes through w0 that failed containment, out of the trials.
    pub control_failures: usize,
    pub control_trials: usize,
}

pub const PLANE_TEST_POINTS: usize = 12;
pub const CONTROL_TRIALS: usize = 3;

/// Spans of N and N′, as row-reduced bases.
pub fn planes(dp: &NodalDelPezzo, rng: &mut ChaCha8Rng) -> Result<(Vec<Vec<u64>>, Vec<Vec<u64>>, Vec<Vec<u64>>), GeometryError> {
    let f = dp.projected.field;
    let n_pts = curve_n_points(dp, 40, rng);
    let np_pts = curve_n_prime_points(dp, 40, rng);
    Ok((span_plane(&f, &n_pts)?, span_plane(&f, &np_pts)?, n_pts))
}

pub fn plane_containment_check(
    w_points: &ProjPointSet,
    quadrics: &IdealPiece,
    dp: &NodalDelPezzo,
    rng: &mut ChaCha8Rng,
) -> Result<PlaneContainmentReport, GeometryError> {
    let f = dp.projected.field;
    if quadrics.dim() == 0 || !w_points.points.iter().all(|x| quadrics.vanishes_at(x)) {
        return Err(GeometryError::NotGeneric("quadrics do not cut out the sample".into()));
    }
    let (p, pp, n_pts) = planes(dp, rng)?;
    check_plane_in_quadrics(&f, &p, quadrics, PLANE_TEST_POINTS, rng)?;
    check_plane_in_quadrics(&f, &pp, quadrics, PLANE_TEST_POINTS, rng)?;

    let local: Vec<Vec<u64>> = n_pts
        .iter()
        .filter_map(|x| f.solve_in_span(&p, x))
        .filter_map(|c| f.normalize(&c))
        .collect();
    let cubic = ideal_piece(
        &ProjPointSet {
            p: f.p(),
            n: 2,
            points: local,
        },
        3,
    )?;

    let mut control_failures = 0;
    for _ in 0..CONTROL_TRIALS {
        let r1: Vec<u64> = (0..dp.w0.len()).map(|_| rng.gen_range(0..f.p())).collect();
        let r2: Vec<u64> = (0..dp.w0.len()).map(|_| rng.gen_range(0..f.p())).collect();
        let Ok(basis) = span_plane(&f, &[dp.w0.clone(), r1, r2]) else { continue };
        if let Err(GeometryError::ContainmentFails { .. }) =
            check_plane_in_quadrics(&f, &basis, quadrics, PLANE_TEST_POINTS, rng)
        {
            control_failures += 1;
        }
    }
    Ok(PlaneContainmentReport {
        plane_p: p,
        plane_p_prime: pp,
        points_tested: PLANE_TEST_POINTS,
        n_cubic_dim: cubic.dim(),
        control_failures,
        control_trials: CONTROL_TRIALS,
    })
}

/// A random member of the cubic piece that is not identically zero on any
/// of the given planes (checked at 10 points each).
pub fn cubic_through(
    cubics: &IdealPiece,
    planes: &[&[Vec<u64>]],
    rng: &mut ChaCha8Rng,
    retries: usize,
) -> Result<(Poly, usize), GeometryError> {
    let f = PrimeFieldSpec::new(cubics.p)?;
    if cubics.dim() == 0 {
        return Err(GeometryError::NotGeneric("no cubics".into()));
    }
    for attempt in 0..=retries {
        let coeffs: Vec<u64> = (0..cubics.dim()).map(|_| rng.gen_range(0..f.p())).collect();
        let x = cubics.form(&coeffs);
        let ok = !x.is_zero()
            && planes.iter().all(|basis| {
                random_plane_points(&f, basis, 10, rng)
                    .iter()
                    .any(|pt| x.eval(&f, pt) != 0)
            });
        if ok {
            return Ok((x, attempt + 1));
        }
    }
    Err(GeometryError::RetriesExhausted {
        attempts: retries + 1,
        last: "cubic vanishes on a plane".into(),
    })
}
