//! The nodal sextic del Pezzo surface and the two-nodal sextic scroll,
//! built by projection with sampled generic choices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::PrimeFieldSpec;
use super::param::{linear_projection, parametrize_del_pezzo, parametrize_scroll, random_domain_point, Parametrization};
use super::GeometryError;

/// Generator for attempt `k` under `seed`; attempts use disjoint streams.
pub fn attempt_rng(seed: u64, attempt: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(attempt);
    rng
}

/// Runs `build` on attempts 0..=retries until it succeeds. Failed attempts
/// are returned as log lines.
pub fn with_retries<T>(
    seed: u64,
    retries: usize,
    mut build: impl FnMut(&mut ChaCha8Rng) -> Result<T, GeometryError>,
) -> Result<(T, Vec<String>), GeometryError> {
    let mut log = Vec::new();
    for attempt in 0..=retries as u64 {
        let mut rng = attempt_rng(seed, attempt);
        match build(&mut rng) {
            Ok(v) => return Ok((v, log)),
            Err(e) => log.push(format!("attempt {attempt}: {e}")),
        }
    }
    Err(GeometryError::RetriesExhausted {
        attempts: retries + 1,
        last: log.pop().unwrap_or_default(),
    })
}

fn nonzero(f: &PrimeFieldSpec, rng: &mut ChaCha8Rng) -> u64 {
    rng.gen_range(1..f.p())
}

/// x + λ y.
fn secant_point(f: &PrimeFieldSpec, x: &[u64], y: &[u64], lambda: u64) -> Vec<u64> {
    f.combine(&[1, lambda], &[x.to_vec(), y.to_vec()])
}

#[derive(Clone, Debug)]
pub struct NodalDelPezzo {
    pub smooth: Parametrization,
    pub projected: Parametrization,
    pub w_plus: Vec<u64>,
    pub w_minus: Vec<u64>,
    pub center: Vec<u64>,
    pub w0: Vec<u64>,
}

/// γ₁, γ₂, γ₃ are the pencils of lines through the three coordinate points.
pub fn conic_fibrations_separate(f: &PrimeFieldSpec, a: &[u64], b: &[u64]) -> bool {
    [(1, 2), (0, 2), (0, 1)]
        .iter()
        .all(|&(i, j)| f.mul(a[i], b[j]) != f.mul(a[j], b[i]))
}

pub fn build_nodal_del_pezzo(f: PrimeFieldSpec, rng: &mut ChaCha8Rng) -> Result<NodalDelPezzo, GeometryError> {
    let smooth = parametrize_del_pezzo(f);
    let w_plus = random_domain_point(&smooth, rng).ok_or_else(|| GeometryError::NotGeneric("w+ off torus".into()))?;
    let w_minus = random_domain_point(&smooth, rng).ok_or_else(|| GeometryError::NotGeneric("w- off torus".into()))?;
    if !conic_fibrations_separate(&f, &w_plus, &w_minus) {
        return Err(GeometryError::NotGeneric("w+ and w- share a conic".into()));
    }
    let lambda = nonzero(&f, rng);
    let center = f
        .normalize(&secant_point(&f, &smooth.eval(&w_plus), &smooth.eval(&w_minus), lambda))
        .ok_or_else(|| GeometryError::NotGeneric("degenerate secant point".into()))?;
    let projected = linear_projection(&smooth, std::slice::from_ref(&center))?;
    let w0 = projected
        .image_point(&w_plus)
        .ok_or_else(|| GeometryError::NotGeneric("w+ maps to zero".into()))?;
    Ok(NodalDelPezzo {
        smooth,
        projected,
        w_plus,
        w_minus,
        center,
        w0,
    })
}

#[derive(Clone, Debug)]
pub struct TwoNodalScroll {
    pub smooth: Parametrization,
    pub projected: Parametrization,
    pub pairs: [(Vec<u64>, Vec<u64>); 2],
    pub centers: [Vec<u64>; 2],
    pub nodes: [Vec<u64>; 2],
}

pub fn build_two_nodal_scroll(f: PrimeFieldSpec, rng: &mut ChaCha8Rng) -> Result<TwoNodalScroll, GeometryError> {
    let smooth = parametrize_scroll(f)?;
    let mut pts = Vec::with_capacity(4);
    for _ in 0..4 {
        let x = random_domain_point(&smooth, rng).ok_or_else(|| GeometryError::NotGeneric("zero factor".into()))?;
        if pts.contains(&x) {
            return Err(GeometryError::NotGeneric("repeated point".into()));
        }
        pts.push(x);
    }
    let l1 = nonzero(&f, rng);
    let l2 = nonzero(&f, rng);
    let x1 = secant_point(&f, &smooth.eval(&pts[0]), &smooth.eval(&pts[1]), l1);
    let x2 = secant_point(&f, &smooth.eval(&pts[2]), &smooth.eval(&pts[3]), l2);
    let c1 = f.normalize(&x1).ok_or_else(|| GeometryError::NotGeneric("degenerate secant".into()))?;
    let c2 = f.normalize(&x2).ok_or_else(|| GeometryError::NotGeneric("degenerate secant".into()))?;
    let projected = linear_projection(&smooth, &[c1.clone(), c2.clone()])?;
    let n1 = projected.image_point(&pts[0]).ok_or_else(|| GeometryError::NotGeneric("node on center".into()))?;
    let n2 = projected.image_point(&pts[2]).ok_or_else(|| GeometryError::NotGeneric("node on center".into()))?;
    if n1 == n2 {
        return Err(GeometryError::NotGeneric("nodes coincide".into()));
    }
    let mut it = pts.into_iter();
    let pairs = [
        (it.next().unwrap(), it.next().unwrap()),
        (it.next().unwrap(), it.next().unwrap()),
    ];
    Ok(TwoNodalScroll {
        smooth,
        projected,
        pairs,
        centers: [c1, c2],
        nodes: [n1, n2],
    })
}
