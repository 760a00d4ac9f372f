//! Exhaustive scans over the rational points of projective space.

use rayon::prelude::*;
use serde::Serialize;

use super::field::PrimeFieldSpec;
use super::ideal::IdealPiece;
use super::poly::{horner, Poly, SlicedForm};
use super::GeometryError;

pub const MAX_ENUMERATION: u64 = 1_000_000_000;
const CHUNK: u64 = 2048;

/// (p^(n+1) − 1)/(p − 1), saturating.
pub fn projective_point_count(n: usize, p: u64) -> u64 {
    let mut total: u64 = 0;
    let mut block: u64 = 1;
    for _ in 0..=n {
        total = total.saturating_add(block);
        block = block.saturating_mul(p);
    }
    total
}

/// The index-th normalized point of P^m, ordered by position of the leading
/// 1 and then lexicographically.
pub fn decode_point(mut index: u64, m: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0; m + 1];
    for k in 0..=m {
        let block = p.pow((m - k) as u32);
        if index < block {
            out[k] = 1;
            for slot in out[k + 1..].iter_mut().rev() {
                *slot = index % p;
                index /= p;
            }
            return out;
        }
        index -= block;
    }
    unreachable!("index out of range")
}

/// Rational points of P^n where every form vanishes, in enumeration order.
/// Work is split over prefix ranges; results are concatenated in range order.
pub fn common_zeros(f: &PrimeFieldSpec, forms: &[Poly], n: usize) -> Result<Vec<Vec<u64>>, GeometryError> {
    let p = f.p();
    let total = projective_point_count(n, p);
    if total > MAX_ENUMERATION {
        return Err(GeometryError::EnumerationTooLarge(total));
    }
    let (first, rest) = forms.split_first().expect("at least one form");
    let sliced = SlicedForm::new(first);
    let vanish_rest = |x: &[u64]| rest.iter().all(|g| g.eval(f, x) == 0);

    // points with a nonzero prefix: [prefix in P^(n-1)] × F_p for the last coordinate
    let prefixes = projective_point_count(n - 1, p);
    let chunks = prefixes.div_ceil(CHUNK);
    let mut found: Vec<Vec<u64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut local = Vec::new();
            let mut coeffs = Vec::new();
            let mut x = vec![0; n + 1];
            for i in c * CHUNK..((c + 1) * CHUNK).min(prefixes) {
                let prefix = decode_point(i, n - 1, p);
                sliced.slice(f, &prefix, &mut coeffs);
                x[..n].copy_from_slice(&prefix);
                for t in 0..p {
                    if horner(p, &coeffs, t) != 0 {
                        continue;
                    }
                    x[n] = t;
                    if vanish_rest(&x) {
                        local.push(x.clone());
                    }
                }
            }
            local
        })
        .flatten()
        .collect();
    let mut apex = vec![0; n + 1];
    apex[n] = 1;
    if first.eval(f, &apex) == 0 && vanish_rest(&apex) {
        found.push(apex);
    }
    Ok(found)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualScan {
    pub p: u64,
    pub points_enumerated: u64,
    /// Rational points of the pencil base locus cut with X.
    pub intersection_count: usize,
    pub w_points: Vec<Vec<u64>>,
    pub wprime_points: Vec<Vec<u64>>,
}

/// Splits the rational points of {Q1 = Q2 = X = 0} into those on W (all
/// quadrics and cubics of W vanish) and the rest.
pub fn residual_scan(
    f: &PrimeFieldSpec,
    pencil: &[Poly; 2],
    x: &Poly,
    w_quadrics: &IdealPiece,
    w_cubics: &IdealPiece,
) -> Result<ResidualScan, GeometryError> {
    let n = w_quadrics.ambient_dim;
    let zeros = common_zeros(f, &[pencil[0].clone(), pencil[1].clone(), x.clone()], n)?;
    let (w_points, wprime_points): (Vec<_>, Vec<_>) = zeros
        .iter()
        .cloned()
        .partition(|pt| w_quadrics.vanishes_at(pt) && w_cubics.vanishes_at(pt));
    Ok(ResidualScan {
        p: f.p(),
        points_enumerated: projective_point_count(n, f.p()),
        intersection_count: zeros.len(),
        w_points,
        wprime_points,
    })
}

/// Rank of the Jacobian of `forms` at `x`.
pub fn jacobian_rank(f: &PrimeFieldSpec, forms: &[Poly], x: &[u64]) -> usize {
    let rows: Vec<Vec<u64>> = forms
        .iter()
        .map(|g| g.gradient(f).iter().map(|d| d.eval(f, x)).collect())
        .collect();
    f.rank(&rows)
}

/// Points where the Jacobian of `forms` has rank below `codim`: over the
/// supplied points, or over every rational zero of the forms in P^n.
pub fn singular_scan(
    f: &PrimeFieldSpec,
    forms: &[Poly],
    codim: usize,
    n: usize,
    points: Option<&[Vec<u64>]>,
) -> Result<Vec<Vec<u64>>, GeometryError> {
    let candidates = match points {
        Some(p) => p.to_vec(),
        None if codim == 1 && forms.len() == 1 => {
            // all partials vanish; test them as a system of forms on the hypersurface
            let mut system = vec![forms[0].clone()];
            system.extend(forms[0].gradient(f));
            return common_zeros(f, &system, n);
        }
        None => common_zeros(f, forms, n)?,
    };
    Ok(candidates
        .into_iter()
        .filter(|x| jacobian_rank(f, forms, x) < codim)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeFieldSpec {
        PrimeFieldSpec::new(p).unwrap()
    }

    #[test]
    fn decode_enumerates_everything_once() {
        let p = 5;
        let m = 2;
        let total = projective_point_count(m, p);
        assert_eq!(total, 31);
        let pts: std::collections::HashSet<_> = (0..total).map(|i| decode_point(i, m, p)).collect();
        assert_eq!(pts.len(), 31);
        assert!(pts.iter().all(|x| x.iter().find(|&&c| c != 0) == Some(&1)));
        assert_eq!(projective_point_count(5, 31), 29_583_456);
    }

    #[test]
    fn conic_point_count() {
        // x0 x2 − x1² over F_p has p + 1 rational points
        let f = fp(13);
        let q = Poly::from_terms(&f, 3, [(vec![1, 0, 1], 1), (vec![0, 2, 0], 12)]);
        assert_eq!(common_zeros(&f, &[q], 2).unwrap().len(), 14);
    }

    #[test]
    fn fermat_cubic_is_smooth() {
        let f = fp(7);
        let x = Poly::from_terms(&f, 6, (0..6).map(|i| {
            let mut e = vec![0; 6];
            e[i] = 3;
            (e, 1)
        }));
        assert!(singular_scan(&f, &[x], 1, 5, None).unwrap().is_empty());
    }

    #[test]
    fn cone_apex_found() {
        let f = fp(7);
        // Fermat cubic in x0..x4, a cone with apex e5
        let x = Poly::from_terms(&f, 6, (0..5).map(|i| {
            let mut e = vec![0; 6];
            e[i] = 3;
            (e, 1)
        }));
        let sing = singular_scan(&f, &[x], 1, 5, None).unwrap();
        assert_eq!(sing, vec![vec![0, 0, 0, 0, 0, 1]]);
    }

    #[test]
    fn too_large() {
        let f = fp(67);
        let q = Poly::from_terms(&f, 6, [(vec![2, 0, 0, 0, 0, 0], 1)]);
        assert!(matches!(common_zeros(&f, &[q], 5), Err(GeometryError::EnumerationTooLarge(_))));
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let f = fp(13);
        let q = Poly::from_terms(
            &f,
            6,
            [(vec![1, 1, 0, 0, 0, 0], 1), (vec![0, 0, 1, 1, 0, 0], 1), (vec![0, 0, 0, 0, 1, 1], 1)],
        );
        let run = |t| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .unwrap()
                .install(|| common_zeros(&f, std::slice::from_ref(&q), 5).unwrap())
        };
        assert_eq!(run(1), run(3));
    }
}
