//! Rational parametrizations of surfaces over F_p, point sampling and
//! linear projections.

use std::collections::HashSet;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::field::PrimeFieldSpec;
use super::ideal::ideal_piece;
use super::poly::{monomials, Poly};
use super::GeometryError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Domain {
    P2,
    P1xP1,
}

impl Domain {
    pub fn nvars(self) -> usize {
        match self {
            Domain::P2 => 3,
            Domain::P1xP1 => 4,
        }
    }

    /// Normalizes each projective factor; `None` if some factor is zero.
    pub fn normalize(self, f: &PrimeFieldSpec, x: &[u64]) -> Option<Vec<u64>> {
        match self {
            Domain::P2 => f.normalize(x),
            Domain::P1xP1 => {
                let mut a = f.normalize(&x[..2])?;
                a.extend(f.normalize(&x[2..])?);
                Some(a)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Parametrization {
    pub field: PrimeFieldSpec,
    pub domain: Domain,
    pub target_dim: usize,
    pub forms: Vec<Poly>,
    /// Points where any of these vanish are never sampled.
    pub excluded_locus: Vec<Poly>,
}

impl Parametrization {
    pub fn eval(&self, x: &[u64]) -> Vec<u64> {
        self.forms.iter().map(|p| p.eval(&self.field, x)).collect()
    }

    pub fn image_point(&self, x: &[u64]) -> Option<Vec<u64>> {
        self.field.normalize(&self.eval(x))
    }

    pub fn is_excluded(&self, x: &[u64]) -> bool {
        self.excluded_locus.iter().any(|p| p.eval(&self.field, x) == 0)
    }

    /// Rows are the images of ∂/∂xᵢ for each domain variable.
    pub fn jacobian(&self, x: &[u64]) -> Vec<Vec<u64>> {
        (0..self.domain.nvars())
            .map(|i| {
                self.forms
                    .iter()
                    .map(|p| p.derivative(&self.field, i).eval(&self.field, x))
                    .collect()
            })
            .collect()
    }
}

/// P² blown up in the coordinate points, by the cubics through them.
pub fn parametrize_del_pezzo(field: PrimeFieldSpec) -> Parametrization {
    let forms: Vec<Poly> = monomials(3, 3)
        .into_iter()
        .filter(|e| !e.contains(&3))
        .map(Poly::monomial)
        .collect();
    let excluded_locus = (0..3)
        .map(|i| {
            let mut e = vec![0; 3];
            e[i] = 1;
            Poly::monomial(e)
        })
        .collect();
    Parametrization {
        field,
        domain: Domain::P2,
        target_dim: forms.len() - 1,
        forms,
        excluded_locus,
    }
}

/// P¹×P¹ in P⁷ by the bidegree (1,3) monomials s^i t^(1−i) u^j v^(3−j).
pub fn parametrize_scroll(field: PrimeFieldSpec) -> Result<Parametrization, GeometryError> {
    if field.p() < 11 {
        return Err(GeometryError::PrimeTooSmall { p: field.p(), min: 11 });
    }
    let mut forms = Vec::new();
    for i in (0..=1).rev() {
        for j in (0..=3).rev() {
            forms.push(Poly::monomial(vec![i, 1 - i, j, 3 - j]));
        }
    }
    Ok(Parametrization {
        field,
        domain: Domain::P1xP1,
        target_dim: 7,
        forms,
        excluded_locus: Vec::new(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjPointSet {
    pub p: u64,
    pub n: usize,
    pub points: Vec<Vec<u64>>,
}

impl ProjPointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// "p N", then one normalized point per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.p, self.n);
        for pt in &self.points {
            let line: Vec<String> = pt.iter().map(u64::to_string).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }

    pub fn from_text(text: &str) -> Option<ProjPointSet> {
        let mut lines = text.lines();
        let mut head = lines.next()?.split_whitespace().map(str::parse::<u64>);
        let p = head.next()?.ok()?;
        let n = head.next()?.ok()? as usize;
        let points = lines
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split_whitespace().map(|x| x.parse().ok()).collect::<Option<Vec<u64>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(ProjPointSet { p, n, points })
    }
}

/// A uniformly random domain point off the excluded locus, normalized.
pub fn random_domain_point(par: &Parametrization, rng: &mut ChaCha8Rng) -> Option<Vec<u64>> {
    let p = par.field.p();
    let x: Vec<u64> = (0..par.domain.nvars()).map(|_| rng.gen_range(0..p)).collect();
    let x = par.domain.normalize(&par.field, &x)?;
    (!par.is_excluded(&x)).then_some(x)
}

/// Distinct image points with the domain points they came from.
pub fn sample_with_preimages(
    par: &Parametrization,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(ProjPointSet, Vec<Vec<u64>>), GeometryError> {
    let mut seen = HashSet::new();
    let mut points = Vec::with_capacity(count);
    let mut pre = Vec::with_capacity(count);
    let budget = 50 * count + 10_000;
    let mut tries = 0;
    while points.len() < count {
        tries += 1;
        if tries > budget {
            return Err(GeometryError::ExhaustedDomain { wanted: count, found: points.len() });
        }
        let Some(x) = random_domain_point(par, rng) else { continue };
        let Some(y) = par.image_point(&x) else { continue };
        if seen.insert(y.clone()) {
            points.push(y);
            pre.push(x);
        }
    }
    Ok((
        ProjPointSet {
            p: par.field.p(),
            n: par.target_dim,
            points,
        },
        pre,
    ))
}

pub fn sample_points(par: &Parametrization, count: usize, seed: u64) -> Result<ProjPointSet, GeometryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_with_preimages(par, count, &mut rng)?.0)
}

const GUARD_SEED: u64 = 0x5eed_0f_c3a7e5;

/// Composes `par` with a linear map whose kernel is the span of `center`.
/// Centers are tested against the interpolated quadrics of the image, which
/// cut out both surfaces used here.
pub fn linear_projection(par: &Parametrization, center: &[Vec<u64>]) -> Result<Parametrization, GeometryError> {
    let f = &par.field;
    let n1 = par.target_dim + 1;
    if center.is_empty() || center.iter().any(|c| c.len() != n1) {
        return Err(GeometryError::BadCenter("wrong size".into()));
    }
    if f.rank(center) != center.len() {
        return Err(GeometryError::BadCenter("center points are dependent".into()));
    }
    let quadric_count = monomials(n1, 2).len();
    let sample = sample_points(par, 2 * quadric_count + 8, GUARD_SEED)?;
    let quadrics = ideal_piece(&sample, 2)?;
    for c in center {
        if quadrics.dim() > 0 && quadrics.vanishes_at(c) {
            return Err(GeometryError::CenterOnImage);
        }
    }
    // rows annihilating every center point
    let rows = f.kernel(center, n1);
    let forms = rows
        .iter()
        .map(|a| Poly::linear_combination(f, a, &par.forms))
        .collect();
    Ok(Parametrization {
        field: *f,
        domain: par.domain,
        target_dim: rows.len() - 1,
        forms,
        excluded_locus: par.excluded_locus.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeFieldSpec {
        PrimeFieldSpec::new(p).unwrap()
    }

    #[test]
    fn del_pezzo_forms() {
        let par = parametrize_del_pezzo(fp(10007));
        assert_eq!(par.forms.len(), 7);
        assert_eq!(par.image_point(&[1, 1, 1]), Some(vec![1; 7]));
    }

    #[test]
    fn scroll_forms() {
        assert_eq!(parametrize_scroll(fp(10007)).unwrap().forms.len(), 8);
        assert!(matches!(parametrize_scroll(fp(7)), Err(GeometryError::PrimeTooSmall { .. })));
    }

    #[test]
    fn sampling_contract() {
        let par = parametrize_del_pezzo(fp(10007));
        assert!(sample_points(&par, 0, 3).unwrap().is_empty());
        let a = sample_points(&par, 500, 3).unwrap();
        assert_eq!(a.len(), 500);
        assert_eq!(a.points.iter().collect::<HashSet<_>>().len(), 500);
        assert_eq!(a, sample_points(&par, 500, 3).unwrap());
        assert_ne!(a, sample_points(&par, 500, 4).unwrap());
        assert!(a.points.iter().all(|p| p[0] == 1));
    }

    #[test]
    fn exhausted_small_field() {
        let par = parametrize_del_pezzo(fp(5));
        // the torus of P² over F_5 has 16 points
        assert!(matches!(
            sample_points(&par, 17, 0),
            Err(GeometryError::ExhaustedDomain { wanted: 17, found: 16 })
        ));
    }

    #[test]
    fn text_round_trip() {
        let par = parametrize_del_pezzo(fp(101));
        let s = sample_points(&par, 5, 1).unwrap();
        let text = s.to_text();
        assert!(text.starts_with("101 6\n"));
        assert_eq!(ProjPointSet::from_text(&text), Some(s));
    }

    #[test]
    fn projection_guard() {
        let par = parametrize_del_pezzo(fp(10007));
        let on = par.image_point(&[2, 3, 5]).unwrap();
        assert_eq!(linear_projection(&par, &[on]).unwrap_err(), GeometryError::CenterOnImage);
        // yz² alone: the image of a point on the exceptional curve over (0:0:1)
        let mut e6 = vec![0; 7];
        e6[6] = 1;
        assert_eq!(linear_projection(&par, &[e6]).unwrap_err(), GeometryError::CenterOnImage);
        let proj = linear_projection(&par, &[vec![1, 2, 3, 4, 5, 6, 8]]).unwrap();
        assert_eq!(proj.target_dim, 5);
    }
}
