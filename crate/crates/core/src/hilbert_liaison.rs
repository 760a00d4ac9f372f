//! Hilbert polynomials of complete intersections and curves, residuation
//! bookkeeping, and liaison of curves in complete intersections.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HilbertError {
    #[error("{count} hypersurfaces in P^{ambient}")]
    TooManyHypersurfaces { count: usize, ambient: usize },
    #[error("empty or non-positive degree list")]
    InvalidProfile,
    #[error("D^2 + D.K = {0} is odd")]
    ParityViolation(i64),
    #[error("linked genus is not an integer")]
    NonIntegralGenus,
    #[error("profile is not a curve complete intersection")]
    NotCurveProfile,
}

/// A polynomial in n with rational coefficients, lowest power first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPolynomial {
    coeffs: Vec<BigRational>,
}

impl HilbertPolynomial {
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = HilbertPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        HilbertPolynomial { coeffs: Vec::new() }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, n: i64) -> BigRational {
        let n = BigRational::from_integer(n.into());
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &n + c)
    }

    pub fn eval_integer(&self, n: i64) -> Option<BigInt> {
        let v = self.eval(n);
        v.is_integer().then(|| v.to_integer())
    }

    pub fn is_integer_valued_on(&self, range: std::ops::RangeInclusive<i64>) -> bool {
        range.into_iter().all(|n| self.eval(n).is_integer())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// binom(n + shift, r) as a polynomial in n, for any integer shift.
    pub fn binomial(shift: i64, r: usize) -> Self {
        let mut p = Self::from_i64(&[1]);
        let mut denom = BigInt::one();
        for k in 0..r {
            p = p.mul(&Self::from_i64(&[shift - k as i64, 1]));
            denom *= BigInt::from(k as u64 + 1);
        }
        p.scale(&BigRational::new(BigInt::one(), denom))
    }
}

impl Add for &HilbertPolynomial {
    type Output = HilbertPolynomial;
    fn add(self, o: &HilbertPolynomial) -> HilbertPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        HilbertPolynomial::from_coeffs((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Neg for &HilbertPolynomial {
    type Output = HilbertPolynomial;
    fn neg(self) -> HilbertPolynomial {
        HilbertPolynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &HilbertPolynomial {
    type Output = HilbertPolynomial;
    fn sub(self, o: &HilbertPolynomial) -> HilbertPolynomial {
        self + &(-o)
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let coeff = if a.is_one() && k > 0 { String::new() } else { a.to_string() };
            match k {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{coeff}n")?,
                _ => write!(f, "{coeff}n^{k}")?,
            }
        }
        Ok(())
    }
}

/// Hypersurfaces of the given degrees in P^ambient_dim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CIProfile {
    pub ambient_dim: usize,
    pub degrees: Vec<u32>,
}

impl CIProfile {
    pub fn new(ambient_dim: usize, degrees: &[u32]) -> Result<Self, HilbertError> {
        if degrees.is_empty() || degrees.contains(&0) {
            return Err(HilbertError::InvalidProfile);
        }
        if degrees.len() > ambient_dim {
            return Err(HilbertError::TooManyHypersurfaces {
                count: degrees.len(),
                ambient: ambient_dim,
            });
        }
        let mut degrees = degrees.to_vec();
        degrees.sort_unstable();
        Ok(CIProfile { ambient_dim, degrees })
    }

    pub fn dimension(&self) -> usize {
        self.ambient_dim - self.degrees.len()
    }

    pub fn degree_sum(&self) -> i64 {
        self.degrees.iter().map(|&d| d as i64).sum()
    }

    pub fn degree_product(&self) -> i64 {
        self.degrees.iter().map(|&d| d as i64).product()
    }

    /// The twist k with ω = O(k).
    pub fn canonical_twist(&self) -> i64 {
        self.degree_sum() - self.ambient_dim as i64 - 1
    }

    fn subset_sums(&self) -> impl Iterator<Item = (bool, i64)> + '_ {
        let m = self.degrees.len();
        (0u32..1 << m).map(move |mask| {
            let sum = (0..m)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| self.degrees[i] as i64)
                .sum();
            (mask.count_ones() % 2 == 1, sum)
        })
    }
}

/// Σ_S (−1)^|S| binom(n − ΣS + r, r).
pub fn ci_hilbert_poly(profile: &CIProfile) -> Result<HilbertPolynomial, HilbertError> {
    if profile.degrees.len() > profile.ambient_dim {
        return Err(HilbertError::TooManyHypersurfaces {
            count: profile.degrees.len(),
            ambient: profile.ambient_dim,
        });
    }
    let r = profile.ambient_dim;
    let mut total = HilbertPolynomial::zero();
    for (odd, sum) in profile.subset_sums() {
        let term = HilbertPolynomial::binomial(r as i64 - sum, r);
        total = if odd { &total - &term } else { &total + &term };
    }
    Ok(total)
}

/// Number of degree-k forms on the complete intersection: the same sum
/// with binomials of negative top argument set to zero.
pub fn ci_forms_count(profile: &CIProfile, k: i64) -> BigInt {
    let r = profile.ambient_dim as u64;
    let mut total = BigInt::zero();
    for (odd, sum) in profile.subset_sums() {
        let top = k - sum + r as i64;
        if top < r as i64 {
            continue;
        }
        let b = num_integer::binomial(BigInt::from(top), BigInt::from(r));
        if odd {
            total -= b;
        } else {
            total += b;
        }
    }
    total
}

/// d n + 1 − p.
pub fn curve_hp(degree: u32, arithmetic_genus: i64) -> HilbertPolynomial {
    HilbertPolynomial::from_i64(&[1 - arithmetic_genus, degree as i64])
}

/// total − kept + conductor.
pub fn residual_hp(
    total: &HilbertPolynomial,
    kept: &HilbertPolynomial,
    conductor: &HilbertPolynomial,
) -> HilbertPolynomial {
    &(total - kept) + conductor
}

pub fn adjunction_genus(d_sq: i64, d_dot_k: i64) -> Result<i64, HilbertError> {
    let s = d_sq + d_dot_k;
    if s.rem_euclid(2) != 0 {
        return Err(HilbertError::ParityViolation(s));
    }
    Ok(1 + s / 2)
}

/// Genus after identifying k points of a curve to one point.
pub fn glue_points_genus(genus_in: i64, points_glued: u32) -> i64 {
    assert!(points_glued >= 1, "at least one point");
    genus_in + points_glued as i64 - 1
}

/// Links a curve of degree d and arithmetic genus p inside the complete
/// intersection curve, returning the degree and genus of the residual.
pub fn liaison_link(profile: &CIProfile, degree: i64, genus: i64) -> Result<(i64, i64), HilbertError> {
    if profile.dimension() != 1 {
        return Err(HilbertError::NotCurveProfile);
    }
    let linked_degree = profile.degree_product() - degree;
    let num = profile.canonical_twist() * (degree - linked_degree);
    if num.rem_euclid(2) != 0 {
        return Err(HilbertError::NonIntegralGenus);
    }
    Ok((linked_degree, genus - num / 2))
}

/// Sextic del Pezzo surface in P⁶.
pub fn smooth_del_pezzo_hp() -> HilbertPolynomial {
    HilbertPolynomial::from_i64(&[1, 3, 3])
}

/// Its image with one node: χ drops by one.
pub fn nodal_del_pezzo_hp() -> HilbertPolynomial {
    &smooth_del_pezzo_hp() - &HilbertPolynomial::from_i64(&[1])
}

/// Leading coefficient times dim! gives the degree of the subscheme.
pub fn hp_degree(p: &HilbertPolynomial) -> Option<BigInt> {
    let d = p.degree()?;
    let mut fact = BigInt::one();
    for k in 2..=d as u64 {
        fact *= k;
    }
    let v = p.coeff(d) * BigRational::from_integer(fact);
    v.is_integer().then(|| v.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(c: &[i64]) -> HilbertPolynomial {
        HilbertPolynomial::from_i64(c)
    }

    #[test]
    fn ci_examples() {
        let p = ci_hilbert_poly(&CIProfile::new(5, &[2, 2, 3]).unwrap()).unwrap();
        assert_eq!(p, hp(&[7, -6, 6]));
        let p = ci_hilbert_poly(&CIProfile::new(2, &[1]).unwrap()).unwrap();
        assert_eq!(p, hp(&[1, 1]));
        // degree 12, ω = O(2), so 2p − 2 = 24
        let p = ci_hilbert_poly(&CIProfile::new(4, &[2, 2, 3]).unwrap()).unwrap();
        assert_eq!(p, curve_hp(12, 13));
        assert_eq!(
            CIProfile::new(2, &[1, 1, 1]).unwrap_err(),
            HilbertError::TooManyHypersurfaces { count: 3, ambient: 2 }
        );
    }

    #[test]
    fn curve_examples() {
        assert_eq!(curve_hp(12, 8), hp(&[-7, 12]));
        assert_eq!(curve_hp(1, 0), hp(&[1, 1]));
        assert_eq!(curve_hp(6, 1), hp(&[0, 6]));
    }

    #[test]
    fn residual_examples() {
        let total = hp(&[7, -6, 6]);
        let w = nodal_del_pezzo_hp();
        let b = curve_hp(12, 8);
        let wp = residual_hp(&total, &w, &b);
        assert_eq!(wp, hp(&[0, 3, 3]));
        assert_eq!(residual_hp(&total, &wp, &b), w);
        assert_eq!(residual_hp(&total, &total, &HilbertPolynomial::zero()), HilbertPolynomial::zero());
    }

    #[test]
    fn genus_examples() {
        assert_eq!(adjunction_genus(24, -12), Ok(7));
        assert_eq!(adjunction_genus(-1, -1), Ok(0));
        assert_eq!(adjunction_genus(6, -6), Ok(1));
        assert_eq!(adjunction_genus(1, 0), Err(HilbertError::ParityViolation(1)));
        assert_eq!(glue_points_genus(5, 4), 8);
        assert_eq!(glue_points_genus(glue_points_genus(5, 2), 2), 7);
        assert_eq!(glue_points_genus(3, 1), 3);
    }

    #[test]
    fn liaison_examples() {
        let p4 = CIProfile::new(4, &[2, 2, 3]).unwrap();
        assert_eq!(liaison_link(&p4, 6, 1), Ok((6, 1)));
        assert_eq!(p4.canonical_twist(), 2);
        let p3 = CIProfile::new(3, &[2, 2]).unwrap();
        assert_eq!(liaison_link(&p3, 1, 0), Ok((3, 0)));
        let p3b = CIProfile::new(3, &[2, 3]).unwrap();
        assert_eq!(liaison_link(&p3b, 1, 0), Ok((5, 2)));
        assert_eq!(liaison_link(&CIProfile::new(5, &[2, 2, 3]).unwrap(), 1, 0), Err(HilbertError::NotCurveProfile));
    }

    #[test]
    fn display() {
        assert_eq!(hp(&[7, -6, 6]).to_string(), "6n^2 - 6n + 7");
        assert_eq!(hp(&[0, 1]).to_string(), "n");
        assert_eq!(HilbertPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn binomial_matches_naive_for_large_argument() {
        let b = HilbertPolynomial::binomial(-3, 2);
        for n in 3..10i64 {
            let top = n - 3;
            let naive = top * (top - 1) / 2;
            assert_eq!(b.eval(n), BigRational::from_integer(naive.into()));
        }
    }

    #[test]
    fn degree_from_leading_term() {
        assert_eq!(hp_degree(&hp(&[7, -6, 6])), Some(BigInt::from(12)));
        assert_eq!(hp_degree(&nodal_del_pezzo_hp()), Some(BigInt::from(6)));
    }
}
