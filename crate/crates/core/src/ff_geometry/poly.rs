//! Sparse polynomials over F_p and graded-lex monomial bases.

use std::collections::BTreeMap;

use super::field::PrimeFieldSpec;

pub type Exponent = Vec<u32>;

/// All exponent vectors of total degree `d` in `nvars` variables, graded
/// lexicographic with x0 > x1 > ... (x0^d first).
pub fn monomials(nvars: usize, d: u32) -> Vec<Exponent> {
    fn rec(nvars: usize, d: u32, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == nvars {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(nvars, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        return out;
    }
    rec(nvars, d, &mut Vec::with_capacity(nvars), &mut out);
    out
}

pub fn eval_monomial(f: &PrimeFieldSpec, e: &[u32], x: &[u64]) -> u64 {
    e.iter()
        .zip(x)
        .fold(1, |acc, (&k, &v)| if k == 0 { acc } else { f.mul(acc, f.pow(v, k as u64)) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub nvars: usize,
    /// Sorted by exponent, no zero coefficients.
    pub terms: Vec<(Exponent, u64)>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn from_terms(f: &PrimeFieldSpec, nvars: usize, terms: impl IntoIterator<Item = (Exponent, u64)>) -> Self {
        let mut acc: BTreeMap<Exponent, u64> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            let slot = acc.entry(e).or_insert(0);
            *slot = f.add(*slot, c % f.p());
        }
        Poly {
            nvars,
            terms: acc.into_iter().filter(|(_, c)| *c != 0).collect(),
        }
    }

    pub fn monomial(e: Exponent) -> Self {
        Poly {
            nvars: e.len(),
            terms: vec![(e, 1)],
        }
    }

    /// Σ cᵢ mᵢ over a monomial list.
    pub fn from_dense(f: &PrimeFieldSpec, monos: &[Exponent], coeffs: &[u64]) -> Self {
        let nvars = monos.first().map_or(0, Vec::len);
        Self::from_terms(f, nvars, monos.iter().cloned().zip(coeffs.iter().copied()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, f: &PrimeFieldSpec, x: &[u64]) -> u64 {
        self.terms
            .iter()
            .fold(0, |acc, (e, c)| f.add(acc, f.mul(*c, eval_monomial(f, e, x))))
    }

    pub fn derivative(&self, f: &PrimeFieldSpec, i: usize) -> Poly {
        let terms = self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut e2 = e.clone();
            e2[i] -= 1;
            (e2, f.mul(*c, e[i] as u64 % f.p()))
        });
        Poly::from_terms(f, self.nvars, terms)
    }

    pub fn gradient(&self, f: &PrimeFieldSpec) -> Vec<Poly> {
        (0..self.nvars).map(|i| self.derivative(f, i)).collect()
    }

    /// Σ cᵢ Pᵢ.
    pub fn linear_combination(f: &PrimeFieldSpec, coeffs: &[u64], polys: &[Poly]) -> Poly {
        let nvars = polys.first().map_or(0, |p| p.nvars);
        let terms = coeffs
            .iter()
            .zip(polys)
            .flat_map(|(&c, p)| p.terms.iter().map(move |(e, d)| (e.clone(), c * d)));
        Poly::from_terms(f, nvars, terms)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(e, _)| e.iter().sum()).max()
    }
}

/// A form in N+1 variables prepared for repeated evaluation on points whose
/// first N coordinates are fixed: the coefficients of powers of the last variable.
#[derive(Clone, Debug)]
pub struct SlicedForm {
    /// For each power k of the last variable, terms in the first N variables.
    by_last_power: Vec<Vec<(Exponent, u64)>>,
}

impl SlicedForm {
    pub fn new(poly: &Poly) -> Self {
        let n = poly.nvars;
        let top = poly.terms.iter().map(|(e, _)| e[n - 1]).max().unwrap_or(0) as usize;
        let mut by_last_power = vec![Vec::new(); top + 1];
        for (e, c) in &poly.terms {
            by_last_power[e[n - 1] as usize].push((e[..n - 1].to_vec(), *c));
        }
        SlicedForm { by_last_power }
    }

    /// Coefficients of the univariate polynomial in the last variable.
    pub fn slice(&self, f: &PrimeFieldSpec, prefix: &[u64], out: &mut Vec<u64>) {
        out.clear();
        for terms in &self.by_last_power {
            let mut acc = 0u64;
            for (e, c) in terms {
                acc = f.add(acc, f.mul(*c, eval_monomial(f, e, prefix)));
            }
            out.push(acc);
        }
    }
}

/// Horner evaluation of a univariate polynomial, lowest power first.
#[inline]
pub fn horner(p: u64, coeffs: &[u64], x: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}
