//! Discriminant groups `L*/L` with their finite quadratic forms.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact_linalg::{kernel_basis, row_hermite_form, smith_normal_form, IntMatrix, RatMatrix};
use crate::lattices::{GlueVector, Lattice};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiscFormError {
    #[error("lattice is degenerate")]
    Degenerate,
    #[error("group of order {0} exceeds the enumeration bound {1}")]
    TooLarge(BigInt, u64),
    #[error("element is not isotropic")]
    NotIsotropic,
}

/// Whether `q` is known modulo 2 (even lattices) or only modulo 1 (odd).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QModulus {
    Two,
    One,
}

impl QModulus {
    fn value(self) -> BigRational {
        match self {
            QModulus::Two => BigRational::from_integer(BigInt::from(2)),
            QModulus::One => BigRational::one(),
        }
    }
}

pub fn reduce_mod(x: &BigRational, m: &BigRational) -> BigRational {
    x - m * (x / m).floor()
}

/// A finite quadratic form on `⊕ Z/d_i` presented on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuadraticForm {
    /// Orders of the generators, each > 1, in divisibility order.
    pub invariant_factors: Vec<u64>,
    pub modulus: QModulus,
    /// `q(g_i)` reduced into `[0, modulus)`.
    pub q_values: Vec<BigRational>,
    /// `b(g_i, g_j)` reduced into `[0, 1)`.
    pub pairings: Vec<Vec<BigRational>>,
    /// Rational lifts of the generators in lattice coordinates, when known.
    pub lifts: Vec<Vec<BigRational>>,
}

/// An element as coefficients on the generators.
pub type Element = Vec<u64>;

impl fmt::Display for FiniteQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .zip(&self.q_values)
            .map(|(d, q)| format!("Z/{d}(q={q})"))
            .collect();
        write!(f, "{}", parts.join(" + "))?;
        let k = self.invariant_factors.len();
        for i in 0..k {
            for j in i + 1..k {
                if !self.pairings[i][j].is_zero() {
                    write!(f, " b{i}{j}={}", self.pairings[i][j])?;
                }
            }
        }
        if self.modulus == QModulus::One {
            write!(f, " [mod 1]")?;
        }
        Ok(())
    }
}

impl FiniteQuadraticForm {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().map(|&d| BigInt::from(d)).product()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    fn from_generators(
        orders: Vec<u64>,
        modulus: QModulus,
        gram: Vec<Vec<BigRational>>,
        lifts: Vec<Vec<BigRational>>,
    ) -> Self {
        let m = modulus.value();
        let one = BigRational::one();
        let k = orders.len();
        FiniteQuadraticForm {
            invariant_factors: orders,
            modulus,
            q_values: (0..k).map(|i| reduce_mod(&gram[i][i], &m)).collect(),
            pairings: (0..k)
                .map(|i| (0..k).map(|j| reduce_mod(&gram[i][j], &one)).collect())
                .collect(),
            lifts,
        }
    }

    /// Unreduced value `Σ c_i² q_i + 2 Σ_{i<j} c_i c_j b_ij`, for integer
    /// coefficient vectors.
    fn raw_q(&self, c: &[BigInt]) -> BigRational {
        let k = self.rank();
        let mut acc = BigRational::zero();
        for i in 0..k {
            if c[i].is_zero() {
                continue;
            }
            acc += &self.q_values[i] * BigRational::from_integer(&c[i] * &c[i]);
            for j in i + 1..k {
                if c[j].is_zero() {
                    continue;
                }
                acc += &self.pairings[i][j] * BigRational::from_integer(BigInt::from(2) * &c[i] * &c[j]);
            }
        }
        acc
    }

    fn raw_b(&self, c: &[BigInt], e: &[BigInt]) -> BigRational {
        let k = self.rank();
        let mut acc = BigRational::zero();
        for i in 0..k {
            if c[i].is_zero() {
                continue;
            }
            for j in 0..k {
                if e[j].is_zero() {
                    continue;
                }
                acc += &self.pairings[i][j] * BigRational::from_integer(&c[i] * &e[j]);
            }
        }
        acc
    }

    pub fn q(&self, x: &[u64]) -> BigRational {
        reduce_mod(&self.raw_q(&to_big(x)), &self.modulus.value())
    }

    pub fn b(&self, x: &[u64], y: &[u64]) -> BigRational {
        reduce_mod(&self.raw_b(&to_big(x), &to_big(y)), &BigRational::one())
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Element {
        x.iter()
            .zip(y)
            .zip(&self.invariant_factors)
            .map(|((a, b), d)| (a + b) % d)
            .collect()
    }

    pub fn scalar(&self, c: u64, x: &[u64]) -> Element {
        x.iter()
            .zip(&self.invariant_factors)
            .map(|(a, d)| ((*a as u128 * c as u128) % *d as u128) as u64)
            .collect()
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.invariant_factors)
            .map(|(&a, &d)| d / a.gcd(&d))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// All elements in mixed-radix order (last coordinate fastest).
    pub fn elements(&self) -> Vec<Element> {
        let mut out = vec![vec![]];
        for &d in &self.invariant_factors {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        out
    }

    fn check_order(&self, bound: u64) -> Result<(), DiscFormError> {
        let order = self.order();
        if order > BigInt::from(bound) {
            return Err(DiscFormError::TooLarge(order, bound));
        }
        Ok(())
    }

    /// Rational lift of an element, as a glue vector in lattice coordinates.
    pub fn lift(&self, x: &[u64]) -> Option<GlueVector> {
        if self.lifts.len() != self.rank() {
            return None;
        }
        let n = self.lifts.first().map_or(0, |v| v.len());
        let mut v = vec![BigRational::zero(); n];
        for (c, l) in x.iter().zip(&self.lifts) {
            for (vi, li) in v.iter_mut().zip(l) {
                *vi += li * BigRational::from_integer(BigInt::from(*c));
            }
        }
        let den = v.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let num = v
            .iter()
            .map(|r| (r * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        Some(GlueVector::new(num, den).reduced())
    }
}

fn to_big(x: &[u64]) -> Vec<BigInt> {
    x.iter().map(|&v| BigInt::from(v)).collect()
}

/// `L*/L` with its form. Generators are the columns of the right Smith
/// transform scaled by the inverse invariant factors.
pub fn discriminant_form(l: &Lattice) -> Result<FiniteQuadraticForm, DiscFormError> {
    let g = l.gram();
    let n = l.rank();
    if g.det().is_zero() {
        return Err(DiscFormError::Degenerate);
    }
    let s = smith_normal_form(g);
    let mut orders = Vec::new();
    let mut lifts = Vec::new();
    for i in 0..n {
        let d = &s.d[(i, i)];
        if d.is_one() {
            continue;
        }
        let d64 = d
            .to_u64()
            .ok_or_else(|| DiscFormError::TooLarge(d.clone(), u64::MAX))?;
        orders.push(d64);
        lifts.push(
            s.v.column(i)
                .into_iter()
                .map(|x| BigRational::new(x, d.clone()))
                .collect::<Vec<_>>(),
        );
    }
    let k = orders.len();
    let gram: Vec<Vec<BigRational>> = (0..k)
        .map(|i| (0..k).map(|j| l.pair_rational(&lifts[i], &lifts[j])).collect())
        .collect();
    let modulus = if l.is_even() { QModulus::Two } else { QModulus::One };
    Ok(FiniteQuadraticForm::from_generators(orders, modulus, gram, lifts))
}

/// Elements with `q ≡ 0` (modulo 2, or modulo 1 for odd forms).
pub fn isotropic_elements(f: &FiniteQuadraticForm) -> Result<Vec<Element>, DiscFormError> {
    f.check_order(1_000_000)?;
    Ok(f.elements().into_iter().filter(|x| f.q(x).is_zero()).collect())
}

/// Brute-force isomorphism test of finite quadratic forms.
pub fn fqf_isomorphic(a: &FiniteQuadraticForm, b: &FiniteQuadraticForm) -> Result<bool, DiscFormError> {
    a.check_order(10_000)?;
    b.check_order(10_000)?;
    if a.invariant_factors != b.invariant_factors || a.modulus != b.modulus {
        return Ok(false);
    }
    let k = a.rank();
    if k == 0 {
        return Ok(true);
    }
    let all = b.elements();
    let candidates: Vec<Vec<&Element>> = (0..k)
        .map(|i| {
            let d = a.invariant_factors[i];
            all.iter()
                .filter(|z| d % b.element_order(z) == 0 && b.q(z) == a.q_values[i])
                .collect()
        })
        .collect();
    let mut chosen: Vec<&Element> = Vec::with_capacity(k);
    Ok(extend_iso(a, b, &candidates, &mut chosen))
}

fn extend_iso<'a>(
    a: &FiniteQuadraticForm,
    b: &FiniteQuadraticForm,
    candidates: &[Vec<&'a Element>],
    chosen: &mut Vec<&'a Element>,
) -> bool {
    let j = chosen.len();
    if j == a.rank() {
        return generates(b, chosen);
    }
    for z in &candidates[j] {
        if chosen
            .iter()
            .enumerate()
            .all(|(i, w)| b.b(w, z) == a.pairings[i][j])
        {
            chosen.push(z);
            if extend_iso(a, b, candidates, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn generates(f: &FiniteQuadraticForm, gens: &[&Element]) -> bool {
    let total = f.order().to_u64().unwrap_or(u64::MAX);
    let zero = vec![0u64; f.rank()];
    let mut seen: HashSet<Element> = HashSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = f.add(&x, g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.len() as u64 == total
}

/// The subquotient `x^⊥ / ⟨x⟩` for an isotropic element `x`.
pub fn isotropic_reduction(
    f: &FiniteQuadraticForm,
    x: &[u64],
) -> Result<FiniteQuadraticForm, DiscFormError> {
    if !f.q(x).is_zero() {
        return Err(DiscFormError::NotIsotropic);
    }
    let k = f.rank();
    if k == 0 {
        return Ok(f.clone());
    }
    let xb = to_big(x);
    // x^⊥ as a full-rank sublattice of Z^k
    let unit = |i: usize| -> Vec<BigInt> {
        (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()
    };
    let vals: Vec<BigRational> = (0..k).map(|i| f.raw_b(&unit(i), &xb)).collect();
    let m = vals.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut row: Vec<BigInt> = vals
        .iter()
        .map(|v| (v * BigRational::from_integer(m.clone())).to_integer())
        .collect();
    row.push(m);
    let ker = kernel_basis(&IntMatrix::from_big_rows(vec![row], k + 1));
    let perp: Vec<Vec<BigInt>> = (0..ker.rows()).map(|i| ker.row(i)[..k].to_vec()).collect();
    let perp = row_hermite_form(&IntMatrix::from_big_rows(perp, k));

    // relations d_i e_i and x, in perp coordinates
    let mut rel = Vec::with_capacity(k + 1);
    for i in 0..k {
        let mut r = unit(i);
        r[i] = BigInt::from(f.invariant_factors[i]);
        rel.push(r);
    }
    rel.push(xb);
    let rel = IntMatrix::from_big_rows(rel, k);
    let perp_inv = RatMatrix::from_int(&perp).inverse().expect("full rank");
    let coords = RatMatrix::from_int(&rel)
        .mul(&perp_inv)
        .expect("shapes")
        .to_int()
        .expect("relations lie in the orthogonal subgroup");
    let s = smith_normal_form(&coords);
    let vinv = s.v.unimodular_inverse().expect("unimodular");

    let mut orders = Vec::new();
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..k {
        let d = &s.d[(i, i)];
        if d.is_one() {
            continue;
        }
        orders.push(d.to_u64().expect("subquotient of a small group"));
        let row = IntMatrix::from_big_rows(vec![vinv.row_vec(i)], k);
        gens.push(row.mul(&perp).expect("shapes").row_vec(0));
    }
    let g = gens.len();
    let gram: Vec<Vec<BigRational>> = (0..g)
        .map(|i| {
            (0..g)
                .map(|j| if i == j { f.raw_q(&gens[i]) } else { f.raw_b(&gens[i], &gens[j]) })
                .collect()
        })
        .collect();
    let lifts = if f.lifts.len() == k {
        gens.iter()
            .map(|c| {
                let n = f.lifts[0].len();
                (0..n)
                    .map(|t| {
                        c.iter()
                            .zip(&f.lifts)
                            .map(|(ci, l)| &l[t] * BigRational::from_integer(ci.clone()))
                            .sum()
                    })
                    .collect()
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(FiniteQuadraticForm::from_generators(orders, f.modulus, gram, lifts))
}

/// Builds a form directly from orders and a rational Gram on generators.
pub fn form_from_gram(
    orders: Vec<u64>,
    modulus: QModulus,
    gram: Vec<Vec<BigRational>>,
) -> FiniteQuadraticForm {
    FiniteQuadraticForm::from_generators(orders, modulus, gram, Vec::new())
}
