//! Integral lattices given by symmetric Gram matrices, with the sublattice
//! and overlattice operations needed for the discriminant-24 chain.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact_linalg::{
    dot, gcd_all, kernel_basis, row_hermite_form, signature_of_symmetric, smith_normal_form,
    IntMatrix, LinalgError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("unknown standard lattice `{0}`")]
    UnknownName(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("glue vector does not pair integrally with the lattice")]
    NotIntegralPairing,
    #[error("glue vector has odd or non-integral square")]
    NotEven,
    #[error("glue vector is integral after reduction")]
    TrivialGlue,
    #[error("lattice is not definite")]
    NotDefinite,
    #[error("rank {0} is too large for isometry search")]
    RankTooLarge(usize),
    #[error("basis rows are linearly dependent")]
    DependentBasis,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A lattice presented by its Gram matrix in a fixed basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    gram: IntMatrix,
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gram)
    }
}

impl Lattice {
    pub fn new(gram: IntMatrix) -> Result<Self, LatticeError> {
        if !gram.is_symmetric() {
            return Err(LinalgError::NonSymmetric.into());
        }
        Ok(Lattice { gram })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, LatticeError> {
        Self::new(IntMatrix::from_rows(rows))
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_even(&self) -> bool {
        self.gram.diagonal_entries().iter().all(|x| x.is_even())
    }

    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        dot(x, &self.gram.apply(y))
    }

    /// Pairing of rational vectors.
    pub fn pair_rational(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let n = self.rank();
        let mut acc = BigRational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                let g = &self.gram[(i, j)];
                if g.is_zero() || y[j].is_zero() {
                    continue;
                }
                acc += &x[i] * &y[j] * g;
            }
        }
        acc
    }

    pub fn det(&self) -> BigInt {
        self.gram.det()
    }

    pub fn disc(&self) -> BigInt {
        self.det().abs()
    }

    pub fn negated(&self) -> Lattice {
        Lattice {
            gram: self.gram.neg(),
        }
    }
}

/// Names accepted by [`standard_lattice`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardName {
    U,
    E8Neg,
    A2Like,
    Rank1(i64),
}

impl FromStr for StandardName {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "U" => Ok(StandardName::U),
            "E8neg" => Ok(StandardName::E8Neg),
            "A2like" => Ok(StandardName::A2Like),
            _ => {
                let d = s
                    .strip_prefix("rank1(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|d| d.trim().parse::<i64>().ok())
                    .filter(|&d| d != 0)
                    .ok_or_else(|| LatticeError::UnknownName(s.to_string()))?;
                Ok(StandardName::Rank1(d))
            }
        }
    }
}

/// Negative-definite E8 root lattice (Bourbaki node order, branch at node 4).
fn e8_negative_gram() -> IntMatrix {
    let mut g = IntMatrix::diagonal(&[-2; 8]);
    for (a, b) in [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)] {
        g[(a, b)] = BigInt::one();
        g[(b, a)] = BigInt::one();
    }
    g
}

pub fn standard_lattice(name: StandardName) -> Result<Lattice, LatticeError> {
    let gram = match name {
        StandardName::U => IntMatrix::from_rows(&[[0, 1], [1, 0]]),
        StandardName::E8Neg => e8_negative_gram(),
        StandardName::A2Like => IntMatrix::from_rows(&[[-2, -1], [-1, -2]]),
        StandardName::Rank1(0) => return Err(LatticeError::UnknownName("rank1(0)".into())),
        StandardName::Rank1(d) => IntMatrix::from_rows(&[[d]]),
    };
    Lattice::new(gram)
}

pub fn named(name: &str) -> Result<Lattice, LatticeError> {
    standard_lattice(name.parse()?)
}

pub fn direct_sum(a: &Lattice, b: &Lattice) -> Lattice {
    Lattice {
        gram: a.gram.block_diag(&b.gram),
    }
}

pub fn direct_sum_all<'a>(parts: impl IntoIterator<Item = &'a Lattice>) -> Lattice {
    parts.into_iter().fold(
        Lattice {
            gram: IntMatrix::zeros(0, 0),
        },
        |acc, l| direct_sum(&acc, l),
    )
}

pub fn gram_of(l: &Lattice, vectors: &[Vec<BigInt>]) -> Result<IntMatrix, LatticeError> {
    if let Some(v) = vectors.iter().find(|v| v.len() != l.rank()) {
        return Err(LatticeError::DimensionMismatch(format!(
            "vector of length {} in rank {} lattice",
            v.len(),
            l.rank()
        )));
    }
    let images: Vec<Vec<BigInt>> = vectors.iter().map(|v| l.gram.apply(v)).collect();
    let n = vectors.len();
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = dot(&vectors[i], &images[j]);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeInvariants {
    pub rank: usize,
    pub disc: BigInt,
    /// Sign of the determinant: -1, 0 or 1.
    pub det_sign: i8,
    pub signature: (usize, usize, usize),
    pub is_even: bool,
}

pub fn lattice_invariants(l: &Lattice) -> LatticeInvariants {
    let det = l.det();
    LatticeInvariants {
        rank: l.rank(),
        disc: det.abs(),
        det_sign: if det.is_zero() {
            0
        } else if det.is_positive() {
            1
        } else {
            -1
        },
        signature: signature_of_symmetric(&l.gram).expect("lattice Gram is symmetric"),
        is_even: l.is_even(),
    }
}

/// A sublattice given by basis rows in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SublatticeEmbedding {
    pub ambient: Lattice,
    pub basis: IntMatrix,
}

impl SublatticeEmbedding {
    pub fn new(ambient: Lattice, basis: IntMatrix) -> Result<Self, LatticeError> {
        if basis.rows() > 0 && basis.cols() != ambient.rank() {
            return Err(LatticeError::DimensionMismatch(format!(
                "basis has {} columns, ambient rank {}",
                basis.cols(),
                ambient.rank()
            )));
        }
        if basis.rank() != basis.rows() {
            return Err(LatticeError::DependentBasis);
        }
        Ok(SublatticeEmbedding { ambient, basis })
    }

    pub fn from_vectors(ambient: &Lattice, vectors: &[Vec<BigInt>]) -> Result<Self, LatticeError> {
        Self::new(
            ambient.clone(),
            IntMatrix::from_big_rows(vectors.to_vec(), ambient.rank()),
        )
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// The induced lattice `basis · gram · basisᵀ`.
    pub fn induced(&self) -> Lattice {
        let g = self
            .basis
            .mul(self.ambient.gram())
            .and_then(|m| m.mul(&self.basis.transpose()))
            .expect("shapes checked at construction");
        Lattice { gram: g }
    }
}

pub fn orthogonal_complement(emb: &SublatticeEmbedding) -> SublatticeEmbedding {
    let n = emb.ambient.rank();
    let basis = if emb.rank() == 0 {
        IntMatrix::identity(n)
    } else {
        let m = emb.basis.mul(emb.ambient.gram()).expect("shapes checked");
        kernel_basis(&m)
    };
    SublatticeEmbedding {
        ambient: emb.ambient.clone(),
        basis,
    }
}

/// Primitive closure of the sublattice and its index over the input.
pub fn saturate(emb: &SublatticeEmbedding) -> (SublatticeEmbedding, BigInt) {
    let k = emb.rank();
    if k == 0 {
        return (emb.clone(), BigInt::one());
    }
    let s = smith_normal_form(&emb.basis);
    let vinv = s.v.unimodular_inverse().expect("SNF transform is unimodular");
    let rows: Vec<Vec<BigInt>> = (0..k).map(|i| vinv.row_vec(i)).collect();
    let index: BigInt = s.invariant_factors().iter().product();
    let closure = SublatticeEmbedding {
        ambient: emb.ambient.clone(),
        basis: row_hermite_form(&IntMatrix::from_big_rows(rows, emb.ambient.rank())),
    };
    (closure, index)
}

/// A rational vector `numerator / denominator` in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueVector {
    pub numerator: Vec<BigInt>,
    pub denominator: BigInt,
}

impl GlueVector {
    pub fn new(numerator: Vec<BigInt>, denominator: BigInt) -> Self {
        GlueVector {
            numerator,
            denominator,
        }
    }

    pub fn from_i64(numerator: &[i64], denominator: i64) -> Self {
        GlueVector::new(
            numerator.iter().map(|&x| BigInt::from(x)).collect(),
            BigInt::from(denominator),
        )
    }

    /// Lowest-terms form with a positive denominator.
    pub fn reduced(&self) -> GlueVector {
        let g = gcd_all(self.numerator.iter().chain(std::iter::once(&self.denominator)));
        let sign = if self.denominator.is_negative() { -1 } else { 1 };
        let g: BigInt = g * BigInt::from(sign);
        if g.is_zero() {
            return self.clone();
        }
        GlueVector {
            numerator: self.numerator.iter().map(|x| x / &g).collect(),
            denominator: &self.denominator / &g,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Overlattice {
    pub lattice: Lattice,
    /// Basis of the overlattice as rows, in units of `1/denominator` of the
    /// original coordinates.
    pub basis_numerators: IntMatrix,
    pub denominator: BigInt,
    pub index: BigInt,
}

pub fn overlattice_from_glue(l: &Lattice, glue: &GlueVector) -> Result<Overlattice, LatticeError> {
    let n = l.rank();
    if glue.numerator.len() != n {
        return Err(LatticeError::DimensionMismatch("glue vector length".into()));
    }
    let g = glue.reduced();
    if g.denominator.is_zero() {
        return Err(LatticeError::DimensionMismatch("zero denominator".into()));
    }
    if g.denominator.is_one() {
        return Err(LatticeError::TrivialGlue);
    }
    let den = &g.denominator;
    let image = l.gram.apply(&g.numerator);
    if image.iter().any(|x| !x.is_multiple_of(den)) {
        return Err(LatticeError::NotIntegralPairing);
    }
    let self_pair = dot(&g.numerator, &image);
    let den2 = den * den;
    if !self_pair.is_multiple_of(&den2) {
        return Err(LatticeError::NotIntegralPairing);
    }
    if !(self_pair / &den2).is_even() {
        return Err(LatticeError::NotEven);
    }

    let mut gens = IntMatrix::identity(n).scale(den);
    gens = gens.vstack(&IntMatrix::from_big_rows(vec![g.numerator.clone()], n))?;
    let basis = row_hermite_form(&gens);
    let raw = basis.mul(&l.gram)?.mul(&basis.transpose())?;
    let mut gram = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let (q, r) = raw[(i, j)].div_rem(&den2);
            debug_assert!(r.is_zero());
            gram[(i, j)] = q;
        }
    }
    Ok(Overlattice {
        lattice: Lattice { gram },
        basis_numerators: basis,
        denominator: den.clone(),
        index: den.clone(),
    })
}

/// `T · gram(l1) · Tᵀ == gram(l2)` with `T` unimodular.
pub fn verify_isometry(l1: &Lattice, l2: &Lattice, t: &IntMatrix) -> Result<bool, LatticeError> {
    let n = l1.rank();
    if l2.rank() != n || t.rows() != n || t.cols() != n {
        return Err(LatticeError::DimensionMismatch(format!(
            "ranks {} and {} with a {}x{} map",
            n,
            l2.rank(),
            t.rows(),
            t.cols()
        )));
    }
    if t.det().abs() != BigInt::one() {
        return Ok(false);
    }
    Ok(t.mul(&l1.gram)?.mul(&t.transpose())? == l2.gram)
}

/// Nonzero vectors `x` with `xᵀ G x == target`, for positive-definite `G`,
/// in lexicographic order.
pub fn vectors_of_norm(gram: &[Vec<i64>], target: i64) -> Vec<Vec<i64>> {
    let n = gram.len();
    if n == 0 || target <= 0 {
        return Vec::new();
    }
    // q(x) = Σ d_i (x_i + Σ_{j>i} mu_ij x_j)^2
    let mut q = vec![vec![0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            q[i][j] = gram[i][j] as f64;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    let d: Vec<f64> = (0..n).map(|i| q[i][i]).collect();
    let mu = |i: usize, j: usize| q[i][j];

    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    enumerate_level(n - 1, target as f64, &d, &mu, &mut x, gram, target, &mut out);
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn enumerate_level(
    i: usize,
    remaining: f64,
    d: &[f64],
    mu: &dyn Fn(usize, usize) -> f64,
    x: &mut Vec<i64>,
    gram: &[Vec<i64>],
    target: i64,
    out: &mut Vec<Vec<i64>>,
) {
    let n = d.len();
    let center: f64 = -(i + 1..n).map(|j| mu(i, j) * x[j] as f64).sum::<f64>();
    let radius = (remaining.max(0.0) / d[i]).sqrt();
    let lo = (center - radius - 1e-7).ceil() as i64;
    let hi = (center + radius + 1e-7).floor() as i64;
    for v in lo..=hi {
        x[i] = v;
        let t = v as f64 - center;
        let rest = remaining - d[i] * t * t;
        if rest < -1e-6 {
            continue;
        }
        if i == 0 {
            if x.iter().all(|&c| c == 0) {
                continue;
            }
            let norm: i64 = (0..n)
                .map(|a| (0..n).map(|b| x[a] * gram[a][b] * x[b]).sum::<i64>())
                .sum();
            if norm == target {
                out.push(x.clone());
            }
        } else {
            enumerate_level(i - 1, rest, d, mu, x, gram, target, out);
        }
    }
    x[i] = 0;
}

/// Searches for `T` with `T · gram(l1) · Tᵀ == gram(l2)` between definite
/// lattices of rank at most 8. Deterministic: returns the first match in
/// lexicographic order of the candidate lists.
pub fn find_isometry_definite(l1: &Lattice, l2: &Lattice) -> Result<Option<IntMatrix>, LatticeError> {
    for l in [l1, l2] {
        if l.rank() > 8 {
            return Err(LatticeError::RankTooLarge(l.rank()));
        }
        let (p, m, z) = signature_of_symmetric(l.gram())?;
        if z != 0 || (p != 0 && m != 0) {
            return Err(LatticeError::NotDefinite);
        }
    }
    let n = l1.rank();
    if l2.rank() != n || l1.det() != l2.det() {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(IntMatrix::identity(0)));
    }
    let (s1, _, _) = signature_of_symmetric(l1.gram())?;
    let (s2, _, _) = signature_of_symmetric(l2.gram())?;
    if (s1 == 0) != (s2 == 0) {
        return Ok(None);
    }
    let flip = s1 == 0;
    let to_i64 = |l: &Lattice| -> Option<Vec<Vec<i64>>> {
        let g = if flip { l.negated() } else { l.clone() };
        g.gram.to_i64_rows()
    };
    let (Some(g1), Some(g2)) = (to_i64(l1), to_i64(l2)) else {
        return Err(LatticeError::DimensionMismatch("Gram entries exceed 64 bits".into()));
    };

    let mut candidates: Vec<Vec<Vec<i64>>> = Vec::with_capacity(n);
    for j in 0..n {
        let norm = g2[j][j];
        if let Some(prev) = (0..j).find(|&k| g2[k][k] == norm) {
            let c = candidates[prev].clone();
            candidates.push(c);
        } else {
            candidates.push(vectors_of_norm(&g1, norm));
        }
    }
    let images: Vec<Vec<Vec<i64>>> = candidates
        .iter()
        .map(|cs| {
            cs.iter()
                .map(|x| (0..n).map(|a| (0..n).map(|b| g1[a][b] * x[b]).sum()).collect())
                .collect()
        })
        .collect();

    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    if search(&candidates, &images, &g2, &mut chosen) {
        let rows: Vec<Vec<i64>> = chosen
            .iter()
            .enumerate()
            .map(|(j, &c)| candidates[j][c].clone())
            .collect();
        let t = IntMatrix::from_rows(&rows);
        if verify_isometry(l1, l2, &t)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

fn search(
    candidates: &[Vec<Vec<i64>>],
    images: &[Vec<Vec<i64>>],
    target: &[Vec<i64>],
    chosen: &mut Vec<usize>,
) -> bool {
    let j = chosen.len();
    let n = target.len();
    if j == n {
        let rows: Vec<Vec<i64>> = chosen
            .iter()
            .enumerate()
            .map(|(k, &c)| candidates[k][c].clone())
            .collect();
        return IntMatrix::from_rows(&rows).det().abs().is_one();
    }
    'cand: for (c, x) in candidates[j].iter().enumerate() {
        for (k, &ck) in chosen.iter().enumerate() {
            let p: i64 = x.iter().zip(&images[k][ck]).map(|(a, b)| a * b).sum();
            if p != target[j][k] {
                continue 'cand;
            }
        }
        chosen.push(c);
        if search(candidates, images, target, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Vectors of the embedded sublattice on which a rational functional takes
/// integral values, and the index of that sublattice.
pub fn integral_value_sublattice(
    emb: &SublatticeEmbedding,
    values_on_basis: &[BigRational],
) -> (SublatticeEmbedding, BigInt) {
    let k = emb.rank();
    assert_eq!(values_on_basis.len(), k);
    let m = values_on_basis
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    // c ∈ Z^k with Σ c_i n_i ≡ 0 (mod m): kernel of [n_1 .. n_k m]
    let mut row: Vec<BigInt> = values_on_basis
        .iter()
        .map(|v| (v * BigRational::from_integer(m.clone())).to_integer())
        .collect();
    row.push(m.clone());
    let ker = kernel_basis(&IntMatrix::from_big_rows(vec![row], k + 1));
    let coeffs: Vec<Vec<BigInt>> = (0..ker.rows()).map(|i| ker.row(i)[..k].to_vec()).collect();
    let coeffs = row_hermite_form(&IntMatrix::from_big_rows(coeffs, k));
    let index = coeffs.det().abs();
    let basis = coeffs.mul(&emb.basis).expect("shapes agree");
    (
        SublatticeEmbedding {
            ambient: emb.ambient.clone(),
            basis,
        },
        index,
    )
}

pub fn to_i64_vec(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(|x| x.to_i64()).collect()
}
