//! K3 and Mukai lattice arithmetic in a fixed basis, B-field twists, and the
//! lattice chain relating the discriminant-24 cubic to a degree-six K3.
//!
//! Mukai vectors are triples `(r, D, s)`: `r` is the H⁰ coefficient, `D` a
//! class in H², `s` the coefficient of the point class. Sums such as
//! `2 - (v1 + u2 - v2) + [pt]` are read in that order.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::certificate::{Check, Provenance};
use crate::disc_forms::{discriminant_form, fqf_isomorphic, DiscFormError};
use crate::exact_linalg::{big_vec, IntMatrix, RatMatrix};
use crate::lattices::{
    direct_sum_all, gram_of, integral_value_sublattice, lattice_invariants, named,
    orthogonal_complement, overlattice_from_glue, verify_isometry, GlueVector, Lattice,
    LatticeError, SublatticeEmbedding,
};

pub const K3_RANK: usize = 22;

/// Coordinates of the named hyperbolic-plane generators.
pub const U1: usize = 0;
pub const V1: usize = 1;
pub const U2: usize = 2;
pub const V2: usize = 3;
pub const U3: usize = 4;
pub const V3: usize = 5;

/// Sign relating the primitive intersection form on the cubic to the
/// Beauville–Bogomolov form on its variety of lines.
pub const PRIMITIVE_SIGN: i64 = -1;
/// Beauville–Bogomolov square of the Plücker polarization on the variety of lines.
pub const FANO_POLARIZATION_SQUARE: i64 = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MukaiError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    DiscForm(#[from] DiscFormError),
}

/// H²(S, Z) = U ⊕ U ⊕ U ⊕ (−E8) ⊕ (−E8), ordered u1,v1,u2,v2,u3,v3,e1..e8,f1..f8.
pub fn k3_lattice() -> Lattice {
    let u = named("U").expect("standard");
    let e8 = named("E8neg").expect("standard");
    direct_sum_all(&[u.clone(), u.clone(), u, e8.clone(), e8])
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// An integral class in the fixed K3 basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K3Class {
    pub coords: Vec<BigInt>,
}

impl K3Class {
    pub fn zero() -> Self {
        K3Class {
            coords: vec![BigInt::zero(); K3_RANK],
        }
    }

    /// Sparse constructor: `(coordinate index, coefficient)` pairs.
    pub fn from_terms(terms: &[(usize, i64)]) -> Self {
        let mut c = Self::zero();
        for &(i, a) in terms {
            c.coords[i] += a;
        }
        c
    }

    pub fn dot(&self, other: &K3Class) -> BigInt {
        k3_lattice().pair(&self.coords, &other.coords)
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.coords.iter().cloned().map(BigRational::from_integer).collect()
    }
}

/// The degree-six class f = u1 + 3 v1.
pub fn degree_six_class() -> K3Class {
    K3Class::from_terms(&[(U1, 1), (V1, 3)])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BField {
    pub coords: Vec<BigRational>,
}

impl BField {
    pub fn zero() -> Self {
        BField {
            coords: vec![BigRational::zero(); K3_RANK],
        }
    }

    pub fn from_terms(terms: &[(usize, i64)], denominator: i64) -> Self {
        let mut b = Self::zero();
        for &(i, a) in terms {
            b.coords[i] += rat(a, denominator);
        }
        b
    }

    pub fn add(&self, other: &BField) -> BField {
        BField {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn square(&self) -> BigRational {
        let l = k3_lattice();
        l.pair_rational(&self.coords, &self.coords)
    }

    pub fn dot_class(&self, c: &[BigRational]) -> BigRational {
        k3_lattice().pair_rational(&self.coords, c)
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.coords.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }
}

/// The 2-torsion B-field (v1 + u2 − v2)/2.
pub fn twisting_b_field() -> BField {
    BField::from_terms(&[(V1, 1), (U2, 1), (V2, -1)], 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MukaiVector {
    pub r: BigRational,
    pub d: Vec<BigRational>,
    pub s: BigRational,
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self
            .d
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| format!("{x}*{}", basis_label(i)))
            .collect();
        let d = if d.is_empty() { "0".to_string() } else { d.join("+") };
        write!(f, "({}, {}, {})", self.r, d, self.s)
    }
}

fn basis_label(i: usize) -> String {
    match i {
        0..=5 => format!("{}{}", if i % 2 == 0 { "u" } else { "v" }, i / 2 + 1),
        6..=13 => format!("e{}", i - 5),
        _ => format!("f{}", i - 13),
    }
}

impl MukaiVector {
    pub fn new(r: BigRational, d: Vec<BigRational>, s: BigRational) -> Self {
        assert_eq!(d.len(), K3_RANK);
        MukaiVector { r, d, s }
    }

    pub fn integral(r: i64, d: &K3Class, s: i64) -> Self {
        MukaiVector::new(int(r), d.to_rational(), int(s))
    }

    pub fn point() -> Self {
        MukaiVector::integral(0, &K3Class::zero(), 1)
    }

    pub fn is_integral(&self) -> bool {
        self.r.is_integer() && self.s.is_integer() && self.d.iter().all(|x| x.is_integer())
    }

    pub fn add(&self, o: &MukaiVector) -> MukaiVector {
        MukaiVector {
            r: &self.r + &o.r,
            d: self.d.iter().zip(&o.d).map(|(a, b)| a + b).collect(),
            s: &self.s + &o.s,
        }
    }

    pub fn scale(&self, c: &BigRational) -> MukaiVector {
        MukaiVector {
            r: &self.r * c,
            d: self.d.iter().map(|a| a * c).collect(),
            s: &self.s * c,
        }
    }
}

/// ⟨(r1,D1,s1),(r2,D2,s2)⟩ = D1·D2 − r1 s2 − r2 s1.
pub fn mukai_pairing(x: &MukaiVector, y: &MukaiVector) -> BigRational {
    k3_lattice().pair_rational(&x.d, &y.d) - &x.r * &y.s - &y.r * &x.s
}

/// exp(B)(r, D, s) = (r, D + rB, s + B·D + r B²/2).
pub fn exp_b(x: &MukaiVector, b: &BField) -> MukaiVector {
    let l = k3_lattice();
    let bd = l.pair_rational(&b.coords, &x.d);
    let b2 = l.pair_rational(&b.coords, &b.coords);
    MukaiVector {
        r: x.r.clone(),
        d: x.d.iter().zip(&b.coords).map(|(d, bb)| d + &x.r * bb).collect(),
        s: &x.s + bd + &x.r * b2 / int(2),
    }
}

pub fn gram_of_mukai(vectors: &[MukaiVector]) -> RatMatrix {
    let n = vectors.len();
    let mut data = Vec::with_capacity(n * n);
    for a in vectors {
        for b in vectors {
            data.push(mukai_pairing(a, b));
        }
    }
    RatMatrix::from_entries(n, n, data)
}

/// `{x in ambient : B·x ∈ Z}` and its index in the ambient.
pub fn b_kernel_sublattice(b: &BField, ambient: &SublatticeEmbedding) -> (SublatticeEmbedding, BigInt) {
    let l = &ambient.ambient;
    let values: Vec<BigRational> = (0..ambient.rank())
        .map(|i| {
            let row: Vec<BigRational> = ambient
                .basis
                .row(i)
                .iter()
                .cloned()
                .map(BigRational::from_integer)
                .collect();
            l.pair_rational(&b.coords, &row)
        })
        .collect();
    integral_value_sublattice(ambient, &values)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalityEntry {
    pub name: String,
    pub pairing: BigRational,
    pub orthogonal: bool,
}

pub fn orthogonality_report(v: &MukaiVector, others: &[(&str, MukaiVector)]) -> Vec<OrthogonalityEntry> {
    others
        .iter()
        .map(|(name, o)| {
            let p = mukai_pairing(v, o);
            OrthogonalityEntry {
                name: name.to_string(),
                orthogonal: p.is_zero(),
                pairing: p,
            }
        })
        .collect()
}

/// Named Mukai vectors of the degree-six twisted K3 construction.
pub struct TwistedClasses {
    /// 2 − (v1 + u2 − v2)
    pub twisted_unit: MukaiVector,
    pub f: MukaiVector,
    pub point: MukaiVector,
    /// 2 + u1 + 2v1 − u2 + v2
    pub v: MukaiVector,
    /// −6 − u1 + 3u2 − 3v2 + 2[pt]
    pub g: MukaiVector,
    /// 2 + u1 + 2v1 − u2 + v2 + [pt]
    pub e: MukaiVector,
}

pub fn twisted_classes() -> TwistedClasses {
    let f = degree_six_class();
    let twisted_unit = MukaiVector::integral(2, &K3Class::from_terms(&[(V1, -1), (U2, -1), (V2, 1)]), 0);
    let fv = MukaiVector::integral(0, &f, 0);
    let point = MukaiVector::point();
    let v = twisted_unit.add(&fv);
    let g = twisted_unit
        .scale(&int(-3))
        .add(&fv.scale(&int(-1)))
        .add(&point.scale(&int(2)));
    let e = v.add(&point);
    TwistedClasses {
        twisted_unit,
        f: fv,
        point,
        v,
        g,
        e,
    }
}

/// Inputs of [`fano24_chain_with`] that callers may perturb.
#[derive(Clone, Debug)]
pub struct ChainOptions {
    /// Rows are images of h² and W.
    pub involution: IntMatrix,
    /// Denominator of the glue vector on the (8) summand.
    pub glue_denominator: i64,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions {
            involution: residual_involution(),
            glue_denominator: 2,
        }
    }
}

/// h² ↦ h², W ↦ 4h² − W, as rows.
pub fn residual_involution() -> IntMatrix {
    IntMatrix::from_rows(&[[1, 0], [4, -1]])
}

pub fn disc24_lattice() -> Lattice {
    Lattice::from_rows(&[[3, 6], [6, 20]]).expect("symmetric")
}

/// A2like ⊕ (8) ⊕ U ⊕ (−E8)², coordinates a, b, c, u, v, e1..e8, f1..f8.
pub fn rank21_lattice() -> Lattice {
    let e8 = named("E8neg").expect("standard");
    direct_sum_all(&[
        named("A2like").expect("standard"),
        named("rank1(8)").expect("standard"),
        named("U").expect("standard"),
        e8.clone(),
        e8,
    ])
}

/// (−6) ⊕ U ⊕ U ⊕ (−E8)².
pub fn degree_six_primitive_lattice() -> Lattice {
    let u = named("U").expect("standard");
    let e8 = named("E8neg").expect("standard");
    direct_sum_all(&[named("rank1(-6)").expect("standard"), u.clone(), u, e8.clone(), e8])
}

/// Basis change w = 3c + 2(a+b), u2 = c + a, v2 = c + b, identity elsewhere.
pub fn degree_six_certificate() -> IntMatrix {
    let mut t = IntMatrix::identity(21);
    let block = [[2, 2, 3], [1, 0, 1], [0, 1, 1]];
    for (i, row) in block.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            t[(i, j)] = BigInt::from(x);
        }
    }
    t
}

pub fn fano24_chain() -> Result<Vec<Check>, MukaiError> {
    fano24_chain_with(&ChainOptions::default())
}

pub fn fano24_chain_with(opts: &ChainOptions) -> Result<Vec<Check>, MukaiError> {
    use Provenance::*;
    let mut checks = Vec::new();

    let l = disc24_lattice();
    let inv = lattice_invariants(&l);
    checks.push(Check::predicate(
        "disc24_gram",
        "det 24, signature (2,0,0)",
        format!("det {}, signature {:?}", l.det(), inv.signature),
        l.det() == BigInt::from(24) && inv.signature == (2, 0, 0),
        Reference,
        "eqn:disc24",
    ));

    let supplied = verify_isometry(&l, &l, &opts.involution)?;
    checks.push(Check::predicate(
        "involution_isometry",
        "supplied matrix preserves [[3,6],[6,20]]",
        format!("{} -> {}", opts.involution, supplied),
        supplied,
        Reference,
        "eqn:disc24",
    ));
    let residual = residual_involution();
    if opts.involution != residual {
        let residual_ok = verify_isometry(&l, &l, &residual)?
            && residual != IntMatrix::identity(2)
            && residual.mul(&residual).map_err(LatticeError::from)? == IntMatrix::identity(2);
        checks.push(Check::predicate(
            "residual_map_nontrivial_isometry",
            "W -> 4h^2 - W is a nontrivial isometric involution",
            format!("{residual} -> {residual_ok}"),
            residual_ok,
            Reference,
            "eqn:disc24",
        ));
    }

    let primitive = gram_of(&l, &[big_vec(&[1, 0]), big_vec(&[-2, 1])])?;
    checks.push(Check::equal(
        "h2_p_gram",
        &IntMatrix::from_rows(&[[3, 0], [0, 8]]),
        &primitive,
        Reference,
        "BBvarpi",
    ));

    let fano = fano_side_lattice(&primitive)?;
    checks.push(Check::equal(
        "fano_g_varpi_gram",
        &IntMatrix::from_rows(&[[6, 0], [0, -8]]),
        fano.gram(),
        Reference,
        "BBvarpi",
    ));
    let ge = gram_of(&fano, &[big_vec(&[1, 0]), big_vec(&[1, 1])])?;
    checks.push(Check::equal(
        "fano_g_e_gram",
        &IntMatrix::from_rows(&[[6, 6], [6, -2]]),
        &ge,
        Reference,
        "eq:Fano24",
    ));

    let big = rank21_lattice();
    let bi = lattice_invariants(&big);
    let mut num = vec![0i64; 21];
    num[2] = 1;
    let glue = GlueVector::from_i64(&num, opts.glue_denominator);
    let over = overlattice_from_glue(&big, &glue)?;
    let oi = lattice_invariants(&over.lattice);
    let standard_ext = direct_sum_all(&[
        named("A2like")?,
        named("rank1(2)")?,
        named("U")?,
        named("E8neg")?,
        named("E8neg")?,
    ]);
    checks.push(Check::predicate(
        "index_two_extension",
        "rank 21 disc 24 even (2,19,0); extension index 2 disc 6 even = A2like+(2)+U+(-E8)^2",
        format!(
            "rank {} disc {} even {} {:?}; extension index {} disc {} even {} standard {}",
            bi.rank,
            bi.disc,
            bi.is_even,
            bi.signature,
            over.index,
            oi.disc,
            oi.is_even,
            over.lattice == standard_ext
        ),
        bi.rank == 21
            && bi.disc == BigInt::from(24)
            && bi.is_even
            && bi.signature == (2, 19, 0)
            && over.index == BigInt::from(2)
            && oi.disc == BigInt::from(6)
            && oi.is_even
            && over.lattice == standard_ext,
        Reference,
        "i2e",
    ));

    let target = degree_six_primitive_lattice();
    let cert = degree_six_certificate();
    let iso = verify_isometry(&over.lattice, &target, &cert)?;
    let fa = discriminant_form(&over.lattice)?;
    let fb = discriminant_form(&target)?;
    let same = fqf_isomorphic(&fa, &fb)?;
    checks.push(Check::predicate(
        "degree_six_isometry",
        "certificate w=3c+2(a+b), u2=c+a, v2=c+b verifies; discriminant forms isomorphic",
        format!("det {}, verified {}, forms {fa} ~ {fb}: {same}", cert.det(), iso),
        iso && same,
        Reference,
        "eq:deg6lattice",
    ));
    Ok(checks)
}

/// g ↔ h², ϖ = ι(p): the polarization square is replaced and the primitive part changes sign.
pub fn fano_side_lattice(h2_p: &IntMatrix) -> Result<Lattice, LatticeError> {
    let sign = BigInt::from(PRIMITIVE_SIGN);
    let cross = &h2_p[(0, 1)] * &sign;
    Lattice::new(IntMatrix::from_big_rows(
        vec![
            vec![BigInt::from(FANO_POLARIZATION_SQUARE), cross.clone()],
            vec![cross, &h2_p[(1, 1)] * &sign],
        ],
        2,
    ))
}

/// Gram of ⟨h², W, M⟩ and whether `a` is odd.
pub fn criterion_matrix(m: i64, a: i64, s: i64) -> (IntMatrix, bool) {
    (
        IntMatrix::from_rows(&[[3, 6, m], [6, 20, a], [m, a, s]]),
        a.rem_euclid(2) == 1,
    )
}

pub fn p4_embedding_check() -> Vec<Check> {
    use Provenance::*;
    let mukai = Lattice::from_rows(&[[6, 3], [3, -2]]).expect("symmetric");
    let va = gram_of(&mukai, &[big_vec(&[1, -2])]).expect("rank 2")[(0, 0)].clone();
    let control = gram_of(&mukai, &[big_vec(&[1, -1])]).expect("rank 2")[(0, 0)].clone();
    let pic = Lattice::from_rows(&[[2, 0], [0, -8]]).expect("symmetric");
    let gw = gram_of(&pic, &[big_vec(&[3, -2])]).expect("rank 2")[(0, 0)].clone();
    vec![
        Check::equal("v_minus_2a_square", &BigInt::from(-14), &va, Reference, "prop:P4"),
        Check::equal("3g_minus_2varpi_square", &BigInt::from(-14), &gw, Reference, "prop:P4"),
        Check::equal("v_minus_a_square_control", &BigInt::from(-2), &control, Derived, "prop:P4"),
        Check::equal(
            "eightfold_picard_gram",
            &IntMatrix::from_rows(&[[2, 0], [0, -8]]),
            pic.gram(),
            Reference,
            "subsect:HDHM",
        ),
    ]
}

/// The rank-21 sublattice of f^⊥ on which the twisting B-field is integral.
pub fn twisted_transcendental_sublattice() -> (SublatticeEmbedding, BigInt) {
    let k3 = k3_lattice();
    let f = SublatticeEmbedding::from_vectors(&k3, &[degree_six_class().coords]).expect("nonzero");
    let perp = orthogonal_complement(&f);
    b_kernel_sublattice(&twisting_b_field(), &perp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratm(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_int(&IntMatrix::from_rows(rows))
    }

    #[test]
    fn k3_lattice_is_unimodular_even() {
        let inv = lattice_invariants(&k3_lattice());
        assert_eq!(inv.disc, BigInt::one());
        assert!(inv.is_even);
        assert_eq!(inv.signature, (3, 19, 0));
    }

    #[test]
    fn pairing_examples() {
        let one = MukaiVector::integral(1, &K3Class::zero(), 0);
        assert_eq!(mukai_pairing(&one, &MukaiVector::point()), int(-1));
        let f = MukaiVector::integral(0, &degree_six_class(), 0);
        assert_eq!(mukai_pairing(&f, &f), int(6));
        let c = twisted_classes();
        assert_eq!(mukai_pairing(&c.v, &c.v), int(2));
    }

    #[test]
    fn exp_examples() {
        let one = MukaiVector::integral(1, &K3Class::zero(), 0);
        assert_eq!(exp_b(&one, &BField::zero()), one);
        let f = BField {
            coords: degree_six_class().to_rational(),
        };
        assert_eq!(exp_b(&one, &f), MukaiVector::integral(1, &degree_six_class(), 3));
        let u1 = MukaiVector::integral(0, &K3Class::from_terms(&[(U1, 1)]), 0);
        let twisted = exp_b(&u1, &twisting_b_field());
        assert_eq!(twisted.r, int(0));
        assert_eq!(twisted.s, rat(1, 2));
        assert_eq!(twisted.d, u1.d);
    }

    #[test]
    fn twisted_matrices() {
        let c = twisted_classes();
        let m = gram_of_mukai(&[c.twisted_unit.clone(), c.f.clone(), c.point.clone()]);
        assert_eq!(m, ratm(&[&[-2, -1, -2], &[-1, 6, 0], &[-2, 0, 0]]));
        let m = gram_of_mukai(&[c.g.clone(), c.e.clone()]);
        assert_eq!(m, ratm(&[&[6, 6], &[6, -2]]));
        let m = gram_of_mukai(&[c.point.clone(), c.point.clone()]);
        assert_eq!(m, ratm(&[&[0, 0], &[0, 0]]));
        // literal coordinates as printed
        assert_eq!(
            c.g,
            MukaiVector::integral(-6, &K3Class::from_terms(&[(U1, -1), (U2, 3), (V2, -3)]), 2)
        );
        assert_eq!(
            c.e,
            MukaiVector::integral(2, &K3Class::from_terms(&[(U1, 1), (V1, 2), (U2, -1), (V2, 1)]), 1)
        );
    }

    #[test]
    fn b_field_values() {
        let b = twisting_b_field();
        assert_eq!(b.square(), rat(-1, 2));
        assert_eq!(b.dot_class(&degree_six_class().to_rational()), rat(1, 2));
        let f = MukaiVector::integral(0, &degree_six_class(), 0);
        assert_eq!(exp_b(&f, &b).s, rat(1, 2));
    }

    #[test]
    fn b_kernel_indices() {
        let k3 = k3_lattice();
        let f = SublatticeEmbedding::from_vectors(&k3, &[degree_six_class().coords]).unwrap();
        let perp = orthogonal_complement(&f);
        assert_eq!(perp.rank(), 21);
        assert_eq!(perp.induced().disc(), BigInt::from(6));
        let (_, idx) = b_kernel_sublattice(&BField::zero(), &perp);
        assert_eq!(idx, BigInt::one());
        let (sub, idx) = b_kernel_sublattice(&twisting_b_field(), &perp);
        assert_eq!(idx, BigInt::from(2));
        assert_eq!(sub.induced().disc(), BigInt::from(24));
        let whole = SublatticeEmbedding::new(k3.clone(), IntMatrix::identity(22)).unwrap();
        let (_, idx) = b_kernel_sublattice(&twisting_b_field(), &whole);
        assert_eq!(idx, BigInt::from(2));
    }

    #[test]
    fn orthogonality() {
        let c = twisted_classes();
        let rep = orthogonality_report(
            &c.v,
            &[("g", c.g.clone()), ("E", c.e.clone()), ("pt", c.point.clone())],
        );
        assert!(rep[0].orthogonal && rep[1].orthogonal);
        assert_eq!(rep[2].pairing, int(-2));
        assert!(!rep[2].orthogonal);
    }

    #[test]
    fn chain_default_passes() {
        let checks = fano24_chain().unwrap();
        assert_eq!(checks.len(), 7);
        for c in &checks {
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn chain_identity_control() {
        let opts = ChainOptions {
            involution: IntMatrix::identity(2),
            ..Default::default()
        };
        let checks = fano24_chain_with(&opts).unwrap();
        let get = |n: &str| checks.iter().find(|c| c.name == n).unwrap().passed();
        assert_eq!(checks.len(), 8);
        assert!(get("involution_isometry"));
        assert!(get("residual_map_nontrivial_isometry"));
    }

    #[test]
    fn fano_side_extra_classes() {
        let fano = fano_side_lattice(&IntMatrix::from_rows(&[[3, 0], [0, 8]])).unwrap();
        let ee = gram_of(&fano, &[big_vec(&[1, 1]), big_vec(&[1, -1])]).unwrap();
        assert_eq!(ee, IntMatrix::from_rows(&[[-2, 14], [14, -2]]));
    }

    #[test]
    fn chain_bad_glue() {
        let opts = ChainOptions {
            glue_denominator: 3,
            ..Default::default()
        };
        assert_eq!(
            fano24_chain_with(&opts).unwrap_err(),
            MukaiError::Lattice(LatticeError::NotIntegralPairing)
        );
    }

    #[test]
    fn transposed_involution_is_not_an_isometry_in_row_convention() {
        let t = IntMatrix::from_rows(&[[1, 4], [0, -1]]);
        assert!(!verify_isometry(&disc24_lattice(), &disc24_lattice(), &t).unwrap());
        assert!(verify_isometry(&disc24_lattice(), &disc24_lattice(), &t.transpose()).unwrap());
    }

    #[test]
    fn criterion_examples() {
        let (g, ok) = criterion_matrix(0, 1, -2);
        assert!(ok);
        assert_eq!(g, IntMatrix::from_rows(&[[3, 6, 0], [6, 20, 1], [0, 1, -2]]));
        assert!(!criterion_matrix(6, 20, 20).1);
        let (g, ok) = criterion_matrix(0, 3, 0);
        assert!(ok);
        // cofactor expansion along the last row: -3 * (3*3 - 0*6) = -27
        assert_eq!(g.det(), BigInt::from(-27));
        assert!(criterion_matrix(0, -1, 0).1);
    }

    #[test]
    fn p4_values() {
        for c in p4_embedding_check() {
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn remark_normalizations() {
        // r(1 + B + B²/2) needs r = 4 for integrality with this B
        let b = twisting_b_field();
        let unit = MukaiVector::integral(1, &K3Class::zero(), 0);
        let twisted = |r: i64| exp_b(&unit, &b).scale(&int(r));
        assert!(!twisted(2).is_integral());
        assert!(twisted(4).is_integral());
        assert_eq!(mukai_pairing(&twisted(4), &twisted(4)), int(0));
        let c = twisted_classes();
        assert!(c.twisted_unit.is_integral());
        assert_eq!(mukai_pairing(&c.twisted_unit, &c.twisted_unit), int(-2));
    }
}
