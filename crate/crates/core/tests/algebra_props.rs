use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use verifier_core::exact_linalg::IntMatrix;
use verifier_core::hilbert_liaison::{
    ci_forms_count, ci_hilbert_poly, curve_hp, liaison_link, residual_hp, CIProfile, HilbertPolynomial,
};
use verifier_core::lattices::SublatticeEmbedding;
use verifier_core::mukai_twisted::{
    b_kernel_sublattice, exp_b, gram_of_mukai, k3_lattice, mukai_pairing, BField, MukaiVector, K3_RANK,
};
use verifier_core::scroll_calculus::{
    balanced_quotient_splitting, h0_splitting, scroll_profile_invariants, ScrollProfile, SplittingType,
};

fn rational(range: i64) -> impl Strategy<Value = BigRational> {
    (-range..=range, 1i64..=6).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn mukai_vector() -> impl Strategy<Value = MukaiVector> {
    (rational(9), prop::collection::vec(rational(9), K3_RANK), rational(9)).prop_map(|(r, d, s)| MukaiVector::new(r, d, s))
}

fn b_field() -> impl Strategy<Value = BField> {
    prop::collection::vec(rational(5), K3_RANK).prop_map(|coords| BField { coords })
}

fn ci_profile() -> impl Strategy<Value = CIProfile> {
    (2usize..6).prop_flat_map(|n| {
        prop::collection::vec(1u32..5, 1..n).prop_map(move |d| CIProfile::new(n, &d).unwrap())
    })
}

/// Curve complete intersections in P^n.
fn curve_ci() -> impl Strategy<Value = CIProfile> {
    (3usize..5).prop_flat_map(|n| prop::collection::vec(2u32..4, n - 1).prop_map(move |d| CIProfile::new(n, &d).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exp_b_preserves_pairing(x in mukai_vector(), y in mukai_vector(), b in b_field()) {
        prop_assert_eq!(mukai_pairing(&exp_b(&x, &b), &exp_b(&y, &b)), mukai_pairing(&x, &y));
    }

    #[test]
    fn exp_b_is_a_group_action(x in mukai_vector(), b1 in b_field(), b2 in b_field()) {
        prop_assert_eq!(exp_b(&exp_b(&x, &b2), &b1), exp_b(&x, &b1.add(&b2)));
        prop_assert_eq!(exp_b(&x, &BField::zero()), x);
    }

    #[test]
    fn mukai_gram_is_symmetric(vs in prop::collection::vec(mukai_vector(), 1..5)) {
        prop_assert!(gram_of_mukai(&vs).is_symmetric());
    }

    #[test]
    fn b_kernel_index_divides_denominator(b in b_field()) {
        let ambient = SublatticeEmbedding::new(k3_lattice(), IntMatrix::identity(K3_RANK)).unwrap();
        let l = k3_lattice();
        let denom = (0..K3_RANK).fold(BigInt::one(), |acc, i| {
            let mut e = vec![BigRational::zero(); K3_RANK];
            e[i] = BigRational::one();
            acc.lcm(l.pair_rational(&b.coords, &e).denom())
        });
        let (kernel, index) = b_kernel_sublattice(&b, &ambient);
        prop_assert!((&denom % &index).is_zero());
        prop_assert_eq!(kernel.rank(), K3_RANK);
    }

    #[test]
    fn ci_hilbert_polynomials_are_integer_valued(p in ci_profile()) {
        let hp = ci_hilbert_poly(&p).unwrap();
        prop_assert!(hp.is_integer_valued_on(-3..=6));
        prop_assert_eq!(hp.degree(), Some(p.dimension()));
    }

    /// χ(O_X) = 1 + (−1)^dim h⁰(ω_X) with ω_X = O(k); h⁰ vanishes for k < 0.
    #[test]
    fn ci_constant_term(p in ci_profile()) {
        let hp = ci_hilbert_poly(&p).unwrap();
        let k = p.canonical_twist();
        let top = if k >= 0 { ci_forms_count(&p, k) } else { BigInt::zero() };
        let sign = if p.dimension() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        prop_assert_eq!(hp.eval_integer(0), Some(BigInt::one() + sign * top));
    }

    #[test]
    fn residual_is_an_involution(total in prop::collection::vec(-20i64..20, 3), kept in prop::collection::vec(-20i64..20, 3), cond in prop::collection::vec(-20i64..20, 2)) {
        let (t, w, c) = (HilbertPolynomial::from_i64(&total), HilbertPolynomial::from_i64(&kept), HilbertPolynomial::from_i64(&cond));
        prop_assert_eq!(residual_hp(&t, &residual_hp(&t, &w, &c), &c), w);
    }

    #[test]
    fn liaison_is_an_involution(p in curve_ci(), d in 1i64..8, g in 0i64..6) {
        prop_assume!(d < p.degree_product());
        if let Ok((d2, g2)) = liaison_link(&p, d, g) {
            prop_assert_eq!(d + d2, p.degree_product());
            prop_assert_eq!(liaison_link(&p, d2, g2), Ok((d, g)));
        }
    }

    #[test]
    fn curve_polynomials_are_integer_valued(d in 1u32..40, g in -3i64..40) {
        let hp = curve_hp(d, g);
        prop_assert!(hp.is_integer_valued_on(-3..=6));
        prop_assert_eq!(hp.eval_integer(0), Some(BigInt::from(1 - g)));
    }

    #[test]
    fn scroll_moduli_agree(r in 2i64..=6, s_off in 0i64..6, a in 1i64..=6) {
        let s = 1 + s_off % r;
        let inv = scroll_profile_invariants(&ScrollProfile::new(r, s, a).unwrap());
        prop_assert_eq!(inv.moduli1, inv.moduli2);
        prop_assert_eq!(inv.moduli1, inv.n - r * r + 2 * r - 2);
    }

    #[test]
    fn dual_sections(r in 2i64..=6, s_off in 0i64..6, a in 1i64..=6) {
        let s = 1 + s_off % r;
        let p = ScrollProfile::new(r, s, a).unwrap();
        prop_assert_eq!(h0_splitting(&p.dual_bundle()), r * (a + 2) - s);
    }

    #[test]
    fn quotient_splitting_shape(degrees in prop::collection::vec(-4i64..12, 2..7)) {
        let e = SplittingType::new(&degrees).unwrap();
        let q = balanced_quotient_splitting(&e, e.rank() - 1);
        prop_assert_eq!(q.degree(), e.degree() + 2);
        prop_assert_eq!(q.rank(), e.rank() - 1);
        prop_assert!(q.is_balanced());
    }
}
