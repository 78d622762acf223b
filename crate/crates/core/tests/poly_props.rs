use proptest::prelude::*;
use t3f::poly2::{binomial_closed_form, TruncPoly};

fn poly(n: usize) -> impl Strategy<Value = TruncPoly> {
    any::<u64>().prop_map(move |b| TruncPoly::reduced(b, n).unwrap())
}

fn triple() -> impl Strategy<Value = (TruncPoly, TruncPoly, TruncPoly)> {
    (1usize..=64).prop_flat_map(|n| (poly(n), poly(n), poly(n)))
}

/// Polynomials with zero constant term, for substitution.
fn nilpotent(n: usize) -> impl Strategy<Value = TruncPoly> {
    any::<u64>().prop_map(move |b| TruncPoly::reduced(b & !1, n).unwrap())
}

proptest! {
    #[test]
    fn ring_laws((a, b, c) in triple()) {
        prop_assert_eq!(a.trunc_add(&b).unwrap(), b.trunc_add(&a).unwrap());
        prop_assert_eq!(a.trunc_mul(&b).unwrap(), b.trunc_mul(&a).unwrap());
        prop_assert_eq!(a.trunc_mul(&b).unwrap().trunc_mul(&c).unwrap(), a.trunc_mul(&b.trunc_mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.trunc_mul(&b.trunc_add(&c).unwrap()).unwrap(),
            a.trunc_mul(&b).unwrap().trunc_add(&a.trunc_mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.trunc_add(&a).unwrap().is_zero());
    }

    #[test]
    fn freshmans_dream((a, b, _) in triple()) {
        let sum = a.trunc_add(&b).unwrap();
        prop_assert_eq!(sum.frobenius(), a.frobenius().trunc_add(&b.frobenius()).unwrap());
        prop_assert_eq!(a.frobenius(), a.trunc_mul(&a).unwrap());
    }

    #[test]
    fn pow_paths_agree((a, _, _) in triple(), k in 0u64..5000) {
        prop_assert_eq!(a.pow(k), a.pow_frobenius(k));
    }

    #[test]
    fn pow_is_repeated_product(n in 1usize..=16, bits in any::<u64>(), k in 0u64..40) {
        let a = TruncPoly::reduced(bits, n).unwrap();
        let naive = (0..k).fold(TruncPoly::one(n).unwrap(), |acc, _| acc.trunc_mul(&a).unwrap());
        prop_assert_eq!(a.pow(k), naive);
    }

    #[test]
    fn compose_is_associative(
        (p, q, r) in (1usize..=24).prop_flat_map(|n| (poly(n), nilpotent(n), nilpotent(n)))
    ) {
        let left = p.compose(&q).unwrap().compose(&r).unwrap();
        let right = p.compose(&q.compose(&r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn compose_is_a_ring_morphism(
        (a, b, q) in (1usize..=24).prop_flat_map(|n| (poly(n), poly(n), nilpotent(n)))
    ) {
        let ab = a.trunc_mul(&b).unwrap().compose(&q).unwrap();
        prop_assert_eq!(ab, a.compose(&q).unwrap().trunc_mul(&b.compose(&q).unwrap()).unwrap());
    }

    #[test]
    fn unit_inverse(n in 1usize..=64, bits in any::<u64>()) {
        let f = TruncPoly::reduced(bits | 1, n).unwrap();
        let g = f.inverse_unit().unwrap();
        prop_assert!(f.trunc_mul(&g).unwrap().is_one());
    }

    #[test]
    fn binomial_closed_form_matches_power(n in 2usize..=40, k in 1usize..40, alpha in 0u64..200) {
        prop_assume!(k < n);
        let base = TruncPoly::from_exponents(&[0, k], n).unwrap();
        prop_assert_eq!(base.pow(alpha), binomial_closed_form(k, alpha, n).unwrap());
    }
}
