use std::sync::OnceLock;

use proptest::prelude::*;
use t3f::autgroup::{
    aut_matrix, aut_matrix_via_multinomial, frobenius_restriction, generate_aut_group,
    inverse_paths, reduction_map, reflection, AutGroup, Endo,
};
use t3f::fields::make_f0;
use t3f::poly2::TruncPoly;
use t3f::qstruct::q_of;

fn groups() -> &'static [AutGroup] {
    static G: OnceLock<Vec<AutGroup>> = OnceLock::new();
    G.get_or_init(|| (2..=8).map(|n| generate_aut_group(n).unwrap()).collect())
}

fn group(n: usize) -> &'static AutGroup {
    &groups()[n - 2]
}

fn element() -> impl Strategy<Value = (usize, u64)> {
    (3usize..=8).prop_flat_map(|n| (Just(n), 0..1u64 << (n - 2)))
}

fn pair() -> impl Strategy<Value = (usize, u32, u32)> {
    (3usize..=8).prop_flat_map(|n| (Just(n), 0..1u32 << (n - 2), 0..1u32 << (n - 2)))
}

proptest! {
    #[test]
    fn inverse_paths_agree((n, alpha) in element()) {
        let e = Endo::from_alpha(n, alpha).unwrap();
        let paths = inverse_paths(&e).unwrap();
        prop_assert!(paths.agree());
        prop_assert!(e.after(&paths.recursion).unwrap() == Endo::identity(n).unwrap());
    }

    #[test]
    fn matrix_paths_agree((n, alpha) in element()) {
        let e = Endo::from_alpha(n, alpha).unwrap();
        let m = aut_matrix(&e).unwrap();
        prop_assert_eq!(&m, &aut_matrix_via_multinomial(&e).unwrap());
        prop_assert!(m.is_unitriangular());
        prop_assert_eq!(m.endo().unwrap(), e);
    }

    #[test]
    fn matrices_reverse_composition((n, a, b) in pair()) {
        let g = group(n);
        let (ea, eb) = (g.endo(a), g.endo(b));
        let ab = ea.after(&eb).unwrap();
        prop_assert_eq!(g.index_of(&ab), Some(g.group().mul(a, b)));
        let (ma, mb) = (aut_matrix(&ea).unwrap(), aut_matrix(&eb).unwrap());
        prop_assert_eq!(aut_matrix(&ab).unwrap(), mb.mul(&ma).unwrap());
    }

    #[test]
    fn reduction_is_a_morphism((n, a, b) in pair(), k in 2usize..=8) {
        prop_assume!(k <= n);
        let g = group(n);
        let small = group(k);
        let map = reduction_map(g, k).unwrap();
        let ab = g.group().mul(a, b);
        prop_assert_eq!(map[ab as usize], small.group().mul(map[a as usize], map[b as usize]));
    }

    #[test]
    fn frobenius_restriction_is_a_morphism((n, a, b) in pair()) {
        prop_assume!(n >= 4);
        let g = group(n);
        let r = frobenius_restriction(g).unwrap();
        let small = group(r.target);
        let ab = g.group().mul(a, b) as usize;
        prop_assert_eq!(r.images[ab], small.group().mul(r.images[a as usize], r.images[b as usize]));
    }
}

#[test]
fn reflection_is_an_involution_given_by_the_hash_of_t() {
    for n in 2..=10 {
        let r = reflection(n).unwrap();
        assert_eq!(r.after(&r).unwrap(), Endo::identity(n).unwrap(), "n = {n}");
        // Q-id 1 is the polynomial t.
        let q = q_of(&make_f0(n).unwrap()).unwrap();
        assert_eq!(u64::from(q.hash(1).unwrap()) << 1, r.p0().bits(), "n = {n}");
        let s = r.p0();
        for m in 0..1u64 << (n - 1) {
            let f = TruncPoly::new(1 | m << 1, n).unwrap();
            let mut image = TruncPoly::one(n).unwrap();
            for i in (1..n).filter(|&i| f.coeff(i)) {
                image = image.trunc_add(&s.pow(i as u64)).unwrap();
            }
            assert_eq!(r.apply(&f).unwrap(), image, "n = {n}, f = {f}");
        }
    }
}
