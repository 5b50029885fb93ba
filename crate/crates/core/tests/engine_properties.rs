use std::cmp::Ordering;

use proptest::prelude::*;
use torhilbert_core::homology::free_resolution;
use torhilbert_core::module::syzygies;
use torhilbert_core::{
    FPModule, FreeModule, Ideal, Length, ModuleMap, Monomial, MonomialOrder, OrderKind, Poly, Ring, Subquotient,
};

type PolySpec = (u32, Vec<(u32, u32, i64)>);

fn ring3() -> Ring {
    Ring::standard(&["x", "y", "z"])
}

fn homogeneous(ring: &Ring, degree: u32, terms: &[(u32, u32, i64)]) -> Poly {
    terms.iter().fold(Poly::zero(), |acc, &(a, b, c)| {
        let a = a.min(degree);
        let b = b.min(degree - a);
        let mono = Monomial::from_exponents(&[a, b, degree - a - b]).unwrap();
        ring.poly_add(&acc, &ring.monomial(mono, c))
    })
}

fn poly_strategy(max_degree: u32) -> impl Strategy<Value = PolySpec> {
    (1..=max_degree).prop_flat_map(|d| (Just(d), prop::collection::vec((0..=d, 0..=d, -5i64..=5), 1..5)))
}

fn nonzero(ring: &Ring, spec: &PolySpec) -> Poly {
    let f = homogeneous(ring, spec.0, &spec.1);
    if f.is_zero() {
        ring.poly_pow(&ring.var(0), spec.0)
    } else {
        f
    }
}

fn ideal_of(ring: &Ring, specs: &[PolySpec]) -> Ideal {
    Ideal::new(ring, specs.iter().map(|s| nonzero(ring, s)).collect()).unwrap()
}

fn exponents() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..4, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn ring_axioms(a in poly_strategy(3), b in poly_strategy(3), c in poly_strategy(2)) {
        let r = ring3();
        let (f, g, h) = (homogeneous(&r, a.0, &a.1), homogeneous(&r, b.0, &b.1), homogeneous(&r, c.0, &c.1));
        prop_assert_eq!(r.poly_add(&f, &g), r.poly_add(&g, &f));
        prop_assert_eq!(r.poly_mul(&f, &g), r.poly_mul(&g, &f));
        prop_assert_eq!(r.poly_mul(&r.poly_mul(&f, &g), &h), r.poly_mul(&f, &r.poly_mul(&g, &h)));
        prop_assert_eq!(
            r.poly_mul(&f, &r.poly_add(&g, &h)),
            r.poly_add(&r.poly_mul(&f, &g), &r.poly_mul(&f, &h))
        );
        prop_assert!(r.poly_sub(&f, &f).is_zero());
        prop_assert_eq!(r.poly_mul(&f, &r.one()), f);
    }

    #[test]
    fn orders_are_multiplicative(a in exponents(), b in exponents(), c in exponents(), kind in 0usize..3, perm in 0usize..6) {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let kind = [OrderKind::DegRevLex, OrderKind::DegLex, OrderKind::Block(1)][kind];
        let order = MonomialOrder::new(kind).with_priority(perms[perm].to_vec()).unwrap();
        let (a, b, c) = (
            Monomial::from_exponents(&a).unwrap(),
            Monomial::from_exponents(&b).unwrap(),
            Monomial::from_exponents(&c).unwrap(),
        );
        prop_assert_eq!(order.cmp(&a, &b), order.cmp(&a.mul(&c), &b.mul(&c)));
        prop_assert_ne!(order.cmp(&a.mul(&c), &a), Ordering::Less);
        prop_assert_eq!(order.cmp(&a, &b), order.cmp(&b, &a).reverse());
    }

    #[test]
    fn normal_form_and_membership(gens in prop::collection::vec(poly_strategy(2), 1..4), mults in prop::collection::vec(poly_strategy(2), 3), probe in poly_strategy(4)) {
        let r = ring3();
        let ideal = ideal_of(&r, &gens);
        let gb = ideal.groebner();
        prop_assert!(gb.verify_certificate());
        let combo = ideal.generators().iter().zip(&mults).fold(Poly::zero(), |acc, (g, q)| {
            r.poly_add(&acc, &r.poly_mul(&homogeneous(&r, q.0, &q.1), g))
        });
        prop_assert!(ideal.contains(&combo));
        prop_assert!(gb.normal_form_poly(&combo).is_zero());
        let h = homogeneous(&r, probe.0, &probe.1);
        let once = gb.normal_form_poly(&h);
        prop_assert_eq!(gb.normal_form_poly(&once), once.clone());
        prop_assert!(ideal.contains(&r.poly_sub(&h, &once)));
    }

    #[test]
    fn order_does_not_change_the_ideal(gens in prop::collection::vec(poly_strategy(2), 1..4), probe in poly_strategy(3), kind in 1usize..3) {
        let r = ring3();
        let kind = [OrderKind::DegRevLex, OrderKind::DegLex, OrderKind::Block(1)][kind];
        let other = r.with_order(MonomialOrder::new(kind)).unwrap();
        let i1 = ideal_of(&r, &gens);
        let i2 = Ideal::new(&other, i1.generators().iter().map(|g| other.renormalize(g)).collect()).unwrap();
        let h = homogeneous(&r, probe.0, &probe.1);
        prop_assert_eq!(i1.contains(&h), i2.contains(&other.renormalize(&h)));
        let p3 = Ideal::maximal(&r).power(3);
        let q3 = Ideal::maximal(&other).power(3);
        prop_assert_eq!(i1.sum(&p3).quotient_length(), i2.sum(&q3).quotient_length());
    }

    #[test]
    fn intersection_bounds(a in prop::collection::vec(poly_strategy(2), 1..3), b in prop::collection::vec(poly_strategy(2), 1..3)) {
        let r = ring3();
        let (i, j) = (ideal_of(&r, &a), ideal_of(&r, &b));
        let meet = i.intersect(&j);
        prop_assert!(i.contains_ideal(&meet));
        prop_assert!(j.contains_ideal(&meet));
        prop_assert!(meet.contains_ideal(&i.product(&j)));
        prop_assert!(i.colon(&j).contains_ideal(&i));
    }

    #[test]
    fn length_is_additive(gens in prop::collection::vec(poly_strategy(2), 1..3), extra in poly_strategy(2), d in 2u32..4) {
        let r = ring3();
        let small = ideal_of(&r, &gens).sum(&Ideal::maximal(&r).power(d));
        let big = small.sum(&Ideal::new(&r, vec![nonzero(&r, &extra)]).unwrap());
        let f1 = FreeModule::free(1);
        let as_vectors = |i: &Ideal| i.generators().iter().map(|g| g.as_vector().clone()).collect::<Vec<_>>();
        let middle = Subquotient::new(&r, f1, as_vectors(&big), as_vectors(&small)).unwrap();
        let (total, top) = (small.quotient_length(), big.quotient_length());
        prop_assert!(total.is_finite());
        prop_assert_eq!(total, top + middle.length());
    }

    #[test]
    fn syzygies_compose_to_zero(row in prop::collection::vec(poly_strategy(2), 1..4)) {
        let r = ring3();
        let cols = row.iter().map(|s| nonzero(&r, s).into_vector()).collect();
        let map = ModuleMap::from_columns(&r, FreeModule::free(1), cols).unwrap();
        let syz = syzygies(&map);
        prop_assert!(map.compose(&syz).is_zero());
        let second = syzygies(&syz);
        prop_assert!(syz.compose(&second).is_zero());
    }

    #[test]
    fn resolutions_are_exact(gens in prop::collection::vec(poly_strategy(2), 1..4)) {
        let r = ring3();
        let m = FPModule::cyclic(&ideal_of(&r, &gens));
        prop_assert!(free_resolution(&m, 4).verify_exactness());
    }
}

#[test]
fn resolution_of_residue_field_is_koszul() {
    let r = ring3();
    let res = free_resolution(&FPModule::cyclic(&Ideal::maximal(&r)), 4);
    assert!(res.verify_exactness());
    assert_eq!(res.ranks()[..4], [1, 3, 3, 1]);
}

#[test]
fn finite_length_quotient_matches_staircase() {
    let r = ring3();
    let i = Ideal::parse(&r, &["x^2", "y^2", "z^2"]).unwrap();
    assert_eq!(i.quotient_length(), Length::Finite(8));
}
