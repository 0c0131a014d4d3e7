use hypmut::commens::{rotation_orders, HoroballPattern, DEFAULT_TOL};
use hypmut::dehn::{f_hk, min_l_for_radius};
use hypmut::hypcore::{collar_radius, cone_area, geodesic_disk_area, h_threshold, max_length_for_chi};
use hypmut::numeric::integrate;
use hypmut::packing::{GeneralizedCircle, Point};
use hypmut::pretzel::{canonical_form, certify, mutate, CertificationMode, PretzelTuple};
use proptest::prelude::*;

fn odd_entry() -> impl Strategy<Value = i64> {
    (4i64..60).prop_map(|k| 2 * k + 1)
}

/// Valid 5-entry tuples: one even entry and four distinct odd ones, all > 6.
fn family_tuple() -> impl Strategy<Value = PretzelTuple> {
    (
        (4i64..60).prop_map(|k| 2 * k),
        proptest::collection::btree_set(odd_entry(), 4),
        0usize..5,
    )
        .prop_map(|(even, odds, slot)| {
            let mut q: Vec<i64> = odds.into_iter().collect();
            q.insert(slot, even);
            PretzelTuple::new(q)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn half_angle_identity(r in 1e-6f64..10.0) {
        let lhs = (r.cosh() - 1.0) / r.sinh();
        prop_assert!((lhs - (r / 2.0).tanh()).abs() < 1e-12);
    }

    #[test]
    fn cone_area_below_boundary_length(l in 1e-3f64..1e3, r in 1e-3f64..20.0) {
        let a = cone_area(l, r).unwrap();
        prop_assert!(a < l);
        prop_assert!((a - l * (r / 2.0).tanh()).abs() <= 1e-12 * l);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn collar_radius_decreasing(a in 1e-5f64..0.1, b in 1e-5f64..0.1) {
        prop_assume!((a - b).abs() > 1e-9);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(collar_radius(lo).unwrap() > collar_radius(hi).unwrap());
    }

    #[test]
    fn quadrature_halving(a in -2.0f64..0.0, b in 0.1f64..3.0, c in 0.5f64..4.0) {
        let f = |x: f64| (c * x).sin() * (-x * x).exp() + x.cosh();
        let whole = integrate(f, a, b, 1e-13).unwrap();
        let mid = 0.5 * (a + b);
        let halves = integrate(f, a, mid, 1e-13).unwrap() + integrate(f, mid, b, 1e-13).unwrap();
        prop_assert!((whole - halves).abs() < 1e-10);
    }

    #[test]
    fn hk_f_matches_closed_form(z in 0.01f64..0.999) {
        let closed = 3.3957 * (1.0 - z * z) / 2.0 * (1.0 - 2.0 / (1.0 + z * z)).exp();
        prop_assert!((f_hk(z).unwrap() - closed).abs() < 1e-11);
    }

    #[test]
    fn canonical_form_is_dihedral_invariant(t in family_tuple(), k in 0usize..5) {
        let c = canonical_form(&t);
        prop_assert_eq!(canonical_form(&c), c.clone());
        prop_assert_eq!(canonical_form(&t.reversed()), c.clone());
        prop_assert_eq!(canonical_form(&t.rotated(k)), c);
    }

    #[test]
    fn mutation_is_an_involution(t in family_tuple(), a in 1usize..5) {
        prop_assert_eq!(mutate(&mutate(&t, a).unwrap(), a).unwrap(), t);
    }

    #[test]
    fn free_dihedral_action(t in family_tuple()) {
        let images = t.dihedral_images();
        prop_assert_eq!(images.iter().filter(|i| **i == t).count(), 1);
    }

    #[test]
    fn inversion_is_an_involution(
        cx in -3.0f64..3.0, cy in -3.0f64..3.0, r in 0.1f64..2.0,
        px in -3.0f64..3.0, py in -3.0f64..3.0,
    ) {
        let pole = Point::new(px, py);
        let c = GeneralizedCircle::circle(Point::new(cx, cy), r).unwrap();
        let d = ((Point::new(cx, cy) - pole).norm() - r).abs();
        prop_assume!(d > 1e-2);
        let back = c.invert(pole, 1.0, 1e-12).invert(pole, 1.0, 1e-12);
        let (c0, c1) = (c.center().unwrap(), back.center().unwrap());
        prop_assert!((c0 - c1).norm() < 1e-6 * (1.0 + c0.norm()));
        prop_assert!((back.radius().unwrap() - r).abs() < 1e-6 * r.max(1.0));
    }

    #[test]
    fn rectangular_lattices_only_have_half_turns(w in 1.01f64..1.99, s in 0.3f64..30.0) {
        prop_assume!((w - 2.0).abs() > 1e-3);
        let p = HoroballPattern::single_mark([Point::new(w, 0.0), Point::new(0.0, 2.0)]).unwrap();
        let orders: Vec<u32> = rotation_orders(&p.scaled(s), DEFAULT_TOL).unwrap().into_iter().collect();
        prop_assert_eq!(orders, vec![2]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn certify_invariant_under_mutation(t in family_tuple(), a in 1usize..5) {
        let base = certify(&t, CertificationMode::Cusped).unwrap();
        let m = certify(&mutate(&t, a).unwrap(), CertificationMode::Cusped).unwrap();
        prop_assert_eq!(base.thresholds_met, m.thresholds_met);
        prop_assert_eq!(base.mutant_count_enumerated, m.mutant_count_enumerated);
        prop_assert_eq!(base.mutant_count_formula, m.mutant_count_formula);
        prop_assert_eq!(base.volume_bounds, m.volume_bounds);
        prop_assert_eq!(base.preserved_lengths, m.preserved_lengths);
    }
}

#[test]
fn cone_over_geodesic_circle_is_the_disk() {
    for r in [0.1f64, 1.0, 3.0] {
        let circumference = std::f64::consts::TAU * r.sinh();
        let cone = cone_area(circumference, r).unwrap();
        let disk = geodesic_disk_area(r).unwrap();
        assert!((cone - disk).abs() < 1e-12 * disk.max(1.0), "r = {r}");
    }
}

#[test]
fn f32_matches_f64() {
    for chi in [1.0, 2.0, 3.0] {
        let a = h_threshold(chi as f32).unwrap() as f64;
        let b = h_threshold(chi).unwrap();
        assert!((a - b).abs() < 1e-5);
        let a = max_length_for_chi(chi as f32).unwrap() as f64;
        let b = max_length_for_chi(chi).unwrap();
        assert!((a - b).abs() < 1e-5 * b.max(1.0) + 1e-6);
    }
    let a = min_l_for_radius(h_threshold(2.0f32).unwrap()).unwrap() as f64;
    let b = min_l_for_radius(h_threshold(2.0f64).unwrap()).unwrap();
    assert!((a - b).abs() < 1e-2);
}
