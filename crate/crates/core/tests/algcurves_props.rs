use num_bigint::BigInt;
use num_traits::{One, Zero};
use polyexpand::acceptance::corpus::{self, curve_corpus};
use polyexpand::algcurves::{
    implicit_intersection, implicitize, line_containment, translate_intersection_count, ImplicitIntersection,
    ParamCurve, Shift, Transform,
};
use polyexpand::exactmath::{MPoly, Poly};
use polyexpand::{MultiPoly, Rational, UniPoly};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn any_upoly(degs: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = UniPoly> {
    degs.prop_flat_map(|d| (prop::collection::vec(-4i64..=4, d), prop_oneof![-3i64..=-1, 1i64..=3]))
        .prop_map(|(mut c, lead)| {
            c.push(lead);
            Poly::from_ints(&c)
        })
}

fn nonzero_rat() -> impl Strategy<Value = Rational> {
    (prop_oneof![-6i64..=-1, 1i64..=6], 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn negated(curve: &ParamCurve, s: &Shift) -> Shift {
    let back = |f: Transform, v: &Rational| match f {
        Transform::Identity => -v.clone(),
        Transform::LogAbs => v.recip(),
    };
    Shift::new(back(curve.fx(), &s.ax), back(curve.fy(), &s.ay))
}

fn translated(f: &MultiPoly, a: &Rational, b: &Rational) -> MultiPoly {
    let sub = |v: usize, c: &Rational| &MPoly::var(2, v) - &MPoly::constant(2, c.clone());
    f.compose(&[sub(0, a), sub(1, b)])
}

fn count(r: ImplicitIntersection) -> Option<usize> {
    match r {
        ImplicitIntersection::Finite(n) => Some(n),
        ImplicitIntersection::CommonFactor(_) => None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn implicit_equation_vanishes_on_the_curve(p in any_upoly(1..=4), q in any_upoly(1..=4)) {
        let imp = implicitize(&p, &q).unwrap();
        prop_assert!(!imp.f.is_constant());
        prop_assert!(imp.f.eval_uni(&[p.clone(), q.clone()]).is_zero());
        prop_assert!(imp.f.tdeg() <= p.deg().max(q.deg()));
        // Points of the parametrization satisfy F.
        for t in -3i64..=3 {
            let t = Rational::from_integer(t.into());
            prop_assert!(imp.f.eval(&[p.eval(&t), q.eval(&t)]).is_zero());
        }
    }

    #[test]
    fn affine_images_are_lines(p in any_upoly(1..=4), alpha in nonzero_rat(), beta in nonzero_rat()) {
        let q = &p.scale(&alpha) + &Poly::constant(beta);
        let c = ParamCurve::identity(p, q).unwrap();
        prop_assert!(line_containment(&c).is_line());
    }

    #[test]
    fn powers_are_lines_in_log_coordinates(p in any_upoly(1..=3), k in 1usize..=4) {
        let c = ParamCurve::new(p.clone(), p.pow(k), Transform::LogAbs, Transform::LogAbs).unwrap();
        prop_assert!(line_containment(&c).is_line());
    }

    #[test]
    fn translate_count_is_symmetric(idx in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let curves = curve_corpus();
        let c = &curves[idx.index(curves.len())];
        let s = corpus::shift_for(&mut ChaCha8Rng::seed_from_u64(seed), c);
        let fwd = translate_intersection_count(c, &s).unwrap();
        let back = translate_intersection_count(c, &negated(c, &s)).unwrap();
        prop_assert_eq!(fwd.count, back.count);
        prop_assert!(fwd.count <= fwd.bound);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn intersection_is_symmetric_and_translation_invariant(
        seed in any::<u64>(),
        a in -3i64..=3,
        b in -3i64..=3,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = corpus::bivariate_in(&mut rng, 1..=3);
        let g = corpus::bivariate_in(&mut rng, 1..=3);
        prop_assume!(!f.is_constant() && !g.is_constant());
        let base = count(implicit_intersection(&f, &g).unwrap());
        prop_assert_eq!(base, count(implicit_intersection(&g, &f).unwrap()));
        let (a, b) = (Rational::from_integer(a.into()), Rational::from_integer(b.into()));
        let moved = implicit_intersection(&translated(&f, &a, &b), &translated(&g, &a, &b)).unwrap();
        prop_assert_eq!(base, count(moved));
    }
}

#[test]
fn unit_circle_meets_axes_twice() {
    let circle = &(&MPoly::var(2, 0).pow(2) + &MPoly::var(2, 1).pow(2)) - &MPoly::one(2);
    let x_axis = MPoly::var(2, 1);
    assert_eq!(count(implicit_intersection(&circle, &x_axis).unwrap()), Some(2));
    let tangent = &MPoly::var(2, 1) - &MPoly::constant(2, Rational::one());
    assert_eq!(count(implicit_intersection(&circle, &tangent).unwrap()), Some(1));
    let far = &MPoly::var(2, 1) - &MPoly::constant(2, rat(2, 1));
    assert_eq!(count(implicit_intersection(&circle, &far).unwrap()), Some(0));
}
