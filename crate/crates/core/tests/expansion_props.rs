use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use polyexpand::acceptance::corpus::curve_corpus;
use polyexpand::exactmath::{parse_mpoly, MPoly, Poly};
use polyexpand::expansion::{
    enr_experiment, fit_exponent, image_set, set_algebra, FiniteSet, ImageChain, PlanarSet, SetOp, SetSpec,
};
use polyexpand::{MultiPoly, Rational, UniPoly};
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn any_set(max: usize) -> impl Strategy<Value = FiniteSet> {
    prop::collection::vec((-20i64..=20, 1i64..=3), 1..=max)
        .prop_map(|v| FiniteSet::new(v.into_iter().map(|(n, d)| rat(n, d))))
}

fn any_mpoly(arity: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=2, arity), -4i64..=4), 1..=4).prop_map(move |terms| {
        MPoly::from_terms(arity, terms.into_iter().map(|(e, c)| (e, Rational::from_integer(c.into()))))
    })
}

fn any_upoly() -> impl Strategy<Value = UniPoly> {
    (prop::collection::vec(-5i64..=5, 1..=3), 1i64..=3)
        .prop_map(|(mut c, lead)| {
            c.push(lead);
            Poly::from_ints(&c)
        })
}

/// Every tuple evaluated through `MPoly::eval`.
fn naive_image(p: &MultiPoly, sets: &[FiniteSet]) -> BTreeSet<Rational> {
    let mut out = BTreeSet::new();
    let mut point = Vec::new();
    fn rec(p: &MultiPoly, sets: &[FiniteSet], point: &mut Vec<Rational>, out: &mut BTreeSet<Rational>) {
        if point.len() == sets.len() {
            out.insert(p.eval(point));
            return;
        }
        for a in sets[point.len()].elements() {
            point.push(a.clone());
            rec(p, sets, point, out);
            point.pop();
        }
    }
    rec(p, sets, &mut point, &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn image_set_matches_pointwise_evaluation(p in any_mpoly(2), a in any_set(6), b in any_set(6)) {
        let got = image_set(&p, &[a.clone(), b.clone()]).unwrap();
        let want: Vec<Rational> = naive_image(&p, &[a, b]).into_iter().collect();
        prop_assert_eq!(got.elements(), &want[..]);
    }

    #[test]
    fn image_set_three_variables(p in any_mpoly(3), a in any_set(4), b in any_set(4), c in any_set(4)) {
        let got = image_set(&p, &[a.clone(), b.clone(), c.clone()]).unwrap();
        let want: Vec<Rational> = naive_image(&p, &[a, b, c]).into_iter().collect();
        prop_assert_eq!(got.elements(), &want[..]);
    }

    #[test]
    fn arithmetic_progression_sumset(start in -10i64..=10, step in 1i64..=5, n in 1usize..=40) {
        let a = SetSpec::Ap { start: rat(start, 1), step: rat(step, 1), n }.generate().unwrap();
        let sum = image_set(&parse_mpoly("x1+x2").unwrap(), &[a.clone(), a]).unwrap();
        prop_assert_eq!(sum.len(), 2 * n - 1);
    }

    // Adding elements never shrinks an image.
    #[test]
    fn images_are_monotone(p in any_mpoly(2), a in any_set(5), extra in any_set(3)) {
        let bigger = FiniteSet::new(a.elements().iter().chain(extra.elements()).cloned());
        let small = image_set(&p, &[a.clone(), a]).unwrap();
        let large = image_set(&p, &[bigger.clone(), bigger]).unwrap();
        prop_assert!(small.elements().iter().all(|v| large.contains(v)));
    }

    #[test]
    fn log_abs_sum_is_product_of_absolute_values(a in any_set(6), b in any_set(6)) {
        let want: BTreeSet<Rational> = a
            .elements()
            .iter()
            .filter(|x| !x.is_zero())
            .flat_map(|x| b.elements().iter().filter(|y| !y.is_zero()).map(move |y| (x * y).abs()))
            .collect();
        match set_algebra(&a, &b, SetOp::LogAbsSum) {
            Ok(got) => {
                let want: Vec<Rational> = want.into_iter().collect();
                prop_assert_eq!(got.elements(), &want[..]);
            }
            Err(_) => prop_assert!(want.is_empty()),
        }
    }

    #[test]
    fn sum_and_product_match_definitions(a in any_set(6), b in any_set(6)) {
        let pairs = || a.elements().iter().flat_map(|x| b.elements().iter().map(move |y| (x, y)));
        let sum: BTreeSet<Rational> = pairs().map(|(x, y)| x + y).collect();
        let prod: BTreeSet<Rational> = pairs().map(|(x, y)| x * y).collect();
        prop_assert_eq!(set_algebra(&a, &b, SetOp::Sum).unwrap().len(), sum.len());
        let got = set_algebra(&a, &b, SetOp::Product).unwrap();
        prop_assert_eq!(got.elements(), &prod.into_iter().collect::<Vec<_>>()[..]);
    }

    #[test]
    fn image_chain_counts(p in any_upoly(), a in any_set(12)) {
        let chain = ImageChain::new(&p, &a);
        let image: BTreeSet<Rational> = a.elements().iter().map(|x| p.eval(x)).collect();
        let logs: BTreeSet<Rational> = image.iter().filter(|v| !v.is_zero()).map(|v| v.abs()).collect();
        prop_assert_eq!((chain.set, chain.image, chain.log_abs), (a.len(), image.len(), logs.len()));
        prop_assert!(chain.holds());
    }

    #[test]
    fn set_specs_round_trip(kind in 0..3, x in -9i64..=9, y in 2i64..=5, n in 1usize..=30, seed in any::<u64>()) {
        let spec = match kind {
            0 => SetSpec::Ap { start: rat(x, 2), step: rat(y, 3), n },
            1 => SetSpec::Gp { start: rat(x.max(1), 1), ratio: rat(y, 1), n },
            _ => SetSpec::Rand { seed, n },
        };
        prop_assert_eq!(&SetSpec::parse(&spec.to_string()).unwrap(), &spec);
        prop_assert_eq!(spec.generate().unwrap().len(), n);
    }

    #[test]
    fn fit_recovers_exact_power_laws(e in 1u32..=3, c in 1u64..=5) {
        let samples: Vec<(u64, u64)> = [2u64, 4, 8, 16].iter().map(|&n| (n, c * n.pow(e))).collect();
        let fit = fit_exponent(&samples).unwrap();
        prop_assert_eq!(fit.slope, Rational::from_integer(e.into()));
        prop_assert_eq!(fit.constant, Rational::from_integer(c.into()));
    }
}

// Regression guard: the smallest ratio over the corpus is 775/512, reached by
// (t, t + 1) with one log coordinate at n = 16.
#[test]
fn enr_ratio_stays_above_corpus_minimum() {
    let grid = FiniteSet::from_ints(1..=8);
    let t = PlanarSet::grid(&grid, &grid);
    for c in curve_corpus() {
        for n in [8, 16] {
            let r = enr_experiment(&c, &FiniteSet::from_ints(1..=n), &t).unwrap();
            assert!(r.ratio >= 1.5, "{c:?} n={n} ratio={}", r.ratio);
        }
    }
}
