use nijenhuis::calculus::random::{random_form, random_vvf};
use nijenhuis::calculus::{
    fn_bracket, graded_commutator, insertion, lie_derivative, nijenhuis_torsion, rn_bracket, Chart, Insertion,
    LieDerivative, VectorValuedForm,
};
use nijenhuis::scalar::{parse_expr, GaussianRational, Poly, ScalarExpr};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const NAMES: [&str; 3] = ["x", "y", "z"];

fn gaussian(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(BigRational::from_integer(BigInt::from(re)), BigRational::from_integer(BigInt::from(im)))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -4i64..=4, -1i64..=1), 0..5).prop_map(|terms| {
        Poly::from_terms(3, terms.into_iter().map(|((a, b, c), re, im)| (vec![a, b, c], gaussian(re, im))))
    })
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn expr() -> impl Strategy<Value = ScalarExpr> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| ScalarExpr::from_parts(n, d).expect("nonzero denominator"))
}

fn chart(dim: usize) -> Chart {
    Chart::new(&NAMES[..dim]).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn half(chart: &Chart) -> ScalarExpr {
    chart.int(2).inv().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_a_commutative_group(a in expr(), b in expr(), c in expr()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &ScalarExpr::zero(3), a.clone());
    }

    #[test]
    fn multiplication_is_commutative_associative_and_distributive(a in expr(), b in expr(), c in expr()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &ScalarExpr::one(3), a.clone());
    }

    #[test]
    fn nonzero_elements_are_invertible(a in expr()) {
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn canonical_form_is_unique(n in poly(), d in nonzero_poly(), k in nonzero_poly()) {
        // n/d and (nk)/(dk) are the same element and must share a representation.
        let plain = ScalarExpr::from_parts(n.clone(), d.clone()).unwrap();
        let padded = ScalarExpr::from_parts(n.mul(&k), d.mul(&k)).unwrap();
        prop_assert_eq!(plain.numerator(), padded.numerator());
        prop_assert_eq!(plain.denominator(), padded.denominator());
    }

    #[test]
    fn partials_obey_leibniz_and_commute(a in expr(), b in expr(), i in 0usize..3, j in 0usize..3) {
        prop_assert_eq!((&a * &b).partial(i), &(&a.partial(i) * &b) + &(&a * &b.partial(i)));
        prop_assert_eq!(a.partial(i).partial(j), a.partial(j).partial(i));
    }

    #[test]
    fn render_then_parse_is_identity(a in expr()) {
        let text = a.render(&NAMES.map(String::from));
        prop_assert_eq!(parse_expr(&text, &NAMES).unwrap(), a);
    }

    #[test]
    fn d_squares_to_zero(seed in any::<u64>(), dim in 1usize..=3, p in 0usize..3) {
        let c = chart(dim);
        let w = random_form(&c, p.min(dim), 2, &mut rng(seed));
        prop_assert!(w.d().d().is_zero());
    }

    #[test]
    fn half_self_bracket_is_torsion(seed in any::<u64>(), dim in 2usize..=3) {
        let c = chart(dim);
        let n = random_vvf(&c, 1, 2, &mut rng(seed));
        prop_assert_eq!(fn_bracket(&n, &n).unwrap().scale(&half(&c)), nijenhuis_torsion(&n).unwrap());
    }

    #[test]
    fn fn_bracket_is_graded_antisymmetric(seed in any::<u64>(), k in 0usize..=2, l in 0usize..=2) {
        let c = chart(3);
        let mut r = rng(seed);
        let a = random_vvf(&c, k, 1, &mut r);
        let b = random_vvf(&c, l, 1, &mut r);
        let ab = fn_bracket(&a, &b).unwrap();
        let ba = fn_bracket(&b, &a).unwrap();
        let expected = if (k * l) % 2 == 0 { ba.neg() } else { ba };
        prop_assert_eq!(ab, expected);
    }

    #[test]
    fn identity_is_central_for_fn(seed in any::<u64>(), k in 0usize..=2) {
        let c = chart(3);
        let a = random_vvf(&c, k, 2, &mut rng(seed));
        prop_assert!(fn_bracket(&VectorValuedForm::identity(&c), &a).unwrap().is_zero());
    }

    #[test]
    fn insertions_commute_to_the_rn_bracket(seed in any::<u64>(), k in 1usize..=2, l in 1usize..=2, p in 1usize..=3) {
        let c = chart(3);
        let mut r = rng(seed);
        let a = random_vvf(&c, k, 1, &mut r);
        let b = random_vvf(&c, l, 1, &mut r);
        let w = random_form(&c, p, 1, &mut r);
        let lhs = graded_commutator(&Insertion(a.clone()), &Insertion(b.clone()), &w).unwrap();
        let rhs = insertion(&rn_bracket(&a, &b).unwrap(), &w).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_derivations_commute_to_the_fn_bracket(seed in any::<u64>(), k in 0usize..=1, l in 0usize..=1, p in 0usize..=2) {
        let c = chart(3);
        let mut r = rng(seed);
        let a = random_vvf(&c, k, 1, &mut r);
        let b = random_vvf(&c, l, 1, &mut r);
        let w = random_form(&c, p, 1, &mut r);
        let lhs = graded_commutator(&LieDerivative(a.clone()), &LieDerivative(b.clone()), &w).unwrap();
        let rhs = lie_derivative(&fn_bracket(&a, &b).unwrap(), &w).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
