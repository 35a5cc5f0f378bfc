//! Invariants of the field constructions: exact tangency across the desk
//! range, linearity of the lift, the pointwise annihilation witness, chart
//! degrees, and equality with the brute-force lift oracle.

mod common;

use num_traits::Zero;
use proptest::prelude::*;

use unihyp_core::fields::{lift_field, tangency_check, LinearFieldSpec};
use unihyp_core::generation::generating_set;
use unihyp_core::sampling::{random_point, rng_from_seed};
use unihyp_core::universal::build_universal_equation;

#[test]
fn tangency_holds_across_the_desk_range() {
    for n in 1..=3 {
        for d in 1..=4 {
            let eq = build_universal_equation(n, d).unwrap();
            for alpha in eq.context().params() {
                for j in 1..=n {
                    if alpha.entry(j) >= 1 {
                        let v = unihyp_core::fields::build_basic_field(&eq, alpha, j).unwrap();
                        assert!(
                            tangency_check(&v, &eq).unwrap(),
                            "basic field failed at n={n} d={d} alpha={alpha} j={j}"
                        );
                        assert!(v.chart_degree() <= 1);
                    }
                }
            }
            for spec in LinearFieldSpec::basis(n) {
                let v = lift_field(&spec, &eq).unwrap();
                assert!(
                    tangency_check(&v, &eq).unwrap(),
                    "lift failed at n={n} d={d}"
                );
                assert!(v.chart_degree() <= 1);
            }
        }
    }
}

#[test]
fn evaluated_fields_annihilate_the_differential() {
    let mut rng = rng_from_seed(2024);
    for &(n, d) in &[(1, 2), (2, 2), (2, 3), (3, 2)] {
        let eq = build_universal_equation(n, d).unwrap();
        for _ in 0..5 {
            let point = random_point(&eq, &mut rng);
            let df = point.differential(&eq).unwrap();
            for (descriptor, field) in generating_set(&eq).unwrap() {
                let row = field.evaluate(&point).unwrap();
                let dot = row
                    .iter()
                    .zip(&df)
                    .map(|(a, b)| a.as_rational().unwrap() * b.as_rational().unwrap())
                    .sum::<num_rational::BigRational>();
                assert!(
                    dot.is_zero(),
                    "field {descriptor:?} does not annihilate dF at n={n} d={d}"
                );
            }
        }
    }
}

#[test]
fn lift_agrees_with_the_brute_force_oracle() {
    for n in 1..=2 {
        for d in 1..=3 {
            let eq = build_universal_equation(n, d).unwrap();
            for spec in LinearFieldSpec::basis(n) {
                let closed = lift_field(&spec, &eq).unwrap();
                let oracle = common::brute_force_lift(&spec, &eq);
                assert_eq!(closed, oracle, "lift mismatch at n={n} d={d}");
            }
        }
    }
}

/// Random spec read off `n` random degree-one coefficient polynomials.
fn arb_spec(n: usize) -> impl Strategy<Value = LinearFieldSpec> {
    use unihyp_core::poly::{PolyContext, SparsePoly, Variable};
    use unihyp_core::scalar::{Scalar, ScalarMode};
    prop::collection::vec((-5i64..=5, 1i64..=4), n * (n + 1)).prop_map(move |coeffs| {
        let ctx = PolyContext::chart(n, 1, ScalarMode::Rational).unwrap();
        let rat = |num: i64, den: i64| {
            Scalar::Rational(num_rational::BigRational::new(num.into(), den.into()))
        };
        let mut it = coeffs.into_iter();
        let mut polys = Vec::with_capacity(n);
        for _ in 0..n {
            let (num, den) = it.next().unwrap();
            let mut p = SparsePoly::constant(&ctx, rat(num, den)).unwrap();
            for k in 1..=n {
                let (num, den) = it.next().unwrap();
                let zk = SparsePoly::variable(&ctx, &Variable::z(k)).unwrap();
                p = p.add(&zk.scale(&rat(num, den)).unwrap()).unwrap();
            }
            polys.push(p);
        }
        LinearFieldSpec::from_polys(&polys).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn lift_is_linear_in_the_spec(s1 in arb_spec(2), s2 in arb_spec(2)) {
        let eq = build_universal_equation(2, 2).unwrap();
        let sum_first = lift_field(&s1.add(&s2).unwrap(), &eq).unwrap();
        let lift_then_sum = lift_field(&s1, &eq).unwrap().add(&lift_field(&s2, &eq).unwrap()).unwrap();
        prop_assert_eq!(sum_first, lift_then_sum);
    }
}
