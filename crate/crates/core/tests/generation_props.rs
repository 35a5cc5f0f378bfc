//! Invariants of the generation certificates: spanning verdicts at random
//! points, agreement between the two exact rank routines, and the wedge
//! selection producing the advertised rank.

mod common;

use unihyp_core::generation::{select_wedge_fields, span_check};
use unihyp_core::linalg::rank_fraction_free;
use unihyp_core::sampling::{random_point_nonzero_params, random_tangent_frame, rng_from_seed};
use unihyp_core::universal::build_universal_equation;

#[test]
fn span_verdicts_at_random_points() {
    let mut rng = rng_from_seed(5150);
    for &(n, d) in &[(1, 2), (2, 2), (2, 3), (3, 2), (3, 3)] {
        let eq = build_universal_equation(n, d).unwrap();
        for _ in 0..10 {
            let p = random_point_nonzero_params(&eq, &mut rng);
            let cert = span_check(&eq, &p).unwrap();
            assert!(cert.verdict, "span failed at n={n} d={d}");
            assert_eq!(cert.rank, n + eq.nd());
        }
    }
}

#[test]
fn rank_routines_agree_on_certificates() {
    let mut rng = rng_from_seed(99);
    let eqs: Vec<_> = [(1, 2), (2, 2), (2, 3), (3, 2)]
        .iter()
        .map(|&(n, d)| build_universal_equation(n, d).unwrap())
        .collect();
    for i in 0..50 {
        let eq = &eqs[i % eqs.len()];
        let p = random_point_nonzero_params(eq, &mut rng);
        let cert = span_check(eq, &p).unwrap();
        assert_eq!(
            rank_fraction_free(&cert.matrix),
            common::gauss_rank(&cert.matrix),
            "rank mismatch at n={} d={}",
            eq.n(),
            eq.d()
        );
    }
}

#[test]
fn wedge_selection_extends_the_frame() {
    let mut rng = rng_from_seed(31);
    let eq = build_universal_equation(3, 2).unwrap();
    let p = random_point_nonzero_params(&eq, &mut rng);
    let frame_size = 1 + eq.nd();
    let jac = random_tangent_frame(&eq, &p, frame_size, &mut rng).unwrap();
    let sel = select_wedge_fields(&eq, &p, jac).unwrap();
    assert!(sel.wedge_nonzero);
    assert_eq!(sel.chosen.len(), 1); // n - 2

    // the extended family has exact rank (1 + N_d) + (n - 2)
    let mut family = sel.jac.clone();
    for descriptor in &sel.chosen {
        let field = descriptor.materialize(&eq).unwrap();
        let row: Vec<num_rational::BigRational> = field
            .evaluate(&p)
            .unwrap()
            .into_iter()
            .map(|s| s.as_rational().unwrap().clone())
            .collect();
        family.push(row);
    }
    assert_eq!(rank_fraction_free(&family), frame_size + 1);
}
