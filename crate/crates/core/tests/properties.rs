mod common;

use common::permutation_det;
use detlab_core::{
    cramer_solve, det_cofactor, det_elimination, is_linearly_independent, rank, solve_by_elimination, spans_ambient,
    ElementaryOp, Field, LinearSystem, Matrix, Scalar, VecTuple, Vector,
};
use proptest::prelude::*;

fn arb_field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rational),
        Just(Field::prime(2).unwrap()),
        Just(Field::prime(7).unwrap()),
        Just(Field::prime(2_147_483_647).unwrap()),
    ]
}

fn arb_scalar(field: Field) -> impl Strategy<Value = Scalar> {
    // small numerators keep singular matrices common enough to matter
    (-4i64..=4, 1i64..=5).prop_map(move |(n, d)| match field {
        Field::Rational => field.ratio(n, d).unwrap(),
        Field::Prime(_) => field.integer(n),
    })
}

fn arb_matrix(field: Field, n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(arb_scalar(field), n), n)
        .prop_map(|rows| Matrix::new(rows.into_iter().map(|r| Vector::new(r).unwrap()).collect()).unwrap())
}

fn arb_op(field: Field, n: usize) -> impl Strategy<Value = ElementaryOp> {
    let nonzero = arb_scalar(field).prop_filter("nonzero", |c| !c.is_zero());
    prop_oneof![
        (0..n, 0..n)
            .prop_filter("distinct", |(i, j)| i != j)
            .prop_map(|(i, j)| ElementaryOp::Interchange(i, j)),
        (0..n, nonzero).prop_map(|(i, c)| ElementaryOp::Scale(i, c)),
        (0..n, 0..n, arb_scalar(field))
            .prop_filter("distinct", |(t, s, _)| t != s)
            .prop_map(|(target, source, factor)| ElementaryOp::Replace { target, source, factor }),
    ]
}

/// A field, a size in 2..=5, and a square matrix.
fn arb_square() -> impl Strategy<Value = (Field, usize, Matrix)> {
    (arb_field(), 2usize..=5).prop_flat_map(|(f, n)| (Just(f), Just(n), arb_matrix(f, n)))
}

fn arb_square_with_op() -> impl Strategy<Value = (Matrix, ElementaryOp)> {
    (arb_field(), 2usize..=5).prop_flat_map(|(f, n)| (arb_matrix(f, n), arb_op(f, n)))
}

fn arb_square_pair() -> impl Strategy<Value = (Matrix, Matrix, Matrix)> {
    (arb_field(), 1usize..=4).prop_flat_map(|(f, n)| (arb_matrix(f, n), arb_matrix(f, n), arb_matrix(f, n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn op_matrix_acts_like_op((t, op) in arb_square_with_op()) {
        let n = t.nrows();
        let e = op.matrix(n, t.field()).unwrap();
        prop_assert_eq!(e.act_on(&t.to_tuple()).unwrap(), t.to_tuple().apply(&op).unwrap());
    }

    #[test]
    fn action_is_compatible_with_product((a, b, t) in arb_square_pair()) {
        let ab = a.checked_mul(&b).unwrap();
        let tuple = t.to_tuple();
        prop_assert_eq!(ab.act_on(&tuple).unwrap(), a.act_on(&b.act_on(&tuple).unwrap()).unwrap());
    }

    #[test]
    fn op_then_inverse_is_identity((t, op) in arb_square_with_op()) {
        let back = t.apply(&op).unwrap().apply(&op.inverse().unwrap()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn transpose_rules((a, b, _) in arb_square_pair()) {
        prop_assert_eq!(a.transpose().transpose(), a.clone());
        let ab_t = a.checked_mul(&b).unwrap().transpose();
        prop_assert_eq!(ab_t, b.transpose().checked_mul(&a.transpose()).unwrap());
    }

    #[test]
    fn rank_is_invariant_under_ops((t, op) in arb_square_with_op()) {
        prop_assert_eq!(rank(&t.apply(&op).unwrap().to_tuple()), rank(&t.to_tuple()));
    }

    #[test]
    fn independence_determinant_rank_agree((_, n, a) in arb_square()) {
        let t = a.to_tuple();
        let nonzero = !det_cofactor(&a).unwrap().is_zero();
        prop_assert_eq!(is_linearly_independent(&t), nonzero);
        prop_assert_eq!(rank(&t) == n, nonzero);
        prop_assert_eq!(spans_ambient(&t), nonzero);
    }

    #[test]
    fn engines_agree_with_oracle((_, _, a) in arb_square()) {
        let cof = det_cofactor(&a).unwrap();
        prop_assert_eq!(&cof, &det_elimination(&a).unwrap());
        prop_assert_eq!(cof, permutation_det(&a));
    }

    #[test]
    fn spanning_tuples_solve_every_rhs(((f, n, a), seed) in (arb_square(), any::<u64>())) {
        let t: VecTuple = a.to_tuple();
        prop_assume!(spans_ambient(&t));
        let b = detlab_core::SplitMix64::new(seed).vector(f, n);
        let sys = LinearSystem::new(t.clone(), b.clone()).unwrap();
        let sol = cramer_solve(&sys).unwrap();
        prop_assert_eq!(t.linear_combination(&sol.values).unwrap(), b);
        prop_assert_eq!(solve_by_elimination(&sys).unwrap(), sol.values);
    }
}
