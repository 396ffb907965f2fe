use cocycle_core::scalar::{rational, sign};
use cocycle_core::{MultiIndex, QDiffeo, QForm, QPolynomial, QVectorField, RandomInputs, Rational};
use proptest::prelude::*;

const N: usize = 3;

/// Lie derivative straight from coordinates:
/// `L_X(f dx_I) = X(f) dx_I + f Σ_r dx_{i_1} ∧ … ∧ dX^{i_r} ∧ … ∧ dx_{i_k}`.
fn lie_by_coordinates(alpha: &QForm, x: &QVectorField) -> QForm {
    let n = alpha.dim();
    let mut out = QForm::zero(n, alpha.degree());
    for (idx, f) in alpha.components() {
        let mut term = QForm::basis(n, idx.clone(), rational(1, 1)).mul_function(&x.apply(f));
        for r in 0..idx.len() {
            let mut piece = QForm::function(f.clone());
            for (s, &axis) in idx.axes().iter().enumerate() {
                let factor = if s == r {
                    let xi = x.component(axis);
                    QForm::one_form((0..n).map(|j| xi.partial(j)).collect())
                } else {
                    QForm::dx(n, axis)
                };
                piece = piece.wedge(&factor).unwrap();
            }
            term = &term + &piece;
        }
        out = &out + &term;
    }
    out
}

fn random_diffeo(r: &mut RandomInputs, label: &str) -> QDiffeo {
    let s = r.origin_fixing_shear(N, format!("{label}s"));
    let t = r.translation(N);
    let l = QDiffeo::linear(
        &[
            vec![rational(1, 1), rational(2, 1), rational(0, 1)],
            vec![rational(0, 1), rational(1, 1), rational(0, 1)],
            vec![rational(-1, 2), rational(0, 1), rational(1, 1)],
        ],
        format!("{label}l"),
    )
    .unwrap();
    t.compose(&s).unwrap().compose(&l).unwrap()
}

fn cases() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

#[test]
fn lie_oracle_agrees_on_a_fixed_case() {
    // L_{x ∂_y}(y dx) = x dx
    let x = QPolynomial::var(2, 0);
    let y = QPolynomial::var(2, 1);
    let field = QVectorField::new(vec![QPolynomial::zero(2), x.clone()]);
    let alpha = QForm::dx(2, 0).mul_function(&y);
    let expected = QForm::dx(2, 0).mul_function(&x);
    assert_eq!(lie_by_coordinates(&alpha, &field), expected);
    assert_eq!(alpha.lie_derivative(&field), expected);
}

proptest! {
    #![proptest_config(cases())]

    #[test]
    fn d_squared_vanishes(seed in any::<u64>(), k in 0usize..=N) {
        let mut r = RandomInputs::new(seed);
        let a: QForm = r.form(N, k);
        prop_assert!(a.ext_d().ext_d().is_zero());
    }

    #[test]
    fn homotopy_formula(seed in any::<u64>(), k in 1usize..=N) {
        let mut r = RandomInputs::new(seed);
        let a: QForm = r.form(N, k);
        let lhs = &a.homotopy().ext_d() + &a.ext_d().homotopy();
        prop_assert_eq!(lhs, a);
    }

    #[test]
    fn homotopy_on_functions_subtracts_value_at_origin(seed in any::<u64>()) {
        let mut r = RandomInputs::new(seed);
        let f: QPolynomial = r.polynomial(N);
        let a = QForm::function(f.clone());
        let expected = &f - &QPolynomial::constant(N, f.constant_term());
        prop_assert_eq!(a.ext_d().homotopy(), QForm::function(expected));
        prop_assert!(a.homotopy().is_zero());
    }

    #[test]
    fn homotopy_squared_vanishes(seed in any::<u64>(), k in 0usize..=N) {
        let mut r = RandomInputs::new(seed);
        let a: QForm = r.form(N, k);
        prop_assert!(a.homotopy().homotopy().is_zero());
    }

    #[test]
    fn cartan_formula(seed in any::<u64>(), k in 0usize..=N) {
        let mut r = RandomInputs::new(seed);
        let a: QForm = r.form(N, k);
        let x: QVectorField = r.vector_field(N);
        let di = if k == 0 { QForm::zero(N, 0) } else { a.interior(&x).ext_d() };
        let cartan = &di + &a.ext_d().interior(&x);
        prop_assert_eq!(&cartan, &lie_by_coordinates(&a, &x));
        prop_assert_eq!(cartan, a.lie_derivative(&x));
    }

    #[test]
    fn lie_commutes_with_d(seed in any::<u64>(), k in 0usize..N) {
        let mut r = RandomInputs::new(seed);
        let a: QForm = r.form(N, k);
        let x: QVectorField = r.vector_field(N);
        prop_assert_eq!(lie_by_coordinates(&a.ext_d(), &x), lie_by_coordinates(&a, &x).ext_d());
    }

    #[test]
    fn lie_interior_commutator(seed in any::<u64>(), k in 1usize..=N) {
        let mut r = RandomInputs::new(seed);
        let a: QForm = r.form(N, k);
        let x: QVectorField = r.vector_field(N);
        let y: QVectorField = r.vector_field(N);
        let lhs = &lie_by_coordinates(&a.interior(&y), &x) - &lie_by_coordinates(&a, &x).interior(&y);
        prop_assert_eq!(lhs, a.interior(&x.bracket(&y)));
    }

    #[test]
    fn interior_anticommutes(seed in any::<u64>(), k in 2usize..=N) {
        let mut r = RandomInputs::new(seed);
        let a: QForm = r.form(N, k);
        let x: QVectorField = r.vector_field(N);
        let y: QVectorField = r.vector_field(N);
        prop_assert!(a.interior(&x).interior(&x).is_zero());
        prop_assert_eq!(a.interior(&x).interior(&y), -a.interior(&y).interior(&x));
    }

    #[test]
    fn d_is_an_antiderivation(seed in any::<u64>(), k in 0usize..=2, l in 0usize..=1) {
        let mut r = RandomInputs::new(seed);
        let a: QForm = r.form(N, k);
        let b: QForm = r.form(N, l);
        let lhs = a.wedge(&b).unwrap().ext_d();
        let rhs = &a.ext_d().wedge(&b).unwrap() + &a.wedge(&b.ext_d()).unwrap().scale(&sign::<Rational>(k));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_graded_commutative(seed in any::<u64>(), k in 0usize..=N, l in 0usize..=N) {
        let mut r = RandomInputs::new(seed);
        let a: QForm = r.form(N, k);
        let b: QForm = r.form(N, l);
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().scale(&sign::<Rational>(k * l)));
    }

    #[test]
    fn interior_matches_evaluation(seed in any::<u64>(), k in 1usize..=N) {
        let mut r = RandomInputs::new(seed);
        let a: QForm = r.form(N, k);
        let point: Vec<Rational> = r.vector(N);
        let vectors: Vec<Vec<Rational>> = (0..k).map(|_| r.vector(N)).collect();
        let mut contracted = a.clone();
        for v in &vectors {
            contracted = contracted.interior_const(v);
        }
        let f = contracted.as_function().unwrap();
        prop_assert_eq!(f.eval(&point), a.evaluate(&point, &vectors).unwrap());
    }

    #[test]
    fn pullback_is_natural(seed in any::<u64>(), k in 0usize..N) {
        let mut r = RandomInputs::new(seed);
        let a: QForm = r.form(N, k);
        let g = random_diffeo(&mut r, "g");
        prop_assert_eq!(g.pullback(&a.ext_d()).unwrap(), g.pullback(&a).unwrap().ext_d());
    }

    #[test]
    fn pullback_is_multiplicative(seed in any::<u64>(), k in 0usize..=1, l in 0usize..=2) {
        let mut r = RandomInputs::new(seed);
        let a: QForm = r.form(N, k);
        let b: QForm = r.form(N, l);
        let g = random_diffeo(&mut r, "g");
        let lhs = g.pullback(&a.wedge(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, g.pullback(&a).unwrap().wedge(&g.pullback(&b).unwrap()).unwrap());
    }

    #[test]
    fn right_action_law(seed in any::<u64>(), k in 0usize..=N) {
        // h*(g*ω) = (g·h)*ω
        let mut r = RandomInputs::new(seed);
        let a: QForm = r.form(N, k);
        let g = random_diffeo(&mut r, "g");
        let h = random_diffeo(&mut r, "h");
        let lhs = h.pullback(&g.pullback(&a).unwrap()).unwrap();
        prop_assert_eq!(lhs, g.compose(&h).unwrap().pullback(&a).unwrap());
        prop_assert_eq!(g.compose(&g.inverse()).unwrap().pullback(&a).unwrap(), a);
    }
}

#[test]
fn all_basis_indices_round_trip_through_components() {
    for k in 0..=N {
        for idx in MultiIndex::all(N, k) {
            let w = QForm::basis(N, idx.clone(), rational(1, 1));
            assert_eq!(w.components().count(), 1);
            assert_eq!(w.coefficient(&idx), QPolynomial::one(N));
        }
    }
}
