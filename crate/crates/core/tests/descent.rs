use cocycle_core::cochain::big_d;
use cocycle_core::scalar::rational;
use cocycle_core::{
    closed_form_translation, GroupPresentation, NamedForm, QChain, QDiffeo, QForm, QGroup, QPolynomial, QZigzag,
    RandomInputs, Rational,
};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    rational(n, d)
}

fn volume(n: usize) -> QForm {
    (1..n).fold(QForm::dx(n, 0), |acc, i| acc.wedge(&QForm::dx(n, i)).unwrap())
}

fn area_group() -> QGroup {
    let t = |a: i64, b: i64, name: &str| QDiffeo::translation(&[q(a, 1), q(b, 1)], name);
    let rot = QDiffeo::linear(&[vec![q(0, 1), q(-1, 1)], vec![q(1, 1), q(0, 1)]], "rot90").unwrap();
    let sigma = QDiffeo::shear(0, QPolynomial::var(2, 1).pow(2), "sigma").unwrap();
    let nf = NamedForm { name: "area".into(), form: volume(2) };
    GroupPresentation::new(2, vec![t(1, 0, "Te1"), t(0, 1, "Te2"), rot, sigma], vec![nf]).unwrap()
}

fn area_state() -> QZigzag {
    QZigzag::build_with_cap(volume(2), 1, area_group(), Some(64)).unwrap()
}

fn generator(g: &QGroup, name: &str) -> QDiffeo {
    g.generators().iter().find(|d| d.label() == name).unwrap().clone()
}

#[test]
fn frozen_area_values() {
    let state = area_state();
    let g = state.group().clone();
    let origin = QChain::origin(2);
    let (te1, te2, sigma, rot) = (generator(&g, "Te1"), generator(&g, "Te2"), generator(&g, "sigma"), generator(&g, "rot90"));
    assert_eq!(state.cocycle_eval(&origin, &[te1.clone(), te2.clone()]).unwrap(), q(1, 2));
    assert_eq!(state.cocycle_eval(&origin, &[sigma.clone(), te2.clone()]).unwrap(), q(-1, 6));
    assert_eq!(state.cocycle_eval(&origin, &[te1.clone(), rot.clone()]).unwrap(), q(0, 1));
    // σ² moves by 2y², so c(σ², T_b) = 2·(-b_y³/6)
    let sigma2 = sigma.compose(&sigma).unwrap();
    let tb = QDiffeo::translation(&[q(0, 1), q(3, 1)], "T(0,3)");
    assert_eq!(state.cocycle_eval(&origin, &[sigma2, tb]).unwrap(), q(-9, 1));
    // δ'φ_0(σ) = -(1/2) y² dy
    let dphi0 = cocycle_core::delta_prime(state.phi(0)).eval(&[sigma]).unwrap();
    let expected = QForm::dx(2, 1).mul_function(&QPolynomial::var(2, 1).pow(2).scale(&q(-1, 2)));
    assert_eq!(dphi0, expected);
}

#[test]
fn line_translations() {
    let nf = NamedForm { name: "dx".into(), form: QForm::dx(1, 0) };
    let g = GroupPresentation::new(1, vec![QDiffeo::translation(&[q(1, 1)], "T")], vec![nf]).unwrap();
    let state = QZigzag::build(QForm::dx(1, 0), 0, g).unwrap();
    let mut r = RandomInputs::new(11);
    for _ in 0..20 {
        let t = r.translation::<Rational>(1);
        let a = t.translation_vector().unwrap();
        assert_eq!(state.cocycle_eval(&QChain::origin(1), &[t]).unwrap(), a[0]);
    }
}

#[test]
fn shear_family_matches_cubic_law() {
    // c(σ, T_b) = -b_y³/6 for every b
    let state = area_state();
    let sigma = generator(state.group(), "sigma");
    let mut r = RandomInputs::new(2);
    for _ in 0..20 {
        let b: Vec<Rational> = r.vector(2);
        let tb = QDiffeo::translation(&b, format!("T({},{})", b[0], b[1]));
        let expected = -(&b[1] * &b[1] * &b[1]) / q(6, 1);
        assert_eq!(state.cocycle_eval(&QChain::origin(2), &[sigma.clone(), tb]).unwrap(), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn translation_closed_form(seed in any::<u64>(), m in 1usize..=3) {
        let n = 3;
        let mut r = RandomInputs::new(seed);
        let omega: QForm = r.constant_form(n, m);
        let gens: Vec<QDiffeo> = (0..n)
            .map(|i| {
                let mut e = vec![q(0, 1); n];
                e[i] = q(1, 1);
                QDiffeo::translation(&e, format!("e{i}"))
            })
            .collect();
        let g = GroupPresentation::new(n, gens, vec![NamedForm { name: "w".into(), form: omega.clone() }]).unwrap();
        let state = QZigzag::build(omega.clone(), m - 1, g).unwrap();
        let tuple: Vec<QDiffeo> = (0..m).map(|_| r.translation(n)).collect();
        let vectors: Vec<Vec<Rational>> = tuple.iter().map(|t| t.translation_vector().unwrap()).collect();
        let value = state.cocycle_eval(&QChain::origin(n), &tuple).unwrap();
        prop_assert_eq!(value, closed_form_translation(&omega, &vectors).unwrap());
    }

    #[test]
    fn area_descent_is_consistent(seed in any::<u64>()) {
        let state = area_state();
        let mut sampler = state.group().sampler(3, 64, seed);
        let t = sampler.next_tuple(2).unwrap();
        prop_assert!(state.base_residual().unwrap().is_zero());
        prop_assert!(state.descent_residual(1, &t[..1]).unwrap().is_zero());
        let top = state.top().eval(&t).unwrap();
        prop_assert!(top.is_closed());
        let moved = QChain::point(vec![q(3, 1), q(-2, 1)]);
        prop_assert_eq!(state.cocycle_eval(&QChain::origin(2), &t).unwrap(), state.cocycle_eval(&moved, &t).unwrap());
        prop_assert_eq!(state.cocycle1_residual(&QChain::origin(2), &t).unwrap(), q(0, 1));
    }

    #[test]
    fn linear_stabilizer_is_trivial(seed in any::<u64>()) {
        let mut r = RandomInputs::new(seed);
        let state = area_state();
        let origin = QChain::origin(2);
        let l1: QDiffeo = r.unimodular_linear(2, "L1");
        let l2: QDiffeo = r.unimodular_linear(2, "L2");
        prop_assert!(state.phi(1).eval(&[l1.clone()]).unwrap().is_zero());
        let b = state.trivializing_cochain(&origin).unwrap();
        let c = state.cocycle_eval(&origin, &[l1.clone(), l2.clone()]).unwrap();
        prop_assert_eq!(&c, &big_d(&b).eval(&[l1, l2]).unwrap());
        prop_assert_eq!(c, q(0, 1));
    }

    #[test]
    fn volume_cocycle_on_three_space(seed in any::<u64>()) {
        let n = 3;
        let omega = volume(n);
        let t1 = QDiffeo::translation(&[q(1, 1), q(0, 1), q(0, 1)], "Te1");
        let t3 = QDiffeo::translation(&[q(0, 1), q(0, 1), q(1, 1)], "Te3");
        let s = QDiffeo::shear(1, &QPolynomial::var(n, 0) * &QPolynomial::var(n, 2), "s").unwrap();
        let g = GroupPresentation::new(n, vec![t1, t3, s], vec![NamedForm { name: "vol".into(), form: omega.clone() }]).unwrap();
        let state = QZigzag::build_with_cap(omega, 2, g, Some(64)).unwrap();
        let report = state.verify_cocycle_identity(&QChain::origin(n), 2, 2, seed).unwrap();
        prop_assert!(report.passed(), "{:?}", report);
    }
}

#[test]
fn cocycle_identity_sweep() {
    let state = area_state();
    let report = state.verify_cocycle_identity(&QChain::origin(2), 30, 3, 17).unwrap();
    assert_eq!(report.zero_residuals, 30);
    assert_eq!(report.max_violation, q(0, 1));
}
