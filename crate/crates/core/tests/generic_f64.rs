//! The core is generic; make sure a floating-point instantiation still runs.
//! Values here are dyadic, so the comparisons are exact anyway.

use cocycle_core::chains::integrate;
use cocycle_core::{AffineSimplex, Chain, GroupPresentation, NamedForm, PolyDiffeo, PolyForm, Polynomial, ZigzagState};

#[test]
fn area_cocycle_in_f64() {
    let area = PolyForm::<f64>::dx(2, 0).wedge(&PolyForm::dx(2, 1)).unwrap();
    let te1 = PolyDiffeo::translation(&[1.0, 0.0], "Te1");
    let te2 = PolyDiffeo::translation(&[0.0, 1.0], "Te2");
    let sigma = PolyDiffeo::shear(0, Polynomial::var(2, 1).pow(2), "sigma").unwrap();
    let g = GroupPresentation::new(2, vec![te1.clone(), te2.clone(), sigma.clone()], vec![NamedForm {
        name: "area".into(),
        form: area.clone(),
    }])
    .unwrap();
    let state = ZigzagState::build(area.clone(), 1, g).unwrap();
    assert_eq!(state.cocycle_eval(&Chain::origin(2), &[te1, te2.clone()]).unwrap(), 0.5);
    let c = state.cocycle_eval(&Chain::origin(2), &[sigma, te2]).unwrap();
    assert!((c + 1.0 / 6.0).abs() < 1e-12);

    let tri = Chain::simplex(AffineSimplex::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap());
    assert_eq!(integrate(&area, &tri).unwrap(), 0.5);
}
