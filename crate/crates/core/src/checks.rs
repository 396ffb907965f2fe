//! Seeded invariant sweeps over random inputs. Each sweep returns one
//! [`CheckOutcome`] per identity; a sample counts as passed only on exact
//! equality.

use crate::chains::{integrate, AffineSimplex, Chain};
use crate::cochain::{big_f_gamma, delta_prime, transgress, FormCochain};
use crate::diffeo::PolyDiffeo;
use crate::error::Result;
use crate::poly_forms::{PolyForm, PolyVectorField};
use crate::random::{Bounds, RandomInputs};
use crate::scalar::{sign, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub samples: usize,
    pub passed: usize,
    /// Description of the first failing sample, if any.
    pub first_failure: Option<String>,
}

impl CheckOutcome {
    fn new(name: &str) -> Self {
        Self { name: name.to_string(), samples: 0, passed: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.samples += 1;
        if ok {
            self.passed += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some(describe());
        }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.samples
    }
}

/// `L_X` computed term by term in coordinates,
/// `L_X(f dx_I) = X(f) dx_I + f Σ_r dx_{i_1} ∧ … ∧ dX^{i_r} ∧ … ∧ dx_{i_k}`.
/// Independent of the Cartan-formula implementation on [`PolyForm`].
pub fn lie_derivative_by_coordinates<F: Scalar>(alpha: &PolyForm<F>, x: &PolyVectorField<F>) -> Result<PolyForm<F>> {
    let n = alpha.dim();
    let mut out = PolyForm::zero(n, alpha.degree());
    for (idx, f) in alpha.components() {
        out = &out + &PolyForm::basis(n, idx.clone(), F::one()).mul_function(&x.apply(f));
        for r in 0..idx.len() {
            let mut piece = PolyForm::function(f.clone());
            for (s, &axis) in idx.axes().iter().enumerate() {
                let factor = if s == r {
                    let xi = x.component(axis);
                    PolyForm::one_form((0..n).map(|j| xi.partial(j)).collect())
                } else {
                    PolyForm::dx(n, axis)
                };
                piece = piece.wedge(&factor)?;
            }
            out = &out + &piece;
        }
    }
    Ok(out)
}

/// Translation ∘ origin-fixing shear ∘ unimodular linear map.
fn random_diffeo<F: Scalar>(r: &mut RandomInputs, n: usize, tag: &str) -> Result<PolyDiffeo<F>> {
    let t = r.translation(n);
    let s = r.origin_fixing_shear(n, format!("{tag}s"));
    let l = r.unimodular_linear(n, format!("{tag}l"));
    t.compose(&s)?.compose(&l)
}

fn degree_in(r: &mut RandomInputs, lo: usize, hi: usize) -> usize {
    use rand::Rng;
    r.rng().gen_range(lo..=hi)
}

/// d∘d = 0, dh + hd = id, h∘d = id − eval₀, Cartan identities, pullback
/// naturality and functoriality, and the right-action law on `ℝⁿ`.
pub fn calculus_suite<F: Scalar>(n: usize, samples: usize, seed: u64) -> Result<Vec<CheckOutcome>> {
    let mut r = RandomInputs::new(seed);
    // pullbacks through composites multiply degrees; keep that half quadratic
    let mut rd = RandomInputs::with_bounds(seed.wrapping_add(1), Bounds { max_degree: 2, ..Bounds::default() });
    let mut dd = CheckOutcome::new("d_squared_zero");
    let mut homotopy = CheckOutcome::new("homotopy_dh_plus_hd_identity");
    let mut functions = CheckOutcome::new("homotopy_hd_functions_minus_value_at_origin");
    let mut cartan = CheckOutcome::new("cartan_lie_equals_di_plus_id");
    let mut lie_d = CheckOutcome::new("cartan_lie_commutes_with_d");
    let mut commutator = CheckOutcome::new("cartan_lie_interior_commutator");
    let mut natural = CheckOutcome::new("pullback_commutes_with_d");
    let mut multiplicative = CheckOutcome::new("pullback_preserves_wedge");
    let mut right_action = CheckOutcome::new("right_action_law");

    for i in 0..samples {
        let k = degree_in(&mut r, 0, n);
        let a: PolyForm<F> = r.form(n, k);
        dd.record(a.ext_d().ext_d().is_zero(), || format!("sample {i}: {a}"));

        let k1 = degree_in(&mut r, 1, n);
        let b: PolyForm<F> = r.form(n, k1);
        let lhs = &b.homotopy().ext_d() + &b.ext_d().homotopy();
        homotopy.record(lhs == b, || format!("sample {i}: {b}"));

        let f = r.polynomial::<F>(n);
        let expected = &f - &crate::poly_forms::Polynomial::constant(n, f.constant_term());
        let f_form = PolyForm::function(f);
        functions.record(f_form.ext_d().homotopy() == PolyForm::function(expected), || format!("sample {i}: {f_form}"));

        let x: PolyVectorField<F> = r.vector_field(n);
        let y: PolyVectorField<F> = r.vector_field(n);
        let lie = lie_derivative_by_coordinates(&a, &x)?;
        let di = if k == 0 { PolyForm::zero(n, 0) } else { a.interior(&x).ext_d() };
        cartan.record(&di + &a.ext_d().interior(&x) == lie, || format!("sample {i}: {a}"));
        let lie_of_d = if k < n { lie_derivative_by_coordinates(&a.ext_d(), &x)? } else { PolyForm::zero(n, n) };
        let d_of_lie = if k < n { lie.ext_d() } else { PolyForm::zero(n, n) };
        lie_d.record(lie_of_d == d_of_lie, || format!("sample {i}: {a}"));
        let comm = &lie_derivative_by_coordinates(&b.interior(&y), &x)? - &lie_derivative_by_coordinates(&b, &x)?.interior(&y);
        commutator.record(comm == b.interior(&x.bracket(&y)), || format!("sample {i}: {b}"));

        let g: PolyDiffeo<F> = random_diffeo(&mut rd, n, &format!("g{i}"))?;
        let h: PolyDiffeo<F> = random_diffeo(&mut rd, n, &format!("h{i}"))?;
        let ks = degree_in(&mut rd, 0, n.min(2));
        let small: PolyForm<F> = rd.form(n, ks);
        let ga = g.pullback(&small)?;
        natural.record(g.pullback(&small.ext_d())? == ga.ext_d(), || format!("sample {i}: {small} under {g}"));
        let ko = degree_in(&mut rd, 0, 1);
        let one: PolyForm<F> = rd.form(n, ko);
        let wedge = one.wedge(&small)?;
        multiplicative.record(g.pullback(&wedge)? == g.pullback(&one)?.wedge(&ga)?, || format!("sample {i}"));
        let gh = g.compose(&h)?;
        let ok = h.pullback(&ga)? == gh.pullback(&small)? && g.inverse().pullback(&ga)? == small;
        right_action.record(ok, || format!("sample {i}: {small} under {g}, {h}"));
    }
    Ok(vec![dd, homotopy, functions, cartan, lie_d, commutator, natural, multiplicative, right_action])
}

/// `∫_σ dα = ∫_{∂σ} α` on random chains in `ℝ^d`, `1 ≤ d ≤ max_dim`, with
/// coefficient degree up to 4. Also `∂∂ = 0`.
pub fn stokes_suite<F: Scalar>(max_dim: usize, samples: usize, seed: u64) -> Result<Vec<CheckOutcome>> {
    let bounds = Bounds { max_degree: 4, ..Bounds::default() };
    let mut r = RandomInputs::with_bounds(seed, bounds);
    let mut stokes = CheckOutcome::new("stokes");
    let mut boundary = CheckOutcome::new("boundary_squared_zero");
    for i in 0..samples {
        let n = degree_in(&mut r, 1, max_dim);
        let k = degree_in(&mut r, 1, n);
        let alpha: PolyForm<F> = r.form(n, k - 1);
        let chain: Chain<F> = r.chain(n, k);
        let lhs = integrate(&alpha.ext_d(), &chain)?;
        let rhs = integrate(&alpha, &chain.boundary()?)?;
        stokes.record(lhs == rhs, || format!("sample {i}: n={n} k={k} {lhs} vs {rhs}"));
        let bb = if k >= 2 { chain.boundary()?.boundary()?.is_zero() } else { chain.boundary()?.is_cycle() };
        boundary.record(bb, || format!("sample {i}: n={n} k={k}"));
    }
    Ok(vec![stokes, boundary])
}

/// Closed polygon `v_0 → v_1 → … → v_0` as a 1-cycle.
pub fn polygon_loop<F: Scalar>(vertices: &[Vec<F>]) -> Result<Chain<F>> {
    let n = vertices[0].len();
    let mut terms = Vec::with_capacity(vertices.len());
    for (i, v) in vertices.iter().enumerate() {
        let w = &vertices[(i + 1) % vertices.len()];
        terms.push((AffineSimplex::new(vec![v.clone(), w.clone()])?, F::one()));
    }
    Chain::from_terms(n, 1, terms)
}

/// `β_0 + Σ_i g_i* β_i`, a cochain depending on every argument.
fn random_cochain<F: Scalar>(r: &mut RandomInputs, n: usize, p: usize, q: usize) -> FormCochain<F> {
    let betas: Vec<PolyForm<F>> = (0..=p).map(|_| r.form(n, q)).collect();
    FormCochain::new(p, q, n, move |t| {
        let mut acc = betas[0].clone();
        for (g, b) in t.iter().zip(&betas[1..]) {
            acc = &acc + &g.pullback(b)?;
        }
        Ok(acc)
    })
}

/// Identities for the transgression `f_γ` in the translation identification
/// `G ≅ ℝⁿ`, with point cycles and closed polygonal loops:
/// `d f_γ = f_γ d`, `δ'_G F_γ = F_γ δ'` on translation tuples, and `F_{0}`
/// is the identity on constant forms. For open segments the `d` defect is
/// checked to equal the boundary term `(-1)^{deg ω - 1} f_{∂γ}(ω)`.
pub fn fgamma_suite<F: Scalar>(n: usize, samples: usize, seed: u64) -> Result<Vec<CheckOutcome>> {
    let mut r = RandomInputs::with_bounds(seed, Bounds { max_degree: 2, max_terms: 3, ..Bounds::default() });
    let mut d_lemma = CheckOutcome::new("fgamma_commutes_with_d");
    let mut delta_lemma = CheckOutcome::new("fgamma_intertwines_delta_prime");
    let mut identity = CheckOutcome::new("fgamma_point_identity_on_constant_forms");
    let mut open_segments = CheckOutcome::new("fgamma_open_segment_boundary_term");
    for i in 0..samples {
        let point = Chain::point(r.vector(n));
        let mut cycles = vec![Chain::origin(n), point];
        if n >= 2 {
            let verts: Vec<Vec<F>> = (0..3).map(|_| r.vector(n)).collect();
            cycles.push(polygon_loop(&verts)?);
        }
        let k = degree_in(&mut r, 1, n);
        let w: PolyForm<F> = r.form(n, k);
        let p = degree_in(&mut r, 0, 2);
        let c: FormCochain<F> = random_cochain(&mut r, n, p, k);
        let tuple: Vec<PolyDiffeo<F>> = (0..=p).map(|_| r.translation(n)).collect();
        let mut d_ok = true;
        let mut delta_ok = true;
        for gamma in &cycles {
            if k >= gamma.dim() {
                d_ok &= transgress(gamma, &w)?.ext_d() == transgress(gamma, &w.ext_d())?;
            }
            let lhs = delta_prime(&big_f_gamma(&c, gamma)?).eval(&tuple)?;
            let rhs = big_f_gamma(&delta_prime(&c), gamma)?.eval(&tuple)?;
            delta_ok &= lhs == rhs;
        }
        d_lemma.record(d_ok, || format!("sample {i}: {w}"));
        delta_lemma.record(delta_ok, || format!("sample {i}: p={p} q={k}"));

        let constant: PolyForm<F> = r.constant_form(n, k);
        identity.record(transgress(&Chain::origin(n), &constant)? == constant, || format!("sample {i}: {constant}"));

        let seg = Chain::simplex(r.simplex(n, 1));
        let defect = &transgress(&seg, &w)?.ext_d() - &transgress(&seg, &w.ext_d())?;
        let boundary = transgress(&seg.boundary()?, &w)?.scale(&sign::<F>(k - 1));
        open_segments.record(defect == boundary, || format!("sample {i}: {w}"));
    }
    Ok(vec![d_lemma, delta_lemma, identity, open_segments])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn suites_pass_on_small_runs() {
        for outcome in calculus_suite::<Rational>(2, 8, 1).unwrap() {
            assert!(outcome.ok(), "{outcome:?}");
            assert_eq!(outcome.samples, 8);
        }
        for outcome in stokes_suite::<Rational>(3, 8, 2).unwrap() {
            assert!(outcome.ok(), "{outcome:?}");
        }
        for outcome in fgamma_suite::<Rational>(2, 6, 3).unwrap() {
            assert!(outcome.ok(), "{outcome:?}");
        }
    }

    #[test]
    fn failures_are_recorded_once() {
        let mut c = CheckOutcome::new("x");
        c.record(true, || unreachable!());
        c.record(false, || "first".into());
        c.record(false, || "second".into());
        assert_eq!((c.samples, c.passed), (3, 1));
        assert_eq!(c.first_failure.as_deref(), Some("first"));
        assert!(!c.ok());
    }
}
