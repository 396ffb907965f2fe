//! Affine singular chains in ℝⁿ and exact integration of polynomial forms.
//!
//! A `q`-simplex `[v_0, …, v_q]` is parametrised over the standard simplex
//! `Δ^q = {t_r ≥ 0, Σ t_r ≤ 1}` by `t ↦ v_0 + Σ t_r (v_r - v_0)`. Pulled-back
//! monomials are integrated with the Dirichlet formula
//! `∫_{Δ^q} t^a dt = a_1!…a_q! / (q + |a|)!`.
//!
//! Chains are oriented: a simplex with permuted vertices equals the original
//! times the sign of the permutation. Simplices are stored with vertices in
//! sorted order, so a simplex with a repeated vertex is zero.

use std::cmp::Ordering;

use crate::diffeo::PolyDiffeo;
use crate::error::{Error, Result};
use crate::poly_forms::{determinant, PolyForm, Polynomial, Substitution};
use crate::scalar::{factorial, sign, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct AffineSimplex<F> {
    vertices: Vec<Vec<F>>,
}

impl<F: Scalar> AffineSimplex<F> {
    pub fn new(vertices: Vec<Vec<F>>) -> Result<Self> {
        let n = vertices.first().map(Vec::len).ok_or_else(|| Error::Parse("simplex without vertices".into()))?;
        if let Some(v) = vertices.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
        if vertices.len() > n + 1 {
            return Err(Error::DegreeMismatch { expected: n, found: vertices.len() - 1 });
        }
        Ok(Self { vertices })
    }

    pub fn point(p: Vec<F>) -> Self {
        Self { vertices: vec![p] }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn vertices(&self) -> &[Vec<F>] {
        &self.vertices
    }

    /// Face opposite vertex `i`.
    pub fn face(&self, i: usize) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.remove(i);
        Self { vertices }
    }

    /// Sorted copy and whether the sorting permutation is odd; `None` when a
    /// vertex repeats.
    fn canonical(&self) -> Option<(bool, Self)> {
        let mut vertices = self.vertices.clone();
        let mut odd = false;
        // insertion sort, counting transpositions
        for i in 1..vertices.len() {
            let mut j = i;
            while j > 0 && cmp_points(&vertices[j - 1], &vertices[j]) == Ordering::Greater {
                vertices.swap(j - 1, j);
                odd = !odd;
                j -= 1;
            }
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((odd, Self { vertices }))
    }

    fn edge_vectors(&self) -> Vec<Vec<F>> {
        let v0 = &self.vertices[0];
        self.vertices[1..].iter().map(|v| v.iter().zip(v0).map(|(a, b)| a.clone() - b.clone()).collect()).collect()
    }

    /// Affine parametrisation as polynomials in the `q` simplex coordinates
    /// followed by `extra` untouched parameters.
    fn parametrisation(&self, extra: usize) -> Vec<Polynomial<F>> {
        let q = self.dim();
        let m = q + extra;
        let edges = self.edge_vectors();
        let mut images: Vec<Polynomial<F>> = (0..self.ambient_dim())
            .map(|i| {
                let mut p = Polynomial::constant(m, self.vertices[0][i].clone());
                for (r, e) in edges.iter().enumerate() {
                    p += &Polynomial::var(m, r).scale(&e[i]);
                }
                p
            })
            .collect();
        images.extend((0..extra).map(|j| Polynomial::var(m, q + j)));
        images
    }
}

fn cmp_points<F: Scalar>(a: &[F], b: &[F]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y).unwrap_or(Ordering::Equal) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Dirichlet integral of `t^exp` over the standard simplex of dimension
/// `exp.len()`.
pub fn dirichlet_monomial<F: Scalar>(exp: &[u32]) -> F {
    let q = exp.len();
    let total: usize = q + exp.iter().map(|&a| a as usize).sum::<usize>();
    let num = exp.iter().fold(F::one(), |acc, &a| acc * factorial::<F>(a as usize));
    num / factorial::<F>(total)
}

/// Formal rational combination of oriented affine `dim`-simplices in ℝ^`ambient`.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain<F> {
    ambient: usize,
    dim: usize,
    terms: Vec<(AffineSimplex<F>, F)>,
}

impl<F: Scalar> Chain<F> {
    pub fn zero(ambient: usize, dim: usize) -> Self {
        Self { ambient, dim, terms: Vec::new() }
    }

    pub fn from_terms<I>(ambient: usize, dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (AffineSimplex<F>, F)>,
    {
        let mut out = Self::zero(ambient, dim);
        for (s, c) in terms {
            if s.ambient_dim() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: s.ambient_dim() });
            }
            if s.dim() != dim {
                return Err(Error::DegreeMismatch { expected: dim, found: s.dim() });
            }
            out.add_simplex(s, c);
        }
        Ok(out)
    }

    pub fn simplex(s: AffineSimplex<F>) -> Self {
        let mut out = Self::zero(s.ambient_dim(), s.dim());
        out.add_simplex(s, F::one());
        out
    }

    pub fn point(p: Vec<F>) -> Self {
        Self::simplex(AffineSimplex::point(p))
    }

    pub fn origin(ambient: usize) -> Self {
        Self::point(vec![F::zero(); ambient])
    }

    fn add_simplex(&mut self, s: AffineSimplex<F>, c: F) {
        if c.is_zero() {
            return;
        }
        let Some((odd, s)) = s.canonical() else { return };
        let c = if odd { -c } else { c };
        if let Some(pos) = self.terms.iter().position(|(t, _)| *t == s) {
            let sum = self.terms[pos].1.clone() + c;
            if sum.is_zero() {
                self.terms.remove(pos);
            } else {
                self.terms[pos].1 = sum;
            }
        } else {
            self.terms.push((s, c));
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(AffineSimplex<F>, F)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient || self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_simplex(s.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.ambient, self.dim);
        for (s, a) in &self.terms {
            out.add_simplex(s.clone(), a.clone() * c.clone());
        }
        out
    }

    /// Alternating face sum. Defined for `dim ≥ 1`.
    pub fn boundary(&self) -> Result<Self> {
        if self.dim == 0 {
            return Err(Error::DegreeMismatch { expected: 1, found: 0 });
        }
        let mut out = Self::zero(self.ambient, self.dim - 1);
        for (s, c) in &self.terms {
            for i in 0..=s.dim() {
                out.add_simplex(s.face(i), sign::<F>(i) * c.clone());
            }
        }
        Ok(out)
    }

    /// Points are cycles; higher chains are cycles when their boundary cancels.
    pub fn is_cycle(&self) -> bool {
        self.dim == 0 || self.boundary().map(|b| b.is_zero()).unwrap_or(false)
    }

    /// Image under `g`. Points move under any map; higher simplices only under
    /// affine maps, which send affine simplices to affine simplices.
    pub fn push_forward(&self, g: &PolyDiffeo<F>) -> Result<Self> {
        if g.dim() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: g.dim() });
        }
        if self.dim > 0 && !g.is_affine() {
            return Err(Error::NonAffinePushForward { dim: self.dim, label: g.label().to_string() });
        }
        let mut out = Self::zero(self.ambient, self.dim);
        for (s, c) in &self.terms {
            let image = AffineSimplex { vertices: s.vertices.iter().map(|v| g.apply(v)).collect() };
            out.add_simplex(image, c.clone());
        }
        Ok(out)
    }

    /// Translate by `shift`.
    pub fn translate(&self, shift: &[F]) -> Self {
        let mut out = Self::zero(self.ambient, self.dim);
        for (s, c) in &self.terms {
            let vertices =
                s.vertices.iter().map(|v| v.iter().zip(shift).map(|(a, b)| a.clone() + b.clone()).collect()).collect();
            out.add_simplex(AffineSimplex { vertices }, c.clone());
        }
        out
    }
}

/// `∫_chain form`, exactly.
pub fn integrate<F: Scalar>(form: &PolyForm<F>, chain: &Chain<F>) -> Result<F> {
    if form.dim() != chain.ambient {
        return Err(Error::DimensionMismatch { expected: chain.ambient, found: form.dim() });
    }
    if form.degree() != chain.dim {
        return Err(Error::DegreeMismatch { expected: chain.dim, found: form.degree() });
    }
    let mut total = F::zero();
    for (simplex, c) in &chain.terms {
        for (idx, coeff) in form.components() {
            let value = integrate_coefficient(coeff, idx.axes(), simplex, 0);
            total = total + c.clone() * value.constant_term();
        }
    }
    Ok(total)
}

/// Integrates `coeff · dx_axes` over a simplex in ℝⁿ, where `coeff` lives in
/// `n + extra` variables whose last `extra` are free parameters. The result is
/// a polynomial in those parameters.
pub fn integrate_coefficient<F: Scalar>(
    coeff: &Polynomial<F>,
    axes: &[usize],
    simplex: &AffineSimplex<F>,
    extra: usize,
) -> Polynomial<F> {
    let q = simplex.dim();
    debug_assert_eq!(axes.len(), q);
    debug_assert_eq!(coeff.nvars(), simplex.ambient_dim() + extra);
    let edges = simplex.edge_vectors();
    let minor: Vec<Vec<F>> = axes.iter().map(|&i| edges.iter().map(|e| e[i].clone()).collect()).collect();
    let jac = determinant(minor);
    if jac.is_zero() {
        return Polynomial::zero(extra);
    }
    let images = simplex.parametrisation(extra);
    let pulled = Substitution::new(&images).apply(coeff);
    let mut out = Polynomial::zero(extra);
    for (exp, c) in pulled.terms() {
        let weight = dirichlet_monomial::<F>(&exp[..q]);
        out.add_term(exp[q..].to_vec(), c.clone() * weight * jac.clone());
    }
    out
}

/// `∫_{a + chain} form` as a polynomial in the translation vector `a`.
pub fn integrate_translated<F: Scalar>(form: &PolyForm<F>, chain: &Chain<F>) -> Result<Polynomial<F>> {
    let n = chain.ambient;
    if form.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: form.dim() });
    }
    if form.degree() != chain.dim {
        return Err(Error::DegreeMismatch { expected: chain.dim, found: form.degree() });
    }
    // x_i -> x_i + a_i in the ring with variables (x, a)
    let shift: Vec<Polynomial<F>> = (0..n).map(|i| &Polynomial::var(2 * n, i) + &Polynomial::var(2 * n, n + i)).collect();
    let mut lift = Substitution::new(&shift);
    let mut total = Polynomial::zero(n);
    for (idx, coeff) in form.components() {
        let lifted = lift.apply(coeff);
        for (simplex, c) in &chain.terms {
            total += &integrate_coefficient(&lifted, idx.axes(), simplex, n).scale(c);
        }
    }
    Ok(total)
}

/// `∫_{g(chain)} form = ∫_chain g*form`. Pushes the chain forward when that
/// stays affine and pulls the form back otherwise.
pub fn integrate_over_image<F: Scalar>(form: &PolyForm<F>, chain: &Chain<F>, g: &PolyDiffeo<F>) -> Result<F> {
    if chain.dim == 0 || g.is_affine() {
        integrate(form, &chain.push_forward(g)?)
    } else {
        integrate(&g.pullback(form)?, chain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Rational};

    type P = Polynomial<Rational>;
    type Form = PolyForm<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        rational(n, d)
    }
    fn pt(c: &[i64]) -> Vec<Rational> {
        c.iter().map(|&a| q(a, 1)).collect()
    }
    fn triangle() -> AffineSimplex<Rational> {
        AffineSimplex::new(vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])]).unwrap()
    }
    fn segment(a: &[i64], b: &[i64]) -> AffineSimplex<Rational> {
        AffineSimplex::new(vec![pt(a), pt(b)]).unwrap()
    }
    fn area() -> Form {
        Form::dx(2, 0).wedge(&Form::dx(2, 1)).unwrap()
    }

    #[test]
    fn boundary_of_segment() {
        let b = Chain::simplex(segment(&[0, 0], &[1, 1])).boundary().unwrap();
        let expected = Chain::from_terms(
            2,
            0,
            vec![(AffineSimplex::point(pt(&[1, 1])), q(1, 1)), (AffineSimplex::point(pt(&[0, 0])), q(-1, 1))],
        )
        .unwrap();
        assert_eq!(b, expected);
    }

    #[test]
    fn boundary_of_triangle_is_closed_loop() {
        let b = Chain::simplex(triangle()).boundary().unwrap();
        assert_eq!(b.terms().len(), 3);
        assert!(b.is_cycle());
        assert!(b.boundary().unwrap().is_zero());
    }

    #[test]
    fn cycles() {
        assert!(Chain::<Rational>::origin(2).is_cycle());
        assert!(!Chain::simplex(segment(&[0, 0], &[1, 0])).is_cycle());
        let mut loop_ = Chain::simplex(segment(&[0, 0], &[1, 0]));
        loop_ = loop_.add(&Chain::simplex(segment(&[1, 0], &[0, 1]))).unwrap();
        loop_ = loop_.add(&Chain::simplex(segment(&[0, 1], &[0, 0]))).unwrap();
        assert!(loop_.is_cycle());
    }

    #[test]
    fn orientation_and_degeneracy() {
        let a = Chain::simplex(segment(&[0, 0], &[1, 0]));
        let b = Chain::simplex(segment(&[1, 0], &[0, 0]));
        assert!(a.add(&b).unwrap().is_zero());
        assert!(Chain::simplex(segment(&[2, 2], &[2, 2])).is_zero());
    }

    #[test]
    fn integration_examples() {
        let tri = Chain::simplex(triangle());
        assert_eq!(integrate(&area(), &tri).unwrap(), q(1, 2));
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let xdy = Form::dx(2, 1).mul_function(&x);
        assert_eq!(integrate(&xdy, &Chain::simplex(segment(&[0, 0], &[1, 1]))).unwrap(), q(1, 2));
        assert_eq!(integrate(&area().mul_function(&(&x * &y)), &tri).unwrap(), q(1, 24));
        let f = Form::function(&x + &P::constant(2, q(3, 1)));
        assert_eq!(integrate(&f, &Chain::point(pt(&[2, 7]))).unwrap(), q(5, 1));
    }

    #[test]
    fn integration_rejects_mismatch() {
        let err = integrate(&Form::dx(2, 0), &Chain::simplex(triangle())).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { expected: 2, found: 1 });
    }

    #[test]
    fn dirichlet_values() {
        assert_eq!(dirichlet_monomial::<Rational>(&[1, 1]), q(1, 24));
        assert_eq!(dirichlet_monomial::<Rational>(&[]), q(1, 1));
        assert_eq!(dirichlet_monomial::<Rational>(&[2]), q(1, 3));
    }

    #[test]
    fn parametric_integration_over_translated_point() {
        // ∫_{a + {(1,0)}} x y = (1 + a1) a2
        let x = P::var(4, 0);
        let y = P::var(4, 1);
        let coeff = (&x + &P::var(4, 2)) * (&y + &P::var(4, 3));
        let value = integrate_coefficient(&coeff, &[], &AffineSimplex::point(pt(&[1, 0])), 2);
        let a1 = P::var(2, 0);
        let a2 = P::var(2, 1);
        assert_eq!(value, &(&a1 + &P::one(2)) * &a2);
    }

    #[test]
    fn translated_segment_integral() {
        // ∫_{a + [0, e2]} x dy = a1
        let xdy = Form::dx(2, 1).mul_function(&P::var(2, 0));
        let seg = Chain::simplex(segment(&[0, 0], &[0, 1]));
        assert_eq!(integrate_translated(&xdy, &seg).unwrap(), P::var(2, 0));
    }

    #[test]
    fn image_integration_agrees_between_routes() {
        let sigma = PolyDiffeo::shear(0, &P::var(2, 1) * &P::var(2, 1), "sigma").unwrap();
        let y = P::var(2, 1);
        let form = Form::function(&(&P::var(2, 0) * &y) + &y);
        let p = Chain::point(pt(&[1, 2]));
        let by_push = integrate_over_image(&form, &p, &sigma).unwrap();
        let by_pull = integrate(&sigma.pullback(&form).unwrap(), &p).unwrap();
        assert_eq!(by_push, by_pull);
        assert_eq!(by_push, q(12, 1));
    }
}
