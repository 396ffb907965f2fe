//! Polynomial diffeomorphisms of ℝⁿ carried together with their polynomial
//! inverses, and finitely generated groups of them preserving given forms.
//!
//! Composition follows `(g·h)(x) = g(h(x))`, and groups act on forms on the
//! right through `ω·g = g*ω`, so `h*(g*ω) = (g·h)*ω`.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly_forms::{PolyForm, Polynomial, Substitution};
use crate::scalar::Scalar;

pub const IDENTITY_LABEL: &str = "id";

#[derive(Clone, Debug, PartialEq)]
pub struct PolyDiffeo<F> {
    forward: Vec<Polynomial<F>>,
    inverse: Vec<Polynomial<F>>,
    label: String,
}

fn compose_maps<F: Scalar>(outer: &[Polynomial<F>], inner: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
    let mut subst = Substitution::new(inner);
    outer.iter().map(|p| subst.apply(p)).collect()
}

fn is_identity_map<F: Scalar>(map: &[Polynomial<F>]) -> bool {
    let n = map.len();
    map.iter().enumerate().all(|(i, p)| *p == Polynomial::var(n, i))
}

impl<F: Scalar> PolyDiffeo<F> {
    /// Checks symbolically that `forward ∘ inverse` and `inverse ∘ forward`
    /// are both the identity.
    pub fn new(forward: Vec<Polynomial<F>>, inverse: Vec<Polynomial<F>>, label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        let n = forward.len();
        if inverse.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: inverse.len() });
        }
        if let Some(p) = forward.iter().chain(&inverse).find(|p| p.nvars() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: p.nvars() });
        }
        if !is_identity_map(&compose_maps(&forward, &inverse)) || !is_identity_map(&compose_maps(&inverse, &forward)) {
            return Err(Error::InverseMismatch { label });
        }
        Ok(Self { forward, inverse, label })
    }

    fn new_unchecked(forward: Vec<Polynomial<F>>, inverse: Vec<Polynomial<F>>, label: String) -> Self {
        Self { forward, inverse, label }
    }

    pub fn identity(n: usize) -> Self {
        let id: Vec<_> = (0..n).map(|i| Polynomial::var(n, i)).collect();
        Self::new_unchecked(id.clone(), id, IDENTITY_LABEL.to_string())
    }

    /// `x ↦ x + shift`.
    pub fn translation(shift: &[F], label: impl Into<String>) -> Self {
        let n = shift.len();
        let forward = (0..n).map(|i| &Polynomial::var(n, i) + &Polynomial::constant(n, shift[i].clone())).collect();
        let inverse = (0..n).map(|i| &Polynomial::var(n, i) - &Polynomial::constant(n, shift[i].clone())).collect();
        Self::new_unchecked(forward, inverse, label.into())
    }

    /// `x ↦ A x` for an invertible matrix given by rows.
    pub fn linear(matrix: &[Vec<F>], label: impl Into<String>) -> Result<Self> {
        let n = matrix.len();
        if let Some(row) = matrix.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
        let inv = invert_matrix(matrix).ok_or(Error::SingularMatrix)?;
        let as_map = |m: &[Vec<F>]| -> Vec<Polynomial<F>> {
            m.iter()
                .map(|row| {
                    let mut p = Polynomial::zero(n);
                    for (j, a) in row.iter().enumerate() {
                        p += &Polynomial::var(n, j).scale(a);
                    }
                    p
                })
                .collect()
        };
        Ok(Self::new_unchecked(as_map(matrix), as_map(&inv), label.into()))
    }

    /// Elementary map `x_axis ↦ x_axis + p(x)` with `p` independent of
    /// `x_axis`; its inverse subtracts `p`. Such maps have unit Jacobian.
    pub fn shear(axis: usize, p: Polynomial<F>, label: impl Into<String>) -> Result<Self> {
        let n = p.nvars();
        if axis >= n || p.degree_in(axis) > 0 {
            return Err(Error::InvalidShear { axis });
        }
        let mut forward: Vec<_> = (0..n).map(|i| Polynomial::var(n, i)).collect();
        let mut inverse = forward.clone();
        forward[axis] = &forward[axis] + &p;
        inverse[axis] = &inverse[axis] - &p;
        Ok(Self::new_unchecked(forward, inverse, label.into()))
    }

    pub fn dim(&self) -> usize {
        self.forward.len()
    }

    pub fn forward(&self) -> &[Polynomial<F>] {
        &self.forward
    }

    pub fn inverse_map(&self) -> &[Polynomial<F>] {
        &self.inverse
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Largest total degree among forward and inverse components.
    pub fn degree(&self) -> u32 {
        self.forward.iter().chain(&self.inverse).map(Polynomial::total_degree).max().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        is_identity_map(&self.forward)
    }

    pub fn is_affine(&self) -> bool {
        self.degree() <= 1
    }

    /// Shift vector when the map is a pure translation.
    pub fn translation_vector(&self) -> Option<Vec<F>> {
        let shift: Vec<F> = self.forward.iter().map(Polynomial::constant_term).collect();
        let candidate = Self::translation(&shift, "");
        (candidate.forward == self.forward).then_some(shift)
    }

    pub fn apply(&self, point: &[F]) -> Vec<F> {
        self.forward.iter().map(|p| p.eval(point)).collect()
    }

    /// `(self · other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        let forward = compose_maps(&self.forward, &other.forward);
        let inverse = compose_maps(&other.inverse, &self.inverse);
        Ok(Self::new_unchecked(forward, inverse, product_label(&self.label, &other.label)))
    }

    /// Like [`compose`](Self::compose), failing when the product's degree
    /// exceeds `cap`.
    pub fn compose_capped(&self, other: &Self, cap: u32) -> Result<Self> {
        let g = self.compose(other)?;
        let degree = g.degree();
        if degree > cap {
            return Err(Error::DegreeCapExceeded { label: g.label, degree, cap });
        }
        Ok(g)
    }

    pub fn inverse(&self) -> Self {
        Self::new_unchecked(self.inverse.clone(), self.forward.clone(), inverse_label(&self.label))
    }

    pub fn pullback(&self, form: &PolyForm<F>) -> Result<PolyForm<F>> {
        form.pullback(&self.forward)
    }

    /// Whether `g*ω = ω` holds identically.
    pub fn preserves(&self, form: &PolyForm<F>) -> Result<bool> {
        Ok(self.pullback(form)? == *form)
    }
}

impl<F: Scalar + fmt::Display> fmt::Display for PolyDiffeo<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self.forward.iter().map(|p| p.to_string()).collect();
        write!(f, "{}: x ↦ ({})", self.label, comps.join(", "))
    }
}

/// Labels are words `a*b*c`; products concatenate and the identity is dropped.
pub fn product_label(a: &str, b: &str) -> String {
    match (a, b) {
        (IDENTITY_LABEL, _) => b.to_string(),
        (_, IDENTITY_LABEL) => a.to_string(),
        _ => format!("{a}*{b}"),
    }
}

pub fn inverse_label(label: &str) -> String {
    if label == IDENTITY_LABEL {
        return label.to_string();
    }
    let letters: Vec<String> = label
        .split('*')
        .rev()
        .map(|l| match l.strip_suffix("^-1") {
            Some(base) => base.to_string(),
            None => format!("{l}^-1"),
        })
        .collect();
    letters.join("*")
}

fn invert_matrix<F: Scalar>(matrix: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = matrix.len();
    let mut aug: Vec<Vec<F>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(pivot, col);
        let pv = aug[col][col].clone();
        for c in 0..2 * n {
            aug[col][c] = aug[col][c].clone() / pv.clone();
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            for c in 0..2 * n {
                let sub = factor.clone() * aug[col][c].clone();
                aug[r][c] = aug[r][c].clone() - sub;
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// A named form preserved by a group.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedForm<F> {
    pub name: String,
    pub form: PolyForm<F>,
}

/// Finitely generated subgroup of `Diff(ℝⁿ)` together with forms every
/// generator (and hence every word) preserves.
#[derive(Clone, Debug)]
pub struct GroupPresentation<F> {
    dim: usize,
    generators: Vec<PolyDiffeo<F>>,
    preserved_forms: Vec<NamedForm<F>>,
}

impl<F: Scalar> GroupPresentation<F> {
    /// Validates dimensions, unique generator names, and invariance of every
    /// preserved form under every generator.
    pub fn new(dim: usize, generators: Vec<PolyDiffeo<F>>, preserved_forms: Vec<NamedForm<F>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let mut seen = HashSet::new();
        for g in &generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: g.dim() });
            }
            if !seen.insert(g.label.clone()) {
                return Err(Error::DuplicateGenerator(g.label.clone()));
            }
        }
        for nf in &preserved_forms {
            if nf.form.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: nf.form.dim() });
            }
            for g in &generators {
                if !g.preserves(&nf.form)? {
                    return Err(Error::NotInvariant { generator: g.label.clone(), form: nf.name.clone() });
                }
            }
        }
        Ok(Self { dim, generators, preserved_forms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[PolyDiffeo<F>] {
        &self.generators
    }

    pub fn preserved_forms(&self) -> &[NamedForm<F>] {
        &self.preserved_forms
    }

    /// Subgroup generated by the generators satisfying `keep`.
    pub fn restrict(&self, keep: impl Fn(&PolyDiffeo<F>) -> bool) -> Result<Self> {
        let generators: Vec<_> = self.generators.iter().filter(|g| keep(g)).cloned().collect();
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        Ok(Self { dim: self.dim, generators, preserved_forms: self.preserved_forms.clone() })
    }

    pub fn sampler(&self, max_length: usize, degree_cap: u32, seed: u64) -> WordSampler<'_, F> {
        WordSampler::new(self, max_length, degree_cap, seed)
    }

    /// `count` seeded random words of length `1..=max_length` in the
    /// generators and their inverses.
    pub fn sample_words(&self, count: usize, max_length: usize, seed: u64, degree_cap: u32) -> Result<Vec<PolyDiffeo<F>>> {
        let mut sampler = self.sampler(max_length, degree_cap, seed);
        (0..count).map(|_| sampler.next_word()).collect()
    }
}

/// Deterministic stream of random words over a presentation.
pub struct WordSampler<'a, F> {
    letters: Vec<PolyDiffeo<F>>,
    max_length: usize,
    degree_cap: u32,
    rng: ChaCha8Rng,
    _group: std::marker::PhantomData<&'a GroupPresentation<F>>,
}

impl<'a, F: Scalar> WordSampler<'a, F> {
    pub fn new(group: &'a GroupPresentation<F>, max_length: usize, degree_cap: u32, seed: u64) -> Self {
        assert!(max_length >= 1, "words need at least one letter");
        let letters = group.generators.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
        Self { letters, max_length, degree_cap, rng: ChaCha8Rng::seed_from_u64(seed), _group: std::marker::PhantomData }
    }

    pub fn next_word(&mut self) -> Result<PolyDiffeo<F>> {
        let len = self.rng.gen_range(1..=self.max_length);
        let mut word = self.letters[self.rng.gen_range(0..self.letters.len())].clone();
        for _ in 1..len {
            let letter = &self.letters[self.rng.gen_range(0..self.letters.len())];
            word = word.compose_capped(letter, self.degree_cap)?;
        }
        let degree = word.degree();
        if degree > self.degree_cap {
            return Err(Error::DegreeCapExceeded { label: word.label, degree, cap: self.degree_cap });
        }
        Ok(word)
    }

    pub fn next_tuple(&mut self, arity: usize) -> Result<Vec<PolyDiffeo<F>>> {
        (0..arity).map(|_| self.next_word()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Rational};

    type P = Polynomial<Rational>;
    type D = PolyDiffeo<Rational>;

    fn q(n: i64) -> Rational {
        rational(n, 1)
    }

    fn area() -> PolyForm<Rational> {
        PolyForm::dx(2, 0).wedge(&PolyForm::dx(2, 1)).unwrap()
    }

    fn sigma() -> D {
        D::shear(0, &P::var(2, 1) * &P::var(2, 1), "sigma").unwrap()
    }

    fn rot90() -> D {
        D::linear(&[vec![q(0), q(-1)], vec![q(1), q(0)]], "rot90").unwrap()
    }

    #[test]
    fn translations_compose_additively() {
        let a = D::translation(&[q(1), q(2)], "a");
        let b = D::translation(&[rational(1, 2), q(-5)], "b");
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab.translation_vector().unwrap(), vec![rational(3, 2), q(-3)]);
        assert_eq!(ab.label(), "a*b");
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn shear_after_translation() {
        let t = D::translation(&[q(0), q(1)], "T");
        let g = sigma().compose(&t).unwrap();
        let x = P::var(2, 0);
        let y1 = &P::var(2, 1) + &P::one(2);
        assert_eq!(g.forward(), &[&x + &(&y1 * &y1), y1.clone()]);
        assert!(D::new(g.forward().to_vec(), g.inverse_map().to_vec(), "check").is_ok());
    }

    #[test]
    fn identity_is_neutral() {
        let id = D::identity(2);
        let s = sigma();
        let left = id.compose(&s).unwrap();
        let right = s.compose(&id).unwrap();
        assert_eq!(left, s);
        assert_eq!(right, s);
    }

    #[test]
    fn construction_rejects_wrong_inverse() {
        let s = sigma();
        let err = D::new(s.forward().to_vec(), s.forward().to_vec(), "bad").unwrap_err();
        assert!(matches!(err, Error::InverseMismatch { .. }));
        assert_eq!(D::linear(&[vec![q(1), q(2)], vec![q(2), q(4)]], "s").unwrap_err(), Error::SingularMatrix);
        assert!(D::shear(0, P::var(2, 0), "s").is_err());
    }

    #[test]
    fn preservation_checks() {
        assert!(D::translation(&[q(3), q(-1)], "T").preserves(&area()).unwrap());
        assert!(sigma().preserves(&area()).unwrap());
        let stretch = D::linear(&[vec![q(2), q(0)], vec![q(0), q(1)]], "stretch").unwrap();
        assert!(!stretch.preserves(&area()).unwrap());
    }

    #[test]
    fn labels_invert_wordwise() {
        assert_eq!(inverse_label("a*b^-1*c"), "c^-1*b*a^-1");
        assert_eq!(inverse_label(&inverse_label("a*b")), "a*b");
        assert_eq!(product_label("id", "g"), "g");
    }

    #[test]
    fn sampling_is_deterministic_and_invariant() {
        let nf = NamedForm { name: "omega".into(), form: area() };
        let g = GroupPresentation::new(2, vec![D::translation(&[q(1), q(0)], "T1"), rot90()], vec![nf]).unwrap();
        let a = g.sample_words(5, 3, 7, 64).unwrap();
        let b = g.sample_words(5, 3, 7, 64).unwrap();
        assert_eq!(a, b);
        for w in &a {
            assert!(w.is_affine());
            assert!(w.preserves(&area()).unwrap());
        }
    }

    #[test]
    fn presentation_rejects_bad_input() {
        let nf = NamedForm { name: "omega".into(), form: area() };
        assert_eq!(GroupPresentation::new(2, vec![], vec![nf.clone()]).unwrap_err(), Error::EmptyGenerators);
        let stretch = D::linear(&[vec![q(2), q(0)], vec![q(0), q(1)]], "stretch").unwrap();
        let err = GroupPresentation::new(2, vec![stretch], vec![nf]).unwrap_err();
        assert_eq!(err, Error::NotInvariant { generator: "stretch".into(), form: "omega".into() });
    }

    #[test]
    fn degree_growth_and_cap() {
        let nf = NamedForm { name: "omega".into(), form: area() };
        let g = GroupPresentation::new(2, vec![sigma(), rot90()], vec![nf]).unwrap();
        // σ·rot·σ·rot has degree 4 forward, and the inverse grows as well
        let w = sigma().compose(&rot90()).unwrap().compose(&sigma()).unwrap().compose(&rot90()).unwrap();
        assert_eq!(w.forward().iter().map(|p| p.total_degree()).max(), Some(4));
        let err = sigma().compose(&rot90()).unwrap().compose_capped(&sigma(), 3).unwrap_err();
        assert!(matches!(err, Error::DegreeCapExceeded { cap: 3, .. }));
        let words = g.sample_words(20, 4, 11, 64).unwrap();
        assert!(words.iter().all(|w| w.degree() <= 16));
    }
}
