use crate::poly_forms::Polynomial;
use crate::scalar::Scalar;

/// Vector field on ℝⁿ with polynomial components.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyVectorField<F> {
    components: Vec<Polynomial<F>>,
}

impl<F: Scalar> PolyVectorField<F> {
    pub fn new(components: Vec<Polynomial<F>>) -> Self {
        let n = components.len();
        assert!(components.iter().all(|c| c.nvars() == n), "vector field components must live on ℝ^{n}");
        Self { components }
    }

    pub fn constant(vector: &[F]) -> Self {
        let n = vector.len();
        Self { components: vector.iter().map(|c| Polynomial::constant(n, c.clone())).collect() }
    }

    /// ∂/∂x_i
    pub fn coordinate(n: usize, axis: usize) -> Self {
        Self { components: (0..n).map(|i| Polynomial::constant(n, if i == axis { F::one() } else { F::zero() })).collect() }
    }

    /// Euler (radial) field `Σ x_i ∂/∂x_i`.
    pub fn euler(n: usize) -> Self {
        Self { components: (0..n).map(|i| Polynomial::var(n, i)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial<F>] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial<F> {
        &self.components[i]
    }

    /// Directional derivative `X(f)`.
    pub fn apply(&self, f: &Polynomial<F>) -> Polynomial<F> {
        let mut out = Polynomial::zero(f.nvars());
        for (i, c) in self.components.iter().enumerate() {
            out += &(c * &f.partial(i));
        }
        out
    }

    /// Lie bracket `[X, Y] = X(Y) - Y(X)` componentwise.
    pub fn bracket(&self, other: &PolyVectorField<F>) -> PolyVectorField<F> {
        assert_eq!(self.dim(), other.dim());
        let components = (0..self.dim())
            .map(|j| &self.apply(&other.components[j]) - &other.apply(&self.components[j]))
            .collect();
        Self { components }
    }
}
