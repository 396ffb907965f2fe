//! Differential forms on ℝⁿ with polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly_forms::{MultiIndex, PolyVectorField, Polynomial, Substitution};
use crate::scalar::{from_int, Scalar};

/// A `degree`-form on ℝ^`dim`: `Σ_I f_I dx_I` over strictly increasing
/// multi-indices `I`. Components with zero coefficient are never stored, and a
/// degree above `dim` simply yields the zero form.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyForm<F> {
    dim: usize,
    degree: usize,
    components: BTreeMap<MultiIndex, Polynomial<F>>,
}

impl<F: Scalar> PolyForm<F> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Self { dim, degree, components: BTreeMap::new() }
    }

    /// A 0-form.
    pub fn function(f: Polynomial<F>) -> Self {
        let mut out = Self::zero(f.nvars(), 0);
        out.insert(MultiIndex::empty(), f);
        out
    }

    /// `c · dx_I` for a constant `c`.
    pub fn basis(dim: usize, index: MultiIndex, c: F) -> Self {
        let mut out = Self::zero(dim, index.len());
        out.insert(index, Polynomial::constant(dim, c));
        out
    }

    /// `dx_i` (zero-based axis).
    pub fn dx(dim: usize, axis: usize) -> Self {
        Self::basis(dim, MultiIndex::single(axis), F::one())
    }

    /// `Σ_i coeffs[i] dx_i`.
    pub fn one_form(coeffs: Vec<Polynomial<F>>) -> Self {
        let dim = coeffs.len();
        let mut out = Self::zero(dim, 1);
        for (i, c) in coeffs.into_iter().enumerate() {
            out.insert(MultiIndex::single(i), c);
        }
        out
    }

    pub fn from_components<I>(dim: usize, degree: usize, components: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Polynomial<F>)>,
    {
        let mut out = Self::zero(dim, degree);
        for (idx, p) in components {
            if idx.len() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: idx.len() });
            }
            if idx.axes().iter().any(|&a| a >= dim) {
                return Err(Error::InvalidMultiIndex { axes: idx.axes().to_vec(), dim });
            }
            if p.nvars() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.nvars() });
            }
            out.insert(idx, p);
        }
        Ok(out)
    }

    fn insert(&mut self, idx: MultiIndex, p: Polynomial<F>) {
        debug_assert_eq!(idx.len(), self.degree);
        if p.is_zero() {
            return;
        }
        match self.components.get_mut(&idx) {
            Some(existing) => {
                *existing += &p;
                if existing.is_zero() {
                    self.components.remove(&idx);
                }
            }
            None => {
                self.components.insert(idx, p);
            }
        }
    }

    fn insert_signed(&mut self, idx: MultiIndex, p: Polynomial<F>, negate: bool) {
        self.insert(idx, if negate { -p } else { p });
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> impl Iterator<Item = (&MultiIndex, &Polynomial<F>)> {
        self.components.iter()
    }

    pub fn coefficient(&self, idx: &MultiIndex) -> Polynomial<F> {
        self.components.get(idx).cloned().unwrap_or_else(|| Polynomial::zero(self.dim))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_constant_coefficient(&self) -> bool {
        self.components.values().all(Polynomial::is_constant)
    }

    pub fn is_closed(&self) -> bool {
        self.ext_d().is_zero()
    }

    /// Largest total degree among the coefficients.
    pub fn coefficient_degree(&self) -> u32 {
        self.components.values().map(Polynomial::total_degree).max().unwrap_or(0)
    }

    /// Coefficient of a 0-form; zero for the zero form.
    pub fn as_function(&self) -> Option<Polynomial<F>> {
        (self.degree == 0).then(|| self.coefficient(&MultiIndex::empty()))
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (idx, p) in &self.components {
            out.insert(idx.clone(), p.scale(c));
        }
        out
    }

    pub fn mul_function(&self, f: &Polynomial<F>) -> Self {
        assert_eq!(f.nvars(), self.dim);
        let mut out = Self::zero(self.dim, self.degree);
        for (idx, p) in &self.components {
            out.insert(idx.clone(), p * f);
        }
        out
    }

    fn check_same_shape(&self, other: &Self) {
        assert_eq!(self.dim, other.dim, "forms on different spaces");
        assert_eq!(self.degree, other.degree, "forms of different degree");
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        if self.degree + other.degree > self.dim {
            return Ok(out);
        }
        for (i, p) in &self.components {
            for (j, q) in &other.components {
                if let Some((odd, merged)) = i.merge(j) {
                    out.insert_signed(merged, p * q, odd);
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative.
    pub fn ext_d(&self) -> Self {
        let mut out = Self::zero(self.dim, self.degree + 1);
        for (idx, p) in &self.components {
            for axis in 0..self.dim {
                if idx.contains(axis) {
                    continue;
                }
                let dp = p.partial(axis);
                if dp.is_zero() {
                    continue;
                }
                let (odd, merged) = MultiIndex::single(axis).merge(idx).expect("axis not in index");
                out.insert_signed(merged, dp, odd);
            }
        }
        out
    }

    /// Contraction `i(X)α`, with `X` filling the first argument slot, so that
    /// `i(X_p)…i(X_1)ω` evaluated on nothing equals `ω(X_1, …, X_p)`.
    ///
    /// On 0-forms this is the zero 0-form.
    pub fn interior(&self, field: &PolyVectorField<F>) -> Self {
        assert_eq!(field.dim(), self.dim, "vector field on a different space");
        if self.degree == 0 {
            return Self::zero(self.dim, 0);
        }
        let mut out = Self::zero(self.dim, self.degree - 1);
        for (idx, p) in &self.components {
            for (pos, &axis) in idx.axes().iter().enumerate() {
                let x = field.component(axis);
                if x.is_zero() {
                    continue;
                }
                out.insert_signed(idx.without_position(pos), p * x, pos % 2 == 1);
            }
        }
        out
    }

    /// Contraction with a constant vector.
    pub fn interior_const(&self, vector: &[F]) -> Self {
        self.interior(&PolyVectorField::constant(vector))
    }

    /// `L_X α = d i(X) α + i(X) d α`.
    pub fn lie_derivative(&self, field: &PolyVectorField<F>) -> Self {
        if self.degree == 0 {
            // i(X) f = 0 has no degree -1 representative; L_X f = X(f)
            return self.ext_d().interior(field);
        }
        &self.interior(field).ext_d() + &self.ext_d().interior(field)
    }

    /// Pullback `φ*α` along the polynomial map `x ↦ (map[0](x), …)`.
    pub fn pullback(&self, map: &[Polynomial<F>]) -> Result<Self> {
        if map.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: map.len() });
        }
        if let Some(bad) = map.iter().find(|p| p.nvars() != self.dim) {
            return Err(Error::DimensionMismatch { expected: self.dim, found: bad.nvars() });
        }
        let differentials: Vec<PolyForm<F>> = map
            .iter()
            .map(|phi| PolyForm::one_form((0..self.dim).map(|j| phi.partial(j)).collect()))
            .collect();
        let mut subst = Substitution::new(map);
        let mut out = Self::zero(self.dim, self.degree);
        for (idx, p) in &self.components {
            let coeff = subst.apply(p);
            if coeff.is_zero() {
                continue;
            }
            let mut frame = PolyForm::function(Polynomial::one(self.dim));
            for &axis in idx.axes() {
                frame = frame.wedge(&differentials[axis])?;
            }
            for (fidx, fp) in frame.components {
                out.insert(fidx, &coeff * &fp);
            }
        }
        Ok(out)
    }

    /// Poincaré homotopy operator centred at the origin.
    ///
    /// A term `c·x^a dx_I` of form degree `k ≥ 1` and coefficient degree
    /// `s = |a|` maps to `c/(k+s) · x^a · i(E) dx_I`, where `E` is the Euler
    /// field. This gives `d h + h d = id` in degrees `≥ 1` and
    /// `h d f = f - f(0)` on functions. On 0-forms `h` is zero.
    pub fn homotopy(&self) -> Self {
        let k = self.degree;
        if k == 0 {
            return Self::zero(self.dim, 0);
        }
        let mut out = Self::zero(self.dim, k - 1);
        for (idx, p) in &self.components {
            for (pos, &axis) in idx.axes().iter().enumerate() {
                let mut piece = Polynomial::zero(self.dim);
                for (exp, c) in p.terms() {
                    let s: u32 = exp.iter().sum();
                    let mut shifted = exp.clone();
                    shifted[axis] += 1;
                    piece.add_term(shifted, c.clone() / from_int::<F>((k as u32 + s) as i64));
                }
                out.insert_signed(idx.without_position(pos), piece, pos % 2 == 1);
            }
        }
        out
    }

    /// Value `α_x(v_1, …, v_k)`, computed from the minors of the vector matrix.
    pub fn evaluate(&self, point: &[F], vectors: &[Vec<F>]) -> Result<F> {
        if vectors.len() != self.degree {
            return Err(Error::WrongVectorCount { expected: self.degree, found: vectors.len() });
        }
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: point.len() });
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != self.dim) {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        let mut total = F::zero();
        for (idx, p) in &self.components {
            let minor: Vec<Vec<F>> =
                idx.axes().iter().map(|&axis| vectors.iter().map(|v| v[axis].clone()).collect()).collect();
            total = total + p.eval(point) * determinant(minor);
        }
        Ok(total)
    }

    /// Substitutes a point into all coefficients, leaving a constant form.
    pub fn at_point(&self, point: &[F]) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (idx, p) in &self.components {
            out.insert(idx.clone(), Polynomial::constant(self.dim, p.eval(point)));
        }
        out
    }
}

/// Determinant by Gaussian elimination over the field.
pub(crate) fn determinant<F: Scalar>(mut m: Vec<Vec<F>>) -> F {
    let n = m.len();
    let mut det = F::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return F::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det = det * pv.clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / pv.clone();
            for c in col..n {
                let sub = factor.clone() * m[col][c].clone();
                m[r][c] = m[r][c].clone() - sub;
            }
        }
    }
    det
}

impl<F: Scalar> Add for &PolyForm<F> {
    type Output = PolyForm<F>;

    fn add(self, rhs: &PolyForm<F>) -> PolyForm<F> {
        self.check_same_shape(rhs);
        let mut out = self.clone();
        for (idx, p) in &rhs.components {
            out.insert(idx.clone(), p.clone());
        }
        out
    }
}

impl<F: Scalar> Sub for &PolyForm<F> {
    type Output = PolyForm<F>;

    fn sub(self, rhs: &PolyForm<F>) -> PolyForm<F> {
        self.check_same_shape(rhs);
        let mut out = self.clone();
        for (idx, p) in &rhs.components {
            out.insert(idx.clone(), -p);
        }
        out
    }
}

impl<F: Scalar> Neg for &PolyForm<F> {
    type Output = PolyForm<F>;

    fn neg(self) -> PolyForm<F> {
        self.scale(&-F::one())
    }
}

impl<F: Scalar> Add for PolyForm<F> {
    type Output = PolyForm<F>;

    fn add(self, rhs: PolyForm<F>) -> PolyForm<F> {
        &self + &rhs
    }
}

impl<F: Scalar> Sub for PolyForm<F> {
    type Output = PolyForm<F>;

    fn sub(self, rhs: PolyForm<F>) -> PolyForm<F> {
        &self - &rhs
    }
}

impl<F: Scalar> Neg for PolyForm<F> {
    type Output = PolyForm<F>;

    fn neg(self) -> PolyForm<F> {
        -&self
    }
}

impl<F: Scalar + fmt::Display> fmt::Display for PolyForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(idx, p)| if idx.is_empty() { format!("{p}") } else { format!("({p}) {idx}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Rational};

    type P = Polynomial<Rational>;
    type Form = PolyForm<Rational>;

    fn x() -> P {
        P::var(2, 0)
    }
    fn y() -> P {
        P::var(2, 1)
    }
    fn dx() -> Form {
        Form::dx(2, 0)
    }
    fn dy() -> Form {
        Form::dx(2, 1)
    }
    fn area() -> Form {
        dx().wedge(&dy()).unwrap()
    }
    fn q(n: i64, d: i64) -> Rational {
        rational(n, d)
    }

    #[test]
    fn wedge_basis_and_antisymmetry() {
        let dxdy = area();
        assert_eq!(dxdy, Form::basis(2, MultiIndex::new(vec![0, 1], 2).unwrap(), q(1, 1)));
        assert!(dx().wedge(&dx()).unwrap().is_zero());
        assert_eq!(dy().wedge(&dx()).unwrap(), -&dxdy);
    }

    #[test]
    fn wedge_of_polynomial_one_forms() {
        // (x dy) ∧ (y dx) = -xy dx∧dy
        let a = dy().mul_function(&x());
        let b = dx().mul_function(&y());
        let expected = area().mul_function(&(&x() * &y())).scale(&q(-1, 1));
        assert_eq!(a.wedge(&b).unwrap(), expected);
    }

    #[test]
    fn wedge_dimension_mismatch() {
        let err = Form::dx(3, 0).wedge(&dx()).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 3, found: 2 });
    }

    #[test]
    fn wedge_above_top_degree_is_zero_form() {
        let w = area().wedge(&dx()).unwrap();
        assert!(w.is_zero());
        assert_eq!(w.degree(), 3);
    }

    #[test]
    fn exterior_derivative_examples() {
        assert_eq!(dy().mul_function(&x()).ext_d(), area());
        assert!(area().scale(&q(7, 3)).ext_d().is_zero());
        let f = Form::function(&(&x() * &x()) * &y());
        assert!(f.ext_d().ext_d().is_zero());
        assert_eq!(f.ext_d().degree(), 1);
    }

    #[test]
    fn interior_examples() {
        let ex = PolyVectorField::coordinate(2, 0);
        assert_eq!(area().interior(&ex), dy());
        let v = area().interior_const(&[q(2, 1), q(3, 1)]);
        assert!(v.interior_const(&[q(2, 1), q(3, 1)]).is_zero());
        let c = dx().interior_const(&[q(2, 1), q(3, 1)]);
        assert_eq!(c, Form::function(P::constant(2, q(2, 1))));
        assert!(Form::function(x()).interior(&ex).is_zero());
    }

    #[test]
    fn interior_order_matches_evaluation() {
        // i(X2) i(X1) ω = ω(X1, X2)
        let a = [q(1, 2), q(-3, 1)];
        let b = [q(5, 1), q(2, 7)];
        let contracted = area().interior_const(&a).interior_const(&b);
        let value = area().evaluate(&[q(0, 1), q(0, 1)], &[a.to_vec(), b.to_vec()]).unwrap();
        assert_eq!(contracted.as_function().unwrap().constant_term(), value);
    }

    #[test]
    fn pullback_examples() {
        let shift = vec![&x() + &P::one(2), y()];
        assert_eq!(dx().pullback(&shift).unwrap(), dx());
        assert_eq!(dy().mul_function(&x()).pullback(&shift).unwrap(), dy().mul_function(&(&x() + &P::one(2))));
        let shear = vec![&x() + &(&y() * &y()), y()];
        assert_eq!(area().pullback(&shear).unwrap(), area());
        let stretch = vec![x().scale(&q(2, 1)), y()];
        assert_eq!(area().pullback(&stretch).unwrap(), area().scale(&q(2, 1)));
    }

    #[test]
    fn pullback_dimension_mismatch() {
        assert!(dx().pullback(&[x()]).is_err());
    }

    #[test]
    fn homotopy_examples() {
        let dx1 = Form::dx(1, 0);
        assert_eq!(dx1.homotopy(), Form::function(P::var(1, 0)));
        // h(dx∧dy) = (x dy - y dx)/2
        let expected = &dy().mul_function(&x()).scale(&q(1, 2)) - &dx().mul_function(&y()).scale(&q(1, 2));
        assert_eq!(area().homotopy(), expected);
        // h(x dy) = xy/2
        let a = dy().mul_function(&x());
        assert_eq!(a.homotopy(), Form::function((&x() * &y()).scale(&q(1, 2))));
        assert_eq!(&a.ext_d().homotopy() + &a.homotopy().ext_d(), a);
    }

    #[test]
    fn homotopy_on_functions() {
        let f = &(&x() * &y()) + &P::constant(2, q(5, 1));
        let hdf = Form::function(f.clone()).ext_d().homotopy();
        assert_eq!(hdf.as_function().unwrap(), &f - &P::constant(2, q(5, 1)));
        assert!(Form::function(f).homotopy().is_zero());
    }

    #[test]
    fn lie_derivative_of_constant_form_along_euler() {
        let e = PolyVectorField::euler(2);
        assert_eq!(area().lie_derivative(&e), area().scale(&q(2, 1)));
        assert!(area().lie_derivative(&PolyVectorField::constant(&[q(1, 1), q(4, 1)])).is_zero());
    }

    #[test]
    fn evaluate_examples() {
        let z = [q(0, 1), q(0, 1)];
        let e1 = vec![q(1, 1), q(0, 1)];
        let e2 = vec![q(0, 1), q(1, 1)];
        assert_eq!(area().evaluate(&z, &[e1.clone(), e2.clone()]).unwrap(), q(1, 1));
        assert_eq!(area().evaluate(&z, &[e1.clone(), e1.clone()]).unwrap(), q(0, 1));
        let a = dy().mul_function(&x());
        assert_eq!(a.evaluate(&[q(3, 1), q(5, 1)], &[e2]).unwrap(), q(3, 1));
        assert_eq!(area().evaluate(&z, &[e1]).unwrap_err(), Error::WrongVectorCount { expected: 2, found: 1 });
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = vec![
            vec![q(2, 1), q(0, 1), q(1, 1)],
            vec![q(1, 1), q(3, 1), q(2, 1)],
            vec![q(1, 1), q(1, 1), q(1, 1)],
        ];
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(determinant(m), q(0, 1));
        assert_eq!(determinant(vec![vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(0, 1)]]), q(-1, 1));
    }
}
