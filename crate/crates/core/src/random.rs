//! Seeded random inputs for property checks and the verification commands.
//! Everything goes through one `ChaCha8Rng`, so a seed fixes the whole stream.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chains::{AffineSimplex, Chain};
use crate::diffeo::PolyDiffeo;
use crate::poly_forms::{MultiIndex, PolyForm, PolyVectorField, Polynomial};
use crate::scalar::{ratio, Scalar};

/// Bounds on generated data. Coefficients are `p/q` with `|p| ≤ numerator`,
/// `1 ≤ q ≤ denominator`.
#[derive(Clone, Copy, Debug)]
pub struct Bounds {
    pub numerator: i64,
    pub denominator: i64,
    pub max_degree: u32,
    pub max_terms: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Self { numerator: 5, denominator: 3, max_degree: 3, max_terms: 4 }
    }
}

pub struct RandomInputs {
    rng: ChaCha8Rng,
    bounds: Bounds,
}

impl RandomInputs {
    pub fn new(seed: u64) -> Self {
        Self::with_bounds(seed, Bounds::default())
    }

    pub fn with_bounds(seed: u64, bounds: Bounds) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), bounds }
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn scalar<F: Scalar>(&mut self) -> F {
        let b = self.bounds;
        ratio(self.rng.gen_range(-b.numerator..=b.numerator), self.rng.gen_range(1..=b.denominator))
    }

    pub fn nonzero_scalar<F: Scalar>(&mut self) -> F {
        loop {
            let c: F = self.scalar();
            if !c.is_zero() {
                return c;
            }
        }
    }

    pub fn vector<F: Scalar>(&mut self, n: usize) -> Vec<F> {
        (0..n).map(|_| self.scalar()).collect()
    }

    fn exponents(&mut self, n: usize, vars: &[usize], max_degree: u32) -> Vec<u32> {
        let mut exp = vec![0; n];
        if vars.is_empty() {
            return exp;
        }
        let total = self.rng.gen_range(0..=max_degree);
        for _ in 0..total {
            exp[vars[self.rng.gen_range(0..vars.len())]] += 1;
        }
        exp
    }

    pub fn polynomial<F: Scalar>(&mut self, n: usize) -> Polynomial<F> {
        let all: Vec<usize> = (0..n).collect();
        self.polynomial_in(n, &all, self.bounds.max_degree)
    }

    /// Polynomial in `n` variables that only involves `vars`.
    pub fn polynomial_in<F: Scalar>(&mut self, n: usize, vars: &[usize], max_degree: u32) -> Polynomial<F> {
        let count = self.rng.gen_range(1..=self.bounds.max_terms);
        let terms: Vec<_> = (0..count).map(|_| (self.exponents(n, vars, max_degree), self.scalar())).collect();
        Polynomial::from_terms(n, terms)
    }

    pub fn form<F: Scalar>(&mut self, n: usize, k: usize) -> PolyForm<F> {
        let mut components = Vec::new();
        for idx in MultiIndex::all(n, k) {
            if self.rng.gen_bool(0.6) {
                components.push((idx, self.polynomial(n)));
            }
        }
        PolyForm::from_components(n, k, components).expect("indices come from MultiIndex::all")
    }

    /// Constant-coefficient `k`-form; never zero when `k ≤ n`.
    pub fn constant_form<F: Scalar>(&mut self, n: usize, k: usize) -> PolyForm<F> {
        let basis = MultiIndex::all(n, k);
        if basis.is_empty() {
            return PolyForm::zero(n, k);
        }
        let forced = self.rng.gen_range(0..basis.len());
        let mut components = Vec::new();
        for (i, idx) in basis.into_iter().enumerate() {
            let c: F = if i == forced { self.nonzero_scalar() } else { self.scalar() };
            components.push((idx, Polynomial::constant(n, c)));
        }
        PolyForm::from_components(n, k, components).expect("indices come from MultiIndex::all")
    }

    pub fn vector_field<F: Scalar>(&mut self, n: usize) -> PolyVectorField<F> {
        PolyVectorField::new((0..n).map(|_| self.polynomial(n)).collect())
    }

    pub fn simplex<F: Scalar>(&mut self, n: usize, k: usize) -> AffineSimplex<F> {
        AffineSimplex::new((0..=k).map(|_| self.vector(n)).collect()).expect("vertices share ambient dimension")
    }

    /// Integer combination of up to three random `k`-simplices.
    pub fn chain<F: Scalar>(&mut self, n: usize, k: usize) -> Chain<F> {
        let count = self.rng.gen_range(1..=3);
        let terms: Vec<_> = (0..count).map(|_| (self.simplex(n, k), ratio(self.rng.gen_range(-2..=2), 1))).collect();
        Chain::from_terms(n, k, terms).expect("simplices share dimensions")
    }

    pub fn translation<F: Scalar>(&mut self, n: usize) -> PolyDiffeo<F> {
        let shift: Vec<F> = self.vector(n);
        let label = format!("T({})", shift.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","));
        PolyDiffeo::translation(&shift, label)
    }

    /// Product of a few elementary matrices `1 + c·E_ij`: linear, determinant
    /// one, so it fixes the origin and preserves the standard volume form.
    pub fn unimodular_linear<F: Scalar>(&mut self, n: usize, label: impl Into<String>) -> PolyDiffeo<F> {
        let mut m: Vec<Vec<F>> = (0..n).map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect();
        for _ in 0..if n > 1 { 3 } else { 0 } {
            let i = self.rng.gen_range(0..n);
            let j = (i + self.rng.gen_range(1..n)) % n;
            let c: F = self.scalar();
            // row_i += c * row_j
            let row_j = m[j].clone();
            for (a, b) in m[i].iter_mut().zip(row_j) {
                *a = a.clone() + c.clone() * b;
            }
        }
        PolyDiffeo::linear(&m, label).expect("unimodular matrices are invertible")
    }

    /// `x_axis ↦ x_axis + p(other coordinates)` with `p(0) = 0`: preserves the
    /// standard volume form and fixes the origin.
    pub fn origin_fixing_shear<F: Scalar>(&mut self, n: usize, label: impl Into<String>) -> PolyDiffeo<F> {
        let axis = self.rng.gen_range(0..n);
        let others: Vec<usize> = (0..n).filter(|&i| i != axis).collect();
        let p = self.polynomial_in(n, &others, self.bounds.max_degree);
        let p = &p - &Polynomial::constant(n, p.constant_term());
        PolyDiffeo::shear(axis, p, label).expect("shear polynomial avoids its own axis")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn same_seed_same_stream() {
        let mut a = RandomInputs::new(9);
        let mut b = RandomInputs::new(9);
        for _ in 0..5 {
            assert_eq!(a.form::<Rational>(3, 2), b.form::<Rational>(3, 2));
        }
    }

    #[test]
    fn constant_forms_are_nonzero() {
        let mut r = RandomInputs::new(1);
        for k in 1..=4 {
            let w: PolyForm<Rational> = r.constant_form(4, k);
            assert!(!w.is_zero() && w.is_constant_coefficient());
        }
    }

    #[test]
    fn shears_fix_origin_and_volume() {
        let mut r = RandomInputs::new(4);
        let vol = PolyForm::<Rational>::dx(3, 0).wedge(&PolyForm::dx(3, 1)).unwrap().wedge(&PolyForm::dx(3, 2)).unwrap();
        for i in 0..10 {
            let g: PolyDiffeo<Rational> = r.origin_fixing_shear(3, format!("s{i}"));
            let origin = vec![Rational::default(); 3];
            assert_eq!(g.apply(&origin), origin);
            assert!(g.preserves(&vol).unwrap());
            let l: PolyDiffeo<Rational> = r.unimodular_linear(3, format!("l{i}"));
            assert!(l.is_affine() && l.preserves(&vol).unwrap());
        }
    }
}
