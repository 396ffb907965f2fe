//! Sparse multivariate polynomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::scalar::{from_int, Scalar};

/// Exponent vector, one entry per variable.
pub type Exponents = Vec<u32>;

/// A polynomial in `nvars` variables stored as a sorted map from exponent
/// vectors to non-zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<F> {
    nvars: usize,
    terms: BTreeMap<Exponents, F>,
}

impl<F: Scalar> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The coordinate function `x_i` (zero-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable {i} out of range for {nvars} variables");
        let mut exp = vec![0; nvars];
        exp[i] = 1;
        Self::monomial(nvars, exp, F::one())
    }

    pub fn monomial(nvars: usize, exp: Exponents, c: F) -> Self {
        assert_eq!(exp.len(), nvars, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { nvars, terms }
    }

    /// Builds a polynomial from possibly repeated terms; like terms are summed
    /// and zeros dropped.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, F)>,
    {
        let mut out = Self::zero(nvars);
        for (exp, c) in terms {
            assert_eq!(exp.len(), nvars, "exponent vector length");
            out.add_term(exp, c);
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&a| a == 0))
    }

    pub fn constant_term(&self) -> F {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(F::zero)
    }

    pub fn coefficient(&self, exp: &[u32]) -> F {
        self.terms.get(exp).cloned().unwrap_or_else(F::zero)
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, exp: Exponents, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a.clone() * c.clone())).collect(),
        }
    }

    /// Multiplies by the monomial `c * x^exp`.
    pub fn mul_monomial(&self, exp: &[u32], c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, a)| {
                let shifted = e.iter().zip(exp).map(|(x, y)| x + y).collect();
                (shifted, a.clone() * c.clone())
            })
            .collect();
        Self { nvars: self.nvars, terms }
    }

    pub fn partial(&self, var: usize) -> Self {
        assert!(var < self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[var] -= 1;
            out.terms.insert(d, c.clone() * from_int::<F>(e[var] as i64));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars, "evaluation point dimension");
        let mut cache = PowerTable::new(point);
        self.terms.iter().fold(F::zero(), |acc, (e, c)| {
            let mut t = c.clone();
            for (i, &a) in e.iter().enumerate() {
                if a > 0 {
                    t = t * cache.get(i, a);
                }
            }
            acc + t
        })
    }

    /// Substitutes `images[i]` for `x_i`. All images must share one ring.
    pub fn compose(&self, images: &[Polynomial<F>]) -> Polynomial<F> {
        Substitution::new(images).apply(self)
    }

    /// Splits off the homogeneous piece of each total degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, Polynomial<F>> {
        let mut parts: BTreeMap<u32, Polynomial<F>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let s = e.iter().sum();
            parts.entry(s).or_insert_with(|| Self::zero(self.nvars)).terms.insert(e.clone(), c.clone());
        }
        parts
    }
}

struct PowerTable<'a, F> {
    base: &'a [F],
    powers: Vec<Vec<F>>,
}

impl<'a, F: Scalar> PowerTable<'a, F> {
    fn new(base: &'a [F]) -> Self {
        Self { base, powers: vec![Vec::new(); base.len()] }
    }

    fn get(&mut self, i: usize, k: u32) -> F {
        let row = &mut self.powers[i];
        if row.is_empty() {
            row.push(F::one());
        }
        while row.len() <= k as usize {
            let next = row.last().unwrap().clone() * self.base[i].clone();
            row.push(next);
        }
        row[k as usize].clone()
    }
}

/// Reusable substitution `x_i -> images[i]`, caching the powers of every
/// image so that repeated compositions against the same map stay cheap.
pub struct Substitution<'a, F> {
    images: &'a [Polynomial<F>],
    target_nvars: usize,
    powers: Vec<Vec<Polynomial<F>>>,
}

impl<'a, F: Scalar> Substitution<'a, F> {
    pub fn new(images: &'a [Polynomial<F>]) -> Self {
        let target_nvars = images.first().map(|p| p.nvars).unwrap_or(0);
        assert!(images.iter().all(|p| p.nvars == target_nvars), "substituted polynomials live in different rings");
        Self { images, target_nvars, powers: vec![Vec::new(); images.len()] }
    }

    fn power(&mut self, i: usize, k: u32) -> &Polynomial<F> {
        let row = &mut self.powers[i];
        if row.is_empty() {
            row.push(Polynomial::one(self.target_nvars));
        }
        while row.len() <= k as usize {
            let next = row.last().unwrap() * &self.images[i];
            row.push(next);
        }
        &self.powers[i][k as usize]
    }

    pub fn apply(&mut self, p: &Polynomial<F>) -> Polynomial<F> {
        assert_eq!(p.nvars, self.images.len(), "substitution arity");
        let mut acc: HashMap<Exponents, F> = HashMap::new();
        for (e, c) in &p.terms {
            let mut term = Polynomial::constant(self.target_nvars, c.clone());
            for (i, &a) in e.iter().enumerate() {
                if a > 0 {
                    let pw = self.power(i, a).clone();
                    term = &term * &pw;
                }
            }
            for (te, tc) in term.terms {
                accumulate(&mut acc, te, tc);
            }
        }
        Polynomial::from_accumulator(self.target_nvars, acc)
    }
}

fn accumulate<F: Scalar>(acc: &mut HashMap<Exponents, F>, e: Exponents, c: F) {
    match acc.get_mut(&e) {
        Some(v) => *v = v.clone() + c,
        None => {
            acc.insert(e, c);
        }
    }
}

impl<F: Scalar> Polynomial<F> {
    fn from_accumulator(nvars: usize, acc: HashMap<Exponents, F>) -> Self {
        Self { nvars, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl<F: Scalar> Add for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn add(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<F: Scalar> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn sub(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<F: Scalar> AddAssign<&Polynomial<F>> for Polynomial<F> {
    fn add_assign(&mut self, rhs: &Polynomial<F>) {
        assert_eq!(self.nvars, rhs.nvars, "polynomial ring mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl<F: Scalar> SubAssign<&Polynomial<F>> for Polynomial<F> {
    fn sub_assign(&mut self, rhs: &Polynomial<F>) {
        assert_eq!(self.nvars, rhs.nvars, "polynomial ring mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c.clone());
        }
    }
}

impl<F: Scalar> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn mul(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        assert_eq!(self.nvars, rhs.nvars, "polynomial ring mismatch");
        let mut acc: HashMap<Exponents, F> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                accumulate(&mut acc, e, c1.clone() * c2.clone());
            }
        }
        Polynomial::from_accumulator(self.nvars, acc)
    }
}

impl<F: Scalar> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn neg(self) -> Polynomial<F> {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl<F: Scalar> $tr for Polynomial<F> {
            type Output = Polynomial<F>;

            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<F: Scalar> Neg for Polynomial<F> {
    type Output = Polynomial<F>;

    fn neg(self) -> Polynomial<F> {
        -&self
    }
}

impl<F: Scalar + fmt::Display> fmt::Display for Polynomial<F> {
    /// Human-readable form with variables `x1..xn`, highest exponents first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let is_unit_monomial = e.iter().any(|&a| a > 0) && mag.is_one();
            let mut first = true;
            if !is_unit_monomial {
                write!(f, "{mag}")?;
                first = false;
            }
            for (i, &a) in e.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "x{}", i + 1)?;
                if a > 1 {
                    write!(f, "^{a}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Rational};

    type P = Polynomial<Rational>;

    fn x() -> P {
        P::var(2, 0)
    }
    fn y() -> P {
        P::var(2, 1)
    }

    #[test]
    fn arithmetic_cancels_to_zero() {
        let p = &(&x() + &y()) * &(&x() - &y());
        let q = &(&x() * &x()) - &(&y() * &y());
        assert_eq!(p, q);
        assert!((&p - &q).is_zero());
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn partial_derivative() {
        let p = &(&x() * &x()) * &y();
        assert_eq!(p.partial(0), &x().scale(&rational(2, 1)) * &y());
        assert_eq!(p.partial(1), &x() * &x());
    }

    #[test]
    fn compose_substitutes() {
        // (x + y^2)∘(x + 1, y) = x + 1 + y^2
        let p = &x() + &(&y() * &y());
        let shifted = p.compose(&[&x() + &P::one(2), y()]);
        assert_eq!(shifted, &(&x() + &P::one(2)) + &(&y() * &y()));
    }

    #[test]
    fn eval_and_display() {
        let p = &(&x() * &x()).scale(&rational(3, 2)) - &y();
        assert_eq!(p.eval(&[rational(2, 1), rational(1, 3)]), rational(17, 3));
        assert_eq!(p.to_string(), "3/2*x1^2 - x2");
        assert_eq!(P::zero(2).to_string(), "0");
    }

    #[test]
    fn homogeneous_split() {
        let p = &(&x() * &y()) + &(&x() + &P::one(2));
        let parts = p.homogeneous_parts();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[&2], &x() * &y());
    }
}
