//! Nonhomogeneous group cochains with values in forms and in the scalars.
//!
//! `C^p(G, Ω^q(ℝⁿ))` carries the group differential `δ'` (right action by
//! pullback) and the form differential `δ'' = (-1)^p d`; `C^p(G, F)` with the
//! trivial action carries `D`. Cochains on an infinite group cannot be
//! tabulated, so they are memoised evaluators on tuples of group elements.
//! The memo is keyed by element labels, which the word machinery in
//! [`crate::diffeo`] keeps unique per element.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::chains::{integrate_translated, Chain};
use crate::diffeo::PolyDiffeo;
use crate::error::{Error, Result};
use crate::poly_forms::{MultiIndex, PolyForm, Polynomial};
use crate::scalar::{sign, Scalar};

type FormEvaluator<F> = dyn Fn(&[PolyDiffeo<F>]) -> Result<PolyForm<F>> + Send + Sync;
type ScalarEvaluator<F> = dyn Fn(&[PolyDiffeo<F>]) -> Result<F> + Send + Sync;

fn memo_key<F>(tuple: &[PolyDiffeo<F>]) -> Vec<String>
where
    F: Scalar,
{
    tuple.iter().map(|g| g.label().to_string()).collect()
}

/// `(g_1, …, g_i g_{i+1}, …, g_{p+1})`, merging positions `i-1` and `i`.
fn merge_adjacent<F: Scalar>(tuple: &[PolyDiffeo<F>], i: usize, cap: Option<u32>) -> Result<Vec<PolyDiffeo<F>>> {
    let product = match cap {
        Some(cap) => tuple[i - 1].compose_capped(&tuple[i], cap)?,
        None => tuple[i - 1].compose(&tuple[i])?,
    };
    let mut args = Vec::with_capacity(tuple.len() - 1);
    args.extend_from_slice(&tuple[..i - 1]);
    args.push(product);
    args.extend_from_slice(&tuple[i + 1..]);
    Ok(args)
}

struct FormInner<F> {
    group_degree: usize,
    form_degree: usize,
    dim: usize,
    evaluator: Box<FormEvaluator<F>>,
    memo: Mutex<HashMap<Vec<String>, PolyForm<F>>>,
}

/// Element of `C^p(G, Ω^q(ℝⁿ))`. Cloning shares the evaluator and its memo.
pub struct FormCochain<F> {
    inner: Arc<FormInner<F>>,
}

impl<F> Clone for FormCochain<F> {
    fn clone(&self) -> Self {
        Self { inner: Arc::clone(&self.inner) }
    }
}

impl<F> fmt::Debug for FormCochain<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FormCochain")
            .field("group_degree", &self.inner.group_degree)
            .field("form_degree", &self.inner.form_degree)
            .field("dim", &self.inner.dim)
            .finish_non_exhaustive()
    }
}

impl<F: Scalar> FormCochain<F> {
    pub fn new<E>(group_degree: usize, form_degree: usize, dim: usize, evaluator: E) -> Self
    where
        E: Fn(&[PolyDiffeo<F>]) -> Result<PolyForm<F>> + Send + Sync + 'static,
    {
        Self {
            inner: Arc::new(FormInner {
                group_degree,
                form_degree,
                dim,
                evaluator: Box::new(evaluator),
                memo: Mutex::new(HashMap::new()),
            }),
        }
    }

    /// A 0-cochain, i.e. a single form.
    pub fn constant(form: PolyForm<F>) -> Self {
        let (q, n) = (form.degree(), form.dim());
        Self::new(0, q, n, move |_| Ok(form.clone()))
    }

    pub fn group_degree(&self) -> usize {
        self.inner.group_degree
    }

    pub fn form_degree(&self) -> usize {
        self.inner.form_degree
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn eval(&self, tuple: &[PolyDiffeo<F>]) -> Result<PolyForm<F>> {
        let inner = &self.inner;
        if tuple.len() != inner.group_degree {
            return Err(Error::WrongArity { expected: inner.group_degree, found: tuple.len() });
        }
        let key = memo_key(tuple);
        if let Some(hit) = inner.memo.lock().expect("memo poisoned").get(&key) {
            return Ok(hit.clone());
        }
        // computed outside the lock; evaluators are deterministic, so racing
        // inserts store identical values
        let value = (inner.evaluator)(tuple)?;
        if value.dim() != inner.dim {
            return Err(Error::DimensionMismatch { expected: inner.dim, found: value.dim() });
        }
        if value.degree() != inner.form_degree {
            return Err(Error::DegreeMismatch { expected: inner.form_degree, found: value.degree() });
        }
        inner.memo.lock().expect("memo poisoned").entry(key).or_insert_with(|| value.clone());
        Ok(value)
    }

    pub fn memo_len(&self) -> usize {
        self.inner.memo.lock().expect("memo poisoned").len()
    }
}

/// Group differential with the right pullback action:
///
/// `(δ'c)(g_1..g_{p+1}) = c(g_2..g_{p+1}) + Σ_i (-1)^i c(.., g_i g_{i+1}, ..)
///  + (-1)^{p+1} g_{p+1}* c(g_1..g_p)`.
///
/// For `p = 0` this reads `(δ'c)(g) = c - g*c`.
pub fn delta_prime<F: Scalar>(c: &FormCochain<F>) -> FormCochain<F> {
    delta_prime_capped(c, None)
}

/// [`delta_prime`] with a degree cap on the products formed in the middle sum.
pub fn delta_prime_capped<F: Scalar>(c: &FormCochain<F>, cap: Option<u32>) -> FormCochain<F> {
    let inner = c.clone();
    let p = c.group_degree();
    FormCochain::new(p + 1, c.form_degree(), c.dim(), move |t| {
        let mut acc = inner.eval(&t[1..])?;
        for i in 1..=p {
            let term = inner.eval(&merge_adjacent(t, i, cap)?)?;
            acc = if i % 2 == 1 { &acc - &term } else { &acc + &term };
        }
        let last = t[p].pullback(&inner.eval(&t[..p])?)?;
        Ok(if (p + 1) % 2 == 1 { &acc - &last } else { &acc + &last })
    })
}

/// `(δ''c)(g_1..g_p) = (-1)^p d c(g_1..g_p)`.
pub fn delta_double_prime<F: Scalar>(c: &FormCochain<F>) -> FormCochain<F> {
    let inner = c.clone();
    let p = c.group_degree();
    FormCochain::new(p, c.form_degree() + 1, c.dim(), move |t| {
        let d = inner.eval(t)?.ext_d();
        Ok(d.scale(&sign::<F>(p)))
    })
}

struct ScalarInner<F> {
    group_degree: usize,
    evaluator: Box<ScalarEvaluator<F>>,
    memo: Mutex<HashMap<Vec<String>, F>>,
}

/// Element of `C^p(G, F)` for the trivial module `F`.
pub struct RealCochain<F> {
    inner: Arc<ScalarInner<F>>,
}

impl<F> Clone for RealCochain<F> {
    fn clone(&self) -> Self {
        Self { inner: Arc::clone(&self.inner) }
    }
}

impl<F> fmt::Debug for RealCochain<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RealCochain").field("group_degree", &self.inner.group_degree).finish_non_exhaustive()
    }
}

impl<F: Scalar> RealCochain<F> {
    pub fn new<E>(group_degree: usize, evaluator: E) -> Self
    where
        E: Fn(&[PolyDiffeo<F>]) -> Result<F> + Send + Sync + 'static,
    {
        Self {
            inner: Arc::new(ScalarInner { group_degree, evaluator: Box::new(evaluator), memo: Mutex::new(HashMap::new()) }),
        }
    }

    pub fn group_degree(&self) -> usize {
        self.inner.group_degree
    }

    pub fn eval(&self, tuple: &[PolyDiffeo<F>]) -> Result<F> {
        let inner = &self.inner;
        if tuple.len() != inner.group_degree {
            return Err(Error::WrongArity { expected: inner.group_degree, found: tuple.len() });
        }
        let key = memo_key(tuple);
        if let Some(hit) = inner.memo.lock().expect("memo poisoned").get(&key) {
            return Ok(hit.clone());
        }
        let value = (inner.evaluator)(tuple)?;
        inner.memo.lock().expect("memo poisoned").entry(key).or_insert_with(|| value.clone());
        Ok(value)
    }
}

/// Differential of the complex with trivial coefficients:
/// `(Df)(g_1..g_{p+1}) = f(g_2..) + Σ_i (-1)^i f(.., g_i g_{i+1}, ..) + (-1)^{p+1} f(g_1..g_p)`.
pub fn big_d<F: Scalar>(f: &RealCochain<F>) -> RealCochain<F> {
    big_d_capped(f, None)
}

pub fn big_d_capped<F: Scalar>(f: &RealCochain<F>, cap: Option<u32>) -> RealCochain<F> {
    let inner = f.clone();
    let p = f.group_degree();
    RealCochain::new(p + 1, move |t| {
        let mut acc = inner.eval(&t[1..])?;
        for i in 1..=p {
            let term = inner.eval(&merge_adjacent(t, i, cap)?)?;
            acc = acc + sign::<F>(i) * term;
        }
        Ok(acc + sign::<F>(p + 1) * inner.eval(&t[..p])?)
    })
}

/// Transgression along a chain for the translation group `G ≅ ℝⁿ`.
///
/// For `deg ω = p + q` and a `q`-chain `γ` this is the `p`-form on `G` whose
/// value on constant vectors `X_1..X_p` at `a` is
/// `∫_{a+γ} i(X_p)…i(X_1) ω`; when `deg ω < q` it is the zero function.
/// No cycle condition is imposed here; see [`f_gamma`].
pub fn transgress<F: Scalar>(chain: &Chain<F>, form: &PolyForm<F>) -> Result<PolyForm<F>> {
    let n = chain.ambient_dim();
    if form.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: form.dim() });
    }
    let q = chain.dim();
    if form.degree() < q {
        return Ok(PolyForm::zero(n, 0));
    }
    let p = form.degree() - q;
    let mut components = Vec::new();
    for idx in MultiIndex::all(n, p) {
        let mut contracted = form.clone();
        for &axis in idx.axes() {
            let mut e = vec![F::zero(); n];
            e[axis] = F::one();
            contracted = contracted.interior_const(&e);
        }
        let coeff: Polynomial<F> = integrate_translated(&contracted, chain)?;
        components.push((idx, coeff));
    }
    PolyForm::from_components(n, p, components)
}

/// [`transgress`] restricted to cycles.
pub fn f_gamma<F: Scalar>(cycle: &Chain<F>, form: &PolyForm<F>) -> Result<PolyForm<F>> {
    if !cycle.is_cycle() {
        return Err(Error::NotACycle);
    }
    transgress(cycle, form)
}

/// `F_γ(c) = f_γ ∘ c`, a cochain with values in forms on `G ≅ ℝⁿ`.
pub fn big_f_gamma<F: Scalar>(c: &FormCochain<F>, cycle: &Chain<F>) -> Result<FormCochain<F>> {
    if !cycle.is_cycle() {
        return Err(Error::NotACycle);
    }
    if cycle.ambient_dim() != c.dim() {
        return Err(Error::DimensionMismatch { expected: c.dim(), found: cycle.ambient_dim() });
    }
    let q = c.form_degree().saturating_sub(cycle.dim());
    let inner = c.clone();
    let cycle = cycle.clone();
    Ok(FormCochain::new(c.group_degree(), q, c.dim(), move |t| transgress(&cycle, &inner.eval(t)?)))
}
