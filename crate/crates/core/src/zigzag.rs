//! Zig-zag descent through the bicomplex `C^p(G, Ω^q(ℝⁿ))`.
//!
//! Starting from a closed invariant `m`-form `ω`, primitives are chosen with
//! the Poincaré homotopy operator `h`:
//!
//! * `φ_0 = -h(ω)`, so `ω = -dφ_0`;
//! * `φ_i(g_1..g_i) = h((-1)^{i+1} (δ'φ_{i-1})(g_1..g_i))` for `i = 1..p`,
//!   which solves `δ'φ_{i-1} + δ''φ_i = 0` because `δ'' = (-1)^i d`.
//!
//! The argument of `h` is checked to be closed on every evaluation. Integrating
//! `δ'φ_p` over an `(m-p-1)`-cycle `α` yields the real `(p+1)`-cocycle
//! `c_α(ω)`. On ℝⁿ only `p = m - 1` (point cycles) can give a non-zero class.

use std::time::{Duration, Instant};

use log::warn;

use crate::chains::{integrate, integrate_over_image, Chain};
use crate::cochain::{big_d_capped, delta_double_prime, delta_prime_capped, FormCochain, RealCochain};
use crate::diffeo::{GroupPresentation, PolyDiffeo};
use crate::error::{Error, Result};
use crate::poly_forms::PolyForm;
use crate::scalar::{factorial, sign, Scalar};

#[derive(Clone, Debug)]
pub struct ZigzagState<F> {
    omega: PolyForm<F>,
    depth: usize,
    phis: Vec<FormCochain<F>>,
    top: FormCochain<F>,
    group: GroupPresentation<F>,
    degree_cap: Option<u32>,
}

fn descend<F: Scalar>(prev: &FormCochain<F>, level: usize, cap: Option<u32>) -> FormCochain<F> {
    let dprev = delta_prime_capped(prev, cap);
    let s = sign::<F>(level + 1);
    FormCochain::new(level, prev.form_degree() - 1, prev.dim(), move |t| {
        let rhs = dprev.eval(t)?.scale(&s);
        if !rhs.is_closed() {
            let labels: Vec<&str> = t.iter().map(PolyDiffeo::label).collect();
            return Err(Error::NotClosed(format!("descent level {level} at ({})", labels.join(", "))));
        }
        Ok(rhs.homotopy())
    })
}

impl<F: Scalar> ZigzagState<F> {
    /// Builds `φ_0, …, φ_depth` for `ω`. Evaluation is lazy; only the
    /// preconditions on `ω` and the generators are checked here.
    pub fn build(omega: PolyForm<F>, depth: usize, group: GroupPresentation<F>) -> Result<Self> {
        Self::build_with_cap(omega, depth, group, None)
    }

    pub fn build_with_cap(
        omega: PolyForm<F>,
        depth: usize,
        group: GroupPresentation<F>,
        degree_cap: Option<u32>,
    ) -> Result<Self> {
        let m = omega.degree();
        if omega.dim() != group.dim() {
            return Err(Error::DimensionMismatch { expected: group.dim(), found: omega.dim() });
        }
        if omega.is_zero() {
            return Err(Error::ZeroForm);
        }
        if m == 0 || depth >= m {
            return Err(Error::InvalidDepth { depth, degree: m });
        }
        if !omega.is_closed() {
            return Err(Error::NotClosed("input form".into()));
        }
        for g in group.generators() {
            if !g.preserves(&omega)? {
                return Err(Error::NotInvariant { generator: g.label().to_string(), form: "omega".into() });
            }
        }
        if depth + 1 < m {
            warn!("descent depth {depth} < m - 1 = {}: cocycles over cycles in ℝⁿ of dimension {} vanish", m - 1, m - depth - 1);
        }
        let phi0 = FormCochain::constant(-&omega.homotopy());
        let top = delta_prime_capped(&phi0, degree_cap);
        let mut state = Self { omega, depth, phis: vec![phi0], top, group, degree_cap };
        state.extend();
        Ok(state)
    }

    fn extend(&mut self) {
        while self.phis.len() <= self.depth {
            let level = self.phis.len();
            let next = descend(&self.phis[level - 1], level, self.degree_cap);
            self.phis.push(next);
        }
        self.top = delta_prime_capped(&self.phis[self.depth], self.degree_cap);
    }

    /// Replaces `φ_level` and rebuilds every later level from it. Intended for
    /// experiments and for checking that the verifiers notice a broken descent.
    pub fn replace_phi(mut self, level: usize, phi: FormCochain<F>) -> Result<Self> {
        if level > self.depth {
            return Err(Error::InvalidDepth { depth: level, degree: self.degree() });
        }
        let expected = self.degree() - level - 1;
        if phi.group_degree() != level || phi.form_degree() != expected {
            return Err(Error::DegreeMismatch { expected, found: phi.form_degree() });
        }
        self.phis.truncate(level);
        self.phis.push(phi);
        self.extend();
        Ok(self)
    }

    pub fn omega(&self) -> &PolyForm<F> {
        &self.omega
    }

    pub fn degree(&self) -> usize {
        self.omega.degree()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn dim(&self) -> usize {
        self.omega.dim()
    }

    pub fn group(&self) -> &GroupPresentation<F> {
        &self.group
    }

    pub fn degree_cap(&self) -> Option<u32> {
        self.degree_cap
    }

    /// `φ_i ∈ C^i(G, Ω^{m-i-1})`.
    pub fn phi(&self, level: usize) -> &FormCochain<F> {
        &self.phis[level]
    }

    /// `δ'φ_p ∈ C^{p+1}(G, Ω^{m-p-1})`.
    pub fn top(&self) -> &FormCochain<F> {
        &self.top
    }

    /// `ω + dφ_0`, zero by construction.
    pub fn base_residual(&self) -> Result<PolyForm<F>> {
        Ok(&self.omega + &self.phis[0].eval(&[])?.ext_d())
    }

    /// `δ'φ_{i-1} + δ''φ_i` at `tuple`, for `1 ≤ i ≤ p`.
    pub fn descent_residual(&self, level: usize, tuple: &[PolyDiffeo<F>]) -> Result<PolyForm<F>> {
        if level == 0 || level > self.depth {
            return Err(Error::InvalidDepth { depth: level, degree: self.degree() });
        }
        let left = delta_prime_capped(&self.phis[level - 1], self.degree_cap).eval(tuple)?;
        let right = delta_double_prime(&self.phis[level]).eval(tuple)?;
        Ok(&left + &right)
    }

    fn check_cycle(&self, alpha: &Chain<F>) -> Result<()> {
        if alpha.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: alpha.ambient_dim() });
        }
        let expected = self.degree() - self.depth - 1;
        if alpha.dim() != expected {
            return Err(Error::DegreeMismatch { expected, found: alpha.dim() });
        }
        if !alpha.is_cycle() {
            return Err(Error::NotACycle);
        }
        Ok(())
    }

    /// `c_α(ω)(g_1..g_{p+1}) = ∫_α (δ'φ_p)(g_1..g_{p+1})`.
    ///
    /// The integrand is not checked for closedness: a broken descent should
    /// surface as a failing cocycle identity, not be masked by an error.
    pub fn cocycle_eval(&self, alpha: &Chain<F>, tuple: &[PolyDiffeo<F>]) -> Result<F> {
        self.check_cycle(alpha)?;
        integrate(&self.top.eval(tuple)?, alpha)
    }

    /// `b(g_1..g_p) = ∫_α φ_p(g_1..g_p)`.
    pub fn trivializing_cochain_b(&self, alpha: &Chain<F>, tuple: &[PolyDiffeo<F>]) -> Result<F> {
        self.check_cycle(alpha)?;
        integrate(&self.phis[self.depth].eval(tuple)?, alpha)
    }

    pub fn cocycle(&self, alpha: &Chain<F>) -> Result<RealCochain<F>> {
        self.check_cycle(alpha)?;
        let state = self.clone();
        let alpha = alpha.clone();
        Ok(RealCochain::new(self.depth + 1, move |t| state.cocycle_eval(&alpha, t)))
    }

    pub fn trivializing_cochain(&self, alpha: &Chain<F>) -> Result<RealCochain<F>> {
        self.check_cycle(alpha)?;
        let state = self.clone();
        let alpha = alpha.clone();
        Ok(RealCochain::new(self.depth, move |t| state.trivializing_cochain_b(&alpha, t)))
    }

    /// `c(g_1..g_p, g) - [(-1)^{p+1} (∫_{gα} φ_p(g_1..g_p) - b(g_1..g_p)) + Db(g_1..g_p, g)]`.
    ///
    /// The bracket never touches `δ'φ_p`: the transported integral moves the
    /// cycle instead of pulling back the form whenever that stays affine.
    pub fn cocycle1_residual(&self, alpha: &Chain<F>, tuple: &[PolyDiffeo<F>]) -> Result<F> {
        let p = self.depth;
        if tuple.len() != p + 1 {
            return Err(Error::WrongArity { expected: p + 1, found: tuple.len() });
        }
        let lhs = self.cocycle_eval(alpha, tuple)?;
        let head = &tuple[..p];
        let g = &tuple[p];
        let b = self.trivializing_cochain(alpha)?;
        let transported = integrate_over_image(&self.phis[p].eval(head)?, alpha, g)?;
        let db = big_d_capped(&b, self.degree_cap).eval(tuple)?;
        let rhs = sign::<F>(p + 1) * (transported - b.eval(head)?) + db;
        Ok(lhs - rhs)
    }

    /// Evaluates `Dc` on `samples` seeded `(p+2)`-tuples of words.
    pub fn verify_cocycle_identity(
        &self,
        alpha: &Chain<F>,
        samples: usize,
        max_word_length: usize,
        seed: u64,
    ) -> Result<CocycleIdentityReport<F>> {
        let start = Instant::now();
        let cap = self.degree_cap.unwrap_or(u32::MAX);
        let dc = big_d_capped(&self.cocycle(alpha)?, self.degree_cap);
        let mut sampler = self.group.sampler(max_word_length, cap, seed);
        let mut zero = 0;
        let mut max_violation = F::zero();
        let mut worst = None;
        for _ in 0..samples {
            let tuple = sampler.next_tuple(self.depth + 2)?;
            let r = dc.eval(&tuple)?;
            if r.is_zero() {
                zero += 1;
            } else if r.abs() > max_violation {
                max_violation = r.abs();
                worst = Some(tuple.iter().map(|g| g.label().to_string()).collect());
            }
        }
        Ok(CocycleIdentityReport { samples, zero_residuals: zero, max_violation, worst_tuple: worst, elapsed: start.elapsed() })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CocycleIdentityReport<F> {
    pub samples: usize,
    pub zero_residuals: usize,
    pub max_violation: F,
    pub worst_tuple: Option<Vec<String>>,
    pub elapsed: Duration,
}

impl<F: Scalar> CocycleIdentityReport<F> {
    pub fn passed(&self) -> bool {
        self.zero_residuals == self.samples
    }
}

/// `(1/m!) ω(a_1, …, a_m)` for a constant-coefficient `m`-form.
pub fn closed_form_translation<F: Scalar>(omega: &PolyForm<F>, vectors: &[Vec<F>]) -> Result<F> {
    if !omega.is_constant_coefficient() {
        return Err(Error::NonConstantForm);
    }
    let m = omega.degree();
    let origin = vec![F::zero(); omega.dim()];
    Ok(omega.evaluate(&origin, vectors)? / factorial::<F>(m))
}
