//! Wire formats. Scalars travel as strings (`"3/2"`), polynomials as text in
//! the variables `x1..xn` (`"3/2*x1^2 - x2"`; `x`, `y`, `z`, `w` are accepted
//! for the first four), multi-indices as 1-based axis lists.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::chains::{AffineSimplex, Chain};
use crate::diffeo::PolyDiffeo;
use crate::error::{Error, Result};
use crate::poly_forms::{MultiIndex, PolyForm, Polynomial};
use crate::scalar::Scalar;

pub fn parse_scalar<F: Scalar + FromStr>(s: &str) -> Result<F> {
    s.trim().parse().map_err(|_| Error::Parse(format!("not a number: {s:?}")))
}

fn parse_variable(token: &str, nvars: usize) -> Result<Option<(usize, u32)>> {
    let (name, power) = match token.split_once('^') {
        Some((n, p)) => (n, p.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {token:?}")))?),
        None => (token, 1),
    };
    let index = match name {
        "x" => 0,
        "y" => 1,
        "z" => 2,
        "w" => 3,
        _ => match name.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
            Some(i) if i >= 1 => i - 1,
            _ => return Ok(None),
        },
    };
    if index >= nvars {
        return Err(Error::Parse(format!("variable {name} out of range for {nvars} variables")));
    }
    Ok(Some((index, power)))
}

/// Parses a sum of monomial terms such as `"x1^2*x2 - 3/2*x3 + 1"`.
/// Parentheses are not supported.
pub fn parse_polynomial<F: Scalar + FromStr>(text: &str, nvars: usize) -> Result<Polynomial<F>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !current.is_empty() && !current.ends_with(['e', 'E']) {
            pieces.push((negative, std::mem::take(&mut current)));
            negative = ch == '-';
        } else if (ch == '+' || ch == '-') && current.is_empty() {
            negative ^= ch == '-';
        } else {
            current.push(ch);
        }
    }
    if current.is_empty() {
        return Err(Error::Parse(format!("dangling sign in {text:?}")));
    }
    pieces.push((negative, current));

    let mut out = Polynomial::zero(nvars);
    for (negative, body) in pieces {
        let mut coeff = F::one();
        let mut exp = vec![0u32; nvars];
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in {text:?}")));
            }
            match parse_variable(factor, nvars)? {
                Some((i, k)) => exp[i] += k,
                None => coeff = coeff * parse_scalar::<F>(factor)?,
            }
        }
        if negative {
            coeff = -coeff;
        }
        out += &Polynomial::monomial(nvars, exp, coeff);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub idx: Vec<usize>,
    pub poly: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormJson {
    pub dim: usize,
    pub degree: usize,
    pub components: Vec<ComponentJson>,
}

impl FormJson {
    pub fn from_form<F: Scalar>(form: &PolyForm<F>) -> Self {
        let components = form
            .components()
            .map(|(idx, p)| ComponentJson { idx: idx.axes().iter().map(|a| a + 1).collect(), poly: p.to_string() })
            .collect();
        Self { dim: form.dim(), degree: form.degree(), components }
    }

    pub fn to_form<F: Scalar + FromStr>(&self) -> Result<PolyForm<F>> {
        let mut comps = Vec::with_capacity(self.components.len());
        for c in &self.components {
            if c.idx.contains(&0) {
                return Err(Error::Parse(format!("multi-index {:?} is 1-based", c.idx)));
            }
            let axes: Vec<usize> = c.idx.iter().map(|a| a - 1).collect();
            if axes.len() != self.degree {
                return Err(Error::DegreeMismatch { expected: self.degree, found: axes.len() });
            }
            comps.push((MultiIndex::new(axes, self.dim)?, parse_polynomial(&c.poly, self.dim)?));
        }
        PolyForm::from_components(self.dim, self.degree, comps)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiffeoJson {
    pub label: String,
    pub forward: Vec<String>,
    pub inverse: Vec<String>,
}

impl DiffeoJson {
    pub fn from_diffeo<F: Scalar>(g: &PolyDiffeo<F>) -> Self {
        Self {
            label: g.label().to_string(),
            forward: g.forward().iter().map(ToString::to_string).collect(),
            inverse: g.inverse_map().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn to_diffeo<F: Scalar + FromStr>(&self) -> Result<PolyDiffeo<F>> {
        let n = self.forward.len();
        if self.inverse.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.inverse.len() });
        }
        let parse = |v: &[String]| v.iter().map(|s| parse_polynomial(s, n)).collect::<Result<Vec<_>>>();
        PolyDiffeo::new(parse(&self.forward)?, parse(&self.inverse)?, self.label.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimplexJson {
    #[serde(default = "one_string")]
    pub coeff: String,
    pub verts: Vec<Vec<String>>,
}

fn one_string() -> String {
    "1".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainJson {
    pub ambient: usize,
    pub dim: usize,
    pub simplices: Vec<SimplexJson>,
}

impl ChainJson {
    pub fn from_chain<F: Scalar>(c: &Chain<F>) -> Self {
        let simplices = c
            .terms()
            .iter()
            .map(|(s, k)| SimplexJson {
                coeff: k.to_string(),
                verts: s.vertices().iter().map(|v| v.iter().map(ToString::to_string).collect()).collect(),
            })
            .collect();
        Self { ambient: c.ambient_dim(), dim: c.dim(), simplices }
    }

    pub fn to_chain<F: Scalar + FromStr>(&self) -> Result<Chain<F>> {
        let mut terms = Vec::with_capacity(self.simplices.len());
        for s in &self.simplices {
            let verts = s
                .verts
                .iter()
                .map(|v| v.iter().map(|c| parse_scalar(c)).collect::<Result<Vec<F>>>())
                .collect::<Result<Vec<_>>>()?;
            terms.push((AffineSimplex::new(verts)?, parse_scalar(&s.coeff)?));
        }
        Chain::from_terms(self.ambient, self.dim, terms)
    }
}
