//! Scenario files: the space, the preserved forms, the group generators, the
//! cycle and the verification defaults.

use std::fs;
use std::path::Path;

use cocycle_core::json::{parse_polynomial, parse_scalar, ChainJson, ComponentJson, DiffeoJson, FormJson, SimplexJson};
use cocycle_core::{GroupPresentation, NamedForm, QChain, QDiffeo, QForm, QGroup, Rational};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const HOMOTOPY_POINCARE_ORIGIN: &str = "poincare-origin";

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub name: String,
    pub dimension: usize,
    pub forms: Vec<FormEntry>,
    pub group: Vec<GeneratorEntry>,
    #[serde(default)]
    pub cycle: Option<CycleSpec>,
    #[serde(default)]
    pub descent: DescentSpec,
    #[serde(default)]
    pub verify: VerifySettings,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormEntry {
    pub name: String,
    pub degree: usize,
    pub components: Vec<ComponentJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub name: String,
    #[serde(flatten)]
    pub kind: GeneratorKind,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    /// Shift vector.
    Translation(Vec<String>),
    /// Matrix rows; `x ↦ A x`.
    Linear(Vec<Vec<String>>),
    /// `x_axis ↦ x_axis + poly`, 1-based axis; `poly` must not involve it.
    Shear { axis: usize, poly: String },
    Explicit { forward: Vec<String>, inverse: Vec<String> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CycleSpec {
    Point { point: Vec<String> },
    Chain { dim: usize, simplices: Vec<SimplexJson> },
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescentSpec {
    /// Defaults to `m - 1`.
    #[serde(default)]
    pub p: Option<usize>,
    #[serde(default)]
    pub homotopy: Option<String>,
    /// Which of `forms` to descend from; defaults to the first.
    #[serde(default)]
    pub form: Option<String>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields, default)]
pub struct VerifySettings {
    pub samples: usize,
    pub max_word_length: usize,
    pub seed: u64,
    pub degree_cap: u32,
}

impl Default for VerifySettings {
    fn default() -> Self {
        Self { samples: 100, max_word_length: 3, seed: 0, degree_cap: 64 }
    }
}

/// A validated scenario.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub dim: usize,
    pub group: QGroup,
    pub cycle: QChain,
    pub omega_name: String,
    pub omega: QForm,
    pub depth: usize,
    pub verify: VerifySettings,
}

impl Scenario {
    pub fn forms(&self) -> &[NamedForm<Rational>] {
        self.group.preserved_forms()
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name != cocycle_core::diffeo::IDENTITY_LABEL
}

fn scalars(values: &[String]) -> Result<Vec<Rational>, CliError> {
    values.iter().map(|s| parse_scalar(s).map_err(CliError::from)).collect()
}

fn build_generator(n: usize, entry: &GeneratorEntry) -> Result<QDiffeo, CliError> {
    let schema = |msg: String| CliError::Schema(format!("generator {}: {msg}", entry.name));
    match &entry.kind {
        GeneratorKind::Translation(shift) => {
            if shift.len() != n {
                return Err(schema(format!("translation has {} entries, expected {n}", shift.len())));
            }
            Ok(QDiffeo::translation(&scalars(shift)?, entry.name.clone()))
        }
        GeneratorKind::Linear(rows) => {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(schema(format!("matrix must be {n}x{n}")));
            }
            let m = rows.iter().map(|r| scalars(r)).collect::<Result<Vec<_>, _>>()?;
            Ok(QDiffeo::linear(&m, entry.name.clone())?)
        }
        GeneratorKind::Shear { axis, poly } => {
            if *axis == 0 || *axis > n {
                return Err(schema(format!("shear axis {axis} outside 1..={n}")));
            }
            Ok(QDiffeo::shear(axis - 1, parse_polynomial(poly, n)?, entry.name.clone())?)
        }
        GeneratorKind::Explicit { forward, inverse } => {
            if forward.len() != n {
                return Err(schema(format!("forward map has {} components, expected {n}", forward.len())));
            }
            let j = DiffeoJson { label: entry.name.clone(), forward: forward.clone(), inverse: inverse.clone() };
            Ok(j.to_diffeo()?)
        }
    }
}

fn build_cycle(n: usize, spec: &Option<CycleSpec>) -> Result<QChain, CliError> {
    match spec {
        None => Ok(QChain::origin(n)),
        Some(CycleSpec::Point { point }) => {
            if point.len() != n {
                return Err(CliError::Schema(format!("cycle point has {} coordinates, expected {n}", point.len())));
            }
            Ok(QChain::point(scalars(point)?))
        }
        Some(CycleSpec::Chain { dim, simplices }) => {
            Ok(ChainJson { ambient: n, dim: *dim, simplices: simplices.clone() }.to_chain()?)
        }
    }
}

impl ScenarioFile {
    pub fn validate(&self) -> Result<Scenario, CliError> {
        let n = self.dimension;
        if n == 0 {
            return Err(CliError::Schema("dimension must be positive".into()));
        }
        if self.forms.is_empty() {
            return Err(CliError::Schema("at least one form is required".into()));
        }
        let mut forms = Vec::with_capacity(self.forms.len());
        for f in &self.forms {
            let json = FormJson { dim: n, degree: f.degree, components: f.components.clone() };
            forms.push(NamedForm { name: f.name.clone(), form: json.to_form()? });
        }
        let mut generators = Vec::with_capacity(self.group.len());
        for g in &self.group {
            if !valid_name(&g.name) {
                return Err(CliError::Schema(format!("generator name {:?} must be an identifier other than \"id\"", g.name)));
            }
            generators.push(build_generator(n, g)?);
        }
        let omega_name = self.descent.form.clone().unwrap_or_else(|| self.forms[0].name.clone());
        let omega = forms
            .iter()
            .find(|f| f.name == omega_name)
            .map(|f| f.form.clone())
            .ok_or_else(|| CliError::Schema(format!("descent form {omega_name:?} is not declared")))?;
        if let Some(h) = &self.descent.homotopy {
            if h != HOMOTOPY_POINCARE_ORIGIN {
                return Err(CliError::Schema(format!("unsupported homotopy {h:?}; only {HOMOTOPY_POINCARE_ORIGIN:?}")));
            }
        }
        if omega.degree() == 0 {
            return Err(CliError::Schema("the descent form must have positive degree".into()));
        }
        let depth = self.descent.p.unwrap_or(omega.degree() - 1);
        if self.verify.max_word_length == 0 {
            return Err(CliError::Schema("verify.max_word_length must be at least 1".into()));
        }
        // checks generator invariance against every declared form
        let group = GroupPresentation::new(n, generators, forms)?;
        let cycle = build_cycle(n, &self.cycle)?;
        Ok(Scenario { name: self.name.clone(), dim: n, group, cycle, omega_name, omega, depth, verify: self.verify })
    }
}

pub fn parse_scenario(text: &str) -> Result<Scenario, CliError> {
    let file: ScenarioFile = serde_json::from_str(text)?;
    file.validate()
}

pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    parse_scenario(&text)
}
