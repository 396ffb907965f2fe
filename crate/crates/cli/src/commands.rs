use std::time::Instant;

use cocycle_core::checks::{calculus_suite, fgamma_suite, stokes_suite};
use cocycle_core::cochain::big_d_capped;
use cocycle_core::json::{parse_scalar, ChainJson};
use cocycle_core::{
    closed_form_translation, GroupPresentation, MultiIndex, NamedForm, QChain, QDiffeo, QForm, QGroup, QZigzag,
    RandomInputs, Rational,
};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::expr::{parse_element, translation_label};
use crate::report::{Check, Report};
use crate::scenario::Scenario;

/// Upper bound on the size of the value tables printed by `build-cocycle`
/// and `check-triviality`.
const TABLE_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    BuildCocycle,
    EvalCocycle,
    CheckCocycleIdentity,
    CheckTriviality,
    CheckClosedForm,
    CheckCalculus,
    StokesCheck,
    CheckFgamma,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::BuildCocycle => "build-cocycle",
            Command::EvalCocycle => "eval-cocycle",
            Command::CheckCocycleIdentity => "check-cocycle-identity",
            Command::CheckTriviality => "check-triviality",
            Command::CheckClosedForm => "check-closed-form",
            Command::CheckCalculus => "check-calculus",
            Command::StokesCheck => "stokes-check",
            Command::CheckFgamma => "check-fgamma",
        }
    }
}

/// Which elements `check-triviality` samples from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Subgroup {
    /// Generators fixing every vertex of the cycle.
    #[default]
    Stabilizer,
    /// Linear generators (affine, fixing the origin).
    Linear,
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub tuple: Vec<String>,
    pub degree_cap: Option<u32>,
    pub subgroup: Subgroup,
    /// Second point cycle for the independence check; defaults to `(3, -2, 0, …)`.
    pub alt_point: Option<Vec<String>>,
    pub timings: bool,
}

struct Settings {
    samples: usize,
    seed: u64,
    cap: u32,
    max_len: usize,
}

fn labels(t: &[QDiffeo]) -> Vec<String> {
    t.iter().map(|g| g.label().to_string()).collect()
}

fn tuple_json(t: &[QDiffeo]) -> Value {
    json!(labels(t))
}

/// All tuples of `arity` letters in lexicographic order, at most `limit`.
fn letter_tuples(letters: &[QDiffeo], arity: usize, limit: usize) -> Vec<Vec<QDiffeo>> {
    let mut out: Vec<Vec<QDiffeo>> = vec![Vec::new()];
    for _ in 0..arity {
        let mut next = Vec::new();
        'outer: for prefix in &out {
            for g in letters {
                if next.len() == limit {
                    break 'outer;
                }
                let mut t = prefix.clone();
                t.push(g.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out
}

fn build_state(s: &Scenario, cap: u32) -> Result<QZigzag, CliError> {
    Ok(QZigzag::build_with_cap(s.omega.clone(), s.depth, s.group.clone(), Some(cap))?)
}

fn max_abs(current: &mut Rational, candidate: &Rational) {
    let a = if *candidate < Rational::default() { -candidate.clone() } else { candidate.clone() };
    if a > *current {
        *current = a;
    }
}

pub fn run(command: Command, scenario: &Scenario, opts: &RunOptions) -> Result<Report, CliError> {
    let settings = Settings {
        samples: opts.samples.unwrap_or(scenario.verify.samples),
        seed: opts.seed.unwrap_or(scenario.verify.seed),
        cap: opts.degree_cap.unwrap_or(scenario.verify.degree_cap),
        max_len: scenario.verify.max_word_length,
    };
    let mut report = Report::new(command.name(), &scenario.name, opts.timings);
    let start = Instant::now();
    match command {
        Command::BuildCocycle => build_cocycle(scenario, &settings, &mut report)?,
        Command::EvalCocycle => eval_cocycle(scenario, &settings, opts, &mut report)?,
        Command::CheckCocycleIdentity => check_cocycle_identity(scenario, &settings, opts, &mut report)?,
        Command::CheckTriviality => check_triviality(scenario, &settings, opts.subgroup, &mut report)?,
        Command::CheckClosedForm => check_closed_form(scenario, &settings, &mut report)?,
        Command::CheckCalculus => {
            sampled_params(&mut report, &settings);
            for o in calculus_suite::<Rational>(scenario.dim, settings.samples, settings.seed)? {
                report.check(Check::from(&o));
            }
        }
        Command::StokesCheck => {
            sampled_params(&mut report, &settings);
            report.param("max_dimension", scenario.dim);
            for o in stokes_suite::<Rational>(scenario.dim, settings.samples, settings.seed)? {
                report.check(Check::from(&o));
            }
        }
        Command::CheckFgamma => {
            sampled_params(&mut report, &settings);
            for o in fgamma_suite::<Rational>(scenario.dim, settings.samples, settings.seed)? {
                report.check(Check::from(&o));
            }
        }
    }
    report.timing("total", start.elapsed());
    Ok(report)
}

fn sampled_params(report: &mut Report, s: &Settings) {
    report.param("seed", s.seed);
    report.param("samples", s.samples);
}

fn descent_params(report: &mut Report, scenario: &Scenario, s: &Settings) {
    report.param("form", scenario.omega_name.clone());
    report.param("depth", scenario.depth);
    report.param("degree_cap", s.cap);
}

fn build_cocycle(scenario: &Scenario, s: &Settings, report: &mut Report) -> Result<(), CliError> {
    descent_params(report, scenario, s);
    let state = build_state(scenario, s.cap)?;
    let p = state.depth();
    report.set("omega", scenario.omega.to_string());
    report.set("cycle", serde_json::to_value(ChainJson::from_chain(&scenario.cycle))?);
    report.set("generators", json!(scenario.group.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>()));
    report.check(Check::new("base_identity", state.base_residual()?.is_zero()));
    report.set("phi0", state.phi(0).eval(&[])?.to_string());

    let letters = scenario.group.generators();
    let mut phis = Vec::new();
    let (mut total, mut consistent) = (0, 0);
    for level in 1..=p {
        for t in letter_tuples(letters, level, TABLE_LIMIT) {
            total += 1;
            if state.descent_residual(level, &t)?.is_zero() {
                consistent += 1;
            }
            phis.push(json!({"level": level, "tuple": tuple_json(&t), "value": state.phi(level).eval(&t)?.to_string()}));
        }
    }
    report.check(Check::counted("descent_consistency", total, consistent));
    report.set("phi", Value::Array(phis));

    let mut table = Vec::new();
    let tuples = letter_tuples(letters, p + 1, TABLE_LIMIT);
    let mut constant = 0;
    for t in &tuples {
        if state.top().eval(t)?.is_closed() {
            constant += 1;
        }
        table.push(json!({"tuple": tuple_json(t), "value": state.cocycle_eval(&scenario.cycle, t)?.to_string()}));
    }
    report.check(Check::counted("top_values_closed", tuples.len(), constant));
    report.set("cocycle", Value::Array(table));
    Ok(())
}

fn eval_cocycle(scenario: &Scenario, s: &Settings, opts: &RunOptions, report: &mut Report) -> Result<(), CliError> {
    descent_params(report, scenario, s);
    let state = build_state(scenario, s.cap)?;
    let arity = state.depth() + 1;
    if opts.tuple.is_empty() || opts.tuple.len() % arity != 0 {
        return Err(CliError::Usage(format!(
            "--tuple needs a multiple of {arity} generator expressions, got {}",
            opts.tuple.len()
        )));
    }
    let elements =
        opts.tuple.iter().map(|e| parse_element(e, &scenario.group, s.cap)).collect::<Result<Vec<_>, _>>()?;
    let closed_form_applies = scenario.omega.is_constant_coefficient() && arity == scenario.omega.degree();
    let mut values = Vec::new();
    let (mut compared, mut agreed) = (0, 0);
    for t in elements.chunks(arity) {
        let value = state.cocycle_eval(&scenario.cycle, t)?;
        let mut entry = json!({"tuple": tuple_json(t), "value": value.to_string()});
        let shifts: Option<Vec<Vec<Rational>>> = t.iter().map(QDiffeo::translation_vector).collect();
        if let (true, Some(shifts)) = (closed_form_applies, shifts) {
            let closed = closed_form_translation(&scenario.omega, &shifts)?;
            compared += 1;
            if closed == value {
                agreed += 1;
            }
            entry["closed_form"] = json!(closed.to_string());
        }
        values.push(entry);
    }
    if compared > 0 {
        report.check(Check::counted("closed_form_agreement", compared, agreed));
    }
    report.set("values", Value::Array(values));
    Ok(())
}

fn alt_point(n: usize, given: &Option<Vec<String>>) -> Result<Vec<Rational>, CliError> {
    match given {
        Some(coords) => {
            if coords.len() != n {
                return Err(CliError::Usage(format!("--alt-point needs {n} coordinates")));
            }
            coords.iter().map(|c| parse_scalar(c).map_err(CliError::from)).collect()
        }
        None => Ok((0..n).map(|i| Rational::from_integer([3, -2].get(i).copied().unwrap_or(0).into())).collect()),
    }
}

fn check_cocycle_identity(
    scenario: &Scenario,
    s: &Settings,
    opts: &RunOptions,
    report: &mut Report,
) -> Result<(), CliError> {
    descent_params(report, scenario, s);
    sampled_params(report, s);
    report.param("max_word_length", s.max_len);
    let state = build_state(scenario, s.cap)?;
    let r = state.verify_cocycle_identity(&scenario.cycle, s.samples, s.max_len, s.seed)?;
    report.timing("cocycle_identity", r.elapsed);
    let mut check = Check::counted("cocycle_identity", r.samples, r.zero_residuals)
        .with("max_violation", r.max_violation.to_string());
    if let Some(w) = r.worst_tuple {
        check = check.with("worst_tuple", json!(w));
    }
    report.check(check);

    if scenario.cycle.dim() == 0 {
        let other = QChain::point(alt_point(scenario.dim, &opts.alt_point)?);
        let mut sampler = scenario.group.sampler(s.max_len, s.cap, s.seed.wrapping_add(1));
        let mut agree = 0;
        let mut max_diff = Rational::default();
        for _ in 0..s.samples {
            let t = sampler.next_tuple(state.depth() + 1)?;
            let diff = state.cocycle_eval(&scenario.cycle, &t)? - state.cocycle_eval(&other, &t)?;
            if diff == Rational::default() {
                agree += 1;
            }
            max_abs(&mut max_diff, &diff);
        }
        let point: Vec<String> = other.terms()[0].0.vertices()[0].iter().map(ToString::to_string).collect();
        report.check(
            Check::counted("point_cycle_independence", s.samples, agree)
                .with("alt_point", json!(point))
                .with("max_difference", max_diff.to_string()),
        );
    }
    Ok(())
}

fn fixes_cycle(g: &QDiffeo, cycle: &QChain) -> bool {
    cycle.terms().iter().all(|(simplex, _)| simplex.vertices().iter().all(|v| &g.apply(v) == v))
}

fn check_triviality(scenario: &Scenario, s: &Settings, subgroup: Subgroup, report: &mut Report) -> Result<(), CliError> {
    descent_params(report, scenario, s);
    sampled_params(report, s);
    report.param("subgroup", match subgroup {
        Subgroup::Stabilizer => "stabilizer",
        Subgroup::Linear => "linear",
    });
    let state = build_state(scenario, s.cap)?;
    let p = state.depth();
    let alpha = &scenario.cycle;
    let origin = vec![Rational::default(); scenario.dim];
    let keep = |g: &QDiffeo| match subgroup {
        Subgroup::Stabilizer => fixes_cycle(g, alpha),
        Subgroup::Linear => g.is_affine() && g.apply(&origin) == origin,
    };
    let members: Vec<String> = scenario.group.generators().iter().filter(|g| keep(g)).map(|g| g.label().to_string()).collect();
    report.set("subgroup_generators", json!(members));

    let b = state.trivializing_cochain(alpha)?;
    let db = big_d_capped(&b, Some(s.cap));
    match scenario.group.restrict(keep) {
        Ok(sub) => {
            let sub_fixes = sub.generators().iter().all(|g| fixes_cycle(g, alpha));
            let mut sampler = sub.sampler(s.max_len, s.cap, s.seed);
            let mut equal = 0;
            let mut max_diff = Rational::default();
            for _ in 0..s.samples {
                let t = sampler.next_tuple(p + 1)?;
                let diff = state.cocycle_eval(alpha, &t)? - db.eval(&t)?;
                if diff == Rational::default() {
                    equal += 1;
                }
                max_abs(&mut max_diff, &diff);
            }
            report.check(
                Check::counted("cocycle_equals_db_on_subgroup", s.samples, equal)
                    .with("subgroup_fixes_cycle", sub_fixes)
                    .with("max_difference", max_diff.to_string()),
            );
            let mut b_values = Vec::new();
            for t in letter_tuples(sub.generators(), p, TABLE_LIMIT) {
                b_values.push(json!({"tuple": tuple_json(&t), "value": b.eval(&t)?.to_string()}));
            }
            report.set("b_values", Value::Array(b_values));
        }
        Err(cocycle_core::Error::EmptyGenerators) => {
            // trivial subgroup: only the identity tuple to test
            let t = vec![QDiffeo::identity(scenario.dim); p + 1];
            let ok = state.cocycle_eval(alpha, &t)? == db.eval(&t)?;
            report.check(Check::counted("cocycle_equals_db_on_subgroup", 1, ok as usize).with("trivial_subgroup", true));
        }
        Err(e) => return Err(e.into()),
    }

    let mut sampler = scenario.group.sampler(s.max_len, s.cap, s.seed.wrapping_add(1));
    let mut zero = 0;
    let mut worst = Rational::default();
    for _ in 0..s.samples {
        let t = sampler.next_tuple(p + 1)?;
        let r = state.cocycle1_residual(alpha, &t)?;
        if r == Rational::default() {
            zero += 1;
        }
        max_abs(&mut worst, &r);
    }
    report.check(Check::counted("cocycle_transport_identity", s.samples, zero).with("max_violation", worst.to_string()));
    Ok(())
}

fn coordinate_translations(n: usize, omega: &QForm) -> Result<QGroup, CliError> {
    let gens = (0..n)
        .map(|i| {
            let mut e = vec![Rational::default(); n];
            e[i] = Rational::from_integer(1.into());
            QDiffeo::translation(&e, format!("e{}", i + 1))
        })
        .collect();
    Ok(GroupPresentation::new(n, gens, vec![NamedForm { name: "omega".into(), form: omega.clone() }])?)
}

/// Compares the descent on translation tuples at the origin with `(1/m!) ω(a_1..a_m)`.
fn closed_form_sweep(omega: &QForm, rng: &mut RandomInputs, samples: usize) -> Result<(usize, Option<String>), CliError> {
    let n = omega.dim();
    let m = omega.degree();
    let state = QZigzag::build(omega.clone(), m - 1, coordinate_translations(n, omega)?)?;
    let mut ok = 0;
    let mut first = None;
    for _ in 0..samples {
        let shifts: Vec<Vec<Rational>> = (0..m).map(|_| rng.vector(n)).collect();
        let t: Vec<QDiffeo> = shifts.iter().map(|a| QDiffeo::translation(a, translation_label(a))).collect();
        let value = state.cocycle_eval(&QChain::origin(n), &t)?;
        let closed = closed_form_translation(omega, &shifts)?;
        if value == closed {
            ok += 1;
        } else if first.is_none() {
            first = Some(format!("{:?}: {value} vs {closed}", labels(&t)));
        }
    }
    Ok((ok, first))
}

fn check_closed_form(scenario: &Scenario, s: &Settings, report: &mut Report) -> Result<(), CliError> {
    sampled_params(report, s);
    let n = scenario.dim;
    let omega = &scenario.omega;
    let mut rng = RandomInputs::new(s.seed);

    if omega.is_constant_coefficient() && scenario.depth + 1 == omega.degree() {
        let (ok, first) = closed_form_sweep(omega, &mut rng, s.samples)?;
        let mut c = Check::counted("closed_form_scenario_form", s.samples, ok);
        if let Some(f) = first {
            c = c.with("first_failure", f);
        }
        report.check(c);

        // a basis tuple (e_I) with nonzero value shows the restriction to translations is nonzero
        let state = QZigzag::build(omega.clone(), omega.degree() - 1, coordinate_translations(n, omega)?)?;
        let basis = state.group().generators().to_vec();
        let mut witness = None;
        for idx in MultiIndex::all(n, omega.degree()) {
            let t: Vec<QDiffeo> = idx.axes().iter().map(|&i| basis[i].clone()).collect();
            let v = state.cocycle_eval(&QChain::origin(n), &t)?;
            if v != Rational::default() {
                witness = Some(json!({"tuple": tuple_json(&t), "value": v.to_string()}));
                break;
            }
        }
        report.check(Check::new("nontrivial_on_translations", witness.is_some()));
        if let Some(w) = witness {
            report.set("nontriviality_witness", w);
        }
    } else {
        report.check(Check::new("closed_form_scenario_form", true).with("skipped", "form is not constant-coefficient or depth is not m - 1"));
    }

    for m in 1..=n {
        let mut ok = 0;
        let mut first = None;
        for _ in 0..s.samples {
            let w: QForm = rng.constant_form(n, m);
            let (good, f) = closed_form_sweep(&w, &mut rng, 1)?;
            ok += good;
            if first.is_none() {
                first = f;
            }
        }
        let mut c = Check::counted(format!("closed_form_random_degree_{m}"), s.samples, ok);
        if let Some(f) = first {
            c = c.with("first_failure", f);
        }
        report.check(c);
    }
    Ok(())
}
