//! Subcommand drivers. Each turns a problem into a [`ResultDocument`] or a
//! [`Failure`] carrying its exit code.

use std::collections::BTreeMap;
use std::time::Instant;

use dloc::bfunction::{integration_b_function, BFunctionError, BPolynomial};
use dloc::groebner::GroebnerError;
use dloc::localize::{char_ideal_gens, dimension_upper_bound, localize_cyclic, LocalizeError};
use dloc::twist::build_localizing_ideal;
use dloc::{
    apply_operator, is_annihilated, parse_function, parse_operator, Limits, LocalizeConfig,
    TermOrder, WeylContext, WeylElement,
};
use thiserror::Error;

use crate::document::{integer_number, ResultDocument};
use crate::problem::{Problem, TieBreak};

#[derive(Debug, Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    ZeroBFunction(String),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Internal(String),
}

impl Failure {
    /// 2 usage or parse error, 3 zero b-function, 4 resource cap, 1 other.
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Internal(_) => 1,
            Failure::Usage(_) => 2,
            Failure::ZeroBFunction(_) => 3,
            Failure::Resource(_) => 4,
        }
    }
}

/// Exit code when `verify` finds an operator that does not annihilate.
pub const VERIFY_FAILED: u8 = 5;

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Overrides the problem file's setting.
    pub tie_break: Option<TieBreak>,
    pub max_steps: Option<usize>,
    pub diagnostics: bool,
    pub verbose: bool,
}

struct Setup {
    ctx: WeylContext,
    f: WeylElement,
    gens: Vec<WeylElement>,
    tie: TieBreak,
    limits: Limits,
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn setup(problem: &Problem, opts: &RunOptions) -> Result<Setup, Failure> {
    let ctx = WeylContext::new(&problem.vars).map_err(usage)?;
    let f = parse_operator(&problem.f, &ctx).map_err(|e| usage(format!("f: {e}")))?;
    if !f.is_polynomial() {
        return Err(usage("f: must be a polynomial in the variables"));
    }
    let gens = problem
        .gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            parse_operator(g, &ctx).map_err(|e| usage(format!("generator {}: {e}", i + 1)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let tie = opts.tie_break.unwrap_or(problem.options.tie_break);
    let limits = Limits {
        max_steps: opts.max_steps.or(problem.options.max_steps),
        max_degree: None,
    };
    Ok(Setup {
        ctx,
        f,
        gens,
        tie,
        limits,
    })
}

fn term_order(tie: TieBreak) -> TermOrder {
    match tie {
        TieBreak::Grevlex => TermOrder::Grevlex,
        TieBreak::Lex => TermOrder::Lex,
    }
}

fn base_document(command: &str, problem: &Problem, s: &Setup) -> ResultDocument {
    ResultDocument {
        command: command.to_string(),
        vars: problem.vars.clone(),
        f: Some(s.f.to_string()),
        tie_break: Some(s.tie.name().to_string()),
        ..ResultDocument::default()
    }
}

fn fill_b(doc: &mut ResultDocument, b: &BPolynomial) {
    doc.b = Some(b.to_string());
    doc.b_coefficients = Some(
        b.coeffs()
            .iter()
            .map(|c| integer_number(&c.to_string()))
            .collect(),
    );
    doc.integer_roots = b
        .integer_roots()
        .map(|rs| rs.iter().map(|r| integer_number(&r.to_string())).collect());
    doc.rational_roots = b
        .rational_roots()
        .map(|rs| rs.iter().map(ToString::to_string).collect());
}

fn strings(items: &[impl ToString]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

fn ms(d: std::time::Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

pub fn localize(problem: &Problem, opts: &RunOptions) -> Result<ResultDocument, Failure> {
    let s = setup(problem, opts)?;
    let config = LocalizeConfig {
        tie: term_order(s.tie),
        limits: s.limits,
        diagnostics: opts.diagnostics,
    };
    let start = Instant::now();
    let r = localize_cyclic(&s.f, &s.gens, &config).map_err(|e| match e {
        LocalizeError::ZeroBFunction => Failure::ZeroBFunction(e.to_string()),
        LocalizeError::ResourceLimit { .. } => Failure::Resource(e.to_string()),
        LocalizeError::Input(_) => usage(e),
        LocalizeError::Failed { .. } => Failure::Internal(e.to_string()),
    })?;
    let total = start.elapsed();
    if opts.verbose {
        let t = &r.trace;
        eprintln!(
            "localizing ideal ({} generators):",
            t.localizing_ideal.len()
        );
        for g in &t.localizing_ideal {
            eprintln!("  {g}");
        }
        eprintln!("adapted Groebner basis: {} elements", t.adapted_basis_size);
        eprintln!("initial ideal generators ({}):", t.initial_ideal.len());
        for g in &t.initial_ideal {
            eprintln!("  {g}");
        }
        eprintln!("elimination survivors: {}", t.survivors.len());
        eprintln!("G_k ({} elements):", t.gk.len());
        for g in &t.gk {
            eprintln!("  {g}");
        }
        eprintln!("module basis: {} elements", t.module_basis_size);
        eprintln!(
            "b-function certificate: {}",
            if t.b_certificate { "ok" } else { "missing" }
        );
    }
    let mut doc = base_document("localize", problem, &s);
    doc.f = Some(r.f.to_string());
    doc.k = r.k.map(|k| k as u64);
    doc.zero_module = Some(r.is_zero_module());
    fill_b(&mut doc, &r.b);
    doc.integer_roots = Some(
        r.integer_roots
            .iter()
            .map(|x| integer_number(&x.to_string()))
            .collect(),
    );
    doc.annihilator = Some(strings(&r.annihilator));
    if r.k.is_some() {
        doc.generator = Some(format!("({})^{}", r.generator.f, r.generator.exponent));
        doc.natural_map_factor = Some(r.natural_map_factor.to_string());
    }
    if let Some(d) = &r.diagnostics {
        doc.char_input = Some(strings(&d.input.generators));
        doc.char_input_dimension = d.input.dimension;
        doc.char_output = Some(strings(&d.output.generators));
        doc.char_output_dimension = d.output.dimension;
    }
    let mut timing: BTreeMap<String, f64> = r
        .trace
        .timings
        .iter()
        .map(|(stage, d)| (stage.name().to_string(), ms(*d)))
        .collect();
    timing.insert("total".into(), ms(total));
    doc.timing_ms = Some(timing);
    Ok(doc)
}

pub fn bfunction(problem: &Problem, opts: &RunOptions) -> Result<ResultDocument, Failure> {
    let s = setup(problem, opts)?;
    let start = Instant::now();
    let ideal = build_localizing_ideal(&s.f, &s.gens).map_err(usage)?;
    let report =
        integration_b_function(&ideal, &term_order(s.tie), s.limits).map_err(|e| match e {
            BFunctionError::Zero => Failure::ZeroBFunction(e.to_string()),
            BFunctionError::Groebner(GroebnerError::ResourceLimit(_)) => {
                Failure::Resource(e.to_string())
            }
            other => Failure::Internal(other.to_string()),
        })?;
    if opts.verbose {
        eprintln!("adapted Groebner basis: {} elements", report.adapted.len());
        for g in &report.initial {
            eprintln!("  in_w: {g}");
        }
        eprintln!("theta polynomial: {}", report.theta.render("t"));
    }
    let mut doc = base_document("bfunction", problem, &s);
    fill_b(&mut doc, &report.b);
    doc.k = report
        .b
        .largest_nonneg_integer_root()
        .flatten()
        .map(|k| k.to_string().parse().expect("root fits"));
    doc.timing_ms = Some(BTreeMap::from([("total".to_string(), ms(start.elapsed()))]));
    Ok(doc)
}

pub fn characteristic(problem: &Problem, opts: &RunOptions) -> Result<ResultDocument, Failure> {
    let s = setup(problem, opts)?;
    let start = Instant::now();
    let map = |e: GroebnerError| match e {
        GroebnerError::ResourceLimit(_) => Failure::Resource(e.to_string()),
        other => Failure::Internal(other.to_string()),
    };
    let gens = char_ideal_gens(&s.gens, s.limits).map_err(map)?;
    let dim = dimension_upper_bound(2 * s.ctx.n(), &gens, s.limits).map_err(map)?;
    let mut doc = base_document("char", problem, &s);
    doc.char_input = Some(strings(&gens));
    doc.char_input_dimension = dim;
    doc.timing_ms = Some(BTreeMap::from([("total".to_string(), ms(start.elapsed()))]));
    Ok(doc)
}

pub fn apply(
    vars: &[String],
    operators: &[String],
    function: &str,
) -> Result<ResultDocument, Failure> {
    let ctx = WeylContext::new(vars).map_err(usage)?;
    let func = parse_function(function, vars).map_err(|e| usage(format!("function: {e}")))?;
    let mut applied = Vec::new();
    for (i, op) in operators.iter().enumerate() {
        let p = parse_operator(op, &ctx).map_err(|e| usage(format!("operator {}: {e}", i + 1)))?;
        let out = apply_operator(&p, &func).map_err(usage)?;
        applied.push(out.to_string());
    }
    Ok(ResultDocument {
        command: "apply".into(),
        vars: vars.to_vec(),
        function: Some(function.to_string()),
        applied: Some(applied),
        ..ResultDocument::default()
    })
}

/// Localizes and checks with the oracle that every output generator
/// annihilates `function` (or the problem's `function:` field).
pub fn verify(
    problem: &Problem,
    function: Option<&str>,
    opts: &RunOptions,
) -> Result<ResultDocument, Failure> {
    let function = function
        .map(str::to_string)
        .or_else(|| problem.function.clone())
        .ok_or_else(|| {
            usage("verify needs a function (--function or `function:` in the problem)")
        })?;
    let func =
        parse_function(&function, &problem.vars).map_err(|e| usage(format!("function: {e}")))?;
    let mut doc = localize(problem, opts)?;
    doc.command = "verify".into();
    let ctx = WeylContext::new(&problem.vars).map_err(usage)?;
    let gens = doc
        .annihilator
        .as_deref()
        .unwrap_or_default()
        .iter()
        .map(|g| parse_operator(g, &ctx).map_err(|e| Failure::Internal(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let ok = is_annihilated(&gens, &func).map_err(|e| Failure::Internal(e.to_string()))?;
    doc.function = Some(function);
    doc.verified = Some(ok);
    Ok(doc)
}
