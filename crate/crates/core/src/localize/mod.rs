//! The localization pipeline `D/J ↦ D/J ⊗ R_f`, the natural map and
//! characteristic-ideal diagnostics.

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::bfunction::{integration_b_function, BFunctionError, BPolynomial};
use crate::groebner::{buchberger_left, FreeModuleElement, GroebnerError, Limits};
use crate::integrate::{annihilator_of_vk, build_gk, IntegrateError};
use crate::order::{initial_form_w, TermOrder, WeightVector};
use crate::poly::Polynomial;
use crate::twist::{build_localizing_ideal, TwistError};
use crate::weyl::{Monomial, WeylContext, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    LocalizingIdeal,
    BFunction,
    RootSearch,
    Integration,
    Annihilator,
    Diagnostics,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::LocalizingIdeal => "localizing-ideal",
            Stage::BFunction => "b-function",
            Stage::RootSearch => "root-search",
            Stage::Integration => "integration",
            Stage::Annihilator => "annihilator",
            Stage::Diagnostics => "diagnostics",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalizeError {
    #[error("b-function is zero: cannot certify holonomicity on the complement of V(f)")]
    ZeroBFunction,
    #[error("resource limit reached in stage {stage}: {detail}")]
    ResourceLimit { stage: Stage, detail: String },
    #[error("invalid input: {0}")]
    Input(TwistError),
    #[error("stage {stage} failed: {detail}")]
    Failed { stage: Stage, detail: String },
}

impl LocalizeError {
    fn from_groebner(stage: Stage, e: GroebnerError) -> Self {
        match e {
            GroebnerError::ResourceLimit(detail) => LocalizeError::ResourceLimit { stage, detail },
            other => LocalizeError::Failed {
                stage,
                detail: other.to_string(),
            },
        }
    }

    fn from_bfunction(e: BFunctionError) -> Self {
        match e {
            BFunctionError::Zero => LocalizeError::ZeroBFunction,
            BFunctionError::Groebner(g) => Self::from_groebner(Stage::BFunction, g),
            other => LocalizeError::Failed {
                stage: Stage::BFunction,
                detail: other.to_string(),
            },
        }
    }

    fn from_integrate(stage: Stage, e: IntegrateError) -> Self {
        match e {
            IntegrateError::Groebner(g) => Self::from_groebner(stage, g),
            other => LocalizeError::Failed {
                stage,
                detail: other.to_string(),
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct LocalizeConfig {
    /// Order refining the integration weight in the adapted Gröbner basis.
    pub tie: TermOrder,
    pub limits: Limits,
    /// Compute characteristic-ideal dimensions of input and output.
    pub diagnostics: bool,
}

impl Default for LocalizeConfig {
    fn default() -> Self {
        LocalizeConfig {
            tie: TermOrder::Grevlex,
            limits: Limits::default(),
            diagnostics: true,
        }
    }
}

/// The element `1̄ ⊗ f^exponent` generating the localized module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorDescriptor {
    pub f: WeylElement,
    pub exponent: i64,
}

impl fmt::Display for GeneratorDescriptor {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "1⊗({})^({})", self.f, self.exponent)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharReport {
    pub generators: Vec<Polynomial>,
    pub dimension: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    pub input: CharReport,
    pub output: CharReport,
}

/// Sizes and timings of the individual stages.
#[derive(Clone, Debug, Default)]
pub struct Trace {
    pub localizing_ideal: Vec<WeylElement>,
    pub adapted_basis_size: usize,
    pub initial_ideal: Vec<WeylElement>,
    pub survivors: Vec<WeylElement>,
    pub gk: Vec<FreeModuleElement>,
    pub module_basis_size: usize,
    /// `b(θ)` reduced to zero modulo the initial ideal.
    pub b_certificate: bool,
    pub timings: Vec<(Stage, Duration)>,
}

#[derive(Clone, Debug)]
pub struct LocalizationResult {
    pub f: WeylElement,
    /// Largest nonnegative integer root of `b`; `None` means the localized
    /// module is zero.
    pub k: Option<usize>,
    pub b: BPolynomial,
    pub integer_roots: Vec<num_bigint::BigInt>,
    pub annihilator: Vec<WeylElement>,
    pub generator: GeneratorDescriptor,
    /// `f^k`: the image of `1̄ ∈ D/J` is `f^k` times the generator.
    pub natural_map_factor: WeylElement,
    pub diagnostics: Option<Diagnostics>,
    pub trace: Trace,
}

impl LocalizationResult {
    pub fn is_zero_module(&self) -> bool {
        self.annihilator.iter().any(WeylElement::is_constant)
    }
}

/// Image of `P̄ ∈ D/J` in the localization, as `operator · generator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalMapImage {
    pub operator: WeylElement,
    pub generator: GeneratorDescriptor,
}

pub fn natural_map_image(result: &LocalizationResult, p: &WeylElement) -> NaturalMapImage {
    NaturalMapImage {
        operator: p * &result.natural_map_factor,
        generator: result.generator.clone(),
    }
}

fn timed<T>(trace: &mut Trace, stage: Stage, run: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = run();
    trace.timings.push((stage, start.elapsed()));
    out
}

/// Presents `D/J ⊗ R_f` as `D/D·{Q_1, ..., Q_t}`.
pub fn localize_cyclic(
    f: &WeylElement,
    gens: &[WeylElement],
    config: &LocalizeConfig,
) -> Result<LocalizationResult, LocalizeError> {
    let mut trace = Trace::default();
    let f = if f.is_constant() && !f.is_zero() {
        WeylElement::one(f.context())
    } else {
        f.clone()
    };
    let ideal = timed(&mut trace, Stage::LocalizingIdeal, || {
        build_localizing_ideal(&f, gens)
    })
    .map_err(LocalizeError::Input)?;
    let f = ideal.f().clone();
    let plain = ideal.plain_context().clone();
    trace.localizing_ideal = ideal.generators().to_vec();

    let report = timed(&mut trace, Stage::BFunction, || {
        integration_b_function(&ideal, &config.tie, config.limits)
    })
    .map_err(LocalizeError::from_bfunction)?;
    trace.adapted_basis_size = report.adapted.len();
    trace.initial_ideal = report.initial.clone();
    trace.survivors = report.survivors.clone();
    let b = report.b.clone();
    trace.b_certificate = report
        .contains_theta(&report.theta)
        .map_err(LocalizeError::from_bfunction)?;
    if !trace.b_certificate {
        return Err(LocalizeError::Failed {
            stage: Stage::BFunction,
            detail: "b(θ) does not reduce to zero modulo the initial ideal".into(),
        });
    }

    let roots = timed(&mut trace, Stage::RootSearch, || b.integer_roots());
    let roots = roots.ok_or_else(|| LocalizeError::Failed {
        stage: Stage::RootSearch,
        detail: "coefficients too large for the integer root search".into(),
    })?;
    let k = match roots
        .iter()
        .filter(|r| r.sign() != num_bigint::Sign::Minus)
        .max()
    {
        None => None,
        Some(r) => Some(r.to_usize().ok_or_else(|| LocalizeError::Failed {
            stage: Stage::RootSearch,
            detail: format!("root {r} does not fit a machine word"),
        })?),
    };

    let annihilator = match k {
        None => vec![WeylElement::one(&plain)],
        Some(k) => {
            let gk = timed(&mut trace, Stage::Integration, || {
                build_gk(report.adapted.elements(), k)
            })
            .map_err(|e| LocalizeError::from_integrate(Stage::Integration, e))?;
            let ann = timed(&mut trace, Stage::Annihilator, || {
                annihilator_of_vk(&plain, &gk, k, config.limits)
            })
            .map_err(|e| LocalizeError::from_integrate(Stage::Annihilator, e))?;
            trace.gk = gk;
            trace.module_basis_size = ann.basis.elements().len();
            ann.generators
        }
    };

    let k_exp = k.unwrap_or(0);
    let generator = GeneratorDescriptor {
        f: f.clone(),
        exponent: -(k_exp as i64) - 2,
    };
    let natural_map_factor = f.pow(k_exp as u32);

    let diagnostics = if config.diagnostics {
        let run = || -> Result<Diagnostics, GroebnerError> {
            let input = char_report(ideal.source(), config.limits)?;
            let output = char_report(&annihilator, config.limits)?;
            Ok(Diagnostics { input, output })
        };
        Some(
            timed(&mut trace, Stage::Diagnostics, run)
                .map_err(|e| LocalizeError::from_groebner(Stage::Diagnostics, e))?,
        )
    } else {
        None
    };

    Ok(LocalizationResult {
        f,
        k,
        b,
        integer_roots: roots,
        annihilator,
        generator,
        natural_map_factor,
        diagnostics,
        trace,
    })
}

fn char_report(gens: &[WeylElement], limits: Limits) -> Result<CharReport, GroebnerError> {
    let generators = char_ideal_gens(gens, limits)?;
    let nvars = gens.first().map_or(0, |g| 2 * g.context().n());
    let dimension = dimension_upper_bound(nvars, &generators, limits)?;
    Ok(CharReport {
        generators,
        dimension,
    })
}

/// Variable names `x_1..x_n, ξ_1..ξ_n` of the characteristic ideal.
pub fn symbol_names(ctx: &WeylContext) -> Arc<[String]> {
    let mut names: Vec<String> = ctx.spatial_names().to_vec();
    names.extend(ctx.spatial_names().iter().map(|s| format!("xi_{s}")));
    names.into()
}

/// Principal symbols of a Gröbner basis for the order filtration; they
/// generate the characteristic ideal of `D/D·gens`.
pub fn char_ideal_gens(
    gens: &[WeylElement],
    limits: Limits,
) -> Result<Vec<Polynomial>, GroebnerError> {
    let ctx = gens
        .first()
        .ok_or(GroebnerError::NoGenerators)?
        .context()
        .clone();
    if ctx.has_aux() || ctx.has_hom() {
        return Err(GroebnerError::BadSubalgebra);
    }
    let w = WeightVector::differential_order(&ctx);
    let order = TermOrder::weighted(w.clone(), TermOrder::Grevlex);
    let gb = buchberger_left(gens, &order, limits)?;
    let names = symbol_names(&ctx);
    Ok(gb
        .elements()
        .iter()
        .map(|g| {
            let top = initial_form_w(&w, g).expect("basis elements are nonzero");
            Polynomial::from_terms(
                names.clone(),
                top.terms().map(|(m, c)| (m.clone(), c.clone())),
            )
        })
        .collect())
}

/// Krull dimension of `K[x, ξ]/(gens)`, read off a grevlex Gröbner basis
/// as the largest set of variables containing no leading monomial's
/// support. `None` for the unit ideal. The subset search is exhaustive, so
/// `nvars` is capped at 30.
pub fn dimension_upper_bound(
    nvars: usize,
    gens: &[Polynomial],
    limits: Limits,
) -> Result<Option<usize>, GroebnerError> {
    if nvars > 30 {
        return Err(GroebnerError::ResourceLimit(format!(
            "{nvars} variables in the dimension search"
        )));
    }
    if gens.iter().any(|p| p.nvars() != nvars) {
        return Err(GroebnerError::RankMismatch {
            expected: nvars,
            got: gens
                .iter()
                .map(Polynomial::nvars)
                .find(|&m| m != nvars)
                .unwrap_or(0),
        });
    }
    let names: Vec<String> = (0..nvars).map(|i| format!("c{i}")).collect();
    // commutative polynomials as Weyl elements with no derivative involved
    let ctx = WeylContext::new(&names)?;
    let lift = |p: &Polynomial| {
        WeylElement::from_terms(
            &ctx,
            p.terms().map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.resize(2 * nvars, 0);
                (Monomial::from_exponents(&e), c.clone())
            }),
        )
    };
    let lifted: Vec<WeylElement> = gens.iter().filter(|p| !p.is_zero()).map(lift).collect();
    if lifted.is_empty() {
        return Ok(Some(nvars));
    }
    let gb = buchberger_left(&lifted, &TermOrder::Grevlex, limits)?;
    let supports: Vec<u64> = gb
        .leading_monomials()
        .iter()
        .map(|m| {
            (0..nvars)
                .filter(|&i| m.get(i) > 0)
                .fold(0u64, |acc, i| acc | (1 << i))
        })
        .collect();
    let best = (0u64..1 << nvars)
        .filter(|set| supports.iter().all(|s| s & !set != 0))
        .map(|set| set.count_ones() as usize)
        .max();
    Ok(best)
}
