//! Command-line front end: system specs, commands and JSON reports.
//!
//! Reports go to stdout as JSON; diagnostics go to stderr. Exit codes: 0 ran
//! with results, 1 ran without results (or a certificate failed to verify),
//! 2 input error, 3 resource limit.

pub mod cert;
pub mod parse;
mod spec;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_traits::One;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::algebra::{RationalFunction, Scalar, SparsePoly, Vars};
use crate::darboux::{assemble, rational_iif_to_darboux, DarbouxCertificate, Role};
use crate::error::{Error, Result};
use crate::invariants::{
    default_exp_degree, find_exp_factors, find_invariant_curves, find_polynomial_solutions, CofactoredObject, InvariantCurve,
    PolynomialSolution,
};
use crate::painleve::{painleve_first_integral, painleve_search, classify_factors, Classification, PainleveIntegratingFactor};
use crate::polysolve::Budget;
use crate::validate::{numeric_drift, x_only_first_integral, DriftExpr, DriftOptions};
use crate::vectorfield::{RationalMap, VectorField};
use crate::weierstrass::{check_weierstrass_certificate, formal_curve, is_weierstrass_polynomial, SeriesPolyY, WeierstrassCertificate, DEFAULT_ORDER};

pub use spec::SystemSpec;

/// Environment variable holding the default budget as `pairs,degree`.
pub const BUDGET_ENV: &str = "DARBOUXKIT_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "darbouxkit", version, about = "Exact integrability certificates for planar polynomial vector fields")]
pub struct Cli {
    /// P in dx/dt = P(x, y)
    #[arg(long = "P", global = true, allow_hyphen_values = true)]
    pub p: Option<String>,
    /// Q in dy/dt = Q(x, y)
    #[arg(long = "Q", global = true, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// System spec file with `P:`, `Q:` and `option.<name>:` lines; flags override it
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,
    /// Gröbner budget `max_pairs,max_degree`; defaults to $DARBOUXKIT_BUDGET, then 20000,40
    #[arg(long, global = true)]
    pub budget: Option<String>,
    /// Single-line JSON
    #[arg(long, global = true)]
    pub compact: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariant algebraic curves up to a total degree
    Curves {
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Exponential factors exp(h/g^n) for a given invariant g
    Expfactors {
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        deg_h: Option<u32>,
    },
    /// Polynomial solutions y = g(x) of dy/dx = Q/P
    Polysols {
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Darboux first integrals or inverse integrating factors
    Darboux {
        /// first-integral or inverse-factor
        #[arg(long)]
        goal: Option<String>,
        /// JSON file with invariant-curve / exp-factor certificates to combine
        #[arg(long)]
        objects: Option<PathBuf>,
        /// Degree for the curve search when no objects are given
        #[arg(long)]
        max_degree: Option<u32>,
        /// Skip the exponential factors with g = 1
        #[arg(long)]
        no_exp: bool,
        /// Rewrite a rational inverse integrating factor in Darboux form
        #[arg(long, allow_hyphen_values = true)]
        from_iif: Option<String>,
    },
    /// Integrating factors built on polynomial solutions
    Painleve {
        #[command(flatten)]
        opts: PainleveOpts,
    },
    /// Re-check every cert-v1 object in a JSON file
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Formal solution through the origin and Weierstrass certificates
    WeierstrassCheck {
        #[arg(long)]
        order: Option<u32>,
        /// Curve C of V = exp(D/E)·C
        #[arg(long = "V", allow_hyphen_values = true)]
        v: Option<String>,
        #[arg(long = "D", allow_hyphen_values = true)]
        d: Option<String>,
        #[arg(long = "E", allow_hyphen_values = true)]
        e: Option<String>,
        /// JSON file with weierstrass certificates
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Rewrite dy/dx = Q/P under a birational change of variables
    Transform {
        #[arg(long = "X", allow_hyphen_values = true)]
        big_x: String,
        #[arg(long = "Y", allow_hyphen_values = true)]
        big_y: String,
        /// x as a function of X, Y
        #[arg(long, allow_hyphen_values = true)]
        inv_x: String,
        /// y as a function of X, Y
        #[arg(long, allow_hyphen_values = true)]
        inv_y: String,
    },
    /// Numeric conservation check of a first integral along a trajectory
    Numcheck {
        /// Rational first integral; otherwise taken from --cert or the x-only factor
        #[arg(long = "H", allow_hyphen_values = true)]
        h: Option<String>,
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Start point `x0,y0`
        #[arg(long, allow_hyphen_values = true)]
        start: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        t_start: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        t_end: Option<f64>,
        #[arg(long)]
        rtol: Option<f64>,
    },
    /// Two-case classification from the Painlevé-type integrating factors
    Classify {
        #[command(flatten)]
        opts: PainleveOpts,
    },
}

#[derive(clap::Args, Debug)]
pub struct PainleveOpts {
    /// Solutions g(x) separated by ';'; default: every subset of those found by polysols
    #[arg(long, allow_hyphen_values = true)]
    solutions: Option<String>,
    #[arg(long)]
    deg_y_s: Option<u32>,
    #[arg(long)]
    deg_x_s: Option<u32>,
    /// Degree for the polynomial-solution search
    #[arg(long)]
    max_degree: Option<u32>,
}

/// What a run produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct Report {
    schema: &'static str,
    command: Vec<String>,
    field: Option<Value>,
    fingerprint: Option<String>,
    complete: bool,
    results: Value,
    error: Option<Value>,
    timing: Value,
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit(_) => 3,
        Error::Syntax { .. }
        | Error::NonPolynomial(_)
        | Error::Invalid(_)
        | Error::InvalidMap(_)
        | Error::DegenerateMap(_)
        | Error::MalformedCertificate(_) => 2,
        _ => 1,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NonScalarLeadingCoefficient { .. } => "NonScalarLeadingCoefficient",
        Error::ZeroDegreeDivisor { .. } => "ZeroDegreeDivisor",
        Error::UnsupportedDenominator { .. } => "UnsupportedDenominator",
        Error::ResourceLimit(_) => "ResourceLimit",
        Error::NotZeroDimensional => "NotZeroDimensional",
        Error::NotExact => "NotExact",
        Error::DependsOnY => "DependsOnY",
        Error::DegenerateMap(_) => "DegenerateMap",
        Error::InvalidMap(_) => "InvalidMap",
        Error::NotInvariant(_) => "NotInvariant",
        Error::NoSolution(_) => "NoSolution",
        Error::UnfactoredResidual(_) => "UnfactoredResidual",
        Error::NonConstantExponents(_) => "NonConstantExponents",
        Error::SingularAtOrigin => "SingularAtOrigin",
        Error::MalformedCertificate(_) => "MalformedCertificate",
        Error::DomainCrossing(_) => "DomainCrossing",
        Error::StepFailure(_) => "StepFailure",
        Error::Syntax { .. } => "SyntaxError",
        Error::NonPolynomial(_) => "NonPolynomial",
        Error::Invalid(_) => "Invalid",
    }
}

/// SHA-256 of the canonical text of `P` and `Q`.
pub fn fingerprint(field: &VectorField) -> String {
    let mut h = Sha256::new();
    h.update(format!("P={};Q={}", field.p(), field.q()).as_bytes());
    hex::encode(h.finalize())
}

/// Parses arguments (without the program name) and runs the command.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(std::iter::once("darbouxkit".to_string()).chain(args.iter().cloned())) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let started = Instant::now();
    let mut ctx = match Ctx::new(&cli) {
        Ok(c) => c,
        Err(e) => return input_failure(&e),
    };
    let result = ctx.dispatch(&cli.command);
    let elapsed = started.elapsed().as_secs_f64() * 1000.0;
    let (code, results, error) = match result {
        Ok((code, v)) => (code, v, None),
        Err(e) if exit_code(&e) == 2 => return input_failure(&e),
        Err(e) => (exit_code(&e), Value::Null, Some(json!({"kind": error_kind(&e), "message": e.to_string()}))),
    };
    let report = Report {
        schema: "report-v1",
        command: args,
        field: ctx.field.as_ref().map(|f| json!({"P": f.p().to_string(), "Q": f.q().to_string()})),
        fingerprint: ctx.field.as_ref().map(fingerprint),
        complete: ctx.complete && code != 3,
        results,
        error: error.clone(),
        timing: json!({"elapsed_ms": elapsed}),
    };
    let stdout = if cli.compact { serde_json::to_string(&report) } else { serde_json::to_string_pretty(&report) }.expect("report serializes") + "\n";
    let mut stderr = ctx.notes.join("\n");
    if let Some(e) = error {
        if !stderr.is_empty() {
            stderr.push('\n');
        }
        stderr.push_str(&format!("error: {}", e["message"].as_str().unwrap_or_default()));
    }
    if !stderr.is_empty() {
        stderr.push('\n');
    }
    Outcome { code, stdout, stderr }
}

fn input_failure(e: &Error) -> Outcome {
    Outcome { code: exit_code(e).clamp(2, 3), stdout: String::new(), stderr: format!("error: {e}\n") }
}

struct Ctx {
    spec: SystemSpec,
    field: Option<VectorField>,
    budget: Budget,
    complete: bool,
    notes: Vec<String>,
}

fn read_json(path: &PathBuf) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::MalformedCertificate(format!("{}: {e}", path.display())))
}

fn opt_f64(s: &str, name: &str) -> Result<f64> {
    s.trim().parse().map_err(|_| Error::Invalid(format!("{name}: not a number: {s:?}")))
}

impl Ctx {
    fn new(cli: &Cli) -> Result<Self> {
        let mut spec = match &cli.spec {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
                SystemSpec::parse(&text)?
            }
            None => SystemSpec::default(),
        };
        if let Some(p) = &cli.p {
            spec.p_text = Some(p.clone());
        }
        if let Some(q) = &cli.q {
            spec.q_text = Some(q.clone());
        }
        let budget_text = cli.budget.clone().or_else(|| spec.options.get("budget").cloned()).or_else(|| std::env::var(BUDGET_ENV).ok());
        let budget = match budget_text {
            Some(t) => Budget::parse(&t).ok_or_else(|| Error::Invalid(format!("budget {t:?} is not `pairs,degree`")))?,
            None => Budget::default(),
        };
        let needs_field = !matches!(cli.command, Command::Verify { .. });
        let field = if needs_field { Some(spec.field()?) } else { None };
        Ok(Self { spec, field, budget, complete: true, notes: Vec::new() })
    }

    fn field(&self) -> &VectorField {
        self.field.as_ref().expect("field parsed")
    }

    fn opt_u32(&self, flag: Option<u32>, name: &str, default: u32) -> Result<u32> {
        match (flag, self.spec.options.get(name)) {
            (Some(v), _) => Ok(v),
            (None, Some(s)) => s.trim().parse().map_err(|_| Error::Invalid(format!("option.{name}: not a count: {s:?}"))),
            (None, None) => Ok(default),
        }
    }

    fn opt_str(&self, flag: &Option<String>, name: &str) -> Option<String> {
        flag.clone().or_else(|| self.spec.options.get(name).cloned())
    }

    fn dispatch(&mut self, cmd: &Command) -> Result<(i32, Value)> {
        match cmd {
            Command::Curves { max_degree } => self.curves(*max_degree),
            Command::Expfactors { g, n, deg_h } => self.expfactors(g, *n, *deg_h),
            Command::Polysols { max_degree } => self.polysols(*max_degree),
            Command::Darboux { goal, objects, max_degree, no_exp, from_iif } => self.darboux(goal, objects, *max_degree, *no_exp, from_iif),
            Command::Painleve { opts } => self.painleve(opts),
            Command::Verify { cert } => self.verify(cert),
            Command::WeierstrassCheck { order, v, d, e, cert } => self.weierstrass(*order, v, d, e, cert),
            Command::Transform { big_x, big_y, inv_x, inv_y } => self.transform(big_x, big_y, inv_x, inv_y),
            Command::Numcheck { h, cert, start, t_start, t_end, rtol } => self.numcheck(h, cert, start, *t_start, *t_end, *rtol),
            Command::Classify { opts } => self.classify(opts),
        }
    }

    fn curves(&mut self, max_degree: Option<u32>) -> Result<(i32, Value)> {
        let d = self.opt_u32(max_degree, "max_degree", 2)?;
        let field = self.field().clone();
        let search = find_invariant_curves(&field, d, &self.budget)?;
        self.complete &= search.complete;
        let curves = search.curves.iter().map(|c| emit(cert::curve_doc(&field, c))).collect::<Result<Vec<_>>>()?;
        let reps = search.representatives.iter().map(|c| emit(cert::curve_doc(&field, c))).collect::<Result<Vec<_>>>()?;
        let families: Vec<Value> = search
            .families
            .iter()
            .map(|f| json!({"params": f.params, "curve": f.object.to_string(), "cofactor": f.cofactor.to_string()}))
            .collect();
        let code = if curves.is_empty() && families.is_empty() { 1 } else { 0 };
        Ok((code, json!({"max_degree": d, "curves": curves, "families": families, "representatives": reps})))
    }

    fn expfactors(&mut self, g: &Option<String>, n: Option<u32>, deg_h: Option<u32>) -> Result<(i32, Value)> {
        let field = self.field().clone();
        let g = parse::parse_polynomial(&self.opt_str(g, "g").unwrap_or_else(|| "1".into()), field.vars())?;
        let n = self.opt_u32(n, "n", 1)?;
        let deg_h = self.opt_u32(deg_h, "deg_h", default_exp_degree(&field, &g, n))?;
        let found = find_exp_factors(&field, &g, n, deg_h)?;
        let docs = found.iter().map(|e| emit(cert::exp_doc(&field, e))).collect::<Result<Vec<_>>>()?;
        let code = if docs.is_empty() { 1 } else { 0 };
        Ok((code, json!({"g": g.to_string(), "n": n, "deg_h": deg_h, "exp_factors": docs})))
    }

    fn polysols(&mut self, max_degree: Option<u32>) -> Result<(i32, Value)> {
        let d = self.opt_u32(max_degree, "max_degree", 2)?;
        let field = self.field().clone();
        let s = find_polynomial_solutions(&field, d, &self.budget)?;
        self.complete &= s.complete;
        let sols = s.solutions.iter().map(|g| emit(cert::solution_doc(&field, g))).collect::<Result<Vec<_>>>()?;
        let families: Vec<Value> = s.families.iter().map(|f| json!({"params": f.params, "g": f.object.to_string()})).collect();
        let code = if sols.is_empty() && families.is_empty() { 1 } else { 0 };
        Ok((code, json!({"max_degree": d, "solutions": sols, "families": families})))
    }

    fn darboux(
        &mut self,
        goal: &Option<String>,
        objects: &Option<PathBuf>,
        max_degree: Option<u32>,
        no_exp: bool,
        from_iif: &Option<String>,
    ) -> Result<(i32, Value)> {
        let field = self.field().clone();
        let goal_text = self.opt_str(goal, "goal").unwrap_or_else(|| "first-integral".into());
        let goal = Role::parse(&goal_text).ok_or_else(|| Error::Invalid(format!("unknown goal {goal_text:?}")))?;

        let mut objs: Vec<CofactoredObject> = Vec::new();
        if let Some(path) = objects {
            for d in cert::collect_docs(&read_json(path)?)? {
                if d.field()? != field {
                    return Err(Error::Invalid(format!("{} holds objects for a different field", path.display())));
                }
                if let Some(o) = d.to_object()? {
                    if !objs.contains(&o) {
                        objs.push(o);
                    }
                }
            }
        } else {
            let d = self.opt_u32(max_degree, "max_degree", 2)?;
            let search = find_invariant_curves(&field, d, &self.budget)?;
            self.complete &= search.complete;
            objs.extend(search.all_curves().into_iter().map(CofactoredObject::Curve));
            if !no_exp {
                let one = SparsePoly::one(field.vars());
                let deg = default_exp_degree(&field, &one, 1);
                objs.extend(find_exp_factors(&field, &one, 1, deg)?.into_iter().map(CofactoredObject::Exp));
            }
        }
        let listed: Vec<String> = objs
            .iter()
            .map(|o| match o {
                CofactoredObject::Curve(c) => c.c.to_string(),
                CofactoredObject::Exp(e) => format!("exp({})", RationalFunction::new(e.h.clone(), e.g.pow(e.n)).map(|r| r.to_string()).unwrap_or_default()),
            })
            .collect();

        let mut certs: Vec<DarbouxCertificate> = Vec::new();
        if let Some(text) = self.opt_str(from_iif, "from_iif") {
            let v = parse::parse_expression(&text, field.vars())?;
            let curves: Vec<InvariantCurve> = objs
                .iter()
                .filter_map(|o| match o {
                    CofactoredObject::Curve(c) => Some(c.clone()),
                    _ => None,
                })
                .collect();
            certs.push(rational_iif_to_darboux(&field, v.num(), v.den(), &curves, &self.budget)?);
        } else {
            if objs.is_empty() {
                return Err(Error::NoSolution("no invariant curves or exponential factors found".into()));
            }
            certs = assemble(&field, &objs, goal)?;
            if goal == Role::InverseIntegratingFactor && !certs.iter().any(|c| c.role == goal) {
                return Err(Error::NoSolution("no inverse integrating factor from these objects".into()));
            }
        }
        if certs.is_empty() {
            return Err(Error::NoSolution(format!("no {} from these objects", goal.as_str())));
        }
        let docs = certs.iter().map(|c| emit(cert::darboux_doc(&field, c))).collect::<Result<Vec<_>>>()?;
        Ok((0, json!({"goal": goal.as_str(), "objects": listed, "certificates": docs})))
    }

    fn chosen_sets(&mut self, opts: &PainleveOpts) -> Result<Vec<Vec<PolynomialSolution>>> {
        let field = self.field().clone();
        if let Some(text) = self.opt_str(&opts.solutions, "solutions") {
            let mut set = Vec::new();
            for part in text.split(';').filter(|s| !s.trim().is_empty()) {
                set.push(PolynomialSolution::new(parse::parse_polynomial(part, field.vars())?)?);
            }
            return Ok(vec![set]);
        }
        let d = self.opt_u32(opts.max_degree, "max_degree", 1)?;
        let found = find_polynomial_solutions(&field, d, &self.budget)?;
        self.complete &= found.complete && found.families.is_empty();
        let sols = found.solutions;
        if sols.len() > 10 {
            return Err(Error::ResourceLimit(format!("{} polynomial solutions; pass --solutions", sols.len())));
        }
        let mut sets = Vec::new();
        for mask in 1u32..(1 << sols.len()) {
            sets.push(sols.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, s)| s.clone()).collect());
        }
        sets.sort_by_key(|s: &Vec<PolynomialSolution>| s.len());
        Ok(sets)
    }

    fn painleve_runs(&mut self, opts: &PainleveOpts) -> Result<Vec<(Vec<PolynomialSolution>, Vec<PainleveIntegratingFactor>)>> {
        let field = self.field().clone();
        let dy = self.opt_u32(opts.deg_y_s, "deg_y_s", 0)?;
        let dx = self.opt_u32(opts.deg_x_s, "deg_x_s", 0)?;
        let explicit = self.opt_str(&opts.solutions, "solutions").is_some();
        let mut out = Vec::new();
        for set in self.chosen_sets(opts)? {
            let found = match painleve_search(&field, &set, dy, dx, &self.budget) {
                Ok(f) => f,
                // an enumerated subset without a factor is simply skipped
                Err(Error::NoSolution(_)) if !explicit => continue,
                Err(e) => return Err(e),
            };
            if !found.is_empty() {
                out.push((set, found));
            }
        }
        if out.is_empty() && !explicit {
            return Err(Error::NoSolution(format!("no integrating factor with deg_y S <= {dy}, deg_x S <= {dx} on any subset of solutions")));
        }
        Ok(out)
    }

    fn painleve(&mut self, opts: &PainleveOpts) -> Result<(i32, Value)> {
        let field = self.field().clone();
        let runs = self.painleve_runs(opts)?;
        let mut factors = Vec::new();
        for (set, found) in &runs {
            for m in found {
                if !m.verify(&field) {
                    return Err(Error::NotInvariant(format!("integrating factor with S = {} failed its re-check", m.s)));
                }
                let fi = match painleve_first_integral(&field, m) {
                    Ok(fi) => json!({
                        "exponents": fi.terms.iter().map(|(g, a)| json!({"g": g.g.to_string(), "exponent": a})).collect::<Vec<_>>(),
                        "h": fi.h.to_string(),
                        "log_h_derivative": fi.log_h_derivative.to_string(),
                        "verified": fi.verify(&field),
                    }),
                    Err(e) => json!({"error": e.to_string()}),
                };
                factors.push(json!({
                    "solutions": set.iter().map(|g| g.g.to_string()).collect::<Vec<_>>(),
                    "factor": factor_json(m),
                    "first_integral": fi,
                }));
            }
        }
        let code = if factors.is_empty() { 1 } else { 0 };
        Ok((code, json!({"factors": factors})))
    }

    fn classify(&mut self, opts: &PainleveOpts) -> Result<(i32, Value)> {
        let field = self.field().clone();
        let runs = self.painleve_runs(opts)?;
        let mut out = Vec::new();
        for (set, found) in &runs {
            let cls = classify_factors(&field, found)?;
            let body = match &cls {
                Classification::RiccatiReducible { first_integral } => {
                    if !first_integral.verify(&field) {
                        return Err(Error::NotInvariant("ratio of integrating factors is not a first integral".into()));
                    }
                    json!({
                        "first_integral": "M1/M2",
                        "M1": factor_json(&first_integral.numerator),
                        "M2": factor_json(&first_integral.denominator),
                    })
                }
                Classification::Algebraic { factor, certificate, note } => json!({
                    "factor": factor_json(factor),
                    "certificate": certificate.as_ref().map(|c| emit(cert::darboux_doc(&field, c))).transpose()?,
                    "note": note,
                }),
            };
            out.push(json!({
                "solutions": set.iter().map(|g| g.g.to_string()).collect::<Vec<_>>(),
                "case": cls.tag(),
                "details": body,
            }));
        }
        let code = if out.is_empty() { 1 } else { 0 };
        Ok((code, json!({"classifications": out})))
    }

    fn verify(&mut self, path: &PathBuf) -> Result<(i32, Value)> {
        let docs = cert::collect_docs(&read_json(path)?)?;
        if docs.is_empty() {
            return Err(Error::NoSolution(format!("no {} objects in {}", cert::SCHEMA, path.display())));
        }
        let checks = docs.iter().map(|d| d.check()).collect::<Result<Vec<_>>>()?;
        let all_ok = checks.iter().all(|c| c.ok);
        for (c, d) in checks.iter().zip(&docs) {
            if !c.ok {
                self.notes.push(format!("{} for ({}, {}) failed: residual {}", c.kind, d.field.p.text, d.field.q.text, c.residual));
            }
        }
        Ok((if all_ok { 0 } else { 1 }, json!({"checks": checks, "all_ok": all_ok})))
    }

    fn weierstrass(
        &mut self,
        order: Option<u32>,
        v: &Option<String>,
        d: &Option<String>,
        e: &Option<String>,
        path: &Option<PathBuf>,
    ) -> Result<(i32, Value)> {
        let field = self.field().clone();
        let n = self.opt_u32(order, "order", DEFAULT_ORDER)?;
        let mut ok = true;
        let formal = match formal_curve(&field, n) {
            Ok((c, k)) => {
                let doc = cert::formal_doc(&field, &c, &k, n);
                let chk = doc.check()?;
                ok &= chk.ok;
                json!({
                    "g": c.coeffs()[0].neg().to_string(),
                    "is_weierstrass": is_weierstrass_polynomial(&c),
                    "achieved_order": chk.achieved_order,
                    "certificate": doc,
                })
            }
            Err(Error::SingularAtOrigin) => {
                self.notes.push("P(0,0) = 0: no regular formal solution through the origin".into());
                Value::Null
            }
            Err(err) => return Err(err),
        };
        let mut certs = Vec::new();
        let vtext = self.opt_str(v, "V");
        if vtext.is_some() || d.is_some() || e.is_some() {
            let parse = |t: Option<String>, default: &str| parse::parse_polynomial(t.as_deref().unwrap_or(default), field.vars());
            let c = parse(vtext, "1")?;
            let dd = SeriesPolyY::from_poly(&parse(self.opt_str(d, "D"), "0")?);
            let ee = SeriesPolyY::from_poly(&parse(self.opt_str(e, "E"), "1")?);
            let curve_terms = if c.is_one() { Vec::new() } else { vec![(SeriesPolyY::from_poly(&c), Scalar::one())] };
            let w = WeierstrassCertificate { d: dd, e: ee, curve_terms, order: n };
            check_weierstrass_certificate(&field, &w)?;
            certs.push(cert::weierstrass_doc(&field, &w));
        }
        if let Some(p) = path {
            for doc in cert::collect_docs(&read_json(p)?)? {
                if matches!(doc.body, cert::CertBody::Weierstrass { .. }) {
                    certs.push(doc);
                }
            }
        }
        let mut checked = Vec::new();
        for doc in certs {
            let chk = doc.check()?;
            ok &= chk.ok;
            checked.push(json!({"check": chk, "certificate": doc}));
        }
        if formal.is_null() && checked.is_empty() {
            return Err(Error::SingularAtOrigin);
        }
        Ok((if ok { 0 } else { 1 }, json!({"order": n, "formal_solution": formal, "certificates": checked})))
    }

    fn transform(&mut self, fx: &str, fy: &str, ix: &str, iy: &str) -> Result<(i32, Value)> {
        let field = self.field().clone();
        let src = field.vars().clone();
        let dst = Vars::new(&["X", "Y"]);
        let forward = [parse::parse_expression(fx, &src)?, parse::parse_expression(fy, &src)?];
        let inverse = [parse::parse_expression(ix, &dst)?, parse::parse_expression(iy, &dst)?];
        let map = RationalMap::new(forward, inverse)?;
        let out = field.change_variables(&map)?;
        let red = out.reduced();
        let slope = if red.p().is_one() {
            red.q().to_string()
        } else {
            RationalFunction::new(red.q().clone(), red.p().clone())?.to_string()
        };
        Ok((
            0,
            json!({
                "map": {
                    "X": map.forward[0].to_string(), "Y": map.forward[1].to_string(),
                    "x": map.inverse[0].to_string(), "y": map.inverse[1].to_string(),
                },
                "reduced": {"P": red.p().to_string(), "Q": red.q().to_string()},
                "equation": format!("dY/dX = {slope}"),
            }),
        ))
    }

    fn numcheck(
        &mut self,
        h: &Option<String>,
        path: &Option<PathBuf>,
        start: &Option<String>,
        t_start: Option<f64>,
        t_end: Option<f64>,
        rtol: Option<f64>,
    ) -> Result<(i32, Value)> {
        let field = self.field().clone();
        let (expr, source) = if let Some(text) = self.opt_str(h, "H") {
            (DriftExpr::Rational(parse::parse_expression(&text, field.vars())?), json!({"kind": "expression"}))
        } else if let Some(p) = path {
            let doc = cert::collect_docs(&read_json(p)?)?
                .into_iter()
                .find(|d| matches!(&d.body, cert::CertBody::Darboux { role, .. } if role == Role::FirstIntegral.as_str()))
                .ok_or_else(|| Error::Invalid(format!("no first-integral certificate in {}", p.display())))?;
            if doc.field()? != field {
                return Err(Error::Invalid("certificate belongs to a different field".into()));
            }
            let c = doc.to_darboux()?;
            if !c.verify(&field).0 {
                return Err(Error::NotInvariant("certificate does not verify".into()));
            }
            (DriftExpr::from_certificate(&c)?, json!({"kind": "certificate", "text": c.to_string()}))
        } else {
            let xf = field.x_only_integrating_factor()?;
            (x_only_first_integral(&field, &xf)?, json!({"kind": "x-only-factor", "R": xf.big_r.to_string()}))
        };
        let start_text = self.opt_str(start, "start").ok_or_else(|| Error::Invalid("--start x0,y0 is required".into()))?;
        let parts: Vec<&str> = start_text.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::Invalid(format!("start {start_text:?} is not `x0,y0`")));
        }
        let p0 = [opt_f64(parts[0], "start")?, opt_f64(parts[1], "start")?];
        let t0 = match t_start {
            Some(t) => t,
            None => self.spec.options.get("t_start").map(|s| opt_f64(s, "t_start")).transpose()?.unwrap_or(0.0),
        };
        let t1 = match t_end {
            Some(t) => t,
            None => self.spec.options.get("t_end").map(|s| opt_f64(s, "t_end")).transpose()?.unwrap_or(1.0),
        };
        let mut opts = DriftOptions::default();
        if let Some(r) = rtol.or(self.spec.options.get("rtol").map(|s| opt_f64(s, "rtol")).transpose()?) {
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::Invalid(format!("rtol {r} out of range")));
            }
            opts.rtol = r;
        }
        let report = numeric_drift(&field, &expr, p0, [t0, t1], &opts)?;
        let halved = numeric_drift(&field, &expr, p0, [t0, t1], &DriftOptions { rtol: opts.rtol / 2.0, ..opts })?;
        let stable = halved.max_relative_drift <= 2.0 * report.max_relative_drift.max(f64::EPSILON);
        if !stable {
            self.notes.push("halving the tolerance more than doubled the drift".into());
        }
        Ok((
            0,
            json!({
                "H": expr.to_string(),
                "source": source,
                "start": p0,
                "rtol": opts.rtol,
                "drift": report,
                "halved_tolerance": halved,
                "stable": stable,
            }),
        ))
    }
}

fn factor_json(m: &PainleveIntegratingFactor) -> Value {
    json!({
        "S": m.s.to_string(),
        "r": m.r.to_string(),
        "alpha": m.alpha.as_ref().map(|a| a.to_string()),
        "M": m.as_rational().map(|r| r.to_string()),
        "quadrature_only": m.quadrature_only,
        "violates_degree_count": m.violates_degree_count,
    })
}

/// Re-checks a certificate before it is written out.
fn emit(doc: cert::CertDoc) -> Result<Value> {
    let chk = doc.check()?;
    if !chk.ok {
        return Err(Error::NotInvariant(format!("emitted {} failed its re-check (residual {})", chk.kind, chk.residual)));
    }
    Ok(serde_json::to_value(doc).expect("certificate serializes"))
}
