//! Command-line front end for `qlie-core`: expression parsing, command
//! dispatch and report output.

pub mod config;
pub mod expr;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qlie_core::algebras::{build_model, AlgebraModel, ModelParams, ParamSpec};
use qlie_core::coeffs::Var;
use qlie_core::liepoly::{homomorphism_obstruction, is_lie_polynomial, PsiMap};
use qlie_core::suites::{self, Bounds, Item, Status, Suite};
use qlie_core::{Error, GeneratorMap, NCPoly, Point, RatFunc, Strategy};

use crate::config::Settings;
use crate::expr::{parse_poly, parse_rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    #[value(name = "uqrs")]
    Uqrs,
    #[value(name = "uq_r0")]
    UqR0,
    #[value(name = "uq_0s")]
    Uq0s,
}

#[derive(Debug, Parser)]
#[command(name = "qlie", version, about = "Exact computation in U_q(r,s)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Base model; --r and --s override its parameters.
    #[arg(long, global = true, value_enum)]
    pub model: Option<ModelName>,
    /// Value of r: a rational or `sym`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub r: Option<String>,
    /// Value of s: a rational or `sym`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// Family bound for ambiguity enumeration.
    #[arg(long, global = true)]
    pub kmax: Option<usize>,
    /// Suite bounds, e.g. `n=4,e=3,samples=50`.
    #[arg(long, global = true)]
    pub bounds: Option<String>,
    /// Substitute values, e.g. `q=2,r=1/3`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub eval: Option<String>,
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    #[arg(long, global = true)]
    pub text: bool,
    /// Include rewrite traces where available.
    #[arg(long, global = true)]
    pub trace: bool,
    /// key=value file mirroring the flags; flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of an expression.
    Normalize { expr: String },
    /// Normal form of [X, Y].
    Bracket { x: String, y: String },
    /// Lie-polynomial membership (models U_q(r,0) and U_q(0,s)).
    IsLie { expr: String },
    /// Apply the isomorphism from U_q(s,0) to U_q(0,s), using the model's q and s.
    Psi { expr: String },
    /// Obstruction report for a generator map; the built-in cases without --map.
    Obstruction {
        /// Generator image such as `A=beta*B`, over the letters A and B.
        #[arg(long = "map")]
        maps: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        target_r: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        target_s: Option<String>,
        /// Probe pair `X;Y`.
        #[arg(long = "probe")]
        probes: Vec<String>,
    },
    /// Run a suite, `all`, or `identity LHS RHS`.
    Verify {
        target: String,
        #[arg(allow_hyphen_values = true)]
        args: Vec<String>,
    },
}

/// Result of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Errors that are the caller's fault rather than failed checks.
fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse { .. }
            | Error::ModelMismatch(_)
            | Error::InadmissibleQ { .. }
            | Error::UnboundVariable(_)
    )
}

fn usage(message: impl Into<String>) -> Error {
    Error::Parse {
        position: 0,
        message: message.into(),
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let start = Instant::now();
    let settings = match Settings::resolve(&cli) {
        Ok(s) => s,
        Err(e) => return usage_outcome(&e),
    };
    let ctx = match Context::new(&settings) {
        Ok(c) => c,
        Err(e) => return usage_outcome(&e),
    };
    let items = match dispatch(&cli.command, &ctx) {
        Ok(items) => items,
        Err(e) if is_usage_error(&e) => return usage_outcome(&e),
        Err(e) => vec![Item::new("error", Value::Null, false, e.to_string())],
    };
    let status = Status::from_bool(items.iter().all(Item::passed));
    let doc = json!({
        "command": echo,
        "model": model_json(&ctx.model),
        "items": items,
        "status": status,
        "elapsed_ms": start.elapsed().as_millis() as u64,
    });
    let stdout = if settings.json {
        format!(
            "{}\n",
            serde_json::to_string_pretty(&doc).expect("serializable")
        )
    } else {
        render_text(&items, status, start.elapsed().as_millis())
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: if status == Status::Pass { 0 } else { 1 },
    }
}

fn usage_outcome(e: &Error) -> Outcome {
    Outcome {
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
        code: 2,
    }
}

fn render_text(items: &[Item], status: Status, ms: u128) -> String {
    let mut out = String::new();
    for it in items {
        let params = if it.params.is_empty() {
            String::new()
        } else {
            format!(" {}", Value::Object(it.params.clone()))
        };
        out.push_str(&format!(
            "{} {}{}: {}\n",
            it.status, it.name, params, it.detail
        ));
    }
    let failed = items.iter().filter(|i| !i.passed()).count();
    out.push_str(&format!(
        "{status}: {} items, {failed} failed, {ms} ms\n",
        items.len()
    ));
    out
}

fn model_json(m: &AlgebraModel) -> Value {
    let p = m.params();
    json!({
        "name": m.name(),
        "q": p.q.to_string(),
        "r": p.r.to_string(),
        "s": p.s.to_string(),
    })
}

fn param_spec(text: &str) -> qlie_core::Result<ParamSpec> {
    if text.trim() == "sym" {
        Ok(ParamSpec::Symbolic)
    } else {
        Ok(ParamSpec::Value(parse_rational(text)?))
    }
}

fn parse_point(text: &str) -> qlie_core::Result<Point> {
    let mut pt = Point::empty();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| usage(format!("`{part}` is not var=value")))?;
        let var =
            Var::from_name(k.trim()).ok_or_else(|| usage(format!("unknown variable `{k}`")))?;
        pt = pt.with(var, parse_rational(v)?);
    }
    Ok(pt)
}

struct Context {
    model: AlgebraModel,
    point: Option<Point>,
    bounds: Bounds,
    trace: bool,
}

impl Context {
    fn new(s: &Settings) -> qlie_core::Result<Self> {
        let (mut r, mut sv) = match s.model {
            ModelName::Uqrs => (ParamSpec::Symbolic, ParamSpec::Symbolic),
            ModelName::UqR0 => (ParamSpec::Symbolic, ParamSpec::zero()),
            ModelName::Uq0s => (ParamSpec::zero(), ParamSpec::Symbolic),
        };
        if let Some(t) = &s.r {
            r = param_spec(t)?;
        }
        if let Some(t) = &s.s {
            sv = param_spec(t)?;
        }
        let mut model = build_model(r, sv)?;
        let point = s.eval.as_deref().map(parse_point).transpose()?;
        if let Some(pt) = &point {
            model = model.substitute(pt)?;
        }
        let mut bounds = Bounds::default();
        if let Some(b) = &s.bounds {
            bounds.apply(b)?;
        }
        if let Some(k) = s.kmax {
            bounds.kmax = k;
        }
        Ok(Context {
            model,
            point,
            bounds,
            trace: s.trace,
        })
    }

    /// Parses an input over `A, B, C` and applies `--eval`.
    fn input(&self, text: &str) -> qlie_core::Result<NCPoly> {
        self.specialize(parse_poly(text, self.model.abc())?)
    }

    fn specialize(&self, p: NCPoly) -> qlie_core::Result<NCPoly> {
        match &self.point {
            Some(pt) => p.map_coeffs(|c| c.substitute(pt, qlie_core::algebras::GUARD_ORDER)),
            None => Ok(p),
        }
    }
}

fn dispatch(cmd: &Command, ctx: &Context) -> qlie_core::Result<Vec<Item>> {
    let m = &ctx.model;
    match cmd {
        Command::Normalize { expr } => {
            let p = ctx.input(expr)?;
            let mut trace = Vec::new();
            let nf = m.system().normal_form_with(
                &p,
                Strategy::Leftmost,
                ctx.trace.then_some(&mut trace),
            )?;
            let mut params = json!({ "input": p.to_string(), "normal_form": nf.to_string() });
            if ctx.trace {
                params["trace"] = json!(trace.iter().map(|t| t.to_string()).collect::<Vec<_>>());
            }
            Ok(vec![Item::new("normalize", params, true, nf.to_string())])
        }
        Command::Bracket { x, y } => {
            let (x, y) = (ctx.input(x)?, ctx.input(y)?);
            let nf = m.three_gen_normal_form(&x.bracket(&y)?)?;
            let params =
                json!({ "x": x.to_string(), "y": y.to_string(), "normal_form": nf.to_string() });
            Ok(vec![Item::new("bracket", params, true, nf.to_string())])
        }
        Command::IsLie { expr } => {
            let p = ctx.input(expr)?;
            let v = is_lie_polynomial(&p, m)?;
            let offending: Vec<String> = v
                .offending_words
                .iter()
                .map(|w| w.display(m.abc()).to_string())
                .collect();
            let params = json!({
                "input": p.to_string(),
                "normal_form": v.normal_form.to_string(),
                "verdict": v.verdict,
                "offending_words": offending,
            });
            let detail = if v.verdict {
                "Lie polynomial".to_string()
            } else {
                format!(
                    "not a Lie polynomial; offending words {}",
                    offending.join(", ")
                )
            };
            Ok(vec![Item::new("is-lie", params, true, detail)])
        }
        Command::Psi { expr } => {
            let p = m.params();
            if p.s.is_zero() {
                return Err(Error::ModelMismatch("psi needs a nonzero s".into()));
            }
            let source =
                AlgebraModel::new(ModelParams::new(p.q.clone(), p.s.clone(), RatFunc::zero()))?;
            let target =
                AlgebraModel::new(ModelParams::new(p.q.clone(), RatFunc::zero(), p.s.clone()))?;
            let psi = PsiMap::new(&source, &target)?;
            let x = ctx.input(expr)?;
            let img = psi.apply(&x)?;
            let params = json!({
                "source": source.name(),
                "target": target.name(),
                "input": x.to_string(),
                "image": img.to_string(),
            });
            Ok(vec![Item::new("psi", params, true, img.to_string())])
        }
        Command::Obstruction {
            maps,
            target_r,
            target_s,
            probes,
        } => {
            if maps.is_empty() {
                return Ok(suites::obstruction());
            }
            custom_obstruction(ctx, maps, target_r.as_deref(), target_s.as_deref(), probes)
        }
        Command::Verify { target, args } => verify(ctx, target, args),
    }
}

fn custom_obstruction(
    ctx: &Context,
    maps: &[String],
    target_r: Option<&str>,
    target_s: Option<&str>,
    probes: &[String],
) -> qlie_core::Result<Vec<Item>> {
    let m = &ctx.model;
    let ab = m.ab();
    let mut images = GeneratorMap::new(ab, ab);
    for spec in maps {
        let (letter, image) = spec
            .split_once('=')
            .ok_or_else(|| usage(format!("map `{spec}` is not LETTER=EXPR")))?;
        let mut chars = letter.trim().chars();
        let (Some(ch), None) = (chars.next(), chars.next()) else {
            return Err(usage(format!("map `{spec}` needs a single letter")));
        };
        images.set(ch, ctx.specialize(parse_poly(image, ab)?)?)?;
    }
    let target = {
        let r = target_r
            .map(param_spec)
            .transpose()?
            .unwrap_or(ParamSpec::Symbolic);
        let s = target_s
            .map(param_spec)
            .transpose()?
            .unwrap_or(ParamSpec::Symbolic);
        let t = build_model(r, s)?;
        match &ctx.point {
            Some(pt) => t.substitute(pt)?,
            None => t,
        }
    };
    let mut pairs = Vec::new();
    for p in probes {
        let (x, y) = p
            .split_once(';')
            .ok_or_else(|| usage(format!("probe `{p}` is not X;Y")))?;
        pairs.push((ctx.input(x)?, ctx.input(y)?));
    }
    let rep = homomorphism_obstruction(m, &images, &target, &pairs)?;
    let detail = format!("relation residual {}", rep.relation_residual);
    Ok(vec![Item::new(
        "obstruction",
        json!({ "report": rep }),
        true,
        detail,
    )])
}

fn verify(ctx: &Context, target: &str, args: &[String]) -> qlie_core::Result<Vec<Item>> {
    match target {
        "identity" => {
            let [lhs, rhs] = args else {
                return Err(usage("verify identity takes LHS and RHS"));
            };
            Ok(vec![suites::identity_check(
                &ctx.model,
                &ctx.input(lhs)?,
                &ctx.input(rhs)?,
            )])
        }
        _ if !args.is_empty() => Err(usage(format!("verify {target} takes no further arguments"))),
        "all" => Ok(Suite::ALL
            .iter()
            .flat_map(|&s| suites::run_suite(s, &ctx.model, &ctx.bounds))
            .collect()),
        name => {
            let suite: Suite = name.parse().map_err(usage)?;
            Ok(suites::run_suite(suite, &ctx.model, &ctx.bounds))
        }
    }
}
