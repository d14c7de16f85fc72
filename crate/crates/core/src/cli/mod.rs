//! Command-line front end: `airykit <command> [flags] [key=value …]`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or precondition
//! error, 3 numerical non-convergence (`figure` reports non-convergence
//! with 2, naming the failing node on stderr).

mod output;
mod params;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::airy_fn::{
    airy_derivative, airy_generalized_derivative, airy_generalized_two_var_derivative, watson_w, FunctionValue,
};
use crate::config::QuadratureConfig;
use crate::error::{Error, Result};
use crate::evolution::{
    airy_pde_solve, propagate, schrodinger_evolve_general, GridFunction, SchrodingerParams, SpectralPropagator,
};
use crate::hermite_poly::{hermite_eval, PolyIndex};
use crate::transforms::{expansion_coefficients, Integrand, TransformKind};

pub use output::{number, Format, Table};
pub use params::{apply_config_text, Params};
pub use verify::{Check, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NONCONVERGENCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "airykit", version, about = "Higher-order Hermite polynomials, Airy-type functions and transforms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format (default: csv; json for `expand`).
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Significant digits of emitted numbers.
    #[arg(long, default_value_t = 12, global = true, value_parser = clap::value_parser!(u8).range(4..=17))]
    pub precision: u8,
}

#[derive(Debug, Args)]
pub struct QuadArgs {
    /// key=value defaults file for the quadrature settings (overrides AIRYKIT_CONFIG).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,
    #[arg(long, global = true)]
    pub max_nodes: Option<usize>,
    #[arg(long, global = true)]
    pub rotation_angle: Option<f64>,
    #[arg(long, global = true)]
    pub truncation_radius: Option<f64>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct FunctionChoice {
    /// H_n^(m)(x, y); parameters m, n, x, y.
    #[arg(long)]
    pub hermite: bool,
    /// Ai(x) or its k-th derivative; parameters x, k.
    #[arg(long)]
    pub airy: bool,
    /// Ai(x, y) = (3y)^{-1/3} Ai(x/(3y)^{1/3}); parameters x, y, k.
    #[arg(long)]
    pub airy_two_var: bool,
    /// Ai^(Q)(x) for odd Q ≥ 3; parameters x, k.
    #[arg(long, value_name = "Q")]
    pub generalized: Option<u32>,
    /// Watson's W(x); parameter x.
    #[arg(long)]
    pub watson: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct TransformChoice {
    /// exp(y∂³), y > 0.
    #[arg(long)]
    pub airy: bool,
    /// exp(y∂²), y > 0.
    #[arg(long)]
    pub gauss_weierstrass: bool,
    /// exp(-|y|∂^{2P}).
    #[arg(long, value_name = "P")]
    pub even: Option<u32>,
    /// exp(-|y|∂^{2P+1}).
    #[arg(long, value_name = "P")]
    pub odd: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NamedInput {
    /// exp(-ξ²)
    Gaussian,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputChoice {
    /// The monomial ξ^N.
    #[arg(long, value_name = "N")]
    pub poly_degree: Option<usize>,
    /// Polynomial coefficients c0,c1,… in ascending order.
    #[arg(long, value_name = "C0,C1,...", value_delimiter = ',', allow_negative_numbers = true)]
    pub poly: Option<Vec<f64>>,
    #[arg(long, value_enum)]
    pub input: Option<NamedInput>,
}

impl InputChoice {
    fn integrand(&self) -> Integrand {
        if let Some(n) = self.poly_degree {
            Integrand::monomial(n)
        } else if let Some(c) = &self.poly {
            Integrand::polynomial(c.clone())
        } else {
            Integrand::gaussian()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Equation {
    /// exp(y∂^m) as a Fourier multiplier; parameters m, y.
    Spectral,
    /// ∂_y F = -∂³F by convolution with Ai(x, y); parameter y.
    AiryPde,
    /// i∂_τΨ = -∂^{2p}Ψ + bxΨ; parameters tau, b, p.
    Schrodinger,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    /// x, Ai(x), Ai^(7)(x) on [-10, 4].
    Fig1,
    /// x, Ai(x), W(x) on [-10, 4].
    Fig2,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one function at one point.
    Eval {
        #[command(flatten)]
        function: FunctionChoice,
        /// key=value parameters.
        params: Vec<String>,
    },
    /// Sweep a function over x = x0, x0+step, …, x1.
    Table {
        #[command(flatten)]
        function: FunctionChoice,
        /// key=value parameters, including x0, x1, step.
        params: Vec<String>,
    },
    /// Apply a transform to an input function at x.
    Transform {
        #[command(flatten)]
        kind: TransformChoice,
        #[command(flatten)]
        input: InputChoice,
        /// x=…, and y=… (signed) or yabs=….
        params: Vec<String>,
    },
    /// Evolve a grid function read from CSV.
    Evolve {
        /// Grid-function CSV (`# grid …` header, columns x,re,im).
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        equation: Equation,
        params: Vec<String>,
    },
    /// Coefficients a_0 … a_N of the expansion in H_n^(3)(x, -|y|).
    Expand {
        #[command(flatten)]
        input: InputChoice,
        #[arg(long)]
        yabs: f64,
        #[arg(long = "N", value_name = "N")]
        n_max: usize,
    },
    /// Run the verification suites.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Emit the data behind the two comparison figures.
    Figure {
        #[arg(value_enum)]
        name: Figure,
    },
}

/// Successful command output and its exit code.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, code: EXIT_OK }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonConvergence { .. } => EXIT_NONCONVERGENCE,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// to stdout/stderr. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let env_config = std::env::var_os("AIRYKIT_CONFIG").map(PathBuf::from);
    match execute(&cli, env_config) {
        Ok(out) => {
            let written = match &cli.output.out {
                Some(path) => std::fs::write(path, &out.text).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => std::io::stdout().write_all(out.text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(msg) = written {
                eprintln!("airykit: {msg}");
                return EXIT_USAGE;
            }
            out.code
        }
        Err((msg, code)) => {
            eprintln!("airykit: {msg}");
            code
        }
    }
}

/// Quadrature settings: defaults, then the config file, then flags.
pub fn resolve_config(quad: &QuadArgs, env_config: Option<PathBuf>) -> Result<QuadratureConfig> {
    let mut cfg = QuadratureConfig::default();
    if let Some(path) = quad.config.clone().or(env_config) {
        params::load_config_file(&mut cfg, &path)?;
    }
    if let Some(v) = quad.abs_tol {
        cfg.abs_tol = v;
    }
    if let Some(v) = quad.max_nodes {
        cfg.max_nodes = v;
    }
    if quad.rotation_angle.is_some() {
        cfg.rotation_angle = quad.rotation_angle;
    }
    if quad.truncation_radius.is_some() {
        cfg.truncation_radius = quad.truncation_radius;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn execute(cli: &Cli, env_config: Option<PathBuf>) -> std::result::Result<Outcome, (String, i32)> {
    let fail = |e: Error| {
        let code = exit_code(&e);
        (e.to_string(), code)
    };
    let cfg = resolve_config(&cli.quad, env_config).map_err(fail)?;
    let prec = cli.output.precision as usize;
    let format = cli.output.format;
    let fmt = format.unwrap_or(Format::Csv);
    match &cli.command {
        Command::Eval { function, params } => {
            let (p, f) = function_evaluator(function, params, false).map_err(fail)?;
            let x = p.f64("x").map_err(fail)?;
            let v = f(x, &cfg).map_err(fail)?;
            Ok(Outcome::ok(output::scalar(v, fmt, prec)))
        }
        Command::Table { function, params } => {
            let (p, f) = function_evaluator(function, params, true).map_err(fail)?;
            let xs = lattice(&p).map_err(fail)?;
            let values: Vec<f64> = xs
                .par_iter()
                .map(|&x| f(x, &cfg))
                .collect::<Result<_>>()
                .map_err(fail)?;
            let mut t = Table::new(&["x", "value"]);
            t.rows = xs.iter().zip(values).map(|(&x, v)| vec![x, v]).collect();
            Ok(Outcome::ok(t.render(fmt, prec)))
        }
        Command::Transform { kind, input, params } => {
            let v = transform(kind, input, params, &cfg).map_err(fail)?;
            Ok(Outcome::ok(output::scalar(v, fmt, prec)))
        }
        Command::Evolve {
            input,
            equation,
            params,
        } => {
            let text = std::fs::read_to_string(input)
                .map_err(|e| (format!("cannot read {}: {e}", input.display()), EXIT_USAGE))?;
            let g = GridFunction::from_csv(&text).map_err(fail)?;
            let out = evolve(&g, *equation, params, &cfg).map_err(fail)?;
            Ok(Outcome::ok(output::grid_function(&out, fmt, prec)))
        }
        Command::Expand { input, yabs, n_max } => {
            let a = expansion_coefficients(&input.integrand(), *yabs, *n_max, &cfg).map_err(fail)?;
            Ok(Outcome::ok(output::array(&a, format.unwrap_or(Format::Json), prec)))
        }
        Command::Verify { suite } => {
            let checks = verify::run(*suite, &cfg);
            for c in checks.iter().filter(|c| !c.passed) {
                eprintln!("FAILED {} / {}: {}", c.suite, c.name, c.inputs);
            }
            let code = if checks.iter().all(|c| c.passed) { EXIT_OK } else { EXIT_VERIFY };
            Ok(Outcome {
                text: verify::render(&checks),
                code,
            })
        }
        Command::Figure { name } => figure(*name, &cfg, fmt, prec),
    }
}

type Evaluator = Box<dyn Fn(f64, &QuadratureConfig) -> Result<f64> + Sync>;

fn real(v: Result<FunctionValue>) -> Result<f64> {
    v.map(|v| v.value)
}

fn function_evaluator(choice: &FunctionChoice, args: &[String], table: bool) -> Result<(Params, Evaluator)> {
    let with_lattice = |keys: &[&'static str]| -> Vec<&'static str> {
        let mut k = keys.to_vec();
        if table {
            k.retain(|&s| s != "x");
            k.extend(["x0", "x1", "step"]);
        }
        k
    };
    if choice.hermite {
        let p = Params::parse(args, &with_lattice(&["m", "n", "x", "y"]))?;
        let idx = PolyIndex::new(p.u32("m")?, p.u32("n")?)?;
        let y = p.f64("y")?;
        return Ok((p, Box::new(move |x, _| Ok(hermite_eval(idx, x, y)))));
    }
    if choice.airy {
        let p = Params::parse(args, &with_lattice(&["x", "k"]))?;
        let k = p.u32_or("k", 0)?;
        return Ok((p, Box::new(move |x, c| real(airy_derivative(x, k, c)))));
    }
    if choice.airy_two_var {
        let p = Params::parse(args, &with_lattice(&["x", "y", "k"]))?;
        let k = p.u32_or("k", 0)?;
        let y = p.f64("y")?;
        if !(y > 0.0) {
            return Err(Error::Domain(format!("Ai(x, y) needs y > 0, got {y}")));
        }
        return Ok((p, Box::new(move |x, c| real(airy_generalized_two_var_derivative(3, x, y, k, c)))));
    }
    if let Some(q) = choice.generalized {
        if q < 3 || q % 2 == 0 {
            return Err(Error::Domain(format!("generalized Airy order must be odd and at least 3, got {q}")));
        }
        let p = Params::parse(args, &with_lattice(&["x", "k"]))?;
        let k = p.u32_or("k", 0)?;
        return Ok((p, Box::new(move |x, c| real(airy_generalized_derivative(q, x, k, c)))));
    }
    let p = Params::parse(args, &with_lattice(&["x"]))?;
    Ok((p, Box::new(|x, c| real(watson_w(x, c)))))
}

fn lattice(p: &Params) -> Result<Vec<f64>> {
    let (x0, x1, step) = (p.f64("x0")?, p.f64("x1")?, p.f64("step")?);
    if !(step > 0.0) || x1 < x0 {
        return Err(Error::Domain(format!("lattice needs x0 ≤ x1 and step > 0, got {x0}, {x1}, {step}")));
    }
    let n = ((x1 - x0) / step + 1e-9).floor() as usize;
    if n > 1_000_000 {
        return Err(Error::Domain(format!("lattice of {} nodes is too large", n + 1)));
    }
    Ok((0..=n).map(|i| x0 + i as f64 * step).collect())
}

fn transform(kind: &TransformChoice, input: &InputChoice, args: &[String], cfg: &QuadratureConfig) -> Result<f64> {
    let p = Params::parse(args, &["x", "y", "yabs"])?;
    let x = p.f64("x")?;
    let needs_positive = kind.airy || kind.gauss_weierstrass;
    let kind = if needs_positive {
        if p.has("yabs") {
            return Err(Error::Domain("this transform takes y=<positive>, not yabs".into()));
        }
        let y = p.f64("y")?;
        if kind.airy {
            TransformKind::airy(y)?
        } else {
            TransformKind::gauss_weierstrass(y)?
        }
    } else {
        let yabs = match (p.f64_opt("y")?, p.f64_opt("yabs")?) {
            (Some(y), None) if y < 0.0 => -y,
            (Some(y), None) => {
                return Err(Error::Domain(format!("even/odd-order transforms realize exp(y∂^m) for y < 0, got y = {y}")))
            }
            (None, Some(a)) => a,
            (None, None) => return Err(Error::Parse("missing parameter y=<negative> or yabs=<positive>".into())),
            (Some(_), Some(_)) => return Err(Error::Parse("give y or yabs, not both".into())),
        };
        match (kind.even, kind.odd) {
            (Some(pp), _) => TransformKind::even_hermite(pp, yabs)?,
            (_, Some(pp)) => TransformKind::odd_hermite(pp, yabs)?,
            _ => unreachable!("clap group requires one transform"),
        }
    };
    kind.apply(&input.integrand(), x, cfg)
}

fn evolve(g: &GridFunction, eq: Equation, args: &[String], cfg: &QuadratureConfig) -> Result<GridFunction> {
    match eq {
        Equation::Spectral => {
            let p = Params::parse(args, &["m", "y"])?;
            propagate(&SpectralPropagator::new(p.u32("m")?, p.f64("y")?)?, g)
        }
        Equation::AiryPde => {
            let p = Params::parse(args, &["y"])?;
            airy_pde_solve(g, p.f64("y")?, cfg)
        }
        Equation::Schrodinger => {
            let p = Params::parse(args, &["tau", "b", "p"])?;
            let params = SchrodingerParams::scaled(p.f64("tau")?, p.f64("b")?)?;
            g.check_support()?;
            schrodinger_evolve_general(g, &params, p.u32_or("p", 1)?)
        }
    }
}

/// Lattice of the figures: x = -10 + 0.05 i, i = 0 … 280.
pub fn figure_lattice() -> Vec<f64> {
    (0..=280).map(|i| (i as f64 - 200.0) / 20.0).collect()
}

/// Tolerated imaginary residue of the real-valued figure columns.
const FIGURE_IMAG_TOL: f64 = 1e-8;

fn figure(name: Figure, cfg: &QuadratureConfig, fmt: Format, prec: usize) -> std::result::Result<Outcome, (String, i32)> {
    let xs = figure_lattice();
    let second = |x: f64| -> Result<FunctionValue> {
        match name {
            Figure::Fig1 => airy_generalized_derivative(7, x, 0, cfg),
            Figure::Fig2 => watson_w(x, cfg),
        }
    };
    let rows: Vec<std::result::Result<Vec<f64>, String>> = xs
        .par_iter()
        .map(|&x| {
            let a = airy_derivative(x, 0, cfg).map_err(|e| format!("Ai at x = {x}: {e}"))?;
            let b = second(x).map_err(|e| format!("second column at x = {x}: {e}"))?;
            for v in [&a, &b] {
                if v.imag.abs() > FIGURE_IMAG_TOL {
                    return Err(format!("imaginary residue {:e} at x = {x}", v.imag));
                }
            }
            Ok(vec![x, a.value, b.value])
        })
        .collect();
    let mut t = Table::new(match name {
        Figure::Fig1 => &["x", "Ai", "Ai7"],
        Figure::Fig2 => &["x", "Ai", "W"],
    });
    let mut failures = Vec::new();
    for r in rows {
        match r {
            Ok(row) => t.rows.push(row),
            Err(msg) => failures.push(msg),
        }
    }
    if !failures.is_empty() {
        return Err((failures.join("\n"), EXIT_USAGE));
    }
    Ok(Outcome::ok(t.render(fmt, prec)))
}
