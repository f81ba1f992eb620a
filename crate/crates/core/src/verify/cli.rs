//! Command-line front end.
//!
//! Exit codes: `0` success, `1` a check failed, `2` usage error, `3` precision exhausted.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::float::Constant;
use rug::{Float, Rational};
use serde_json::json;

use super::{run_suite_in, Registry, SuiteOptions, SuiteReport};
use crate::error::{Error, Result};
use crate::logsine::{gen_ls_pi_extract, gen_ls_pi_table, ls_numeric, ls_pi3_table, ls_pi_recursive, LogSineSpec};
use crate::mahler::{
    mu2_1pxy, mu2_1pxyz_exact, mu_k_1px, mu_k_1pxy_star, mu_k_1pxyz_star, mu_k_1pxyz_star_closed, mu_mixed_closed,
    mu_oracle, walk_derivative, walk_moment, MeasureSpec,
};
use crate::mpcore::{fmt_float, make_context, Complex, PrecisionContext};
use crate::specfun::{clausen_glaisher, multiple_polylog, ClKind, Composition};
use crate::symconst::{cexpr_eval, ConstExpr};

#[derive(Parser, Debug)]
#[command(
    name = "lsmahler",
    version,
    about = "Log-sine integrals, polylogarithms and Mahler measures to arbitrary precision"
)]
struct Cli {
    /// Target number of correct decimal digits.
    #[arg(long, global = true, default_value_t = 20)]
    digits: u32,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Identities evaluated concurrently by `verify`.
    #[arg(long, global = true, default_value_t = 1)]
    parallel: usize,
    /// Also run the conjecture entries.
    #[arg(long, global = true)]
    include_conjectures: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a single quantity.
    #[command(subcommand)]
    Eval(EvalCommand),
    /// Check registered identities.
    Verify(VerifyArgs),
    /// List registered identities.
    List(ListArgs),
}

#[derive(Subcommand, Debug)]
enum EvalCommand {
    /// `Ls^{(k)}_n(σ)`.
    Ls {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        k: u32,
        /// Angle: `pi`, `pi/3`, `2pi/3`, or a rational multiple of π such as `1/3`.
        #[arg(long)]
        sigma: String,
    },
    /// `Cl_a(θ)` or `Gl_a(θ)`.
    Clausen {
        /// Comma-separated composition, e.g. `4,1`.
        #[arg(long, value_delimiter = ',')]
        a: Vec<u32>,
        /// Angle in the same syntax as `--sigma`.
        #[arg(long)]
        theta: String,
        #[arg(long)]
        glaisher: bool,
    },
    /// `Li_a(z)`.
    Polylog {
        #[arg(long, value_delimiter = ',')]
        a: Vec<u32>,
        /// Real part of z, a rational such as `-1` or `1/2`, or a decimal.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Imaginary part of z.
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        z_im: String,
    },
    /// A Mahler measure from its closed form or integral representation.
    Mahler(MahlerArgs),
    /// Moments `W_n(s)` of the planar random walk, or derivatives at 0.
    Walk {
        /// Number of unit steps.
        #[arg(long)]
        n: u32,
        /// Moment order, a rational or a decimal.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "derivative")]
        s: Option<String>,
        /// Order k of the derivative at s = 0, which equals `μ_k` of `1 + x_1 + … + x_{n-1}`.
        #[arg(long)]
        derivative: Option<u32>,
    },
}

#[derive(Args, Debug)]
struct MahlerArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Power of the logarithm, or the number of `1+x` factors for `mixed`.
    #[arg(long)]
    k: Option<u32>,
    /// Also evaluate the torus-integral oracle.
    #[arg(long)]
    oracle: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    #[value(name = "mu-k-1px")]
    MuK1px,
    #[value(name = "mu-k-1pxy-star")]
    MuK1pxyStar,
    #[value(name = "mu-k-1pxyz-star")]
    MuK1pxyzStar,
    #[value(name = "mixed")]
    Mixed,
    #[value(name = "mu2-1pxy")]
    Mu2_1pxy,
    #[value(name = "mu2-1pxyz")]
    Mu2_1pxyz,
    #[value(name = "mu-1pxy")]
    Mu1pxy,
    #[value(name = "mu-1pxyz")]
    Mu1pxyz,
    #[value(name = "five-term")]
    FiveTerm,
    #[value(name = "six-term")]
    SixTerm,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// `all`, a tag such as `section-2`, or an identity id.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Run a single identity.
    #[arg(long, conflicts_with = "suite")]
    id: Option<String>,
}

#[derive(Args, Debug)]
struct ListArgs {
    #[arg(long, default_value = "all")]
    filter: String,
}

/// Parses `pi`, `2pi/3`, `2*pi/3`, `pi/3` or a bare rational `r` (meaning `rπ`) into the multiple of π.
pub fn parse_angle(s: &str) -> Result<Rational> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    let bad = || Error::Parse(format!("cannot read angle `{s}`"));
    let q = |x: &str| Rational::parse(x).map(Rational::from).map_err(|_| bad());
    if let Some(i) = t.find("pi") {
        let (num, rest) = (&t[..i], &t[i + 2..]);
        let num = num.trim_end_matches('*');
        let c = match num {
            "" => Rational::from(1),
            "-" => Rational::from(-1),
            _ => q(num)?,
        };
        let d = match rest {
            "" => Rational::from(1),
            _ => q(rest.strip_prefix('/').ok_or_else(bad)?)?,
        };
        if d == 0 {
            return Err(bad());
        }
        Ok(c / d)
    } else {
        q(&t)
    }
}

/// A rational such as `-1/2` or a decimal such as `0.25`.
fn rational_float(s: &str, prec: u32) -> Result<Float> {
    let t = s.trim();
    if let Ok(r) = Rational::parse(t) {
        return Ok(Float::with_val(prec, Rational::from(r)));
    }
    Float::parse(t).map(|v| Float::with_val(prec, v)).map_err(|_| Error::Parse(format!("`{s}` is not a number")))
}

struct Evaluated {
    closed: Option<ConstExpr>,
    value: Float,
    oracle: Option<(Float, Float)>,
    imag: Option<Float>,
    /// Estimated error of `value` when it is known to fall short of the target.
    error: Option<Float>,
}

fn from_closed(e: ConstExpr, ctx: &PrecisionContext) -> Result<Evaluated> {
    let value = cexpr_eval(&e, ctx)?;
    Ok(Evaluated { closed: Some(e), value, oracle: None, imag: None, error: None })
}

fn eval_ls(n: u32, k: u32, sigma: &str, ctx: &PrecisionContext) -> Result<Evaluated> {
    let s = parse_angle(sigma)?;
    let spec = LogSineSpec::new(n, k, s.clone())?;
    let value = ls_numeric(&spec, ctx)?;
    let closed = if s == 1 && k == 0 {
        Some(ls_pi_recursive(n)?)
    } else if s == 1 {
        match gen_ls_pi_table(n, k) {
            Ok(e) => Some(e),
            Err(_) => gen_ls_pi_extract(n, k, ctx).ok().map(|x| x.exact),
        }
    } else if s == Rational::from((1, 3)) && k == 0 {
        ls_pi3_table(n).ok()
    } else {
        None
    };
    Ok(Evaluated { closed, value, oracle: None, imag: None, error: None })
}

fn k_or(k: Option<u32>, default: u32) -> u32 {
    k.unwrap_or(default)
}

fn eval_mahler(a: &MahlerArgs, ctx: &PrecisionContext) -> Result<Evaluated> {
    let k = a.k;
    let (mut out, spec) = match a.family {
        Family::MuK1px => (from_closed(mu_k_1px(k_or(k, 1))?, ctx)?, MeasureSpec::MuK1px(k_or(k, 1))),
        Family::MuK1pxyStar => (from_closed(mu_k_1pxy_star(k_or(k, 1))?, ctx)?, MeasureSpec::MuK1pxyStar(k_or(k, 1))),
        Family::MuK1pxyzStar => {
            let k = k_or(k, 1);
            let e = match mu_k_1pxyz_star_closed(k) {
                Ok(e) => from_closed(e, ctx)?,
                Err(_) => {
                    Evaluated { closed: None, value: mu_k_1pxyz_star(k, ctx)?, oracle: None, imag: None, error: None }
                }
            };
            (e, MeasureSpec::MuK1pxyzStar(k))
        }
        Family::Mixed => {
            let k = k_or(k, 0);
            (from_closed(mu_mixed_closed(k)?, ctx)?, MeasureSpec::MuMixed1x1xyz(k))
        }
        Family::Mu2_1pxy => {
            let v = mu2_1pxy(ctx)?;
            (Evaluated { closed: None, value: v, oracle: None, imag: None, error: None }, MeasureSpec::Mu2_1pxy)
        }
        Family::Mu2_1pxyz => (from_closed(mu2_1pxyz_exact(), ctx)?, MeasureSpec::Mu2_1pxyz),
        Family::Mu1pxy => (from_closed(crate::symconst::parse_expr("Pi^-1*ClPi3(2)")?, ctx)?, MeasureSpec::Mu1pxy),
        Family::Mu1pxyz => (from_closed(crate::symconst::parse_expr("7/2*Zeta(3)*Pi^-2")?, ctx)?, MeasureSpec::Mu1pxyz),
        Family::FiveTerm | Family::SixTerm => {
            let spec = if a.family == Family::FiveTerm { MeasureSpec::Mu5Term } else { MeasureSpec::Mu6Term };
            let r = mu_oracle(&spec, ctx)?;
            let e = Evaluated {
                closed: None,
                value: r.value.clone(),
                oracle: Some((r.value, r.error)),
                imag: None,
                error: None,
            };
            return Ok(e);
        }
    };
    if a.oracle {
        let r = mu_oracle(&spec, ctx)?;
        out.oracle = Some((r.value, r.error));
    }
    Ok(out)
}

fn eval(cmd: &EvalCommand, ctx: &PrecisionContext) -> Result<Evaluated> {
    let p = ctx.prec();
    match cmd {
        EvalCommand::Ls { n, k, sigma } => eval_ls(*n, *k, sigma, ctx),
        EvalCommand::Clausen { a, theta, glaisher } => {
            let t = Float::with_val(p, Constant::Pi) * parse_angle(theta)?;
            let kind = if *glaisher { ClKind::Gl } else { ClKind::Cl };
            let value = clausen_glaisher(kind, &Composition::new(a.clone())?, &t, ctx)?;
            Ok(Evaluated { closed: None, value, oracle: None, imag: None, error: None })
        }
        EvalCommand::Polylog { a, z, z_im } => {
            let z = Complex::new(rational_float(z, p)?, rational_float(z_im, p)?);
            let v = multiple_polylog(&Composition::new(a.clone())?, &z, ctx)?;
            Ok(Evaluated { closed: None, value: v.re, oracle: None, imag: Some(v.im), error: None })
        }
        EvalCommand::Mahler(a) => eval_mahler(a, ctx),
        EvalCommand::Walk { n, s, derivative } => {
            let (value, error) = match (s, derivative) {
                (Some(s), None) => (walk_moment(*n, &rational_float(s, p)?, ctx)?, None),
                (None, Some(k)) => {
                    let v = walk_derivative(*n, *k, ctx)?;
                    let finer = walk_derivative(*n, *k, &ctx.with_target(ctx.target_digits * 3 / 2 + 1))?;
                    let err = Float::with_val(p, &v - &finer).abs();
                    (v, Some(err))
                }
                _ => return Err(Error::invalid("give exactly one of --s or --derivative")),
            };
            Ok(Evaluated { closed: None, value, oracle: None, imag: None, error })
        }
    }
}

fn print_eval(out: &mut dyn Write, e: &Evaluated, digits: u32, as_json: bool) -> std::io::Result<()> {
    let d = digits as usize;
    let sci = |x: &Float| x.to_string_radix(10, Some(6));
    if as_json {
        let mut v = json!({ "value": fmt_float(&e.value, d), "digits": digits });
        if let Some(c) = &e.closed {
            v["closed_form"] = json!(c.to_string());
        }
        if let Some(i) = &e.imag {
            v["imag"] = json!(fmt_float(i, d));
        }
        if let Some(err) = &e.error {
            v["error"] = json!(sci(err));
        }
        if let Some((o, err)) = &e.oracle {
            v["oracle"] = json!(fmt_float(o, d));
            v["oracle_error"] = json!(sci(err));
        }
        writeln!(out, "{v}")
    } else {
        if let Some(c) = &e.closed {
            writeln!(out, "closed form: {c}")?;
        }
        writeln!(out, "value:       {}", fmt_float(&e.value, d))?;
        if let Some(i) = &e.imag {
            writeln!(out, "imag:        {}", fmt_float(i, d))?;
        }
        if let Some(err) = &e.error {
            writeln!(out, "error:       {}", sci(err))?;
        }
        if let Some((o, err)) = &e.oracle {
            writeln!(out, "oracle:      {} (error estimate {})", fmt_float(o, d), sci(err))?;
        }
        Ok(())
    }
}

fn print_suite(out: &mut dyn Write, s: &SuiteReport, as_json: bool) -> std::io::Result<()> {
    if as_json {
        return writeln!(out, "{}", serde_json::to_string_pretty(s).expect("reports serialize"));
    }
    for r in &s.reports {
        let status = serde_json::to_value(r.status).expect("status serializes");
        let status = status.as_str().unwrap_or("?").to_string();
        let mut line = format!("{status:<19} {:<34} |diff| = {:<14} {:>8.2}s", r.id, r.abs_diff, r.elapsed_seconds);
        if let Some(m) = &r.message {
            line.push_str(&format!("  ({m})"));
        }
        writeln!(out, "{line}")?;
    }
    let m = &s.summary;
    writeln!(
        out,
        "{} checks: {} passed, {} failed ({} verified, {} refuted, {} mismatch, {} precision exhausted, {} error)",
        m.total, m.passed, m.failed, m.verified, m.refuted, m.mismatch, m.precision_exhausted, m.error
    )
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::PrecisionExhausted { .. } => 3,
        Error::InvalidArgument(_) | Error::Parse(_) | Error::UnknownIdentity(_) | Error::Unsupported(_) => 2,
        _ => 1,
    }
}

/// Treats a closed reader (`lsmahler list | head`) as end of output.
struct ClosedPipeOk<'a>(&'a mut dyn Write);

impl Write for ClosedPipeOk<'_> {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        match self.0.write(buf) {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(buf.len()),
            r => r,
        }
    }

    fn flush(&mut self) -> std::io::Result<()> {
        match self.0.flush() {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            r => r,
        }
    }
}

/// Runs the command line `argv` (program name first), writing results to `out`
/// and diagnostics to `err`; returns the exit code.
pub fn cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Cli::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match run(&args, &mut ClosedPipeOk(out)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            error_code(&e)
        }
    }
}

fn run(args: &Cli, out: &mut dyn Write) -> Result<i32> {
    let io = |e: std::io::Error| Error::invalid(format!("write failed: {e}"));
    if args.parallel == 0 {
        return Err(Error::invalid("--parallel must be positive"));
    }
    let ctx = make_context(args.digits)?;
    match &args.command {
        Command::Eval(cmd) => {
            let e = eval(cmd, &ctx)?;
            print_eval(out, &e, args.digits, args.json).map_err(io)?;
            Ok(0)
        }
        Command::Verify(v) => {
            let registry = Registry::builtin()?;
            let filter = match &v.id {
                Some(id) => {
                    registry.get(id)?;
                    id.as_str()
                }
                None => v.suite.as_str(),
            };
            let opts = SuiteOptions { parallelism: args.parallel, include_conjectures: args.include_conjectures };
            let suite = run_suite_in(&registry, filter, &ctx, &opts)?;
            if suite.summary.total == 0 {
                return Err(Error::invalid(format!("no identity matches `{filter}`")));
            }
            print_suite(out, &suite, args.json).map_err(io)?;
            Ok(suite.exit_code())
        }
        Command::List(l) => {
            let registry = Registry::builtin()?;
            let rows: Vec<_> = registry.identities.iter().filter(|i| i.matches(&l.filter)).collect();
            if args.json {
                let v: Vec<_> = rows
                    .iter()
                    .map(|i| json!({ "id": i.id, "kind": i.kind, "anchor": i.anchor, "tags": i.tags }))
                    .collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("rows serialize")).map_err(io)?;
            } else {
                for i in rows {
                    let kind = serde_json::to_value(i.kind).expect("kind serializes");
                    writeln!(out, "{:<34} {:<17} {}", i.id, kind.as_str().unwrap_or("?"), i.anchor).map_err(io)?;
                }
            }
            Ok(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> (i32, String, String) {
        let mut o = Vec::new();
        let mut e = Vec::new();
        let argv = std::iter::once("lsmahler").chain(args.iter().copied());
        let c = cli(argv, &mut o, &mut e);
        (c, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn angles() {
        assert_eq!(parse_angle("pi").unwrap(), 1);
        assert_eq!(parse_angle("2pi/3").unwrap(), Rational::from((2, 3)));
        assert_eq!(parse_angle("2*pi/3").unwrap(), Rational::from((2, 3)));
        assert_eq!(parse_angle("Pi/3").unwrap(), Rational::from((1, 3)));
        assert_eq!(parse_angle("1/3").unwrap(), Rational::from((1, 3)));
        assert!(parse_angle("pi/0").is_err());
        assert!(parse_angle("x").is_err());
    }

    #[test]
    fn eval_ls_prints_closed_form() {
        let (c, o, _) = run_cli(&["eval", "ls", "--n", "5", "--k", "1", "--sigma", "pi", "--digits", "30"]);
        assert_eq!(c, 0);
        assert!(
            o.contains("closed form: 3/4*Pi^2*Zeta(3) + 93/32*Zeta(5) - 2*Lambda(5)")
                && o.contains("-4.9407208177701738871395632"),
            "{o}"
        );
        let (c, o, _) = run_cli(&["--json", "eval", "ls", "--n", "4", "--sigma", "pi"]);
        assert_eq!(c, 0);
        let v: serde_json::Value = serde_json::from_str(&o).unwrap();
        assert!(v["value"].as_str().unwrap().starts_with("5.6645597042446183"), "{o}");
    }

    #[test]
    fn eval_mahler_star() {
        let (c, o, _) = run_cli(&["eval", "mahler", "--family", "mu-k-1pxy-star", "--k", "4", "--digits", "25"]);
        assert_eq!(c, 0, "{o}");
        assert!(o.contains("6*Pi^-1*GlPi3(4,1)") && o.contains("1/4860*Pi^4"), "{o}");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_cli(&["frobnicate"]).0, 2);
        assert_eq!(run_cli(&["eval", "ls", "--n", "0", "--sigma", "pi"]).0, 2);
        assert_eq!(run_cli(&["verify", "--id", "nope"]).0, 2);
        assert_eq!(run_cli(&["--parallel", "0", "verify"]).0, 2);
        assert_eq!(run_cli(&["--help"]).0, 0);
        let (c, o, _) = run_cli(&["verify", "--id", "mu2-1pxy-disproof"]);
        assert_eq!(c, 0, "{o}");
        assert!(o.starts_with("refuted"), "{o}");
        let (c, o, _) = run_cli(&["list"]);
        assert_eq!(c, 0);
        assert!(o.contains("parseval-cl2"));
    }
}
