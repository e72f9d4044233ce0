//! Command-line interface: `rel`, `shape`, `construct`, `plot`, `verify`,
//! and `expand` over expression strings or edge-list files.

use crate::construct::{construct_k_intervals, ConstructConfig, SearchPolicy};
use crate::error::{Error, Result};
use crate::expr::GraphExpr;
use crate::graph_io::{edge_list_string, graph6_string, read_edge_list};
use crate::mc::mc_estimate;
use crate::reliability::{rel_algebra_with_cap, ReliabilityPolynomial};
use crate::shape::{analyze, IntervalEnd, ShapeReport};
use crate::sturm::IsolatingInterval;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "noderel",
    version,
    about = "Exact node-reliability polynomials: compute, analyze, construct, cross-check"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Root-isolation precision: rational (1/1000000), decimal, or scientific (1e-6)
    #[arg(long, global = true, default_value = "1e-6")]
    precision: String,

    /// Cap on graph order for exact 2^n subset enumeration
    #[arg(long, global = true, default_value_t = crate::reliability::DEFAULT_ENUM_CAP)]
    enum_cap: usize,

    /// Cap on the order of explicitly realized graphs
    #[arg(long, global = true, default_value_t = crate::expr::DEFAULT_REALIZE_CAP)]
    realize_cap: u64,

    /// Seed for Monte-Carlo estimation
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Expression text, e.g. "P5 | sub 3 | addIso | sub 4 | addUniv"
    #[arg(long)]
    dsl: Option<String>,

    /// Edge-list file: first line `n m`, then `u v` per edge
    #[arg(long)]
    file: Option<PathBuf>,
}

impl InputArgs {
    fn resolve(&self) -> Result<GraphExpr> {
        match (&self.dsl, &self.file) {
            (Some(text), None) => GraphExpr::parse(text),
            (None, Some(path)) => Ok(GraphExpr::from_named_graph(
                path.display().to_string(),
                read_edge_list(path)?,
            )),
            _ => unreachable!("clap enforces exactly one input"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the exact reliability polynomial
    Rel {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Certified shape report: extrema, decrease intervals, inflections
    Shape {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Construct a graph whose reliability has at least k maximal intervals
    /// of decrease, writing a certificate bundle
    Construct {
        /// Target number of maximal intervals of decrease
        #[arg(short, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,

        /// Directory for the certificate bundle
        #[arg(long, default_value = "certificate")]
        out: PathBuf,

        /// Clique-size search: linear scan bound
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..))]
        soft_cap: u32,

        /// Clique-size search: doubling bound
        #[arg(long, default_value_t = 4096, value_parser = clap::value_parser!(u32).range(1..))]
        hard_cap: u32,
    },
    /// Sample the curve as CSV rows `p,rel`
    Plot {
        #[command(flatten)]
        input: InputArgs,

        /// Number of evenly spaced sample points in [0, 1]
        #[arg(short = 'n', long, default_value_t = 101, value_parser = clap::value_parser!(u64).range(2..))]
        samples: u64,

        /// Output file (stdout when omitted)
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Cross-check the exact polynomial against Monte-Carlo estimation
    Verify {
        #[command(flatten)]
        input: InputArgs,

        /// Probability to check; repeatable
        #[arg(short)]
        p: Vec<String>,

        /// Trials per probability
        #[arg(short, long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
    /// Realize an expression as an explicit graph
    Expand {
        #[command(flatten)]
        input: InputArgs,

        /// Emit graph6 instead of an edge list
        #[arg(long)]
        g6: bool,

        /// Output file (stdout when omitted)
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

/// Parses "a/b", plain decimals, and scientific notation into an exact
/// rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = |t: &str| Error::Domain(format!("cannot parse {t:?} as a rational number"));
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad(text))?;
        let d: BigInt = den.trim().parse().map_err(|_| bad(text))?;
        if d.is_zero() {
            return Err(bad(text));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match text.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e.parse().map_err(|_| bad(text))?;
            (m, exp)
        }
        None => (text, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad(text));
    }
    let digits = format!(
        "{}{frac_part}",
        if int_part.is_empty() { "0" } else { int_part }
    );
    let n: BigInt = digits.parse().map_err(|_| bad(text))?;
    let scale = frac_part.len() as i64 - exponent;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        BigRational::new(n, ten.pow(scale as u32))
    } else {
        BigRational::from_integer(n * ten.pow((-scale) as u32))
    })
}

/// Renders a nonnegative rational as a plain decimal with at most `sig`
/// significant digits; exact when the expansion terminates within them.
pub fn decimal_string(x: &BigRational, sig: usize) -> String {
    assert!(sig >= 1);
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let v = x.abs();
    let (num, den) = (v.numer().clone(), v.denom().clone());

    // terminating expansions: den = 2^a 5^b
    let mut rest = den.clone();
    let mut a = 0u32;
    let mut b = 0u32;
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while (&rest % &two).is_zero() {
        rest /= &two;
        a += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        b += 1;
    }
    if rest.is_one() {
        let k = a.max(b);
        let scaled = &num * BigInt::from(10).pow(k) / &den;
        let s = render_fixed(&scaled, k as usize);
        if significant_digits(&s) <= sig {
            return if neg { format!("-{s}") } else { s };
        }
    }

    // round to sig significant digits
    let ten = BigInt::from(10);
    let mut e: i64;
    if num >= den {
        let q = &num / &den;
        e = q.to_string().len() as i64 - 1;
    } else {
        e = -1;
        let mut scaled = &num * &ten;
        while scaled < den {
            scaled *= &ten;
            e -= 1;
        }
    }
    let shift = sig as i64 - 1 - e;
    let (scaled_num, scaled_den) = if shift >= 0 {
        (&num * ten.pow(shift as u32), den.clone())
    } else {
        (num.clone(), &den * ten.pow((-shift) as u32))
    };
    // round half away from zero
    let mut n = (scaled_num * 2u32 + &scaled_den) / (scaled_den * 2u32);
    if n == ten.pow(sig as u32) {
        n /= &ten;
        e += 1;
    }
    let digits = n.to_string();
    debug_assert_eq!(digits.len(), sig);
    let s = if e >= 0 {
        let ip = e as usize + 1;
        if ip >= sig {
            format!("{digits}{}", "0".repeat(ip - sig))
        } else {
            let frac = digits[ip..].trim_end_matches('0');
            if frac.is_empty() {
                digits[..ip].to_string()
            } else {
                format!("{}.{}", &digits[..ip], frac)
            }
        }
    } else {
        let frac = format!("{}{digits}", "0".repeat((-e - 1) as usize));
        format!("0.{}", frac.trim_end_matches('0'))
    };
    if neg {
        format!("-{s}")
    } else {
        s
    }
}

fn render_fixed(scaled: &BigInt, k: usize) -> String {
    let s = scaled.to_string();
    if k == 0 {
        return s;
    }
    let s = if s.len() <= k {
        format!("{}{s}", "0".repeat(k - s.len() + 1))
    } else {
        s
    };
    let split = s.len() - k;
    let frac = s[split..].trim_end_matches('0');
    if frac.is_empty() {
        s[..split].to_string()
    } else {
        format!("{}.{}", &s[..split], frac)
    }
}

fn significant_digits(s: &str) -> usize {
    s.chars()
        .skip_while(|&c| c == '0' || c == '.')
        .filter(|c| c.is_ascii_digit())
        .count()
}

fn interval_pretty(i: &IsolatingInterval) -> String {
    format!(
        "({}, {})",
        decimal_string(i.lo(), 8),
        decimal_string(i.hi(), 8)
    )
}

fn end_pretty(e: &IntervalEnd) -> String {
    match e {
        IntervalEnd::Boundary(b) => decimal_string(b, 8),
        IntervalEnd::Enclosure(i) => interval_pretty(i),
    }
}

fn shape_pretty(report: &ShapeReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("extrema: {}\n", report.num_extrema()));
    for e in &report.extrema {
        out.push_str(&format!(
            "  {} in {}\n",
            e.kind.as_str(),
            interval_pretty(&e.interval)
        ));
    }
    out.push_str(&format!(
        "decrease intervals: {}\n",
        report.num_decrease_intervals()
    ));
    for d in &report.decrease_intervals {
        out.push_str(&format!(
            "  from {} to {}\n",
            end_pretty(&d.from),
            end_pretty(&d.to)
        ));
    }
    out.push_str(&format!("inflections: {}\n", report.num_inflections()));
    for i in &report.inflections {
        out.push_str(&format!("  {}\n", interval_pretty(i)));
    }
    out
}

struct Ctx {
    precision: BigRational,
    enum_cap: usize,
    realize_cap: u64,
    seed: u64,
    format: Format,
}

impl Ctx {
    fn rel_of(&self, input: &InputArgs) -> Result<ReliabilityPolynomial> {
        rel_algebra_with_cap(&input.resolve()?, self.enum_cap)
    }
}

fn write_out(path: &Option<PathBuf>, content: &str) -> Result<()> {
    match path {
        Some(p) => {
            std::fs::write(p, content)?;
            Ok(())
        }
        None => {
            print!("{content}");
            std::io::stdout().flush()?;
            Ok(())
        }
    }
}

fn cmd_rel(ctx: &Ctx, input: &InputArgs) -> Result<i32> {
    let rel = ctx.rel_of(input)?;
    match ctx.format {
        Format::Pretty => println!("{}", rel.poly().to_pretty_string("p")),
        Format::Json => println!("{}", serde_json::to_string(&rel.to_json()).unwrap()),
        Format::Csv => {
            return Err(Error::Domain(
                "csv output is not defined for `rel`; use --format json or pretty".into(),
            ))
        }
    }
    Ok(0)
}

fn cmd_shape(ctx: &Ctx, input: &InputArgs) -> Result<i32> {
    let rel = ctx.rel_of(input)?;
    let report = analyze(&rel, &ctx.precision)?;
    match ctx.format {
        Format::Pretty => print!("{}", shape_pretty(&report)),
        Format::Json => println!("{}", serde_json::to_string(&report.to_json()).unwrap()),
        Format::Csv => {
            return Err(Error::Domain(
                "csv output is not defined for `shape`; use --format json or pretty".into(),
            ))
        }
    }
    Ok(0)
}

fn cmd_construct(ctx: &Ctx, k: u32, out: &PathBuf, soft_cap: u32, hard_cap: u32) -> Result<i32> {
    let config = ConstructConfig {
        policy: SearchPolicy { soft_cap, hard_cap },
        precision: ctx.precision.clone(),
        enum_cap: ctx.enum_cap,
    };
    let result = construct_k_intervals(k, &config);
    let (expr, trace) = match result {
        Ok(v) => v,
        Err(Error::SearchExhausted {
            op,
            step,
            max_l,
            trace,
        }) => {
            // leave the partial trace behind for diagnosis
            std::fs::create_dir_all(out)?;
            std::fs::write(
                out.join("trace.json"),
                serde_json::to_string_pretty(&trace.to_json()).unwrap(),
            )?;
            eprintln!(
                "search exhausted at step {step} ({op}), tried l up to {max_l}; partial trace in {}",
                out.join("trace.json").display()
            );
            return Ok(1);
        }
        Err(e) => return Err(e),
    };

    let rel = rel_algebra_with_cap(&expr, ctx.enum_cap)?;
    let report = analyze(&rel, &ctx.precision)?;

    std::fs::create_dir_all(out)?;
    std::fs::write(out.join("expression.dsl"), format!("{}\n", expr.to_dsl()))?;
    std::fs::write(
        out.join("polynomial.json"),
        serde_json::to_string_pretty(&rel.to_json()).unwrap(),
    )?;
    std::fs::write(
        out.join("shape.json"),
        serde_json::to_string_pretty(&report.to_json()).unwrap(),
    )?;
    std::fs::write(
        out.join("trace.json"),
        serde_json::to_string_pretty(&trace.to_json()).unwrap(),
    )?;
    let mut wrote_g6 = false;
    if expr.order() <= ctx.realize_cap as u128 {
        let g = expr.realize_with_cap(ctx.realize_cap)?;
        std::fs::write(out.join("certificate.g6"), format!("{}\n", graph6_string(&g)))?;
        wrote_g6 = true;
    }

    match ctx.format {
        Format::Json => {
            let bundle = json!({
                "expression": expr.to_dsl(),
                "polynomial": rel.to_json(),
                "shape": report.to_json(),
                "certified_decrease_intervals": report.num_decrease_intervals(),
                "certified_inflections": report.num_inflections(),
            });
            println!("{}", serde_json::to_string(&bundle).unwrap());
        }
        _ => {
            println!("expression: {}", expr.to_dsl());
            println!(
                "order: {}   degree: {}   decrease intervals: {}   inflections: {}",
                rel.order(),
                rel.poly().degree().unwrap_or(0),
                report.num_decrease_intervals(),
                report.num_inflections()
            );
            for s in &trace.steps {
                println!(
                    "step {}: {}  l={}  order={}  decrease={}",
                    s.index,
                    s.op.as_str(),
                    s.l,
                    s.order,
                    s.decrease_intervals
                );
            }
            for name in ["expression.dsl", "polynomial.json", "shape.json", "trace.json"] {
                println!("wrote {}", out.join(name).display());
            }
            if wrote_g6 {
                println!("wrote {}", out.join("certificate.g6").display());
            }
        }
    }
    Ok(0)
}

fn cmd_plot(ctx: &Ctx, input: &InputArgs, samples: u64, out: &Option<PathBuf>) -> Result<i32> {
    let rel = ctx.rel_of(input)?;
    let den = BigInt::from(samples - 1);
    let mut csv = String::new();
    for i in 0..samples {
        let p = BigRational::new(BigInt::from(i), den.clone());
        let v = rel.evaluate(&p);
        csv.push_str(&format!(
            "{},{}\n",
            decimal_string(&p, 12),
            decimal_string(&v, 12)
        ));
    }
    write_out(out, &csv)?;
    Ok(0)
}

fn cmd_verify(ctx: &Ctx, input: &InputArgs, p_list: &[String], trials: u64) -> Result<i32> {
    if p_list.is_empty() {
        return Err(Error::Domain(
            "verify needs at least one -p probability".into(),
        ));
    }
    let expr = input.resolve()?;
    let rel = rel_algebra_with_cap(&expr, ctx.enum_cap)?;
    let graph = expr.realize_with_cap(ctx.realize_cap)?;

    struct Row {
        p: String,
        exact: String,
        estimate: f64,
        stderr: f64,
        z: f64,
    }
    let mut rows = Vec::new();
    let mut all_pass = true;
    for p_text in p_list {
        let p = parse_rational(p_text)?;
        let exact = rel.evaluate(&p);
        let est = mc_estimate(&graph, &p, trials, ctx.seed)?;
        let exact_f = exact.to_f64().unwrap_or(f64::NAN);
        let z = if est.stderr == 0.0 {
            if est.estimate == exact_f {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (est.estimate - exact_f) / est.stderr
        };
        if z.is_nan() || z.abs() > 4.0 {
            all_pass = false;
        }
        rows.push(Row {
            p: decimal_string(&p, 12),
            exact: decimal_string(&exact, 12),
            estimate: est.estimate,
            stderr: est.stderr,
            z,
        });
    }

    match ctx.format {
        Format::Json => {
            let v = json!({
                "trials": trials,
                "seed": ctx.seed,
                "rows": rows.iter().map(|r| json!({
                    "p": r.p,
                    "exact": r.exact,
                    "estimate": r.estimate,
                    "stderr": r.stderr,
                    "z": r.z,
                })).collect::<Vec<_>>(),
                "pass": all_pass,
            });
            println!("{}", serde_json::to_string(&v).unwrap());
        }
        Format::Csv => {
            println!("p,exact,estimate,stderr,z");
            for r in &rows {
                println!("{},{},{},{},{}", r.p, r.exact, r.estimate, r.stderr, r.z);
            }
        }
        Format::Pretty => {
            println!(
                "{:<12} {:<16} {:<12} {:<12} {:<8}",
                "p", "exact", "estimate", "stderr", "z"
            );
            for r in &rows {
                println!(
                    "{:<12} {:<16} {:<12.6} {:<12.3e} {:<8.3}",
                    r.p, r.exact, r.estimate, r.stderr, r.z
                );
            }
            println!(
                "{}",
                if all_pass {
                    "PASS: all |z| <= 4"
                } else {
                    "FAIL: some |z| > 4"
                }
            );
        }
    }
    Ok(if all_pass { 0 } else { 1 })
}

fn cmd_expand(ctx: &Ctx, input: &InputArgs, g6: bool, out: &Option<PathBuf>) -> Result<i32> {
    let expr = input.resolve()?;
    let g = expr.realize_with_cap(ctx.realize_cap)?;
    let content = if g6 {
        format!("{}\n", graph6_string(&g))
    } else {
        edge_list_string(&g)
    };
    write_out(out, &content)?;
    Ok(0)
}

fn dispatch(cli: Cli) -> Result<i32> {
    let precision = parse_rational(&cli.precision)?;
    if !precision.is_positive() || precision >= BigRational::one() {
        return Err(Error::Domain(format!(
            "precision must be in (0, 1), got {precision}"
        )));
    }
    if cli.enum_cap == 0 || cli.realize_cap == 0 {
        return Err(Error::Domain("caps must be positive".into()));
    }
    let ctx = Ctx {
        precision,
        enum_cap: cli.enum_cap,
        realize_cap: cli.realize_cap,
        seed: cli.seed,
        format: cli.format,
    };
    match &cli.command {
        Command::Rel { input } => cmd_rel(&ctx, input),
        Command::Shape { input } => cmd_shape(&ctx, input),
        Command::Construct {
            k,
            out,
            soft_cap,
            hard_cap,
        } => cmd_construct(&ctx, *k, out, *soft_cap, *hard_cap),
        Command::Plot {
            input,
            samples,
            out,
        } => cmd_plot(&ctx, input, *samples, out),
        Command::Verify { input, p, trials } => cmd_verify(&ctx, input, p, *trials),
        Command::Expand { input, g6, out } => cmd_expand(&ctx, input, *g6, out),
    }
}

/// Entry point for the `noderel` binary; returns the process exit code.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ParseDsl { .. } | Error::ParseFile { .. } | Error::Domain(_) => 2,
                _ => 1,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("1/1000000").unwrap(), rat(1, 1_000_000));
        assert_eq!(parse_rational("1e-6").unwrap(), rat(1, 1_000_000));
        assert_eq!(parse_rational("0.000001").unwrap(), rat(1, 1_000_000));
        assert_eq!(parse_rational("0.5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("2.5e1").unwrap(), rat(25, 1));
        assert_eq!(parse_rational("1").unwrap(), rat(1, 1));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn decimal_rendering_exact() {
        assert_eq!(decimal_string(&rat(15, 32), 12), "0.46875");
        assert_eq!(decimal_string(&rat(0, 1), 12), "0");
        assert_eq!(decimal_string(&rat(1, 1), 12), "1");
        assert_eq!(decimal_string(&rat(1, 2), 12), "0.5");
        assert_eq!(decimal_string(&rat(35983, 100000), 12), "0.35983");
        assert_eq!(decimal_string(&rat(3, 4), 12), "0.75");
        assert_eq!(decimal_string(&rat(5, 4), 12), "1.25");
    }

    #[test]
    fn decimal_rendering_rounded() {
        assert_eq!(decimal_string(&rat(1, 3), 6), "0.333333");
        assert_eq!(decimal_string(&rat(2, 3), 6), "0.666667");
        assert_eq!(decimal_string(&rat(1, 7), 4), "0.1429");
        assert_eq!(decimal_string(&rat(999999, 1000000), 3), "1");
        assert_eq!(decimal_string(&rat(-1, 3), 3), "-0.333");
        assert_eq!(decimal_string(&rat(1, 1024), 4), "0.0009766");
    }

    #[test]
    fn decimal_rendering_small_values() {
        assert_eq!(decimal_string(&rat(1, 1000000), 6), "0.000001");
        assert_eq!(decimal_string(&rat(1, 3000000), 3), "0.000000333");
    }
}
