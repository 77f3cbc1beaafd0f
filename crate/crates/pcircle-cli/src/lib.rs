//! Command-line surface over the core library: evaluate the special
//! functions, verify the lattice identities, sweep error terms across
//! radii, scan integrability thresholds, and emit machine-readable
//! reports.
//!
//! Output contract: floats are printed with 17 significant digits
//! (lossless `f64` round-trip), CSV uses `\n` line endings with a
//! mandatory header, JSON is one object per invocation. Exit codes:
//! 0 success, 2 validation failure, 3 resource/convergence failure,
//! 4 identity verification failure.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use pcircle::analysis::{beta_scan, fit_growth_exponent, ExponentFit};
use pcircle::identity::{hardy_partial, theorem_residual};
use pcircle::lattice::{d_cal_closed, d_sum, error_term, SweepRecord};
use pcircle::pbessel::{jomega_normalized, kratzel_j};
use pcircle::{config, Error, PExponent, PlanePoint};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

/// Map a core error to the exit-code contract: bad inputs are the
/// caller's problem (2), exhausted budgets and non-convergence are the
/// machine's (3).
fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Domain { .. } | Error::InsufficientData { .. } | Error::DegenerateBoundary => {
            EXIT_VALIDATION
        }
        Error::NonConvergence { .. } | Error::Budget { .. } | Error::Overflow { .. } => {
            EXIT_RESOURCE
        }
    }
}

/// 17 significant digits: every finite `f64` survives a print/parse
/// round trip, and the format is valid JSON.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Parse "a,b" into a pair of floats.
pub fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"a,b\", got \"{s}\""))?;
    let pa = a.trim().parse::<f64>().map_err(|e| format!("bad first component: {e}"))?;
    let pb = b.trim().parse::<f64>().map_err(|e| format!("bad second component: {e}"))?;
    Ok((pa, pb))
}

/// Newtype so clap treats a parsed grid/list as one value, not as a
/// multi-occurrence scalar argument.
#[derive(Clone)]
pub struct Floats(pub Vec<f64>);

/// Parse "min:max:steps" into a log-spaced radius grid.
pub fn parse_grid(s: &str) -> Result<Floats, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected \"min:max:steps\", got \"{s}\""));
    }
    let min = parts[0].parse::<f64>().map_err(|e| format!("bad min: {e}"))?;
    let max = parts[1].parse::<f64>().map_err(|e| format!("bad max: {e}"))?;
    let steps = parts[2].parse::<usize>().map_err(|e| format!("bad steps: {e}"))?;
    if !(min > 0.0) || !min.is_finite() || !max.is_finite() {
        return Err("grid endpoints must be finite and positive".into());
    }
    if max < min {
        return Err("grid max must be at least min".into());
    }
    if steps == 0 {
        return Err("grid needs at least one step".into());
    }
    if steps == 1 {
        return Ok(Floats(vec![min]));
    }
    let ratio = max / min;
    Ok(Floats(
        (0..steps)
            .map(|i| min * ratio.powf(i as f64 / (steps - 1) as f64))
            .collect(),
    ))
}

/// Parse a comma-separated float list.
pub fn parse_list(s: &str) -> Result<Floats, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad list entry \"{t}\": {e}")))
        .collect::<Result<Vec<f64>, String>>()
        .map(Floats)
}

/// Worker count: a number, or "auto" for the machine's parallelism.
pub fn parse_threads(s: &str) -> Result<usize, String> {
    if s == "auto" {
        return Ok(std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    }
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        Ok(_) => Err("thread count must be at least 1".into()),
        Err(e) => Err(format!("expected a count or \"auto\": {e}")),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args)]
pub struct OutArgs {
    /// Output format (default: json for single reports, csv for tables).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalTarget {
    J0p,
    Jomega,
    Kratzel,
    #[value(name = "d_sum")]
    DSum,
    #[value(name = "d_cal")]
    DCal,
}

#[derive(Args)]
pub struct EvalArgs {
    /// What to evaluate.
    #[arg(long, value_enum)]
    target: EvalTarget,
    /// Shape exponent of the p-circle.
    #[arg(long)]
    p: f64,
    /// Plane argument "a,b" (j0p, jomega).
    #[arg(long, value_parser = parse_pair)]
    eta: Option<(f64, f64)>,
    /// Order of the generalized function (jomega).
    #[arg(long)]
    omega: Option<f64>,
    /// Order of the companion function (kratzel).
    #[arg(long)]
    nu: Option<f64>,
    /// Scalar argument (kratzel).
    #[arg(long)]
    r: Option<f64>,
    /// Weight exponent (d_sum, d_cal).
    #[arg(long)]
    beta: Option<f64>,
    /// Scale (d_sum, d_cal).
    #[arg(long)]
    s: Option<f64>,
    /// Phase point "x1,x2" (d_sum, d_cal); defaults to the origin.
    #[arg(long, value_parser = parse_pair)]
    x: Option<(f64, f64)>,
    /// Accuracy target.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
pub struct IdentityArgs {
    #[arg(long)]
    p: f64,
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    s: f64,
    /// Phase point "x1,x2" in the fundamental cell (-1/2, 1/2]^2.
    #[arg(long, value_parser = parse_pair)]
    x: (f64, f64),
    /// Truncation shell of the dual series.
    #[arg(long)]
    cutoff: u64,
    /// Accuracy target for both sides (below 1e-9 selects a finer, slower
    /// kernel table).
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
pub struct SweepArgs {
    #[arg(long)]
    p: f64,
    /// Radius grid "min:max:steps", log-spaced.
    #[arg(long, value_parser = parse_grid)]
    r: Floats,
    /// Append a growth-exponent fit over the sweep as a comment row.
    #[arg(long)]
    fit: bool,
    /// Worker threads: a count or "auto". Output is identical for every
    /// setting.
    #[arg(long, value_parser = parse_threads, default_value = "1")]
    threads: usize,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
pub struct ScanArgs {
    #[arg(long)]
    p: f64,
    /// Weight exponents, comma-separated.
    #[arg(long, value_parser = parse_list)]
    betas: Floats,
    /// Ring radii, comma-separated.
    #[arg(long, value_parser = parse_list)]
    radii: Floats,
    /// Relative accuracy target per ring.
    #[arg(long, default_value_t = 0.05)]
    tol: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
pub struct HardyArgs {
    /// Circle radius; r^2 must not be an integer.
    #[arg(long)]
    r: f64,
    /// Series truncation.
    #[arg(long = "n-max")]
    n_max: u64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Evaluate one function value.
    Eval(EvalArgs),
    /// Verify the dual-series identity at one parameter point (exit 4 if
    /// the residual exceeds its gate).
    Identity(IdentityArgs),
    /// Sweep the lattice-count error term over a radius grid.
    Sweep(SweepArgs),
    /// Scan ring masses of the continuous transform over weights x radii.
    Scan(ScanArgs),
    /// Partial sums of the classical circle-problem series.
    Hardy(HardyArgs),
}

/// Lattice computations on p-circles: generalized Bessel functions,
/// weighted lattice sums, identity verification, and growth diagnostics.
#[derive(Parser)]
#[command(name = "pcircle", version)]
pub struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

struct Emitted {
    text: String,
    exit: i32,
}

fn eval_missing(what: &'static str) -> Error {
    Error::Domain { what }
}

fn run_eval(a: &EvalArgs) -> Result<Emitted, Error> {
    let pe = PExponent::new(a.p)?;
    let t0 = Instant::now();
    // (label, value) input pairs, the result, and its provenance string.
    let (inputs, value, est, method): (Vec<(&str, String)>, f64, f64, &str);
    match a.target {
        EvalTarget::J0p | EvalTarget::Jomega => {
            let eta = a.eta.ok_or(eval_missing("--eta is required for function targets"))?;
            let omega = match a.target {
                EvalTarget::J0p => 0.0,
                _ => a.omega.ok_or(eval_missing("--omega is required for jomega"))?,
            };
            let point = PlanePoint::new(eta.0, eta.1);
            let r = jomega_normalized(&pe, omega, point, a.tol)?;
            let norm_pow = point.p_norm(a.p).powf(omega);
            let mut pairs = vec![("p", fmt17(a.p))];
            if a.target == EvalTarget::Jomega {
                pairs.push(("omega", fmt17(omega)));
            }
            pairs.push(("eta1", fmt17(eta.0)));
            pairs.push(("eta2", fmt17(eta.1)));
            pairs.push(("tol", fmt17(a.tol)));
            inputs = pairs;
            value = r.value * norm_pow;
            est = r.error_estimate * norm_pow;
            method = method_name(r.method);
        }
        EvalTarget::Kratzel => {
            let nu = a.nu.ok_or(eval_missing("--nu is required for kratzel"))?;
            let arg = a.r.ok_or(eval_missing("--r is required for kratzel"))?;
            let r = kratzel_j(a.p, nu, arg, a.tol)?;
            inputs = vec![
                ("p", fmt17(a.p)),
                ("nu", fmt17(nu)),
                ("r", fmt17(arg)),
                ("tol", fmt17(a.tol)),
            ];
            value = r.value;
            est = r.error_estimate;
            method = method_name(r.method);
        }
        EvalTarget::DSum | EvalTarget::DCal => {
            let beta = a.beta.ok_or(eval_missing("--beta is required for lattice targets"))?;
            let s = a.s.ok_or(eval_missing("--s is required for lattice targets"))?;
            let x = a.x.unwrap_or((0.0, 0.0));
            let mut pairs = vec![
                ("p", fmt17(a.p)),
                ("beta", fmt17(beta)),
                ("s", fmt17(s)),
                ("x1", fmt17(x.0)),
                ("x2", fmt17(x.1)),
            ];
            if a.target == EvalTarget::DCal {
                let r = d_cal_closed(&pe, beta, s, x, a.tol)?;
                pairs.push(("tol", fmt17(a.tol)));
                inputs = pairs;
                value = r.value;
                est = r.error_estimate;
                method = method_name(r.method);
            } else {
                let r = d_sum(&pe, beta, s, x)?;
                pairs.push(("im", fmt17(r.im)));
                pairs.push(("terms", r.terms.to_string()));
                inputs = pairs;
                value = r.re;
                est = 0.0;
                method = "enumeration";
            }
        }
    }
    let wall_ms = t0.elapsed().as_secs_f64() * 1e3;
    let target = match a.target {
        EvalTarget::J0p => "j0p",
        EvalTarget::Jomega => "jomega",
        EvalTarget::Kratzel => "kratzel",
        EvalTarget::DSum => "d_sum",
        EvalTarget::DCal => "d_cal",
    };
    let text = match a.out.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut s = format!("{{\"target\":\"{target}\"");
            for (k, v) in &inputs {
                s.push_str(&format!(",\"{k}\":{v}"));
            }
            s.push_str(&format!(
                ",\"value\":{},\"error_estimate\":{},\"method\":\"{method}\",\"wall_time_ms\":{}}}\n",
                fmt17(value),
                fmt17(est),
                fmt17(wall_ms)
            ));
            s
        }
        Format::Csv => {
            let mut head = String::from("target");
            let mut row = String::from(target);
            for (k, v) in &inputs {
                head.push_str(&format!(",{k}"));
                row.push_str(&format!(",{v}"));
            }
            format!(
                "{head},value,error_estimate,method,wall_time_ms\n{row},{},{},{method},{}\n",
                fmt17(value),
                fmt17(est),
                fmt17(wall_ms)
            )
        }
    };
    Ok(Emitted { text, exit: EXIT_OK })
}

fn method_name(m: pcircle::Method) -> &'static str {
    match m {
        pcircle::Method::Series => "series",
        pcircle::Method::Quadrature => "quadrature",
        pcircle::Method::Closed => "closed",
    }
}

fn run_identity(a: &IdentityArgs) -> Result<Emitted, Error> {
    let pe = PExponent::new(a.p)?;
    let rep = theorem_residual(&pe, a.beta, a.s, a.x, a.cutoff, a.tol)?;
    let gate = config::IDENTITY_ABS_FLOOR.max(config::TAIL_SAFETY * rep.tail_bound);
    let pass = rep.residual.abs() <= gate;
    let text = match a.out.format.unwrap_or(Format::Json) {
        Format::Json => {
            let trace: Vec<String> = rep
                .trace
                .iter()
                .map(|&(q, v)| format!("[{q},{}]", fmt17(v)))
                .collect();
            format!(
                "{{\"p\":{},\"beta\":{},\"s\":{},\"x\":[{},{}],\"cutoff\":{},\"lhs\":{},\"rhs_truncated\":{},\"residual\":{},\"tail_bound\":{},\"gate\":{},\"pass\":{pass},\"trace\":[{}]}}\n",
                fmt17(a.p),
                fmt17(a.beta),
                fmt17(a.s),
                fmt17(a.x.0),
                fmt17(a.x.1),
                rep.cutoff,
                fmt17(rep.lhs),
                fmt17(rep.rhs_truncated),
                fmt17(rep.residual),
                fmt17(rep.tail_bound),
                fmt17(gate),
                trace.join(",")
            )
        }
        Format::Csv => {
            let mut s = String::from("shell,partial_sum\n");
            for &(q, v) in &rep.trace {
                s.push_str(&format!("{q},{}\n", fmt17(v)));
            }
            s.push_str(&format!(
                "# lhs={} rhs_truncated={} residual={} tail_bound={} gate={} pass={pass}\n",
                fmt17(rep.lhs),
                fmt17(rep.rhs_truncated),
                fmt17(rep.residual),
                fmt17(rep.tail_bound),
                fmt17(gate)
            ));
            s
        }
    };
    Ok(Emitted { text, exit: if pass { EXIT_OK } else { EXIT_VERIFICATION } })
}

/// Run the sweep over `radii` with `threads` workers on contiguous
/// chunks; results land in input order, so output is independent of the
/// worker count.
fn sweep_records(
    pe: &PExponent,
    radii: &[f64],
    threads: usize,
) -> Result<Vec<SweepRecord>, Error> {
    let n = radii.len();
    let mut slots: Vec<Option<Result<SweepRecord, Error>>> = Vec::new();
    slots.resize_with(n, || None);
    let chunk = n.div_ceil(threads.max(1));
    std::thread::scope(|scope| {
        for (r_chunk, s_chunk) in radii.chunks(chunk).zip(slots.chunks_mut(chunk)) {
            scope.spawn(move || {
                for (r, slot) in r_chunk.iter().zip(s_chunk.iter_mut()) {
                    *slot = Some(error_term(pe, *r));
                }
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("every slot filled"))
        .collect()
}

fn fit_comment(fit: &ExponentFit) -> String {
    format!(
        "# fit slope={} intercept={} r_squared={} window_max_slope={} n_samples={}",
        fmt17(fit.slope),
        fmt17(fit.intercept),
        fmt17(fit.r_squared),
        fmt17(fit.window_max_slope),
        fit.n_samples
    )
}

fn run_sweep(a: &SweepArgs) -> Result<Emitted, Error> {
    let pe = PExponent::new(a.p)?;
    let records = sweep_records(&pe, &a.r.0, a.threads)?;
    let fit = if a.fit { Some(fit_growth_exponent(&records)?) } else { None };
    let text = match a.out.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = String::from("p,r,count,area,error\n");
            for rec in &records {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    fmt17(rec.p),
                    fmt17(rec.r),
                    rec.count,
                    fmt17(rec.area),
                    fmt17(rec.error)
                ));
            }
            if let Some(f) = &fit {
                s.push_str(&fit_comment(f));
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let rows: Vec<String> = records
                .iter()
                .map(|rec| {
                    format!(
                        "{{\"r\":{},\"count\":{},\"area\":{},\"error\":{}}}",
                        fmt17(rec.r),
                        rec.count,
                        fmt17(rec.area),
                        fmt17(rec.error)
                    )
                })
                .collect();
            let fit_json = match &fit {
                Some(f) => format!(
                    "{{\"slope\":{},\"intercept\":{},\"r_squared\":{},\"window_max_slope\":{},\"n_samples\":{}}}",
                    fmt17(f.slope),
                    fmt17(f.intercept),
                    fmt17(f.r_squared),
                    fmt17(f.window_max_slope),
                    f.n_samples
                ),
                None => "null".into(),
            };
            format!(
                "{{\"p\":{},\"records\":[{}],\"fit\":{fit_json}}}\n",
                fmt17(a.p),
                rows.join(",")
            )
        }
    };
    Ok(Emitted { text, exit: EXIT_OK })
}

fn run_scan(a: &ScanArgs) -> Result<Emitted, Error> {
    let pe = PExponent::new(a.p)?;
    let table = beta_scan(&pe, &a.betas.0, &a.radii.0, a.tol)?;
    let text = match a.out.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = String::from("beta,radius,ring_mass,error_estimate,converged\n");
            for row in &table.rows {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    fmt17(row.beta),
                    fmt17(row.radius),
                    fmt17(row.ring_mass),
                    fmt17(row.error_estimate),
                    row.converged
                ));
            }
            for sm in &table.summaries {
                s.push_str(&format!(
                    "# beta={} decay_exponent={} decaying={}\n",
                    fmt17(sm.beta),
                    fmt17(sm.decay_exponent),
                    sm.decaying
                ));
            }
            s
        }
        Format::Json => {
            let rows: Vec<String> = table
                .rows
                .iter()
                .map(|row| {
                    format!(
                        "{{\"beta\":{},\"radius\":{},\"ring_mass\":{},\"error_estimate\":{},\"converged\":{}}}",
                        fmt17(row.beta),
                        fmt17(row.radius),
                        fmt17(row.ring_mass),
                        fmt17(row.error_estimate),
                        row.converged
                    )
                })
                .collect();
            let sums: Vec<String> = table
                .summaries
                .iter()
                .map(|sm| {
                    format!(
                        "{{\"beta\":{},\"decay_exponent\":{},\"decaying\":{}}}",
                        fmt17(sm.beta),
                        fmt17(sm.decay_exponent),
                        sm.decaying
                    )
                })
                .collect();
            format!(
                "{{\"p\":{},\"tol\":{},\"rows\":[{}],\"summaries\":[{}]}}\n",
                fmt17(a.p),
                fmt17(a.tol),
                rows.join(","),
                sums.join(",")
            )
        }
    };
    Ok(Emitted { text, exit: EXIT_OK })
}

fn run_hardy(a: &HardyArgs) -> Result<Emitted, Error> {
    let rep = hardy_partial(a.r, a.n_max)?;
    let text = match a.out.format.unwrap_or(Format::Json) {
        Format::Json => {
            let trace: Vec<String> = rep
                .trace
                .iter()
                .map(|&(n, v)| format!("[{n},{}]", fmt17(v)))
                .collect();
            format!(
                "{{\"r\":{},\"n_max\":{},\"lhs\":{},\"rhs_truncated\":{},\"residual\":{},\"tail_bound\":{},\"trace\":[{}]}}\n",
                fmt17(a.r),
                a.n_max,
                fmt17(rep.lhs),
                fmt17(rep.rhs_truncated),
                fmt17(rep.residual),
                fmt17(rep.tail_bound),
                trace.join(",")
            )
        }
        Format::Csv => {
            let mut s = String::from("n,partial_sum\n");
            for &(n, v) in &rep.trace {
                s.push_str(&format!("{n},{}\n", fmt17(v)));
            }
            s.push_str(&format!(
                "# lhs={} residual={} tail_bound={}\n",
                fmt17(rep.lhs),
                fmt17(rep.residual),
                fmt17(rep.tail_bound)
            ));
            s
        }
    };
    Ok(Emitted { text, exit: EXIT_OK })
}

/// Parse `args` and run the requested command, writing the report to
/// `out` (or the `--output` file) and diagnostics to `err`. Returns the
/// process exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let kind = e.kind();
            if kind == ErrorKind::DisplayHelp || kind == ErrorKind::DisplayVersion {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let _ = write!(err, "{e}");
            return EXIT_VALIDATION;
        }
    };
    let (result, out_args) = match &cli.cmd {
        Cmd::Eval(a) => (run_eval(a), &a.out),
        Cmd::Identity(a) => (run_identity(a), &a.out),
        Cmd::Sweep(a) => (run_sweep(a), &a.out),
        Cmd::Scan(a) => (run_scan(a), &a.out),
        Cmd::Hardy(a) => (run_hardy(a), &a.out),
    };
    match result {
        Ok(emitted) => {
            let write_result = match &out_args.output {
                Some(path) => File::create(path)
                    .map(BufWriter::new)
                    .and_then(|mut w| w.write_all(emitted.text.as_bytes()).and_then(|_| w.flush())),
                None => out.write_all(emitted.text.as_bytes()),
            };
            if let Err(io_err) = write_result {
                let _ = writeln!(err, "error: cannot write output: {io_err}");
                return EXIT_RESOURCE;
            }
            emitted.exit
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn seventeen_digits_round_trip_known_values() {
        for v in [
            core::f64::consts::PI,
            -0.0,
            1e-300,
            123456.789,
            f64::MIN_POSITIVE,
            f64::MAX,
        ] {
            let back: f64 = fmt17(v).parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits(), "round trip of {v}");
        }
    }

    proptest! {
        #[test]
        fn seventeen_digits_round_trip_any_finite(bits in any::<u64>()) {
            let v = f64::from_bits(bits);
            prop_assume!(v.is_finite());
            let back: f64 = fmt17(v).parse().unwrap();
            prop_assert_eq!(back.to_bits(), v.to_bits());
        }
    }

    #[test]
    fn pair_and_list_parsing() {
        assert_eq!(parse_pair("3,4").unwrap(), (3.0, 4.0));
        assert_eq!(parse_pair("-0.5, 2e3").unwrap(), (-0.5, 2000.0));
        assert!(parse_pair("3").is_err(), "missing comma must be rejected");
        assert!(parse_pair("a,b").is_err(), "non-numeric must be rejected");
        assert_eq!(parse_list("1,2.5,3").unwrap().0, vec![1.0, 2.5, 3.0]);
    }

    #[test]
    fn grid_is_log_spaced_inclusive() {
        let g = parse_grid("10:1000:3").unwrap().0;
        assert_eq!(g.len(), 3);
        assert!((g[0] - 10.0).abs() < 1e-12);
        assert!((g[1] - 100.0).abs() < 1e-9, "midpoint is the geometric mean");
        assert!((g[2] - 1000.0).abs() < 1e-9);
        assert_eq!(parse_grid("5:5:1").unwrap().0, vec![5.0]);
        assert!(parse_grid("0:10:5").is_err(), "zero min must be rejected");
        assert!(parse_grid("10:5:3").is_err(), "descending grid must be rejected");
        assert!(parse_grid("1:2").is_err(), "two fields must be rejected");
    }

    #[test]
    fn thread_spec_parsing() {
        assert_eq!(parse_threads("3").unwrap(), 3);
        assert!(parse_threads("auto").unwrap() >= 1);
        assert!(parse_threads("0").is_err(), "zero workers must be rejected");
        assert!(parse_threads("many").is_err());
    }
}
