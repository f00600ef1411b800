//! Command-line front door: compute pi, evaluate modular and period
//! functions, verify the identity catalog, dump it, or run the
//! certification suite.
//!
//! Exit codes: 0 on success / all-pass, 1 on a verification failure, 2 on a
//! usage error (including unknown identity ids, which come back with the
//! full list of valid ids). All numeric output is decimal strings.

use std::ffi::OsString;
use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use rug::ops::Pow;
use rug::{Float, Integer};
use serde_json::json;

use crate::error::{Error, Result};
use crate::fastseries::{compute_pi, cross_check_pi};
use crate::identities::{catalog, find_record, point_slug, verify_record, VerificationReport};
use crate::kernel::{make_context, APComplex, PrecisionContext};
use crate::modular::{
    dedekind_eta, discriminant_tau, eisenstein, klein_j, klein_J, s2, weber_f, RegionId, TauPoint,
};
use crate::periods::{pick_region, period_tilde, quasi_period_tilde, HeegnerPoint};
use crate::selftest::{self, Level};

#[derive(Parser)]
#[command(
    name = "heegner-pi",
    version,
    about = "High-precision modular/hypergeometric evaluation and identity certification"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute pi by exact binary splitting (dual-series cross-checked)
    Pi {
        /// Total significant decimal digits
        #[arg(long, default_value_t = 100)]
        digits: u32,
        /// Group fractional digits in blocks of ten
        #[arg(long)]
        group: bool,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a function at a point tau in the upper half plane
    Eval {
        #[arg(long)]
        function: EvalFn,
        /// "heegner:a,b,c" (exact) or "complex:x,y" (decimal reals)
        #[arg(long)]
        tau: String,
        /// Region override for period/quasiperiod
        #[arg(long)]
        region: Option<RegionArg>,
        #[arg(long, default_value_t = 100)]
        digits: u32,
        #[arg(long)]
        json: bool,
    },
    /// Verify one catalog identity or all of them
    Verify {
        /// Identity id, e.g. series.sqrt-2
        #[arg(long, conflicts_with = "all")]
        id: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 100)]
        digits: u32,
        #[arg(long)]
        json: bool,
    },
    /// List the identity catalog
    Catalog {
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Run the certification suite
    Selftest {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalFn {
    #[value(name = "E2")]
    E2,
    #[value(name = "E4")]
    E4,
    #[value(name = "E6")]
    E6,
    Eta,
    Weberf,
    #[value(name = "J")]
    JCap,
    #[value(name = "j")]
    JSmall,
    S2,
    Delta,
    Period,
    Quasiperiod,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegionArg {
    Inf,
    One,
    Zero,
}

impl From<RegionArg> for RegionId {
    fn from(r: RegionArg) -> RegionId {
        match r {
            RegionArg::Inf => RegionId::CInf,
            RegionArg::One => RegionId::COne,
            RegionArg::Zero => RegionId::CZero,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

/// Positional decimal form of a real number with `digits` significant
/// digits, falling back to scientific notation for extreme exponents.
fn fixed_real(f: &Float, digits: u32) -> String {
    let digits = digits.max(1);
    if f.is_zero() {
        return "0".into();
    }
    let neg = f.is_sign_negative();
    let p = f.prec();
    let a = Float::with_val(p, f.clone().abs());
    let mut e10 = a.clone().log10().floor().to_f64() as i64;
    let shift = digits as i64 - 1 - e10;
    let pow = Float::with_val(p, Integer::from(10).pow(shift.unsigned_abs() as u32));
    let scaled = if shift >= 0 {
        Float::with_val(p, &a * &pow)
    } else {
        Float::with_val(p, &a / &pow)
    };
    let int = scaled.round().to_integer().expect("finite value");
    let mut s = int.to_string();
    if s.len() as i64 > digits as i64 {
        // rounding carried into an extra place
        e10 += 1;
        s.truncate(digits as usize);
    }
    let body = if (0..digits as i64).contains(&e10) {
        let (ip, fp) = s.split_at((e10 + 1) as usize);
        if fp.is_empty() {
            ip.to_string()
        } else {
            format!("{ip}.{fp}")
        }
    } else if (-8..0).contains(&e10) {
        format!("0.{}{}", "0".repeat((-e10 - 1) as usize), s)
    } else {
        let (h, t) = s.split_at(1);
        if t.is_empty() {
            format!("{h}e{e10}")
        } else {
            format!("{h}.{t}e{e10}")
        }
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Complex decimal form; a component whose magnitude is below the printable
/// resolution of the other is numerical dust and is dropped.
fn fixed_complex(v: &APComplex, digits: u32) -> String {
    let p = v.prec();
    let scale = Float::with_val(p, v.re.clone().abs().max(&v.im.clone().abs()));
    let dust = scale * Float::with_val(p, 10u32).pow(-(digits as i32 + 10));
    let re_live = !v.re.is_zero() && v.re.clone().abs() > dust;
    let im_live = !v.im.is_zero() && v.im.clone().abs() > dust;
    match (re_live, im_live) {
        (_, false) => fixed_real(&v.re, digits),
        (false, true) => format!("{} i", fixed_real(&v.im, digits)),
        (true, true) => {
            let re = fixed_real(&v.re, digits);
            if v.im.is_sign_negative() {
                let im = fixed_real(&Float::with_val(p, -v.im.clone()), digits);
                format!("{re} - {im} i")
            } else {
                format!("{re} + {} i", fixed_real(&v.im, digits))
            }
        }
    }
}

fn group_fraction(s: &str) -> String {
    match s.split_once('.') {
        None => s.to_string(),
        Some((int, frac)) => {
            let blocks: Vec<&str> = frac
                .as_bytes()
                .chunks(10)
                .map(|c| std::str::from_utf8(c).expect("ascii digits"))
                .collect();
            format!("{int}.{}", blocks.join(" "))
        }
    }
}

fn parse_tau(spec: &str, ctx: &PrecisionContext) -> Result<TauPoint> {
    let wp = ctx.working_bits() + 32;
    if let Some(rest) = spec.strip_prefix("heegner:") {
        let parts: Vec<i64> = rest
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidInput(format!("bad heegner spec '{spec}'")))?;
        if parts.len() != 3 {
            return Err(Error::InvalidInput(
                "heegner spec needs exactly three integers a,b,c".into(),
            ));
        }
        Ok(HeegnerPoint::new(parts[0], parts[1], parts[2])?.tau(ctx))
    } else if let Some(rest) = spec.strip_prefix("complex:") {
        let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(Error::InvalidInput(
                "complex spec needs exactly two decimal reals x,y".into(),
            ));
        }
        let mut vals = Vec::new();
        for p in &parts {
            let parsed = Float::parse(p)
                .map_err(|_| Error::InvalidInput(format!("bad decimal '{p}' in tau spec")))?;
            vals.push(Float::with_val(wp, parsed));
        }
        let im = vals.pop().expect("two parts");
        let re = vals.pop().expect("two parts");
        TauPoint::new(APComplex { re, im })
    } else {
        Err(Error::InvalidInput(format!(
            "tau spec '{spec}' must start with 'heegner:' or 'complex:'"
        )))
    }
}

fn thread_cap() -> usize {
    match std::env::var("HEEGNER_PI_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        Some(0) | Some(1) => 1,
        Some(n) => n,
        None => std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
            .min(8),
    }
}

/// Verify the whole catalog, possibly in parallel, returning reports in
/// id order regardless of evaluation order.
fn verify_all(digits: u32) -> Result<Vec<VerificationReport>> {
    let ctx = make_context(digits)?;
    let mut recs = catalog();
    recs.sort_by(|x, y| x.id.cmp(y.id));
    let workers = thread_cap().min(recs.len()).max(1);
    if workers == 1 {
        return recs.iter().map(|r| verify_record(r, &ctx)).collect();
    }
    let slots: Vec<Mutex<Option<Result<VerificationReport>>>> =
        recs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| {
                let ctx = make_context(digits).expect("digits validated above");
                loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= recs.len() {
                        break;
                    }
                    *slots[i].lock().unwrap() = Some(verify_record(&recs[i], &ctx));
                }
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("every slot filled"))
        .collect()
}

fn report_line(r: &VerificationReport) -> String {
    let status = if r.pass { "PASS" } else { "FAIL" };
    let mut line = format!("{:<22} {status}  rel_diff {:.6e}", r.id, r.rel_diff);
    if !r.notes.is_empty() {
        line.push_str(&format!("  -- {}", r.notes));
    }
    line
}

fn cmd_pi(out: &mut dyn Write, digits: u32, group: bool, as_json: bool) -> Result<i32> {
    let value = compute_pi(digits)?;
    let cross = cross_check_pi(digits.min(1000))?;
    if !value.starts_with(&cross) {
        return Err(Error::ConsistencyFault(
            "dual-series pi cross-check disagreed".into(),
        ));
    }
    let shown = if group { group_fraction(&value) } else { value };
    if as_json {
        writeln!(out, "{}", json!({"command": "pi", "digits": digits, "value": shown}))
            .expect("write");
    } else {
        writeln!(out, "{shown}").expect("write");
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_eval(
    out: &mut dyn Write,
    function: EvalFn,
    tau_spec: &str,
    region: Option<RegionArg>,
    digits: u32,
    as_json: bool,
) -> Result<i32> {
    let ctx = make_context(digits)?;
    let tau = parse_tau(tau_spec, &ctx)?;
    let (name, value) = match function {
        EvalFn::E2 => ("E2", eisenstein(2, &tau, &ctx)?),
        EvalFn::E4 => ("E4", eisenstein(4, &tau, &ctx)?),
        EvalFn::E6 => ("E6", eisenstein(6, &tau, &ctx)?),
        EvalFn::Eta => ("eta", dedekind_eta(&tau, &ctx)?),
        EvalFn::Weberf => ("weberf", weber_f(&tau, &ctx)?),
        EvalFn::JCap => ("J", klein_J(&tau, &ctx)?),
        EvalFn::JSmall => ("j", klein_j(&tau, &ctx)?),
        EvalFn::S2 => ("s2", s2(&tau, &ctx)?),
        EvalFn::Delta => ("delta", discriminant_tau(&tau, &ctx)?),
        EvalFn::Period | EvalFn::Quasiperiod => {
            let r = match region {
                Some(r) => r.into(),
                None => pick_region(&tau, &ctx)?,
            };
            match function {
                EvalFn::Period => ("period", period_tilde(r, &tau, &ctx)?),
                _ => ("quasiperiod", quasi_period_tilde(r, &tau, &ctx)?),
            }
        }
    };
    let shown = fixed_complex(&value, digits);
    if as_json {
        writeln!(
            out,
            "{}",
            json!({
                "command": "eval",
                "function": name,
                "tau": tau_spec,
                "digits": digits,
                "value": shown,
            })
        )
        .expect("write");
    } else {
        writeln!(out, "{shown}").expect("write");
    }
    Ok(0)
}

fn cmd_verify(
    out: &mut dyn Write,
    id: Option<&str>,
    all: bool,
    digits: u32,
    as_json: bool,
) -> Result<i32> {
    match (id, all) {
        (Some(id), false) => {
            let rec = find_record(id)?;
            let ctx = make_context(digits)?;
            let report = verify_record(&rec, &ctx)?;
            if as_json {
                writeln!(out, "{}", report.to_json()).expect("write");
            } else {
                writeln!(out, "{}", report_line(&report)).expect("write");
            }
            Ok(if report.pass { 0 } else { 1 })
        }
        (None, true) => {
            let reports = verify_all(digits)?;
            let all_pass = reports.iter().all(|r| r.pass);
            if as_json {
                let arr: Vec<_> = reports.iter().map(|r| r.to_json()).collect();
                writeln!(
                    out,
                    "{}",
                    json!({"command": "verify", "digits": digits, "all_pass": all_pass, "reports": arr})
                )
                .expect("write");
            } else {
                for r in &reports {
                    writeln!(out, "{}", report_line(r)).expect("write");
                }
                let n_pass = reports.iter().filter(|r| r.pass).count();
                writeln!(out, "{n_pass}/{} passed", reports.len()).expect("write");
            }
            Ok(if all_pass { 0 } else { 1 })
        }
        _ => Err(Error::InvalidInput(
            "verify needs exactly one of --id <ID> or --all".into(),
        )),
    }
}

fn cmd_catalog(out: &mut dyn Write, format: FormatArg) -> Result<i32> {
    let cat = catalog();
    match format {
        FormatArg::Text => {
            for rec in &cat {
                let point = rec
                    .heegner
                    .map(|h| point_slug(&h))
                    .unwrap_or_else(|| "-".into());
                writeln!(out, "{:<22} {:<14} {point}", rec.id, rec.kind.as_str())
                    .expect("write");
            }
        }
        FormatArg::Json => {
            let arr: Vec<_> = cat
                .iter()
                .map(|rec| {
                    json!({
                        "id": rec.id,
                        "kind": rec.kind.as_str(),
                        "tau": rec.heegner.map(|h| json!({
                            "a": h.a, "b": h.b, "c": h.c, "d": h.disc(),
                        })),
                        "note": rec.note,
                    })
                })
                .collect();
            writeln!(out, "{}", serde_json::Value::Array(arr)).expect("write");
        }
    }
    Ok(0)
}

fn cmd_selftest(out: &mut dyn Write, level: LevelArg) -> Result<i32> {
    let level = match level {
        LevelArg::Quick => Level::Quick,
        LevelArg::Full => Level::Full,
    };
    let all = selftest::run_level(level, |o| {
        let status = if o.pass { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "[{status}] {:<16} ({:7.2} s)  {}",
            o.name, o.seconds, o.detail
        )
        .expect("write");
    });
    writeln!(out, "{}", if all { "all checks passed" } else { "FAILURES present" })
        .expect("write");
    Ok(if all { 0 } else { 1 })
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Cmd::Pi {
            digits,
            group,
            json,
        } => cmd_pi(out, digits, group, json),
        Cmd::Eval {
            function,
            tau,
            region,
            digits,
            json,
        } => cmd_eval(out, function, &tau, region, digits, json),
        Cmd::Verify {
            id,
            all,
            digits,
            json,
        } => cmd_verify(out, id.as_deref(), all, digits, json),
        Cmd::Catalog { format } => cmd_catalog(out, format),
        Cmd::Selftest { level } => cmd_selftest(out, level),
    }
}

fn error_exit_code(e: &Error) -> i32 {
    match e {
        // wrong invocation or an argument outside the contract
        Error::InvalidInput(_)
        | Error::UnknownId(_)
        | Error::Domain(_)
        | Error::OutOfRegime(_)
        | Error::Pole(_) => 2,
        // the computation itself failed certification
        Error::ConsistencyFault(_) | Error::Divergence(_) => 1,
    }
}

/// Run the CLI against `argv`, writing results to `out`; returns the exit
/// code. Errors print to stderr.
pub fn run_to<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            error_exit_code(&e)
        }
    }
}

/// Entry point used by the binary: stdout, process-style exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let code = run_to(argv, &mut lock);
    lock.flush().expect("flush stdout");
    code
}
