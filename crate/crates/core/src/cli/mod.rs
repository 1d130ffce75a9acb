//! The `latzeta` command line: `weil`, `lerch`, `verify`, `grid`, `em2d`.
//!
//! Exit codes: 0 success, 1 a `verify` check failed, 2 bad input or a
//! point outside the domain, 3 a numerical method failed to converge.
//! Failures print one JSON line `{"error": code, "message": ...}`.

mod grid;
mod output;
mod registry;
mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::complex::{parse_complex, Complex};
use crate::em2d::{brute_force_sum_2d, em_sum_2d, Rect};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::lerch::{lerch_coffey, lerch_series, LerchParams};
use crate::weil::{weil, Method, WeilParams, WeilReport};

pub use grid::GridSpec;
pub use registry::Builtin;
pub use verify::{random_lerch_case, random_rect, random_weil_case, Check, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;

pub fn exit_code(err: &Error) -> i32 {
    if err.is_convergence_failure() {
        EXIT_NO_CONVERGENCE
    } else {
        EXIT_BAD_INPUT
    }
}

#[derive(Debug, Parser)]
#[command(name = "latzeta", version, about = "Lattice sums by the two-dimensional Euler-MacLaurin formula")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate Weil's elliptic function E_k(a, W)
    Weil(WeilArgs),
    /// Evaluate the Hurwitz-Lerch zeta function Phi(z, s, a)
    Lerch(LerchArgs),
    /// Run the seeded self-check suites
    Verify(VerifyArgs),
    /// Tabulate E_k(a, W) over a rectangle of a-values as CSV
    Grid(GridArgs),
    /// Apply the 2-D summation formula to a built-in test function
    Em2d(Em2dArgs),
}

fn complex_arg(s: &str) -> std::result::Result<Complex, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct FormatArgs {
    /// JSON output (default)
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    /// CSV output
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeilMethod {
    Direct,
    Integral,
    Both,
}

#[derive(Debug, Args)]
pub struct WeilArgs {
    /// first lattice generator, e.g. 1 or 0.5+0.1i
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub w1: Complex,
    /// second lattice generator
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub w2: Complex,
    /// evaluation point (must not lie on the lattice)
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub a: Complex,
    /// exponent k >= 1 (the integral method needs k >= 3)
    #[arg(long)]
    pub k: u32,
    #[arg(long, value_enum, default_value = "direct")]
    pub method: WeilMethod,
    /// half-width of the band around the pole row
    #[arg(long, default_value_t = 0.25)]
    pub eps: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// include J1, J2, J3 and the row correction
    #[arg(long)]
    pub breakdown: bool,
    #[command(flatten)]
    pub format: FormatArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LerchMethod {
    Series,
    Coffey,
    Both,
}

#[derive(Debug, Args)]
pub struct LerchArgs {
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub z: Complex,
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub s: Complex,
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub a: Complex,
    /// `coffey` is the integral representation
    #[arg(long, value_enum, default_value = "series")]
    pub method: LerchMethod,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub format: FormatArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// machine-readable report
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub w1: Complex,
    #[arg(long, value_parser = complex_arg, allow_hyphen_values = true)]
    pub w2: Complex,
    #[arg(long)]
    pub k: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub re_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub re_max: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub im_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub im_max: f64,
    #[arg(long)]
    pub nx: usize,
    #[arg(long)]
    pub ny: usize,
    #[arg(long, value_enum, default_value = "direct")]
    pub method: GridMethod,
    #[arg(long, default_value_t = 0.25)]
    pub eps: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridMethod {
    Direct,
    Integral,
}

#[derive(Debug, Args)]
pub struct Em2dArgs {
    #[arg(long, value_enum)]
    pub function: Builtin,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha1: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub beta1: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha2: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub beta2: f64,
    /// seed for `poly-exp`
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    pub format: FormatArgs,
}

/// Parses `args` (including the program name) and runs the command,
/// writing everything to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            // keep clap's explanation, drop the usage block
            let message = e.to_string();
            let summary: Vec<&str> = message
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:"))
                .filter(|l| !l.is_empty())
                .collect();
            let text = summary.join(" ");
            let err = Error::InvalidArgument(text.trim_start_matches("error: ").to_string());
            let _ = output::write_json(out, &output::error_object(&err));
            return EXIT_BAD_INPUT;
        }
    };
    let result = match cli.command {
        Command::Weil(a) => cmd_weil(&a, out),
        Command::Lerch(a) => cmd_lerch(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Grid(a) => cmd_grid(&a, out),
        Command::Em2d(a) => cmd_em2d(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = output::write_json(out, &output::error_object(&e));
            exit_code(&e)
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("cannot write output: {e}"))
}

fn report_json(r: &WeilReport, breakdown: bool) -> Value {
    let mut m = Map::new();
    m.insert("method".into(), json!(r.method.name()));
    m.insert("value".into(), output::complex_with_abs(r.value));
    m.insert("err".into(), json!(r.err));
    if r.method == Method::Integral {
        m.insert("eps_used".into(), json!(r.eps_used));
        if breakdown {
            m.insert(
                "breakdown".into(),
                json!({
                    "j1": output::complex(r.j1),
                    "j2": output::complex(r.j2),
                    "j3": output::complex(r.j3),
                    "row_correction": output::complex(r.row_correction),
                }),
            );
        }
    }
    Value::Object(m)
}

fn cmd_weil(args: &WeilArgs, out: &mut dyn Write) -> Result<i32> {
    let lat = Lattice::new(args.w1, args.w2)?;
    let p = WeilParams::new(lat, args.a, args.k)?;
    let methods: &[Method] = match args.method {
        WeilMethod::Direct => &[Method::Direct],
        WeilMethod::Integral => &[Method::Integral],
        WeilMethod::Both => &[Method::Direct, Method::Integral],
    };
    let reports = methods
        .iter()
        .map(|&m| weil(&p, m, args.eps, args.tol))
        .collect::<Result<Vec<_>>>()?;

    if args.format.csv {
        let mut text = String::from("method,re_E,im_E,abs_E,err");
        if args.breakdown {
            text.push_str(",eps_used,re_j1,im_j1,re_j2,im_j2,re_j3,im_j3,re_row,im_row");
        }
        text.push('\n');
        for r in &reports {
            text.push_str(r.method.name());
            for v in [r.value.re, r.value.im, r.value.norm(), r.err] {
                text.push(',');
                text.push_str(&output::csv_num(v));
            }
            if args.breakdown {
                if r.method == Method::Integral {
                    let parts = [r.j1, r.j2, r.j3, r.row_correction];
                    text.push(',');
                    text.push_str(&output::csv_num(r.eps_used));
                    for z in parts {
                        text.push_str(&format!(",{},{}", output::csv_num(z.re), output::csv_num(z.im)));
                    }
                } else {
                    text.push_str(",,,,,,,,,");
                }
            }
            text.push('\n');
        }
        out.write_all(text.as_bytes()).map_err(io_err)?;
        return Ok(EXIT_OK);
    }

    let mut m = Map::new();
    m.insert("w1".into(), output::complex(args.w1));
    m.insert("w2".into(), output::complex(args.w2));
    m.insert("a".into(), output::complex(args.a));
    m.insert("k".into(), json!(args.k));
    m.insert("tol".into(), json!(args.tol));
    for r in &reports {
        m.insert(r.method.name().into(), report_json(r, args.breakdown));
    }
    if let [d, i] = reports.as_slice() {
        m.insert("difference".into(), output::complex_with_abs(i.value - d.value));
    }
    output::write_json(out, &Value::Object(m)).map_err(io_err)?;
    Ok(EXIT_OK)
}

fn cmd_lerch(args: &LerchArgs, out: &mut dyn Write) -> Result<i32> {
    let p = LerchParams::new(args.z, args.s, args.a)?;
    let series = matches!(args.method, LerchMethod::Series | LerchMethod::Both)
        .then(|| lerch_series(&p, args.tol))
        .transpose()?;
    let coffey = matches!(args.method, LerchMethod::Coffey | LerchMethod::Both)
        .then(|| lerch_coffey(&p, args.tol))
        .transpose()?;
    let values: Vec<(&str, Complex)> = [("series", series), ("coffey", coffey)]
        .into_iter()
        .filter_map(|(n, v)| v.map(|v| (n, v)))
        .collect();

    if args.format.csv {
        let mut text = String::from("method,re,im,abs\n");
        for (name, v) in &values {
            text.push_str(&format!(
                "{name},{},{},{}\n",
                output::csv_num(v.re),
                output::csv_num(v.im),
                output::csv_num(v.norm())
            ));
        }
        out.write_all(text.as_bytes()).map_err(io_err)?;
        return Ok(EXIT_OK);
    }
    let mut m = Map::new();
    m.insert("z".into(), output::complex(args.z));
    m.insert("s".into(), output::complex(args.s));
    m.insert("a".into(), output::complex(args.a));
    m.insert("tol".into(), json!(args.tol));
    for (name, v) in &values {
        m.insert((*name).into(), output::complex_with_abs(*v));
    }
    if let (Some(s), Some(c)) = (series, coffey) {
        m.insert("difference".into(), output::complex_with_abs(c - s));
    }
    output::write_json(out, &Value::Object(m)).map_err(io_err)?;
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {}", args.tol)));
    }
    let checks = verify::run(args.suite, args.seed, args.tol);
    let all_passed = checks.iter().all(Check::passed);
    if args.json {
        let report = json!({
            "seed": args.seed,
            "tol": args.tol,
            "passed": all_passed,
            "checks": checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        });
        output::write_json(out, &report).map_err(io_err)?;
    } else {
        let mut text = String::new();
        for c in &checks {
            text.push_str(&c.to_line());
            text.push('\n');
        }
        let failed = checks.iter().filter(|c| !c.passed()).count();
        text.push_str(&format!("{} checks, {failed} failed\n", checks.len()));
        out.write_all(text.as_bytes()).map_err(io_err)?;
    }
    Ok(if all_passed { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_grid(args: &GridArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = GridSpec {
        re_min: args.re_min,
        re_max: args.re_max,
        im_min: args.im_min,
        im_max: args.im_max,
        nx: args.nx,
        ny: args.ny,
    };
    spec.validate()?;
    let lat = Lattice::new(args.w1, args.w2)?;
    let method = match args.method {
        GridMethod::Direct => Method::Direct,
        GridMethod::Integral => Method::Integral,
    };
    let text = grid::render(&spec, lat, args.k, method, args.eps, args.tol)?;
    out.write_all(text.as_bytes()).map_err(io_err)?;
    Ok(EXIT_OK)
}

fn cmd_em2d(args: &Em2dArgs, out: &mut dyn Write) -> Result<i32> {
    let rect = Rect::new(args.alpha1, args.beta1, args.alpha2, args.beta2)?;
    let f = args.function.instantiate(&rect, args.seed);
    let b = em_sum_2d(f.as_ref(), &rect, args.tol)?;
    let brute = match brute_force_sum_2d(|x, y| f.value(x, y), &rect) {
        Ok(v) => Some(v),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    if args.format.csv {
        let mut text = String::from("term,re,im\n");
        let mut rows = vec![("i1", b.i1), ("i2", b.i2), ("i3", b.i3), ("i4", b.i4), ("total", b.total)];
        if let Some(v) = brute {
            rows.push(("brute_force", v));
        }
        for (name, z) in rows {
            text.push_str(&format!("{name},{},{}\n", output::csv_num(z.re), output::csv_num(z.im)));
        }
        out.write_all(text.as_bytes()).map_err(io_err)?;
        return Ok(EXIT_OK);
    }
    let report = json!({
        "function": args.function.name(),
        "rect": [rect.alpha1, rect.beta1, rect.alpha2, rect.beta2],
        "i1": output::complex(b.i1),
        "i2": output::complex(b.i2),
        "i3": output::complex(b.i3),
        "i4": output::complex(b.i4),
        "total": output::complex(b.total),
        "err": b.err,
        "brute_force": brute.map(output::complex),
        "difference": brute.map(|v| (b.total - v).norm()),
    });
    output::write_json(out, &report).map_err(io_err)?;
    Ok(EXIT_OK)
}
