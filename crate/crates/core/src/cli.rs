// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure or runtime error, 2 usage
//! error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cremona::{
    bertini, cg_family, cmap, geiser, jonquieres, js_family, quadratic, shape_action, sturm,
    CharMatrix,
};
use crate::error::{Error, Result};
use crate::families::{self, Family};
use crate::lattice::DivisorClass;
use crate::report::{
    build_verify_report, parallel_sweep, pencil_orbit, render_defernex, render_matrix,
    render_orbit, render_verify, render_wonderful, Format, HomaloidalCheck, MatrixKind, Span,
    DISPLAY_NOTE,
};
use crate::verify::{wonderful_report, GoodFamily};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const OUTPUT_DIR_ENV: &str = "MORI_OUTPUT_DIR";

#[derive(Parser, Debug)]
#[command(
    name = "mori",
    version,
    about = "Exact Cremona actions, limit rays and good-ray certificates on plane blowups",
    after_help = "Ranges are inclusive: `--n 2..5` means n = 2, 3, 4, 5; a single value is also accepted.\n\
                  Relative --output paths are resolved against $MORI_OUTPUT_DIR when it is set.\n\
                  Exit codes: 0 success, 1 verification failure, 2 usage error."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Pretty)]
    pub format: FormatArg,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Digits after the decimal point in display-only renderings.
    #[arg(long, default_value_t = 12)]
    pub digits: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a characteristic matrix (generators and iterable families).
    Matrix {
        #[arg(long, value_enum, ignore_case = true)]
        kind: MatrixArg,
        /// Family parameter (required for J, C, JS, CG, A, Bn).
        #[arg(long)]
        n: Option<u32>,
        /// Also print the homaloidal net and compare it with its closed form.
        #[arg(long)]
        check_homaloidal: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Orbit of the pencil of lines through the first point.
    Orbit {
        #[arg(long, value_enum)]
        family: OrbitFamily,
        #[arg(long)]
        n: u32,
        /// Last iterate.
        #[arg(long, default_value_t = 8)]
        k: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Limit ray of a family with its exact certificates.
    Eigenray {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exact pairing of a ray with K, F or itself.
    Pair {
        /// Wodd:N, Weven:N, Wplus_even:N, Wplus_odd:N, Wplus_sq4:N,
        /// Wplus_sq2:N, H:S, K:S, F:S, Nagata:S or @FILE.json.
        #[arg(long)]
        ray: String,
        #[arg(long = "with", value_enum)]
        with: PairWith,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Certify good rays over ranges of n and k.
    Verify {
        #[arg(long, value_enum)]
        family: VerifyFamily,
        /// Range of n [default: smallest valid n..10].
        #[arg(long)]
        n: Option<Span>,
        /// Range of k.
        #[arg(long, default_value = "1..8")]
        k: Span,
        /// Worker threads.
        #[arg(long, default_value_t = default_jobs(), value_parser = clap::value_parser!(u32).range(1..))]
        jobs: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// De Fernex sign table of a family over a range of n.
    Defernex {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: Span,
        #[arg(long, default_value_t = default_jobs(), value_parser = clap::value_parser!(u32).range(1..))]
        jobs: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn default_jobs() -> u32 {
    std::thread::available_parallelism().map_or(1, |n| n.get() as u32)
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormatArg {
    Pretty,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Pretty => Format::Pretty,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixArg {
    #[value(name = "Q")]
    Q,
    #[value(name = "S")]
    S,
    #[value(name = "G")]
    G,
    #[value(name = "B")]
    B,
    #[value(name = "J")]
    J,
    #[value(name = "C")]
    C,
    #[value(name = "JS")]
    Js,
    #[value(name = "CG")]
    Cg,
    #[value(name = "A")]
    A,
    #[value(name = "Bn")]
    Bn,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitFamily {
    Odd,
    Even,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyArg {
    Odd,
    Even,
    #[value(name = "even_plus")]
    EvenPlus,
    #[value(name = "odd_plus")]
    OddPlus,
    Sq4,
    Sq2,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Odd => Family::Odd,
            FamilyArg::Even => Family::Even,
            FamilyArg::EvenPlus => Family::EvenPlus,
            FamilyArg::OddPlus => Family::OddPlus,
            FamilyArg::Sq4 => Family::Sq4,
            FamilyArg::Sq2 => Family::Sq2,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyFamily {
    Even,
    Odd,
    Sq4,
    Sq2,
}

impl From<VerifyFamily> for GoodFamily {
    fn from(f: VerifyFamily) -> GoodFamily {
        match f {
            VerifyFamily::Even => GoodFamily::Even,
            VerifyFamily::Odd => GoodFamily::Odd,
            VerifyFamily::Sq4 => GoodFamily::Sq4,
            VerifyFamily::Sq2 => GoodFamily::Sq2,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairWith {
    #[value(name = "K", alias = "k")]
    K,
    #[value(name = "F", alias = "f")]
    F,
    #[value(name = "self")]
    SelfPair,
}

/// Distinguishes usage problems (exit 2) from failed work (exit 1).
enum Outcome {
    Usage(String),
    Failed(String),
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Outcome {
        match e {
            Error::Parse(_) | Error::Domain(_) | Error::IndexOutOfRange { .. } => {
                Outcome::Usage(e.to_string())
            }
            other => Outcome::Failed(other.to_string()),
        }
    }
}

fn usage(msg: impl Into<String>) -> Outcome {
    Outcome::Usage(msg.into())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    match execute(&cli.command) {
        Ok((text, out, success)) => match emit(&text, out.output.as_deref(), stdout) {
            Ok(Some(path)) => {
                let _ = writeln!(stderr, "wrote {}", path.display());
                if success {
                    EXIT_OK
                } else {
                    EXIT_FAILED
                }
            }
            Ok(None) => {
                if success {
                    EXIT_OK
                } else {
                    EXIT_FAILED
                }
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                EXIT_FAILED
            }
        },
        Err(Outcome::Usage(msg)) => {
            let _ = writeln!(stderr, "usage error: {msg}");
            EXIT_USAGE
        }
        Err(Outcome::Failed(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_FAILED
        }
    }
}

fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if path.is_relative() && !dir.is_empty() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn emit(
    text: &str,
    output: Option<&Path>,
    stdout: &mut dyn Write,
) -> std::io::Result<Option<PathBuf>> {
    match output {
        Some(p) => {
            let p = resolve_output(p);
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&p, text)?;
            Ok(Some(p))
        }
        None => {
            stdout.write_all(text.as_bytes())?;
            Ok(None)
        }
    }
}

type Executed<'a> = std::result::Result<(String, &'a OutputArgs, bool), Outcome>;

fn execute(cmd: &Command) -> Executed<'_> {
    match cmd {
        Command::Matrix {
            kind,
            n,
            check_homaloidal,
            out,
        } => {
            let (text, ok) = cmd_matrix(*kind, *n, *check_homaloidal, out)?;
            Ok((text, out, ok))
        }
        Command::Orbit { family, n, k, out } => {
            let fam = match family {
                OrbitFamily::Odd => Family::Odd,
                OrbitFamily::Even => Family::Even,
            };
            let o = pencil_orbit(fam, *n, *k)?;
            Ok((render_orbit(fam, *n, &o, out.format.into())?, out, true))
        }
        Command::Eigenray { family, n, out } => {
            let fam: Family = (*family).into();
            fam.check_n(*n)?;
            let r = wonderful_report(fam, *n)?;
            let ok = r.is_consistent();
            Ok((
                render_wonderful(&r, out.format.into(), out.digits)?,
                out,
                ok,
            ))
        }
        Command::Pair { ray, with, out } => Ok((cmd_pair(ray, *with, out)?, out, true)),
        Command::Verify {
            family,
            n,
            k,
            jobs,
            out,
        } => {
            let fam: GoodFamily = (*family).into();
            let n = n.unwrap_or(Span {
                lo: fam.min_n(),
                hi: 10.max(fam.min_n()),
            });
            if n.lo < fam.min_n() {
                return Err(usage(format!("family {fam} requires n >= {}", fam.min_n())));
            }
            if k.lo < 1 {
                return Err(usage("k >= 1 required"));
            }
            let report = build_verify_report(fam, n, *k, *jobs as usize, out.digits)?;
            let ok = report.all_good;
            Ok((render_verify(&report, out.format.into())?, out, ok))
        }
        Command::Defernex {
            family,
            n,
            jobs,
            out,
        } => {
            let fam: Family = (*family).into();
            if n.lo < fam.min_n() {
                return Err(usage(format!("family {fam} requires n >= {}", fam.min_n())));
            }
            let ns: Vec<u32> = n.iter().collect();
            let t = parallel_sweep(fam, &ns, *jobs as usize, out.digits)?;
            let ok = t.sq2_bounds.iter().all(|b| b.holds());
            Ok((render_defernex(&t, out.format.into())?, out, ok))
        }
    }
}

fn need_n(kind: MatrixArg, n: Option<u32>) -> std::result::Result<u32, Outcome> {
    match n {
        Some(n) if n >= 1 => Ok(n),
        Some(_) => Err(usage(format!("--kind {kind:?} requires n >= 1"))),
        None => Err(usage(format!("--kind {kind:?} requires --n"))),
    }
}

fn cmd_matrix(
    kind: MatrixArg,
    n: Option<u32>,
    check: bool,
    out: &OutputArgs,
) -> std::result::Result<(String, bool), Outcome> {
    let range = |a: usize| (0..a).collect::<Vec<usize>>();
    let (name, n_used, m, expected): (&str, Option<u32>, CharMatrix, DivisorClass) = match kind {
        MatrixArg::Q => (
            "Q",
            None,
            quadratic([0, 1, 2], 3)?,
            DivisorClass::from_ints(2, &[1; 3]),
        ),
        MatrixArg::S => (
            "S",
            None,
            sturm([0, 1, 2, 3, 4, 5], 6)?,
            DivisorClass::from_ints(5, &[2; 6]),
        ),
        MatrixArg::G => (
            "G",
            None,
            geiser([0, 1, 2, 3, 4, 5, 6], 7)?,
            DivisorClass::from_ints(8, &[3; 7]),
        ),
        MatrixArg::B => (
            "B",
            None,
            bertini([0, 1, 2, 3, 4, 5, 6, 7], 8)?,
            DivisorClass::from_ints(17, &[6; 8]),
        ),
        MatrixArg::J => {
            let n = need_n(kind, n)?;
            let s = 2 * n as usize + 1;
            let mut mults = vec![n as i64];
            mults.extend(std::iter::repeat_n(1, 2 * n as usize));
            (
                "J",
                Some(n),
                jonquieres(n, &range(s), s)?,
                DivisorClass::from_ints(n as i64 + 1, &mults),
            )
        }
        MatrixArg::C => {
            let n = need_n(kind, n)?;
            let s = 2 * n as usize + 2;
            let nn = n as i64;
            let mut mults = vec![nn * nn - nn];
            mults.extend(std::iter::repeat_n(nn, s - 1));
            (
                "C",
                Some(n),
                cmap(n, &range(s), s)?,
                DivisorClass::from_ints(nn * nn + 1, &mults),
            )
        }
        MatrixArg::Js | MatrixArg::A => {
            let n = need_n(kind, n)?;
            ("JS", Some(n), js_family(n)?, families::js_homaloidal(n))
        }
        MatrixArg::Cg | MatrixArg::Bn => {
            let n = need_n(kind, n)?;
            ("CG", Some(n), cg_family(n)?, families::cg_homaloidal(n))
        }
    };
    m.validate()
        .map_err(|e| Outcome::Failed(format!("{name} failed validation: {e}")))?;
    let homaloidal = check.then(|| {
        let h = m.homaloidal();
        HomaloidalCheck {
            matches: h == expected,
            homaloidal: h,
            expected: Some(expected.clone()),
        }
    });
    let ok = homaloidal.as_ref().is_none_or(|h| h.matches);
    let text = match kind {
        MatrixArg::A | MatrixArg::Bn => {
            let n = n_used.expect("family");
            let shape = if kind == MatrixArg::A {
                families::odd_shape(n)
            } else {
                families::even_shape(n)
            };
            let sm = shape_action(&m, &shape)?;
            let label = if kind == MatrixArg::A { "A" } else { "Bn" };
            render_matrix(
                label,
                n_used,
                MatrixKind::Shape(&sm),
                homaloidal,
                out.format.into(),
            )?
        }
        _ => render_matrix(
            name,
            n_used,
            MatrixKind::Char(&m),
            homaloidal,
            out.format.into(),
        )?,
    };
    Ok((text, ok))
}

/// Parses a ray specification into `(label, class)`.
pub fn parse_ray_spec(spec: &str) -> Result<(String, DivisorClass)> {
    if let Some(path) = spec.strip_prefix('@') {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
        let class: DivisorClass =
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
        return Ok((path.to_string(), class));
    }
    let (name, arg) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("ray spec '{spec}' must look like NAME:N")))?;
    let v: u32 = arg
        .parse()
        .map_err(|_| Error::Parse(format!("bad parameter in ray spec '{spec}'")))?;
    let family = |f: Family| -> Result<(String, DivisorClass)> {
        Ok((format!("{name}({v})"), f.closed_form(v)?))
    };
    let s = v as usize;
    match name {
        "Wodd" => family(Family::Odd),
        "Weven" => family(Family::Even),
        "Wplus_even" => family(Family::EvenPlus),
        "Wplus_odd" => family(Family::OddPlus),
        "Wplus_sq4" => family(Family::Sq4),
        "Wplus_sq2" => family(Family::Sq2),
        "H" => Ok((format!("H_{s}"), DivisorClass::line(s))),
        "K" => Ok((format!("K_{s}"), DivisorClass::canonical(s))),
        "F" if s >= 1 => Ok((format!("F_{s}"), DivisorClass::defernex(s))),
        "Nagata" => Ok((format!("N_{s}"), DivisorClass::nagata(s))),
        _ => Err(Error::Parse(format!("unknown ray '{name}'"))),
    }
}

#[derive(serde::Serialize)]
struct PairJson {
    ray: String,
    class: DivisorClass,
    with: String,
    value: serde_json::Value,
    exact: String,
    sign: i8,
    display_only: String,
    note: &'static str,
}

fn cmd_pair(spec: &str, with: PairWith, out: &OutputArgs) -> std::result::Result<String, Outcome> {
    let (label, class) = parse_ray_spec(spec)?;
    let s = class.s();
    let (other, value, exact, sign, display) = match with {
        PairWith::K => {
            let v = class.canonical_pairing();
            (
                format!("K_{s}"),
                serde_json::to_value(&v),
                v.to_string(),
                v.signum(),
                v.to_decimal(out.digits),
            )
        }
        PairWith::SelfPair => {
            let v = class.self_intersection();
            (
                label.clone(),
                serde_json::to_value(&v),
                v.to_string(),
                v.signum(),
                v.to_decimal(out.digits),
            )
        }
        PairWith::F => {
            let v = class.defernex_pairing()?;
            (
                format!("F_{s}"),
                serde_json::to_value(&v),
                v.to_string(),
                v.signum(),
                v.to_decimal(out.digits),
            )
        }
    };
    let value = value.map_err(|e| Outcome::Failed(e.to_string()))?;
    let sign_word = match sign {
        x if x < 0 => "negative",
        0 => "zero",
        _ => "positive",
    };
    Ok(match out.format {
        FormatArg::Json => {
            let mut t = serde_json::to_string_pretty(&PairJson {
                ray: label,
                class,
                with: other,
                value,
                exact,
                sign,
                display_only: display,
                note: DISPLAY_NOTE,
            })
            .map_err(|e| Outcome::Failed(e.to_string()))?;
            t.push('\n');
            t
        }
        FormatArg::Csv => format!(
            "ray,with,exact,sign,display_only\n{label},{other},\"{exact}\",{sign},{display}\n"
        ),
        FormatArg::Pretty => format!(
            "{label} = {class}\n{label} . {other} = {exact}\nsign: {sign_word}\n~ {display} (display only)\n"
        ),
    })
}
