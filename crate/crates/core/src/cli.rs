//! Command-line front end.
//!
//! Settings are resolved in the order flags, then the JSON file given by
//! `--config`, then built-in defaults. Exit codes: 0 success, 2 invalid
//! input, 3 numerical non-convergence, 4 failed experiment assertion. Every
//! non-zero exit writes one JSON object to the error stream.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::Error;
use crate::experiments::{
    blowup_experiment, default_hopf_setup, hopf_experiment, pointwise_classify, threshold_sweep,
    HopfOptions,
};
use crate::fields::shapes::InnerSet;
use crate::fields::tabulated::TabulatedField;
use crate::fields::{BallGeometry, ScalarField, SubsolutionSpec};
use crate::kernel::OperatorParams;
use crate::operator::{
    decompose_i123, evaluate_operator, evaluate_operator_derivative, finite_difference_derivative,
};
use crate::quadrature::QuadratureConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;
pub const EXIT_ASSERTION: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "fracplap",
    version,
    about = "Evaluate fractional p-Laplacians and run the regularity and boundary experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: CommandArgs,
}

#[derive(Subcommand, Debug)]
enum CommandArgs {
    /// Operator value at a point.
    Eval(Common),
    /// Partial derivative of the operator at a point.
    Deriv {
        #[command(flatten)]
        common: Common,
        /// Coordinate index of the derivative.
        #[arg(long)]
        direction: Option<usize>,
        /// Also report a central difference quotient with this step.
        #[arg(long)]
        step: Option<f64>,
    },
    /// Near, middle and far range integrals of the bump-square derivative.
    Decompose(Common),
    /// Derivative growth near the minimum of the bump-square field.
    Blowup {
        #[command(flatten)]
        common: Common,
        /// Comma-separated sample points in (0, 1/8).
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<f64>>,
    },
    /// Classification over a grid of (s, p).
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',')]
        s_list: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        p_list: Option<Vec<f64>>,
    },
    /// Barrier and subsolution construction on a ball.
    Hopf {
        #[command(flatten)]
        common: Common,
        /// Fixed beta instead of the admissible choice.
        #[arg(long)]
        beta: Option<f64>,
        /// Number of sample points near the touching point.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Compares the operator with a constant right-hand side.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        rhs: Option<f64>,
    },
}

#[derive(Args, Debug, Default, Clone)]
struct Common {
    /// Fractional order in (0, 1).
    #[arg(long)]
    s: Option<f64>,
    /// Exponent, at least 2.
    #[arg(long)]
    p: Option<f64>,
    /// Dimension: 1, 2 or 3.
    #[arg(long)]
    n: Option<usize>,
    /// bump-square, constant[:c], getoor-ball, barrier-power or table:<file.csv>.
    #[arg(long)]
    field: Option<String>,
    /// Comma-separated coordinates.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    x: Option<Vec<f64>>,
    /// Relative tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Radius past which the closed-form tail is used.
    #[arg(long)]
    tail_radius: Option<f64>,
    /// Geometric grading ratio in (0, 1).
    #[arg(long)]
    grading: Option<f64>,
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// JSON run configuration; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// The constant C in front of the integral.
    #[arg(long)]
    normalization: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Eval,
    Deriv,
    Decompose,
    Blowup,
    Sweep,
    Hopf,
    Classify,
}

/// A field given either by name or as a full descriptor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Name(String),
    Field(ScalarField),
}

/// Contents of a `--config` file. Every entry is optional.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigFile {
    pub s: Option<f64>,
    pub p: Option<f64>,
    pub n: Option<usize>,
    pub normalization: Option<f64>,
    pub field: Option<FieldSpec>,
    pub x: Option<Vec<f64>>,
    pub quadrature: Option<QuadratureConfig>,
    pub tol: Option<f64>,
    pub tail_radius: Option<f64>,
    pub grading: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub direction: Option<usize>,
    pub step: Option<f64>,
    pub grid: Option<Vec<f64>>,
    pub s_list: Option<Vec<f64>>,
    pub p_list: Option<Vec<f64>>,
    pub beta: Option<f64>,
    pub hopf: Option<HopfOptions>,
    pub geometry: Option<BallGeometry>,
    pub inner_set: Option<InnerSet>,
    pub rhs: Option<f64>,
}

/// Fully resolved settings of one run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub params: OperatorParams,
    pub field: ScalarField,
    pub x: Vec<f64>,
    pub quadrature: QuadratureConfig,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub direction: usize,
    pub step: Option<f64>,
    pub grid: Option<Vec<f64>>,
    pub s_list: Vec<f64>,
    pub p_list: Vec<f64>,
    pub beta: Option<f64>,
    pub hopf: HopfOptions,
    pub geometry: Option<BallGeometry>,
    pub inner_set: Option<InnerSet>,
    pub rhs: f64,
}

/// A failed run: exit code plus the diagnostic object.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID,
            kind: "invalid-input",
            message: message.into(),
        }
    }

    fn diagnostic(&self) -> serde_json::Value {
        json!({ "error": self.kind, "exit_code": self.code, "message": self.message })
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::InvalidParameter(_) => (EXIT_INVALID, "invalid-parameter"),
            Error::UnsupportedExponent { .. } => (EXIT_INVALID, "unsupported-exponent"),
            Error::OutOfDomain(_) => (EXIT_INVALID, "out-of-domain"),
            Error::InsufficientSmoothness { .. } => (EXIT_INVALID, "insufficient-smoothness"),
            Error::TailRadius { .. } => (EXIT_INVALID, "tail-radius"),
            Error::Geometry(_) => (EXIT_INVALID, "geometry"),
            Error::Table(_) => (EXIT_INVALID, "table"),
            Error::Io(_) => (EXIT_INVALID, "io"),
            Error::Csv(_) => (EXIT_INVALID, "csv"),
            Error::Json(_) => (EXIT_INVALID, "json"),
            Error::NotIntegrable { .. } => (EXIT_NO_CONVERGENCE, "not-integrable"),
            Error::NoConvergence(_) => (EXIT_NO_CONVERGENCE, "no-convergence"),
        };
        Self {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

/// Output of a successful run before it is written.
#[derive(Debug)]
pub struct Output {
    /// JSON document for `--format json`, and the sibling report for CSV.
    pub report: serde_json::Value,
    /// CSV header and rows for `--format csv`.
    pub table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    /// Exit code and diagnostic for runs that finished with a numerical or
    /// assertion problem.
    pub status: Option<Failure>,
}

/// Decimal rendering with 17 significant digits.
pub fn fmt_num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

fn parse_field(name: &str, n: usize, s: f64) -> Result<ScalarField, Failure> {
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    match (head, arg) {
        ("bump-square", None) => Ok(ScalarField::BumpSquare),
        ("constant", None) => Ok(ScalarField::constant(1.0)),
        ("constant", Some(c)) => c
            .parse()
            .map(ScalarField::constant)
            .map_err(|_| Failure::invalid(format!("bad constant value '{c}'"))),
        ("getoor-ball", None) => Ok(ScalarField::getoor_ball(vec![0.0; n], 1.0, s)),
        ("barrier-power", None) => Ok(ScalarField::barrier(&BallGeometry::standard(n), s)),
        ("table", Some(path)) => Ok(ScalarField::tabulated(TabulatedField::from_csv(Path::new(path))?)),
        _ => Err(Failure::invalid(format!(
            "unknown field '{name}' (expected bump-square, constant[:c], getoor-ball, barrier-power or table:<file.csv>)"
        ))),
    }
}

fn read_config(path: &Path) -> Result<ConfigFile, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::invalid(format!("bad config {}: {e}", path.display())))
}

struct Extra {
    direction: Option<usize>,
    step: Option<f64>,
    grid: Option<Vec<f64>>,
    s_list: Option<Vec<f64>>,
    p_list: Option<Vec<f64>>,
    beta: Option<f64>,
    samples: Option<usize>,
    rhs: Option<f64>,
}

fn resolve(command: Command, flags: Common, extra: Extra) -> Result<RunConfig, Failure> {
    let file = match &flags.config {
        Some(path) => read_config(path)?,
        None => ConfigFile::default(),
    };
    let hopf_defaults = (command == Command::Hopf).then(default_hopf_setup);
    let default_n = match command {
        Command::Hopf => 2,
        _ => 1,
    };
    let default_s = 0.5;
    let default_p = 2.5;
    let n = flags.n.or(file.n).unwrap_or(default_n);
    let s = flags.s.or(file.s).unwrap_or(default_s);
    let p = flags.p.or(file.p).unwrap_or(default_p);
    let normalization = flags.normalization.or(file.normalization).unwrap_or(1.0);
    let params = OperatorParams::new(n, s, p)?.with_normalization(normalization)?;

    let mut quadrature = file.quadrature.clone().unwrap_or_default();
    if let Some(t) = flags.tol.or(file.tol) {
        quadrature.rel_tol = t;
    }
    if let Some(r) = flags.tail_radius.or(file.tail_radius) {
        quadrature.tail_radius = Some(r);
    }
    if let Some(q) = flags.grading.or(file.grading) {
        quadrature.grading_ratio = q;
    }
    quadrature.validate()?;

    let field = match flags.field.map(FieldSpec::Name).or(file.field.clone()) {
        Some(FieldSpec::Name(name)) => parse_field(&name, n, s)?,
        Some(FieldSpec::Field(f)) => f,
        None => match &hopf_defaults {
            Some((_, f, _, _)) => f.clone(),
            None => ScalarField::BumpSquare,
        },
    };
    let x = flags.x.or(file.x).unwrap_or_else(|| {
        let mut x = vec![0.0; n];
        x[0] = 0.05;
        x
    });
    let hopf = {
        let mut h = file.hopf.clone().unwrap_or_default();
        if let Some(m) = extra.samples {
            h.samples = m;
        }
        h
    };
    Ok(RunConfig {
        command,
        params,
        field,
        x,
        quadrature,
        out: flags.out.or(file.out),
        format: flags.format.or(file.format).unwrap_or(match command {
            Command::Blowup | Command::Sweep | Command::Hopf => Format::Csv,
            _ => Format::Json,
        }),
        direction: extra.direction.or(file.direction).unwrap_or(0),
        step: extra.step.or(file.step),
        grid: extra.grid.or(file.grid),
        s_list: extra
            .s_list
            .or(file.s_list)
            .unwrap_or_else(|| vec![0.5, 0.8]),
        p_list: extra
            .p_list
            .or(file.p_list)
            .unwrap_or_else(|| vec![2.2, 2.5, 2.8]),
        beta: extra.beta.or(file.beta),
        hopf,
        geometry: file.geometry,
        inner_set: file.inner_set,
        rhs: extra.rhs.or(file.rhs).unwrap_or(0.0),
    })
}

fn not_converged(what: &str) -> Failure {
    Failure {
        code: EXIT_NO_CONVERGENCE,
        kind: "no-convergence",
        message: format!("{what} did not reach the requested tolerance"),
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<serde_json::Value, Failure> {
    serde_json::to_value(v).map_err(|e| Failure::from(Error::from(e)))
}

/// Runs the resolved configuration and returns the documents to write.
pub fn run(cfg: &RunConfig) -> Result<Output, Failure> {
    let q = &cfg.quadrature;
    let params = &cfg.params;
    match cfg.command {
        Command::Eval => {
            let r = evaluate_operator(&cfg.field, &cfg.x, params, q)?;
            let row = vec![
                cfg.x
                    .iter()
                    .map(|v| fmt_num(*v))
                    .collect::<Vec<_>>()
                    .join(" "),
                fmt_num(r.value),
                fmt_num(r.error_estimate),
                r.converged.to_string(),
            ];
            Ok(Output {
                report: to_json(&r)?,
                table: Some((vec!["x", "value", "err_estimate", "converged"], vec![row])),
                status: (!r.converged).then(|| not_converged("operator evaluation")),
            })
        }
        Command::Deriv => {
            let outcome =
                evaluate_operator_derivative(&cfg.field, &cfg.x, cfg.direction, params, q)?;
            let fd = match cfg.step {
                Some(h) => Some(finite_difference_derivative(
                    &cfg.field,
                    &cfg.x,
                    cfg.direction,
                    params,
                    q,
                    h,
                )?),
                None => None,
            };
            let (value, err, converged) = match outcome.result() {
                Some(r) => (r.value, r.error_estimate, r.converged),
                None => (f64::NAN, f64::INFINITY, false),
            };
            let report = json!({
                "x": cfg.x,
                "direction": cfg.direction,
                "outcome": to_json(&outcome)?,
                "finite_difference": fd,
            });
            let row = vec![
                cfg.x
                    .iter()
                    .map(|v| fmt_num(*v))
                    .collect::<Vec<_>>()
                    .join(" "),
                fmt_num(value),
                fmt_num(err),
                converged.to_string(),
            ];
            Ok(Output {
                report,
                table: Some((
                    vec!["x", "deriv_value", "err_estimate", "converged"],
                    vec![row],
                )),
                status: (!converged).then(|| not_converged("derivative evaluation")),
            })
        }
        Command::Decompose => {
            if cfg.field != ScalarField::BumpSquare || params.n != 1 {
                return Err(Failure::invalid(
                    "decompose works on the bump-square field with n = 1",
                ));
            }
            if cfg.x.len() != 1 {
                return Err(Failure::invalid("decompose needs a single coordinate x"));
            }
            let d = decompose_i123(cfg.x[0], params, q)?;
            let row = vec![
                fmt_num(d.x),
                fmt_num(d.i1.value),
                fmt_num(d.i2.value),
                fmt_num(d.i3.value),
                fmt_num(d.i3_closed_form),
                fmt_num(d.derivative.value),
                fmt_num(d.derivative.error_estimate),
                d.derivative.converged.to_string(),
            ];
            let converged = d.derivative.converged;
            Ok(Output {
                report: to_json(&d)?,
                table: Some((
                    vec![
                        "x",
                        "i1",
                        "i2",
                        "i3",
                        "i3_closed_form",
                        "deriv_value",
                        "err_estimate",
                        "converged",
                    ],
                    vec![row],
                )),
                status: (!converged).then(|| not_converged("range decomposition")),
            })
        }
        Command::Blowup => {
            let rep = blowup_experiment(params, cfg.grid.as_deref(), q)?;
            let rows = rep
                .samples
                .iter()
                .map(|s| {
                    vec![
                        fmt_num(s.x),
                        fmt_num(s.deriv_value),
                        fmt_num(s.err_estimate),
                        s.converged.to_string(),
                    ]
                })
                .collect();
            let converged = rep.samples.iter().all(|s| s.converged);
            Ok(Output {
                report: to_json(&rep)?,
                table: Some((vec!["x", "deriv_value", "err_estimate", "converged"], rows)),
                status: (!converged).then(|| not_converged("a derivative sample")),
            })
        }
        Command::Sweep => {
            let rows = threshold_sweep(&cfg.s_list, &cfg.p_list, q)?;
            let table = rows
                .iter()
                .map(|r| {
                    vec![
                        fmt_num(r.s),
                        fmt_num(r.p),
                        fmt_num(r.threshold),
                        r.classification.as_str().to_string(),
                        fmt_num(r.fitted_exponent),
                    ]
                })
                .collect();
            Ok(Output {
                report: to_json(&rows)?,
                table: Some((
                    vec!["s", "p", "threshold", "classification", "fitted_exponent"],
                    table,
                )),
                status: None,
            })
        }
        Command::Hopf => {
            let (default_geometry, _, default_spec, _) = default_hopf_setup();
            let geometry = cfg.geometry.clone().unwrap_or_else(|| {
                if params.n == 2 {
                    default_geometry
                } else {
                    BallGeometry::standard(params.n)
                }
            });
            let inner_set = match &cfg.inner_set {
                Some(set) => set.clone(),
                None if params.n == 2 => default_spec.inner_set,
                None => {
                    return Err(Failure::invalid(
                        "hopf needs an inner_set in the config file when n != 2",
                    ))
                }
            };
            let spec = SubsolutionSpec {
                beta: cfg.beta,
                inner_set,
                reference: cfg.field.clone(),
            };
            let rep = hopf_experiment(&geometry, &cfg.field, &spec, params, q, &cfg.hopf)?;
            let rows = rep
                .ratio_scan
                .iter()
                .map(|r| vec![fmt_num(r.t), fmt_num(r.u), fmt_num(r.d), fmt_num(r.ratio)])
                .collect();
            let status = if !rep.passed() {
                Some(Failure {
                    code: EXIT_ASSERTION,
                    kind: "assertion-failed",
                    message: format!(
                        "subsolution check failed: max operator {:e}, ratio min {:e}, beta {:e}, offending points {:?}",
                        rep.subsolution_max_operator, rep.ratio_min, rep.beta, rep.violations
                    ),
                })
            } else if rep.samples.iter().any(|s| !s.converged) {
                Some(not_converged("an operator sample"))
            } else {
                None
            };
            Ok(Output {
                report: to_json(&rep)?,
                table: Some((vec!["t", "u", "d", "ratio"], rows)),
                status,
            })
        }
        Command::Classify => {
            let rhs = cfg.rhs;
            let rep = pointwise_classify(&cfg.field, |_| rhs, &cfg.x, params, q)?;
            let row = vec![
                cfg.x
                    .iter()
                    .map(|v| fmt_num(*v))
                    .collect::<Vec<_>>()
                    .join(" "),
                fmt_num(rep.operator_value),
                fmt_num(rep.rhs),
                serde_json::to_value(rep.class)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default(),
            ];
            Ok(Output {
                report: to_json(&rep)?,
                table: Some((vec!["x", "value", "rhs", "class"], vec![row])),
                status: None,
            })
        }
    }
}

fn render_csv(header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::from(Error::from(e));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    w.into_inner().map_err(|e| Failure::invalid(e.to_string()))
}

fn render_json(v: &serde_json::Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).unwrap_or_default();
    s.push('\n');
    s.into_bytes()
}

fn write_outputs(cfg: &RunConfig, output: &Output, stdout: &mut dyn Write) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::from(Error::from(e));
    let bytes = match (cfg.format, &output.table) {
        (Format::Csv, Some((header, rows))) => render_csv(header, rows)?,
        _ => render_json(&output.report),
    };
    match &cfg.out {
        Some(path) => {
            fs::write(path, &bytes).map_err(io)?;
            if cfg.format == Format::Csv {
                fs::write(path.with_extension("json"), render_json(&output.report)).map_err(io)?;
            }
        }
        None => stdout.write_all(&bytes).map_err(io)?,
    }
    Ok(())
}

fn parse(args: Vec<OsString>) -> Result<(Command, Common, Extra), clap::Error> {
    let cli = Cli::try_parse_from(args)?;
    let none = Extra {
        direction: None,
        step: None,
        grid: None,
        s_list: None,
        p_list: None,
        beta: None,
        samples: None,
        rhs: None,
    };
    Ok(match cli.command {
        CommandArgs::Eval(c) => (Command::Eval, c, none),
        CommandArgs::Deriv {
            common,
            direction,
            step,
        } => (
            Command::Deriv,
            common,
            Extra {
                direction,
                step,
                ..none
            },
        ),
        CommandArgs::Decompose(c) => (Command::Decompose, c, none),
        CommandArgs::Blowup { common, grid } => (Command::Blowup, common, Extra { grid, ..none }),
        CommandArgs::Sweep {
            common,
            s_list,
            p_list,
        } => (
            Command::Sweep,
            common,
            Extra {
                s_list,
                p_list,
                ..none
            },
        ),
        CommandArgs::Hopf {
            common,
            beta,
            samples,
        } => (
            Command::Hopf,
            common,
            Extra {
                beta,
                samples,
                ..none
            },
        ),
        CommandArgs::Classify { common, rhs } => (Command::Classify, common, Extra { rhs, ..none }),
    })
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Results go to `stdout` or the `--out` file, diagnostics to
/// `stderr`.
pub fn execute<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let (command, common, extra) = match parse(args) {
        Ok(parsed) => parsed,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return EXIT_OK;
            }
            let failure = Failure {
                code: EXIT_INVALID,
                kind: "usage",
                message: e.to_string().trim().to_string(),
            };
            let _ = writeln!(stderr, "{}", failure.diagnostic());
            return EXIT_INVALID;
        }
    };
    let result = resolve(command, common, extra).and_then(|cfg| {
        let output = run(&cfg)?;
        write_outputs(&cfg, &output, stdout)?;
        Ok(output.status)
    });
    let failure = match result {
        Ok(None) => return EXIT_OK,
        Ok(Some(f)) | Err(f) => f,
    };
    let _ = writeln!(stderr, "{}", failure.diagnostic());
    failure.code
}

/// Entry point of the `fracplap` binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    execute(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
