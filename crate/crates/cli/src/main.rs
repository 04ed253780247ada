mod config;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use wrightml::analysis::{default_grid, shape_grid};
use wrightml::critical::rho_curve_csv;
use wrightml::report::num;
use wrightml::{
    count_inflections, count_zeros, logconcavity_scan, mellin_moment, ml_derivative, ml_eval,
    msu_classify, reciprocal_convexity_grid, reciprocal_convexity_un, rho_curve, solve_alpha_star,
    solve_alpha_star_beta, turan_check, wright, wright_eval, AdmissiblePair, DensityModel,
    EntropyGen, Error, EvalResult, GridSpec, HalfLine, MlParams, ScanReport, Verdict,
    WrightParams,
};

use config::Config;

const USAGE: u8 = 2;
const NUMERIC: u8 = 3;
const CHECK_FAILED: u8 = 4;

#[derive(Parser)]
#[command(
    name = "wrightml",
    version,
    about = "Wright and Mittag-Leffler functions, the M_{alpha,beta} distributions and their shape properties",
    after_help = "Numbers are printed with 17 significant digits. Exit status: 0 success, \
                  2 usage error, 3 numerical error, 4 a check failed."
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write results to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// TOML file with defaults for --format, --seed and the grid flags
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// E_{alpha,beta}(z) or its n-th derivative
    EvalMl {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true)]
        z: f64,
        /// Derivative order, 0 to 4
        #[arg(long, default_value_t = 0)]
        n: u8,
    },
    /// phi(rho, beta, z), or the Laplace identity at --t
    EvalWright {
        #[arg(long, allow_negative_numbers = true)]
        rho: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true, required_unless_present = "t")]
        z: Option<f64>,
        /// Compare int e^{-tx} phi(rho, beta, -x) dx with E_{-rho, beta - rho}(-t)
        #[arg(long, conflicts_with = "z")]
        t: Option<f64>,
    },
    /// Density of M_{alpha,beta} at --x, on a grid, or its moment of order --s
    Density {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        x: Option<f64>,
        /// Mellin moment E[M^s]
        #[arg(long, conflicts_with = "x", allow_negative_numbers = true)]
        s: Option<f64>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Distribution function of M_{alpha,beta}
    Cdf {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        x: f64,
    },
    /// Draws from M_{alpha,beta}
    Sample {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        /// Random seed [default: 0]
        #[arg(long)]
        seed: Option<u64>,
    },
    /// The critical parameter alpha*, or alpha*(beta) with --beta
    CriticalAlpha {
        #[arg(long)]
        beta: Option<f64>,
    },
    /// rho(alpha) on an n-point grid of (0, 1)
    RhoCurve {
        #[arg(long, default_value_t = 1000)]
        n: usize,
    },
    /// Density and its first two derivatives on a grid
    Scan {
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Certified zeros of x -> phi(rho, beta, -x) on (0, --x]
    Zeros {
        #[arg(long, allow_negative_numbers = true)]
        rho: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        /// End of the scan [default: where the function is negligible]
        #[arg(long)]
        x: Option<f64>,
    },
    /// Entropies of the probability vectors in a CSV file, or g at --x
    Entropy {
        #[arg(long)]
        alpha: f64,
        /// [default: 1 - alpha]
        #[arg(long)]
        beta: Option<f64>,
        /// CSV file, one probability vector per row
        #[arg(long, required_unless_present = "x")]
        probs: Option<PathBuf>,
        #[arg(long, conflicts_with = "probs")]
        x: Option<f64>,
    },
    /// Verify a shape property; exits with 4 when it fails
    Check {
        #[arg(value_enum)]
        property: CheckKind,
        #[arg(long)]
        alpha: f64,
        /// [default: 1 - alpha, or 1 for recip-convexity]
        #[arg(long)]
        beta: Option<f64>,
        /// Sequence length for recip-convexity --sequence, grid size for entropy-concavity
        #[arg(long)]
        n: Option<usize>,
        /// recip-convexity on the negative half-line
        #[arg(long)]
        negative: bool,
        /// recip-convexity through the coefficient sequence u_n
        #[arg(long, conflicts_with = "negative")]
        sequence: bool,
        #[command(flatten)]
        grid: GridArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Logconcavity,
    Turan,
    RecipConvexity,
    Msu,
    Inflections,
    EntropyConcavity,
}

#[derive(Args)]
struct Pair {
    #[arg(long)]
    alpha: f64,
    /// [default: 1 - alpha]
    #[arg(long)]
    beta: Option<f64>,
}

impl Pair {
    fn admissible(&self) -> Result<AdmissiblePair, Failure> {
        Ok(AdmissiblePair::new(self.alpha, self.beta.unwrap_or(1.0 - self.alpha))?)
    }
}

#[derive(Args)]
struct GridArgs {
    #[arg(long)]
    grid_min: Option<f64>,
    #[arg(long)]
    grid_max: Option<f64>,
    #[arg(long)]
    grid_n: Option<usize>,
}

impl GridArgs {
    /// The default grid with any flag or config value laid over it; an
    /// explicit range switches to linear spacing.
    fn resolve(&self, cfg: &Config, default: GridSpec) -> Result<GridSpec, Failure> {
        let min = self.grid_min.or(cfg.grid.min);
        let max = self.grid_max.or(cfg.grid.max);
        let n = self.grid_n.or(cfg.grid.n).unwrap_or(default.n);
        let g = if min.is_some() || max.is_some() {
            GridSpec::linear(min.unwrap_or(default.xmin), max.unwrap_or(default.xmax), n)
        } else {
            GridSpec { n, ..default }
        };
        g.validate()?;
        Ok(g)
    }
}

enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::InvalidDistribution(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

struct Output {
    body: String,
    failed: bool,
}

impl Output {
    fn ok(body: String) -> Self {
        Output {
            body,
            failed: false,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match &cli.config {
        Some(p) => match Config::load(p) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(USAGE);
            }
        },
        None => Config::default(),
    };
    let format = cli.format.or(cfg.format).unwrap_or(Format::Text);
    let out = match run(cli.command, &cfg, format) {
        Ok(o) => o,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(USAGE);
        }
        Err(Failure::Numeric(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(NUMERIC);
        }
    };
    if let Err(e) = emit(cli.out.as_deref(), &out.body) {
        eprintln!("error: {e}");
        return ExitCode::from(USAGE);
    }
    if out.failed {
        ExitCode::from(CHECK_FAILED)
    } else {
        ExitCode::SUCCESS
    }
}

fn emit(path: Option<&Path>, body: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, body).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

// a one-row table: CSV with a header, or aligned `name = value` lines
fn record(format: Format, fields: &[(&str, String)]) -> String {
    match format {
        Format::Csv => {
            let names: Vec<&str> = fields.iter().map(|f| f.0).collect();
            let values: Vec<&str> = fields.iter().map(|f| f.1.as_str()).collect();
            format!("{}\n{}\n", names.join(","), values.join(","))
        }
        Format::Text => fields.iter().fold(String::new(), |mut s, (k, v)| {
            let _ = writeln!(s, "{k} = {v}");
            s
        }),
    }
}

fn table(format: Format, header: &[&str], rows: &[Vec<f64>]) -> String {
    let sep = if format == Format::Csv { "," } else { " " };
    let mut s = header.join(sep) + "\n";
    for r in rows {
        let cells: Vec<String> = r.iter().map(|v| num(*v)).collect();
        s += &cells.join(sep);
        s.push('\n');
    }
    s
}

fn eval_fields(r: &EvalResult) -> [(&'static str, String); 3] {
    [
        ("value", num(r.value)),
        ("abs_err", num(r.abs_err)),
        ("method", r.method.to_string()),
    ]
}

fn run(cmd: Command, cfg: &Config, format: Format) -> Result<Output, Failure> {
    let body = match cmd {
        Command::EvalMl { alpha, beta, z, n } => {
            let p = MlParams::new(alpha, beta)?;
            let r = if n == 0 {
                ml_eval(p, z)?
            } else {
                ml_derivative(p, z, n)?
            };
            record(format, &eval_fields(&r))
        }
        Command::EvalWright { rho, beta, z, t } => {
            let p = WrightParams::new(rho, beta)?;
            match (z, t) {
                (_, Some(t)) => {
                    let (lhs, rhs) = wright::laplace_identity_check(p, t)?;
                    record(
                        format,
                        &[("laplace", num(lhs)), ("ml", num(rhs)), ("difference", num(lhs - rhs))],
                    )
                }
                (Some(z), None) => record(format, &eval_fields(&wright_eval(p, z)?)),
                (None, None) => return Err(Failure::Usage("one of --z or --t is required".into())),
            }
        }
        Command::Density { pair, x, s, grid } => {
            let p = pair.admissible()?;
            if let Some(s) = s {
                record(format, &[("s", num(s)), ("moment", num(mellin_moment(p, s)?))])
            } else {
                let m = DensityModel::new(p)?;
                match x {
                    Some(x) => record(format, &[("x", num(x)), ("density", num(m.density(x)?))]),
                    None => {
                        let g = grid.resolve(cfg, default_grid(p)?)?;
                        let rows = g
                            .points()
                            .into_iter()
                            .map(|x| Ok(vec![x, m.density(x)?]))
                            .collect::<Result<Vec<_>, Error>>()?;
                        table(format, &["x", "density"], &rows)
                    }
                }
            }
        }
        Command::Cdf { pair, x } => {
            let m = DensityModel::new(pair.admissible()?)?;
            record(format, &[("x", num(x)), ("cdf", num(m.cdf(x)?))])
        }
        Command::Sample { pair, n, seed } => {
            let m = DensityModel::new(pair.admissible()?)?;
            let xs = m.sample(n, seed.or(cfg.seed).unwrap_or(0))?;
            let rows: Vec<Vec<f64>> = xs.into_iter().map(|x| vec![x]).collect();
            table(format, &["x"], &rows)
        }
        Command::CriticalAlpha { beta } => {
            let r = match beta {
                Some(b) => solve_alpha_star_beta(b)?,
                None => solve_alpha_star()?,
            };
            let mut fields = vec![("alpha_star", num(r.alpha_star))];
            if let Some(b) = beta {
                fields.insert(0, ("beta", num(b)));
            }
            fields.push(("residual", num(r.residual)));
            fields.push(("by_convention", r.by_convention.to_string()));
            record(format, &fields)
        }
        Command::RhoCurve { n } => {
            let rows = rho_curve(n)?;
            match format {
                Format::Csv => rho_curve_csv(&rows),
                Format::Text => {
                    let rows: Vec<Vec<f64>> = rows.into_iter().map(|(a, r)| vec![a, r]).collect();
                    table(format, &["alpha", "rho"], &rows)
                }
            }
        }
        Command::Scan { pair, grid } => {
            let p = pair.admissible()?;
            let m = DensityModel::new(p)?;
            let g = grid.resolve(cfg, default_grid(p)?)?;
            let rows = g
                .points()
                .into_iter()
                .map(|x| Ok(vec![x, m.density(x)?, m.derivative(x, 1)?, m.derivative(x, 2)?]))
                .collect::<Result<Vec<_>, Error>>()?;
            table(format, &["x", "density", "d1", "d2"], &rows)
        }
        Command::Zeros { rho, beta, x } => {
            let z = count_zeros(rho, beta, x)?;
            match format {
                Format::Csv => z.to_csv(),
                Format::Text => z.to_text(),
            }
        }
        Command::Entropy { alpha, beta, probs, x } => {
            let g = match beta {
                Some(b) => EntropyGen::with_beta(alpha, b)?,
                None => EntropyGen::new(alpha)?,
            };
            match (x, probs) {
                (Some(x), _) => record(
                    format,
                    &[("x", num(x)), ("log", num(g.log_alpha(x)?)), ("g", num(g.g_alpha(x)?))],
                ),
                (None, Some(path)) => {
                    let rows = read_vectors(&path)?;
                    let mut out = Vec::with_capacity(rows.len());
                    for (i, p) in rows.iter().enumerate() {
                        out.push(vec![(i + 1) as f64, g.entropy(p)?]);
                    }
                    let sep = if format == Format::Csv { "," } else { " " };
                    out.iter().fold(format!("row{sep}entropy\n"), |mut s, r| {
                        let _ = writeln!(s, "{}{sep}{}", r[0], num(r[1]));
                        s
                    })
                }
                (None, None) => return Err(Failure::Usage("one of --probs or --x is required".into())),
            }
        }
        Command::Check {
            property,
            alpha,
            beta,
            n,
            negative,
            sequence,
            grid,
        } => return check(property, alpha, beta, n, negative, sequence, &grid, cfg, format),
    };
    Ok(Output::ok(body))
}

#[allow(clippy::too_many_arguments)]
fn check(
    property: CheckKind,
    alpha: f64,
    beta: Option<f64>,
    n: Option<usize>,
    negative: bool,
    sequence: bool,
    grid: &GridArgs,
    cfg: &Config,
    format: Format,
) -> Result<Output, Failure> {
    let pair = || Pair { alpha, beta }.admissible();
    let report = match property {
        CheckKind::Logconcavity => {
            let p = pair()?;
            logconcavity_scan(p, grid.resolve(cfg, default_grid(p)?)?)?
        }
        CheckKind::Turan => {
            let p = pair()?;
            turan_check(p.alpha, p.beta, grid.resolve(cfg, default_grid(p)?)?)?
        }
        CheckKind::Msu => {
            let p = pair()?;
            let (predicted, r) = msu_classify(p, grid.resolve(cfg, default_grid(p)?)?)?;
            let mut body = render(&r, format);
            let _ = match format {
                Format::Csv => writeln!(body, "predicted,{predicted}"),
                Format::Text => writeln!(body, "{:<14} {predicted}", "predicted"),
            };
            return Ok(Output {
                body,
                failed: r.verdict == Verdict::Fails,
            });
        }
        CheckKind::RecipConvexity => {
            let b = beta.unwrap_or(1.0);
            if sequence {
                reciprocal_convexity_un(alpha, b, n.unwrap_or(60))?
            } else {
                let half = if negative {
                    HalfLine::Negative
                } else {
                    HalfLine::Positive
                };
                let default = if negative {
                    GridSpec::log(1e-3, 1e4, 2000)
                } else {
                    GridSpec::linear(0.0, 50.0, 2000)
                };
                reciprocal_convexity_grid(alpha, b, half, grid.resolve(cfg, default)?)?
            }
        }
        CheckKind::EntropyConcavity => {
            let g = match beta {
                Some(b) => EntropyGen::with_beta(alpha, b)?,
                None => EntropyGen::new(alpha)?,
            };
            g.certify_concavity(n.or(cfg.concavity_points).unwrap_or(2000))?
        }
        CheckKind::Inflections => {
            let p = pair()?;
            let g = grid.resolve(cfg, shape_grid(p.alpha, 2000))?;
            let count = count_inflections(p, g)?;
            let failed = count > 2;
            let verdict = if failed { Verdict::Fails } else { Verdict::Holds };
            let body = record(
                format,
                &[
                    ("alpha", num(p.alpha)),
                    ("beta", num(p.beta)),
                    ("inflections", count.to_string()),
                    ("limit", "2".into()),
                    ("verdict", verdict.to_string()),
                ],
            );
            return Ok(Output { body, failed });
        }
    };
    Ok(Output {
        body: render(&report, format),
        failed: report.verdict == Verdict::Fails,
    })
}

fn render(r: &ScanReport, format: Format) -> String {
    match format {
        Format::Csv => r.to_csv(),
        Format::Text => r.to_text(),
    }
}

/// Rows of comma-separated probabilities; a first line that does not parse
/// is taken as a header.
fn read_vectors(path: &Path) -> Result<Vec<Vec<f64>>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let parsed: Result<Vec<f64>, _> = line.split(',').map(|c| c.trim().parse()).collect();
        match parsed {
            Ok(r) => rows.push(r),
            Err(_) if i == 0 => {}
            Err(_) => {
                return Err(Failure::Usage(format!(
                    "{}:{}: not a row of numbers",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    if rows.is_empty() {
        return Err(Failure::Usage(format!("{} holds no probability vectors", path.display())));
    }
    Ok(rows)
}
