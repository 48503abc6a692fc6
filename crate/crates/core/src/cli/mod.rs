//! Command-line front end: each subcommand computes a table and writes it
//! as CSV or JSON.
//!
//! Exit codes: 0 success, 2 if any row failed numerically, 3 for invalid
//! arguments. The positivity probe exits 0 when it finds a negative 2x2
//! determinant and 1 when it finds none.

pub mod output;
pub mod probe;
pub mod scans;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::gapprob::{
    pearcey_gap_with, tacnode_gap_direct_with, tacnode_gap_ratio_with, TacnodeOptions,
};
use crate::kernels::{AxisMap, GapSpec, Interval, PearceyParams, TacnodeParams};
use output::{Cell, Row, Table};
use probe::{positivity_probe, ProbeConfig, ProbeReport};
use scans::{Branch, ScanSettings, Sweep};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NONE_FOUND: i32 = 1;
pub const EXIT_ROW_FAILURE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "gapdet",
    version,
    about = "Gap probabilities of the Airy, Pearcey and tacnode processes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Base node count (default 40, or 60 for Pearcey contours).
    #[arg(long, global = true)]
    pub m0: Option<usize>,
    /// Absolute tolerance for node doubling
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Emit JSON with per-row determinant diagnostics.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the positivity probe's sampler
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    /// Sign of the square root in the tacnode time scaling.
    #[arg(long, global = true, value_enum, default_value_t = BranchArg::Plus)]
    pub branch: BranchArg,
    /// Allow |sigma| > 9 in tacnode computations.
    #[arg(long, global = true)]
    pub force_sigma: bool,
    /// Write the table to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum BranchArg {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum AxisArg {
    Tangent,
    Algebraic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum RouteArg {
    Ratio,
    Direct,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum SweepArg {
    Sigma,
    Tau,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum Command {
    /// Tracy-Widom F2 on an equally spaced grid.
    Tw {
        #[arg(long, default_value_t = -8.0, allow_hyphen_values = true)]
        s_min: f64,
        #[arg(long, default_value_t = 4.0, allow_hyphen_values = true)]
        s_max: f64,
        #[arg(long, default_value_t = 12)]
        steps: usize,
    },
    /// Pearcey gap probability of a union of intervals.
    Pearcey {
        #[arg(long, allow_hyphen_values = true)]
        tau: f64,
        /// Sorted endpoints a1,b1,a2,b2,...
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        endpoints: Vec<f64>,
        #[arg(long, value_enum, default_value_t = AxisArg::Tangent)]
        axis: AxisArg,
    },
    /// Tacnode gap probability of [a, b] at each of the given times.
    Tacnode {
        #[arg(long, allow_hyphen_values = true)]
        sigma: f64,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_value = "0"
        )]
        times: Vec<f64>,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        /// Occupation weight of the interval.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        z: f64,
        #[arg(long, value_enum, default_value_t = RouteArg::Ratio)]
        route: RouteArg,
    },
    /// Pearcey gap versus the product of two Tracy-Widom distributions.
    ScanPearceyAiry {
        #[arg(long, default_value_t = 5.314)]
        tau: f64,
        #[arg(long, default_value_t = -3.0, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        hi: f64,
        #[arg(long, default_value_t = 5)]
        n: usize,
    },
    /// Tacnode gap versus Pearcey gap as the overlap grows.
    ScanTacnodePearcey {
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_value = "-3,-5,-7,-9"
        )]
        sigmas: Vec<f64>,
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        a_p: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        b_p: f64,
        /// Pearcey times; with more than one only the tacnode side is computed.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_value = "0"
        )]
        tau_p: Vec<f64>,
    },
    /// Tacnode gap versus F2(a) F2(b) as the overlap or time grows.
    ScanTacnodeAiry {
        #[arg(long, default_value_t = -0.3, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, value_enum, default_value_t = SweepArg::Sigma)]
        mode: SweepArg,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
        to: f64,
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Value of the parameter that is not swept.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        fixed: f64,
    },
    /// Search for negative 2x2 correlation determinants of the formal
    /// extended process.
    PositivityProbe {
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_value = "-1,0,1"
        )]
        sigmas: Vec<f64>,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_value = "-1,0,1"
        )]
        taus: Vec<f64>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

/// Outcome of a command before it is written out.
pub struct Report {
    pub table: Table,
    pub exit: i32,
}

fn settings(cli: &Cli) -> ScanSettings {
    ScanSettings {
        m0: cli.m0.unwrap_or(40),
        m0_pearcey: cli.m0.unwrap_or(60),
        tol: cli.tol,
        tacnode: TacnodeOptions {
            force_sigma: cli.force_sigma,
            ..Default::default()
        },
    }
}

fn row_exit(t: &Table) -> i32 {
    if t.failures() > 0 {
        EXIT_ROW_FAILURE
    } else {
        EXIT_OK
    }
}

fn err_string(e: Error) -> Option<String> {
    Some(e.to_string())
}

/// Runs the parsed command. Errors are argument errors.
pub fn execute(cli: &Cli) -> Result<Report, Error> {
    if !(cli.tol > 0.0) {
        return Err(Error::Argument(format!(
            "--tol must be positive, got {}",
            cli.tol
        )));
    }
    if cli.m0.is_some_and(|m| m < 10) {
        return Err(Error::Argument("--m0 must be at least 10".into()));
    }
    let s = settings(cli);
    let table = match &cli.command {
        Command::Tw {
            s_min,
            s_max,
            steps,
        } => {
            let mut t = Table::new(vec!["s", "F2", "err"]);
            for r in scans::tw_table(*s_min, *s_max, *steps, s.m0, s.tol)? {
                let row = match r.f2 {
                    Ok(d) => Row::new(vec![r.s.into(), d.re().into(), d.err_estimate.into()])
                        .diagnostic("F2", d),
                    Err(e) => Row::new(vec![r.s.into(), Cell::Empty, Cell::Empty]).error(Some(e)),
                };
                t.rows.push(row);
            }
            t
        }
        Command::Pearcey {
            tau,
            endpoints,
            axis,
        } => {
            let params = PearceyParams::new(*tau, endpoints.clone())?;
            let axis = match axis {
                AxisArg::Tangent => AxisMap::Tangent,
                AxisArg::Algebraic => AxisMap::Algebraic,
            };
            let mut t = Table::new(vec!["tau", "F_P", "err", "imag_residual"]);
            t.rows
                .push(match pearcey_gap_with(&params, axis, s.m0_pearcey, s.tol) {
                    Ok(d) => Row::new(vec![
                        (*tau).into(),
                        d.re().into(),
                        d.err_estimate.into(),
                        d.imag_residual.into(),
                    ])
                    .diagnostic("F_P", d),
                    Err(e) => Row::new(vec![(*tau).into(), Cell::Empty, Cell::Empty, Cell::Empty])
                        .error(err_string(e)),
                });
            t
        }
        Command::Tacnode {
            sigma,
            times,
            a,
            b,
            z,
            route,
        } => {
            let params = TacnodeParams::new(*sigma, times.clone())?;
            let spec = GapSpec::weighted(vec![
                vec![Interval {
                    a: *a,
                    b: *b,
                    z: *z
                }];
                times.len()
            ])?;
            let mut t = Table::new(vec![
                "route",
                "sigma",
                "F_tac",
                "err",
                "numerator",
                "denominator",
            ]);
            if matches!(route, RouteArg::Ratio | RouteArg::Both) {
                t.rows.push(
                    match tacnode_gap_ratio_with(&spec, &params, s.m0, s.tol, &s.tacnode) {
                        Ok(g) => Row::new(vec![
                            "ratio".into(),
                            (*sigma).into(),
                            g.re().into(),
                            g.ratio.err_estimate.into(),
                            g.numerator.re().into(),
                            g.denominator.re().into(),
                        ])
                        .diagnostic("F_tac", g),
                        Err(e) => Row::new(vec![
                            "ratio".into(),
                            (*sigma).into(),
                            Cell::Empty,
                            Cell::Empty,
                            Cell::Empty,
                            Cell::Empty,
                        ])
                        .error(err_string(e)),
                    },
                );
            }
            if matches!(route, RouteArg::Direct | RouteArg::Both) {
                t.rows.push(
                    match tacnode_gap_direct_with(&spec, &params, s.m0, s.tol, &s.tacnode) {
                        Ok(d) => Row::new(vec![
                            "direct".into(),
                            (*sigma).into(),
                            d.re().into(),
                            d.err_estimate.into(),
                            Cell::Empty,
                            Cell::Empty,
                        ])
                        .diagnostic("F_tac", d),
                        Err(e) => Row::new(vec![
                            "direct".into(),
                            (*sigma).into(),
                            Cell::Empty,
                            Cell::Empty,
                            Cell::Empty,
                            Cell::Empty,
                        ])
                        .error(err_string(e)),
                    },
                );
            }
            t
        }
        Command::ScanPearceyAiry { tau, lo, hi, n } => {
            let mut t = Table::new(vec!["rho", "sigma", "F_P", "F2F2", "reldiff"]);
            let rows = scans::scan_pearcey_to_airy(*tau, *lo, *hi, *n, &s)?;
            for r in &rows {
                t.rows.push(
                    Row::new(vec![
                        r.rho.into(),
                        r.sigma.into(),
                        r.f_p.as_ref().map(|d| d.re()).into(),
                        r.f2f2.into(),
                        r.reldiff.into(),
                    ])
                    .diagnostic("F_P", &r.f_p)
                    .error(r.error.clone()),
                );
            }
            let max = rows
                .iter()
                .filter_map(|r| r.reldiff)
                .map(f64::abs)
                .fold(0.0, f64::max);
            t.notes.push(format!("max |reldiff| = {max}"));
            t
        }
        Command::ScanTacnodePearcey {
            sigmas,
            a_p,
            b_p,
            tau_p,
        } => {
            let branch = match cli.branch {
                BranchArg::Plus => Branch::Plus,
                BranchArg::Minus => Branch::Minus,
            };
            let mut t = Table::new(vec!["sigma", "F_tac", "F_P", "reldiff"]);
            let rows = scans::scan_tacnode_to_pearcey(sigmas, *a_p, *b_p, tau_p, branch, &s)?;
            for r in &rows {
                t.rows.push(
                    Row::new(vec![
                        r.sigma.into(),
                        r.f_tac.as_ref().map(|g| g.re()).into(),
                        r.f_p.as_ref().map(|d| d.re()).into(),
                        r.reldiff.into(),
                    ])
                    .diagnostic("F_tac", &r.f_tac)
                    .diagnostic("F_P", &r.f_p)
                    .error(r.error.clone()),
                );
            }
            let mut pairs: Vec<(f64, f64)> = rows
                .iter()
                .filter_map(|r| r.reldiff.map(|d| (r.sigma.abs(), d)))
                .collect();
            pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
            let rel: Vec<f64> = pairs.iter().map(|p| p.1).collect();
            t.notes.push(format!(
                "|reldiff| decreasing in |sigma|: {}",
                scans::strictly_decreasing_magnitude(&rel)
            ));
            t
        }
        Command::ScanTacnodeAiry {
            a,
            b,
            mode,
            from,
            to,
            n,
            fixed,
        } => {
            let sweep = match mode {
                SweepArg::Sigma => Sweep::Sigma,
                SweepArg::Tau => Sweep::Tau,
            };
            let values = scans::linspace(*from, *to, *n);
            let rows = scans::scan_tacnode_to_airy(*a, *b, sweep, &values, *fixed, &s)?;
            let mut t = Table::new(vec!["param", "F_tac", "F2F2", "reldiff"]);
            for r in &rows {
                t.rows.push(
                    Row::new(vec![
                        r.param.into(),
                        r.f_tac.as_ref().map(|g| g.re()).into(),
                        r.f2f2.into(),
                        r.reldiff.into(),
                    ])
                    .diagnostic("F_tac", &r.f_tac)
                    .error(r.error.clone()),
                );
            }
            let xs: Vec<f64> = rows
                .iter()
                .filter(|r| r.reldiff.is_some())
                .map(|r| r.param)
                .collect();
            let ys: Vec<f64> = rows.iter().filter_map(|r| r.reldiff).collect();
            t.notes.push(format!(
                "|reldiff| strictly decreasing: {}",
                scans::strictly_decreasing_magnitude(&ys)
            ));
            if let Some((slope, r2)) = scans::log_linear_fit(&xs, &ys) {
                t.notes
                    .push(format!("log-linear fit: slope = {slope}, R^2 = {r2}"));
            }
            t
        }
        Command::PositivityProbe {
            sigmas,
            taus,
            samples,
        } => {
            let config = ProbeConfig {
                sigmas: sigmas.clone(),
                taus: taus.clone(),
                samples: *samples,
                seed: cli.seed,
                m: s.m0,
            };
            let report = positivity_probe(&config)?;
            let mut t = Table::new(vec![
                "sigma", "tau", "x", "xi", "k11", "k12", "k21", "k22", "det",
            ]);
            for p in &report.samples {
                let k = p.kernel.map_or([None; 4], |k| k.map(Some));
                let mut cells: Vec<Cell> =
                    vec![p.sigma.into(), p.tau.into(), p.x.into(), p.xi.into()];
                cells.extend(k.iter().map(|v| Cell::from(*v)));
                cells.push(p.det.into());
                t.rows.push(Row::new(cells).error(p.error.clone()));
            }
            if let Some(w) = report.witness {
                let p = &report.samples[w];
                t.notes.push(format!(
                    "minimum det = {} at sigma = {}, tau = {}, x = {}, xi = {}",
                    p.det.unwrap_or(f64::NAN),
                    p.sigma,
                    p.tau,
                    p.x,
                    p.xi
                ));
            }
            t.notes.push(format!(
                "negative determinant found: {}",
                report.found_negative()
            ));
            return Ok(Report {
                table: t,
                exit: probe_exit(&report),
            });
        }
    };
    let exit = row_exit(&table);
    Ok(Report { table, exit })
}

fn probe_exit(report: &ProbeReport) -> i32 {
    if report.found_negative() {
        EXIT_OK
    } else if report.failures() > 0 {
        EXIT_ROW_FAILURE
    } else {
        EXIT_NONE_FOUND
    }
}

fn provenance(cli: &Cli) -> String {
    let flags = serde_json::to_string(cli).unwrap_or_default();
    format!("gapdet {} {flags}", env!("CARGO_PKG_VERSION"))
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("GAPDET_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| format!("GAPDET_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("GAPDET_THREADS must be a positive integer, got 0".into());
    }
    // A second call in the same process keeps the first pool.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

/// Entry point of the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return EXIT_USAGE;
    }
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let prov = provenance(&cli);
    let text = if cli.json {
        report.table.to_json(&prov)
    } else {
        report.table.to_csv(&prov)
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return EXIT_USAGE;
    }
    for note in &report.table.notes {
        eprintln!("{note}");
    }
    report.exit
}
