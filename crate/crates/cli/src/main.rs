use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use catenoid::export::{format_significant, CSV_DIGITS};
use catenoid::{
    build_mesh, catenoids_for_circles, catenoids_for_distance, circle_from_center_radius,
    classify_regime, constants_bundle, find_cheaper_competitor, sample_catenary, sweep, write_obj,
    CatenoidSolutions, Complex, ConstantsBundle, Error, MeshParams, RegimeLabel, SweepFunction,
    Tolerance,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

const DEFAULT_BUDGET: usize = 2_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "catenoid",
    version,
    about = "Spherical catenoids in hyperbolic 3-space"
)]
struct Cli {
    /// Absolute quadrature tolerance.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the critical constants.
    Constants,
    /// Tabulate rho or phi as CSV.
    Sweep {
        #[arg(long, value_enum)]
        function: Function,
        #[arg(long)]
        lo: f64,
        #[arg(long)]
        hi: f64,
        #[arg(long, default_value_t = 100)]
        n: usize,
    },
    /// Classify a neck, or find the catenoids spanning a circle pair.
    Classify(ClassifyArgs),
    /// Sample the generating catenary as CSV.
    Catenary {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        y_max: f64,
        #[arg(long, default_value_t = 64)]
        n: usize,
    },
    /// Search for an annulus cheaper than the catenoid tube.
    Compete {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        r: f64,
    },
    /// Export a catenoid mesh in the Poincaré ball as OBJ.
    Mesh {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        y_max: f64,
        #[arg(long, default_value_t = 32)]
        n_profile: usize,
        #[arg(long, default_value_t = 64)]
        n_angle: usize,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ClassifyArgs {
    /// Neck distance of a catenoid.
    #[arg(long)]
    a: Option<f64>,
    /// Distance between the planes bounded by two circles.
    #[arg(long)]
    distance: Option<f64>,
    /// Two circles as `cx,cy,r`.
    #[arg(long, num_args = 2, value_parser = parse_circle, allow_hyphen_values = true)]
    circles: Option<Vec<(f64, f64, f64)>>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Function {
    Rho,
    Phi,
}

fn parse_circle(s: &str) -> Result<(f64, f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected cx,cy,r but got {s:?}"));
    }
    let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}"));
    Ok((num(parts[0])?, num(parts[1])?, num(parts[2])?))
}

enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::NotDisjoint { .. } | Error::LineThroughInfinity => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Numeric(format!("I/O error: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Numeric(format!("serialization error: {e}"))
    }
}

fn sink(out: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn bundle_lines(b: &ConstantsBundle<f64>) -> Vec<(&'static str, f64)> {
    vec![
        ("K", b.k),
        ("a_c", b.critical_neck),
        ("2rho(a_c)", b.max_separation),
        ("a_0", b.concavity_neck),
        ("a_l", b.sufficient_neck),
        ("a_L", b.minimizing_neck),
        ("2rho(a_L)", b.minimizing_separation),
    ]
}

fn write_bundle_text(out: &mut dyn Write, b: &ConstantsBundle<f64>) -> io::Result<()> {
    for (name, v) in bundle_lines(b) {
        writeln!(out, "{name:<10} {v:.12}")?;
    }
    Ok(())
}

#[derive(Serialize)]
struct NeckReport<'a> {
    a: f64,
    regime: RegimeLabel,
    constants: &'a ConstantsBundle<f64>,
}

#[derive(Serialize)]
struct PairReport<'a> {
    #[serde(flatten)]
    solutions: &'a CatenoidSolutions<f64>,
    constants: &'a ConstantsBundle<f64>,
}

fn run(cli: Cli) -> Result<(), Failure> {
    let tol = Tolerance::new(cli.tol, DEFAULT_BUDGET)?;
    let mut out = sink(&cli.out)?;
    let out: &mut dyn Write = &mut out;

    match cli.command {
        Command::Constants => {
            let b = constants_bundle(&tol)?;
            if cli.json {
                write_json(out, &b)?;
            } else {
                write_bundle_text(out, &b)?;
            }
        }
        Command::Sweep {
            function,
            lo,
            hi,
            n,
        } => {
            let f = match function {
                Function::Rho => SweepFunction::Rho,
                Function::Phi => SweepFunction::Phi,
            };
            let table = sweep(f, lo, hi, n, &tol)?;
            if cli.json {
                write_json(out, &table)?;
            } else {
                table.write_csv(&mut *out)?;
            }
        }
        Command::Classify(args) => {
            let b = constants_bundle(&tol)?;
            if let Some(a) = args.a {
                if a.is_nan() || a <= 0.0 || a.is_infinite() {
                    return Err(Failure::Usage(format!("neck must be positive, got {a}")));
                }
                let regime = classify_regime(a, &b);
                if cli.json {
                    write_json(
                        out,
                        &NeckReport {
                            a,
                            regime,
                            constants: &b,
                        },
                    )?;
                } else {
                    writeln!(out, "a          {a}")?;
                    writeln!(out, "regime     {}", regime.regime)?;
                    writeln!(out)?;
                    write_bundle_text(out, &b)?;
                }
            } else {
                let sols = if let Some(d) = args.distance {
                    catenoids_for_distance(d, &b, &tol)?
                } else {
                    let pair = args.circles.expect("clap enforces one input");
                    let [c1, c2] = [pair[0], pair[1]]
                        .map(|(x, y, r)| circle_from_center_radius(Complex::new(x, y), r));
                    let (c1, c2) = (c1?, c2?);
                    catenoids_for_circles(&c1, &c2, &b, &tol)?
                };
                if cli.json {
                    write_json(
                        out,
                        &PairReport {
                            solutions: &sols,
                            constants: &b,
                        },
                    )?;
                } else {
                    writeln!(out, "distance   {:.12}", sols.separation)?;
                    if sols.solutions.is_empty() {
                        writeln!(out, "no catenoid spans this pair")?;
                    }
                    for s in &sols.solutions {
                        writeln!(out, "a = {:.12}  {}", s.neck, s.regime.regime)?;
                    }
                    writeln!(out)?;
                    write_bundle_text(out, &b)?;
                }
            }
        }
        Command::Catenary { a, y_max, n } => {
            let sample = sample_catenary(a, y_max, n, &tol)?;
            if cli.json {
                write_json(out, &sample)?;
            } else {
                writeln!(out, "x,y")?;
                for (x, y) in &sample.points {
                    writeln!(
                        out,
                        "{},{}",
                        format_significant(*x, CSV_DIGITS),
                        format_significant(*y, CSV_DIGITS)
                    )?;
                }
            }
        }
        Command::Compete { a, r } => {
            let rep = find_cheaper_competitor(a, r, &tol)?;
            if cli.json {
                write_json(out, &rep)?;
            } else {
                writeln!(out, "a                {a}")?;
                writeln!(out, "r                {r}")?;
                writeln!(out, "catenoid area    {:.12}", rep.area_catenoid)?;
                writeln!(out, "competitor area  {:.12}", rep.area_competitor)?;
                writeln!(out, "margin           {:.12}", rep.margin)?;
                match rep.s {
                    Some(s) => writeln!(out, "cheaper at s = {s:.6e}")?,
                    None => writeln!(out, "no cheaper competitor on the grid")?,
                }
            }
        }
        Command::Mesh {
            a,
            y_max,
            n_profile,
            n_angle,
        } => {
            let mesh = build_mesh(
                MeshParams {
                    a,
                    y_max,
                    n_profile,
                    n_angle,
                },
                &tol,
            )?;
            write_obj(&mesh, &mut *out)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
