mod commands;
mod output;
mod settings;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use settings::Settings;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(String),
}

impl From<relvp::Error> for CliError {
    fn from(e: relvp::Error) -> Self {
        CliError::Compute(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "relvp", version, about = "Linearized relativistic Vlasov-Poisson mode analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// key = value file; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write to this file instead of stdout
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ModeArgs {
    /// juttner or compact
    #[arg(long)]
    equilibrium: Option<String>,
    /// Juttner temperature
    #[arg(long)]
    theta: Option<f64>,
    /// Support radius P of the compact equilibrium
    #[arg(long)]
    support: Option<f64>,
    /// +1 plasma, -1 gravitational
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<i32>,
}

impl ModeArgs {
    fn flags(&self) -> Vec<(&'static str, Option<String>)> {
        vec![
            ("equilibrium", self.equilibrium.clone()),
            ("theta", self.theta.map(|x| x.to_string())),
            ("support", self.support.map(|x| x.to_string())),
            ("sigma", self.sigma.map(|x| x.to_string())),
        ]
    }
}

const MODE_KEYS: [(&str, Option<&str>); 4] =
    [("equilibrium", Some("juttner")), ("theta", Some("0.2")), ("support", None), ("sigma", Some("1"))];

#[derive(Subcommand)]
enum Command {
    /// Critical wavenumbers over a logarithmic temperature grid
    Threshold {
        #[arg(long)]
        theta_min: Option<f64>,
        #[arg(long)]
        theta_max: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        /// Relative quadrature tolerance
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        io: Io,
    },
    /// Solve the mode equation for rho(t)
    Evolve {
        #[arg(long)]
        kappa: Option<f64>,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long)]
        t_max: Option<f64>,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        io: Io,
    },
    /// L[beta](x + 2 pi i y) on a grid
    Dispersion {
        #[arg(long)]
        kappa: Option<f64>,
        #[arg(long)]
        x_min: Option<f64>,
        #[arg(long)]
        x_max: Option<f64>,
        #[arg(long)]
        x_points: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        y_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        y_max: Option<f64>,
        #[arg(long)]
        y_points: Option<usize>,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        io: Io,
    },
    /// Stretched-exponential fit of an evolve trajectory
    Fit {
        /// Trajectory CSV written by `evolve`
        #[arg(long)]
        input: Option<PathBuf>,
        /// Sets the default window start 10 / kappa
        #[arg(long)]
        kappa: Option<f64>,
        #[arg(long)]
        t_min: Option<f64>,
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long)]
        reps: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        level: Option<f64>,
        #[command(flatten)]
        io: Io,
    },
    /// Appendix derivative, bound and partition checks
    AppendixVerify {
        #[arg(long)]
        m_max: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        /// CSV of bound margins
        #[arg(long)]
        margins: Option<PathBuf>,
        #[command(flatten)]
        io: Io,
    },
    /// Per-wavenumber supercriticality, neutral frequency and decay fit
    Sweep {
        #[arg(long)]
        kappa_min: Option<f64>,
        #[arg(long)]
        kappa_max: Option<f64>,
        #[arg(long)]
        kappa_points: Option<usize>,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long)]
        t_max: Option<f64>,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        io: Io,
    },
}

fn s<T: ToString>(x: &Option<T>) -> Option<String> {
    x.as_ref().map(|v| v.to_string())
}

fn keys(extra: &[(&'static str, Option<&'static str>)], with_mode: bool) -> Vec<(&'static str, Option<&'static str>)> {
    let mut k = extra.to_vec();
    if with_mode {
        k.extend_from_slice(&MODE_KEYS);
    }
    k
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Threshold { theta_min, theta_max, points, tol, io } => {
            let allowed = keys(
                &[("theta-min", Some("0.01")), ("theta-max", Some("10")), ("points", Some("200")), ("tol", Some("1e-12"))],
                false,
            );
            let flags = vec![("theta-min", s(&theta_min)), ("theta-max", s(&theta_max)), ("points", s(&points)), ("tol", s(&tol))];
            let cfg = Settings::resolve(&allowed, io.config.as_deref(), flags)?;
            commands::threshold(&cfg, io.output.as_deref())
        }
        Command::Evolve { kappa, dt, t_max, mode, io } => {
            let allowed = keys(&[("kappa", None), ("dt", Some("0.05")), ("t-max", Some("100"))], true);
            let mut flags = vec![("kappa", s(&kappa)), ("dt", s(&dt)), ("t-max", s(&t_max))];
            flags.extend(mode.flags());
            let cfg = Settings::resolve(&allowed, io.config.as_deref(), flags)?;
            commands::evolve(&cfg, io.output.as_deref())
        }
        Command::Dispersion { kappa, x_min, x_max, x_points, y_min, y_max, y_points, mode, io } => {
            let allowed = keys(
                &[
                    ("kappa", None),
                    ("x-min", Some("0")),
                    ("x-max", Some("0")),
                    ("x-points", Some("1")),
                    ("y-min", None),
                    ("y-max", None),
                    ("y-points", Some("121")),
                ],
                true,
            );
            let mut flags = vec![
                ("kappa", s(&kappa)),
                ("x-min", s(&x_min)),
                ("x-max", s(&x_max)),
                ("x-points", s(&x_points)),
                ("y-min", s(&y_min)),
                ("y-max", s(&y_max)),
                ("y-points", s(&y_points)),
            ];
            flags.extend(mode.flags());
            let cfg = Settings::resolve(&allowed, io.config.as_deref(), flags)?;
            commands::dispersion(cfg, io.output.as_deref())
        }
        Command::Fit { input, kappa, t_min, t_max, reps, seed, level, io } => {
            let allowed = keys(
                &[
                    ("input", None),
                    ("kappa", None),
                    ("t-min", None),
                    ("t-max", None),
                    ("reps", Some("200")),
                    ("seed", Some("1")),
                    ("level", Some("0.95")),
                ],
                false,
            );
            let flags = vec![
                ("input", input.map(|p| p.display().to_string())),
                ("kappa", s(&kappa)),
                ("t-min", s(&t_min)),
                ("t-max", s(&t_max)),
                ("reps", s(&reps)),
                ("seed", s(&seed)),
                ("level", s(&level)),
            ];
            let cfg = Settings::resolve(&allowed, io.config.as_deref(), flags)?;
            commands::fit(&cfg, io.output.as_deref())
        }
        Command::AppendixVerify { m_max, n_max, margins, io } => {
            let allowed = keys(&[("m-max", Some("16")), ("n-max", Some("6")), ("margins", None)], false);
            let flags =
                vec![("m-max", s(&m_max)), ("n-max", s(&n_max)), ("margins", margins.map(|p| p.display().to_string()))];
            let cfg = Settings::resolve(&allowed, io.config.as_deref(), flags)?;
            commands::appendix_verify(&cfg, io.output.as_deref())
        }
        Command::Sweep { kappa_min, kappa_max, kappa_points, dt, t_max, mode, io } => {
            let allowed = keys(
                &[
                    ("kappa-min", None),
                    ("kappa-max", None),
                    ("kappa-points", Some("8")),
                    ("dt", Some("0.05")),
                    ("t-max", Some("100")),
                ],
                true,
            );
            let mut flags = vec![
                ("kappa-min", s(&kappa_min)),
                ("kappa-max", s(&kappa_max)),
                ("kappa-points", s(&kappa_points)),
                ("dt", s(&dt)),
                ("t-max", s(&t_max)),
            ];
            flags.extend(mode.flags());
            let cfg = Settings::resolve(&allowed, io.config.as_deref(), flags)?;
            commands::sweep(&cfg, io.output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
