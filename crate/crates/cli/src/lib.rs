//! Command-line front end: scenario configuration, CSV curve emission and
//! analytic-versus-simulation comparison reports.

pub mod config;
pub mod csvio;
pub mod report;
pub mod run;

/// CLI failure split by exit code: usage errors exit 2, everything else 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Run(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Run(msg) => write!(f, "error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ratemeta::Error> for CliError {
    fn from(e: ratemeta::Error) -> Self {
        CliError::Run(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Run(e.to_string())
    }
}

pub const USAGE: &str = "\
ratemeta — per-user coverage and rate distributions of a rateless-coded
cellular downlink: analytics vs Monte Carlo.

usage:
  ratemeta [CONFIG_FILE] [flags]

flags (override the config file):
  --lambda F        BS density (default 1)
  --alpha F         path-loss exponent, > 2 (default 3)
  --K F             packet size in bits (default 75)
  --N F             delay budget in channel uses (default 200)
  --scheme S        rateless | fixed | amc (default rateless)
  --model M         ci | tvi (default ci)
  --realizations U  Monte Carlo geometries, >= 100 (default 5000)
  --seed U          master seed (default 1)
  --grid-min F --grid-max F --grid-points U
                    rate-axis grid (default 0 .. K/10, 201 points)
  --out DIR         output directory (default ./out)
  --preset P        fig1 | fig2 | fig3 (reproduces the reference figures)

outputs: one CSV per curve (axis,ccdf,ci_halfwidth,n_samples) plus
report.txt with sup deviations and spot checks.

exit codes: 0 pass, 1 tolerance failure or runtime error, 2 usage error.
";
