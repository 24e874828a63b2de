use clap::{Args, Parser, Subcommand};
use quadlcm_core::arith::{is_prime, QuadPoly};
use quadlcm_core::oracle::Window;
use quadlcm_core::period::DEFAULT_K_CAP;
use serde::Serialize;

/// Default bound on exhaustive scans (root scans and `g` tabulation).
pub const DEFAULT_ORACLE_CAP: u64 = 1_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "quadlcm",
    version,
    about = "Exact periods of prod|f(n+i)| / lcm f(n+i) for quadratic f"
)]
pub struct Cli {
    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "snake_case")]
pub enum Command {
    /// Roots of f modulo p^e.
    Solve(SolveArgs),
    /// Minimal distance between roots of f modulo p^e over a range of e.
    Mindist(MindistArgs),
    /// Smallest period of g for window size k.
    Period(PeriodArgs),
    /// Brute-force evidence about g: samples, empirical period, identities.
    Oracle(OracleArgs),
    /// Growth of log lcm f(n..n+k) against log n.
    Asym(AsymArgs),
    /// Compare every closed form against its oracle on a coefficient grid.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct SolveArgs {
    /// Coefficients a,b,c of a x^2 + b x + c.
    #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
    pub poly: QuadPoly,
    #[arg(long, value_parser = parse_prime)]
    pub prime: u64,
    #[arg(long)]
    pub exp: u32,
    /// Also scan every residue and report whether the sets match.
    #[arg(long)]
    pub brute: bool,
    /// Largest modulus the exhaustive scan may cover.
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    pub oracle_cap: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct MindistArgs {
    #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
    pub poly: QuadPoly,
    #[arg(long, value_parser = parse_prime)]
    pub prime: u64,
    #[arg(long, default_value_t = 0)]
    pub e_min: u32,
    #[arg(long)]
    pub e_max: u32,
    /// Also compute each distance from the scanned root set.
    #[arg(long)]
    pub brute: bool,
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    pub oracle_cap: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct WindowArgs {
    /// Each candidate period is checked on [n0, n0 + H * B_k].
    #[arg(long = "window", default_value_t = 3)]
    pub horizon: u64,
    /// First n of the scan; defaults to one past the largest integer zero.
    #[arg(long)]
    pub n0: Option<u64>,
    /// Largest number of g evaluations the scan may perform.
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    pub oracle_cap: u64,
}

impl WindowArgs {
    pub fn window(&self) -> Window {
        Window {
            n0: self.n0,
            horizon: self.horizon,
            cap: self.oracle_cap,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct PeriodArgs {
    #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
    pub poly: QuadPoly,
    #[arg(long)]
    pub k: u64,
    /// Largest k accepted.
    #[arg(long, default_value_t = DEFAULT_K_CAP)]
    pub k_cap: u64,
    /// Also run the empirical scan and the bracket path.
    #[arg(long)]
    pub verify: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub window: WindowArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct OracleArgs {
    #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
    pub poly: QuadPoly,
    #[arg(long)]
    pub k: u64,
    /// Also compare against the closed-form period.
    #[arg(long)]
    pub verify: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub window: WindowArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct AsymArgs {
    #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
    pub poly: QuadPoly,
    #[arg(long)]
    pub k: u64,
    /// Comma-separated sample points n.
    #[arg(long, value_delimiter = ',', default_value = "1000,10000,100000")]
    pub samples: Vec<u64>,
    /// Print CSV rows instead of a table.
    #[arg(long, conflicts_with = "json")]
    pub csv: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct SelftestArgs {
    /// Run a smaller grid.
    #[arg(long)]
    pub quick: bool,
}

fn parse_poly(s: &str) -> Result<QuadPoly, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, c] = parts[..] else {
        return Err(format!("expected a,b,c, got {s:?}"));
    };
    let coeff = |t: &str| {
        t.parse::<i64>()
            .map_err(|e| format!("bad coefficient {t:?}: {e}"))
    };
    QuadPoly::new(coeff(a)?, coeff(b)?, coeff(c)?).map_err(|e| e.to_string())
}

fn parse_prime(s: &str) -> Result<u64, String> {
    let p: u64 = s.parse().map_err(|e| format!("{e}"))?;
    if is_prime(p) {
        Ok(p)
    } else {
        Err(format!("{p} is not prime"))
    }
}
