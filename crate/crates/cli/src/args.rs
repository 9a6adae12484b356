use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "relbb", version, about = "Blackbody radiation seen from a moving frame")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the rest-frame or observer-frame spectral distribution.
    Spectrum(SpectrumArgs),
    /// Doppler shift, aberration and Jacobians of one photon mode.
    BoostMode(BoostModeArgs),
    /// Thermal energy density at rest and in the moving frame.
    EnergyDensity(EnergyArgs),
    /// Legendre multipoles of the effective temperature T_eff(mu').
    Anisotropy(AnisotropyArgs),
    /// Monte Carlo check of the boosted spectral density.
    McVerify(McArgs),
    /// Run the invariant suite and print a pass/fail table.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitsArg {
    Natural,
    Si,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Unit system; `si` uses CODATA values for hbar, c and k_B.
    #[arg(long, value_enum, default_value = "natural")]
    pub units: UnitsArg,
    /// Override hbar (selects custom units).
    #[arg(long, allow_negative_numbers = true)]
    pub hbar: Option<f64>,
    /// Override the speed of light (selects custom units).
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    /// Override Boltzmann's constant (selects custom units).
    #[arg(long, allow_negative_numbers = true)]
    pub kb: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BoostArgs {
    /// Observer speed v/c along +z.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub beta: f64,
    /// Full velocity vector "bx,by,bz" (overrides --beta).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub beta_vec: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Frame {
    Rest,
    Moving,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Grid {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentArg {
    ZeroPoint,
    Thermal,
    Total,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub boost: BoostArgs,
    /// Rest-frame temperature.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub temperature: f64,
    /// Cosine of the propagation direction with the boost axis (moving frame).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mu_prime: f64,
    /// Lowest frequency [default: 0.01 k_B T/hbar, or 0.01 at T = 0].
    #[arg(long, allow_negative_numbers = true)]
    pub omega_min: Option<f64>,
    /// Highest frequency [default: 20 k_B T/hbar, or 20 at T = 0].
    #[arg(long, allow_negative_numbers = true)]
    pub omega_max: Option<f64>,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    #[arg(long, value_enum, default_value = "linear")]
    pub grid: Grid,
    #[arg(long, value_enum, default_value = "total")]
    pub component: ComponentArg,
    #[arg(long, value_enum, default_value = "rest")]
    pub frame: Frame,
    /// Report density per unit ordinary frequency (rho scaled by 2 pi).
    #[arg(long)]
    pub per_hz: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BoostModeArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub boost: BoostArgs,
    /// Rest-frame angular frequency.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub omega: f64,
    /// Rest-frame cosine between propagation direction and boost axis.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mu: f64,
    /// Azimuth about the boost axis.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Quadrature,
    Correlation,
    Both,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct QuadArgs {
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 1e-14)]
    pub abs_tol: f64,
    #[arg(long, default_value_t = 20)]
    pub max_levels: u32,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EnergyArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub boost: BoostArgs,
    #[command(flatten)]
    pub quad: QuadArgs,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub temperature: f64,
    #[arg(long, value_enum, default_value = "both")]
    pub method: Method,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AnisotropyArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub boost: BoostArgs,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub temperature: f64,
    #[arg(long, default_value_t = 2)]
    pub lmax: usize,
    /// Also tabulate T_eff on this many evenly spaced mu' values.
    #[arg(long)]
    pub map_points: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct McArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub boost: BoostArgs,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub temperature: f64,
    /// Number of samples.
    #[arg(long, default_value_t = 1_000_000)]
    pub n: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 32)]
    pub bins_omega: usize,
    #[arg(long, default_value_t = 16)]
    pub bins_mu: usize,
    /// Upper edge of the omega' histogram [default: 16 k_B T/hbar].
    #[arg(long, allow_negative_numbers = true)]
    pub omega_prime_max: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Scale the estimated densities before scoring (failure-path testing).
    #[arg(long, hide = true)]
    pub inject_bias: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SelftestArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Skip the 10^6-sample Monte Carlo case.
    #[arg(long)]
    pub quick: bool,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Corrupt one residual (failure-path testing).
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}
