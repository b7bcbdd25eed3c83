//! Command-line surface: subcommands, flags, and the small parsers behind
//! them.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "contact1d",
    version,
    about = "Scattering, factorization, and regularization tools for 1D quantum contact interactions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Transmission and reflection for one contact interaction
    Scatter(ScatterArgs),
    /// Exchange amplitude for a pair of identical particles
    Identical(IdenticalArgs),
    /// Convergence of the three-delta window toward its epsilon target
    Regularize(RegularizeArgs),
    /// Factor a connection matrix into delta/epsilon steps
    Decompose(DecomposeArgs),
    /// Check a delta-epsilon duality relation over a wavenumber grid
    Duality(DualityArgs),
    /// Scattering through a chain of contact interactions
    Chain(ChainArgs),
}

/// Exactly one way to name the interaction.
#[derive(Args)]
pub struct InteractionArgs {
    /// Delta interaction strength
    #[arg(long, value_name = "V", group = "interaction")]
    pub delta: Option<f64>,
    /// Epsilon interaction strength
    #[arg(long, value_name = "U", group = "interaction")]
    pub epsilon: Option<f64>,
    /// Connection matrix entries t,v,u,s (row-major; ts - uv = 1)
    #[arg(long, value_name = "T,V,U,S", group = "interaction", value_parser = parse_matrix)]
    pub matrix: Option<MatrixEntries>,
}

/// Row-major entries of a 2x2 connection matrix.
#[derive(Debug, Clone, Copy)]
pub struct MatrixEntries(pub [f64; 4]);

/// A single wavenumber or a grid of them.
#[derive(Args)]
pub struct KGridArgs {
    /// Single wavenumber
    #[arg(long, value_name = "K", group = "kspec")]
    pub k: Option<f64>,
    /// Wavenumber grid MIN:MAX:COUNT
    #[arg(long, value_name = "MIN:MAX:COUNT", group = "kspec", value_parser = parse_grid)]
    pub k_grid: Option<GridSpec>,
    /// Space the grid logarithmically
    #[arg(long, requires = "k_grid", conflicts_with = "k")]
    pub log: bool,
}

impl KGridArgs {
    /// The sorted list of wavenumbers this sweep covers.
    pub fn values(&self) -> Result<Vec<f64>, String> {
        match (self.k, &self.k_grid) {
            (Some(k), None) => {
                if !k.is_finite() || k <= 0.0 {
                    return Err(format!("wavenumber {k} must be finite and > 0"));
                }
                Ok(vec![k])
            }
            (None, Some(grid)) => grid.values(self.log),
            _ => Err("provide --k or --k-grid".to_string()),
        }
    }
}

/// An inclusive numeric grid MIN:MAX:COUNT.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl GridSpec {
    /// Ascending grid values with pinned endpoints.
    pub fn values(&self, log: bool) -> Result<Vec<f64>, String> {
        if self.count < 2 {
            return Err(format!("grid count {} must be at least 2", self.count));
        }
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err("grid bounds must be finite".to_string());
        }
        if self.min <= 0.0 {
            return Err(format!("grid minimum {} must be > 0", self.min));
        }
        if self.max < self.min {
            return Err(format!(
                "grid maximum {} must be >= minimum {}",
                self.max, self.min
            ));
        }
        let n = self.count;
        let mut vals: Vec<f64> = (0..n)
            .map(|i| {
                let f = i as f64 / (n - 1) as f64;
                if log {
                    self.min * (self.max / self.min).powf(f)
                } else {
                    self.min + (self.max - self.min) * f
                }
            })
            .collect();
        vals[0] = self.min;
        vals[n - 1] = self.max;
        Ok(vals)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
pub struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub output: OutputFormat,
    /// Write to a file instead of stdout
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

/// For commands whose report is always JSON.
#[derive(Args)]
pub struct OutPathArg {
    /// Write to a file instead of stdout
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct ScatterArgs {
    #[command(flatten)]
    pub interaction: InteractionArgs,
    #[command(flatten)]
    pub sweep: KGridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum StatisticsArg {
    Boson,
    Fermion,
}

#[derive(Args)]
pub struct IdenticalArgs {
    #[command(flatten)]
    pub interaction: InteractionArgs,
    /// Particle statistics
    #[arg(long, value_enum)]
    pub statistics: StatisticsArg,
    #[command(flatten)]
    pub sweep: KGridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args)]
pub struct RegularizeArgs {
    /// Target epsilon strength
    #[arg(long, value_name = "U")]
    pub epsilon: f64,
    /// Wavenumber the window is evaluated at
    #[arg(long, value_name = "K")]
    pub k: f64,
    /// Half-spacing grid MIN:MAX:COUNT, swept from MAX down to MIN
    #[arg(long, value_name = "MIN:MAX:COUNT", value_parser = parse_grid)]
    pub a_grid: GridSpec,
    /// Space the grid logarithmically
    #[arg(long)]
    pub log: bool,
    #[command(flatten)]
    pub output: OutPathArg,
}

#[derive(Args)]
pub struct DecomposeArgs {
    /// Connection matrix entries t,v,u,s (row-major; ts - uv = 1)
    #[arg(value_name = "T,V,U,S", value_parser = parse_matrix)]
    pub matrix: MatrixEntries,
    #[command(flatten)]
    pub output: OutPathArg,
}

#[derive(Args)]
pub struct DualityArgs {
    #[command(subcommand)]
    pub mode: DualityMode,
}

#[derive(Subcommand)]
pub enum DualityMode {
    /// Transmission duality: delta at k against epsilon at 1/k, equal strengths
    Tr(TrDualityArgs),
    /// Exchange duality: delta on bosons against epsilon on fermions, v*u = 4
    Exchange(ExchangeDualityArgs),
}

#[derive(Args)]
pub struct TrDualityArgs {
    /// Shared interaction strength
    #[arg(long, value_name = "V")]
    pub v: f64,
    #[command(flatten)]
    pub sweep: KGridArgs,
    #[command(flatten)]
    pub output: OutPathArg,
}

#[derive(Args)]
pub struct ExchangeDualityArgs {
    /// Delta strength
    #[arg(long, value_name = "V")]
    pub v: f64,
    /// Epsilon strength
    #[arg(long, value_name = "U")]
    pub u: f64,
    #[command(flatten)]
    pub sweep: KGridArgs,
    #[command(flatten)]
    pub output: OutPathArg,
}

/// One chain member: kind, strength, and position.
#[derive(Debug, Clone, Copy)]
pub struct ChainPoint {
    pub kind: ChainKind,
    pub strength: f64,
    pub position: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainKind {
    Delta,
    Epsilon,
}

#[derive(Args)]
pub struct ChainArgs {
    /// Interaction KIND:STRENGTH:POSITION (kind delta|epsilon), repeatable
    #[arg(
        long = "interaction",
        value_name = "KIND:STRENGTH:POS",
        value_parser = parse_chain_point,
        required = true
    )]
    pub interactions: Vec<ChainPoint>,
    #[command(flatten)]
    pub sweep: KGridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_matrix(s: &str) -> Result<MatrixEntries, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(format!(
            "expected four entries T,V,U,S, got {}",
            parts.len()
        ));
    }
    let mut entries = [0.0; 4];
    for (slot, part) in entries.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("bad matrix entry {part:?}: {e}"))?;
    }
    Ok(MatrixEntries(entries))
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err("expected MIN:MAX:COUNT".to_string());
    }
    let min = parts[0]
        .parse::<f64>()
        .map_err(|e| format!("bad grid minimum {:?}: {e}", parts[0]))?;
    let max = parts[1]
        .parse::<f64>()
        .map_err(|e| format!("bad grid maximum {:?}: {e}", parts[1]))?;
    let count = parts[2]
        .parse::<usize>()
        .map_err(|e| format!("bad grid count {:?}: {e}", parts[2]))?;
    Ok(GridSpec { min, max, count })
}

fn parse_chain_point(s: &str) -> Result<ChainPoint, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err("expected KIND:STRENGTH:POS".to_string());
    }
    let kind = match parts[0] {
        "delta" => ChainKind::Delta,
        "epsilon" => ChainKind::Epsilon,
        other => {
            return Err(format!(
                "unknown interaction kind {other:?} (use delta or epsilon)"
            ))
        }
    };
    let strength = parts[1]
        .parse::<f64>()
        .map_err(|e| format!("bad strength {:?}: {e}", parts[1]))?;
    let position = parts[2]
        .parse::<f64>()
        .map_err(|e| format!("bad position {:?}: {e}", parts[2]))?;
    Ok(ChainPoint {
        kind,
        strength,
        position,
    })
}
