//! Shared flag groups and their resolution into core types.

use clap::Args;
use ditop::{to_scaled, PhysicalConfig, PhysicalState, ScaledState};

use crate::CliError;

/// Initial state, either directly in scaled coordinates (`--x0 --v0`) or in
/// physical units (`--y0 --ydot0 --inertia --cmax`, converted internally).
#[derive(Args, Debug, Clone)]
pub struct InitialStateArgs {
    /// Scaled initial position.
    #[arg(long, allow_hyphen_values = true, requires = "v0")]
    pub x0: Option<f64>,
    /// Scaled initial velocity.
    #[arg(long, allow_hyphen_values = true, requires = "x0")]
    pub v0: Option<f64>,
    /// Physical initial displacement.
    #[arg(long, allow_hyphen_values = true, requires_all = ["ydot0", "inertia", "cmax"])]
    pub y0: Option<f64>,
    /// Physical initial rate.
    #[arg(long, allow_hyphen_values = true, requires = "y0")]
    pub ydot0: Option<f64>,
    /// Inertia parameter of the physical plant.
    #[arg(long)]
    pub inertia: Option<f64>,
    /// Control saturation bound of the physical plant.
    #[arg(long)]
    pub cmax: Option<f64>,
}

impl InitialStateArgs {
    pub fn resolve(&self) -> Result<ScaledState, CliError> {
        match (self.x0, self.v0, self.y0, self.ydot0) {
            (Some(x), Some(v), None, None) => Ok(ScaledState::new(x, v)),
            (None, None, Some(y), Some(ydot)) => {
                let inertia = self.inertia.ok_or_else(|| {
                    CliError::Usage("physical input requires --inertia".into())
                })?;
                let cmax = self
                    .cmax
                    .ok_or_else(|| CliError::Usage("physical input requires --cmax".into()))?;
                let cfg = PhysicalConfig::new(inertia, cmax)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                let (scaled, _) = to_scaled(&cfg, &PhysicalState::new(y, ydot), 0.0)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                Ok(scaled)
            }
            (None, None, None, None) => Err(CliError::Usage(
                "an initial state is required: --x0 --v0 (scaled) or --y0 --ydot0 --inertia --cmax (physical)"
                    .into(),
            )),
            _ => Err(CliError::Usage(
                "give the initial state either as --x0 --v0 or as --y0 --ydot0, not both".into(),
            )),
        }
    }
}

/// One axis of a batch grid: `min:max:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl GridAxis {
    pub fn value(&self, index: usize) -> f64 {
        if self.count == 1 {
            self.min
        } else {
            self.min + (self.max - self.min) * (index as f64 / (self.count - 1) as f64)
        }
    }
}

/// Parses `xmin:xmax:n,vmin:vmax:n`.
pub fn parse_grid(spec: &str) -> Result<(GridAxis, GridAxis), CliError> {
    let bad = || CliError::Usage(format!("malformed --grid '{spec}': expected xmin:xmax:n,vmin:vmax:n"));
    let (x_part, v_part) = spec.split_once(',').ok_or_else(bad)?;
    let x = parse_axis(x_part).ok_or_else(bad)?;
    let v = parse_axis(v_part).ok_or_else(bad)?;
    Ok((x, v))
}

fn parse_axis(part: &str) -> Option<GridAxis> {
    let mut items = part.split(':');
    let min: f64 = items.next()?.trim().parse().ok()?;
    let max: f64 = items.next()?.trim().parse().ok()?;
    let count: usize = items.next()?.trim().parse().ok()?;
    if items.next().is_some() || !min.is_finite() || !max.is_finite() || min > max || count == 0 {
        return None;
    }
    Some(GridAxis { min, max, count })
}
