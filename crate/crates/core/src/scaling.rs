//! Conversion between physical coordinates and the normalized phase plane.
//!
//! The plant `I * y'' = C`, `|C| <= C_max` becomes `x'' = u`, `|u| <= 1`
//! under `x = (I / C_max) * y`, `u = C / C_max`. Time is untouched, so a
//! trajectory sampled at `{t_i}` maps pointwise to the scaled trajectory at
//! the same instants. All synthesis math in this crate works in the scaled
//! coordinates; this module is the only place units appear.

use crate::error::{Error, Result};

/// Inertia and control bound defining the unit scaling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConfig {
    /// Inertia parameter `I` (mass or rotational inertia units).
    pub inertia: f64,
    /// Saturation bound `C_max` on the control magnitude.
    pub control_max: f64,
}

impl PhysicalConfig {
    pub fn new(inertia: f64, control_max: f64) -> Result<Self> {
        let cfg = Self {
            inertia,
            control_max,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.inertia.is_finite()
            && self.control_max.is_finite()
            && self.inertia > 0.0
            && self.control_max > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidConfig {
                inertia: self.inertia,
                control_max: self.control_max,
            })
        }
    }
}

/// Displacement and rate in physical units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalState {
    pub y: f64,
    pub y_dot: f64,
}

impl PhysicalState {
    pub fn new(y: f64, y_dot: f64) -> Self {
        Self { y, y_dot }
    }

    pub fn is_finite(&self) -> bool {
        self.y.is_finite() && self.y_dot.is_finite()
    }
}

/// Phase-plane point in normalized units: dimensionless position `x` and
/// velocity `x_dot`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledState {
    pub x: f64,
    pub x_dot: f64,
}

impl ScaledState {
    pub const ORIGIN: Self = Self { x: 0.0, x_dot: 0.0 };

    pub fn new(x: f64, x_dot: f64) -> Self {
        Self { x, x_dot }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.x_dot.is_finite()
    }

    /// Euclidean distance from the origin.
    pub fn norm(&self) -> f64 {
        self.x.hypot(self.x_dot)
    }

    /// Squared Euclidean norm, the scale factor in the relative tolerances
    /// used throughout the crate.
    pub fn norm_sq(&self) -> f64 {
        self.x * self.x + self.x_dot * self.x_dot
    }
}

/// Maps a physical state and control to scaled coordinates.
///
/// Returns the scaled state together with `u = C / C_max`. The control is
/// validated against the saturation bound; a violation is an error, never a
/// silent clip.
pub fn to_scaled(
    cfg: &PhysicalConfig,
    s: &PhysicalState,
    control: f64,
) -> Result<(ScaledState, f64)> {
    cfg.validate()?;
    if !s.is_finite() || !control.is_finite() {
        return Err(Error::NonFiniteState);
    }
    if control.abs() > cfg.control_max {
        return Err(Error::ControlSaturated {
            control,
            control_max: cfg.control_max,
        });
    }
    let ratio = cfg.inertia / cfg.control_max;
    let scaled = ScaledState::new(ratio * s.y, ratio * s.y_dot);
    Ok((scaled, control / cfg.control_max))
}

/// Inverse of [`to_scaled`]: recovers the physical state and control.
pub fn to_physical(cfg: &PhysicalConfig, s: &ScaledState, u: f64) -> Result<(PhysicalState, f64)> {
    cfg.validate()?;
    if !s.is_finite() || !u.is_finite() {
        return Err(Error::NonFiniteState);
    }
    if u.abs() > 1.0 {
        return Err(Error::ControlOutOfBounds { u });
    }
    let ratio = cfg.control_max / cfg.inertia;
    let physical = PhysicalState::new(ratio * s.x, ratio * s.x_dot);
    Ok((physical, u * cfg.control_max))
}
