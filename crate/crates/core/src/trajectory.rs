//! Closed-form propagation and sampling of piecewise-parabolic trajectories.
//!
//! Under constant control the state evolves exactly as
//! `x(t) = u t^2 / 2 + x_dot0 t + x0`, `x_dot(t) = u t + x_dot0`, tracing a
//! parabola `x - u x_dot^2 / 2 = const` in the phase plane. An optimal plan
//! is one or two such arcs; this module samples them, and evaluates the
//! time-of-flight identities that relate velocity differences along an arc
//! to elapsed time.

use crate::error::{Error, Result};
use crate::scaling::ScaledState;
use crate::synthesis::{CaseTag, Plan};

/// Relative tolerance for deciding that two points share a parabola arc.
/// Mirrors the synthesis module's curve tolerance.
const ARC_TOL: f64 = 1e-9;

/// One point of a sampled trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    pub state: ScaledState,
    pub u: f64,
}

/// Names the two arcs of an off-curve plan: `P1` from the initial state to
/// the switch point (control `-sigma0`), `P2` from the switch point to the
/// origin (control `+sigma0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcKind {
    P1,
    P2,
}

/// A constant-control parabola arc with both endpoints pinned.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolaArc {
    /// Arc control, -1 or +1.
    pub u: f64,
    /// The conserved quantity `x - u x_dot^2 / 2`.
    pub c: f64,
    pub start: ScaledState,
    pub end: ScaledState,
}

impl ParabolaArc {
    /// Builds an arc from its endpoints, checking that both lie on the same
    /// parabola of the `u` family.
    pub fn new(u: f64, start: ScaledState, end: ScaledState) -> Result<Self> {
        if u != 1.0 && u != -1.0 {
            return Err(Error::ControlOutOfBounds { u });
        }
        let c_a = parabola_constant(&start, u);
        let c_b = parabola_constant(&end, u);
        if (c_a - c_b).abs() > ARC_TOL * (1.0 + c_a.abs().max(c_b.abs())) {
            return Err(Error::NotOnCommonArc { c_a, c_b });
        }
        Ok(Self {
            u,
            c: c_a,
            start,
            end,
        })
    }
}

/// Propagates a state under constant control for a non-negative time.
pub fn propagate_const(s: &ScaledState, u: f64, t: f64) -> Result<ScaledState> {
    if !s.is_finite() {
        return Err(Error::NonFiniteState);
    }
    if !(u.is_finite() && u.abs() <= 1.0) {
        return Err(Error::ControlOutOfBounds { u });
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::NegativeDuration { duration: t });
    }
    Ok(ScaledState::new(
        u * t * t / 2.0 + s.x_dot * t + s.x,
        u * t + s.x_dot,
    ))
}

/// The quantity `x - u x_dot^2 / 2`, constant along any constant-`u`
/// trajectory.
pub fn parabola_constant(s: &ScaledState, u: f64) -> f64 {
    s.x - 0.5 * u * s.x_dot * s.x_dot
}

/// State and scheduled control of a plan at time `t` in `[0, t_star]`.
///
/// Off-curve plans restart the closed form from the exact switch point, so
/// the second arc does not inherit round-off from the first. The switch
/// instant itself carries the second bang's control.
pub fn plan_state_at(plan: &Plan, t: f64) -> Result<(ScaledState, f64)> {
    if !(0.0..=plan.total_time).contains(&t) {
        return Err(Error::TimeOutOfRange {
            t,
            t_max: plan.total_time,
        });
    }
    match plan.case_tag {
        CaseTag::AtOrigin => Ok((plan.initial, 0.0)),
        CaseTag::OnCurve => {
            let u = plan.bangs[0].u;
            Ok((propagate_const(&plan.initial, u, t)?, u))
        }
        CaseTag::OffCurve => {
            let delta1 = plan.bangs[0].duration;
            if t < delta1 {
                let u = plan.bangs[0].u;
                Ok((propagate_const(&plan.initial, u, t)?, u))
            } else {
                let u = plan.bangs[1].u;
                let switch = plan.switch_point.expect("off-curve plan has a switch point");
                Ok((propagate_const(&switch, u, t - delta1)?, u))
            }
        }
    }
}

/// Samples a plan's trajectory at `n_samples` uniformly spaced times in
/// `[0, t_star]`, always including `t = 0`, the exact switch instant (for
/// off-curve plans) and `t = t_star`.
///
/// For the degenerate origin plan every sample is the single point
/// `(0, origin, 0)` repeated `n_samples` times.
pub fn trajectory_of_plan(plan: &Plan, n_samples: usize) -> Result<Vec<TrajectorySample>> {
    if n_samples < 2 {
        return Err(Error::TooFewSamples {
            n: n_samples,
            min: 2,
        });
    }
    if plan.total_time == 0.0 {
        let (state, u) = plan_state_at(plan, 0.0)?;
        return Ok(vec![TrajectorySample { t: 0.0, state, u }; n_samples]);
    }

    // Grid built as t_star * (i / (n - 1)) so both endpoints are exact.
    let last = (n_samples - 1) as f64;
    let mut times: Vec<f64> = (0..n_samples)
        .map(|i| plan.total_time * (i as f64 / last))
        .collect();
    if plan.case_tag == CaseTag::OffCurve {
        let delta1 = plan.bangs[0].duration;
        if !times.contains(&delta1) {
            times.push(delta1);
        }
        times.sort_by(|a, b| a.partial_cmp(b).expect("finite sample times"));
    }
    times
        .into_iter()
        .map(|t| {
            let (state, u) = plan_state_at(plan, t)?;
            Ok(TrajectorySample { t, state, u })
        })
        .collect()
}

/// Time of flight between two successive points on one arc of an off-curve
/// plan, computed from the velocity difference alone: `P1` descends at rate
/// `-sigma0`, `P2` ascends at rate `+sigma0`.
///
/// Both points must lie on a common parabola of the arc's control family,
/// and `b` must come after `a` under the arc's traversal; a negative
/// elapsed time signals reversed arguments and is an error, not a value.
pub fn time_between(a: &ScaledState, b: &ScaledState, arc: ArcKind, sigma0: f64) -> Result<f64> {
    if sigma0 != 1.0 && sigma0 != -1.0 {
        return Err(Error::InvalidSigma { sigma: sigma0 });
    }
    let u = match arc {
        ArcKind::P1 => -sigma0,
        ArcKind::P2 => sigma0,
    };
    let c_a = parabola_constant(a, u);
    let c_b = parabola_constant(b, u);
    if (c_a - c_b).abs() > ARC_TOL * (1.0 + c_a.abs().max(c_b.abs())) {
        return Err(Error::NotOnCommonArc { c_a, c_b });
    }
    let elapsed = (b.x_dot - a.x_dot) / u;
    if elapsed < 0.0 {
        return Err(Error::ReversedArcOrder { elapsed });
    }
    Ok(elapsed)
}

/// Time of flight from a point `b` on the first arc to a point `c` on the
/// second arc of an off-curve plan: the leg from `b` to the switch point
/// plus the leg from the switch point to `c`.
pub fn time_across_switch(b: &ScaledState, c: &ScaledState, plan: &Plan) -> Result<f64> {
    if plan.case_tag != CaseTag::OffCurve {
        return Err(Error::OffCurveRequired);
    }
    let switch = plan.switch_point.expect("off-curve plan has a switch point");
    let first = time_between(b, &switch, ArcKind::P1, plan.sigma0)?;
    let second = time_between(&switch, c, ArcKind::P2, plan.sigma0)?;
    Ok(first + second)
}
