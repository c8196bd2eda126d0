//! Minimum-time bang-bang synthesis for the double integrator.
//!
//! Driving `x'' = u`, `|u| <= 1` from an arbitrary phase-plane state to the
//! origin takes at most two control bangs. Which applies is decided by the
//! switching curve `F(x, x_dot) = x + sgn(x_dot) * x_dot^2 / 2 = 0`, two
//! semi-parabolas joined at the origin:
//!
//! * on the curve: one bang `u = -sgn(x_dot)` rides the curve home in time
//!   `|x_dot|`;
//! * off the curve: a first bang `u = -sigma0` (where `sigma0 = sgn(F)`)
//!   steers onto the curve, a second bang `u = +sigma0` rides it to the
//!   origin. With `lambda0 = sqrt(sigma0 * x + x_dot^2 / 2)` the bang
//!   durations are `delta1 = lambda0 + sigma0 * x_dot` and
//!   `delta2 = lambda0`, for a minimal total of
//!   `t_star = 2 * lambda0 + sigma0 * x_dot`.
//!
//! Because the solution covers every initial state, evaluating the first
//! bang of the plan at the current state *is* the optimal feedback law; see
//! [`feedback_control`].

use crate::error::{Error, Result};
use crate::scaling::ScaledState;

/// Default relative tolerance for deciding that a state sits on the
/// switching curve. Curve membership is measure-zero in floating point, so
/// classification accepts `|F| <= eps * (1 + ||s||^2)`.
pub const DEFAULT_EPS_CURVE: f64 = 1e-9;

/// Sign with `sgn(0) = 0`, so that `F(x, 0) = x` and the zero-velocity
/// special case falls out of the general formulas.
pub(crate) fn sgn(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Which branch of the synthesis applies to an initial state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// Already at the target; the plan is empty.
    AtOrigin,
    /// On the switching curve; a single bang rides it to the origin.
    OnCurve,
    /// Off the curve; two bangs with one switch.
    OffCurve,
}

/// One constant-control segment of a plan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bang {
    /// Control value, -1 or +1 (0 never appears: the origin plan is empty).
    pub u: f64,
    /// Segment length in scaled time, non-negative.
    pub duration: f64,
}

/// The exact minimum-time schedule for one initial state.
///
/// `total_time` is always the sum of the bang durations. `sigma0` is the
/// sign of the switching function at the initial state (0 on the curve and
/// at the origin). `lambda0` and `switch_point` are present exactly for
/// off-curve plans; they are kept on the plan so that certificates can be
/// built without recomputation.
#[derive(Debug, Clone, PartialEq)]
pub struct Plan {
    pub initial: ScaledState,
    pub case_tag: CaseTag,
    pub bangs: Vec<Bang>,
    pub total_time: f64,
    pub switch_point: Option<ScaledState>,
    pub sigma0: f64,
    pub lambda0: Option<f64>,
}

impl Plan {
    /// Duration of the first bang (the switch instant for off-curve plans).
    pub fn delta1(&self) -> Option<f64> {
        self.bangs.first().map(|b| b.duration)
    }

    /// Duration of the second bang.
    pub fn delta2(&self) -> Option<f64> {
        self.bangs.get(1).map(|b| b.duration)
    }

    /// Control value of the first bang.
    pub fn first_control(&self) -> Option<f64> {
        self.bangs.first().map(|b| b.u)
    }

    /// The schedule as plain `(u, duration)` pairs, the form the numerical
    /// integrator consumes.
    pub fn control_schedule(&self) -> Vec<(f64, f64)> {
        self.bangs.iter().map(|b| (b.u, b.duration)).collect()
    }

    /// Scheduled control at time `t`. The switch instant belongs to the
    /// second bang: the first bang covers `[0, delta1)`, the second
    /// `[delta1, t_star]`.
    pub fn control_at(&self, t: f64) -> Result<f64> {
        if !(0.0..=self.total_time).contains(&t) {
            return Err(Error::TimeOutOfRange {
                t,
                t_max: self.total_time,
            });
        }
        match self.case_tag {
            CaseTag::AtOrigin => Ok(0.0),
            CaseTag::OnCurve => Ok(self.bangs[0].u),
            CaseTag::OffCurve => {
                if t < self.bangs[0].duration {
                    Ok(self.bangs[0].u)
                } else {
                    Ok(self.bangs[1].u)
                }
            }
        }
    }
}

/// Value of the switching-curve function `F = x + sgn(x_dot) * x_dot^2 / 2`.
///
/// `F = 0` is the switching curve itself; the sign of `F` says on which
/// side of it the state lies, and flips under point reflection through the
/// origin.
pub fn switching_curve_value(s: &ScaledState) -> f64 {
    s.x + sgn(s.x_dot) * s.x_dot * s.x_dot / 2.0
}

/// Classifies a state against the switching curve.
///
/// Returns the case tag together with `sigma0 = sgn(F)` (0 for the origin
/// and on-curve cases). A state counts as the origin when both components
/// are within `eps_curve`, and as on-curve when
/// `|F| <= eps_curve * (1 + ||s||^2)`.
pub fn classify(s: &ScaledState, eps_curve: f64) -> (CaseTag, f64) {
    if s.x.abs() <= eps_curve && s.x_dot.abs() <= eps_curve {
        return (CaseTag::AtOrigin, 0.0);
    }
    let f0 = switching_curve_value(s);
    // The curve contains no zero-velocity point other than the origin, so a
    // resting state is always off-curve regardless of tolerance.
    if s.x_dot != 0.0 && f0.abs() <= eps_curve * (1.0 + s.norm_sq()) {
        (CaseTag::OnCurve, 0.0)
    } else {
        (CaseTag::OffCurve, sgn(f0))
    }
}

/// Computes the exact minimum-time plan for an initial state.
pub fn plan(s: &ScaledState, eps_curve: f64) -> Result<Plan> {
    if !s.is_finite() {
        return Err(Error::NonFiniteState);
    }
    if !(eps_curve.is_finite() && eps_curve > 0.0) {
        return Err(Error::InvalidTolerance { value: eps_curve });
    }
    let (case_tag, sigma0) = classify(s, eps_curve);
    match case_tag {
        CaseTag::AtOrigin => Ok(Plan {
            initial: *s,
            case_tag,
            bangs: Vec::new(),
            total_time: 0.0,
            switch_point: None,
            sigma0,
            lambda0: None,
        }),
        CaseTag::OnCurve => {
            let u = -sgn(s.x_dot);
            let duration = s.x_dot.abs();
            Ok(Plan {
                initial: *s,
                case_tag,
                bangs: vec![Bang { u, duration }],
                total_time: duration,
                switch_point: None,
                sigma0,
                lambda0: None,
            })
        }
        CaseTag::OffCurve => {
            // sigma0 * x + x_dot^2 / 2 is strictly positive off the curve;
            // the clamp only guards round-off for states the tolerance rule
            // has already pulled onto the curve.
            let lambda0 = (sigma0 * s.x + s.x_dot * s.x_dot / 2.0).max(0.0).sqrt();
            let delta1 = lambda0 + sigma0 * s.x_dot;
            let delta2 = lambda0;
            let switch_point = ScaledState::new(
                0.5 * (s.x + 0.5 * sigma0 * s.x_dot * s.x_dot),
                -sigma0 * lambda0,
            );
            Ok(Plan {
                initial: *s,
                case_tag,
                bangs: vec![
                    Bang {
                        u: -sigma0,
                        duration: delta1,
                    },
                    Bang {
                        u: sigma0,
                        duration: delta2,
                    },
                ],
                total_time: delta1 + delta2,
                switch_point: Some(switch_point),
                sigma0,
                lambda0: Some(lambda0),
            })
        }
    }
}

/// The phase-plane point where an off-curve trajectory leaves its first
/// parabola arc and joins the switching curve.
///
/// `sigma0` must be the state's own curve side; calling this for an
/// on-curve or origin state is a precondition error.
pub fn switch_state(s: &ScaledState, sigma0: f64) -> Result<ScaledState> {
    if !s.is_finite() {
        return Err(Error::NonFiniteState);
    }
    if sigma0 != 1.0 && sigma0 != -1.0 {
        return Err(Error::InvalidSigma { sigma: sigma0 });
    }
    let (case_tag, expected) = classify(s, DEFAULT_EPS_CURVE);
    if case_tag != CaseTag::OffCurve {
        return Err(Error::OffCurveRequired);
    }
    if expected != sigma0 {
        return Err(Error::SigmaMismatch {
            expected,
            given: sigma0,
        });
    }
    let lambda0 = (sigma0 * s.x + s.x_dot * s.x_dot / 2.0).max(0.0).sqrt();
    Ok(ScaledState::new(
        0.5 * (s.x + 0.5 * sigma0 * s.x_dot * s.x_dot),
        -sigma0 * lambda0,
    ))
}

/// State-feedback form of the synthesis: the control the optimal plan
/// applies right now at `s`.
///
/// Off the curve this is `-sigma0`, on the curve `-sgn(x_dot)`, and 0 at
/// the origin (the unique control that keeps the state there).
pub fn feedback_control(s: &ScaledState, eps_curve: f64) -> f64 {
    let (case_tag, sigma0) = classify(s, eps_curve);
    match case_tag {
        CaseTag::AtOrigin => 0.0,
        CaseTag::OnCurve => -sgn(s.x_dot),
        CaseTag::OffCurve => -sigma0,
    }
}
