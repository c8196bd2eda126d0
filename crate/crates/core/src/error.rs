//! Error type shared by every module of the crate.
//!
//! Preconditions are validated, not assumed: a caller passing a saturated
//! control, a reversed point pair, or a non-positive tolerance gets a
//! dedicated error instead of a silently clamped result.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Physical configuration with non-positive inertia or control bound.
    #[error("inertia and control bound must be positive and finite (inertia={inertia}, control_max={control_max})")]
    InvalidConfig { inertia: f64, control_max: f64 },

    /// A physical control magnitude above the configured bound.
    #[error("control {control} exceeds the saturation bound {control_max}")]
    ControlSaturated { control: f64, control_max: f64 },

    /// A scaled control outside the unit interval.
    #[error("scaled control {u} lies outside [-1, 1]")]
    ControlOutOfBounds { u: f64 },

    /// State with NaN or infinite components.
    #[error("state has non-finite components")]
    NonFiniteState,

    /// Non-positive or non-finite tolerance parameter.
    #[error("tolerance must be positive and finite (got {value})")]
    InvalidTolerance { value: f64 },

    /// A time outside the interval where the operation is defined.
    #[error("time {t} lies outside [0, {t_max}]")]
    TimeOutOfRange { t: f64, t_max: f64 },

    /// Negative propagation time or segment duration.
    #[error("duration must be non-negative (got {duration})")]
    NegativeDuration { duration: f64 },

    /// Operation defined only for off-curve plans or states.
    #[error("operation requires an off-curve state")]
    OffCurveRequired,

    /// The caller-supplied sign does not match the state's own curve side.
    #[error("sign {given} does not match the state's curve side {expected}")]
    SigmaMismatch { expected: f64, given: f64 },

    /// A sign argument that must be exactly -1 or +1.
    #[error("sign argument must be -1 or +1 (got {sigma})")]
    InvalidSigma { sigma: f64 },

    /// A certificate was requested for the empty plan.
    #[error("the origin plan has no certificate: there is no maneuver to certify")]
    OriginPlanHasNoCertificate,

    /// Multiplier rho must be strictly positive; rho = 0 would force the
    /// zero costate, which the non-triviality condition forbids.
    #[error("multiplier rho must be strictly positive (got {rho})")]
    NontrivialMultiplierRequired { rho: f64 },

    /// Two points expected on a common parabola arc are not on one.
    #[error("points are not on a common arc (constants {c_a} and {c_b})")]
    NotOnCommonArc { c_a: f64, c_b: f64 },

    /// Point pair passed in reverse traversal order.
    #[error("points are ordered against the arc traversal (elapsed {elapsed})")]
    ReversedArcOrder { elapsed: f64 },

    /// Non-positive integration or search step.
    #[error("step must be positive and finite (got {step})")]
    InvalidStep { step: f64 },

    /// Non-positive acceptance radius.
    #[error("acceptance radius must be positive and finite (got {radius})")]
    InvalidRadius { radius: f64 },

    /// Fewer samples than the operation can work with.
    #[error("at least {min} samples required (got {n})")]
    TooFewSamples { n: usize, min: usize },

    /// The brute-force search found no schedule ending near the origin.
    #[error("search found no schedule within radius {accept_radius} (best miss {best_miss})")]
    SearchFailed { best_miss: f64, accept_radius: f64 },

    /// The origin was passed to an operation that needs a maneuver.
    #[error("the origin needs no maneuver; pass a non-origin state")]
    OriginExcluded,
}
