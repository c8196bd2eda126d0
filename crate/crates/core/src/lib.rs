//! Exact minimum-time control of the double integrator.
//!
//! Given any phase-plane state, [`plan`] returns the time-optimal bang-bang
//! schedule driving `x'' = u`, `|u| <= 1` to the origin, in closed form:
//! one bang if the state already sits on the switching curve, two bangs
//! with one switch otherwise. Around that kernel the crate provides
//!
//! * [`scaling`] - physical units in and out of the normalized coordinates;
//! * [`synthesis`] - the switching curve, the plan, and the feedback law;
//! * [`certificate`] - Hamiltonian/costate optimality certificates;
//! * [`trajectory`] - closed-form sampling and time-of-flight identities;
//! * [`oracle`] - an independent RK4 integrator and brute-force search that
//!   validate the analytic results without reusing their formulas;
//! * [`regulation`] - the discrete closed-loop form of the feedback law.
//!
//! ```
//! use ditop::{plan, ScaledState, DEFAULT_EPS_CURVE};
//!
//! let p = plan(&ScaledState::new(2.0, 1.0), DEFAULT_EPS_CURVE).unwrap();
//! assert_eq!(p.bangs.len(), 2);
//! assert!((p.total_time - 4.16227766016838).abs() < 1e-12);
//! ```

pub mod certificate;
pub mod error;
pub mod oracle;
pub mod regulation;
pub mod scaling;
pub mod synthesis;
pub mod trajectory;

pub use certificate::{build_certificate, Certificate, VerificationReport};
pub use error::{Error, Result};
pub use oracle::{grid_search_min_time, integrate_schedule, OracleResult};
pub use regulation::{regulate, RegulationOutcome, RegulationParams};
pub use scaling::{to_physical, to_scaled, PhysicalConfig, PhysicalState, ScaledState};
pub use synthesis::{
    classify, feedback_control, plan, switch_state, switching_curve_value, Bang, CaseTag, Plan,
    DEFAULT_EPS_CURVE,
};
pub use trajectory::{
    parabola_constant, plan_state_at, propagate_const, time_across_switch, time_between,
    trajectory_of_plan, ArcKind, ParabolaArc, TrajectorySample,
};
