//! Hard limits and default tolerances, collected in one place so that
//! every routine and test pins against the same numbers.

/// Default accuracy target for quadrature and series evaluation.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Hard cap on integrand evaluations for one adaptive quadrature call.
pub const MAX_QUAD_EVALS: usize = 1 << 20;

/// Maximum anti-diagonal block index in the double power series.
pub const SERIES_MAX_K: usize = 400;

/// Sup-norm envelope inside which the power series is numerically usable:
/// beyond it the alternating blocks grow past ~1e12 before decaying and
/// cancellation destroys the result in f64.
pub const SERIES_SUP_ENVELOPE: f64 = 30.0;

/// Relative guard band for boundary membership decisions: a lattice point
/// whose `| |m|_p^p - s |` falls below this (times scale) counts as "on
/// the boundary".
pub const BOUNDARY_GUARD: f64 = 1e-12;

/// Refuse lattice enumerations expected to visit more than this many points.
pub const ENUM_BUDGET: f64 = 1e9;

/// Argument where the classical Bessel evaluator switches from the power
/// series (cancellation ~ 1e-11 there) to the asymptotic expansion
/// (truncation ~ 1e-12 there).
pub const BESSEL_SWITCH: f64 = 15.0;

/// Absolute floor for identity-verification residual checks.
pub const IDENTITY_ABS_FLOOR: f64 = 1e-3;

/// Residual must stay below `TAIL_SAFETY` times the estimated series tail.
pub const TAIL_SAFETY: f64 = 3.0;

/// Samples with `|error term| <= SLOPE_FLOOR` are dropped from log-log
/// exponent fits (the log would be meaningless noise).
pub const SLOPE_FLOOR: f64 = 1e-9;

/// Geometric window ratio for windowed-maximum slope fits.
pub const WINDOW_RATIO: f64 = 1.25;

/// Minimum usable samples for an exponent fit.
pub const FIT_MIN_SAMPLES: usize = 10;

/// Ring integrals with decay exponent below this count as decaying.
pub const DECAY_SLOPE_CUTOFF: f64 = -0.1;
