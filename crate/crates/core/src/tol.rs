//! Pinned numerical tolerances, shared by the library, the CLI, and the
//! acceptance suite. Each constant states what it gates; tests assert the
//! orderings the suite relies on.

/// Closed form vs quadrature agreement, relative to `max(1, |value|)`.
/// Both routes are exact up to rounding for band-limited data, so 1e-9
/// leaves four orders of magnitude above accumulated f64 noise.
pub const CROSS_CHECK_REL: f64 = 1e-9;

/// Verdict classification scale: a slack within
/// `VERDICT_REL * max(1, |lhs|, |rhs|)` of zero counts as equality, below
/// the negated tolerance as a violation.
pub const VERDICT_REL: f64 = 1e-9;

/// Absolute slack bound certified for bodies constructed inside an equality
/// family (exact coefficient sparsity, so only rounding survives).
pub const EQUALITY_FAMILY_ABS: f64 = 1e-10;

/// Minimum slack a 1e-3 perturbation of a forbidden coefficient must
/// produce: the quadratic deficit forms give >= ~3e-7 for every probed
/// index, comfortably above this floor.
pub const SHARPNESS_MIN_SLACK: f64 = 1e-7;

/// Size of the coefficient perturbation used in sharpness probes.
pub const SHARPNESS_PERTURBATION: f64 = 1e-3;

/// Absolute bound on fold-identity residuals (both sides quadrature).
pub const IDENTITY_RESIDUAL_ABS: f64 = 1e-9;

/// Allowed inversion when checking monotonicity of the deficit functions
/// along their parameter (pure rounding allowance).
pub const MONOTONE_EPS: f64 = 1e-12;

/// Deviation of the normalized correlation from its large-k limit for
/// orders beyond the truncation: identically zero in exact arithmetic.
pub const LIMIT_DEVIATION_ABS: f64 = 1e-10;

/// Coefficient norms below this count as structurally zero (hypothesis
/// checks, family membership).
pub const COEFF_SUPPORT_ABS: f64 = 1e-12;

/// Slack below which a minimization run counts as converged to equality.
pub const SEARCH_TERMINAL_SLACK: f64 = 1e-6;

/// Residual coefficient mass allowed outside the target family support
/// after minimization.
pub const SEARCH_FAMILY_MASS: f64 = 1e-3;

/// Scale-relative tolerance used when the two evaluation routes of the same
/// functional are compared in property tests.
pub const ROUTE_AGREEMENT_REL: f64 = 1e-10;
