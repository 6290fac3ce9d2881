//! Numerical laboratory for sharp chord-integral inequalities on planar
//! star bodies with square-integrable radial profiles.
//!
//! A body is a truncated Fourier radial profile certified positive. Every
//! functional of interest (area, oriented area, dual mixed area against the
//! unit disc, dual L2 distance, folded self-chord integral, shifted
//! correlation integral) is computed along two independent routes: a
//! Parseval closed form and a periodic trapezoid rule that is exact for
//! trigonometric polynomials below its node count. Inequality slacks are
//! built on the closed forms and cross-checked against the quadrature
//! route; seeded ensembles, parameter sweeps, slack minimization, and
//! deterministic artifact rendering sit on top.

pub mod ensemble;
pub mod error;
pub mod functionals;
pub mod harmonic;
pub mod inequalities;
pub mod quadrature;
pub mod report;
pub mod search;
pub mod tol;

pub use ensemble::{
    sample_ensemble, sample_star_body, sweep, EnsembleSpec, SweepGrid, SweepRow, SweepSummary,
    SweepTable,
};
pub use error::{Error, Result};
pub use functionals::{
    area, area_checked, area_quadrature, chord_fold_residual, chord_mixed_integral,
    chord_mixed_integral_checked, chord_mixed_integral_quadrature, chord_self_integral,
    chord_self_integral_checked, chord_self_integral_quadrature, correlation_fold_residual,
    dual_l2_distance, dual_l2_distance_checked, dual_l2_distance_quadrature,
    dual_mixed_area_disk, dual_mixed_area_disk_checked, dual_mixed_area_disk_quadrature,
    identity_residual, oriented_area, oriented_area_checked, oriented_area_quadrature,
    FunctionalValue, IdentityCheck, Method,
};
pub use harmonic::{Angle, EqualityFamily, FourierProfile, PositivityCertificate, StarBody};
pub use inequalities::{
    classify_equality, designated_family, limit_sequence, margin_stab35, margin_stab37,
    slack_c31, slack_dual_iso, slack_mixed_iso, slack_t1, slack_t2, slack_t3, EvalOptions,
    InequalityId, LimitRow, Parameters, SlackReport, Verdict, CSV_HEADER,
};
pub use quadrature::{
    chord_self_direct, chord_self_oracle, correlation_integral, doubling_residual,
    periodic_trapezoid, QuadratureSpec,
};
pub use report::{limit_artifacts, search_artifacts, sweep_artifacts, ArtifactSet};
pub use search::{minimize_slack, SearchOutcome, SearchSpec, SearchTrace};
