use std::f64::consts::TAU;

use super::{Angle, FourierProfile};
use crate::error::{Error, Result};

/// How positivity of the radial function was certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PositivityCertificate {
    /// `a0/2 - sum_n sqrt(a_n^2 + b_n^2) > 0`: the triangle inequality bounds
    /// the radial function away from zero everywhere.
    SufficientCondition,
    /// Dense uniform grid scan found a strictly positive minimum.
    GridVerified,
}

impl std::fmt::Display for PositivityCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PositivityCertificate::SufficientCondition => write!(f, "sufficient_condition"),
            PositivityCertificate::GridVerified => write!(f, "grid_verified"),
        }
    }
}

/// A profile whose radial function has been certified positive, together
/// with the certified lower bound. Construction is the only way to get one,
/// so every consumer downstream may assume `min_radial > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct StarBody {
    profile: FourierProfile,
    min_radial: f64,
    certificate: PositivityCertificate,
}

impl StarBody {
    /// Certify `profile` with the default grid resolution
    /// `max(1024, 8 * order)`.
    pub fn certify(profile: FourierProfile) -> Result<StarBody> {
        let nodes = default_grid_nodes(profile.order());
        StarBody::certify_with_grid(profile, nodes)
    }

    /// Certify with an explicit grid resolution. The grid must be at least
    /// as fine as the default for the profile's order; a coarse scan of a
    /// high-order profile proves nothing.
    pub fn certify_with_grid(profile: FourierProfile, grid_nodes: usize) -> Result<StarBody> {
        let required = default_grid_nodes(profile.order());
        if grid_nodes < required {
            return Err(Error::GridTooCoarse { required, given: grid_nodes });
        }
        let slack_bound = profile.a0() / 2.0
            - profile.harmonics().iter().map(|&(a, b)| a.hypot(b)).sum::<f64>();
        if slack_bound > 0.0 {
            return Ok(StarBody {
                profile,
                min_radial: slack_bound,
                certificate: PositivityCertificate::SufficientCondition,
            });
        }
        let (argmin, value) = grid_minimum(&profile, grid_nodes);
        if value > 0.0 {
            Ok(StarBody { profile, min_radial: value, certificate: PositivityCertificate::GridVerified })
        } else {
            Err(Error::PositivityRejected { argmin, value, nodes: grid_nodes })
        }
    }

    /// The disc of radius `a0/2`.
    pub fn disc(a0: f64) -> StarBody {
        StarBody::certify(FourierProfile::disc(a0)).expect("discs are positive")
    }

    /// Disc with the same mean term (`(a0/2) B`), the natural comparison
    /// body in the stability bounds.
    pub fn mean_disc(&self) -> StarBody {
        StarBody::disc(self.profile.a0())
    }

    pub fn profile(&self) -> &FourierProfile {
        &self.profile
    }

    /// Certified lower bound for the radial minimum; the true minimum may
    /// sit higher when the certificate is the sufficient condition.
    pub fn min_radial(&self) -> f64 {
        self.min_radial
    }

    pub fn certificate(&self) -> PositivityCertificate {
        self.certificate
    }
}

pub(crate) fn default_grid_nodes(order: usize) -> usize {
    1024.max(8 * order)
}

/// Minimum of the radial function over a uniform grid, with its argmin.
pub(crate) fn grid_minimum(profile: &FourierProfile, nodes: usize) -> (f64, f64) {
    let mut best_t = 0.0;
    let mut best_v = f64::INFINITY;
    for j in 0..nodes {
        let t = TAU * j as f64 / nodes as f64;
        let v = profile.radial(Angle::new(t));
        if v < best_v {
            best_v = v;
            best_t = t;
        }
    }
    (best_t, best_v)
}
