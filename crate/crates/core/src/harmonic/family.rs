use serde::{Deserialize, Serialize};

use super::{FourierProfile, StarBody};
use crate::error::{Error, Result};

/// Structured coefficient supports on which the sharp inequalities attain
/// equality. A profile "lies in" a family when its support is a subset of
/// the family's allowed indices; the disc (empty support) lies in all of
/// them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EqualityFamily {
    /// No harmonics at all: `rho = a0/2`.
    Disc,
    /// Support inside `{1}`: an off-center disc to first order.
    FirstHarmonic,
    /// Support inside the multiples of k.
    KMultiples { k: u32 },
    /// Support inside the even multiples of k (multiples of 2k).
    EvenKMultiples { k: u32 },
}

impl EqualityFamily {
    /// May harmonic index `n` carry a nonzero coefficient in this family?
    pub fn allows(&self, n: usize) -> bool {
        match *self {
            EqualityFamily::Disc => false,
            EqualityFamily::FirstHarmonic => n == 1,
            EqualityFamily::KMultiples { k } => n % (k as usize) == 0,
            EqualityFamily::EvenKMultiples { k } => n % (2 * k as usize) == 0,
        }
    }

    /// Does the profile's support lie inside the family, up to coefficient
    /// norms of `tol` at forbidden indices?
    pub fn contains(&self, profile: &FourierProfile, tol: f64) -> bool {
        profile
            .harmonics()
            .iter()
            .enumerate()
            .all(|(i, &(a, b))| self.allows(i + 1) || a.hypot(b) <= tol)
    }

    /// Build a certified body in this family: mean term `a0` plus the given
    /// `(index, a_n, b_n)` assignments, all of which must sit on allowed
    /// indices. Positivity is certified like any other body.
    pub fn materialize(&self, a0: f64, assignments: &[(usize, f64, f64)]) -> Result<StarBody> {
        for &(n, _, _) in assignments {
            if !self.allows(n) {
                return Err(Error::IndexNotInFamily { family: self.to_string(), index: n });
            }
        }
        let n_max = assignments.iter().map(|&(n, _, _)| n).max().unwrap_or(0);
        let mut harmonics = vec![(0.0, 0.0); n_max];
        for &(n, a, b) in assignments {
            harmonics[n - 1] = (a, b);
        }
        StarBody::certify(FourierProfile::new(a0, harmonics)?)
    }
}

impl std::fmt::Display for EqualityFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            EqualityFamily::Disc => write!(f, "disc"),
            EqualityFamily::FirstHarmonic => write!(f, "first_harmonic"),
            EqualityFamily::KMultiples { k } => write!(f, "k_multiples({k})"),
            EqualityFamily::EvenKMultiples { k } => write!(f, "even_k_multiples({k})"),
        }
    }
}
