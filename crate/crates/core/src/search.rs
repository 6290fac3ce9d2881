//! Slack minimization over the coefficient space of a body.
//!
//! The supported slacks (T1, T2, C31, dual_iso) are smooth functions of the
//! Fourier coefficients with no cross-coordinate coupling, so a diagonal
//! Newton step — each coordinate moved to the root of its own one-dimensional
//! model, curvature and gradient taken by central differences of the closed
//! forms — converges in very few iterations. Positivity of the radial is the
//! only constraint; trial steps that cross it are backtracked toward the
//! current iterate, and if even tiny steps are infeasible every harmonic is
//! scaled toward the mean disc, which always restores feasibility without
//! increasing the slack.
//!
//! The minimizer never touches `a0` (all supported slacks are independent of
//! it) and, for the hypothesis-constrained bound, never touches coefficients
//! at multiples of `2k`, so a hypothesis-clean start stays clean.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals;
use crate::harmonic::{default_grid_nodes, grid_minimum, FourierProfile, StarBody};
use crate::inequalities::{check_hypothesis, check_lambda, check_mu, InequalityId};

/// Central-difference step for gradient and curvature probes. The slacks are
/// quadratic in each coordinate, so the difference quotients are exact up to
/// rounding and the step size only has to beat cancellation noise.
const PROBE_STEP: f64 = 1e-4;
/// Curvature below this is treated as a flat direction and left alone.
const CURVATURE_FLOOR: f64 = 1e-4;
/// Deepest backtrack before falling back to the uniform shrink.
const MAX_BACKTRACKS: u32 = 12;
/// Consecutive stalled iterations (no meaningful improvement) before giving up.
const STALL_LIMIT: usize = 3;
/// Coefficients this close to zero at the end are snapped to exact zero when
/// that is feasible and does not meaningfully increase the slack. The
/// difference-quotient curvature carries relative noise around 1e-7, so a
/// driven-down coordinate retires at |c| ~ 1e-7 |c0| rather than exactly
/// zero; the snap turns "equality body up to noise" into the actual body so
/// equality families match by coefficient support.
const SNAP_ABS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSpec {
    pub inequality: InequalityId,
    #[serde(default)]
    pub k: Option<u32>,
    #[serde(default)]
    pub lambda: Option<f64>,
    #[serde(default)]
    pub mu: Option<f64>,
    #[serde(default = "default_max_iters")]
    pub max_iters: usize,
    /// Terminal slack at or below which the search reports convergence.
    #[serde(default = "default_convergence_tol")]
    pub convergence_tol: f64,
    #[serde(default)]
    pub allow_out_of_range: bool,
}

fn default_max_iters() -> usize {
    500
}
fn default_convergence_tol() -> f64 {
    1e-10
}

impl SearchSpec {
    pub fn new(inequality: InequalityId) -> SearchSpec {
        SearchSpec {
            inequality,
            k: None,
            lambda: None,
            mu: None,
            max_iters: default_max_iters(),
            convergence_tol: default_convergence_tol(),
            allow_out_of_range: false,
        }
    }

    fn require_k(&self) -> Result<u32> {
        self.k.ok_or_else(|| {
            Error::InvalidSearch(format!("{} needs a rotation order k", self.inequality))
        })
    }

    fn validate(&self, start: &StarBody) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::InvalidSearch("max_iters must be at least 1".into()));
        }
        if !(self.convergence_tol.is_finite() && self.convergence_tol > 0.0) {
            return Err(Error::InvalidSearch(format!(
                "convergence_tol must be finite and positive, got {}",
                self.convergence_tol
            )));
        }
        match self.inequality {
            InequalityId::T1 => {
                let k = self.require_k()?;
                let lambda = self.lambda.ok_or_else(|| {
                    Error::InvalidSearch("T1 needs a lambda value".into())
                })?;
                check_lambda(k, lambda, self.allow_out_of_range)?;
                check_hypothesis(start, k)?;
            }
            InequalityId::T2 => {
                let k = self.require_k()?;
                let mu = self
                    .mu
                    .ok_or_else(|| Error::InvalidSearch("T2 needs a mu value".into()))?;
                check_mu(k, mu, self.allow_out_of_range)?;
            }
            InequalityId::C31 => {
                self.require_k()?;
            }
            InequalityId::DualIso => {}
            other => return Err(Error::UnsupportedSearch(other.to_string())),
        }
        if let Some(k) = self.k {
            if k < 2 {
                return Err(Error::InvalidOrder(k));
            }
        }
        Ok(())
    }

    fn objective(&self) -> impl Fn(&FourierProfile) -> f64 + '_ {
        let id = self.inequality;
        move |p: &FourierProfile| match id {
            InequalityId::T1 => {
                let k = self.k.expect("validated");
                let a = functionals::area_closed(p);
                let at = functionals::dual_mixed_area_disk_closed(p);
                let chord = functionals::chord_self_closed(p, k).expect("validated k");
                f64::from(k) * a + self.lambda.expect("validated") * (at * at - PI * a) - chord
            }
            InequalityId::T2 => {
                let k = self.k.expect("validated");
                let chord = functionals::chord_self_closed(p, k).expect("validated k");
                chord
                    - f64::from(k) * functionals::area_closed(p)
                    - self.mu.expect("validated") * functionals::oriented_area_closed(p)
            }
            InequalityId::C31 => {
                let k = self.k.expect("validated");
                let chord = functionals::chord_self_closed(p, k).expect("validated k");
                functionals::area_closed(p) - chord / f64::from(k)
            }
            InequalityId::DualIso => {
                PI * functionals::area_closed(p)
                    - functionals::dual_mixed_area_disk_closed(p).powi(2)
            }
            _ => unreachable!("validated against supported set"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchTrace {
    /// Slack after each accepted step; `slacks[0]` is the starting slack.
    pub slacks: Vec<f64>,
    pub iterations: usize,
    /// Terminal slack reached `convergence_tol` or below.
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub body: StarBody,
    pub trace: SearchTrace,
}

/// One coordinate move proposed by the diagonal Newton model.
struct Move {
    n: usize,
    is_b: bool,
    from: f64,
    to: f64,
}

fn coord(p: &FourierProfile, n: usize, is_b: bool) -> f64 {
    let (a, b) = p.harmonic(n);
    if is_b {
        b
    } else {
        a
    }
}

fn with_coord(p: &FourierProfile, n: usize, is_b: bool, v: f64) -> FourierProfile {
    let mut h = p.harmonics().to_vec();
    if is_b {
        h[n - 1].1 = v;
    } else {
        h[n - 1].0 = v;
    }
    FourierProfile::new(p.a0(), h).expect("finite move")
}

fn apply_moves(p: &FourierProfile, moves: &[Move], t: f64) -> FourierProfile {
    let mut h = p.harmonics().to_vec();
    for m in moves {
        let v = (1.0 - t) * m.from + t * m.to;
        if m.is_b {
            h[m.n - 1].1 = v;
        } else {
            h[m.n - 1].0 = v;
        }
    }
    FourierProfile::new(p.a0(), h).expect("finite move")
}

fn shrink_harmonics(p: &FourierProfile, factor: f64) -> FourierProfile {
    let h: Vec<(f64, f64)> =
        p.harmonics().iter().map(|&(a, b)| (factor * a, factor * b)).collect();
    FourierProfile::new(p.a0(), h).expect("finite shrink")
}

/// Drive the slack of the configured inequality as low as the positive cone
/// allows, starting from `start`. The returned body is certified; the trace
/// records the slack after every accepted step.
pub fn minimize_slack(start: &StarBody, spec: &SearchSpec) -> Result<SearchOutcome> {
    spec.validate(start)?;
    let objective = spec.objective();

    // Coordinates the model may move: every harmonic pair, minus the
    // hypothesis-frozen ones for T1.
    let skip_step = match spec.inequality {
        InequalityId::T1 => Some(2 * spec.k.expect("validated") as usize),
        _ => None,
    };
    let order = start.profile().order();
    let mut coords: Vec<(usize, bool)> = Vec::with_capacity(2 * order);
    for n in 1..=order {
        if skip_step.map_or(false, |s| n % s == 0) {
            continue;
        }
        coords.push((n, false));
        coords.push((n, true));
    }

    let nodes = default_grid_nodes(order);
    let start_min = grid_minimum(start.profile(), nodes).1;
    // Feasibility floor: three decades under the starting clearance keeps
    // the iterates certifiable while letting them ride the constraint.
    let floor = 1e-3 * start_min.min(start.profile().a0() / 2.0);
    let feasible = |p: &FourierProfile| grid_minimum(p, nodes).1 >= floor;

    let mut current = start.profile().clone();
    let mut slack = objective(&current);
    let mut trace = SearchTrace { slacks: vec![slack], iterations: 0, converged: false };
    let mut stalls = 0usize;

    for _ in 0..spec.max_iters {
        if slack <= spec.convergence_tol {
            break;
        }

        let mut moves = Vec::new();
        for &(n, is_b) in &coords {
            let c = coord(&current, n, is_b);
            let up = objective(&with_coord(&current, n, is_b, c + PROBE_STEP));
            let down = objective(&with_coord(&current, n, is_b, c - PROBE_STEP));
            let gradient = (up - down) / (2.0 * PROBE_STEP);
            let curvature = (up - 2.0 * slack + down) / (PROBE_STEP * PROBE_STEP);
            if curvature > CURVATURE_FLOOR {
                moves.push(Move { n, is_b, from: c, to: c - gradient / curvature });
            }
        }

        let mut accepted: Option<(FourierProfile, f64)> = None;
        if !moves.is_empty() {
            let mut t = 1.0;
            for _ in 0..=MAX_BACKTRACKS {
                let cand = apply_moves(&current, &moves, t);
                let cand_slack = objective(&cand);
                if cand_slack < slack && feasible(&cand) {
                    accepted = Some((cand, cand_slack));
                    break;
                }
                t /= 2.0;
            }
        }
        let (next, next_slack) = match accepted {
            Some(pair) => pair,
            None => {
                // Shrinking toward the mean disc lifts the radial minimum and
                // scales every quadratic slack term down; take it only when
                // it actually helps (it does not when the slack is already
                // dominated by flat directions).
                let cand = shrink_harmonics(&current, 0.8);
                let cand_slack = objective(&cand);
                if cand_slack < slack && feasible(&cand) {
                    (cand, cand_slack)
                } else {
                    break;
                }
            }
        };

        let improvement = slack - next_slack;
        current = next;
        slack = next_slack;
        trace.slacks.push(slack);
        trace.iterations += 1;

        if improvement <= 1e-15 * slack.abs().max(1.0) {
            stalls += 1;
            if stalls >= STALL_LIMIT {
                break;
            }
        } else {
            stalls = 0;
        }
    }

    // Final polish: zero out near-zero residue where that keeps the slack
    // flat up to evaluation noise and stays feasible. The snap moves the
    // slack by at most sum |w| SNAP_ABS^2, below what the closed forms
    // resolve, so an exact comparison would reject it at random.
    let snapped: Vec<(f64, f64)> = current
        .harmonics()
        .iter()
        .map(|&(a, b)| {
            (if a.abs() <= SNAP_ABS { 0.0 } else { a }, if b.abs() <= SNAP_ABS { 0.0 } else { b })
        })
        .collect();
    if snapped.as_slice() != current.harmonics() {
        let cand = FourierProfile::new(current.a0(), snapped).expect("finite snap");
        let cand_slack = objective(&cand);
        if cand_slack <= slack + 1e-12 * slack.abs().max(1.0) && feasible(&cand) {
            current = cand;
            slack = cand_slack;
            trace.slacks.push(slack);
            trace.iterations += 1;
        }
    }

    trace.converged = slack <= spec.convergence_tol;
    Ok(SearchOutcome { body: StarBody::certify(current)?, trace })
}
