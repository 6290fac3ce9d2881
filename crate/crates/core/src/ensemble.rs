//! Seeded random bodies and parameter sweeps over them.
//!
//! Reproducibility contract: body `i` of an ensemble is a pure function of
//! `(spec, i)`. Each index gets its own counter-mode RNG stream, so bodies
//! can be drawn in any order, in parallel, or one at a time, and a prefix of
//! a larger ensemble equals the smaller ensemble with the same seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonic::{default_grid_nodes, grid_minimum, Angle, FourierProfile, StarBody};
use crate::inequalities::{
    slack_c31, slack_dual_iso, slack_mixed_iso, slack_t1, slack_t2, slack_t3, margin_stab35,
    margin_stab37, EvalOptions, InequalityId, Parameters, SlackReport, Verdict,
};

/// Recipe for a reproducible family of star bodies.
///
/// Coefficients are drawn as `a_n, b_n ~ N(0, (sigma / n^decay_exponent)^2)`
/// after `a0 ~ U[a0_range]`; draw order is `a0, a1, b1, a2, b2, ...`. When a
/// draw lands outside the positive cone, all harmonics are scaled by 0.8
/// until the grid minimum of the radial clears
/// `positivity_floor * a0 / 2`, so every returned body is comfortably
/// star-shaped rather than grazing zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleSpec {
    pub count: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_n_max")]
    pub n_max: usize,
    #[serde(default = "default_a0_range")]
    pub a0_range: (f64, f64),
    #[serde(default = "default_sigma")]
    pub sigma: f64,
    #[serde(default = "default_decay")]
    pub decay_exponent: f64,
    /// Project away harmonics at multiples of `2k` so every body satisfies
    /// the admissibility hypothesis of the strengthened upper chord bound.
    #[serde(default)]
    pub hypothesis_k: Option<u32>,
    /// Radial floor as a fraction of `a0 / 2`.
    #[serde(default = "default_floor")]
    pub positivity_floor: f64,
}

fn default_n_max() -> usize {
    64
}
fn default_a0_range() -> (f64, f64) {
    (1.0, 3.0)
}
fn default_sigma() -> f64 {
    0.5
}
fn default_decay() -> f64 {
    2.0
}
fn default_floor() -> f64 {
    0.05
}

impl EnsembleSpec {
    pub fn with_count(count: usize) -> EnsembleSpec {
        EnsembleSpec {
            count,
            seed: 0,
            n_max: default_n_max(),
            a0_range: default_a0_range(),
            sigma: default_sigma(),
            decay_exponent: default_decay(),
            hypothesis_k: None,
            positivity_floor: default_floor(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let err = |msg: String| Err(Error::InvalidEnsemble(msg));
        if self.count == 0 {
            return err("count must be at least 1".into());
        }
        let (lo, hi) = self.a0_range;
        if !(lo.is_finite() && hi.is_finite() && 0.0 < lo && lo <= hi) {
            return err(format!("a0_range must satisfy 0 < lo <= hi, got ({lo}, {hi})"));
        }
        if !(self.sigma.is_finite() && self.sigma >= 0.0) {
            return err(format!("sigma must be finite and >= 0, got {}", self.sigma));
        }
        if !(self.decay_exponent.is_finite() && self.decay_exponent >= 0.0) {
            return err(format!(
                "decay_exponent must be finite and >= 0, got {}",
                self.decay_exponent
            ));
        }
        if !(self.positivity_floor > 0.0 && self.positivity_floor < 1.0) {
            return err(format!(
                "positivity_floor must lie in (0, 1), got {}",
                self.positivity_floor
            ));
        }
        if let Some(k) = self.hypothesis_k {
            if k < 2 {
                return Err(Error::InvalidOrder(k));
            }
        }
        Ok(())
    }
}

/// Body `index` of the ensemble, independent of all other indices.
pub fn sample_star_body(spec: &EnsembleSpec, index: usize) -> Result<StarBody> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(index as u64);

    let (lo, hi) = spec.a0_range;
    let a0 = if lo == hi { lo } else { rng.gen_range(lo..=hi) };
    let mut harmonics = Vec::with_capacity(spec.n_max);
    for n in 1..=spec.n_max {
        let sd = spec.sigma / (n as f64).powf(spec.decay_exponent);
        if sd > 0.0 {
            let normal = Normal::new(0.0, sd).expect("validated sd");
            harmonics.push((normal.sample(&mut rng), normal.sample(&mut rng)));
        } else {
            harmonics.push((0.0, 0.0));
        }
    }

    let mut profile = FourierProfile::new(a0, harmonics)?;
    if let Some(k) = spec.hypothesis_k {
        profile = profile.project_even_multiples(k)?;
    }

    let floor = spec.positivity_floor * a0 / 2.0;
    let nodes = default_grid_nodes(profile.order());
    // Scaling all harmonics toward zero raises the grid minimum toward
    // a0 / 2 > floor, so this terminates; the cap is a tripwire.
    for _ in 0..200 {
        let (_, min) = grid_minimum(&profile, nodes);
        if min >= floor {
            return StarBody::certify(profile);
        }
        let shrunk: Vec<(f64, f64)> =
            profile.harmonics().iter().map(|&(a, b)| (0.8 * a, 0.8 * b)).collect();
        profile = FourierProfile::new(profile.a0(), shrunk)?;
    }
    Err(Error::InvalidEnsemble(format!(
        "positivity shrink did not converge for index {index}"
    )))
}

/// All `spec.count` bodies, in index order.
pub fn sample_ensemble(spec: &EnsembleSpec) -> Result<Vec<StarBody>> {
    spec.validate()?;
    (0..spec.count).into_par_iter().map(|i| sample_star_body(spec, i)).collect()
}

/// Cartesian parameter grid for one inequality. Lists that the inequality
/// does not consume must stay empty; lists it consumes must be nonempty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepGrid {
    pub inequality: InequalityId,
    #[serde(default)]
    pub k: Vec<u32>,
    #[serde(default)]
    pub lambda: Vec<f64>,
    #[serde(default)]
    pub mu: Vec<f64>,
    #[serde(default)]
    pub alpha: Vec<f64>,
    #[serde(default)]
    pub allow_out_of_range: bool,
}

impl SweepGrid {
    pub fn validate(&self) -> Result<()> {
        use InequalityId::*;
        let (need_k, need_lambda, need_mu, need_alpha) = match self.inequality {
            T1 | Stab35 => (true, true, false, false),
            T2 | Stab37 => (true, false, true, false),
            T3 => (true, false, false, true),
            C31 => (true, false, false, false),
            DualIso | MixedIso => (false, false, false, false),
        };
        let check = |name: &str, need: bool, len: usize| -> Result<()> {
            if need && len == 0 {
                Err(Error::InvalidGrid(format!(
                    "{} requires a nonempty {name} list",
                    self.inequality
                )))
            } else if !need && len > 0 {
                Err(Error::InvalidGrid(format!(
                    "{} does not take {name} values",
                    self.inequality
                )))
            } else {
                Ok(())
            }
        };
        check("k", need_k, self.k.len())?;
        check("lambda", need_lambda, self.lambda.len())?;
        check("mu", need_mu, self.mu.len())?;
        check("alpha", need_alpha, self.alpha.len())?;
        if let Some(&k) = self.k.iter().find(|&&k| k < 2) {
            return Err(Error::InvalidOrder(k));
        }
        Ok(())
    }

    /// Flattened parameter combinations, row-major in declaration order.
    fn combos(&self) -> Vec<Parameters> {
        use InequalityId::*;
        let mut out = Vec::new();
        match self.inequality {
            T1 | Stab35 => {
                for &k in &self.k {
                    for &lambda in &self.lambda {
                        out.push(Parameters { k: Some(k), lambda: Some(lambda), ..Default::default() });
                    }
                }
            }
            T2 | Stab37 => {
                for &k in &self.k {
                    for &mu in &self.mu {
                        out.push(Parameters { k: Some(k), mu: Some(mu), ..Default::default() });
                    }
                }
            }
            T3 => {
                for &k in &self.k {
                    for &alpha in &self.alpha {
                        out.push(Parameters { k: Some(k), alpha: Some(alpha), ..Default::default() });
                    }
                }
            }
            C31 => {
                for &k in &self.k {
                    out.push(Parameters { k: Some(k), ..Default::default() });
                }
            }
            DualIso | MixedIso => out.push(Parameters::default()),
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub body_index: usize,
    /// Second body of the pair for two-body inequalities (wraps around the
    /// ensemble: body `i` is paired with body `(i + 1) % count`).
    pub partner_index: Option<usize>,
    pub report: SlackReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub inequality: InequalityId,
    pub rows: usize,
    pub violations: usize,
    pub equalities: usize,
    pub min_slack: f64,
    pub argmin_body_index: usize,
    pub argmin_partner_index: Option<usize>,
    pub argmin_parameters: Parameters,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

/// Evaluate the grid on every body (bodies run in parallel, rows stay in
/// deterministic body-major order). Hypothesis violations abort the sweep:
/// pairing a filtered ensemble with a matching grid is the caller's job,
/// and silently projecting mid-sweep would misreport what was tested.
pub fn sweep(bodies: &[StarBody], grid: &SweepGrid) -> Result<SweepTable> {
    grid.validate()?;
    if bodies.is_empty() {
        return Err(Error::InvalidGrid("sweep needs at least one body".into()));
    }
    let combos = grid.combos();
    let opts = EvalOptions { allow_out_of_range: grid.allow_out_of_range, ..Default::default() };

    let per_body: Vec<Vec<SweepRow>> = (0..bodies.len())
        .into_par_iter()
        .map(|i| -> Result<Vec<SweepRow>> {
            let partner = (i + 1) % bodies.len();
            combos
                .iter()
                .map(|p| {
                    let (report, partner_index) = evaluate_combo(grid.inequality, bodies, i, partner, p, &opts)?;
                    Ok(SweepRow { body_index: i, partner_index, report })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let rows: Vec<SweepRow> = per_body.into_iter().flatten().collect();

    let mut violations = 0;
    let mut equalities = 0;
    let mut min_slack = f64::INFINITY;
    let mut argmin = 0;
    for (idx, row) in rows.iter().enumerate() {
        match row.report.verdict {
            Verdict::Violated => violations += 1,
            Verdict::Equality => equalities += 1,
            Verdict::Holds => {}
        }
        if row.report.slack < min_slack {
            min_slack = row.report.slack;
            argmin = idx;
        }
    }
    let summary = SweepSummary {
        inequality: grid.inequality,
        rows: rows.len(),
        violations,
        equalities,
        min_slack,
        argmin_body_index: rows[argmin].body_index,
        argmin_partner_index: rows[argmin].partner_index,
        argmin_parameters: rows[argmin].report.parameters,
    };
    Ok(SweepTable { rows, summary })
}

fn evaluate_combo(
    id: InequalityId,
    bodies: &[StarBody],
    i: usize,
    partner: usize,
    p: &Parameters,
    opts: &EvalOptions,
) -> Result<(SlackReport, Option<usize>)> {
    let s = &bodies[i];
    let report = match id {
        InequalityId::T1 => slack_t1(s, p.k.unwrap(), p.lambda.unwrap(), opts)?,
        InequalityId::T2 => slack_t2(s, p.k.unwrap(), p.mu.unwrap(), opts)?,
        InequalityId::C31 => slack_c31(s, p.k.unwrap(), opts)?,
        InequalityId::Stab35 => margin_stab35(s, p.k.unwrap(), p.lambda.unwrap(), opts)?,
        InequalityId::Stab37 => margin_stab37(s, p.k.unwrap(), p.mu.unwrap(), opts)?,
        InequalityId::DualIso => slack_dual_iso(s, opts)?,
        InequalityId::T3 => {
            let r = slack_t3(s, &bodies[partner], p.k.unwrap(), Angle::new(p.alpha.unwrap()), opts)?;
            return Ok((r, Some(partner)));
        }
        InequalityId::MixedIso => {
            let r = slack_mixed_iso(s, &bodies[partner], opts)?;
            return Ok((r, Some(partner)));
        }
    };
    Ok((report, None))
}
