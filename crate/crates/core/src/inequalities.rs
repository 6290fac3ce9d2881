//! Slack evaluation for the sharp chord-integral inequalities.
//!
//! Every inequality is reported through the same lens: a left side, a right
//! side, and a slack oriented so that `slack >= 0` means the inequality
//! holds. The catalogue, with C(S,k) the folded self-chord integral and
//! R(S,T,k,alpha) the full-turn shifted correlation:
//!
//! | id        | statement (slack = distance from equality)                        |
//! |-----------|--------------------------------------------------------------------|
//! | T1        | C <= k A + lambda (At(S,B)^2 - pi A),  0 <= lambda <= k/pi          |
//! | T2        | C >= k A + mu At(S),                   mu <= -k                     |
//! | C31       | C / k <= A                                                          |
//! | T3        | R / (2 k^2) <= sqrt(A(S) A(T)),        0 < alpha < 2 pi             |
//! | stab35    | C - kA - lambda(At(S,B)^2 - pi A) <= (pi lambda - k)/2 * d2(S,Bm)^2 |
//! | stab37    | C - kA - mu At(S) >= (-k - mu/2) * d2(S,Bm)^2                       |
//! | dual_iso  | At(S,B)^2 <= pi A(S)                                                |
//! | mixed_iso | At(S,B) At(T,B) <= pi sqrt(A(S) A(T))                               |
//!
//! `Bm` is the disc with the body's mean term. T1 (and stab35) additionally
//! require the admissibility hypothesis that no harmonic sits at a multiple
//! of `2k`; violating bodies are rejected, never silently projected.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::{self, Method};
use crate::harmonic::{Angle, EqualityFamily, StarBody};
use crate::quadrature::{self, QuadratureSpec};
use crate::tol;

/// Wire identifiers for the inequalities; these exact spellings appear in
/// CSV artifacts and on the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InequalityId {
    T1,
    T2,
    T3,
    C31,
    #[serde(rename = "stab35")]
    Stab35,
    #[serde(rename = "stab37")]
    Stab37,
    #[serde(rename = "dual_iso")]
    DualIso,
    #[serde(rename = "mixed_iso")]
    MixedIso,
}

impl InequalityId {
    pub const ALL: [InequalityId; 8] = [
        InequalityId::T1,
        InequalityId::T2,
        InequalityId::T3,
        InequalityId::C31,
        InequalityId::Stab35,
        InequalityId::Stab37,
        InequalityId::DualIso,
        InequalityId::MixedIso,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            InequalityId::T1 => "T1",
            InequalityId::T2 => "T2",
            InequalityId::T3 => "T3",
            InequalityId::C31 => "C31",
            InequalityId::Stab35 => "stab35",
            InequalityId::Stab37 => "stab37",
            InequalityId::DualIso => "dual_iso",
            InequalityId::MixedIso => "mixed_iso",
        }
    }

    /// Does this inequality compare two bodies?
    pub fn is_pairwise(&self) -> bool {
        matches!(self, InequalityId::T3 | InequalityId::MixedIso)
    }
}

impl std::fmt::Display for InequalityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for InequalityId {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        InequalityId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| format!("unknown inequality id '{s}' (expected one of T1, T2, T3, C31, stab35, stab37, dual_iso, mixed_iso)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Equality,
    Violated,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Holds => write!(f, "holds"),
            Verdict::Equality => write!(f, "equality"),
            Verdict::Violated => write!(f, "violated"),
        }
    }
}

/// Parameters a report was evaluated at; unused slots stay `None`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Parameters {
    pub k: Option<u32>,
    pub lambda: Option<f64>,
    pub mu: Option<f64>,
    pub alpha: Option<f64>,
}

/// One inequality evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlackReport {
    pub inequality_id: InequalityId,
    pub lhs: f64,
    pub rhs: f64,
    /// Oriented so that `slack >= 0` means the inequality holds.
    pub slack: f64,
    pub parameters: Parameters,
    pub verdict: Verdict,
    /// For single-body inequalities: the designated family, present when the
    /// verdict is equality and the body's support lies in it. For T3 and
    /// mixed_iso: membership report for the pair, independent of verdict.
    pub equality_family_match: Option<EqualityFamily>,
    /// Route that produced lhs/rhs (closed form unless quadrature was
    /// explicitly requested).
    pub method: Method,
    /// Largest per-side disagreement against the other route, when both ran.
    pub cross_check_residual: Option<f64>,
}

pub const CSV_HEADER: &str = "inequality_id,k,lambda,mu,alpha,lhs,rhs,slack,verdict,family";

impl SlackReport {
    /// Fixed-order CSV row: `inequality_id,k,lambda,mu,alpha,lhs,rhs,slack,verdict,family`.
    pub fn csv_row(&self) -> String {
        fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
            v.map(|x| x.to_string()).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.inequality_id,
            opt(self.parameters.k),
            opt(self.parameters.lambda),
            opt(self.parameters.mu),
            opt(self.parameters.alpha),
            self.lhs,
            self.rhs,
            self.slack,
            self.verdict,
            self.equality_family_match.map(|f| f.to_string()).unwrap_or_default(),
        )
    }

    pub fn verdict_tolerance(&self) -> f64 {
        verdict_tolerance(self.lhs, self.rhs)
    }
}

fn verdict_tolerance(lhs: f64, rhs: f64) -> f64 {
    tol::VERDICT_REL * lhs.abs().max(rhs.abs()).max(1.0)
}

fn classify_verdict(lhs: f64, rhs: f64, slack: f64) -> Verdict {
    let t = verdict_tolerance(lhs, rhs);
    if slack.abs() <= t {
        Verdict::Equality
    } else if slack < -t {
        Verdict::Violated
    } else {
        Verdict::Holds
    }
}

/// Evaluation controls shared by all slack functions.
#[derive(Debug, Clone, Copy, Default)]
pub struct EvalOptions {
    /// Permit lambda/mu/alpha outside the admissible range (exploration;
    /// violations are then expected and not an error).
    pub allow_out_of_range: bool,
    /// Recompute both sides on the quadrature route and record the largest
    /// per-side disagreement.
    pub cross_check: Option<QuadratureSpec>,
}

impl EvalOptions {
    pub fn checked(q: QuadratureSpec) -> Self {
        EvalOptions { allow_out_of_range: false, cross_check: Some(q) }
    }
}

/// Indices at multiples of `2k` carrying real coefficient mass.
fn hypothesis_offenders(s: &StarBody, k: u32) -> Vec<usize> {
    let step = 2 * k as usize;
    let p = s.profile();
    let mut out = Vec::new();
    let mut n = step;
    while n <= p.order() {
        let (a, b) = p.harmonic(n);
        if a.hypot(b) > tol::COEFF_SUPPORT_ABS {
            out.push(n);
        }
        n += step;
    }
    out
}

pub(crate) fn check_hypothesis(s: &StarBody, k: u32) -> Result<()> {
    let offenders = hypothesis_offenders(s, k);
    if offenders.is_empty() {
        Ok(())
    } else {
        Err(Error::HypothesisViolation { indices: offenders, two_k: 2 * k })
    }
}

pub(crate) fn check_lambda(k: u32, lambda: f64, allow: bool) -> Result<()> {
    if !lambda.is_finite() {
        return Err(Error::ParameterOutOfRange {
            name: "lambda",
            value: lambda,
            range: "finite".into(),
        });
    }
    let hi = f64::from(k) / PI;
    if !allow && !(0.0..=hi).contains(&lambda) {
        return Err(Error::ParameterOutOfRange {
            name: "lambda",
            value: lambda,
            range: format!("[0, k/pi] = [0, {hi}]"),
        });
    }
    Ok(())
}

pub(crate) fn check_mu(k: u32, mu: f64, allow: bool) -> Result<()> {
    if !mu.is_finite() {
        return Err(Error::ParameterOutOfRange { name: "mu", value: mu, range: "finite".into() });
    }
    if !allow && mu > -f64::from(k) {
        return Err(Error::ParameterOutOfRange {
            name: "mu",
            value: mu,
            range: format!("(-inf, -k] = (-inf, {}]", -f64::from(k)),
        });
    }
    Ok(())
}

fn check_alpha(alpha: Angle, allow: bool) -> Result<()> {
    // Canonical angles live in [0, 2pi); only the endpoint 0 is outside the
    // open admissible interval.
    if !allow && alpha.radians() == 0.0 {
        return Err(Error::ParameterOutOfRange {
            name: "alpha",
            value: alpha.radians(),
            range: "(0, 2pi)".into(),
        });
    }
    Ok(())
}

struct Sides {
    lhs: f64,
    rhs: f64,
}

fn assemble(
    id: InequalityId,
    closed: Sides,
    quad: Option<Sides>,
    less_or_equal: bool,
    parameters: Parameters,
    family: Option<EqualityFamily>,
) -> SlackReport {
    let slack = if less_or_equal { closed.rhs - closed.lhs } else { closed.lhs - closed.rhs };
    let verdict = classify_verdict(closed.lhs, closed.rhs, slack);
    let cross_check_residual =
        quad.map(|q| (closed.lhs - q.lhs).abs().max((closed.rhs - q.rhs).abs()));
    SlackReport {
        inequality_id: id,
        lhs: closed.lhs,
        rhs: closed.rhs,
        slack,
        parameters,
        verdict,
        equality_family_match: family,
        method: Method::ClosedForm,
        cross_check_residual,
    }
}

/// Family the inequality is sharp on at the given parameters.
pub fn designated_family(
    id: InequalityId,
    k: Option<u32>,
    lambda: Option<f64>,
    mu: Option<f64>,
) -> EqualityFamily {
    match id {
        InequalityId::T1 => {
            let k = k.expect("T1 carries k");
            let endpoint = f64::from(k) / PI;
            let lambda = lambda.expect("T1 carries lambda");
            if (lambda - endpoint).abs() <= 1e-12 * endpoint.max(1.0) {
                EqualityFamily::FirstHarmonic
            } else {
                EqualityFamily::Disc
            }
        }
        InequalityId::T2 => {
            let k = k.expect("T2 carries k");
            let mu = mu.expect("T2 carries mu");
            if (mu + f64::from(k)).abs() <= 1e-12 * f64::from(k) {
                EqualityFamily::FirstHarmonic
            } else {
                EqualityFamily::Disc
            }
        }
        InequalityId::C31 => EqualityFamily::EvenKMultiples { k: k.expect("C31 carries k") },
        InequalityId::T3 => EqualityFamily::KMultiples { k: k.expect("T3 carries k") },
        InequalityId::Stab35 => EqualityFamily::FirstHarmonic,
        InequalityId::Stab37 => EqualityFamily::Disc,
        InequalityId::DualIso | InequalityId::MixedIso => EqualityFamily::Disc,
    }
}

fn single_body_family(
    id: InequalityId,
    s: &StarBody,
    verdict: Verdict,
    k: Option<u32>,
    lambda: Option<f64>,
    mu: Option<f64>,
) -> Option<EqualityFamily> {
    if verdict != Verdict::Equality {
        return None;
    }
    let fam = designated_family(id, k, lambda, mu);
    fam.contains(s.profile(), tol::COEFF_SUPPORT_ABS).then_some(fam)
}

// ---- T1: strengthened upper chord bound ------------------------------------

pub fn slack_t1(s: &StarBody, k: u32, lambda: f64, opts: &EvalOptions) -> Result<SlackReport> {
    check_lambda(k, lambda, opts.allow_out_of_range)?;
    check_hypothesis(s, k)?;
    let chord = functionals::chord_self_closed(s.profile(), k)?;
    let closed = t1_sides(chord, s, k, lambda, |b| functionals::area_closed(b.profile()), |b| {
        functionals::dual_mixed_area_disk_closed(b.profile())
    });
    let quad = match &opts.cross_check {
        Some(q) => {
            let chord_q = quadrature::chord_self_oracle(s, k, q)?;
            Some(t1_sides(chord_q, s, k, lambda, |b| functionals::area_quad(b, q), |b| {
                functionals::dual_mixed_area_disk_quad(b, q)
            }))
        }
        None => None,
    };
    let parameters = Parameters { k: Some(k), lambda: Some(lambda), ..Default::default() };
    let mut report = assemble(InequalityId::T1, closed, quad, true, parameters, None);
    report.equality_family_match =
        single_body_family(InequalityId::T1, s, report.verdict, Some(k), Some(lambda), None);
    Ok(report)
}

fn t1_sides(
    chord: f64,
    s: &StarBody,
    k: u32,
    lambda: f64,
    area: impl Fn(&StarBody) -> f64,
    mixed: impl Fn(&StarBody) -> f64,
) -> Sides {
    let a = area(s);
    let at_b = mixed(s);
    Sides { lhs: chord, rhs: f64::from(k) * a + lambda * (at_b * at_b - PI * a) }
}

// ---- T2: lower chord bound with oriented-area penalty -----------------------

pub fn slack_t2(s: &StarBody, k: u32, mu: f64, opts: &EvalOptions) -> Result<SlackReport> {
    check_mu(k, mu, opts.allow_out_of_range)?;
    let chord = functionals::chord_self_closed(s.profile(), k)?;
    let closed = Sides {
        lhs: chord,
        rhs: f64::from(k) * functionals::area_closed(s.profile())
            + mu * functionals::oriented_area_closed(s.profile()),
    };
    let quad = match &opts.cross_check {
        Some(q) => Some(Sides {
            lhs: quadrature::chord_self_oracle(s, k, q)?,
            rhs: f64::from(k) * functionals::area_quad(s, q)
                + mu * functionals::oriented_area_quad(s, q),
        }),
        None => None,
    };
    let parameters = Parameters { k: Some(k), mu: Some(mu), ..Default::default() };
    let mut report = assemble(InequalityId::T2, closed, quad, false, parameters, None);
    report.equality_family_match =
        single_body_family(InequalityId::T2, s, report.verdict, Some(k), None, Some(mu));
    Ok(report)
}

// ---- C31: plain chord-to-area comparison ------------------------------------

pub fn slack_c31(s: &StarBody, k: u32, opts: &EvalOptions) -> Result<SlackReport> {
    let chord = functionals::chord_self_closed(s.profile(), k)?;
    let closed = Sides { lhs: chord / f64::from(k), rhs: functionals::area_closed(s.profile()) };
    let quad = match &opts.cross_check {
        Some(q) => Some(Sides {
            lhs: quadrature::chord_self_oracle(s, k, q)? / f64::from(k),
            rhs: functionals::area_quad(s, q),
        }),
        None => None,
    };
    let parameters = Parameters { k: Some(k), ..Default::default() };
    let mut report = assemble(InequalityId::C31, closed, quad, true, parameters, None);
    report.equality_family_match =
        single_body_family(InequalityId::C31, s, report.verdict, Some(k), None, None);
    Ok(report)
}

// ---- T3: two-body correlation bound ------------------------------------------

pub fn slack_t3(
    s: &StarBody,
    t: &StarBody,
    k: u32,
    alpha: Angle,
    opts: &EvalOptions,
) -> Result<SlackReport> {
    check_alpha(alpha, opts.allow_out_of_range)?;
    let kf = f64::from(k);
    let corr = functionals::chord_mixed_closed(s.profile(), t.profile(), k, alpha)?;
    let closed = Sides {
        lhs: corr / (2.0 * kf * kf),
        rhs: (functionals::area_closed(s.profile()) * functionals::area_closed(t.profile())).sqrt(),
    };
    let quad = match &opts.cross_check {
        Some(q) => Some(Sides {
            lhs: quadrature::correlation_integral(s, t, k, alpha, q)? / (2.0 * kf * kf),
            rhs: (functionals::area_quad(s, q) * functionals::area_quad(t, q)).sqrt(),
        }),
        None => None,
    };
    let parameters =
        Parameters { k: Some(k), alpha: Some(alpha.radians()), ..Default::default() };
    // Membership of the pair in k_multiples(k) is reported regardless of the
    // verdict: for this bound the family is necessary for equality at some
    // shift, not sufficient at every shift.
    let fam = EqualityFamily::KMultiples { k };
    let both_in = fam.contains(s.profile(), tol::COEFF_SUPPORT_ABS)
        && fam.contains(t.profile(), tol::COEFF_SUPPORT_ABS);
    Ok(assemble(InequalityId::T3, closed, quad, true, parameters, both_in.then_some(fam)))
}

// ---- stability refinements -----------------------------------------------------

/// Upper-bound stability: the T1 deficit is controlled by the squared dual
/// L2 distance to the mean disc.
pub fn margin_stab35(s: &StarBody, k: u32, lambda: f64, opts: &EvalOptions) -> Result<SlackReport> {
    check_lambda(k, lambda, opts.allow_out_of_range)?;
    check_hypothesis(s, k)?;
    let kf = f64::from(k);
    let mean = s.mean_disc();
    let chord = functionals::chord_self_closed(s.profile(), k)?;
    let closed = stab35_sides(
        chord,
        s,
        &mean,
        kf,
        lambda,
        |b| functionals::area_closed(b.profile()),
        |b| functionals::dual_mixed_area_disk_closed(b.profile()),
        |a, b| functionals::dual_l2_closed(a.profile(), b.profile()),
    );
    let quad = match &opts.cross_check {
        Some(q) => {
            let chord_q = quadrature::chord_self_oracle(s, k, q)?;
            Some(stab35_sides(chord_q, s, &mean, kf, lambda, |b| functionals::area_quad(b, q), |b| {
                functionals::dual_mixed_area_disk_quad(b, q)
            }, |a, b| functionals::dual_l2_quad(a, b, q)))
        }
        None => None,
    };
    let parameters = Parameters { k: Some(k), lambda: Some(lambda), ..Default::default() };
    let mut report = assemble(InequalityId::Stab35, closed, quad, true, parameters, None);
    report.equality_family_match =
        single_body_family(InequalityId::Stab35, s, report.verdict, Some(k), Some(lambda), None);
    Ok(report)
}

fn stab35_sides(
    chord: f64,
    s: &StarBody,
    mean: &StarBody,
    kf: f64,
    lambda: f64,
    area: impl Fn(&StarBody) -> f64,
    mixed: impl Fn(&StarBody) -> f64,
    l2: impl Fn(&StarBody, &StarBody) -> f64,
) -> Sides {
    let a = area(s);
    let at_b = mixed(s);
    let deficit = chord - kf * a - lambda * (at_b * at_b - PI * a);
    let d2 = l2(s, mean);
    Sides { lhs: deficit, rhs: 0.5 * (PI * lambda - kf) * d2 * d2 }
}

/// Lower-bound stability: the T2 surplus dominates a multiple of the squared
/// dual L2 distance to the mean disc.
pub fn margin_stab37(s: &StarBody, k: u32, mu: f64, opts: &EvalOptions) -> Result<SlackReport> {
    check_mu(k, mu, opts.allow_out_of_range)?;
    let kf = f64::from(k);
    let mean = s.mean_disc();
    let chord = functionals::chord_self_closed(s.profile(), k)?;
    let closed = Sides {
        lhs: chord
            - kf * functionals::area_closed(s.profile())
            - mu * functionals::oriented_area_closed(s.profile()),
        rhs: (-kf - mu / 2.0)
            * functionals::dual_l2_closed(s.profile(), mean.profile()).powi(2),
    };
    let quad = match &opts.cross_check {
        Some(q) => Some(Sides {
            lhs: quadrature::chord_self_oracle(s, k, q)?
                - kf * functionals::area_quad(s, q)
                - mu * functionals::oriented_area_quad(s, q),
            rhs: (-kf - mu / 2.0) * functionals::dual_l2_quad(s, &mean, q).powi(2),
        }),
        None => None,
    };
    let parameters = Parameters { k: Some(k), mu: Some(mu), ..Default::default() };
    let mut report = assemble(InequalityId::Stab37, closed, quad, false, parameters, None);
    report.equality_family_match =
        single_body_family(InequalityId::Stab37, s, report.verdict, Some(k), None, Some(mu));
    Ok(report)
}

// ---- isoperimetric-type bounds ---------------------------------------------------

pub fn slack_dual_iso(s: &StarBody, opts: &EvalOptions) -> Result<SlackReport> {
    let closed = Sides {
        lhs: functionals::dual_mixed_area_disk_closed(s.profile()).powi(2),
        rhs: PI * functionals::area_closed(s.profile()),
    };
    let quad = opts.cross_check.as_ref().map(|q| Sides {
        lhs: functionals::dual_mixed_area_disk_quad(s, q).powi(2),
        rhs: PI * functionals::area_quad(s, q),
    });
    let mut report =
        assemble(InequalityId::DualIso, closed, quad, true, Parameters::default(), None);
    report.equality_family_match =
        single_body_family(InequalityId::DualIso, s, report.verdict, None, None, None);
    Ok(report)
}

pub fn slack_mixed_iso(s: &StarBody, t: &StarBody, opts: &EvalOptions) -> Result<SlackReport> {
    let closed = Sides {
        lhs: functionals::dual_mixed_area_disk_closed(s.profile())
            * functionals::dual_mixed_area_disk_closed(t.profile()),
        rhs: PI
            * (functionals::area_closed(s.profile()) * functionals::area_closed(t.profile()))
                .sqrt(),
    };
    let quad = opts.cross_check.as_ref().map(|q| Sides {
        lhs: functionals::dual_mixed_area_disk_quad(s, q) * functionals::dual_mixed_area_disk_quad(t, q),
        rhs: PI * (functionals::area_quad(s, q) * functionals::area_quad(t, q)).sqrt(),
    });
    // Both bodies must be discs for equality; report pair membership like T3.
    let fam = EqualityFamily::Disc;
    let both_in = fam.contains(s.profile(), tol::COEFF_SUPPORT_ABS)
        && fam.contains(t.profile(), tol::COEFF_SUPPORT_ABS);
    Ok(assemble(InequalityId::MixedIso, closed, quad, true, Parameters::default(), both_in.then_some(fam)))
}

// ---- large-k limit of the normalized correlation ----------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitRow {
    pub k: u32,
    /// `R(S,T,k,alpha) / (2 k^2)`.
    pub value: f64,
    /// Distance to the limit `At(S,B) At(T,B) / pi`.
    pub deviation: f64,
}

/// Normalized correlation along a sequence of orders, against its limit.
/// For truncated profiles the deviation is exactly zero once k exceeds the
/// truncation order: no harmonic index is a multiple of such a k.
pub fn limit_sequence(
    s: &StarBody,
    t: &StarBody,
    alpha: Angle,
    orders: &[u32],
) -> Result<Vec<LimitRow>> {
    if orders.is_empty() || orders[0] < 2 || orders.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidLimitOrders);
    }
    let limit = functionals::dual_mixed_area_disk_closed(s.profile())
        * functionals::dual_mixed_area_disk_closed(t.profile())
        / PI;
    orders
        .iter()
        .map(|&k| {
            let kf = f64::from(k);
            let value =
                functionals::chord_mixed_closed(s.profile(), t.profile(), k, alpha)?
                    / (2.0 * kf * kf);
            Ok(LimitRow { k, value, deviation: (value - limit).abs() })
        })
        .collect()
}

// ---- equality-family classification ------------------------------------------------

/// Test a certified-equality report against the family the inequality is
/// sharp on at its parameters. `Some(family)` on support match, `None` on
/// mismatch; an error if the report is not an equality at all.
pub fn classify_equality(s: &StarBody, report: &SlackReport) -> Result<Option<EqualityFamily>> {
    if report.verdict != Verdict::Equality {
        return Err(Error::NotAnEquality(report.verdict));
    }
    let fam = designated_family(
        report.inequality_id,
        report.parameters.k,
        report.parameters.lambda,
        report.parameters.mu,
    );
    Ok(fam.contains(s.profile(), tol::COEFF_SUPPORT_ABS).then_some(fam))
}
