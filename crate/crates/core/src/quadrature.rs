//! Periodic trapezoid quadrature, the oracle route for every functional.
//!
//! For a P-periodic integrand the trapezoid rule collapses to the plain node
//! average
//!
//! ```text
//! integral_0^P f = (P/M) * sum_{j=0..M-1} f(j P / M)
//! ```
//!
//! and is *spectrally exact*: it integrates every trigonometric polynomial
//! of degree < M without error, because the node sum of e^{i q theta}
//! vanishes for 0 < |q| < M. All integrands in this crate are products of
//! truncated profiles, hence trig polynomials of degree at most 2N; the
//! default node count 4N + 16 leaves a factor-two margin.
//!
//! Evaluation here goes through pointwise radial sums (for k-order functions
//! the rotation-summation path), never through coefficient arithmetic, so
//! this module stays an independent check on the closed forms.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::harmonic::{Angle, StarBody};

/// Node count and period of a periodic trapezoid rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    nodes: usize,
    period: f64,
}

impl QuadratureSpec {
    pub fn new(nodes: usize, period: f64) -> Result<Self> {
        if nodes < 4 {
            return Err(Error::TooFewNodes(nodes));
        }
        if !period.is_finite() || period <= 0.0 {
            return Err(Error::InvalidPeriod(period));
        }
        Ok(QuadratureSpec { nodes, period })
    }

    /// Full-turn rule with the default margin for profiles of order `n_max`:
    /// `4 * n_max + 16` nodes.
    pub fn for_order(n_max: usize) -> Self {
        QuadratureSpec { nodes: 4 * n_max + 16, period: TAU }
    }

    /// Full-turn rule with an explicit node count (CLI `--nodes`).
    pub fn with_nodes(nodes: usize) -> Result<Self> {
        QuadratureSpec::new(nodes, TAU)
    }

    /// Same node count over a different period.
    pub fn over_period(&self, period: f64) -> Result<Self> {
        QuadratureSpec::new(self.nodes, period)
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn period(&self) -> f64 {
        self.period
    }
}

/// Integrate a periodic function over one period of the rule.
pub fn periodic_trapezoid(f: impl Fn(Angle) -> f64, spec: &QuadratureSpec) -> f64 {
    let m = spec.nodes;
    let h = spec.period / m as f64;
    let mut acc = 0.0;
    for j in 0..m {
        acc += f(Angle::new(j as f64 * h));
    }
    acc * h
}

/// Relative change when the node count doubles; spectral exactness makes
/// this rounding-level for band-limited integrands.
pub fn doubling_residual(f: impl Fn(Angle) -> f64, spec: &QuadratureSpec) -> f64 {
    let coarse = periodic_trapezoid(&f, spec);
    let fine = periodic_trapezoid(&f, &QuadratureSpec { nodes: 2 * spec.nodes, period: spec.period });
    (coarse - fine).abs() / coarse.abs().max(1.0)
}

/// Shifted correlation of two k-order radial functions over the full turn:
///
/// ```text
/// integral_0^{2pi} rho_k(S, theta) * rho_k(T, theta + alpha) d theta
/// ```
///
/// Both factors are evaluated by rotation summation.
pub fn correlation_integral(
    s: &StarBody,
    t: &StarBody,
    k: u32,
    alpha: Angle,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let sp = s.profile();
    let tp = t.profile();
    sp.k_order_radial(k, Angle::new(0.0))?; // validates k once
    let full = spec.over_period(TAU)?;
    Ok(periodic_trapezoid(
        |theta| {
            let left = sp.k_order_radial(k, theta).expect("k validated");
            let right = tp
                .k_order_radial(k, Angle::new(theta.radians() + alpha.radians()))
                .expect("k validated");
            left * right
        },
        &full,
    ))
}

/// Oracle for the folded self-chord integral
/// `integral_0^{pi/k} rho_k(theta) rho_k(theta + pi/k) d theta`.
///
/// The integrand is (pi/k)-periodic — replacing theta by theta + pi/k swaps
/// the two factors — so the half-period integral equals `1/(2k)` times the
/// full-turn integral. That identity is itself pinned by a test against
/// direct integration over `[0, pi/k)`.
pub fn chord_self_oracle(s: &StarBody, k: u32, spec: &QuadratureSpec) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidOrder(k));
    }
    let alpha = Angle::new(std::f64::consts::PI / f64::from(k));
    let full = correlation_integral(s, s, k, alpha, spec)?;
    Ok(full / (2.0 * f64::from(k)))
}

/// Direct integration of the self-chord integrand over its own period
/// `[0, pi/k)`. Only used to validate the half-period identity.
pub fn chord_self_direct(s: &StarBody, k: u32, spec: &QuadratureSpec) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidOrder(k));
    }
    let p = s.profile();
    let shift = std::f64::consts::PI / f64::from(k);
    let rule = spec.over_period(shift)?;
    Ok(periodic_trapezoid(
        |theta| {
            let left = p.k_order_radial(k, theta).expect("k validated");
            let right = p.k_order_radial(k, Angle::new(theta.radians() + shift)).expect("k validated");
            left * right
        },
        &rule,
    ))
}
