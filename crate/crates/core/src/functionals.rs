//! Geometric functionals of star bodies, each with two independent routes.
//!
//! The closed forms are Parseval identities in the Fourier coefficients:
//!
//! ```text
//! A(S)        = pi a0^2/4 + (pi/2) sum_n (a_n^2 + b_n^2)          (area)
//! At(S)       = (pi/2) sum_n n^2 (a_n^2 + b_n^2)                  (oriented area, 1/2 integral rho'^2)
//! At(S, B)    = pi a0 / 2                                         (dual mixed area with the unit disc)
//! d2(S, T)    = sqrt( pi (da0)^2/2 + pi sum_n (da_n^2 + db_n^2) ) (dual L2 distance)
//! chord_k(S)  = k pi a0^2/4 + (k pi/2) sum_l (-1)^l (a_{kl}^2 + b_{kl}^2)
//! corr_k(S,T) = pi k^2 a0^S a0^T / 2
//!             + pi k^2 sum_l [ (aS aT + bS bT) cos(kl alpha)
//!                            + (aS bT - bS aT) sin(kl alpha) ]_{n=kl}
//! ```
//!
//! `chord_k` is the folded self-chord integral over `[0, pi/k]`; `corr_k`
//! is the full-turn shifted correlation of two k-order radial functions.
//! The quadrature route for each lives in [`crate::quadrature`] and never
//! touches coefficient arithmetic; `*_checked` variants run both and record
//! the disagreement.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonic::{Angle, FourierProfile, StarBody};
use crate::quadrature::{self, QuadratureSpec};
use crate::tol;

/// Which route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Quadrature,
}

/// A functional evaluation: the value, the route that produced it, and —
/// when both routes ran — the absolute disagreement between them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FunctionalValue {
    pub value: f64,
    pub method: Method,
    pub cross_check_residual: Option<f64>,
}

impl FunctionalValue {
    fn closed(value: f64) -> Self {
        FunctionalValue { value, method: Method::ClosedForm, cross_check_residual: None }
    }

    fn quadrature(value: f64) -> Self {
        FunctionalValue { value, method: Method::Quadrature, cross_check_residual: None }
    }

    fn checked(closed: f64, quad: f64) -> Self {
        FunctionalValue {
            value: closed,
            method: Method::ClosedForm,
            cross_check_residual: Some((closed - quad).abs()),
        }
    }

    /// Whether the recorded residual is inside the dual-route tolerance
    /// `CROSS_CHECK_REL * max(1, |value|)`. `None` when only one route ran.
    pub fn cross_check_ok(&self) -> Option<bool> {
        self.cross_check_residual
            .map(|r| r <= tol::CROSS_CHECK_REL * self.value.abs().max(1.0))
    }
}

// ---- area ----------------------------------------------------------------

pub fn area(s: &StarBody) -> FunctionalValue {
    FunctionalValue::closed(area_closed(s.profile()))
}

pub fn area_quadrature(s: &StarBody, q: &QuadratureSpec) -> FunctionalValue {
    FunctionalValue::quadrature(area_quad(s, q))
}

pub fn area_checked(s: &StarBody, q: &QuadratureSpec) -> FunctionalValue {
    FunctionalValue::checked(area_closed(s.profile()), area_quad(s, q))
}

pub(crate) fn area_closed(p: &FourierProfile) -> f64 {
    PI * p.a0() * p.a0() / 4.0 + (PI / 2.0) * p.harmonic_energy()
}

pub(crate) fn area_quad(s: &StarBody, q: &QuadratureSpec) -> f64 {
    quadrature::periodic_trapezoid(|t| s.profile().radial(t).powi(2) / 2.0, q)
}

// ---- oriented area (Dirichlet energy of the profile) ----------------------

pub fn oriented_area(s: &StarBody) -> FunctionalValue {
    FunctionalValue::closed(oriented_area_closed(s.profile()))
}

pub fn oriented_area_quadrature(s: &StarBody, q: &QuadratureSpec) -> FunctionalValue {
    FunctionalValue::quadrature(oriented_area_quad(s, q))
}

pub fn oriented_area_checked(s: &StarBody, q: &QuadratureSpec) -> FunctionalValue {
    FunctionalValue::checked(oriented_area_closed(s.profile()), oriented_area_quad(s, q))
}

pub(crate) fn oriented_area_closed(p: &FourierProfile) -> f64 {
    let sum: f64 = p
        .harmonics()
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let n = (i + 1) as f64;
            n * n * (a * a + b * b)
        })
        .sum();
    (PI / 2.0) * sum
}

pub(crate) fn oriented_area_quad(s: &StarBody, q: &QuadratureSpec) -> f64 {
    quadrature::periodic_trapezoid(|t| s.profile().radial_derivative(t).powi(2) / 2.0, q)
}

// ---- dual mixed area against the unit disc --------------------------------

pub fn dual_mixed_area_disk(s: &StarBody) -> FunctionalValue {
    FunctionalValue::closed(dual_mixed_area_disk_closed(s.profile()))
}

pub fn dual_mixed_area_disk_quadrature(s: &StarBody, q: &QuadratureSpec) -> FunctionalValue {
    FunctionalValue::quadrature(dual_mixed_area_disk_quad(s, q))
}

pub fn dual_mixed_area_disk_checked(s: &StarBody, q: &QuadratureSpec) -> FunctionalValue {
    FunctionalValue::checked(
        dual_mixed_area_disk_closed(s.profile()),
        dual_mixed_area_disk_quad(s, q),
    )
}

pub(crate) fn dual_mixed_area_disk_closed(p: &FourierProfile) -> f64 {
    PI * p.a0() / 2.0
}

pub(crate) fn dual_mixed_area_disk_quad(s: &StarBody, q: &QuadratureSpec) -> f64 {
    quadrature::periodic_trapezoid(|t| s.profile().radial(t) / 2.0, q)
}

// ---- dual L2 distance ------------------------------------------------------

pub fn dual_l2_distance(s: &StarBody, t: &StarBody) -> FunctionalValue {
    FunctionalValue::closed(dual_l2_closed(s.profile(), t.profile()))
}

pub fn dual_l2_distance_quadrature(s: &StarBody, t: &StarBody, q: &QuadratureSpec) -> FunctionalValue {
    FunctionalValue::quadrature(dual_l2_quad(s, t, q))
}

pub fn dual_l2_distance_checked(s: &StarBody, t: &StarBody, q: &QuadratureSpec) -> FunctionalValue {
    FunctionalValue::checked(dual_l2_closed(s.profile(), t.profile()), dual_l2_quad(s, t, q))
}

pub(crate) fn dual_l2_closed(sp: &FourierProfile, tp: &FourierProfile) -> f64 {
    let da0 = sp.a0() - tp.a0();
    let n_max = sp.order().max(tp.order());
    let mut sum = 0.0;
    for n in 1..=n_max {
        let (sa, sb) = sp.harmonic(n);
        let (ta, tb) = tp.harmonic(n);
        sum += (sa - ta) * (sa - ta) + (sb - tb) * (sb - tb);
    }
    (PI * da0 * da0 / 2.0 + PI * sum).sqrt()
}

pub(crate) fn dual_l2_quad(s: &StarBody, t: &StarBody, q: &QuadratureSpec) -> f64 {
    quadrature::periodic_trapezoid(
        |theta| {
            let d = s.profile().radial(theta) - t.profile().radial(theta);
            d * d
        },
        q,
    )
    .sqrt()
}

// ---- folded self-chord integral -------------------------------------------

pub fn chord_self_integral(s: &StarBody, k: u32) -> Result<FunctionalValue> {
    Ok(FunctionalValue::closed(chord_self_closed(s.profile(), k)?))
}

pub fn chord_self_integral_quadrature(s: &StarBody, k: u32, q: &QuadratureSpec) -> Result<FunctionalValue> {
    Ok(FunctionalValue::quadrature(quadrature::chord_self_oracle(s, k, q)?))
}

pub fn chord_self_integral_checked(s: &StarBody, k: u32, q: &QuadratureSpec) -> Result<FunctionalValue> {
    Ok(FunctionalValue::checked(
        chord_self_closed(s.profile(), k)?,
        quadrature::chord_self_oracle(s, k, q)?,
    ))
}

pub(crate) fn chord_self_closed(p: &FourierProfile, k: u32) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidOrder(k));
    }
    let kf = f64::from(k);
    let mut alternating = 0.0;
    let mut n = k as usize;
    let mut l_odd = true;
    while n <= p.order() {
        let (a, b) = p.harmonic(n);
        let term = a * a + b * b;
        alternating += if l_odd { -term } else { term };
        n += k as usize;
        l_odd = !l_odd;
    }
    Ok(kf * PI * p.a0() * p.a0() / 4.0 + (kf * PI / 2.0) * alternating)
}

// ---- shifted correlation of k-order functions ------------------------------

pub fn chord_mixed_integral(s: &StarBody, t: &StarBody, k: u32, alpha: Angle) -> Result<FunctionalValue> {
    Ok(FunctionalValue::closed(chord_mixed_closed(s.profile(), t.profile(), k, alpha)?))
}

pub fn chord_mixed_integral_quadrature(
    s: &StarBody,
    t: &StarBody,
    k: u32,
    alpha: Angle,
    q: &QuadratureSpec,
) -> Result<FunctionalValue> {
    Ok(FunctionalValue::quadrature(quadrature::correlation_integral(s, t, k, alpha, q)?))
}

pub fn chord_mixed_integral_checked(
    s: &StarBody,
    t: &StarBody,
    k: u32,
    alpha: Angle,
    q: &QuadratureSpec,
) -> Result<FunctionalValue> {
    Ok(FunctionalValue::checked(
        chord_mixed_closed(s.profile(), t.profile(), k, alpha)?,
        quadrature::correlation_integral(s, t, k, alpha, q)?,
    ))
}

pub(crate) fn chord_mixed_closed(
    sp: &FourierProfile,
    tp: &FourierProfile,
    k: u32,
    alpha: Angle,
) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidOrder(k));
    }
    let kf = f64::from(k);
    let mut sum = 0.0;
    let mut n = k as usize;
    while n <= sp.order().max(tp.order()) {
        let (sa, sb) = sp.harmonic(n);
        let (ta, tb) = tp.harmonic(n);
        let (sin_a, cos_a) = (n as f64 * alpha.radians()).sin_cos();
        sum += (sa * ta + sb * tb) * cos_a + (sa * tb - sb * ta) * sin_a;
        n += k as usize;
    }
    Ok(PI * kf * kf * sp.a0() * tp.a0() / 2.0 + PI * kf * kf * sum)
}

// ---- fold identities --------------------------------------------------------

/// The two integral identities the chord machinery rests on. Residuals are
/// computed with *both* sides on the quadrature route, so they check the
/// fold algebra, not the closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityCheck {
    /// `integral_0^{pi/k} rho_k rho_k(.+pi/k) = 1/2 sum_{m=1..k}
    /// integral_0^{2pi} rho(theta) rho(theta + (2m-1) pi/k) d theta`.
    ChordFold,
    /// `integral_0^{2pi} f_k(theta) g_k(theta+alpha) d theta = (k/2)
    /// sum_{m=1..k} integral_0^{2pi} [ f(theta + 2m pi/k) g(theta + alpha)
    /// + f(theta) g(theta + alpha + 2m pi/k) ] d theta`.
    CorrelationFold,
}

/// Absolute residual of the requested identity. `alpha` and `g` only apply
/// to [`IdentityCheck::CorrelationFold`]; the chord fold is a self-identity
/// at the fixed shift `pi/k`.
pub fn identity_residual(
    s: &StarBody,
    k: u32,
    which: IdentityCheck,
    alpha: Angle,
    g: Option<&StarBody>,
    q: &QuadratureSpec,
) -> Result<f64> {
    match which {
        IdentityCheck::ChordFold => chord_fold_residual(s, k, q),
        IdentityCheck::CorrelationFold => correlation_fold_residual(s, g.unwrap_or(s), k, alpha, q),
    }
}

pub fn chord_fold_residual(s: &StarBody, k: u32, q: &QuadratureSpec) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidOrder(k));
    }
    let lhs = quadrature::chord_self_direct(s, k, q)?;
    let p = s.profile();
    let mut rhs = 0.0;
    for m in 1..=k {
        let shift = f64::from(2 * m - 1) * PI / f64::from(k);
        rhs += quadrature::periodic_trapezoid(
            |theta| p.radial(theta) * p.radial(Angle::new(theta.radians() + shift)),
            q,
        );
    }
    Ok((lhs - rhs / 2.0).abs())
}

pub fn correlation_fold_residual(
    f: &StarBody,
    g: &StarBody,
    k: u32,
    alpha: Angle,
    q: &QuadratureSpec,
) -> Result<f64> {
    let lhs = quadrature::correlation_integral(f, g, k, alpha, q)?;
    let (fp, gp) = (f.profile(), g.profile());
    let a = alpha.radians();
    let kf = f64::from(k);
    let mut rhs = 0.0;
    for m in 1..=k {
        let shift = f64::from(2 * m) * PI / kf;
        rhs += quadrature::periodic_trapezoid(
            |theta| {
                let t = theta.radians();
                fp.radial(Angle::new(t + shift)) * gp.radial(Angle::new(t + a))
                    + fp.radial(theta) * gp.radial(Angle::new(t + a + shift))
            },
            q,
        );
    }
    Ok((lhs - kf * rhs / 2.0).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::FourierProfile;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn body(a0: f64, pairs: &[(usize, f64, f64)]) -> StarBody {
        let n_max = pairs.iter().map(|&(n, _, _)| n).max().unwrap_or(0);
        let mut harmonics = vec![(0.0, 0.0); n_max];
        for &(n, a, b) in pairs {
            harmonics[n - 1] = (a, b);
        }
        StarBody::certify(FourierProfile::new(a0, harmonics).unwrap()).unwrap()
    }

    fn spec_for(bodies: &[&StarBody]) -> QuadratureSpec {
        let order = bodies.iter().map(|b| b.profile().order()).max().unwrap_or(0);
        QuadratureSpec::for_order(order)
    }

    #[test]
    fn area_of_reference_bodies() {
        assert_abs_diff_eq!(area(&StarBody::disc(2.0)).value, PI, epsilon = 1e-14);
        assert_abs_diff_eq!(area(&body(2.0, &[(3, 0.2, 0.0)])).value, 1.02 * PI, epsilon = 1e-14);
        assert_abs_diff_eq!(area(&body(2.0, &[(1, 0.3, 0.0)])).value, 1.045 * PI, epsilon = 1e-14);
    }

    #[test]
    fn oriented_area_of_reference_bodies() {
        assert_eq!(oriented_area(&StarBody::disc(2.0)).value, 0.0);
        assert_abs_diff_eq!(
            oriented_area(&body(2.0, &[(3, 0.2, 0.0)])).value,
            0.18 * PI,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            oriented_area(&body(2.0, &[(1, 0.3, 0.0)])).value,
            0.045 * PI,
            epsilon = 1e-14
        );
    }

    #[test]
    fn dual_mixed_area_tracks_mean_term_only() {
        assert_abs_diff_eq!(dual_mixed_area_disk(&StarBody::disc(2.0)).value, PI, epsilon = 1e-14);
        assert_abs_diff_eq!(
            dual_mixed_area_disk(&body(2.0, &[(3, 0.2, 0.0)])).value,
            PI,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            dual_mixed_area_disk(&StarBody::disc(3.0)).value,
            1.5 * PI,
            epsilon = 1e-14
        );
    }

    #[test]
    fn dual_l2_distance_of_reference_pairs() {
        let unit = StarBody::disc(2.0);
        assert_eq!(dual_l2_distance(&unit, &unit).value, 0.0);
        let bigger = StarBody::disc(4.0);
        assert_abs_diff_eq!(
            dual_l2_distance(&unit, &bigger).value,
            (2.0 * PI).sqrt(),
            epsilon = 1e-14
        );
        let s = body(2.0, &[(3, 0.2, 0.0)]);
        assert_abs_diff_eq!(
            dual_l2_distance(&s, &s.mean_disc()).value,
            (0.04 * PI).sqrt(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn chord_self_closed_examples() {
        let disc = StarBody::disc(2.0);
        assert_abs_diff_eq!(chord_self_integral(&disc, 3).unwrap().value, 3.0 * PI, epsilon = 1e-13);

        let s = body(2.0, &[(3, 0.2, 0.0)]);
        assert_abs_diff_eq!(
            chord_self_integral(&s, 3).unwrap().value,
            2.94 * PI,
            epsilon = 1e-13
        );

        // n = 4 = 2k for k = 2: the alternating sign flips positive.
        let t = body(2.0, &[(4, 0.1, 0.0)]);
        assert_abs_diff_eq!(
            chord_self_integral(&t, 2).unwrap().value,
            2.01 * PI,
            epsilon = 1e-13
        );
    }

    #[test]
    fn chord_mixed_closed_examples() {
        let s = body(2.0, &[(2, 0.2, 0.0)]);
        assert_abs_diff_eq!(
            chord_mixed_integral(&s, &s, 2, Angle::new(PI)).unwrap().value,
            8.16 * PI,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            chord_mixed_integral(&s, &s, 2, Angle::new(PI / 2.0)).unwrap().value,
            7.84 * PI,
            epsilon = 1e-12
        );
        let disc = StarBody::disc(2.0);
        assert_abs_diff_eq!(
            chord_mixed_integral(&s, &disc, 2, Angle::new(0.7)).unwrap().value,
            8.0 * PI,
            epsilon = 1e-12
        );
    }

    #[test]
    fn chord_self_agrees_with_full_turn_correlation_at_shift_pi_over_k() {
        // Internal consistency: the folded integral is 1/(2k) times the
        // full-turn correlation at alpha = pi/k, on the closed route too.
        let s = body(2.0, &[(2, 0.11, -0.04), (3, 0.06, 0.02), (4, 0.05, 0.0), (6, 0.0, 0.03)]);
        for k in 2..=6u32 {
            let folded = chord_self_closed(s.profile(), k).unwrap();
            let alpha = Angle::new(PI / f64::from(k));
            let full = chord_mixed_closed(s.profile(), s.profile(), k, alpha).unwrap();
            assert_abs_diff_eq!(folded, full / (2.0 * f64::from(k)), epsilon = 1e-11);
        }
    }

    #[test]
    fn closed_forms_match_quadrature_oracle() {
        let bodies = [
            StarBody::disc(1.7),
            body(2.0, &[(1, 0.2, -0.1), (3, 0.1, 0.05)]),
            body(2.6, &[(2, 0.3, 0.0), (5, 0.0, 0.12), (8, 0.04, 0.04)]),
        ];
        for s in &bodies {
            let q = spec_for(&[s]);
            for fv in [
                area_checked(s, &q),
                oriented_area_checked(s, &q),
                dual_mixed_area_disk_checked(s, &q),
            ] {
                assert_eq!(fv.cross_check_ok(), Some(true), "residual {:?}", fv.cross_check_residual);
            }
            for k in 2..=8u32 {
                let fv = chord_self_integral_checked(s, k, &q).unwrap();
                assert_eq!(fv.cross_check_ok(), Some(true), "k={k} residual {:?}", fv.cross_check_residual);
            }
        }
        let q = spec_for(&[&bodies[1], &bodies[2]]);
        let fv = dual_l2_distance_checked(&bodies[1], &bodies[2], &q);
        assert_eq!(fv.cross_check_ok(), Some(true));
        for k in [2u32, 3, 5] {
            for &alpha in &[0.4, 1.9, 4.4] {
                let fv =
                    chord_mixed_integral_checked(&bodies[1], &bodies[2], k, Angle::new(alpha), &q).unwrap();
                assert_eq!(fv.cross_check_ok(), Some(true), "k={k} alpha={alpha}");
            }
        }
    }

    #[test]
    fn scaling_moves_functionals_with_the_right_power() {
        let s = body(2.0, &[(2, 0.2, 0.1), (5, 0.0, 0.07)]);
        let c = 1.7;
        let scaled = StarBody::certify(s.profile().scaled(c).unwrap()).unwrap();
        let rel = |x: f64, y: f64| (x - y).abs() / y.abs().max(1.0);
        let (sp, cp) = (s.profile(), scaled.profile());
        assert!(rel(area_closed(cp), c * c * area_closed(sp)) < 1e-10);
        assert!(rel(oriented_area_closed(cp), c * c * oriented_area_closed(sp)) < 1e-10);
        assert!(rel(dual_mixed_area_disk_closed(cp), c * dual_mixed_area_disk_closed(sp)) < 1e-10);
        for k in [2u32, 4] {
            assert!(
                rel(chord_self_closed(cp, k).unwrap(), c * c * chord_self_closed(sp, k).unwrap())
                    < 1e-10
            );
        }
    }

    #[test]
    fn chord_fold_identity_residual_vanishes() {
        let s = body(2.0, &[(3, 0.2, 0.0)]);
        let q = spec_for(&[&s]);
        for k in 2..=5u32 {
            let r = chord_fold_residual(&s, k, &q).unwrap();
            assert!(r < 1e-10, "k={k} residual {r}");
        }
    }

    #[test]
    fn correlation_fold_identity_residual_vanishes() {
        let f = body(2.0, &[(2, 0.2, 0.0)]);
        let g = StarBody::disc(2.0);
        let q = spec_for(&[&f, &g]);
        let r = correlation_fold_residual(&f, &g, 2, Angle::new(0.7), &q).unwrap();
        assert!(r < 1e-10, "residual {r}");

        let h = body(1.8, &[(1, 0.15, -0.08), (3, 0.0, 0.1), (4, 0.06, 0.0)]);
        let q = spec_for(&[&f, &h]);
        for k in 2..=5u32 {
            for &alpha in &[0.3, 2.0, 5.5] {
                let r = correlation_fold_residual(&f, &h, k, Angle::new(alpha), &q).unwrap();
                assert!(r < 1e-10, "k={k} alpha={alpha} residual {r}");
            }
        }
    }

    #[test]
    fn identity_dispatcher_routes_both_checks() {
        let s = body(2.0, &[(2, 0.2, 0.0)]);
        let q = spec_for(&[&s]);
        let r1 = identity_residual(&s, 3, IdentityCheck::ChordFold, Angle::new(0.0), None, &q).unwrap();
        let r2 =
            identity_residual(&s, 3, IdentityCheck::CorrelationFold, Angle::new(1.1), None, &q).unwrap();
        assert!(r1 < 1e-10 && r2 < 1e-10);
    }

    #[test]
    fn dual_isoperimetric_direction_holds_on_samples() {
        // pi A(S) - At(S,B)^2 >= 0, equality exactly for discs.
        let disc = StarBody::disc(2.4);
        let d = PI * area_closed(disc.profile()) - dual_mixed_area_disk_closed(disc.profile()).powi(2);
        assert_abs_diff_eq!(d, 0.0, epsilon = 1e-12);
        for s in [body(2.0, &[(1, 0.2, 0.0)]), body(2.0, &[(4, 0.0, 0.3)])] {
            let p = s.profile();
            let d = PI * area_closed(p) - dual_mixed_area_disk_closed(p).powi(2);
            assert!(d > 0.0);
        }
    }
}
