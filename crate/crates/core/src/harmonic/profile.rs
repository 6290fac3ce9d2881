use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::Angle;
use crate::error::{Error, Result};

/// Truncated Fourier radial profile of a planar star body:
///
/// ```text
/// rho(theta) = a0/2 + sum_{n=1..N} ( a_n cos(n theta) + b_n sin(n theta) )
/// ```
///
/// `harmonics[i]` holds the pair `(a_n, b_n)` for `n = i + 1`; the length of
/// the vector is the truncation order N. The JSON form is exactly
/// `{"a0": number, "harmonics": [[a1, b1], [a2, b2], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierProfile {
    a0: f64,
    #[serde(default)]
    harmonics: Vec<(f64, f64)>,
}

impl FourierProfile {
    /// Build a profile, rejecting non-finite data. `a0 > 0` is required: the
    /// mean radius of a star body is positive even before positivity of the
    /// full profile is certified.
    pub fn new(a0: f64, harmonics: Vec<(f64, f64)>) -> Result<Self> {
        if !a0.is_finite() || a0 <= 0.0 {
            return Err(Error::InvalidMeanTerm(a0));
        }
        for (i, (a, b)) in harmonics.iter().enumerate() {
            if !a.is_finite() || !b.is_finite() {
                return Err(Error::NonFiniteCoefficient { index: i + 1 });
            }
        }
        Ok(FourierProfile { a0, harmonics })
    }

    /// Re-validate a profile that arrived through deserialization.
    pub fn validated(self) -> Result<Self> {
        FourierProfile::new(self.a0, self.harmonics)
    }

    /// The disc of radius `a0/2` (constant profile).
    pub fn disc(a0: f64) -> Self {
        FourierProfile::new(a0, Vec::new()).expect("disc requires positive a0")
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    /// Truncation order N (highest representable harmonic index).
    pub fn order(&self) -> usize {
        self.harmonics.len()
    }

    /// Coefficient pair `(a_n, b_n)`; zero beyond the truncation order.
    pub fn harmonic(&self, n: usize) -> (f64, f64) {
        if n >= 1 && n <= self.harmonics.len() {
            self.harmonics[n - 1]
        } else {
            (0.0, 0.0)
        }
    }

    pub fn harmonics(&self) -> &[(f64, f64)] {
        &self.harmonics
    }

    /// Sum of squared coefficient norms `sum_n (a_n^2 + b_n^2)`.
    pub fn harmonic_energy(&self) -> f64 {
        self.harmonics.iter().map(|&(a, b)| a * a + b * b).sum()
    }

    /// Euclidean norm of all harmonic coefficients (distance to the disc
    /// with the same mean term, up to the Parseval factor).
    pub fn harmonic_norm(&self) -> f64 {
        self.harmonic_energy().sqrt()
    }

    /// Evaluate the radial function.
    ///
    /// Uses the angle-addition recurrence for cos(n t), sin(n t) instead of
    /// per-term trigonometry; the drift is O(N * eps) and the tests pin the
    /// recurrence against a naive per-term evaluation.
    pub fn radial(&self, theta: Angle) -> f64 {
        let t = theta.radians();
        let (s1, c1) = t.sin_cos();
        let mut acc = self.a0 / 2.0;
        let (mut cn, mut sn) = (c1, s1);
        for &(a, b) in &self.harmonics {
            acc += a * cn + b * sn;
            let c_next = cn * c1 - sn * s1;
            let s_next = sn * c1 + cn * s1;
            cn = c_next;
            sn = s_next;
        }
        acc
    }

    /// Derivative of the radial function:
    /// `sum_n n ( -a_n sin(n theta) + b_n cos(n theta) )`.
    pub fn radial_derivative(&self, theta: Angle) -> f64 {
        let t = theta.radians();
        let (s1, c1) = t.sin_cos();
        let mut acc = 0.0;
        let (mut cn, mut sn) = (c1, s1);
        for (i, &(a, b)) in self.harmonics.iter().enumerate() {
            let n = (i + 1) as f64;
            acc += n * (-a * sn + b * cn);
            let c_next = cn * c1 - sn * s1;
            let s_next = sn * c1 + cn * s1;
            cn = c_next;
            sn = s_next;
        }
        acc
    }

    /// k-order radial function by direct rotation summation:
    ///
    /// ```text
    /// rho_k(theta) = sum_{m=0..k-1} rho(theta + 2 m pi / k)
    /// ```
    ///
    /// This is the defining path; `k_order_profile` is the filtered
    /// closed-form path and the two must agree (property-tested).
    pub fn k_order_radial(&self, k: u32, theta: Angle) -> Result<f64> {
        check_order(k)?;
        let step = TAU / f64::from(k);
        let mut acc = 0.0;
        for m in 0..k {
            acc += self.radial(Angle::new(theta.radians() + f64::from(m) * step));
        }
        Ok(acc)
    }

    /// Coefficient-space form of the k-order radial function. Rotation
    /// summation annihilates every harmonic whose index is not a multiple of
    /// k and multiplies the survivors (and the mean term) by k:
    ///
    /// ```text
    /// rho_k = k a0/2 + k sum_{l>=1} ( a_{kl} cos(kl theta) + b_{kl} sin(kl theta) )
    /// ```
    pub fn k_order_profile(&self, k: u32) -> Result<FourierProfile> {
        check_order(k)?;
        let kf = f64::from(k);
        let mut harmonics = vec![(0.0, 0.0); self.harmonics.len()];
        let mut n = k as usize;
        while n <= self.harmonics.len() {
            let (a, b) = self.harmonics[n - 1];
            harmonics[n - 1] = (kf * a, kf * b);
            n += k as usize;
        }
        Ok(FourierProfile { a0: kf * self.a0, harmonics })
    }

    /// Copy with `a_n = b_n = 0` at every index that is a multiple of `2k`
    /// (the admissibility hypothesis of the strengthened upper chord bound).
    /// Idempotent; untouched coefficients stay bit-identical.
    pub fn project_even_multiples(&self, k: u32) -> Result<FourierProfile> {
        check_order(k)?;
        let mut harmonics = self.harmonics.clone();
        let step = 2 * k as usize;
        let mut n = step;
        while n <= harmonics.len() {
            harmonics[n - 1] = (0.0, 0.0);
            n += step;
        }
        Ok(FourierProfile { a0: self.a0, harmonics })
    }

    /// Harmonic indices with nonzero coefficients at plain `!= 0.0`.
    pub fn support(&self) -> Vec<usize> {
        self.harmonics
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a != 0.0 || b != 0.0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Indices whose coefficient norm exceeds `tol`.
    pub fn support_above(&self, tol: f64) -> Vec<usize> {
        self.harmonics
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a.hypot(b) > tol)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Profile scaled by `c > 0` (all coefficients, including the mean term).
    pub fn scaled(&self, c: f64) -> Result<FourierProfile> {
        FourierProfile::new(
            c * self.a0,
            self.harmonics.iter().map(|&(a, b)| (c * a, c * b)).collect(),
        )
    }

    /// Recover a profile of truncation order `n_max` from radial samples.
    ///
    /// Requires at least `2 * n_max + 1` distinct sample angles. Uniform
    /// grids (any offset) go through discrete Fourier analysis, which is
    /// exact for band-limited data; anything else solves a least-squares
    /// system via SVD.
    pub fn fit(samples: &[(Angle, f64)], n_max: usize) -> Result<FourierProfile> {
        for (i, (t, v)) in samples.iter().enumerate() {
            if !t.radians().is_finite() || !v.is_finite() {
                return Err(Error::NonFiniteSample(i));
            }
        }
        let required = 2 * n_max + 1;
        let distinct = count_distinct_angles(samples);
        if distinct < required {
            return Err(Error::UnderdeterminedFit { required, given: distinct, order: n_max });
        }
        let profile = if is_uniform_grid(samples) {
            fit_uniform(samples, n_max)
        } else {
            fit_least_squares(samples, n_max)
        };
        profile.validated()
    }
}

fn check_order(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidOrder(k));
    }
    Ok(())
}

fn count_distinct_angles(samples: &[(Angle, f64)]) -> usize {
    let mut angles: Vec<f64> = samples.iter().map(|(t, _)| t.radians()).collect();
    angles.sort_by(|x, y| x.partial_cmp(y).expect("angles are finite"));
    let mut distinct = 0;
    let mut prev = f64::NEG_INFINITY;
    for t in angles {
        if t - prev > 1e-12 {
            distinct += 1;
        }
        prev = t;
    }
    distinct
}

/// True when the sorted sample angles form a uniform partition of the circle
/// (constant gap 2π/M, wrap-around included), up to 1e-9 absolute per gap.
fn is_uniform_grid(samples: &[(Angle, f64)]) -> bool {
    let mut angles: Vec<f64> = samples.iter().map(|(t, _)| t.radians()).collect();
    angles.sort_by(|x, y| x.partial_cmp(y).expect("angles are finite"));
    let m = angles.len();
    let gap = TAU / m as f64;
    for i in 0..m {
        let g = if i + 1 < m { angles[i + 1] - angles[i] } else { angles[0] + TAU - angles[m - 1] };
        if (g - gap).abs() > 1e-9 {
            return false;
        }
    }
    true
}

/// Discrete Fourier analysis on a uniform grid. The shifted-grid
/// orthogonality `sum_j e^{i q theta_j} = 0` for `0 < |q| < M` makes the
/// plain sums exact for profiles of order N with M >= 2N + 1 samples.
fn fit_uniform(samples: &[(Angle, f64)], n_max: usize) -> FourierProfile {
    let m = samples.len() as f64;
    let a0 = samples.iter().map(|&(_, v)| v).sum::<f64>() * 2.0 / m;
    let mut harmonics = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let nf = n as f64;
        let mut a = 0.0;
        let mut b = 0.0;
        for &(t, v) in samples {
            let (s, c) = (nf * t.radians()).sin_cos();
            a += v * c;
            b += v * s;
        }
        harmonics.push((2.0 * a / m, 2.0 * b / m));
    }
    FourierProfile { a0, harmonics }
}

fn fit_least_squares(samples: &[(Angle, f64)], n_max: usize) -> FourierProfile {
    use nalgebra::{DMatrix, DVector};
    let rows = samples.len();
    let cols = 2 * n_max + 1;
    let mut design = DMatrix::<f64>::zeros(rows, cols);
    let mut rhs = DVector::<f64>::zeros(rows);
    for (i, &(t, v)) in samples.iter().enumerate() {
        design[(i, 0)] = 0.5;
        for n in 1..=n_max {
            let (s, c) = (n as f64 * t.radians()).sin_cos();
            design[(i, 2 * n - 1)] = c;
            design[(i, 2 * n)] = s;
        }
        rhs[i] = v;
    }
    let svd = design.svd(true, true);
    let coeffs = svd.solve(&rhs, 1e-12).expect("SVD solve on finite data");
    let harmonics = (1..=n_max).map(|n| (coeffs[2 * n - 1], coeffs[2 * n])).collect();
    FourierProfile { a0: coeffs[0], harmonics }
}
