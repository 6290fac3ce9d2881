//! Acceptance gate: one test per criterion, each printing a PASS/FAIL line
//! (run with `--nocapture` to see them). Thresholds live in `dcl_core::tol`;
//! nothing here is allowed to weaken them.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dcl_core::{
    area, area_quadrature, chord_fold_residual, chord_mixed_integral,
    chord_mixed_integral_quadrature, chord_self_integral, chord_self_integral_quadrature,
    correlation_fold_residual, correlation_integral, dual_l2_distance,
    dual_l2_distance_quadrature, dual_mixed_area_disk, dual_mixed_area_disk_quadrature,
    limit_sequence, margin_stab35, minimize_slack, oriented_area, oriented_area_quadrature,
    sample_ensemble, sample_star_body, search_artifacts, slack_c31, slack_t1, slack_t2, slack_t3,
    sweep, sweep_artifacts, tol, Angle, EnsembleSpec, Error, EvalOptions, FourierProfile,
    InequalityId, QuadratureSpec, SearchSpec, StarBody, SweepGrid, Verdict,
};

fn conclude(number: u32, name: &str, ok: bool, detail: &str) {
    println!("ACCEPTANCE {number} ({name}): {} [{detail}]", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "acceptance criterion {number} ({name}) failed: {detail}");
}

fn spec(count: usize, seed: u64, n_max: usize, hypothesis_k: Option<u32>) -> EnsembleSpec {
    EnsembleSpec { seed, n_max, hypothesis_k, ..EnsembleSpec::with_count(count) }
}

fn seeded_bodies(count: usize, seed: u64, n_max: usize, hk: Option<u32>) -> Vec<StarBody> {
    sample_ensemble(&spec(count, seed, n_max, hk)).unwrap()
}

fn rel(closed: f64, quad: f64) -> f64 {
    (closed - quad).abs() / closed.abs().max(1.0)
}

fn body(a0: f64, pairs: &[(usize, f64, f64)]) -> StarBody {
    let order = pairs.iter().map(|&(n, _, _)| n).max().unwrap_or(0);
    let mut harmonics = vec![(0.0, 0.0); order];
    for &(n, a, b) in pairs {
        harmonics[n - 1] = (a, b);
    }
    StarBody::certify(FourierProfile::new(a0, harmonics).unwrap()).unwrap()
}

/// Copy of `s` with `(da, db)` added to the coefficient pair at index `n`.
fn perturbed(s: &StarBody, n: usize, da: f64, db: f64) -> StarBody {
    let p = s.profile();
    let mut harmonics = p.harmonics().to_vec();
    if harmonics.len() < n {
        harmonics.resize(n, (0.0, 0.0));
    }
    harmonics[n - 1].0 += da;
    harmonics[n - 1].1 += db;
    StarBody::certify(FourierProfile::new(p.a0(), harmonics).unwrap()).unwrap()
}

#[test]
fn criterion_1_closed_forms_match_the_quadrature_oracle() {
    let start = Instant::now();
    // Sequential on purpose: the runtime target is single-threaded.
    let es = spec(1000, 101, 32, None);
    let bodies: Vec<StarBody> =
        (0..es.count).map(|i| sample_star_body(&es, i).unwrap()).collect();
    let q = QuadratureSpec::new(272, TAU).unwrap();

    let mut max_rel = 0.0f64;
    for (i, s) in bodies.iter().enumerate() {
        let t = &bodies[(i + 1) % bodies.len()];
        max_rel = max_rel.max(rel(area(s).value, area_quadrature(s, &q).value));
        max_rel =
            max_rel.max(rel(oriented_area(s).value, oriented_area_quadrature(s, &q).value));
        max_rel = max_rel
            .max(rel(dual_mixed_area_disk(s).value, dual_mixed_area_disk_quadrature(s, &q).value));
        max_rel = max_rel
            .max(rel(dual_l2_distance(s, t).value, dual_l2_distance_quadrature(s, t, &q).value));
        for k in 2..=8u32 {
            let alpha = Angle::new(0.37 + 0.51 * f64::from(k) + 1e-3 * i as f64);
            max_rel = max_rel.max(rel(
                chord_self_integral(s, k).unwrap().value,
                chord_self_integral_quadrature(s, k, &q).unwrap().value,
            ));
            max_rel = max_rel.max(rel(
                chord_mixed_integral(s, t, k, alpha).unwrap().value,
                chord_mixed_integral_quadrature(s, t, k, alpha, &q).unwrap().value,
            ));
        }
    }

    let elapsed = start.elapsed().as_secs_f64();
    let ok = max_rel <= tol::CROSS_CHECK_REL && elapsed < 60.0;
    conclude(
        1,
        "identity suite",
        ok,
        &format!("1000 bodies, k in 2..=8, max rel residual {max_rel:.3e}, {elapsed:.1}s"),
    );
}

#[test]
fn criterion_2_fold_identities_hold_on_the_ensemble() {
    let bodies = seeded_bodies(1000, 101, 32, None);
    let q = QuadratureSpec::new(272, TAU).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);

    let mut max_res = 0.0f64;
    for (i, s) in bodies.iter().enumerate() {
        for k in 2..=8u32 {
            max_res = max_res.max(chord_fold_residual(s, k, &q).unwrap());
        }
        // Five random shifts per body; the partner and order rotate through
        // the ensemble so the whole k range is exercised.
        let t = &bodies[(i + 1) % bodies.len()];
        for j in 0..5u32 {
            let k = 2 + ((i as u32 + j) % 7);
            let alpha = Angle::new(rng.gen_range(0.0..TAU));
            max_res = max_res.max(correlation_fold_residual(s, t, k, alpha, &q).unwrap());
        }
    }

    let ok = max_res < tol::IDENTITY_RESIDUAL_ABS;
    conclude(2, "fold identities", ok, &format!("max fold residual {max_res:.3e}"));
}

fn grid(
    inequality: InequalityId,
    k: &[u32],
    lambda: &[f64],
    mu: &[f64],
    alpha: &[f64],
) -> SweepGrid {
    SweepGrid {
        inequality,
        k: k.to_vec(),
        lambda: lambda.to_vec(),
        mu: mu.to_vec(),
        alpha: alpha.to_vec(),
        allow_out_of_range: false,
    }
}

#[test]
fn criterion_3_no_violations_on_admissible_grids() {
    let plain = seeded_bodies(1000, 101, 32, None);
    let alphas: Vec<f64> = (1..=8).map(|j| TAU * j as f64 / 9.0).collect();

    let mut rows = 0usize;
    let mut violations = 0usize;
    let mut count = |table: dcl_core::SweepTable| {
        rows += table.summary.rows;
        violations += table.summary.violations;
    };

    for k in 2..=8u32 {
        let kf = f64::from(k);
        // The hypothesis filter serves exactly one k, so the upper-bound
        // family gets its own ensemble per order.
        let filtered = seeded_bodies(1000, 101, 32, Some(k));
        let lambdas: Vec<f64> = (0..5).map(|j| (kf / PI) * j as f64 / 4.0).collect();
        count(sweep(&filtered, &grid(InequalityId::T1, &[k], &lambdas, &[], &[])).unwrap());
        count(sweep(&filtered, &grid(InequalityId::Stab35, &[k], &lambdas, &[], &[])).unwrap());

        let mus = [-kf, -2.0 * kf, -4.0 * kf];
        count(sweep(&plain, &grid(InequalityId::T2, &[k], &[], &mus, &[])).unwrap());
        count(sweep(&plain, &grid(InequalityId::Stab37, &[k], &[], &mus, &[])).unwrap());
    }

    let ks: Vec<u32> = (2..=8).collect();
    count(sweep(&plain, &grid(InequalityId::T3, &ks, &[], &[], &alphas)).unwrap());
    count(sweep(&plain, &grid(InequalityId::C31, &ks, &[], &[], &[])).unwrap());
    count(sweep(&plain, &grid(InequalityId::DualIso, &[], &[], &[], &[])).unwrap());
    count(sweep(&plain, &grid(InequalityId::MixedIso, &[], &[], &[], &[])).unwrap());

    let ok = violations == 0;
    conclude(3, "sign suite", ok, &format!("{rows} reports, {violations} violations"));
}

#[test]
fn criterion_4_equality_families_are_sharp() {
    fn equality(failures: &mut Vec<String>, name: String, slack: f64, verdict: Verdict) {
        if slack.abs() > tol::EQUALITY_FAMILY_ABS || verdict != Verdict::Equality {
            failures.push(format!("{name}: slack {slack:.3e}, verdict {verdict}"));
        }
    }
    fn grows(failures: &mut Vec<String>, name: String, slack: f64) {
        if slack <= tol::SHARPNESS_MIN_SLACK {
            failures.push(format!("{name}: perturbed slack {slack:.3e} not above the floor"));
        }
    }

    let opts = EvalOptions::default();
    let eps = tol::SHARPNESS_PERTURBATION;
    let mut failures: Vec<String> = Vec::new();

    for k in 2..=8u32 {
        let ku = k as usize;
        let kf = f64::from(k);
        let disc = StarBody::disc(2.0);
        let fh = body(2.0, &[(1, 0.3, -0.2)]);

        // Interior lambda: the disc is the equality body.
        let lam = 0.3 * kf / PI;
        let r = slack_t1(&disc, k, lam, &opts).unwrap();
        equality(&mut failures, format!("T1 disc k={k}"), r.slack, r.verdict);
        for n in 1..=2 * ku + 1 {
            match slack_t1(&perturbed(&disc, n, eps, 0.0), k, lam, &opts) {
                Ok(r) => grows(&mut failures, format!("T1 disc k={k} n={n}"), r.slack),
                // Mass at an even multiple of k violates the hypothesis.
                Err(Error::HypothesisViolation { .. }) => assert_eq!(n % (2 * ku), 0),
                Err(e) => failures.push(format!("T1 disc k={k} n={n}: {e}")),
            }
        }

        // Endpoint lambda: anything supported off the multiples of k stays
        // an equality body; the probes that must grow sit at odd multiples.
        let top = kf / PI;
        let r = slack_t1(&fh, k, top, &opts).unwrap();
        equality(&mut failures, format!("T1 fh k={k}"), r.slack, r.verdict);
        for n in [ku, 3 * ku] {
            let r = slack_t1(&perturbed(&fh, n, eps, 0.0), k, top, &opts).unwrap();
            grows(&mut failures, format!("T1 fh k={k} n={n}"), r.slack);
        }
        for n in (2..2 * ku).filter(|n| n % ku != 0) {
            let r = slack_t1(&perturbed(&fh, n, eps, 0.0), k, top, &opts).unwrap();
            equality(&mut failures, format!("T1 fh k={k} flat n={n}"), r.slack, r.verdict);
        }
        assert!(matches!(
            slack_t1(&perturbed(&fh, 2 * ku, eps, 0.0), k, top, &opts),
            Err(Error::HypothesisViolation { .. })
        ));

        // Lower chord bound: disc strictly inside, first harmonic at the end.
        let r = slack_t2(&disc, k, -2.0 * kf, &opts).unwrap();
        equality(&mut failures, format!("T2 disc k={k}"), r.slack, r.verdict);
        for n in 1..=2 * ku + 1 {
            let r = slack_t2(&perturbed(&disc, n, 0.0, eps), k, -2.0 * kf, &opts).unwrap();
            grows(&mut failures, format!("T2 disc k={k} n={n}"), r.slack);
        }
        let r = slack_t2(&fh, k, -kf, &opts).unwrap();
        equality(&mut failures, format!("T2 fh k={k}"), r.slack, r.verdict);
        for n in 2..=2 * ku + 1 {
            let r = slack_t2(&perturbed(&fh, n, eps, 0.0), k, -kf, &opts).unwrap();
            grows(&mut failures, format!("T2 fh k={k} n={n}"), r.slack);
        }

        // Folded self-chord: even multiples of k carry zero weight.
        let even = body(2.0, &[(2 * ku, 0.1, 0.0), (4 * ku, 0.0, 0.05)]);
        let r = slack_c31(&even, k, &opts).unwrap();
        equality(&mut failures, format!("C31 even k={k}"), r.slack, r.verdict);
        for n in [1, ku, ku + 1, 3 * ku] {
            let r = slack_c31(&perturbed(&even, n, eps, 0.0), k, &opts).unwrap();
            grows(&mut failures, format!("C31 k={k} n={n}"), r.slack);
        }

        // Correlation bound: a k-supported pair at the aligned shift.
        let pk = body(2.0, &[(ku, 0.2, 0.0)]);
        let aligned = Angle::new(TAU / kf);
        let r = slack_t3(&pk, &pk, k, aligned, &opts).unwrap();
        equality(&mut failures, format!("T3 pair k={k}"), r.slack, r.verdict);
        for n in [1, ku + 1, 2 * ku + 1] {
            let r = slack_t3(&perturbed(&pk, n, eps, 0.0), &pk, k, aligned, &opts).unwrap();
            grows(&mut failures, format!("T3 pair k={k} n={n}"), r.slack);
        }
    }

    let ok = failures.is_empty();
    conclude(4, "sharpness suite", ok, &format!("probe failures: {failures:?}"));
}

#[test]
fn criterion_5_slack_is_monotone_in_the_parameters() {
    let k = 3u32;
    let kf = f64::from(k);
    let opts = EvalOptions::default();
    let filtered = seeded_bodies(100, 55, 24, Some(k));
    let plain = seeded_bodies(100, 55, 24, None);

    // phi(lambda) = -slack must not decrease on [0, k/pi].
    let mut worst = 0.0f64;
    for s in &filtered {
        let mut prev = f64::NEG_INFINITY;
        for j in 0..10 {
            let lambda = (kf / PI) * j as f64 / 9.0;
            let phi = -slack_t1(s, k, lambda, &opts).unwrap().slack;
            worst = worst.max(prev - phi);
            prev = phi;
        }
    }
    // psi(mu) = -slack must not increase walking from -k down to -4k.
    for s in &plain {
        let mut prev = f64::INFINITY;
        for j in 0..10 {
            let mu = -kf * (1.0 + 3.0 * j as f64 / 9.0);
            let psi = -slack_t2(s, k, mu, &opts).unwrap().slack;
            worst = worst.max(psi - prev);
            prev = psi;
        }
    }

    let ok = worst <= tol::MONOTONE_EPS;
    conclude(5, "monotonicity", ok, &format!("200 curves, worst inversion {worst:.3e}"));
}

#[test]
fn criterion_6_correlation_approaches_its_limit() {
    let bodies = seeded_bodies(60, 77, 24, None);
    let q = QuadratureSpec::new(272, TAU).unwrap();
    let orders: Vec<u32> = vec![2, 5, 11, 24, 25, 31, 40, 64];

    let mut worst_tail = 0.0f64;
    let mut worst_pred = 0.0f64;
    let mut worst_quad = 0.0f64;
    for pair in bodies.chunks_exact(2) {
        let (s, t) = (&pair[0], &pair[1]);
        let alpha = Angle::new(0.31 + 0.721 * s.profile().a0());
        for row in limit_sequence(s, t, alpha, &orders).unwrap() {
            if row.k > 24 {
                worst_tail = worst_tail.max(row.deviation);
                continue;
            }
            // Direct coefficient summation, independent of the closed form.
            let mut pred = 0.0;
            let mut n = row.k as usize;
            while n <= 24 {
                let (sa, sb) = s.profile().harmonic(n);
                let (ta, tb) = t.profile().harmonic(n);
                let phase = n as f64 * alpha.radians();
                pred += (sa * ta + sb * tb) * phase.cos() + (sa * tb - sb * ta) * phase.sin();
                n += row.k as usize;
            }
            pred = (PI / 2.0) * pred;
            worst_pred = worst_pred.max((row.deviation - pred.abs()).abs());

            let quad = correlation_integral(s, t, row.k, alpha, &q).unwrap()
                / (2.0 * f64::from(row.k) * f64::from(row.k));
            worst_quad = worst_quad.max(rel(row.value, quad));
        }
    }

    let ok = worst_tail <= tol::LIMIT_DEVIATION_ABS
        && worst_pred <= 1e-12
        && worst_quad <= tol::CROSS_CHECK_REL;
    conclude(
        6,
        "limit suite",
        ok,
        &format!(
            "tail deviation {worst_tail:.3e}, prediction gap {worst_pred:.3e}, quadrature gap {worst_quad:.3e}"
        ),
    );
}

#[test]
fn criterion_7_search_recovers_the_equality_families() {
    let mut failures: Vec<String> = Vec::new();

    for (i, start) in seeded_bodies(20, 909, 12, Some(2)).iter().enumerate() {
        let sp = SearchSpec { k: Some(2), lambda: Some(0.0), ..SearchSpec::new(InequalityId::T1) };
        let out = minimize_slack(start, &sp).unwrap();
        let slack = *out.trace.slacks.last().unwrap();
        let mass = out.body.profile().harmonic_norm();
        if out.trace.iterations > 500 || slack >= tol::SEARCH_TERMINAL_SLACK || mass >= tol::SEARCH_FAMILY_MASS
        {
            failures.push(format!(
                "T1 start {i}: {} iters, slack {slack:.3e}, off-family mass {mass:.3e}",
                out.trace.iterations
            ));
        }
    }

    for (i, start) in seeded_bodies(20, 808, 12, None).iter().enumerate() {
        let sp = SearchSpec { k: Some(2), mu: Some(-2.0), ..SearchSpec::new(InequalityId::T2) };
        let out = minimize_slack(start, &sp).unwrap();
        let outside: f64 = out
            .body
            .profile()
            .harmonics()
            .iter()
            .skip(1)
            .map(|&(a, b)| a * a + b * b)
            .sum::<f64>()
            .sqrt();
        if out.trace.iterations > 500 || outside >= tol::SEARCH_FAMILY_MASS {
            failures.push(format!(
                "T2 start {i}: {} iters, mass outside the family {outside:.3e}",
                out.trace.iterations
            ));
        }
    }

    let ok = failures.is_empty();
    conclude(7, "extremal search", ok, &format!("40 starts, failures: {failures:?}"));
}

#[test]
fn criterion_8_full_suite_artifacts_are_byte_identical() {
    fn full_suite() -> BTreeMap<String, String> {
        let plain = seeded_bodies(50, 4242, 16, None);
        let filtered = seeded_bodies(50, 4242, 16, Some(2));
        let alphas: Vec<f64> = (1..=4).map(|j| TAU * j as f64 / 9.0).collect();

        let runs: Vec<(&str, &Vec<StarBody>, SweepGrid)> = vec![
            ("t1", &filtered, grid(InequalityId::T1, &[2], &[0.0, 0.3, 0.6], &[], &[])),
            ("t2", &plain, grid(InequalityId::T2, &[2], &[], &[-2.0, -4.0, -8.0], &[])),
            ("t3", &plain, grid(InequalityId::T3, &[2], &[], &[], &alphas)),
            ("c31", &plain, grid(InequalityId::C31, &[2, 3, 4], &[], &[], &[])),
            ("stab35", &filtered, grid(InequalityId::Stab35, &[2], &[0.0, 0.5], &[], &[])),
            ("stab37", &plain, grid(InequalityId::Stab37, &[2], &[], &[-2.0, -6.0], &[])),
            ("dual_iso", &plain, grid(InequalityId::DualIso, &[], &[], &[], &[])),
            ("mixed_iso", &plain, grid(InequalityId::MixedIso, &[], &[], &[], &[])),
        ];

        let mut files = BTreeMap::new();
        for (name, bodies, g) in runs {
            for (file, contents) in sweep_artifacts(&sweep(bodies, &g).unwrap()).files {
                files.insert(format!("{name}.{file}"), contents);
            }
        }

        let sp = SearchSpec { k: Some(2), lambda: Some(0.0), ..SearchSpec::new(InequalityId::T1) };
        let outcome = minimize_slack(&filtered[0], &sp).unwrap();
        for (file, contents) in search_artifacts(&outcome).files {
            files.insert(format!("search.{file}"), contents);
        }

        let rows = limit_sequence(&plain[0], &plain[1], Angle::new(1.1), &[2, 4, 8, 16, 17, 33])
            .unwrap();
        for (file, contents) in dcl_core::limit_artifacts(&rows).files {
            files.insert(format!("limit.{file}"), contents);
        }
        files
    }

    let first = full_suite();
    let second = full_suite();
    // 8 sweeps leave a csv and a summary each, search a trace and a
    // terminal body, the limit stage one csv: 19 files in all.
    let ok = first == second && first.len() == 19;
    conclude(
        8,
        "determinism",
        ok,
        &format!("{} artifact files, identical: {}", first.len(), first == second),
    );
}

// Sanity anchor for the suite above: the stability margin really does share
// T1's hypothesis, so the per-k filtered ensembles are the right input.
#[test]
fn stability_margin_rejects_what_the_chord_bound_rejects() {
    let s = body(2.0, &[(4, 0.1, 0.0)]);
    assert!(matches!(
        margin_stab35(&s, 2, 0.1, &EvalOptions::default()),
        Err(Error::HypothesisViolation { .. })
    ));
}
