//! Command implementations. Everything here maps core results onto the
//! exit-code contract and keeps stdout deterministic: reports and artifacts
//! carry no timestamps, and ensemble work is seeded.

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::fs;
use std::path::Path;

use serde::Deserialize;

use dcl_core::{
    area, area_quadrature, chord_self_integral, chord_self_integral_quadrature,
    dual_mixed_area_disk, dual_mixed_area_disk_quadrature, limit_artifacts, limit_sequence,
    margin_stab35, margin_stab37, minimize_slack, oriented_area, oriented_area_quadrature,
    sample_ensemble, search_artifacts, slack_c31, slack_dual_iso, slack_mixed_iso, slack_t1,
    slack_t2, slack_t3, sweep, sweep_artifacts, Angle, ArtifactSet, EnsembleSpec, EvalOptions,
    Error as CoreError, FourierProfile, InequalityId, QuadratureSpec, SearchSpec, SlackReport,
    StarBody, SweepGrid, Verdict,
};

use crate::{Command, Failure};

pub fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Eval { body, functionals, k, nodes, tol } => eval(&body, &functionals, k, nodes, tol),
        Command::Verify {
            inequality,
            body,
            partner,
            k,
            lambda,
            mu,
            alpha,
            nodes,
            tol,
            allow_out_of_range,
            project,
        } => verify(
            &inequality,
            &body,
            partner.as_deref(),
            Params { k, lambda, mu, alpha },
            nodes,
            tol,
            allow_out_of_range,
            project,
        ),
        Command::Sweep { config, out } => sweep_cmd(&config, &out),
        Command::Search { config, out } => search_cmd(&config, &out),
        Command::Limit { config, out } => limit_cmd(&config, &out),
        Command::Fit { samples, n_max, out } => fit_cmd(&samples, n_max, out.as_deref()),
        Command::Report { config, out } => report_cmd(&config, &out),
    }
}

// ---- input helpers -----------------------------------------------------------------

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// serde_json errors carry line/column, so parse failures point at the spot.
fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn load_profile(path: &Path) -> Result<FourierProfile, Failure> {
    // Deserialization bypasses the constructor; re-validate the invariants.
    let profile: FourierProfile = parse_json(path)?;
    profile.validated().map_err(Failure::from)
}

fn certify(profile: FourierProfile) -> Result<StarBody, Failure> {
    StarBody::certify(profile).map_err(Failure::from)
}

/// Node count exact for products of profiles of the given order, with the
/// documented floor of 4 * 64 + 16.
fn quad_spec(max_order: usize, nodes: Option<usize>) -> Result<QuadratureSpec, Failure> {
    let n = nodes.unwrap_or_else(|| (4 * max_order + 16).max(272));
    QuadratureSpec::new(n, TAU).map_err(Failure::from)
}

fn write_artifacts(dir: &Path, prefix: &str, set: &ArtifactSet) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    for (name, contents) in &set.files {
        let path = dir.join(format!("{prefix}{name}"));
        fs::write(&path, contents).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

// ---- eval --------------------------------------------------------------------------

fn eval(
    body: &Path,
    functionals: &str,
    k: Option<u32>,
    nodes: Option<usize>,
    tol: f64,
) -> Result<(), Failure> {
    let s = certify(load_profile(body)?)?;
    let q = quad_spec(s.profile().order(), nodes)?;
    for sel in functionals.split(',').map(str::trim) {
        let (closed, quadrature) = match sel {
            "area" => (area(&s).value, area_quadrature(&s, &q).value),
            "oriented_area" => (oriented_area(&s).value, oriented_area_quadrature(&s, &q).value),
            "dual_mixed_area_disk" => {
                (dual_mixed_area_disk(&s).value, dual_mixed_area_disk_quadrature(&s, &q).value)
            }
            "chord_self" => {
                let k = k.ok_or_else(|| Failure::Parse("chord_self requires --k".into()))?;
                (
                    chord_self_integral(&s, k)?.value,
                    chord_self_integral_quadrature(&s, k, &q)?.value,
                )
            }
            other => {
                return Err(Failure::Parse(format!(
                    "unknown functional {other:?} (expected area, oriented_area, dual_mixed_area_disk, chord_self)"
                )))
            }
        };
        let residual = (closed - quadrature).abs();
        println!("{sel} = {closed} (closed) / {quadrature} (quadrature), residual {residual:e}");
        if residual > tol * closed.abs().max(1.0) {
            eprintln!("note: {sel} routes disagree beyond tol {tol:e}");
        }
    }
    Ok(())
}

// ---- verify ------------------------------------------------------------------------

struct Params {
    k: Option<u32>,
    lambda: Option<f64>,
    mu: Option<f64>,
    alpha: Option<f64>,
}

impl Params {
    fn need_k(&self) -> Result<u32, Failure> {
        self.k.ok_or_else(|| Failure::Parse("this inequality requires --k".into()))
    }

    fn need(name: &str, v: Option<f64>) -> Result<f64, Failure> {
        v.ok_or_else(|| Failure::Parse(format!("this inequality requires --{name}")))
    }

    fn forbid(&self, id: InequalityId, takes: &[&str]) -> Result<(), Failure> {
        let given = [
            ("k", self.k.is_some()),
            ("lambda", self.lambda.is_some()),
            ("mu", self.mu.is_some()),
            ("alpha", self.alpha.is_some()),
        ];
        for (name, present) in given {
            if present && !takes.contains(&name) {
                return Err(Failure::Parse(format!("{id} does not take --{name}")));
            }
        }
        Ok(())
    }
}

fn finite_angle(alpha: f64) -> Result<Angle, Failure> {
    if !alpha.is_finite() {
        return Err(Failure::Parse(format!("alpha must be finite, got {alpha}")));
    }
    Ok(Angle::new(alpha))
}

#[allow(clippy::too_many_arguments)]
fn verify(
    inequality: &str,
    body: &Path,
    partner: Option<&Path>,
    params: Params,
    nodes: Option<usize>,
    tol: f64,
    allow_out_of_range: bool,
    project: bool,
) -> Result<(), Failure> {
    let id: InequalityId = inequality.parse().map_err(Failure::Parse)?;
    if id.is_pairwise() != partner.is_some() {
        return Err(Failure::Parse(if id.is_pairwise() {
            format!("{id} compares two bodies; pass a partner file")
        } else {
            format!("{id} takes a single body")
        }));
    }

    let mut profile = load_profile(body)?;
    let mut partner_profile = partner.map(load_profile).transpose()?;
    if project {
        let k = params.k.ok_or_else(|| Failure::Parse("--project requires --k".into()))?;
        profile = profile.project_even_multiples(k)?;
        partner_profile = partner_profile.map(|p| p.project_even_multiples(k)).transpose()?;
    }
    let s = certify(profile)?;
    let t = partner_profile.map(certify).transpose()?;

    let max_order = s.profile().order().max(t.as_ref().map_or(0, |t| t.profile().order()));
    let q = quad_spec(max_order, nodes)?;

    params.forbid(
        id,
        match id {
            InequalityId::T1 | InequalityId::Stab35 => &["k", "lambda"],
            InequalityId::T2 | InequalityId::Stab37 => &["k", "mu"],
            InequalityId::T3 => &["k", "alpha"],
            InequalityId::C31 => &["k"],
            InequalityId::DualIso | InequalityId::MixedIso => &[],
        },
    )?;
    // Resolve required flags now so the closure below is pure core dispatch
    // and can be retried with relaxed options.
    let go: Box<dyn Fn(&EvalOptions) -> dcl_core::Result<SlackReport> + '_> = match id {
        InequalityId::T1 => {
            let (k, l) = (params.need_k()?, Params::need("lambda", params.lambda)?);
            Box::new(move |o| slack_t1(&s, k, l, o))
        }
        InequalityId::T2 => {
            let (k, m) = (params.need_k()?, Params::need("mu", params.mu)?);
            Box::new(move |o| slack_t2(&s, k, m, o))
        }
        InequalityId::T3 => {
            let k = params.need_k()?;
            let alpha = finite_angle(Params::need("alpha", params.alpha)?)?;
            let t = t.as_ref().expect("pairwise");
            Box::new(move |o| slack_t3(&s, t, k, alpha, o))
        }
        InequalityId::C31 => {
            let k = params.need_k()?;
            Box::new(move |o| slack_c31(&s, k, o))
        }
        InequalityId::Stab35 => {
            let (k, l) = (params.need_k()?, Params::need("lambda", params.lambda)?);
            Box::new(move |o| margin_stab35(&s, k, l, o))
        }
        InequalityId::Stab37 => {
            let (k, m) = (params.need_k()?, Params::need("mu", params.mu)?);
            Box::new(move |o| margin_stab37(&s, k, m, o))
        }
        InequalityId::DualIso => Box::new(move |o| slack_dual_iso(&s, o)),
        InequalityId::MixedIso => {
            let t = t.as_ref().expect("pairwise");
            Box::new(move |o| slack_mixed_iso(&s, t, o))
        }
    };

    let strict = EvalOptions::checked(q);
    let report = match go(&strict) {
        Ok(r) => r,
        Err(e @ CoreError::ParameterOutOfRange { .. }) if allow_out_of_range => {
            eprintln!("note: {e}; evaluating anyway, verdict is exploratory");
            go(&EvalOptions { allow_out_of_range: true, ..strict })?
        }
        Err(e) => return Err(e.into()),
    };

    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    if let Some(residual) = report.cross_check_residual {
        let scale = report.lhs.abs().max(report.rhs.abs()).max(1.0);
        if residual > tol * scale {
            eprintln!("note: dual-route residual {residual:e} exceeds tol {tol:e}");
        }
    }
    match report.verdict {
        Verdict::Holds | Verdict::Equality => Ok(()),
        Verdict::Violated => Err(Failure::Violation),
    }
}

// ---- config-driven commands ----------------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepConfig {
    ensemble: EnsembleSpec,
    grid: SweepGrid,
}

fn sweep_cmd(config: &Path, out: &Path) -> Result<(), Failure> {
    let cfg: SweepConfig = parse_json(config)?;
    let bodies = sample_ensemble(&cfg.ensemble)?;
    let table = sweep(&bodies, &cfg.grid)?;
    write_artifacts(out, "", &sweep_artifacts(&table))?;
    let s = &table.summary;
    println!(
        "{}: {} rows, {} violations, {} equalities, min slack {} at body {}; artifacts in {}",
        s.inequality,
        s.rows,
        s.violations,
        s.equalities,
        s.min_slack,
        s.argmin_body_index,
        out.display()
    );
    Ok(())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SearchConfig {
    start: FourierProfile,
    spec: SearchSpec,
}

fn search_cmd(config: &Path, out: &Path) -> Result<(), Failure> {
    let cfg: SearchConfig = parse_json(config)?;
    let start = certify(cfg.start.validated()?)?;
    let outcome = minimize_slack(&start, &cfg.spec)?;
    write_artifacts(out, "", &search_artifacts(&outcome))?;
    let last = outcome.trace.slacks.last().expect("trace holds the starting slack");
    println!(
        "{} after {} iterations, terminal slack {last}; artifacts in {}",
        if outcome.trace.converged { "converged" } else { "stopped" },
        outcome.trace.iterations,
        out.display()
    );
    Ok(())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LimitConfig {
    s: FourierProfile,
    /// Defaults to the first body (self-correlation study).
    t: Option<FourierProfile>,
    alpha: f64,
    orders: Vec<u32>,
}

fn limit_cmd(config: &Path, out: &Path) -> Result<(), Failure> {
    let cfg: LimitConfig = parse_json(config)?;
    let s = certify(cfg.s.validated()?)?;
    let t = match cfg.t {
        Some(p) => certify(p.validated()?)?,
        None => s.clone(),
    };
    let alpha = finite_angle(cfg.alpha)?;
    let rows = limit_sequence(&s, &t, alpha, &cfg.orders)?;
    write_artifacts(out, "", &limit_artifacts(&rows))?;
    let max_dev = rows.iter().map(|r| r.deviation).fold(0.0, f64::max);
    println!("{} orders, max deviation {max_dev:e}; artifacts in {}", rows.len(), out.display());
    Ok(())
}

fn fit_cmd(samples: &Path, n_max: usize, out: Option<&Path>) -> Result<(), Failure> {
    let raw: Vec<(f64, f64)> = parse_json(samples)?;
    for (i, &(theta, _)) in raw.iter().enumerate() {
        if !theta.is_finite() {
            return Err(Failure::Parse(format!("sample angle at position {i} is not finite")));
        }
    }
    let pairs: Vec<(Angle, f64)> = raw.into_iter().map(|(t, v)| (Angle::new(t), v)).collect();
    let profile = FourierProfile::fit(&pairs, n_max)?;
    let mut json = serde_json::to_string_pretty(&profile).expect("profile serializes");
    json.push('\n');
    match out {
        Some(path) => {
            fs::write(path, json).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            println!("fitted order-{n_max} profile written to {}", path.display());
        }
        None => print!("{json}"),
    }
    Ok(())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ReportConfig {
    /// Shared ensemble, used by every sweep that does not override it.
    ensemble: EnsembleSpec,
    sweeps: Vec<NamedSweep>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NamedSweep {
    /// Artifact file prefix; must be unique within the config.
    name: String,
    grid: SweepGrid,
    /// Override for sweeps needing different sampling, e.g. a hypothesis
    /// filter matched to this grid's k.
    #[serde(default)]
    ensemble: Option<EnsembleSpec>,
}

fn report_cmd(config: &Path, out: &Path) -> Result<(), Failure> {
    let cfg: ReportConfig = parse_json(config)?;
    let mut seen = BTreeSet::new();
    for sw in &cfg.sweeps {
        let ok = !sw.name.is_empty()
            && sw.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
        if !ok {
            return Err(Failure::Parse(format!(
                "sweep name {:?} must be nonempty [A-Za-z0-9_-]",
                sw.name
            )));
        }
        if !seen.insert(&sw.name) {
            return Err(Failure::Parse(format!("duplicate sweep name {:?}", sw.name)));
        }
    }

    let shared = sample_ensemble(&cfg.ensemble)?;
    let mut total_rows = 0;
    let mut total_violations = 0;
    for sw in &cfg.sweeps {
        let override_bodies = sw.ensemble.as_ref().map(sample_ensemble).transpose()?;
        let bodies = override_bodies.as_deref().unwrap_or(&shared);
        let table = sweep(bodies, &sw.grid)?;
        write_artifacts(out, &format!("{}.", sw.name), &sweep_artifacts(&table))?;
        total_rows += table.summary.rows;
        total_violations += table.summary.violations;
        println!(
            "{}: {} rows, {} violations, min slack {}",
            sw.name, table.summary.rows, table.summary.violations, table.summary.min_slack
        );
    }
    println!(
        "{} sweeps, {total_rows} rows, {total_violations} violations; artifacts in {}",
        cfg.sweeps.len(),
        out.display()
    );
    Ok(())
}
