//! Command-line orchestration. One thin binary with the subcommands
//! build, validate, classify, flow, heat-trace, contacto, deform; every
//! command supports `--json` / `--csv` output selectors and `--seed` for
//! randomized sampling. Verbosity via `LENSCONTACT_LOG` ∈
//! {error, warn, info, debug}.
//!
//! Exit codes: 0 all checks pass, 1 check failure, 2 usage/schema error.

use crate::descriptor::FormDescriptor;
use crate::error::{Error, Result};
use crate::form::{ContactForm, RadialCoefficients};
use crate::lens::{make_lens, Chart, ChartPoint};
use crate::profile::{monotone_stats, validate_smoothness};
use crate::rational::QuadIrr;
use crate::report::{Check, Report};
use crate::{contacto, form, metric, reeb, spectral};
use clap::{Parser, Subcommand};
use rand::{rngs::StdRng, SeedableRng};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(
    name = "lenscontact",
    version,
    about = "K-contact forms on lens spaces: construction and numerical verification of their invariants"
)]
pub struct Cli {
    /// Print the machine-readable JSON report to stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print the check table as CSV to stdout.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Construct a form descriptor from (p, q) and periods (or phi0).
    Build {
        #[arg(long)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        #[arg(long)]
        tau0: f64,
        /// Second core period; alternative to --phi0.
        #[arg(long)]
        tau1: Option<f64>,
        /// Chart-0 rotation number; alternative to --tau1.
        #[arg(long, conflicts_with = "tau1", allow_negative_numbers = true)]
        phi0: Option<f64>,
        /// Profile polynomial degree (3, 5, 7 or 9); default: lowest monotone.
        #[arg(long)]
        degree: Option<usize>,
        /// Output descriptor path ("-" for stdout).
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-validate a descriptor: smoothness, monotonicity, overlap
    /// consistency, metric compatibility, Reeb invariance.
    Validate {
        #[arg(long)]
        descriptor: PathBuf,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Quasi-regular / irregular verdict with rationality certificate.
    Classify {
        #[arg(long)]
        descriptor: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        dmax: i64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Integrate a Reeb orbit and export samples (t, chart, r, theta, z).
    Flow {
        #[arg(long)]
        descriptor: PathBuf,
        #[arg(long, default_value_t = 0)]
        chart: u8,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        z: f64,
        #[arg(long)]
        t_max: f64,
        #[arg(long, default_value_t = 1e-2)]
        dt: f64,
        /// Use the generic fixed-step integrator instead of the exact flow.
        #[arg(long)]
        ode: bool,
        /// Orbit CSV destination ("-" for stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Heat-trace expansion coefficients with quadrature cross-checks.
    HeatTrace {
        #[arg(long)]
        descriptor: PathBuf,
        /// Evaluate the truncated expansion at this time.
        #[arg(long)]
        t: Option<f64>,
        /// Write the curvature profile (r, kappa, density) as CSV.
        #[arg(long)]
        curvature_out: Option<PathBuf>,
    },
    /// Strict contactomorphisms and the equivalence count.
    Contacto {
        #[command(subcommand)]
        action: ContactoAction,
    },
    /// Momentum deformation: single step or convergence study.
    Deform {
        #[arg(long)]
        descriptor: PathBuf,
        /// Single deformation parameter; omits the convergence study.
        #[arg(long, allow_negative_numbers = true)]
        epsilon: Option<f64>,
        /// Number of continued-fraction steps for the study.
        #[arg(long, default_value_t = 6)]
        steps: usize,
        /// Convergence table CSV destination ("-" for stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ContactoAction {
    /// Build the radial map between two same-triple descriptors and verify
    /// the pullback and cocycle identities.
    Map {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Radial map CSV (r, map0, map1) destination ("-" for stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count strict-contactomorphism classes for prescribed periods.
    ClassifyPair {
        #[arg(long)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        #[arg(long)]
        tau0: f64,
        #[arg(long)]
        tau1: f64,
        #[arg(long, default_value_t = 1_000_000)]
        dmax: i64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Exact irrationality witness "a,b,d,c" for tau0/tau1 = (a + b·√d)/c.
        #[arg(long)]
        exact_ratio: Option<String>,
    },
}

fn log_level() -> u8 {
    match std::env::var("LENSCONTACT_LOG").as_deref() {
        Ok("error") => 0,
        Ok("warn") => 1,
        Ok("info") => 2,
        Ok("debug") => 3,
        _ => 1,
    }
}

macro_rules! info {
    ($($arg:tt)*) => {
        if log_level() >= 2 {
            eprintln!("[info] {}", format!($($arg)*));
        }
    };
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Schema(_)
        | Error::Io(_)
        | Error::InvalidLens { .. }
        | Error::Domain(_)
        | Error::NotComparable(_) => 2,
        _ => 1,
    }
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    if path.as_os_str() == "-" {
        std::io::stdout().write_all(text.as_bytes())?;
    } else {
        std::fs::write(path, text)?;
    }
    Ok(())
}

fn chart_from_index(i: u8) -> Result<Chart> {
    match i {
        0 => Ok(Chart::Zero),
        1 => Ok(Chart::One),
        other => Err(Error::Domain(format!("chart must be 0 or 1, got {other}"))),
    }
}

fn load_form(path: &Path) -> Result<(FormDescriptor, ContactForm, String)> {
    let text = std::fs::read_to_string(path)?;
    let desc = FormDescriptor::from_json(&text)?;
    let form = desc.to_form()?;
    Ok((desc, form, text))
}

fn emit(cli: &Cli, report: &Report) {
    if cli.json {
        println!("{}", report.to_json());
    } else if cli.csv {
        print!("{}", report.to_csv());
    } else {
        print!("{}", report.render_text());
    }
}

/// Entry point used by the binary; parses `std::env::args`.
pub fn run() -> i32 {
    let cli = Cli::parse();
    run_cli(cli)
}

/// Entry point for in-process testing.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run_cli(cli),
        Err(e) => {
            let _ = e.print();
            2
        }
    }
}

fn run_cli(cli: Cli) -> i32 {
    let start = Instant::now();
    match execute(&cli, start) {
        Ok(report) => {
            emit(&cli, &report);
            if report.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn execute(cli: &Cli, start: Instant) -> Result<Report> {
    let mut report = match &cli.command {
        Command::Build {
            p,
            q,
            tau0,
            tau1,
            phi0,
            degree,
            out,
        } => cmd_build(cli, *p, *q, *tau0, *tau1, *phi0, *degree, out)?,
        Command::Validate {
            descriptor,
            samples,
        } => cmd_validate(cli, descriptor, *samples)?,
        Command::Classify {
            descriptor,
            dmax,
            tol,
        } => cmd_classify(cli, descriptor, *dmax, *tol)?,
        Command::Flow {
            descriptor,
            chart,
            r,
            theta,
            z,
            t_max,
            dt,
            ode,
            out,
        } => cmd_flow(cli, descriptor, *chart, *r, *theta, *z, *t_max, *dt, *ode, out.as_deref())?,
        Command::HeatTrace {
            descriptor,
            t,
            curvature_out,
        } => cmd_heat_trace(cli, descriptor, *t, curvature_out.as_deref())?,
        Command::Contacto { action } => match action {
            ContactoAction::Map { a, b, samples, out } => {
                cmd_contacto_map(cli, a, b, *samples, out.as_deref())?
            }
            ContactoAction::ClassifyPair {
                p,
                q,
                tau0,
                tau1,
                dmax,
                tol,
                exact_ratio,
            } => cmd_classify_pair(cli, *p, *q, *tau0, *tau1, *dmax, *tol, exact_ratio.as_deref())?,
        },
        Command::Deform {
            descriptor,
            epsilon,
            steps,
            out,
        } => cmd_deform(cli, descriptor, *epsilon, *steps, out.as_deref())?,
    };
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn cmd_build(
    cli: &Cli,
    p: i64,
    q: i64,
    tau0: f64,
    tau1: Option<f64>,
    phi0: Option<f64>,
    degree: Option<usize>,
    out: &Path,
) -> Result<Report> {
    let lens = make_lens(p, q)?;
    let tau1 = match (tau1, phi0) {
        (Some(t1), None) => t1,
        (None, Some(phi)) => {
            let denom = lens.q as f64 + lens.p as f64 * phi;
            if !denom.is_finite() || denom <= 0.0 {
                return Err(Error::InvalidRotation { value: denom });
            }
            tau0 / denom
        }
        _ => {
            return Err(Error::Domain(
                "exactly one of --tau1 and --phi0 is required".into(),
            ))
        }
    };
    let form = match degree {
        Some(d) => form::from_periods_with_degree(lens, tau0, tau1, d)?,
        None => form::from_periods(lens, tau0, tau1)?,
    };
    let desc = FormDescriptor::from_form(&form);
    write_text(out, &(desc.to_json() + "\n"))?;
    info!("descriptor written to {}", out.display());

    let digest_input = format!("build p={p} q={q} tau0={tau0} tau1={tau1} degree={degree:?}");
    let mut report = Report::new("build", &digest_input, Some(cli.seed));
    report.push(Check::residual(
        "derived tau1 consistency",
        "tau1=tau0/(q+p*phi0)",
        form.tau1 - tau1,
        1e-10,
    ));
    report.push(Check::residual(
        "profile end value",
        "a(1)=p*tau0/(2pi*(p*phi0+q))",
        form.profile.eval(1.0, 0)? - form.profile.boundary.a_end,
        1e-12,
    ));
    report.data = serde_json::json!({
        "descriptor": out.display().to_string(),
        "lens": {"p": lens.p, "q": lens.q, "m": lens.m, "s": lens.s},
        "tau0": form.tau0,
        "tau1": form.tau1,
        "phi0": form.phi0,
        "phi1": form.phi1,
        "profile_degree": form.profile.degree(),
    });
    Ok(report)
}

fn cmd_validate(cli: &Cli, descriptor: &Path, samples: usize) -> Result<Report> {
    // lenient load: gate violations become named check rows, not load errors
    let text = std::fs::read_to_string(descriptor)?;
    let desc = FormDescriptor::from_json(&text)?;
    let form = desc.to_form_lenient()?;
    let mut rng = StdRng::seed_from_u64(cli.seed);
    let mut report = Report::new("validate", &format!("validate {text}"), Some(cli.seed));

    let smooth = validate_smoothness(&form.profile, 5, 1e-4);
    for c in smooth.checks.iter().chain(smooth.gauge.iter()) {
        report.push(Check::residual(
            format!("smoothness {}", c.name),
            "boundary-and-parity-conditions",
            c.value,
            c.tolerance,
        ));
    }
    let (min_slope, max_slope) = monotone_stats(&form.profile, 512);
    report.push(Check {
        name: "monotone profile".into(),
        claim: "contact-positivity a'(r)>0".into(),
        value: min_slope,
        expected: None,
        residual: if min_slope > 1e-9 * max_slope { 0.0 } else { 1.0 },
        tolerance: 0.5,
        pass: min_slope > 0.0 && min_slope > 1e-9 * max_slope,
    });
    report.push(Check::residual(
        "overlap consistency",
        "chart-transition-pullback-identity",
        form.overlap_consistency(samples, &mut rng),
        1e-10,
    ));
    let compat = metric::verify_compatibility(&form, samples, &mut rng)?;
    report.push(Check::residual(
        "metric reeb identity",
        "g(R,.)=alpha",
        compat.reeb_identity,
        1e-10,
    ));
    report.push(Check::residual(
        "metric volume identity",
        "sqrt(det g)=contact-density",
        compat.volume_identity,
        1e-10,
    ));
    report.push(Check::residual(
        "reeb invariance of metric",
        "L_R g=0",
        metric::reeb_invariance_check(&form, samples.min(200), 1e-4, &mut rng),
        1e-8,
    ));
    Ok(report)
}

fn cmd_classify(cli: &Cli, descriptor: &Path, dmax: i64, tol: f64) -> Result<Report> {
    let (_, form, text) = load_form(descriptor)?;
    let class = reeb::classify(&form, dmax, tol)?;
    let mut report = Report::new(
        "classify",
        &format!("classify dmax={dmax} tol={tol} {text}"),
        Some(cli.seed),
    );
    let kind = match &class.verdict {
        reeb::Verdict::QuasiRegular { .. } => "quasi-regular",
        reeb::Verdict::Irregular => "irregular",
    };
    let periodic = class.orbits.iter().filter(|o| o.periodic).count();
    report.push(Check::against(
        "periodic orbit count",
        "two-core-orbits-always-periodic",
        class.orbits.iter().filter(|o| o.periodic && o.is_core).count() as f64,
        2.0,
        0.5,
    ));
    let orbits: Vec<serde_json::Value> = class
        .orbits
        .iter()
        .map(|o| {
            serde_json::json!({
                "periodic": o.periodic,
                "minimal_period": o.minimal_period,
                "rotation_number": o.rotation_number,
                "is_core": o.is_core,
                "radius": o.radius,
                "chart": o.chart.index(),
            })
        })
        .collect();
    report.data = serde_json::json!({
        "verdict": kind,
        "certificate": {
            "dmax": class.certificate.dmax,
            "tol": class.certificate.tol,
            "best_approximation": class.certificate.best.map(|(n, d, e)| serde_json::json!({
                "numerator": n, "denominator": d, "error": e
            })),
        },
        "detected": match &class.verdict {
            reeb::Verdict::QuasiRegular { numerator, denominator } =>
                serde_json::json!({"numerator": numerator, "denominator": denominator}),
            reeb::Verdict::Irregular => serde_json::Value::Null,
        },
        "orders": class.orders.as_ref().map(|(a0, a1)| serde_json::json!({
            "a0": a0.to_string(), "a1": a1.to_string()
        })),
        "generic_period": class.generic_period,
        "recurrence_gap": class.recurrence_gap,
        "periodic_orbits_in_inventory": periodic,
        "orbits": orbits,
    });
    info!("verdict: {kind}");
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn cmd_flow(
    cli: &Cli,
    descriptor: &Path,
    chart: u8,
    r: f64,
    theta: f64,
    z: f64,
    t_max: f64,
    dt: f64,
    ode: bool,
    out: Option<&Path>,
) -> Result<Report> {
    let (_, form, text) = load_form(descriptor)?;
    let chart = chart_from_index(chart)?;
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain(format!("r = {r} outside [0, 1]")));
    }
    let origin = ChartPoint::new(chart, r, theta, z);
    let coeffs = form.coefficients(chart);
    let steps = (t_max / dt).ceil() as usize;
    let mut csv = String::from("t,chart,r,theta,z\n");
    let mut end = origin;
    let mut prev_t = 0.0;
    for k in 0..=steps {
        let t = (k as f64 * dt).min(t_max);
        let pt = if ode {
            // advance incrementally from the previous sample
            if k == 0 {
                origin
            } else {
                reeb::flow_ode(&coeffs, &end, t - prev_t, dt)?
            }
        } else {
            reeb::flow(&form, &origin, t)
        };
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            t,
            pt.chart.index(),
            pt.r,
            pt.theta.value(),
            pt.z.value()
        ));
        end = pt;
        prev_t = t;
    }
    if let Some(path) = out {
        write_text(path, &csv)?;
    }
    let mut report = Report::new(
        "flow",
        &format!("flow chart={chart} r={r} t_max={t_max} dt={dt} ode={ode} {text}"),
        Some(cli.seed),
    );
    // the flow must preserve r exactly
    report.push(Check::residual(
        "radial drift",
        "reeb-flow-preserves-r",
        end.r - r,
        1e-15,
    ));
    if ode {
        let exact = reeb::flow(&form, &origin, t_max);
        report.push(Check::residual(
            "integrator vs exact flow",
            "rk4-agrees-with-linear-flow",
            (end.theta.dist(exact.theta)).max(end.z.dist(exact.z)),
            1e-9,
        ));
    }
    report.data = serde_json::json!({
        "samples": steps + 1,
        "end": {"chart": end.chart.index(), "r": end.r, "theta": end.theta.value(), "z": end.z.value()},
    });
    Ok(report)
}

fn cmd_heat_trace(
    cli: &Cli,
    descriptor: &Path,
    t: Option<f64>,
    curvature_out: Option<&Path>,
) -> Result<Report> {
    let (_, form, text) = load_form(descriptor)?;
    let class = reeb::classify(&form, spectral::DEFAULT_DMAX, spectral::DEFAULT_TOL)?;
    let (coeffs, class_name, seifert_json) = match class.verdict {
        reeb::Verdict::Irregular => (
            spectral::heat_coeffs_irregular(&form)?,
            "irregular",
            serde_json::Value::Null,
        ),
        reeb::Verdict::QuasiRegular { .. } => {
            let data = spectral::seifert_data(&form)?;
            let coeffs = spectral::heat_coeffs_quasiregular(&data);
            let json = serde_json::json!({
                "tau": data.tau,
                "a0": data.a0.to_string(),
                "a1": data.a1.to_string(),
                "chi_orb": data.chi_orb.to_string(),
                "euler_number": data.euler_number,
            });
            (coeffs, "quasi-regular", json)
        }
    };
    let (vol_resid, curv_resid) = spectral::heat_cross_check(&form, &coeffs)?;
    let mut report = Report::new("heat-trace", &format!("heat-trace {text}"), Some(cli.seed));
    report.push(Check::residual(
        "C0 quadrature residual",
        "volume=p*tau0*tau1",
        vol_resid,
        1e-8,
    ));
    report.push(Check::residual(
        "C1 quadrature residual",
        "curvature-integral=2pi*(tau0+tau1)",
        curv_resid,
        1e-6,
    ));
    if let Some(path) = curvature_out {
        let mut csv = String::from("r,kappa,density\n");
        for i in 0..=400 {
            let r = i as f64 / 400.0;
            csv.push_str(&format!(
                "{},{},{}\n",
                r,
                metric::kappa(&form, Chart::Zero, r)?,
                form.volume_density(Chart::Zero, r)
            ));
        }
        write_text(path, &csv)?;
    }
    report.data = serde_json::json!({
        "class": class_name,
        "c0": coeffs.c0,
        "c1": coeffs.c1,
        "source": "closed-form",
        "volume_quadrature": form.total_volume()?,
        "curvature_quadrature": metric::total_curvature(&form)?,
        "curvature_telescoped": metric::total_curvature_closed_form(&form),
        "volume_residual": vol_resid,
        "curvature_residual": curv_resid,
        "seifert": seifert_json,
        "trace_at_t": t.map(|t| spectral::heat_trace_eval(&coeffs, t).ok()),
    });
    Ok(report)
}

fn cmd_contacto_map(
    cli: &Cli,
    a: &Path,
    b: &Path,
    samples: usize,
    out: Option<&Path>,
) -> Result<Report> {
    let (_, form_a, text_a) = load_form(a)?;
    let (_, form_b, text_b) = load_form(b)?;
    let map = contacto::build_psi_map(&form_a, &form_b)?;
    let mut rng = StdRng::seed_from_u64(cli.seed);
    let pullback = contacto::verify_pullback(&map, &form_a, &form_b, samples, &mut rng)?;
    let cocycle = contacto::verify_cocycle(&map, samples, &mut rng)?;
    if let Some(path) = out {
        let mut csv = String::from("r,map0,map1\n");
        for i in 0..=200 {
            let r = i as f64 / 200.0;
            csv.push_str(&format!("{},{},{}\n", r, map.map0(r)?, map.map1(r)?));
        }
        write_text(path, &csv)?;
    }
    let mut report = Report::new(
        "contacto map",
        &format!("contacto-map {text_a} {text_b}"),
        Some(cli.seed),
    );
    report.push(Check::residual(
        "pullback identity",
        "radial-map-carries-one-form-onto-other",
        pullback,
        1e-8,
    ));
    report.push(Check::residual(
        "cocycle identity",
        "chart-maps-compatible-through-transition",
        cocycle,
        1e-8,
    ));
    report.data = serde_json::json!({
        "tau0": map.tau0,
        "phi0": map.phi0,
        "samples": samples,
    });
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn cmd_classify_pair(
    cli: &Cli,
    p: i64,
    q: i64,
    tau0: f64,
    tau1: f64,
    dmax: i64,
    tol: f64,
    exact_ratio: Option<&str>,
) -> Result<Report> {
    let lens = make_lens(p, q)?;
    let witness = match exact_ratio {
        Some(spec) => {
            let parts: Vec<i64> = spec
                .split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Domain(format!("bad --exact-ratio {spec:?}: {e}")))?;
            if parts.len() != 4 {
                return Err(Error::Domain(
                    "--exact-ratio needs four integers a,b,d,c".into(),
                ));
            }
            contacto::RatioWitness::Exact(QuadIrr::new(
                parts[0],
                parts[1],
                parts[2] as u64,
                parts[3],
            ))
        }
        None => contacto::RatioWitness::Numeric { dmax, tol },
    };
    let verdict = contacto::classify_pair(&lens, tau0, tau1, witness)?;
    let mut report = Report::new(
        "contacto classify-pair",
        &format!("classify-pair p={p} q={q} tau0={tau0} tau1={tau1}"),
        Some(cli.seed),
    );
    report.push(Check::against(
        "class count",
        "one-class-iff-q^2=1-mod-p",
        verdict.count as f64,
        if lens.q_squared_is_one() { 1.0 } else { 2.0 },
        0.5,
    ));
    report.data = serde_json::json!({
        "count": verdict.count,
        "q_squared_mod_p": verdict.q_squared_mod_p,
        "candidate_rotations_mod_1": [verdict.candidate_rotations.0, verdict.candidate_rotations.1],
        "coincide": verdict.coincide,
    });
    Ok(report)
}

fn cmd_deform(
    cli: &Cli,
    descriptor: &Path,
    epsilon: Option<f64>,
    steps: usize,
    out: Option<&Path>,
) -> Result<Report> {
    let (_, form, text) = load_form(descriptor)?;
    if let Some(eps) = epsilon {
        let deformed = spectral::deform(&form, eps)?;
        let t0 = deformed.coefficients(Chart::Zero).core_period();
        let t1 = deformed.coefficients(Chart::One).core_period();
        let formula = form.tau1 / (1.0 + eps * form.volume_closed_form());
        let phi0_measured = reeb::monodromy_rotation(&deformed.coefficients(Chart::Zero), 10_000)?;
        let phi0_expected = (form.phi0 + eps * form.tau0 * form.tau0).rem_euclid(1.0);
        let mut report = Report::new(
            "deform",
            &format!("deform eps={eps} {text}"),
            Some(cli.seed),
        );
        report.push(Check::residual(
            "core-0 period unchanged",
            "deformation-fixes-mu=0-core",
            t0 - form.tau0,
            1e-10,
        ));
        report.push(Check::residual(
            "core-1 period formula",
            "perturbed-period=tau1/(1+eps*vol)",
            t1 - formula,
            1e-10,
        ));
        report.push(Check::residual(
            "core-0 rotation shift",
            "perturbed-rotation=phi0+eps*tau0^2",
            (phi0_measured - phi0_expected).abs().min(1.0 - (phi0_measured - phi0_expected).abs()),
            1e-6,
        ));
        report.data = serde_json::json!({
            "epsilon": eps,
            "period_core0": t0,
            "period_core1": t1,
            "rotation_core0_mod_1": phi0_measured,
        });
        return Ok(report);
    }
    let study = spectral::convergence_study(&form, steps)?;
    let mut csv =
        String::from("n,epsilon,ratio_n_num,ratio_n_den,a0,a1,tau,C0,C1,resid_C0,resid_C1\n");
    for row in &study.rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            row.n,
            row.epsilon,
            row.ratio_num,
            row.ratio_den,
            row.a0,
            row.a1,
            row.tau,
            row.c0,
            row.c1,
            row.resid_c0,
            row.resid_c1
        ));
    }
    if let Some(path) = out {
        write_text(path, &csv)?;
    }
    let mut report = Report::new(
        "deform study",
        &format!("deform steps={steps} {text}"),
        Some(cli.seed),
    );
    let last = study.rows.last().expect("at least one row");
    report.push(Check::residual(
        "final C1 residual",
        "deformed-coefficients-converge",
        last.resid_c1,
        1e-3,
    ));
    let worst_period = study
        .rows
        .iter()
        .map(|r| r.period_residual)
        .fold(0.0f64, f64::max);
    report.push(Check::residual(
        "perturbed period formula",
        "perturbed-period=tau1/(1+eps*vol)",
        worst_period,
        1e-10,
    ));
    report.data = serde_json::json!({
        "base_c0": study.base.c0,
        "base_c1": study.base.c1,
        "rows": study.rows.iter().map(|r| serde_json::json!({
            "n": r.n, "epsilon": r.epsilon,
            "ratio": [r.ratio_num, r.ratio_den],
            "a0": r.a0.to_string(), "a1": r.a1.to_string(),
            "tau": r.tau, "c0": r.c0, "c1": r.c1,
            "resid_c0": r.resid_c0, "resid_c1": r.resid_c1,
        })).collect::<Vec<_>>(),
    });
    Ok(report)
}
