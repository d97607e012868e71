mod output;

use std::f64::consts::PI;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use symcurve::critical_arc::{critical_lengths, DEFAULT_TOL};
use symcurve::deformation::{alpha_conjecture, beta, lambda_deform};
use symcurve::polytope::{
    clustered_config_with_phi, clustered_face_bound, count_faces_capped, default_spread, VertexConfig,
    DEFAULT_SUBSET_CAP,
};
use symcurve::repro::{run_criterion, Golden, Options, CRITERIA, DEFAULT_SEED};
use symcurve::roots::DEFAULT_CLUSTER_TOL;
use symcurve::{circle_roots, is_face, CirclePoint, CircleRoot, Error, FaceStatus, RakedTrigPoly};

use output::{num, Format, Sink, Table};

/// Raked trigonometric polynomials and faces of the symmetric moment curve.
#[derive(Parser)]
#[command(name = "symcurve", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    out: Format,
    /// Write to this file instead of stdout; relative paths are taken from
    /// $SYMCURVE_OUTPUT_DIR when it is set.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Numerical tolerance (meaning depends on the subcommand).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for randomized suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for parallel sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Read angle arguments in degrees.
    #[arg(long, global = true)]
    degrees: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Critical arc length φ_k (bisection tolerance --tol, default 1e-10).
    Phi {
        #[arg(long)]
        k: usize,
        /// Report every canonical split, not only the minimizing one.
        #[arg(long)]
        per_split: bool,
    },
    /// Decide whether the curve points at the given angles span a face of B_k.
    Face {
        #[arg(long)]
        k: usize,
        /// Comma-separated angles.
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
    /// Count (dim)-faces of the convex hull of a vertex configuration.
    Polytope {
        #[arg(long)]
        k: usize,
        /// Face dimension.
        #[arg(long, default_value_t = 1)]
        dim: usize,
        /// Points per cluster of the four-cluster configuration.
        #[arg(long, conflicts_with_all = ["uniform", "angles"])]
        m: Option<usize>,
        /// Width of each cluster (default min(0.1, (φ_k - π/2)/2)).
        #[arg(long, requires = "m")]
        spread: Option<f64>,
        /// N equally spaced vertices.
        #[arg(long, conflicts_with = "angles")]
        uniform: Option<usize>,
        /// JSON file holding an array of vertex angles.
        #[arg(long)]
        angles: Option<PathBuf>,
        /// Refuse enumerations with more subsets than this.
        #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
        cap: u128,
    },
    /// Compare 2α_k with φ_k (even k only).
    Conjecture {
        #[arg(long)]
        k: usize,
    },
    /// β_k and the bound (2k-2)/(2k-1) on sin²β_k for k = 2..kmax.
    Beta {
        #[arg(long)]
        kmax: usize,
    },
    /// λ-deformation of an even raked polynomial.
    Deform {
        /// Polynomial JSON, or @path to a JSON file.
        #[arg(long)]
        poly: String,
        #[arg(long)]
        lambda: f64,
    },
    /// Roots on the circle with multiplicities (clustering tolerance --tol, default 1e-7).
    Roots {
        /// Polynomial JSON, or @path to a JSON file.
        #[arg(long)]
        poly: String,
    },
    /// Run the acceptance suite; exits nonzero if any criterion fails.
    Repro {
        /// JSON file overriding reference values.
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Run only these criteria (e.g. 1,12a).
        #[arg(long, value_delimiter = ',')]
        criterion: Vec<String>,
    },
}

/// Failure classes with their exit codes.
enum Failure {
    Computation(String),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) | Error::SpreadTooLarge { .. } | Error::CombinatorialExplosion { .. } => {
                Failure::Invalid(e.to_string())
            }
            _ => Failure::Computation(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Computation(e.to_string())
    }
}

type Outcome = Result<(String, bool), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Computation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    if let Some(tol) = cli.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Failure::Invalid(format!("--tol must be positive, got {tol}")));
        }
    }
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Failure::Invalid("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure::Computation(e.to_string()))?;
    }
    let (content, ok) = match &cli.command {
        Command::Phi { k, per_split } => phi_cmd(cli, *k, *per_split),
        Command::Face { k, points } => face_cmd(cli, *k, points),
        Command::Polytope {
            k,
            dim,
            m,
            spread,
            uniform,
            angles,
            cap,
        } => polytope_cmd(cli, *k, *dim, *m, *spread, *uniform, angles.as_ref(), *cap),
        Command::Conjecture { k } => conjecture_cmd(cli, *k),
        Command::Beta { kmax } => beta_cmd(cli, *kmax),
        Command::Deform { poly, lambda } => deform_cmd(cli, poly, *lambda),
        Command::Roots { poly } => roots_cmd(cli, poly),
        Command::Repro { golden, criterion } => repro_cmd(cli, golden.as_ref(), criterion),
    }?;
    Sink::new(cli.output.as_deref()).write(&content)?;
    Ok(ok)
}

fn check_k(k: usize, min: usize) -> Result<(), Failure> {
    if k < min {
        return Err(Failure::Invalid(format!("k must be at least {min}, got {k}")));
    }
    Ok(())
}

fn angle(cli: &Cli, x: f64) -> CirclePoint {
    CirclePoint::new(if cli.degrees { x.to_radians() } else { x })
}

fn parse_angles(cli: &Cli, list: &str) -> Result<Vec<CirclePoint>, Failure> {
    list.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map(|x| angle(cli, x))
                .map_err(|_| Failure::Invalid(format!("not a number: {s:?}")))
        })
        .collect()
}

fn parse_poly(arg: &str) -> Result<RakedTrigPoly, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{path}: {e}")))?,
        None => arg.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("bad polynomial JSON: {e}")))
}

#[derive(Clone, Serialize)]
struct SplitRow {
    k: usize,
    m_a: usize,
    m_b: usize,
    #[serde(rename = "L_star")]
    l_star: f64,
    extra_root: f64,
    bisection_width: f64,
}

#[derive(Serialize)]
struct PhiReport {
    k: usize,
    phi_k: f64,
    m_a: usize,
    m_b: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    splits: Option<Vec<SplitRow>>,
}

fn phi_cmd(cli: &Cli, k: usize, per_split: bool) -> Outcome {
    check_k(k, 2)?;
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    let rows: Vec<SplitRow> = critical_lengths(k, tol)?
        .into_iter()
        .map(|r| SplitRow {
            k,
            m_a: r.split.m_a,
            m_b: r.split.m_b,
            l_star: r.length,
            extra_root: r.extra_root.angle(),
            bisection_width: r.bisection_width,
        })
        .collect();
    let best = rows
        .iter()
        .min_by(|x, y| x.l_star.total_cmp(&y.l_star))
        .expect("k >= 2 has a split");
    let text = match cli.out {
        Format::Json => output::json(&PhiReport {
            k,
            phi_k: best.l_star,
            m_a: best.m_a,
            m_b: best.m_b,
            splits: per_split.then(|| rows.clone()),
        }),
        Format::Csv => {
            let mut t = Table::new(vec!["k", "m_a", "m_b", "L_star", "extra_root", "bisection_width"]);
            for r in rows.iter().filter(|r| per_split || std::ptr::eq(*r, best)) {
                t.push(vec![
                    r.k.to_string(),
                    r.m_a.to_string(),
                    r.m_b.to_string(),
                    num(r.l_star),
                    num(r.extra_root),
                    num(r.bisection_width),
                ]);
            }
            output::csv(&t)?
        }
        Format::Text => {
            let mut s = format!("{}\n", num(best.l_star));
            if per_split {
                for r in &rows {
                    s += &format!(
                        "split ({}, {}): L* = {}, extra root {}\n",
                        r.m_a,
                        r.m_b,
                        num(r.l_star),
                        num(r.extra_root)
                    );
                }
            }
            s
        }
    };
    Ok((text, true))
}

fn face_cmd(cli: &Cli, k: usize, points: &str) -> Outcome {
    check_k(k, 1)?;
    let pts = parse_angles(cli, points)?;
    let verdict = is_face(k, &pts)?;
    let status = match verdict.status {
        FaceStatus::Face => "FACE",
        FaceStatus::NotFace => "NOT_FACE",
        FaceStatus::Unknown => "UNKNOWN",
    };
    let margin = verdict.certificate.as_ref().map(|c| c.margin);
    let witness = verdict.witness.map(|w| w.angle());
    let text = match cli.out {
        Format::Json => output::json(&verdict),
        Format::Csv => {
            let mut t = Table::new(vec!["status", "margin", "witness"]);
            t.push(vec![
                status.into(),
                margin.map(num).unwrap_or_default(),
                witness.map(num).unwrap_or_default(),
            ]);
            output::csv(&t)?
        }
        Format::Text => {
            let mut s = format!("{status}\n");
            if let Some(c) = &verdict.certificate {
                s += &format!("certificate margin {}\nroots {}\n", num(c.margin), format_roots(&c.roots));
            }
            if let Some(w) = witness {
                s += &format!("witness {}\n", num(w));
            }
            s
        }
    };
    Ok((text, true))
}

fn format_roots(roots: &[CircleRoot]) -> String {
    roots
        .iter()
        .map(|r| format!("{} (x{})", num(r.point.angle()), r.multiplicity))
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Serialize)]
struct PolytopeReport {
    k: usize,
    dim: usize,
    vertices: usize,
    verified: u64,
    unknown: u64,
    not_face: u64,
    total: u64,
    bound_from_paper: Option<f64>,
}

#[allow(clippy::too_many_arguments)]
fn polytope_cmd(
    cli: &Cli,
    k: usize,
    dim: usize,
    m: Option<usize>,
    spread: Option<f64>,
    uniform: Option<usize>,
    angles: Option<&PathBuf>,
    cap: u128,
) -> Outcome {
    check_k(k, 1)?;
    let (config, bound) = match (m, uniform, angles) {
        (Some(m), None, None) => {
            let phi = if k >= 2 {
                symcurve::phi(k, DEFAULT_TOL)?.0
            } else {
                2.0 * PI
            };
            let spread = spread.unwrap_or_else(|| default_spread(phi));
            let config = clustered_config_with_phi(k, m, spread, phi)?;
            // The guaranteed count concerns (k-1)-faces.
            (config, (dim + 1 == k).then(|| clustered_face_bound(k, m)))
        }
        (None, Some(n), None) => (VertexConfig::uniform(k, n)?, None),
        (None, None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
            let list: Vec<f64> = serde_json::from_str(&text)
                .map_err(|e| Failure::Invalid(format!("{}: expected a JSON array of angles: {e}", path.display())))?;
            (VertexConfig::new(k, list.into_iter().map(|x| angle(cli, x)).collect())?, None)
        }
        _ => return Err(Failure::Invalid("give exactly one of --m, --uniform, --angles".into())),
    };
    let count = count_faces_capped(&config, dim, cap)?;
    let report = PolytopeReport {
        k,
        dim,
        vertices: config.angles.len(),
        verified: count.verified_count,
        unknown: count.unknown_count,
        not_face: count.not_face_count,
        total: count.total_subsets,
        bound_from_paper: bound,
    };
    let text = match cli.out {
        Format::Json => output::json(&report),
        Format::Csv => {
            let mut t = Table::new(vec!["dim", "verified", "unknown", "not_face", "total", "bound_from_paper"]);
            t.push(vec![
                dim.to_string(),
                report.verified.to_string(),
                report.unknown.to_string(),
                report.not_face.to_string(),
                report.total.to_string(),
                bound.map(|b| format!("{b:.0}")).unwrap_or_default(),
            ]);
            output::csv(&t)?
        }
        Format::Text => {
            let mut s = format!(
                "{} vertices, {}-faces: {} verified, {} unknown, {} not faces, {} subsets\n",
                report.vertices, dim, report.verified, report.unknown, report.not_face, report.total
            );
            if let Some(b) = bound {
                s += &format!("guaranteed count {b:.0}\n");
            }
            s
        }
    };
    Ok((text, true))
}

#[derive(Serialize)]
struct ConjectureReport {
    k: usize,
    alpha_k: f64,
    two_alpha_k: f64,
    phi_k: f64,
    #[serde(rename = "match")]
    matches: bool,
    residual: f64,
}

fn conjecture_cmd(cli: &Cli, k: usize) -> Outcome {
    check_k(k, 2)?;
    if k % 2 == 1 {
        return Err(Failure::Invalid(format!(
            "α_k is only defined for even k; for k = {k} use `phi --k {k}`"
        )));
    }
    let alpha = alpha_conjecture(k, 1e-14)?;
    let (phi, _) = symcurve::phi(k, DEFAULT_TOL)?;
    let residual = (2.0 * alpha - phi).abs();
    let report = ConjectureReport {
        k,
        alpha_k: alpha,
        two_alpha_k: 2.0 * alpha,
        phi_k: phi,
        matches: residual < cli.tol.unwrap_or(1e-8),
        residual,
    };
    let text = match cli.out {
        Format::Json => output::json(&report),
        Format::Csv => {
            let mut t = Table::new(vec!["k", "alpha_k", "two_alpha_k", "phi_k", "match", "residual"]);
            t.push(vec![
                k.to_string(),
                num(report.alpha_k),
                num(report.two_alpha_k),
                num(report.phi_k),
                report.matches.to_string(),
                num(residual),
            ]);
            output::csv(&t)?
        }
        Format::Text => format!(
            "2 alpha_{k} = {}\nphi_{k} = {}\nresidual {} ({})\n",
            num(report.two_alpha_k),
            num(phi),
            num(residual),
            if report.matches { "match" } else { "no match" }
        ),
    };
    Ok((text, true))
}

#[derive(Serialize)]
struct BetaRow {
    k: usize,
    beta_k: f64,
    sin2_beta_k: f64,
    bound: f64,
}

fn beta_cmd(cli: &Cli, kmax: usize) -> Outcome {
    check_k(kmax, 2)?;
    let tol = cli.tol.unwrap_or(1e-14);
    let rows = (2..=kmax)
        .map(|k| {
            let b = beta(k, tol)?;
            Ok(BetaRow {
                k,
                beta_k: b,
                sin2_beta_k: b.sin().powi(2),
                bound: (2 * k - 2) as f64 / (2 * k - 1) as f64,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let text = match cli.out {
        Format::Json => output::json(&rows),
        Format::Csv | Format::Text => {
            let mut t = Table::new(vec!["k", "beta_k", "sin2_beta_k", "bound"]);
            for r in &rows {
                t.push(vec![r.k.to_string(), num(r.beta_k), num(r.sin2_beta_k), num(r.bound)]);
            }
            output::csv(&t)?
        }
    };
    Ok((text, true))
}

fn poly_table(f: &RakedTrigPoly) -> Table {
    let mut t = Table::new(vec!["term", "value"]);
    t.push(vec!["c".into(), num(f.c())]);
    for (j, a) in f.a().iter().enumerate() {
        t.push(vec![format!("a{}", j + 1), num(*a)]);
    }
    for (j, b) in f.b().iter().enumerate() {
        t.push(vec![format!("b{}", j + 1), num(*b)]);
    }
    t
}

fn deform_cmd(cli: &Cli, poly: &str, lambda: f64) -> Outcome {
    let f = parse_poly(poly)?;
    let g = lambda_deform(&f, lambda)?;
    let text = match cli.out {
        Format::Json => output::json(&g),
        Format::Csv => output::csv(&poly_table(&g))?,
        Format::Text => {
            let roots = circle_roots(&g, cli.tol.unwrap_or(DEFAULT_CLUSTER_TOL))?;
            let mut s = output::csv(&poly_table(&g))?;
            s += &format!("roots on the circle: {}\n", format_roots(&roots));
            s
        }
    };
    Ok((text, true))
}

fn roots_cmd(cli: &Cli, poly: &str) -> Outcome {
    let f = parse_poly(poly)?;
    let roots = circle_roots(&f, cli.tol.unwrap_or(DEFAULT_CLUSTER_TOL))?;
    let text = match cli.out {
        Format::Json => output::json(&roots),
        Format::Csv | Format::Text => {
            let mut t = Table::new(vec!["angle", "mult"]);
            for r in &roots {
                t.push(vec![num(r.point.angle()), r.multiplicity.to_string()]);
            }
            output::csv(&t)?
        }
    };
    Ok((text, true))
}

fn repro_cmd(cli: &Cli, golden: Option<&PathBuf>, only: &[String]) -> Outcome {
    let golden = match golden {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
            serde_json::from_str::<Golden>(&text)
                .map_err(|e| Failure::Invalid(format!("{}: bad golden file: {e}", path.display())))?
        }
        None => Golden::default(),
    };
    for id in only {
        if !CRITERIA.contains(&id.as_str()) {
            return Err(Failure::Invalid(format!(
                "unknown criterion {id:?}; known: {}",
                CRITERIA.join(", ")
            )));
        }
    }
    let opts = Options {
        golden,
        loosen: cli.tol.unwrap_or(0.0),
        seed: cli.seed.unwrap_or(DEFAULT_SEED),
    };
    let reports: Vec<_> = CRITERIA
        .iter()
        .filter(|id| only.is_empty() || only.iter().any(|o| o == *id))
        .map(|id| run_criterion(id, &opts))
        .collect();
    let failed: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.id.as_str()).collect();
    for r in reports.iter().filter(|r| !r.pass) {
        eprintln!("criterion {} FAILED: {} ({})", r.id, r.name, r.detail);
    }
    let text = match cli.out {
        Format::Json => output::json(&reports),
        Format::Csv => {
            let mut t = Table::new(vec![
                "criterion",
                "name",
                "pass",
                "measured",
                "expected",
                "deviation",
                "tolerance",
                "detail",
            ]);
            for r in &reports {
                t.push(vec![
                    r.id.clone(),
                    r.name.clone(),
                    r.pass.to_string(),
                    num(r.measured),
                    num(r.expected),
                    num(r.deviation),
                    num(r.tolerance),
                    r.detail.clone(),
                ]);
            }
            output::csv(&t)?
        }
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                s += &format!(
                    "{:>3} {} {:<70} measured {} expected {} deviation {}\n",
                    r.id,
                    if r.pass { "PASS" } else { "FAIL" },
                    r.name,
                    num(r.measured),
                    num(r.expected),
                    num(r.deviation)
                );
            }
            s += &if failed.is_empty() {
                format!("all {} criteria pass\n", reports.len())
            } else {
                format!("failing: {}\n", failed.join(", "))
            };
            s
        }
    };
    Ok((text, failed.is_empty()))
}
