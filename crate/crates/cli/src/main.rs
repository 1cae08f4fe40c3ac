use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use slgeo::extremals::{exp, sample_trajectory, Covector, Trajectory};
use slgeo::geometry::{causal_future, causal_past, classify, hom_coords, Classification};
use slgeo::oracle::{random_interior_points, verify_point, OracleConfig, VerifyReport};
use slgeo::par::Exec;
use slgeo::synthesis::{distance_report, sphere_pi_curve, sphere_sample, synthesize};
use slgeo::{Error, Point, Problem};

const SCHEMA: &str = "slgeo/1";

#[derive(Parser)]
#[command(name = "slgeo", version, about = "Flat sub-Lorentzian problems on the Martinet distribution")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(clap::Args)]
struct Target {
    #[arg(long, value_parser = parse_problem)]
    problem: Problem,
    #[arg(long, allow_negative_numbers = true)]
    x: f64,
    #[arg(long, allow_negative_numbers = true)]
    y: f64,
    #[arg(long, allow_negative_numbers = true)]
    z: f64,
}

impl Target {
    fn point(&self) -> Point {
        Point::new(self.x, self.y, self.z)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Endpoint (or sampled trajectory) of a normal extremal.
    Exp {
        #[arg(long, value_parser = parse_problem)]
        problem: Problem,
        #[arg(long, allow_negative_numbers = true)]
        phi0: f64,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        /// Sample the trajectory at this many equally spaced times.
        #[arg(long)]
        samples: Option<usize>,
        /// Output format; defaults to CSV with --samples and JSON otherwise.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Distance from the origin.
    Dist(Target),
    /// Optimal trajectories from the origin.
    Synth(Target),
    /// Sample of the sphere of radius R.
    Sphere {
        #[arg(long, value_parser = parse_problem)]
        problem: Problem,
        #[arg(long = "R", alias = "r", allow_negative_numbers = true)]
        radius: f64,
        #[arg(long, default_value_t = 200)]
        n: usize,
        /// Emit the curve S(R) ∩ {x = 0} as (k, y, z) rows instead (problem 1).
        #[arg(long)]
        pi_curve: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Attainable-set classification, optionally relative to a base point.
    Reach {
        #[command(flatten)]
        target: Target,
        /// Base point `x0,y0,z0` on the plane x = 0.
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        base: Option<Point>,
    },
    /// Checks the analytic distance against the numerical oracle.
    Verify {
        #[arg(long, value_parser = parse_problem)]
        problem: Problem,
        /// JSON array of [x, y, z] triples, or CSV with one x,y,z per line.
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        points: Option<PathBuf>,
        /// Number of random interior points.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.01)]
        rel_tol: f64,
        #[arg(long, default_value_t = 1e-6)]
        abs_tol: f64,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

fn parse_problem(s: &str) -> Result<Problem, String> {
    let n: u8 = s.parse().map_err(|_| format!("problem must be 1 or 2, got {s:?}"))?;
    Problem::try_from(n).map_err(|e| e.to_string())
}

fn parse_triple(s: &str) -> Result<Point, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| format!("expected x,y,z: {e}"))?;
    match v[..] {
        [x, y, z] => Ok(Point::new(x, y, z)),
        _ => Err(format!("expected three comma-separated numbers, got {}", v.len())),
    }
}

/// What a command produced.
enum Output {
    Json(Value),
    Csv(String),
    Text(String),
}

struct Failure {
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::InvalidModulus(_) => "invalid_modulus",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::BeyondDomain { .. } => "beyond_domain",
            Error::Chart => "chart",
            Error::UnsupportedBase(_) => "unsupported_base",
            Error::NotInterior(_) => "not_interior",
            Error::OutsideAttainable => "outside_attainable",
            Error::Infeasible(_) => "infeasible",
            Error::Numerical(_) => "numerical",
        };
        Failure { kind, message: e.to_string() }
    }
}

fn input_error(message: String) -> Failure {
    Failure { kind: "input", message }
}

fn record(command: &str, payload: impl Serialize) -> Value {
    json!({ "schema_version": SCHEMA, "command": command, "payload": payload })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Exp { .. } => "exp",
        Command::Dist(_) => "dist",
        Command::Synth(_) => "synth",
        Command::Sphere { .. } => "sphere",
        Command::Reach { .. } => "reach",
        Command::Verify { .. } => "verify",
    }
}

fn tag(c: &Classification) -> String {
    match c {
        Classification::Interior(s) => format!("{s:?}"),
        other => other.to_string(),
    }
}

fn run(cmd: &Command) -> Result<(Output, bool), Failure> {
    let name = command_name(cmd);
    let out = match cmd {
        Command::Exp { problem, phi0, c, t, samples, format } => {
            let lam = Covector::new(*phi0, *c, *problem);
            match samples {
                None => {
                    let q = exp(lam, *t)?;
                    match format.unwrap_or(Format::Json) {
                        Format::Json => Output::Json(record(name, json!({ "covector": lam, "t": t, "point": q }))),
                        Format::Csv => Output::Csv(format!("t,x,y,z\n{t},{},{},{}\n", q.x, q.y, q.z)),
                    }
                }
                Some(n) => {
                    let pts = sample_trajectory(Trajectory::Normal(lam), *t, *n)?;
                    match format.unwrap_or(Format::Csv) {
                        Format::Csv => {
                            let mut s = String::from("t,x,y,z\n");
                            for (ti, q) in &pts {
                                writeln!(s, "{ti},{},{},{}", q.x, q.y, q.z).unwrap();
                            }
                            Output::Csv(s)
                        }
                        Format::Json => {
                            let rows: Vec<Value> = pts.iter().map(|(ti, q)| json!({ "t": ti, "point": q })).collect();
                            Output::Json(record(name, json!({ "covector": lam, "samples": rows })))
                        }
                    }
                }
            }
        }
        Command::Dist(target) => {
            let r = distance_report(target.point(), target.problem)?;
            Output::Json(record(
                name,
                json!({
                    "point": target.point(),
                    "problem": target.problem,
                    "distance": r.value,
                    "tag": tag(&r.classification),
                    "classification": r.classification,
                    "boundary_value": r.boundary_value,
                }),
            ))
        }
        Command::Synth(target) => {
            let q = target.point();
            let payload = match synthesize(q, target.problem) {
                Ok(plan) => {
                    let mut plans = vec![&plan];
                    plans.extend(plan.alternate.as_deref());
                    let plans: Vec<Value> = plans
                        .iter()
                        .map(|p| json!({ "arcs": p.arcs, "switching_times": p.switching_times(), "length": p.total_length }))
                        .collect();
                    json!({
                        "point": q,
                        "problem": target.problem,
                        "tag": tag(&classify(q, target.problem, slgeo::geometry::DEFAULT_EPS_B)),
                        "length": plan.total_length,
                        "multiplicity": plan.multiplicity,
                        "plans": plans,
                    })
                }
                Err(Error::OutsideAttainable) => json!({
                    "point": q,
                    "problem": target.problem,
                    "tag": "Outside",
                    "length": 0.0,
                    "multiplicity": 0,
                    "plans": [],
                }),
                Err(e) => return Err(e.into()),
            };
            Output::Json(record(name, payload))
        }
        Command::Sphere { problem, radius, n, pi_curve, format } => {
            if !(*radius > 0.0 && radius.is_finite()) {
                return Err(Error::InvalidArgument(format!("R must be positive, got {radius}")).into());
            }
            if *pi_curve {
                if *problem != Problem::One {
                    return Err(Error::InvalidArgument("--pi-curve applies to problem 1".into()).into());
                }
                let rows = (0..*n)
                    .map(|i| {
                        let k = i as f64 / *n as f64;
                        sphere_pi_curve(k).map(|(y, z)| (k, radius * y, radius.powi(3) * z))
                    })
                    .collect::<slgeo::Result<Vec<_>>>()?;
                match format {
                    Format::Csv => {
                        let mut s = String::from("k,y,z\n");
                        for (k, y, z) in &rows {
                            writeln!(s, "{k},{y},{z}").unwrap();
                        }
                        Output::Csv(s)
                    }
                    Format::Json => {
                        let rows: Vec<Value> = rows.iter().map(|(k, y, z)| json!({ "k": k, "y": y, "z": z })).collect();
                        Output::Json(record(name, json!({ "problem": problem, "R": radius, "pi_curve": rows })))
                    }
                }
            } else {
                let pts = sphere_sample(*radius, *n, *problem)?;
                match format {
                    Format::Csv => {
                        let mut s = String::from("x,y,z,stratum\n");
                        for p in &pts {
                            writeln!(s, "{},{},{},{}", p.point.x, p.point.y, p.point.z, p.stratum.tag()).unwrap();
                        }
                        Output::Csv(s)
                    }
                    Format::Json => {
                        let rows: Vec<Value> = pts
                            .iter()
                            .map(|p| json!({ "x": p.point.x, "y": p.point.y, "z": p.point.z, "stratum": p.stratum.tag() }))
                            .collect();
                        Output::Json(record(name, json!({ "problem": problem, "R": radius, "points": rows })))
                    }
                }
            }
        }
        Command::Reach { target, base } => {
            let q = target.point();
            let problem = target.problem;
            let mut payload = match base {
                None => {
                    let c = classify(q, problem, slgeo::geometry::DEFAULT_EPS_B);
                    let h = hom_coords(q, Point::ORIGIN).ok();
                    json!({
                        "point": q,
                        "problem": problem,
                        "region": region(&c),
                        "tag": tag(&c),
                        "classification": c,
                        "xi": h.map(|h| h.xi),
                        "eta": h.map(|h| h.eta),
                    })
                }
                Some(b) => {
                    let future = causal_future(*b, q, problem)?;
                    let past = causal_past(*b, q, problem)?;
                    let rel = Point::new(q.x - b.x, q.y - b.y, q.z - b.z);
                    let c = classify(rel, problem, slgeo::geometry::DEFAULT_EPS_B);
                    let h = hom_coords(q, *b).ok();
                    json!({
                        "point": q,
                        "base": b,
                        "problem": problem,
                        "region": region(&c),
                        "tag": tag(&c),
                        "classification": c,
                        "causal_future": future,
                        "causal_past": past,
                        "xi": h.map(|h| h.xi),
                        "eta": h.map(|h| h.eta),
                    })
                }
            };
            if problem == Problem::Two {
                // the homogeneous chart belongs to problem 1
                let obj = payload.as_object_mut().unwrap();
                obj.remove("xi");
                obj.remove("eta");
            }
            Output::Json(record(name, payload))
        }
        Command::Verify { problem, points, random, seed, rel_tol, abs_tol, format } => {
            let pts = match (points, random) {
                (Some(path), _) => read_points(path)?,
                (None, Some(n)) => random_interior_points(*problem, *n, *seed),
                (None, None) => unreachable!("clap requires one source"),
            };
            let cfg = OracleConfig {
                seed: *seed,
                rel_tol: *rel_tol,
                abs_tol: *abs_tol,
                ..Default::default()
            };
            let reports = Exec::Parallel.map(&pts, |q| verify_point(*q, *problem, &cfg));
            let ok = reports.iter().all(|r| r.pass);
            let out = match format {
                Some(Format::Json) => Output::Json(record(name, json!({ "pass": ok, "reports": reports }))),
                Some(Format::Csv) => Output::Csv(verify_csv(&reports)),
                None => Output::Text(verify_table(&reports)),
            };
            return Ok((out, ok));
        }
    };
    Ok((out, true))
}

fn region(c: &Classification) -> &'static str {
    match c {
        Classification::Outside => "Outside",
        Classification::Interior(_) => "Interior",
        Classification::Boundary(_) => "Boundary",
    }
}

fn read_points(path: &PathBuf) -> Result<Vec<Point>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    if text.trim_start().starts_with('[') {
        let v: Vec<[f64; 3]> =
            serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
        return Ok(v.into_iter().map(Point::from).collect());
    }
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || (i == 0 && line.starts_with('x')) {
            continue;
        }
        let q = parse_triple(line).map_err(|e| input_error(format!("{}:{}: {e}", path.display(), i + 1)))?;
        out.push(q);
    }
    if out.is_empty() {
        return Err(input_error(format!("{}: no points", path.display())));
    }
    Ok(out)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".into(), |v| format!("{v:.9}"))
}

fn verify_table(reports: &[VerifyReport]) -> String {
    let mut s = String::new();
    for (i, r) in reports.iter().enumerate() {
        writeln!(
            s,
            "{} {i:>4}  q = ({:.6}, {:.6}, {:.6})  {}  analytic {:.9}  oracle {}  gap {}{}",
            if r.pass { "PASS" } else { "FAIL" },
            r.point.x,
            r.point.y,
            r.point.z,
            tag(&r.classification),
            r.analytic,
            fmt_opt(r.oracle),
            r.gap.map_or_else(|| "-".into(), |g| format!("{g:.2e}")),
            if r.note.is_empty() { String::new() } else { format!("  ({})", r.note) },
        )
        .unwrap();
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    writeln!(s, "{passed}/{} passed", reports.len()).unwrap();
    s
}

fn verify_csv(reports: &[VerifyReport]) -> String {
    let mut s = String::from("x,y,z,tag,analytic,oracle,gap,pass\n");
    for r in reports {
        let opt = |v: Option<f64>| v.map_or_else(String::new, |v| v.to_string());
        writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            r.point.x,
            r.point.y,
            r.point.z,
            tag(&r.classification),
            r.analytic,
            opt(r.oracle),
            opt(r.gap),
            r.pass
        )
        .unwrap();
    }
    s
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("SLGEO_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| input_error(format!("SLGEO_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| input_error(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let result = configure_threads().and_then(|_| run(&cli.command));
    match result {
        Ok((out, ok)) => {
            let text = match out {
                Output::Json(v) => serde_json::to_string_pretty(&v).unwrap() + "\n",
                Output::Csv(s) | Output::Text(s) => s,
            };
            // a closed pipe (`| head`) is not an error
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            let v = json!({
                "schema_version": SCHEMA,
                "command": name,
                "error": { "kind": f.kind, "message": f.message },
            });
            eprintln!("{v}");
            ExitCode::from(2)
        }
    }
}
