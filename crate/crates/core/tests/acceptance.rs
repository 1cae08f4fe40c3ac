//! Acceptance run: one line per criterion, nonzero exit on any failure.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use slgeo::elliptic::{complete_e, complete_k, EllipticModulus};
use slgeo::extremals::{
    abnormal, cut_time, domain_bound, exp, exp1, integrate_ode, AbnormalKind, AbnormalSpec, Covector,
};
use slgeo::geometry::{classify, classify1, dilate, phi1, z_lower, z_upper, DEFAULT_EPS_B};
use slgeo::oracle::{brute_distance, random_interior_points, verify_point, OracleConfig, Structure};
use slgeo::par::Exec;
use slgeo::synthesis::{distance, eta1, invert_exp, jacobian_diag, sphere_pi_curve, DEFAULT_INVERSION_TOL};
use slgeo::{Point, Problem};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn scale(q: &Point) -> f64 {
    1.0f64.max(q.x.abs()).max(q.y.abs()).max(q.z.abs())
}

fn elliptic_identities() -> Outcome {
    let mut ks: Vec<f64> = (0..10).map(|i| i as f64 / 10.0).collect();
    ks.push(0.99);
    let mut worst: f64 = 0.0;
    for &k in &ks {
        let md = EllipticModulus::new(k).unwrap();
        for i in 0..=1200 {
            let tau = -6.0 + 0.01 * i as f64;
            let j = md.jacobi(tau);
            worst = worst
                .max((j.sn * j.sn + j.cn * j.cn - 1.0).abs())
                .max((j.dn * j.dn + k * k * j.sn * j.sn - 1.0).abs());
        }
    }
    let exact = complete_k(0.0).unwrap() == PI / 2.0 && complete_e(0.0).unwrap() == PI / 2.0;
    outcome(worst < 1e-12 && exact, format!("max identity error {worst:.2e}, K(0) = E(0) = π/2: {exact}"))
}

fn ode_steps(lam: Covector, t: f64) -> usize {
    // resolve the fastest time scale of the flow
    let rate = 1.0 + lam.c.abs().sqrt() * lam.phi0.cosh() + lam.phi0.cosh();
    ((t * rate * 800.0).ceil() as usize).clamp(400, 400_000)
}

fn closed_form_vs_ode() -> Outcome {
    let mut cases = Vec::new();
    for problem in [Problem::One, Problem::Two] {
        for phi0 in -3..=3 {
            for c in -4..=4 {
                let lam = Covector::new(phi0 as f64, c as f64, problem);
                let tmax = (0.95 * domain_bound(lam)).min(5.0);
                for f in 1..=10 {
                    cases.push((lam, tmax * f as f64 / 10.0));
                }
            }
        }
    }
    let res = Exec::Parallel.map(&cases, |&(lam, t)| {
        let r = integrate_ode(lam, t, ode_steps(lam, t)).unwrap();
        let q = exp(lam, t).unwrap();
        (q.max_abs_diff(&r.state.point()), r.energy_drift, r.h_drift)
    });
    let per_problem = cases.len() / 2;
    let dq = res.iter().map(|r| r.0).fold(0.0, f64::max);
    let de = res.iter().map(|r| r.1).fold(0.0, f64::max);
    let dh = res.iter().map(|r| r.2).fold(0.0, f64::max);
    outcome(
        dq < 1e-8 && de < 1e-9,
        format!("{per_problem} samples/problem, max |Δq| {dq:.2e}, energy drift {de:.2e}, H drift {dh:.2e}"),
    )
}

fn confinement() -> Outcome {
    let mut bad = 0;
    let mut n = 0;
    for problem in [Problem::One, Problem::Two] {
        for i in 0..=12 {
            let phi0 = -3.0 + 0.5 * i as f64;
            // φ₀ = 0 extremals of problem 1 run along the boundary ray x = z = 0
            if problem == Problem::One && phi0 == 0.0 {
                continue;
            }
            for j in 0..=16 {
                let c = -4.0 + 0.5 * j as f64;
                let lam = Covector::new(phi0, c, problem);
                let tmax = cut_time(lam).min(5.0);
                for f in 1..=19 {
                    let t = tmax * f as f64 / 20.0;
                    n += 1;
                    if !classify(exp(lam, t).unwrap(), problem, DEFAULT_EPS_B).is_interior() {
                        bad += 1;
                    }
                }
            }
        }
    }
    let mut worst: f64 = 0.0;
    for i in 0..=20 {
        let t1 = 1.7;
        let tau1 = t1 * i as f64 / 20.0;
        for plus in [true, false] {
            let first = 0.5 * (t1 + tau1);
            let q = abnormal(&AbnormalSpec::new(Problem::One, AbnormalKind::BangBang { plus }, first, t1), t1).unwrap();
            let eta = (24.0 * q.z - 3.0 * q.x * q.x * q.y - q.y.powi(3)) / (24.0 * q.y.powi(3));
            worst = worst.max((eta - phi1((q.x / q.y).abs())).abs() * q.y.powi(3));
            let q = abnormal(&AbnormalSpec::new(Problem::One, AbnormalKind::SingularBang { plus }, tau1, t1), t1).unwrap();
            worst = worst.max((q.z - q.x.abs().powi(3) / 6.0).abs());
            let q = abnormal(&AbnormalSpec::new(Problem::Two, AbnormalKind::BangBang { plus }, tau1, t1), t1).unwrap();
            let g = if plus { z_lower(q.x, q.y) } else { z_upper(q.x, q.y) };
            worst = worst.max((q.z - g).abs());
        }
    }
    outcome(
        bad == 0 && worst < 1e-12,
        format!("{bad}/{n} normal samples not interior, abnormal surface error {worst:.2e}"),
    )
}

fn maxwell() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut wx, mut wd): (f64, f64) = (0.0, 0.0);
    for _ in 0..50 {
        let lam = Covector::new(rng.gen_range(0.01..3.0), rng.gen_range(0.01..4.0), Problem::One);
        let t = cut_time(lam);
        let a = exp1(lam, t).unwrap();
        let b = exp1(lam.reflected(), t).unwrap();
        wx = wx.max(a.x.abs());
        wd = wd.max(a.max_abs_diff(&b));
    }
    outcome(wx < 1e-10 && wd < 1e-10, format!("50 covectors, max |x| {wx:.2e}, max |q − q̃| {wd:.2e}"))
}

fn round_trip() -> Outcome {
    let mut cases = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for problem in [Problem::One, Problem::Two] {
        let mut k = 0;
        while k < 200 {
            let phi0: f64 = rng.gen_range(-3.0..3.0);
            let c: f64 = rng.gen_range(-4.0..4.0);
            if problem == Problem::One && phi0.abs() < 0.05 {
                continue;
            }
            let lam = Covector::new(phi0, c, problem);
            let t = rng.gen_range(0.05..0.95) * cut_time(lam).min(3.0);
            cases.push((lam, t, false));
            k += 1;
        }
    }
    // Maxwell points fill the plane stratum
    for _ in 0..50 {
        let lam = Covector::new(rng.gen_range(0.05..3.0), rng.gen_range(0.1..4.0), Problem::One);
        cases.push((lam, cut_time(lam), true));
    }
    let res = Exec::Parallel.map(&cases, |&(lam, t, plane)| {
        let q = exp(lam, t).unwrap();
        match invert_exp(q, lam.problem, DEFAULT_INVERSION_TOL) {
            Ok(inv) => {
                let want = if plane { 2 } else { 1 };
                let s = inv.solutions[0];
                let perr = (s.covector.phi0 - lam.phi0.abs() * if plane { 1.0 } else { lam.phi0.signum() })
                    .abs()
                    .max((s.covector.c - lam.c).abs() / lam.c.abs().max(1.0))
                    .max((s.t - t).abs() / t.max(1.0));
                (inv.residual / scale(&q), perr, inv.solutions.len() == want, true)
            }
            Err(_) => (f64::INFINITY, f64::INFINITY, false, false),
        }
    });
    let failed = res.iter().filter(|r| !r.3).count();
    let res_max = res.iter().map(|r| r.0).fold(0.0, f64::max);
    let perr = res.iter().map(|r| r.1).fold(0.0, f64::max);
    let mult = res.iter().all(|r| r.2);
    outcome(
        failed == 0 && res_max < 1e-8 && perr < 1e-6 && mult,
        format!(
            "200/problem + 50 plane points, failures {failed}, max residual {res_max:.2e}, max parameter error {perr:.2e}, multiplicity ok: {mult}"
        ),
    )
}

fn homogeneity() -> Outcome {
    let mut pts: Vec<(Point, Problem)> = Vec::new();
    for problem in [Problem::One, Problem::Two] {
        pts.extend(random_interior_points(problem, 30, 6).into_iter().map(|q| (q, problem)));
    }
    pts.push((Point::new(0.0, 1.3, 0.0), Problem::One));
    pts.push((Point::new(0.3, 1.0, 0.0045), Problem::One));
    pts.push((Point::new(0.0, 1.0, 1.0 / 48.0), Problem::One));
    let res = Exec::Parallel.map(&pts, |&(q, problem)| {
        let d = distance(q, problem).unwrap();
        [0.1, 2.0, 100.0]
            .iter()
            .map(|&a| {
                let da = distance(dilate(q, a).unwrap(), problem).unwrap();
                (da - a * d).abs() / (a * d)
            })
            .fold(0.0, f64::max)
    });
    let worst = res.iter().cloned().fold(0.0, f64::max);
    outcome(worst < 1e-6, format!("{} points × α ∈ {{0.1, 2, 100}}, max relative error {worst:.2e}", pts.len()))
}

fn oracle_agreement() -> Outcome {
    let cfg = OracleConfig::default();
    let mut pts: Vec<(Point, Problem)> = Vec::new();
    for problem in [Problem::One, Problem::Two] {
        pts.extend(random_interior_points(problem, 20, 1).into_iter().map(|q| (q, problem)));
    }
    let interior = pts.len();
    let boundary = [
        (Point::new(0.0, 1.0, 0.0), Problem::One),
        (Point::new(0.0, 1.4, 1.4f64.powi(3) / 24.0), Problem::One),
        (Point::new(0.3, 1.0, 0.027 / 6.0), Problem::One),
        (Point::new(-0.5, 1.2, 0.125 / 6.0), Problem::One),
        (bang_bang_endpoint(true, 0.9, 1.3), Problem::One),
        (bang_bang_endpoint(false, 0.7, 1.0), Problem::One),
        (Point::new(1.0, 0.4, z_upper(1.0, 0.4)), Problem::Two),
        (Point::new(1.5, -0.2, z_lower(1.5, -0.2)), Problem::Two),
        (Point::new(0.8, 0.8, 0.8f64.powi(3) / 6.0), Problem::Two),
    ];
    pts.extend(boundary);
    let reports = Exec::Parallel.map(&pts, |&(q, problem)| verify_point(q, problem, &cfg));
    let mut worst_rel: f64 = 0.0;
    let mut worst_boundary: f64 = 0.0;
    let mut failures = 0;
    for (i, r) in reports.iter().enumerate() {
        let gap = r.gap.unwrap_or(f64::INFINITY).abs();
        if i < interior {
            worst_rel = worst_rel.max(gap / r.analytic);
            if !r.pass || gap > 0.01 * r.analytic {
                failures += 1;
            }
        } else {
            worst_boundary = worst_boundary.max(gap);
            if !r.pass || gap > 1e-6 {
                failures += 1;
            }
        }
    }
    // the interior witnesses should be normal-type
    let structure = reports[..interior].iter().all(|r| r.structure_match);
    outcome(
        failures == 0 && structure,
        format!(
            "{interior} interior: max relative gap {worst_rel:.2e}; {} boundary: max |gap| {worst_boundary:.2e}; structure match {structure}",
            pts.len() - interior
        ),
    )
}

fn bang_bang_endpoint(plus: bool, first: f64, t1: f64) -> Point {
    abnormal(&AbnormalSpec::new(Problem::One, AbnormalKind::BangBang { plus }, first, t1), t1).unwrap()
}

fn sphere_plane_curve() -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 1..=19 {
        let k = 0.05 * i as f64;
        let md = EllipticModulus::new(k).unwrap();
        // c = 1 reaches τ = 2K at t = 2k'K; dilate that endpoint to t = 1
        let t = 2.0 * md.kc() * md.complete_k();
        let q = dilate(exp1(Covector::new(2.0 * k.atanh(), 1.0, Problem::One), t).unwrap(), 1.0 / t).unwrap();
        let (y, z) = sphere_pi_curve(k).unwrap();
        worst = worst.max(q.x.abs()).max((q.y - y).abs()).max((q.z - z).abs());
    }
    let start = sphere_pi_curve(0.0).unwrap();
    outcome(
        worst < 1e-9 && start == (1.0, 0.0),
        format!("k = 0.05…0.95, max deviation {worst:.2e}; k = 0 → {start:?}"),
    )
}

fn diagnostics() -> Outcome {
    let j0_max = (1..=1000)
        .map(|i| 0.01 + (PI - 0.01) * i as f64 / 1000.0)
        .map(|t| jacobian_diag(t, 0.5).unwrap().0)
        .fold(f64::NEG_INFINITY, f64::max);
    let g_max = (0..=998)
        .map(|i| 1e-3 + (1.0 - 2e-3) * i as f64 / 998.0)
        .map(|k| jacobian_diag(1.0, k).unwrap().1)
        .fold(f64::NEG_INFINITY, f64::max);
    let etas: Vec<f64> = (1..=99).map(|i| eta1(i as f64 / 100.0).unwrap()).collect();
    let increasing = etas.windows(2).all(|w| w[1] > w[0]);
    let lo = eta1(1e-6).unwrap() + 1.0 / 24.0;
    let hi = eta1(1.0 - 1e-12).unwrap();
    let in_range = etas.iter().all(|&e| e > -1.0 / 24.0 && e < 0.0);
    outcome(
        j0_max < 0.0 && g_max < 0.0 && increasing && in_range && lo.abs() < 1e-9 && hi.abs() < 1e-6,
        format!(
            "max J₀ {j0_max:.2e}, max g {g_max:.2e}, η₁ increasing {increasing}, η₁(0⁺) + 1/24 = {lo:.1e}, η₁(1⁻) = {hi:.1e}"
        ),
    )
}

fn discontinuity() -> Outcome {
    let q = Point::new(0.3, 1.0, 0.3f64.powi(3) / 6.0);
    let d = distance(q, Problem::One).unwrap();
    let out = Point::new(q.x, q.y, q.z - 1e-6);
    let d_out = distance(out, Problem::One).unwrap();
    let outside = classify1(out, DEFAULT_EPS_B).is_outside();
    let cfg = OracleConfig {
        structure: Structure::BangSingularSearch,
        ..Default::default()
    };
    let oracle = brute_distance(q, Problem::One, &cfg).map(|r| r.value).unwrap_or(f64::NAN);
    outcome(
        (d - 0.7).abs() < 1e-12 && d_out == 0.0 && outside && (oracle - 0.7).abs() < 1e-6,
        format!("d(q) = {d}, d(q − 1e-6·e_z) = {d_out} (outside: {outside}), oracle {oracle:.9}"),
    )
}

fn main() -> ExitCode {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check, Option<Duration>); 10] = [
        ("elliptic identities", elliptic_identities, Some(Duration::from_secs(1))),
        ("closed form vs ODE", closed_form_vs_ode, Some(Duration::from_secs(30))),
        ("attainable-set confinement", confinement, None),
        ("Maxwell symmetry", maxwell, None),
        ("inversion round trip", round_trip, Some(Duration::from_secs(60))),
        ("distance homogeneity", homogeneity, None),
        ("oracle agreement", oracle_agreement, Some(Duration::from_secs(300))),
        ("sphere-plane curve", sphere_plane_curve, None),
        ("diagnostics", diagnostics, None),
        ("discontinuity witness", discontinuity, None),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = check();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed <= l);
        let pass = out.pass && in_time;
        if !pass {
            failed += 1;
        }
        let budget = limit.map_or(String::new(), |l| format!(" / limit {:.0?}", l));
        println!(
            "{} [{:>2}] {name}: {} ({:.2?}{budget})",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            out.detail,
            elapsed
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
