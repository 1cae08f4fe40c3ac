//! Inversion of the exponential map, distance, optimal plans and spheres.
//!
//! Dilations reduce inversion to two unknowns. For problem 1 with `x > 0`
//! the unknowns are `a = tanh(φ₀/2) ∈ (0, 1)` and a signed fraction
//! `w ∈ (−1, 1)` of the largest admissible `c` at `t = 1`:
//!
//! ```text
//! w > 0:  c = w · (2k'K(k))²,  k = a            (t = 1 before the Maxwell time)
//! w < 0:  c = w · (kK(k))²,    k = √(1 − a²)    (t = 1 before the blow-up)
//! ```
//!
//! so that the box `(0, 1) × (−1, 1)` maps onto `M₁ ∪ M₃ ∪ M₅`. Problem 2
//! uses `u = tanh φ₀` and `w` as the fraction of `(K/æ)²`. Newton runs on
//! the homogeneous coordinates and the scale is recovered afterwards.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::elliptic::EllipticModulus;
use crate::error::{Error, Result};
use crate::extremals::{exp, exp1, exp2, ControlArc, Covector};
use crate::geometry::{
    classify, dilate_unchecked, hom, Classification, Point, Problem, Stratum, Surface, DEFAULT_EPS_B,
};

const TABLE_N: usize = 32;
const MAX_NEWTON: usize = 50;
const FD_STEP: f64 = 1e-6;
/// Default acceptance threshold for the endpoint residual of an inversion.
pub const DEFAULT_INVERSION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InverseSolution {
    pub covector: Covector,
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InverseResult {
    pub solutions: Vec<InverseSolution>,
    /// Largest `max |exp(λ, t) − q|` over the solutions.
    pub residual: f64,
    pub stratum: Stratum,
}

/// Normalized image of `(p₀, w)` at `t = 1`: two target coordinates and
/// the scale coordinate (`y` for problem 1, `x` for problem 2).
fn forward(problem: Problem, p: [f64; 2]) -> Option<([f64; 2], f64, Covector)> {
    let lam = unit_time_covector(problem, p)?;
    let q = exp(lam, 1.0).ok()?;
    match problem {
        Problem::One => {
            let h = hom(q);
            Some(([h.xi, 24.0 * h.eta], q.y, lam))
        }
        Problem::Two => Some(([q.y / q.x, 24.0 * q.z / (q.x * q.x * q.x)], q.x, lam)),
    }
}

pub(crate) fn unit_time_covector(problem: Problem, [a, w]: [f64; 2]) -> Option<Covector> {
    if !(a.abs() < 1.0 && w.abs() < 1.0) {
        return None;
    }
    match problem {
        Problem::One => {
            if a <= 0.0 {
                return None;
            }
            let ac = ((1.0 - a) * (1.0 + a)).sqrt();
            let c = if w > 0.0 {
                let kk = EllipticModulus::from_pair(a, ac).complete_k();
                w * (2.0 * ac * kk).powi(2)
            } else if w < 0.0 {
                let kk = EllipticModulus::from_pair(ac, a).complete_k();
                w * (ac * kk).powi(2)
            } else {
                0.0
            };
            Some(Covector::new(2.0 * a.atanh(), c, Problem::One))
        }
        Problem::Two => {
            let phi0 = a.atanh();
            let c = if w == 0.0 {
                0.0
            } else {
                let lam = Covector::new(phi0, w.signum(), Problem::Two);
                let p = crate::extremals::normal_params(lam);
                let kk = p.modulus().complete_k();
                w.signum() * w.abs() * (kk / p.ae).powi(2)
            };
            Some(Covector::new(phi0, c, Problem::Two))
        }
    }
}

fn bounds(problem: Problem) -> ([f64; 2], [f64; 2]) {
    match problem {
        Problem::One => ([0.0, -1.0], [1.0, 1.0]),
        Problem::Two => ([-1.0, -1.0], [1.0, 1.0]),
    }
}

struct SeedTable {
    entries: Vec<([f64; 2], [f64; 2])>,
}

fn seed_table(problem: Problem) -> &'static SeedTable {
    static T1: OnceLock<SeedTable> = OnceLock::new();
    static T2: OnceLock<SeedTable> = OnceLock::new();
    let cell = match problem {
        Problem::One => &T1,
        Problem::Two => &T2,
    };
    cell.get_or_init(|| {
        let (lo, hi) = bounds(problem);
        let mut entries = Vec::with_capacity(TABLE_N * TABLE_N);
        for i in 0..TABLE_N {
            for j in 0..TABLE_N {
                let p = [
                    lo[0] + (hi[0] - lo[0]) * (i as f64 + 0.5) / TABLE_N as f64,
                    lo[1] + (hi[1] - lo[1]) * (j as f64 + 0.5) / TABLE_N as f64,
                ];
                if let Some((img, _, _)) = forward(problem, p) {
                    entries.push((p, img));
                }
            }
        }
        SeedTable { entries }
    })
}

fn norm2(v: [f64; 2]) -> f64 {
    (v[0] * v[0] + v[1] * v[1]).sqrt()
}

fn inside(p: [f64; 2], lo: [f64; 2], hi: [f64; 2]) -> bool {
    (0..2).all(|i| p[i] > lo[i] && p[i] < hi[i])
}

/// Damped Newton for `forward(p) = target` inside the open box.
fn newton(problem: Problem, target: [f64; 2], seed: [f64; 2]) -> Option<[f64; 2]> {
    let (lo, hi) = bounds(problem);
    let res = |p: [f64; 2]| forward(problem, p).map(|(img, _, _)| [img[0] - target[0], img[1] - target[1]]);
    let mut p = seed;
    let mut r = res(p)?;
    for _ in 0..MAX_NEWTON {
        let rn = norm2(r);
        if rn < 1e-14 {
            return Some(p);
        }
        let mut jac = [[0.0; 2]; 2];
        for col in 0..2 {
            let h = FD_STEP * (1.0f64).max(p[col].abs()) * 0.5;
            let h = h.min(0.5 * (p[col] - lo[col])).min(0.5 * (hi[col] - p[col]));
            let (mut pp, mut pm) = (p, p);
            pp[col] += h;
            pm[col] -= h;
            let (fp, fm) = (res(pp)?, res(pm)?);
            for row in 0..2 {
                jac[row][col] = (fp[row] - fm[row]) / (2.0 * h);
            }
        }
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let step = [
            -(jac[1][1] * r[0] - jac[0][1] * r[1]) / det,
            -(-jac[1][0] * r[0] + jac[0][0] * r[1]) / det,
        ];
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let cand = [p[0] + lambda * step[0], p[1] + lambda * step[1]];
            if inside(cand, lo, hi) {
                if let Some(rc) = res(cand) {
                    if norm2(rc) < rn {
                        p = cand;
                        r = rc;
                        accepted = true;
                        break;
                    }
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            // stalled at the noise floor
            return (rn < 1e-11).then_some(p);
        }
        if norm2(step) * lambda < 1e-16 {
            break;
        }
    }
    (norm2(r) < 1e-11).then_some(p)
}

fn scale_solution(problem: Problem, p: [f64; 2], q: Point) -> Option<InverseSolution> {
    let (_, s1, lam) = forward(problem, p)?;
    let t = match problem {
        Problem::One => q.y / s1,
        Problem::Two => q.x / s1,
    };
    Some(InverseSolution {
        covector: Covector::new(lam.phi0, lam.c / (t * t), problem),
        t,
    })
}

fn residual_of(sol: &InverseSolution, q: Point) -> f64 {
    exp(sol.covector, sol.t).map(|e| e.max_abs_diff(&q)).unwrap_or(f64::INFINITY)
}

/// Normal solutions `(λ, t)` with `exp(λ, t) = q` for interior `q`.
pub fn invert_exp(q: Point, problem: Problem, tol: f64) -> Result<InverseResult> {
    let class = classify(q, problem, DEFAULT_EPS_B);
    let stratum = match class {
        Classification::Interior(s) => s,
        other => return Err(Error::NotInterior(other.to_string())),
    };
    let solutions = match stratum {
        Stratum::M0 => invert_m0(q)?,
        Stratum::M5 | Stratum::M6 => {
            // c = 0: ξ = tanh φ₀, y = t cosh φ₀
            let phi0 = (q.x / q.y).atanh();
            vec![InverseSolution {
                covector: Covector::new(phi0, 0.0, Problem::One),
                t: q.y / phi0.cosh(),
            }]
        }
        _ => {
            let flip = problem == Problem::One && q.x < 0.0;
            let qq = if flip { Point::new(-q.x, q.y, q.z) } else { q };
            let target = match problem {
                Problem::One => {
                    let h = hom(qq);
                    [h.xi, 24.0 * h.eta]
                }
                Problem::Two => [qq.y / qq.x, 24.0 * qq.z / (qq.x * qq.x * qq.x)],
            };
            let mut seeds: Vec<&([f64; 2], [f64; 2])> = seed_table(problem).entries.iter().collect();
            seeds.sort_by(|a, b| {
                let da = norm2([a.1[0] - target[0], a.1[1] - target[1]]);
                let db = norm2([b.1[0] - target[0], b.1[1] - target[1]]);
                da.total_cmp(&db)
            });
            let mut best: Option<(InverseSolution, f64)> = None;
            for (seed, _) in seeds.iter().take(8) {
                let Some(p) = newton(problem, target, *seed) else { continue };
                let Some(mut sol) = scale_solution(problem, p, qq) else { continue };
                if flip {
                    sol.covector = sol.covector.reflected();
                }
                let r = residual_of(&sol, q);
                if best.as_ref().is_none_or(|b| r < b.1) {
                    best = Some((sol, r));
                }
                if r <= tol * scale_of(q) {
                    break;
                }
            }
            match best {
                Some((sol, _)) => vec![sol],
                None => return Err(Error::Numerical(format!("Newton did not converge for {q:?}"))),
            }
        }
    };
    let residual = solutions.iter().map(|s| residual_of(s, q)).fold(0.0, f64::max);
    if !(residual <= tol * scale_of(q)) {
        return Err(Error::Numerical(format!(
            "inversion residual {residual:e} above tolerance {tol:e} for {q:?}"
        )));
    }
    Ok(InverseResult {
        solutions,
        residual,
        stratum,
    })
}

fn scale_of(q: Point) -> f64 {
    1.0f64.max(q.x.abs()).max(q.y.abs()).max(q.z.abs())
}

/// `η` of the Maxwell point of the extremal with modulus `k`.
pub fn eta1(k: f64) -> Result<f64> {
    let md = EllipticModulus::new(k)?;
    Ok(eta1_of(&md))
}

fn eta1_of(md: &EllipticModulus) -> f64 {
    let (kk, ee, k, kc) = (md.complete_k(), md.complete_e(), md.k(), md.kc());
    let kc2 = kc * kc;
    -1.0 / 24.0 + ((1.0 + k * k) * ee - kc2 * kk) / (6.0 * (2.0 * ee - kc2 * kk).powi(3))
}

fn invert_m0(q: Point) -> Result<Vec<InverseSolution>> {
    let eta = hom(q).eta;
    // η₁ increases from −1/24 to 0; bisect on a = tanh(φ₀/2).
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let md = EllipticModulus::from_pair(mid, ((1.0 - mid) * (1.0 + mid)).sqrt());
        if eta1_of(&md) < eta {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let k = 0.5 * (lo + hi);
    let md = EllipticModulus::from_pair(k, ((1.0 - k) * (1.0 + k)).sqrt());
    let (kk, ee, kc) = (md.complete_k(), md.complete_e(), md.kc());
    let y1 = (4.0 * ee - 2.0 * kc * kc * kk) / kc;
    let alpha = q.y / y1;
    let t = alpha * 2.0 * kc * kk;
    let c = 1.0 / (alpha * alpha);
    let phi0 = 2.0 * k.atanh();
    Ok(vec![
        InverseSolution { covector: Covector::new(phi0, c, Problem::One), t },
        InverseSolution { covector: Covector::new(-phi0, c, Problem::One), t },
    ])
}

/// Distance together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub value: f64,
    pub classification: Classification,
    /// The point is on the boundary of the attainable set, where `d` may
    /// differ from its limits along interior sequences.
    pub boundary_value: bool,
}

/// Sub-Lorentzian distance from the origin (0 where nothing is attainable).
pub fn distance(q: Point, problem: Problem) -> Result<f64> {
    Ok(distance_report(q, problem)?.value)
}

pub fn distance_report(q: Point, problem: Problem) -> Result<DistanceReport> {
    let class = classify(q, problem, DEFAULT_EPS_B);
    let value = match class {
        Classification::Outside => 0.0,
        Classification::Interior(_) => invert_exp(q, problem, DEFAULT_INVERSION_TOL)?.solutions[0].t,
        Classification::Boundary(s) => {
            let top = s.contains(Surface::S1) || s.contains(Surface::S2);
            let bottom = s.contains(Surface::S3) || s.contains(Surface::S4);
            if problem == Problem::One && bottom && !top {
                q.y - q.x.abs()
            } else {
                0.0
            }
        }
    };
    Ok(DistanceReport {
        value,
        classification: class,
        boundary_value: class.is_boundary(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Arc {
    Normal { covector: Covector, duration: f64 },
    Bang { u1: f64, u2: f64, duration: f64 },
    /// Problem 1 control `(0, 1)` on the plane `x = 0`.
    Singular { duration: f64 },
}

impl Arc {
    pub fn duration(&self) -> f64 {
        match *self {
            Arc::Normal { duration, .. } | Arc::Bang { duration, .. } | Arc::Singular { duration } => duration,
        }
    }

    pub fn length(&self, problem: Problem) -> f64 {
        match *self {
            Arc::Normal { duration, .. } => duration,
            Arc::Bang { u1, u2, duration } => ControlArc::new(u1, u2, duration).length(problem),
            Arc::Singular { duration } => duration,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthesisPlan {
    pub problem: Problem,
    pub arcs: Vec<Arc>,
    pub total_length: f64,
    /// Number of distinct optimal trajectories.
    pub multiplicity: u8,
    pub alternate: Option<Box<SynthesisPlan>>,
}

impl SynthesisPlan {
    fn new(problem: Problem, arcs: Vec<Arc>) -> Self {
        let arcs: Vec<Arc> = arcs.into_iter().filter(|a| a.duration() > 0.0).collect();
        let total_length = arcs.iter().map(|a| a.length(problem)).sum();
        Self {
            problem,
            arcs,
            total_length,
            multiplicity: 1,
            alternate: None,
        }
    }

    fn with_alternate(mut self, alt: SynthesisPlan) -> Self {
        self.multiplicity = 2;
        self.alternate = Some(Box::new(alt));
        self
    }

    /// Switching times between consecutive arcs.
    pub fn switching_times(&self) -> Vec<f64> {
        let mut t = 0.0;
        let mut out = Vec::new();
        for a in &self.arcs[..self.arcs.len().saturating_sub(1)] {
            t += a.duration();
            out.push(t);
        }
        out
    }

    /// Endpoint of the concatenated arcs. Normal arcs must start on `x = 0`.
    pub fn endpoint(&self) -> Result<Point> {
        let mut q = Point::ORIGIN;
        for arc in &self.arcs {
            q = match *arc {
                Arc::Normal { covector, duration } => {
                    if q.x != 0.0 {
                        return Err(Error::UnsupportedBase(format!("normal arc from x = {}", q.x)));
                    }
                    let e = exp(covector, duration)?;
                    Point::new(e.x, q.y + e.y, q.z + e.z)
                }
                Arc::Bang { u1, u2, duration } => ControlArc::new(u1, u2, duration).flow(q, duration),
                Arc::Singular { duration } => ControlArc::new(0.0, 1.0, duration).flow(q, duration),
            };
        }
        Ok(q)
    }
}

fn normal_plan(sol: &InverseSolution) -> SynthesisPlan {
    SynthesisPlan::new(
        sol.covector.problem,
        vec![Arc::Normal {
            covector: sol.covector,
            duration: sol.t,
        }],
    )
}

/// Optimal trajectory (or the two of them) from the origin to `q`.
pub fn synthesize(q: Point, problem: Problem) -> Result<SynthesisPlan> {
    let class = classify(q, problem, DEFAULT_EPS_B);
    let bang = |u1: f64, u2: f64, duration: f64| Arc::Bang { u1, u2, duration };
    match class {
        Classification::Outside => Err(Error::OutsideAttainable),
        Classification::Interior(_) => {
            let inv = invert_exp(q, problem, DEFAULT_INVERSION_TOL)?;
            let first = normal_plan(&inv.solutions[0]);
            Ok(match inv.solutions.get(1) {
                Some(second) => first.with_alternate(normal_plan(second)),
                None => first,
            })
        }
        Classification::Boundary(s) => {
            if s.contains(Surface::Vertex) {
                return Ok(SynthesisPlan::new(problem, vec![]));
            }
            let (x, y) = (q.x, q.y);
            Ok(match problem {
                Problem::One => {
                    let top = s.contains(Surface::S1) || s.contains(Surface::S2);
                    let (s1, s2) = (s.contains(Surface::S1), s.contains(Surface::S2));
                    let (s3, s4) = (s.contains(Surface::S3), s.contains(Surface::S4));
                    let ax = x.abs();
                    let up = |sg: f64| {
                        SynthesisPlan::new(problem, vec![bang(sg, 1.0, (y + ax) / 2.0), bang(-sg, 1.0, (y - ax) / 2.0)])
                    };
                    if s1 && s2 {
                        up(1.0).with_alternate(up(-1.0))
                    } else if top {
                        up(if s1 { 1.0 } else { -1.0 })
                    } else if s3 && s4 {
                        SynthesisPlan::new(problem, vec![Arc::Singular { duration: y }])
                    } else {
                        let sg = if s3 { 1.0 } else { -1.0 };
                        SynthesisPlan::new(problem, vec![Arc::Singular { duration: y - ax }, bang(sg, 1.0, ax)])
                    }
                }
                Problem::Two => {
                    let upper = if s.contains(Surface::Upper) && s.contains(Surface::Lower) {
                        y > 0.0
                    } else {
                        s.contains(Surface::Upper)
                    };
                    if upper {
                        SynthesisPlan::new(problem, vec![bang(1.0, -1.0, (x - y) / 2.0), bang(1.0, 1.0, (x + y) / 2.0)])
                    } else {
                        SynthesisPlan::new(problem, vec![bang(1.0, 1.0, (x + y) / 2.0), bang(1.0, -1.0, (x - y) / 2.0)])
                    }
                }
            })
        }
    }
}

/// Which part of the sphere a sample belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SphereStratum {
    /// Problem 1 normal part, `x > 0`.
    NormalPlus,
    /// Problem 1 normal part, `x < 0`.
    NormalMinus,
    /// Problem 1 normal part on `x = 0`.
    NormalPlane,
    /// Problem 1 abnormal part, `x > 0`.
    AbnormalPlus,
    /// Problem 1 abnormal part, `x < 0`.
    AbnormalMinus,
    /// The point `(0, R, 0)`.
    AbnormalPlane,
    /// Problem 2 sphere.
    Normal,
}

impl SphereStratum {
    pub fn tag(&self) -> &'static str {
        match self {
            SphereStratum::NormalPlus => "Sn+",
            SphereStratum::NormalMinus => "Sn-",
            SphereStratum::NormalPlane => "Sn0",
            SphereStratum::AbnormalPlus => "Sa+",
            SphereStratum::AbnormalMinus => "Sa-",
            SphereStratum::AbnormalPlane => "Sa0",
            SphereStratum::Normal => "S",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    pub point: Point,
    pub stratum: SphereStratum,
}

/// Deterministic low-discrepancy point of the unit square.
fn r2(i: usize) -> (f64, f64) {
    const G: f64 = 1.324_717_957_244_746;
    let (a1, a2) = (1.0 / G, 1.0 / (G * G));
    let i = i as f64 + 1.0;
    ((0.5 + a1 * i).fract(), (0.5 + a2 * i).fract())
}

fn lerp(lo: f64, hi: f64, s: f64) -> f64 {
    lo + (hi - lo) * s
}

/// `n` points of the sphere `{d = R}`, split across its strata.
pub fn sphere_sample(radius: f64, n: usize, problem: Problem) -> Result<Vec<SpherePoint>> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")));
    }
    let unit = match problem {
        Problem::One => unit_sphere1(n)?,
        Problem::Two => (0..n)
            .map(|i| {
                let (s1, s2) = r2(i);
                let lam = unit_time_covector(Problem::Two, [lerp(-0.9, 0.9, s1), lerp(-0.95, 0.95, s2)])
                    .expect("grid inside the parameter box");
                Ok(SpherePoint {
                    point: exp2(lam, 1.0)?,
                    stratum: SphereStratum::Normal,
                })
            })
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(unit
        .into_iter()
        .map(|p| SpherePoint {
            point: dilate_unchecked(p.point, radius),
            ..p
        })
        .collect())
}

fn unit_sphere1(n: usize) -> Result<Vec<SpherePoint>> {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return Ok(out);
    }
    out.push(SpherePoint {
        point: Point::new(0.0, 1.0, 0.0),
        stratum: SphereStratum::AbnormalPlane,
    });
    let m = n - 1;
    let n_plane = m / 10;
    let n_ab = m / 5;
    let n_normal = m - n_plane - n_ab;
    for i in 0..n_normal {
        let (s1, s2) = r2(i / 2);
        let lam = unit_time_covector(Problem::One, [lerp(0.05, 0.9, s1), lerp(-0.95, 0.95, s2)])
            .expect("grid inside the parameter box");
        let (lam, stratum) = if i % 2 == 0 {
            (lam, SphereStratum::NormalPlus)
        } else {
            (lam.reflected(), SphereStratum::NormalMinus)
        };
        out.push(SpherePoint {
            point: exp1(lam, 1.0)?,
            stratum,
        });
    }
    for i in 0..n_plane {
        let k = 0.95 * (i as f64 + 0.5) / n_plane as f64;
        let (y, z) = sphere_pi_curve(k)?;
        out.push(SpherePoint {
            point: Point::new(0.0, y, z),
            stratum: SphereStratum::NormalPlane,
        });
    }
    for i in 0..n_ab {
        let s = 2.0 * ((i / 2) as f64 + 1.0) / n_ab.div_ceil(2) as f64;
        let (sg, stratum) = if i % 2 == 0 {
            (1.0, SphereStratum::AbnormalPlus)
        } else {
            (-1.0, SphereStratum::AbnormalMinus)
        };
        out.push(SpherePoint {
            point: Point::new(sg * s, 1.0 + s, s * s * s / 6.0),
            stratum,
        });
    }
    Ok(out)
}

/// The curve `S(1) ∩ {x = 0}` as `(y, z)` over the modulus `k`.
pub fn sphere_pi_curve(k: f64) -> Result<(f64, f64)> {
    let md = EllipticModulus::new(k)?;
    let (kk, ee, kc) = (md.complete_k(), md.complete_e(), md.kc());
    let kc2 = kc * kc;
    let y = (4.0 * ee - 2.0 * kc2 * kk) / (2.0 * kc2 * kk);
    let z = ((1.0 + k * k) * ee - kc2 * kk) / (6.0 * kc2 * kc2 * kc2 * kk.powi(3));
    Ok((y, z))
}

/// Jacobian diagnostics `(J₀(τ), g(k))`.
pub fn jacobian_diag(tau: f64, k: f64) -> Result<(f64, f64)> {
    let j0 = (3.0 * tau).cos() + (8.0 * tau * tau - 1.0) * tau.cos() - 4.0 * tau * tau.sin();
    let md = EllipticModulus::new(k)?;
    let (kk, ee, kc) = (md.complete_k(), md.complete_e(), md.kc());
    let g = ee * ee - 2.0 * ee * kk + kc * kc * kk * kk;
    Ok((j0, g))
}
