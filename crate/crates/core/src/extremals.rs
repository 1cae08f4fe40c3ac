//! Normal extremals in closed form, abnormal arcs, cut times, and an
//! independent integrator of the normal Hamiltonian system.
//!
//! Normal extremals are parametrized by arclength (`H ≡ −1/2`) and by a
//! covector `(φ₀, c)`:
//!
//! ```text
//! problem 1: h₁ = sinh φ, h₂ = −cosh φ, h₃ = c,  φ̇ = −cx,
//!            ẋ = sinh φ, ẏ = cosh φ, ż = cosh φ · x²/2,  E = cx²/2 + cosh φ
//! problem 2: h₁ = −cosh φ, h₂ = sinh φ, h₃ = c,  φ̇ = cx,
//!            ẋ = cosh φ, ẏ = sinh φ, ż = sinh φ · x²/2,  E = cx²/2 − sinh φ
//! ```
//!
//! For short elliptic times the closed forms for `y` and `z` subtract
//! nearly equal terms, so below [`SHORT_TAU`] they are evaluated by
//! Gauss–Legendre quadrature of `ẏ, ż` over the closed-form `x(s)`.

use serde::{Deserialize, Serialize};

use crate::elliptic::EllipticModulus;
use crate::error::{Error, Result};
use crate::geometry::{Point, Problem};
use crate::quad;

/// Elliptic time below which `y` and `z` are integrated rather than
/// evaluated from the closed form.
const SHORT_TAU: f64 = 0.5;

/// Normal-extremal initial data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Covector {
    pub phi0: f64,
    pub c: f64,
    pub problem: Problem,
}

impl Covector {
    pub fn new(phi0: f64, c: f64, problem: Problem) -> Self {
        Self { phi0, c, problem }
    }

    /// Image under `(φ, c) ↦ (−φ, c)`.
    pub fn reflected(&self) -> Self {
        Self { phi0: -self.phi0, ..*self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormalCase {
    CZero,
    /// Problem 1, `c > 0`, `φ₀ = 0`.
    CPosAxis,
    /// Problem 1, `c > 0`; `sigma = sgn φ₀`.
    CPos { sigma: i8 },
    /// Problem 1, `c < 0`, `φ₀ = 0`.
    CNegAxis,
    /// Problem 1, `c < 0`; `sigma = sgn φ₀`.
    CNeg { sigma: i8 },
    /// Problem 2, `c ≠ 0`; `sign = sgn c`.
    CNonzero { sign: i8 },
}

/// Derived parameters of one normal extremal.
///
/// `k`, `kc`, `m`, `ae` are meaningful only for the elliptic cases; the
/// axis and `c = 0` cases carry `k = 0`, `kc = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalParams {
    pub case: NormalCase,
    /// Value of the energy integral.
    pub energy: f64,
    pub k: f64,
    pub kc: f64,
    pub l: f64,
    pub m: f64,
    pub ae: f64,
    /// `τ = tau_rate · t`.
    pub tau_rate: f64,
}

impl NormalParams {
    pub fn tau(&self, t: f64) -> f64 {
        self.tau_rate * t
    }

    /// Inverse of [`NormalParams::tau`]; infinite when time is not rescaled.
    pub fn time(&self, tau: f64) -> f64 {
        tau / self.tau_rate
    }

    pub fn modulus(&self) -> EllipticModulus {
        EllipticModulus::from_pair(self.k, self.kc)
    }
}

fn sgn(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else {
        -1
    }
}

pub fn normal_params(lam: Covector) -> NormalParams {
    let (phi0, c) = (lam.phi0, lam.c);
    let l = c.abs().sqrt();
    let trivial = |case, energy| NormalParams {
        case,
        energy,
        k: 0.0,
        kc: 1.0,
        l,
        m: l,
        ae: 1.0,
        tau_rate: l,
    };
    match lam.problem {
        Problem::One => {
            let energy = phi0.cosh();
            if c == 0.0 {
                return trivial(NormalCase::CZero, energy);
            }
            if phi0 == 0.0 {
                let case = if c > 0.0 { NormalCase::CPosAxis } else { NormalCase::CNegAxis };
                return trivial(case, energy);
            }
            let sigma = sgn(phi0);
            let th = (phi0.abs() / 2.0).tanh();
            let sech = 1.0 / (phi0 / 2.0).cosh();
            if c > 0.0 {
                NormalParams {
                    case: NormalCase::CPos { sigma },
                    energy,
                    k: th,
                    kc: sech,
                    l,
                    m: l * sech,
                    ae: 1.0 / sech,
                    tau_rate: l / sech,
                }
            } else {
                NormalParams {
                    case: NormalCase::CNeg { sigma },
                    energy,
                    k: sech,
                    kc: th,
                    l,
                    m: sech * l,
                    ae: 1.0 / sech,
                    tau_rate: l / sech,
                }
            }
        }
        Problem::Two => {
            let energy = -phi0.sinh();
            if c == 0.0 {
                return trivial(NormalCase::CZero, energy);
            }
            let sign = sgn(c);
            let s = sign as f64;
            // k² = ½(1 + E_s/√(1+E_s²)) with E_s = sgn(c)·E, in overflow-free form.
            let k2 = 1.0 / (1.0 + (2.0 * s * phi0).exp());
            let kc2 = 1.0 / (1.0 + (-2.0 * s * phi0).exp());
            let ae = (phi0.cosh() / 2.0).sqrt();
            NormalParams {
                case: NormalCase::CNonzero { sign },
                energy,
                k: k2.sqrt(),
                kc: kc2.sqrt(),
                l,
                m: l / ae,
                ae,
                tau_rate: ae * l,
            }
        }
    }
}

/// Time up to which the extremal is optimal (`+∞` when it always is).
pub fn cut_time(lam: Covector) -> f64 {
    let p = normal_params(lam);
    let kk = || p.modulus().complete_k();
    match p.case {
        NormalCase::CZero | NormalCase::CPosAxis | NormalCase::CNegAxis => f64::INFINITY,
        NormalCase::CPos { .. } => 2.0 * p.kc * kk() / p.l,
        NormalCase::CNeg { .. } => p.k * kk() / p.l,
        NormalCase::CNonzero { .. } => kk() / (p.l * p.ae),
    }
}

/// Largest `t` for which the exponential map is defined (`+∞` if none).
pub fn domain_bound(lam: Covector) -> f64 {
    let p = normal_params(lam);
    match p.case {
        NormalCase::CNeg { .. } | NormalCase::CNonzero { .. } => cut_time(lam),
        _ => f64::INFINITY,
    }
}

fn check_time(lam: Covector, p: &NormalParams, t: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("time must be finite and ≥ 0, got {t}")));
    }
    if !(lam.phi0.is_finite() && lam.c.is_finite()) {
        return Err(Error::InvalidArgument("covector must be finite".into()));
    }
    let (bound, bound_name) = match p.case {
        NormalCase::CNeg { .. } => (cut_time(lam), "kK/l"),
        NormalCase::CNonzero { .. } => (cut_time(lam), "K/(læ)"),
        _ => return Ok(()),
    };
    if t >= bound {
        return Err(Error::BeyondDomain { t, bound, bound_name });
    }
    Ok(())
}

/// Exponential map of problem 1.
pub fn exp1(lam: Covector, t: f64) -> Result<Point> {
    let lam = Covector { problem: Problem::One, ..lam };
    let p = normal_params(lam);
    check_time(lam, &p, t)?;
    Ok(exp1_unchecked(lam, &p, t))
}

/// Exponential map of problem 2.
pub fn exp2(lam: Covector, t: f64) -> Result<Point> {
    let lam = Covector { problem: Problem::Two, ..lam };
    let p = normal_params(lam);
    check_time(lam, &p, t)?;
    Ok(exp2_unchecked(lam, &p, t))
}

/// Exponential map of the covector's own problem.
pub fn exp(lam: Covector, t: f64) -> Result<Point> {
    match lam.problem {
        Problem::One => exp1(lam, t),
        Problem::Two => exp2(lam, t),
    }
}

fn exp1_unchecked(lam: Covector, p: &NormalParams, t: f64) -> Point {
    let (phi0, c) = (lam.phi0, lam.c);
    match p.case {
        NormalCase::CZero => {
            let (s, ch) = (phi0.sinh(), phi0.cosh());
            Point::new(t * s, t * ch, t * t * t / 6.0 * ch * s * s)
        }
        NormalCase::CPosAxis | NormalCase::CNegAxis => Point::new(0.0, t, 0.0),
        NormalCase::CPos { sigma } | NormalCase::CNeg { sigma } => {
            let pos = c > 0.0;
            let md = p.modulus();
            let xs = move |tau: f64| {
                let j = md.jacobi(tau);
                if pos {
                    sigma as f64 * 2.0 * p.k * j.sn / p.m
                } else {
                    sigma as f64 * 2.0 * p.kc / p.m * j.sn / j.cn
                }
            };
            let tau = p.tau(t);
            if tau < SHORT_TAU {
                let e = p.energy;
                let [y, z] = quad::integrate(t, |s| {
                    let x = xs(p.tau(s));
                    let ch = e - c * x * x / 2.0;
                    [ch, ch * x * x / 2.0]
                });
                return Point::new(xs(tau), y, z);
            }
            let j = md.jacobi(tau);
            let eps = md.epsilon_from(tau, &j);
            let (k2, kc2, m) = (p.k * p.k, p.kc * p.kc, p.m);
            let (sn, cn, dn) = (j.sn, j.cn, j.dn);
            if pos {
                let x = sigma as f64 * 2.0 * p.k * sn / m;
                let y = (2.0 * eps - kc2 * tau) / m;
                let z = -2.0 / (3.0 * m * m * m) * (kc2 * tau + 2.0 * k2 * sn * cn * dn - (1.0 + k2) * eps);
                Point::new(x, y, z)
            } else {
                let f = dn * sn / cn;
                let x = sigma as f64 * 2.0 * p.kc / m * sn / cn;
                let y = ((2.0 - k2) * tau + 2.0 * f - 2.0 * eps) / m;
                let z = -2.0 / (3.0 * m * m * m)
                    * (2.0 * kc2 * tau + (k2 - 2.0) * eps + (k2 + (k2 - 2.0) * sn * sn) * f / (cn * cn));
                Point::new(x, y, z)
            }
        }
        NormalCase::CNonzero { .. } => unreachable!("problem-2 case in problem-1 map"),
    }
}

fn exp2_unchecked(lam: Covector, p: &NormalParams, t: f64) -> Point {
    let (phi0, c) = (lam.phi0, lam.c);
    match p.case {
        NormalCase::CZero => {
            let (s, ch) = (phi0.sinh(), phi0.cosh());
            Point::new(t * ch, t * s, t * t * t / 6.0 * ch * ch * s)
        }
        NormalCase::CNonzero { sign } => {
            let md = p.modulus();
            let (ae, l) = (p.ae, p.l);
            let xs = move |tau: f64| {
                let j = md.jacobi(tau);
                2.0 * ae * j.dn * j.sn / (l * j.cn)
            };
            let tau = p.tau(t);
            if tau < SHORT_TAU {
                let e = p.energy;
                let [y, z] = quad::integrate(t, |s| {
                    let x = xs(p.tau(s));
                    let sh = c * x * x / 2.0 - e;
                    [sh, sh * x * x / 2.0]
                });
                return Point::new(xs(tau), y, z);
            }
            let s = sign as f64;
            let es = s * p.energy;
            let j = md.jacobi(tau);
            let eps = md.epsilon_from(tau, &j);
            let (k2, kc2) = (p.k * p.k, p.kc * p.kc);
            let (sn, cn, dn) = (j.sn, j.cn, j.dn);
            let f = dn * sn / cn;
            // ∫f² and ∫f⁴ over [0, τ]
            let f2 = f + tau - 2.0 * eps;
            let f4 = ((8.0 * k2 - 5.0) * tau - 8.0 * (2.0 * k2 - 1.0) * eps
                + k2 * sn * cn * dn
                + 4.0 * (2.0 * k2 - 1.0) * f
                + kc2 * f / (cn * cn))
                / 3.0;
            let x = 2.0 * ae * f / l;
            let y = s * (2.0 * ae / l * f2 - es * tau / (ae * l));
            let z = s * (4.0 * ae.powi(3) / l.powi(3) * f4 - 2.0 * es * ae / l.powi(3) * f2);
            Point::new(x, y, z)
        }
        _ => unreachable!("problem-1 case in problem-2 map"),
    }
}

/// A constant-control arc `(u₁, u₂)` held for `duration`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControlArc {
    pub u1: f64,
    pub u2: f64,
    pub duration: f64,
}

impl ControlArc {
    pub fn new(u1: f64, u2: f64, duration: f64) -> Self {
        Self { u1, u2, duration }
    }

    /// State after following this arc for time `s` from `q`.
    pub fn flow(&self, q: Point, s: f64) -> Point {
        let (u1, u2) = (self.u1, self.u2);
        let x0 = q.x;
        Point::new(
            x0 + u1 * s,
            q.y + u2 * s,
            q.z + u2 * (x0 * x0 * s + x0 * u1 * s * s + u1 * u1 * s * s * s / 3.0) / 2.0,
        )
    }

    /// Sub-Lorentzian length of the arc.
    pub fn length(&self, problem: Problem) -> f64 {
        let g = match problem {
            Problem::One => self.u2 * self.u2 - self.u1 * self.u1,
            Problem::Two => self.u1 * self.u1 - self.u2 * self.u2,
        };
        self.duration * g.max(0.0).sqrt()
    }
}

/// Abnormal control patterns; `plus` selects the sign of the varying
/// component of the first (bang) or second (after singular) arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AbnormalKind {
    /// Problem 1: `(±1, 1)` then `(∓1, 1)`.
    /// Problem 2: `(1, ±1)` then `(1, ∓1)`.
    BangBang { plus: bool },
    /// Problem 1: `(0, 1)` then `(±1, 1)`.
    SingularBang { plus: bool },
    /// Problem 1: `(0, 1)` throughout.
    Singular,
    /// Problem 1: `(±1, 1)`; problem 2: `(1, ±1)`.
    Bang { plus: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbnormalSpec {
    pub problem: Problem,
    pub kind: AbnormalKind,
    /// Switching time.
    pub tau1: f64,
    /// Total time.
    pub t1: f64,
}

impl AbnormalSpec {
    pub fn new(problem: Problem, kind: AbnormalKind, tau1: f64, t1: f64) -> Self {
        Self { problem, kind, tau1, t1 }
    }

    /// The control arcs, in order.
    pub fn arcs(&self) -> Result<Vec<ControlArc>> {
        if !(self.tau1 >= 0.0 && self.t1 >= self.tau1 && self.t1.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "need 0 ≤ τ₁ ≤ t₁, got τ₁ = {}, t₁ = {}",
                self.tau1, self.t1
            )));
        }
        let bang = |plus: bool, d: f64| {
            let s = if plus { 1.0 } else { -1.0 };
            match self.problem {
                Problem::One => ControlArc::new(s, 1.0, d),
                Problem::Two => ControlArc::new(1.0, s, d),
            }
        };
        let rest = self.t1 - self.tau1;
        Ok(match (self.problem, self.kind) {
            (_, AbnormalKind::BangBang { plus }) => vec![bang(plus, self.tau1), bang(!plus, rest)],
            (_, AbnormalKind::Bang { plus }) => vec![bang(plus, self.t1)],
            (Problem::One, AbnormalKind::SingularBang { plus }) => {
                vec![ControlArc::new(0.0, 1.0, self.tau1), bang(plus, rest)]
            }
            (Problem::One, AbnormalKind::Singular) => vec![ControlArc::new(0.0, 1.0, self.t1)],
            (Problem::Two, _) => {
                return Err(Error::InvalidArgument("problem 2 has no singular abnormal arcs".into()))
            }
        })
    }
}

/// Point reached by following arcs from the origin for time `t`.
pub fn flow_arcs(arcs: &[ControlArc], t: f64) -> Point {
    let mut q = Point::ORIGIN;
    let mut left = t;
    for a in arcs {
        let s = left.min(a.duration);
        q = a.flow(q, s);
        left -= s;
        if left <= 0.0 {
            break;
        }
    }
    q
}

/// Point of the abnormal trajectory at time `t ∈ [0, t₁]`.
pub fn abnormal(spec: &AbnormalSpec, t: f64) -> Result<Point> {
    let arcs = spec.arcs()?;
    if !(0.0..=spec.t1).contains(&t) {
        return Err(Error::InvalidArgument(format!("t = {t} outside [0, {}]", spec.t1)));
    }
    Ok(flow_arcs(&arcs, t))
}

/// Sub-Lorentzian length of the abnormal trajectory.
pub fn abnormal_length(spec: &AbnormalSpec) -> Result<f64> {
    Ok(spec.arcs()?.iter().map(|a| a.length(spec.problem)).sum())
}

/// State of the normal Hamiltonian system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdeState {
    pub h1: f64,
    pub h2: f64,
    pub h3: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl OdeState {
    pub fn point(&self) -> Point {
        Point::new(self.x, self.y, self.z)
    }

    fn to_array(self) -> [f64; 6] {
        [self.h1, self.h2, self.h3, self.x, self.y, self.z]
    }

    fn from_array(a: [f64; 6]) -> Self {
        Self { h1: a[0], h2: a[1], h3: a[2], x: a[3], y: a[4], z: a[5] }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdeReport {
    pub state: OdeState,
    /// Largest deviation of `H` from `−1/2` over the steps.
    pub h_drift: f64,
    /// Largest deviation of the energy integral from its initial value.
    pub energy_drift: f64,
}

fn rhs(problem: Problem, s: &[f64; 6]) -> [f64; 6] {
    let [h1, h2, h3, x, _, _] = *s;
    match problem {
        Problem::One => [h2 * h3 * x, h1 * h3 * x, 0.0, h1, -h2, -h2 * x * x / 2.0],
        Problem::Two => [-h2 * h3 * x, -h1 * h3 * x, 0.0, -h1, h2, h2 * x * x / 2.0],
    }
}

fn hamiltonian(problem: Problem, s: &[f64; 6]) -> f64 {
    match problem {
        Problem::One => (s[0] * s[0] - s[1] * s[1]) / 2.0,
        Problem::Two => (s[1] * s[1] - s[0] * s[0]) / 2.0,
    }
}

fn energy(s: &[f64; 6]) -> f64 {
    s[2] * s[3] * s[3] / 2.0 - s[1]
}

fn axpy(y: &[f64; 6], h: f64, terms: &[(f64, &[f64; 6])]) -> [f64; 6] {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..6 {
            out[i] += h * c * k[i];
        }
    }
    out
}

/// Increment of one step of the 11-stage, 8th-order Cooper–Verner scheme.
fn rk8_step(problem: Problem, y: &[f64; 6], h: f64) -> [f64; 6] {
    let s = 21f64.sqrt();
    let f = |v: [f64; 6]| rhs(problem, &v);
    let k1 = f(*y);
    let k2 = f(axpy(y, h, &[(0.5, &k1)]));
    let k3 = f(axpy(y, h, &[(0.25, &k1), (0.25, &k2)]));
    let k4 = f(axpy(y, h, &[(1.0 / 7.0, &k1), ((-7.0 - 3.0 * s) / 98.0, &k2), ((21.0 + 5.0 * s) / 49.0, &k3)]));
    let k5 = f(axpy(
        y,
        h,
        &[((11.0 + s) / 84.0, &k1), ((18.0 + 4.0 * s) / 63.0, &k3), ((21.0 - s) / 252.0, &k4)],
    ));
    let k6 = f(axpy(
        y,
        h,
        &[
            ((5.0 + s) / 48.0, &k1),
            ((9.0 + s) / 36.0, &k3),
            ((-231.0 + 14.0 * s) / 360.0, &k4),
            ((63.0 - 7.0 * s) / 80.0, &k5),
        ],
    ));
    let k7 = f(axpy(
        y,
        h,
        &[
            ((10.0 - s) / 42.0, &k1),
            ((-432.0 + 92.0 * s) / 315.0, &k3),
            ((633.0 - 145.0 * s) / 90.0, &k4),
            ((-504.0 + 115.0 * s) / 70.0, &k5),
            ((63.0 - 13.0 * s) / 35.0, &k6),
        ],
    ));
    let k8 = f(axpy(
        y,
        h,
        &[(1.0 / 14.0, &k1), ((14.0 - 3.0 * s) / 126.0, &k5), ((13.0 - 3.0 * s) / 63.0, &k6), (1.0 / 9.0, &k7)],
    ));
    let k9 = f(axpy(
        y,
        h,
        &[
            (1.0 / 32.0, &k1),
            ((91.0 - 21.0 * s) / 576.0, &k5),
            (11.0 / 72.0, &k6),
            ((-385.0 - 75.0 * s) / 1152.0, &k7),
            ((63.0 + 13.0 * s) / 128.0, &k8),
        ],
    ));
    let k10 = f(axpy(
        y,
        h,
        &[
            (1.0 / 14.0, &k1),
            (1.0 / 9.0, &k5),
            ((-733.0 - 147.0 * s) / 2205.0, &k6),
            ((515.0 + 111.0 * s) / 504.0, &k7),
            ((-51.0 - 11.0 * s) / 56.0, &k8),
            ((132.0 + 28.0 * s) / 245.0, &k9),
        ],
    ));
    let k11 = f(axpy(
        y,
        h,
        &[
            ((-42.0 + 7.0 * s) / 18.0, &k5),
            ((-18.0 + 28.0 * s) / 45.0, &k6),
            ((-273.0 - 53.0 * s) / 72.0, &k7),
            ((301.0 + 53.0 * s) / 72.0, &k8),
            ((28.0 - 28.0 * s) / 45.0, &k9),
            ((49.0 - 7.0 * s) / 18.0, &k10),
        ],
    ));
    axpy(
        &[0.0; 6],
        h / 180.0,
        &[(9.0, &k1), (49.0, &k8), (64.0, &k9), (49.0, &k10), (9.0, &k11)],
    )
}

/// Integrates the normal Hamiltonian system from the origin with `steps`
/// fixed steps of an 8th-order Runge–Kutta scheme.
pub fn integrate_ode(lam: Covector, t: f64, steps: usize) -> Result<OdeReport> {
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be ≥ 1".into()));
    }
    if !t.is_finite() {
        return Err(Error::InvalidArgument(format!("time must be finite, got {t}")));
    }
    let (sh, ch) = (lam.phi0.sinh(), lam.phi0.cosh());
    let init = match lam.problem {
        Problem::One => OdeState { h1: sh, h2: -ch, h3: lam.c, x: 0.0, y: 0.0, z: 0.0 },
        Problem::Two => OdeState { h1: -ch, h2: sh, h3: lam.c, x: 0.0, y: 0.0, z: 0.0 },
    };
    let mut y = init.to_array();
    let e0 = energy(&y);
    let h = t / steps as f64;
    let (mut h_drift, mut e_drift) = (0.0f64, 0.0f64);
    // compensated accumulation; |z| reaches 1e4 over long arcs
    let mut carry = [0.0f64; 6];
    for _ in 0..steps {
        let dy = rk8_step(lam.problem, &y, h);
        for i in 0..6 {
            let inc = dy[i] - carry[i];
            let next = y[i] + inc;
            carry[i] = (next - y[i]) - inc;
            y[i] = next;
        }
        h_drift = h_drift.max((hamiltonian(lam.problem, &y) + 0.5).abs());
        e_drift = e_drift.max((energy(&y) - e0).abs());
    }
    Ok(OdeReport {
        state: OdeState::from_array(y),
        h_drift,
        energy_drift: e_drift,
    })
}

/// What to sample in [`sample_trajectory`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Trajectory {
    Normal(Covector),
    Abnormal(AbnormalSpec),
}

/// `n` equally spaced samples `(t, q(t))` on `[0, t₁]`.
pub fn sample_trajectory(traj: Trajectory, t1: f64, n: usize) -> Result<Vec<(f64, Point)>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 samples, got {n}")));
    }
    (0..n)
        .map(|i| {
            // hit t₁ exactly at the last sample
            let t = if i == n - 1 { t1 } else { t1 * i as f64 / (n - 1) as f64 };
            let q = match traj {
                Trajectory::Normal(lam) => exp(lam, t)?,
                Trajectory::Abnormal(spec) => abnormal(&spec, t)?,
            };
            Ok((t, q))
        })
        .collect()
}
