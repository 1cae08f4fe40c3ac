//! Points, symmetries, homogeneous coordinates and the attainable sets.
//!
//! Problem 1 attains
//!
//! ```text
//! B₁ = { y ≥ 0, |x| ≤ y, φ₃(|ξ|) ≤ η ≤ φ₁(|ξ|) }
//! ξ = x/y,  η = (24z − 3x²y − y³)/(24y³)
//! ```
//!
//! bounded by `S₁, S₂` (bang-bang, top) and `S₃, S₄` (singular-bang,
//! bottom). Problem 2 attains `B₂ = { x ≥ |y|, z¹(x,y) ≤ z ≤ z²(x,y) }`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default width of the boundary band in normalized coordinates.
pub const DEFAULT_EPS_B: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Problem {
    /// Future cone `u₂ ≥ |u₁|`, time runs along `y`.
    One,
    /// Future cone `u₁ ≥ |u₂|`, time runs along `x`.
    Two,
}

impl TryFrom<u8> for Problem {
    type Error = Error;
    fn try_from(v: u8) -> Result<Self> {
        match v {
            1 => Ok(Problem::One),
            2 => Ok(Problem::Two),
            _ => Err(Error::InvalidArgument(format!("problem must be 1 or 2, got {v}"))),
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::One => "1",
            Problem::Two => "2",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Euclidean distance; only used for residuals.
    pub fn dist(&self, o: &Point) -> f64 {
        ((self.x - o.x).powi(2) + (self.y - o.y).powi(2) + (self.z - o.z).powi(2)).sqrt()
    }

    pub fn max_abs_diff(&self, o: &Point) -> f64 {
        (self.x - o.x).abs().max((self.y - o.y).abs()).max((self.z - o.z).abs())
    }

    fn sub(&self, o: &Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl From<[f64; 3]> for Point {
    fn from(v: [f64; 3]) -> Self {
        Point::new(v[0], v[1], v[2])
    }
}

/// Dilation `δ_α(x, y, z) = (αx, αy, α³z)`.
pub fn dilate(q: Point, alpha: f64) -> Result<Point> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidArgument(format!("dilation factor must be positive, got {alpha}")));
    }
    Ok(dilate_unchecked(q, alpha))
}

pub(crate) fn dilate_unchecked(q: Point, a: f64) -> Point {
    Point::new(a * q.x, a * q.y, a * a * a * q.z)
}

/// Reflection `(φ, c, x, y, z) ↦ (−φ, c, −x, y, z)`.
pub fn reflect(phi0: f64, c: f64, q: Point) -> (f64, f64, Point) {
    (-phi0, c, Point::new(-q.x, q.y, q.z))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HomCoords {
    pub xi: f64,
    pub eta: f64,
}

/// Homogeneous coordinates of `q` in the chart translated to `base`.
///
/// Only bases on the plane `x = 0` are supported: translations in `(y, z)`
/// preserve the distribution, translations in `x` do not.
pub fn hom_coords(q: Point, base: Point) -> Result<HomCoords> {
    if base.x != 0.0 {
        return Err(Error::UnsupportedBase(format!("x = {}", base.x)));
    }
    let d = q.sub(&base);
    if d.y == 0.0 {
        return Err(Error::Chart);
    }
    Ok(hom(d))
}

pub(crate) fn hom(q: Point) -> HomCoords {
    let y3 = q.y * q.y * q.y;
    HomCoords {
        xi: q.x / q.y,
        eta: (24.0 * q.z - 3.0 * q.x * q.x * q.y - y3) / (24.0 * y3),
    }
}

/// Point at height `y` with homogeneous coordinates `h` relative to the origin.
pub fn from_hom(h: HomCoords, y: f64) -> Point {
    let x = h.xi * y;
    let y3 = y * y * y;
    Point::new(x, y, (24.0 * h.eta * y3 + 3.0 * x * x * y + y3) / 24.0)
}

/// The five boundary and stratum profiles over `ξ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Profiles {
    pub phi1: f64,
    pub phi2: f64,
    pub phi3: f64,
    pub phi4: f64,
    pub phi5: f64,
}

pub fn phi1(xi: f64) -> f64 {
    xi * (1.0 - xi * xi) / 8.0
}

pub fn phi3(xi: f64) -> f64 {
    xi * xi * xi / 6.0 - (3.0 * xi * xi + 1.0) / 24.0
}

pub fn phi5(xi: f64) -> f64 {
    (xi * xi - 1.0) / 24.0
}

pub fn phi_profiles(xi: f64) -> Profiles {
    Profiles {
        phi1: phi1(xi),
        phi2: phi1(-xi),
        phi3: phi3(xi),
        phi4: phi3(-xi),
        phi5: phi5(xi),
    }
}

/// Interior strata. `M₀…M₆` belong to problem 1, `IntB2` to problem 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stratum {
    /// `x = 0`.
    M0,
    /// `x > 0`, `φ₅ < η < φ₁`.
    M1,
    /// `x < 0`, `φ₅ < η < φ₂`.
    M2,
    /// `x > 0`, `φ₃ < η < φ₅`.
    M3,
    /// `x < 0`, `φ₄ < η < φ₅`.
    M4,
    /// `x > 0`, `η = φ₅`.
    M5,
    /// `x < 0`, `η = φ₅`.
    M6,
    IntB2,
}

impl Stratum {
    /// Image under `x ↦ −x`.
    pub fn reflected(self) -> Self {
        use Stratum::*;
        match self {
            M1 => M2,
            M2 => M1,
            M3 => M4,
            M4 => M3,
            M5 => M6,
            M6 => M5,
            s => s,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Surface {
    /// `x ≥ 0`, top (bang-bang).
    S1,
    /// `x ≤ 0`, top (bang-bang).
    S2,
    /// `x ≥ 0`, bottom (singular then bang).
    S3,
    /// `x ≤ 0`, bottom (singular then bang).
    S4,
    /// Graph of `z²` (problem 2).
    Upper,
    /// Graph of `z¹` (problem 2).
    Lower,
    /// The initial point itself.
    Vertex,
}

impl Surface {
    const ALL: [Surface; 7] = [
        Surface::S1,
        Surface::S2,
        Surface::S3,
        Surface::S4,
        Surface::Upper,
        Surface::Lower,
        Surface::Vertex,
    ];

    fn bit(self) -> u8 {
        1 << (self as u8)
    }

    pub fn reflected(self) -> Self {
        use Surface::*;
        match self {
            S1 => S2,
            S2 => S1,
            S3 => S4,
            S4 => S3,
            s => s,
        }
    }
}

/// Set of active boundary surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SurfaceSet(u8);

impl SurfaceSet {
    pub fn of(surfaces: &[Surface]) -> Self {
        Self(surfaces.iter().fold(0, |b, s| b | s.bit()))
    }

    pub fn insert(&mut self, s: Surface) {
        self.0 |= s.bit();
    }

    pub fn contains(&self, s: Surface) -> bool {
        self.0 & s.bit() != 0
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Surface> + '_ {
        Surface::ALL.into_iter().filter(|s| self.contains(*s))
    }

    pub fn reflected(&self) -> Self {
        Self::of(&self.iter().map(Surface::reflected).collect::<Vec<_>>())
    }
}

impl Serialize for SurfaceSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for SurfaceSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<Surface>::deserialize(d)?;
        Ok(Self::of(&v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Outside,
    Interior(Stratum),
    Boundary(SurfaceSet),
}

impl Classification {
    pub fn is_outside(&self) -> bool {
        matches!(self, Classification::Outside)
    }

    pub fn is_interior(&self) -> bool {
        matches!(self, Classification::Interior(_))
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, Classification::Boundary(_))
    }

    pub fn reflected(&self) -> Self {
        match self {
            Classification::Outside => Classification::Outside,
            Classification::Interior(s) => Classification::Interior(s.reflected()),
            Classification::Boundary(b) => Classification::Boundary(b.reflected()),
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Outside => write!(f, "Outside"),
            Classification::Interior(s) => write!(f, "Interior({s:?})"),
            Classification::Boundary(b) => {
                let names: Vec<String> = b.iter().map(|s| format!("{s:?}")).collect();
                write!(f, "Boundary({})", names.join("+"))
            }
        }
    }
}

/// Classifies `q` against `B₁`.
pub fn classify1(q: Point, eps_b: f64) -> Classification {
    if q.y <= 0.0 {
        if q == Point::ORIGIN {
            return Classification::Boundary(SurfaceSet::of(&[Surface::Vertex]));
        }
        return Classification::Outside;
    }
    let h = hom(q);
    let a = h.xi.abs();
    if a > 1.0 + eps_b || !h.eta.is_finite() {
        return Classification::Outside;
    }
    let ac = a.min(1.0);
    let (top, bottom) = (phi1(ac), phi3(ac));
    if h.eta > top + eps_b || h.eta < bottom - eps_b {
        return Classification::Outside;
    }
    let on_axis = a <= eps_b;
    let pos = q.x > 0.0;
    let mut set = SurfaceSet::default();
    let mut side = |plus: Surface, minus: Surface| {
        if on_axis || pos {
            set.insert(plus);
        }
        if on_axis || !pos {
            set.insert(minus);
        }
    };
    // At |ξ| = 1 both profiles meet; the point is on both facets.
    let corner = a >= 1.0 - eps_b;
    if corner || (h.eta - top).abs() <= eps_b {
        side(Surface::S1, Surface::S2);
    }
    if corner || (h.eta - bottom).abs() <= eps_b {
        side(Surface::S3, Surface::S4);
    }
    if !set.is_empty() {
        return Classification::Boundary(set);
    }
    if on_axis {
        return Classification::Interior(Stratum::M0);
    }
    let mid = phi5(a);
    let s = if (h.eta - mid).abs() <= eps_b {
        Stratum::M5
    } else if h.eta > mid {
        Stratum::M1
    } else {
        Stratum::M3
    };
    Classification::Interior(if pos { s } else { s.reflected() })
}

/// Lower graph `z¹` bounding `B₂`.
pub fn z_lower(x: f64, y: f64) -> f64 {
    ((x + y).powi(3) - 4.0 * x.powi(3)) / 24.0
}

/// Upper graph `z²` bounding `B₂`.
pub fn z_upper(x: f64, y: f64) -> f64 {
    (4.0 * x.powi(3) - (x - y).powi(3)) / 24.0
}

/// Classifies `q` against `B₂`.
pub fn classify2(q: Point, eps_b: f64) -> Classification {
    if q.x <= 0.0 {
        if q == Point::ORIGIN {
            return Classification::Boundary(SurfaceSet::of(&[Surface::Vertex]));
        }
        return Classification::Outside;
    }
    let v = q.y / q.x;
    let w = q.z / (q.x * q.x * q.x);
    if v.abs() > 1.0 + eps_b || !w.is_finite() {
        return Classification::Outside;
    }
    let vc = v.clamp(-1.0, 1.0);
    let (lo, hi) = (z_lower(1.0, vc), z_upper(1.0, vc));
    if w < lo - eps_b || w > hi + eps_b {
        return Classification::Outside;
    }
    let corner = v.abs() >= 1.0 - eps_b;
    let mut set = SurfaceSet::default();
    if corner || (w - hi).abs() <= eps_b {
        set.insert(Surface::Upper);
    }
    if corner || (w - lo).abs() <= eps_b {
        set.insert(Surface::Lower);
    }
    if set.is_empty() {
        Classification::Interior(Stratum::IntB2)
    } else {
        Classification::Boundary(set)
    }
}

pub fn classify(q: Point, problem: Problem, eps_b: f64) -> Classification {
    match problem {
        Problem::One => classify1(q, eps_b),
        Problem::Two => classify2(q, eps_b),
    }
}

/// Whether `q` lies in the causal future `J⁺(base)`.
pub fn causal_future(base: Point, q: Point, problem: Problem) -> Result<bool> {
    if base.x != 0.0 {
        return Err(Error::UnsupportedBase(format!("x = {}", base.x)));
    }
    Ok(!classify(q.sub(&base), problem, DEFAULT_EPS_B).is_outside())
}

/// Whether `q` lies in the causal past `J⁻(base)`.
///
/// The point reflection `q ↦ −q` maps the distribution to itself and
/// reverses time orientation, so `J⁻(base) = base − B`.
pub fn causal_past(base: Point, q: Point, problem: Problem) -> Result<bool> {
    if base.x != 0.0 {
        return Err(Error::UnsupportedBase(format!("x = {}", base.x)));
    }
    Ok(!classify(base.sub(&q), problem, DEFAULT_EPS_B).is_outside())
}
