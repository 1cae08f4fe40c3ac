//! Complete elliptic integrals and Jacobi elliptic functions.
//!
//! Everything here is parametrized by the modulus `k`, never by the
//! parameter `m = k²`. Where `k` is close to 1 the complementary modulus
//! `k' = √(1 − k²)` loses precision if it is recomputed from `k`, so
//! [`EllipticModulus::from_pair`] accepts both when the caller can form
//! them accurately (e.g. `k = tanh(φ/2)`, `k' = sech(φ/2)`).
//!
//! The arithmetic-geometric mean scale
//!
//! ```text
//! a₀ = 1, b₀ = k', c₀ = k
//! aₙ₊₁ = (aₙ + bₙ)/2,  bₙ₊₁ = √(aₙ bₙ),  cₙ₊₁ = cₙ² / (4 aₙ₊₁)
//! ```
//!
//! is computed once per modulus and reused by every evaluation:
//! `K = π / (2 a_N)`, `E = K (1 − Σ 2ⁿ⁻¹ cₙ²)`, and the amplitude comes
//! from the descending recurrence `φ_N = 2ᴺ a_N u`,
//! `φₙ₋₁ = (φₙ + asin(cₙ sin φₙ / aₙ)) / 2`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Upper bound on AGM steps. Double precision converges in < 10 steps for
/// any `k' ≥ 1e-300`.
const MAX_AGM_STEPS: usize = 24;

/// Modulus of the elliptic functions together with its cached AGM scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticModulus {
    k: f64,
    kc: f64,
    steps: usize,
    a: [f64; MAX_AGM_STEPS + 1],
    c: [f64; MAX_AGM_STEPS + 1],
}

/// Values of the Jacobi functions at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiValues {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
    /// Jacobi amplitude `am u`, continuous in `u`.
    pub am: f64,
    /// Jacobi zeta function `Z(u)`.
    pub zeta: f64,
}

impl EllipticModulus {
    /// Modulus `k ∈ [0, 1)`.
    pub fn new(k: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&k) {
            return Err(Error::InvalidModulus(k));
        }
        Ok(Self::from_pair(k, ((1.0 - k) * (1.0 + k)).sqrt()))
    }

    /// Modulus from its complement `k' ∈ (0, 1]`.
    pub fn from_complement(kc: f64) -> Result<Self> {
        if !(kc > 0.0 && kc <= 1.0) {
            return Err(Error::InvalidModulus(((1.0 - kc) * (1.0 + kc)).max(0.0).sqrt()));
        }
        Ok(Self::from_pair(((1.0 - kc) * (1.0 + kc)).sqrt(), kc))
    }

    /// Modulus from an accurately known pair with `k² + k'² = 1`.
    ///
    /// The caller is responsible for the pair being consistent; only the
    /// ranges are checked in debug builds.
    pub fn from_pair(k: f64, kc: f64) -> Self {
        debug_assert!((0.0..=1.0).contains(&k), "k = {k}");
        debug_assert!(kc > 0.0 && kc <= 1.0, "k' = {kc}");
        let mut a = [0.0; MAX_AGM_STEPS + 1];
        let mut c = [0.0; MAX_AGM_STEPS + 1];
        a[0] = 1.0;
        c[0] = k;
        let mut b = kc;
        let mut n = 0;
        while n < MAX_AGM_STEPS && c[n] > f64::EPSILON * a[n] {
            let an = a[n];
            a[n + 1] = 0.5 * (an + b);
            c[n + 1] = c[n] * c[n] / (4.0 * a[n + 1]);
            b = (an * b).sqrt();
            n += 1;
        }
        Self {
            k,
            kc,
            steps: n,
            a,
            c,
        }
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// Complementary modulus `k'`.
    pub fn kc(&self) -> f64 {
        self.kc
    }

    /// Complete elliptic integral of the first kind `K(k)`.
    pub fn complete_k(&self) -> f64 {
        FRAC_PI_2 / self.a[self.steps]
    }

    /// Complete elliptic integral of the second kind `E(k)`.
    pub fn complete_e(&self) -> f64 {
        let mut sum = 0.5 * self.c[0] * self.c[0];
        let mut pow = 1.0;
        for n in 1..=self.steps {
            sum += pow * self.c[n] * self.c[n];
            pow *= 2.0;
        }
        self.complete_k() * (1.0 - sum)
    }

    /// `sn, cn, dn`, the amplitude and Jacobi's zeta function at `u`.
    pub fn jacobi(&self, u: f64) -> JacobiValues {
        let n = self.steps;
        let mut phi = [0.0; MAX_AGM_STEPS + 1];
        phi[n] = (1u64 << n) as f64 * self.a[n] * u;
        for j in (1..=n).rev() {
            let s = (self.c[j] * phi[j].sin() / self.a[j]).clamp(-1.0, 1.0);
            phi[j - 1] = 0.5 * (phi[j] + s.asin());
        }
        let zeta = (1..=n).map(|j| self.c[j] * phi[j].sin()).sum();
        let (sn, cn) = phi[0].sin_cos();
        // k'² + k² cn² has no cancellation, unlike 1 − k² sn².
        let dn = (self.kc * self.kc + self.k * self.k * cn * cn).sqrt();
        JacobiValues {
            sn,
            cn,
            dn,
            am: phi[0],
            zeta,
        }
    }

    /// Jacobi's epsilon function `ℰ(u) = ∫₀ᵘ dn² t dt = (E/K) u + Z(u)`.
    pub fn epsilon(&self, u: f64) -> f64 {
        self.epsilon_from(u, &self.jacobi(u))
    }

    /// `ℰ(u)` from an evaluation already made at the same `u`.
    pub fn epsilon_from(&self, u: f64, j: &JacobiValues) -> f64 {
        self.complete_e() / self.complete_k() * u + j.zeta
    }
}

/// `K(k)` for `k ∈ [0, 1)`.
pub fn complete_k(k: f64) -> Result<f64> {
    Ok(EllipticModulus::new(k)?.complete_k())
}

/// `E(k)` for `k ∈ [0, 1)`.
pub fn complete_e(k: f64) -> Result<f64> {
    Ok(EllipticModulus::new(k)?.complete_e())
}

/// `(sn τ, cn τ, dn τ)` with modulus `k`.
pub fn jacobi_sn_cn_dn(tau: f64, k: f64) -> Result<(f64, f64, f64)> {
    let j = EllipticModulus::new(k)?.jacobi(tau);
    Ok((j.sn, j.cn, j.dn))
}

/// Jacobi's epsilon function `ℰ(τ)`.
pub fn jacobi_epsilon(tau: f64, k: f64) -> Result<f64> {
    Ok(EllipticModulus::new(k)?.epsilon(tau))
}

/// Jacobi amplitude `am τ`.
pub fn jacobi_am(tau: f64, k: f64) -> Result<f64> {
    Ok(EllipticModulus::new(k)?.jacobi(tau).am)
}
