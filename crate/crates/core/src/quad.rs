//! Gauss–Legendre rule used for short-time extremal integrals.

use std::sync::OnceLock;

pub(crate) const GL_NODES: usize = 24;

/// Nodes and weights on [-1, 1].
pub(crate) fn gauss_legendre() -> &'static [(f64, f64); GL_NODES] {
    static RULE: OnceLock<[(f64, f64); GL_NODES]> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_NODES;
        let mut rule = [(0.0, 0.0); GL_NODES];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for j in 2..=n {
                    let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            rule[i] = (x, 2.0 / ((1.0 - x * x) * dp * dp));
        }
        rule
    })
}

/// `∫₀ᵗ f` for a vector-valued integrand with `N` components.
pub(crate) fn integrate<const N: usize>(t: f64, f: impl Fn(f64) -> [f64; N]) -> [f64; N] {
    let h = 0.5 * t;
    let mut acc = [0.0; N];
    for &(x, w) in gauss_legendre() {
        let v = f(h * (1.0 + x));
        for (a, vi) in acc.iter_mut().zip(v) {
            *a += w * vi;
        }
    }
    acc.map(|a| a * h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_polynomials_and_accurate_for_smooth() {
        let [a, b] = integrate(2.0, |s| [s.powi(7), s.powi(47)]);
        assert!((a - 32.0).abs() < 1e-12);
        assert!((b / (2f64.powi(48) / 48.0) - 1.0).abs() < 1e-12);
        let [e] = integrate(1.0, |s| [s.exp()]);
        assert!((e - (1f64.exp() - 1.0)).abs() < 1e-15);
        let wsum: f64 = gauss_legendre().iter().map(|p| p.1).sum();
        assert!((wsum - 2.0).abs() < 1e-14);
    }
}
