use std::sync::OnceLock;

use rayon::prelude::*;

use super::roots::sign_change_roots;
use crate::error::{Error, Result};

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on `P_n` from the Chebyshev-like initial guess.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut s = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += w * f(mid + half * x);
        }
        s * half
    }

    /// Composite rule over `panels` equal panels.
    pub fn integrate_composite<F: Fn(f64) -> f64>(
        &self,
        f: F,
        a: f64,
        b: f64,
        panels: usize,
    ) -> f64 {
        let h = (b - a) / panels as f64;
        (0..panels)
            .map(|i| self.integrate(&f, a + h * i as f64, a + h * (i + 1) as f64))
            .sum()
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
pub fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = if (1.0 - x * x).abs() < 1e-300 {
        let s = if x > 0.0 || n % 2 == 0 { 1.0 } else { -1.0 };
        s * (n * (n + 1)) as f64 / 2.0
    } else {
        n as f64 * (x * p1 - p0) / (x * x - 1.0)
    };
    (p1, d)
}

pub fn gl10() -> &'static GaussLegendre {
    static R: OnceLock<GaussLegendre> = OnceLock::new();
    R.get_or_init(|| GaussLegendre::new(10))
}

pub fn gl20() -> &'static GaussLegendre {
    static R: OnceLock<GaussLegendre> = OnceLock::new();
    R.get_or_init(|| GaussLegendre::new(20))
}

/// Value of `∫|g|` together with a conservative error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsIntegral {
    pub value: f64,
    pub error: f64,
    pub pieces: usize,
}

/// Certified `∫_a^b |g(t)| dt` for a piecewise smooth `g`.
///
/// `[a, b]` is cut into panels no wider than `max_panel`; each panel is split
/// at the sign changes of `g` found by sampling, and every sign-definite piece
/// is integrated by 20-point Gauss with the 10-point rule as error witness.
/// Pieces whose witness disagrees are bisected (and re-scanned for sign
/// changes). The reported error is the sum of the per-piece witnesses.
pub fn abs_integral<F>(g: &F, a: f64, b: f64, max_panel: f64, tol: f64) -> Result<AbsIntegral>
where
    F: Fn(f64) -> f64 + Sync,
{
    let panels = (((b - a) / max_panel).ceil() as usize).max(1);
    let h = (b - a) / panels as f64;
    let density = tol / (b - a);
    let parts: Vec<(f64, f64, usize)> = (0..panels)
        .into_par_iter()
        .map(|i| {
            let lo = a + h * i as f64;
            let hi = if i + 1 == panels {
                b
            } else {
                a + h * (i + 1) as f64
            };
            abs_integral_panel(g, lo, hi, density)
        })
        .collect();
    let mut out = AbsIntegral {
        value: 0.0,
        error: 0.0,
        pieces: 0,
    };
    for (v, e, p) in parts {
        out.value += v;
        out.error += e;
        out.pieces += p;
    }
    if out.error > tol {
        return Err(Error::ConvergenceFailure {
            reason: format!("|g| integral on [{a}, {b}] did not reach tolerance {tol:e}"),
            estimate: out.value,
            error: out.error,
        });
    }
    Ok(out)
}

const MAX_SPLITS_PER_PANEL: usize = 2000;

fn abs_integral_panel<F: Fn(f64) -> f64>(
    g: &F,
    lo: f64,
    hi: f64,
    density: f64,
) -> (f64, f64, usize) {
    let xtol = 1e-15 * (1.0 + lo.abs().max(hi.abs()));
    let mut stack = Vec::new();
    let mut breaks = vec![lo];
    breaks.extend(sign_change_roots(g, lo, hi, 8, xtol));
    breaks.push(hi);
    for w in breaks.windows(2) {
        stack.push((w[0], w[1], 0u32));
    }
    let (mut value, mut error, mut pieces) = (0.0, 0.0, 0usize);
    let abs_g = |t: f64| g(t).abs();
    let mut splits = 0usize;
    while let Some((x0, x1, depth)) = stack.pop() {
        if x1 <= x0 {
            continue;
        }
        let q20 = gl20().integrate(abs_g, x0, x1);
        let q10 = gl10().integrate(abs_g, x0, x1);
        let err = (q20 - q10).abs();
        if err <= density * (x1 - x0) || depth >= 40 || splits >= MAX_SPLITS_PER_PANEL {
            value += q20;
            error += err;
            pieces += 1;
            continue;
        }
        splits += 1;
        let mid = 0.5 * (x0 + x1);
        for (u, v) in [(x0, mid), (mid, x1)] {
            let mut br = vec![u];
            br.extend(sign_change_roots(g, u, v, 4, xtol));
            br.push(v);
            for w in br.windows(2) {
                stack.push((w[0], w[1], depth + 1));
            }
        }
    }
    (value, error, pieces)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let r = GaussLegendre::new(10);
        // degree 19 is exact for 10 points
        let v = r.integrate(|x| x.powi(18) + x.powi(19), -1.0, 1.0);
        assert!((v - 2.0 / 19.0).abs() < 1e-14);
        let w: f64 = r.weights.iter().sum();
        assert!((w - 2.0).abs() < 1e-14);
    }

    #[test]
    fn abs_integral_of_sine() {
        let r = abs_integral(&f64::sin, 0.0, 10.0 * std::f64::consts::PI, 0.5, 1e-12).unwrap();
        assert!((r.value - 20.0).abs() < 1e-11);
        assert!(r.error <= 1e-12);
    }

    #[test]
    fn abs_integral_reports_failure_for_impossible_tolerance() {
        let g = |t: f64| (t - 0.3).abs().sqrt() - 0.2;
        match abs_integral(&g, 0.0, 1.0, 1.0, 0.0) {
            Err(Error::ConvergenceFailure { estimate, .. }) => assert!(estimate > 0.0),
            other => panic!("expected convergence failure, got {other:?}"),
        }
    }
}
