//! Exponential sums against integrals with a certified remainder, Fourier
//! transforms of indicators of convex planar bodies and their zero curves.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::numeric::bessel::bessel_j;
use crate::numeric::falling;
use crate::numeric::quadrature::gl20;
use crate::numeric::roots::bisect;

pub use crate::numeric::bessel::bessel_zero;
pub use crate::posdef::radial_ft;

/// `|B_{2k}|` for `k = 1..=10`.
const BERNOULLI_EVEN_ABS: [f64; 10] = [
    1.0 / 6.0,
    1.0 / 30.0,
    1.0 / 42.0,
    1.0 / 30.0,
    5.0 / 66.0,
    691.0 / 2730.0,
    7.0 / 6.0,
    3617.0 / 510.0,
    43867.0 / 798.0,
    174611.0 / 330.0,
];

pub const H_MAX_ORDER: usize = 4;
pub const H_SERIES_RADIUS: f64 = 0.5;

/// `h^{(p)}(x)` by the series `h(x) = Σ_{k≥1} |B_{2k}| x^{2k-1} / (2k)!`.
pub fn h_series(x: f64, p: usize) -> f64 {
    let mut fact = 1.0;
    let mut s = 0.0;
    for (k, b) in BERNOULLI_EVEN_ABS.iter().enumerate() {
        let deg = 2 * k + 1;
        fact *= (2 * k + 1) as f64 * (2 * k + 2) as f64;
        if deg >= p {
            s += b / fact * falling(deg as f64, p) * x.powi((deg - p) as i32);
        }
    }
    s
}

/// `h^{(p)}(x)` from `(-1)^p p!/x^{p+1} - 2^{-p-1} P_p(cot(x/2))`, where
/// `P_0(c) = c` and `P_{k+1}(c) = -(1 + c²) P_k'(c)` give the derivatives of
/// `cot`.
pub fn h_closed(x: f64, p: usize) -> f64 {
    let mut poly = vec![0.0, 1.0];
    for _ in 0..p {
        let d: Vec<f64> = (1..poly.len()).map(|j| j as f64 * poly[j]).collect();
        let mut next = vec![0.0; d.len() + 2];
        for (j, c) in d.iter().enumerate() {
            next[j] -= c;
            next[j + 2] -= c;
        }
        poly = next;
    }
    let c = 1.0 / (x / 2.0).tan();
    let cot_p = poly.iter().rev().fold(0.0, |acc, a| acc * c + a);
    let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
    let fact: f64 = (1..=p).map(|k| k as f64).product();
    sign * fact / x.powi(p as i32 + 1) - cot_p / 2f64.powi(p as i32 + 1)
}

/// `h^{(p)}(x)`, `h(x) = 1/x - ½cot(x/2)`, for `0 < |x| ≤ π`; the series
/// takes over below `|x| = 1/2` and gives the limit at `0`.
pub fn h_function(x: f64, p: usize) -> Result<f64> {
    if p > H_MAX_ORDER {
        return invalid(format!("derivative order {p} above {H_MAX_ORDER}"));
    }
    if !(x.abs() <= PI) {
        return invalid(format!("x = {x} outside [-π, π]"));
    }
    Ok(if x.abs() < H_SERIES_RADIUS { h_series(x, p) } else { h_closed(x, p) })
}

/// A function on `[n, ∞)` with all derivatives available.
#[derive(Clone)]
pub struct DecayingFunction {
    pub name: String,
    /// `(k, u) ↦ f^{(k)}(u)`.
    pub deriv: Arc<dyn Fn(usize, f64) -> f64 + Send + Sync>,
    /// `V_n^∞ f^{(r)}` when known in closed form.
    pub variation: Option<Arc<dyn Fn(f64, usize) -> f64 + Send + Sync>>,
    /// Every derivative is monotone and tends to 0, so differences of all
    /// orders keep one sign and tails telescope.
    pub completely_monotone: bool,
}

impl DecayingFunction {
    /// `e^{-au}`, `a > 0`.
    pub fn exponential(a: f64) -> Result<Self> {
        if !(a > 0.0) {
            return invalid(format!("rate {a} must be positive"));
        }
        Ok(Self {
            name: format!("exp(-{a}u)"),
            deriv: Arc::new(move |k, u| (-a).powi(k as i32) * (-a * u).exp()),
            variation: Some(Arc::new(move |n, r| a.powi(r as i32) * (-a * n).exp())),
            completely_monotone: true,
        })
    }

    /// `(1 + u)^{-b}`, `b > 1`, on `u > -1`.
    pub fn power(b: f64) -> Result<Self> {
        if !(b > 1.0) {
            return invalid(format!("exponent {b} must exceed 1"));
        }
        Ok(Self {
            name: format!("(1+u)^-{b}"),
            deriv: Arc::new(move |k, u| falling(-b, k) * (1.0 + u).powf(-b - k as f64)),
            variation: Some(Arc::new(move |n, r| (falling(-b, r) * (1.0 + n).powf(-b - r as f64)).abs())),
            completely_monotone: true,
        })
    }

    pub fn value(&self, k: usize, u: f64) -> f64 {
        (self.deriv)(k, u)
    }

    /// `V_n^∞ f^{(r)}`: closed form if supplied, otherwise the variation sum
    /// over a grid of step `1/64` up to `n + 4096` plus the end value,
    /// inflated by 1%.
    pub fn total_variation(&self, n: f64, r: usize) -> f64 {
        if let Some(v) = &self.variation {
            return v(n, r);
        }
        let steps = 4096 * 64;
        let mut prev = self.value(r, n);
        let mut s = 0.0;
        for i in 1..=steps {
            let cur = self.value(r, n + i as f64 / 64.0);
            s += (cur - prev).abs();
            prev = cur;
        }
        1.01 * (s + prev.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerMaclaurin {
    pub lhs: Complex64,
    pub integral: Complex64,
    pub rhs_main: Complex64,
    pub variation: f64,
    /// `(lhs - rhs_main) π^r / V`.
    pub theta: Complex64,
    /// Bound on the truncation error of `lhs` and the integral together.
    pub error: f64,
    /// `|θ| ≤ 3` up to the truncation error.
    pub bound_holds: bool,
}

pub const THETA_BOUND: f64 = 3.0;

/// Terms summed directly before the tail of the exponential sum.
const EM_DIRECT_TERMS: usize = 2000;
/// Summation-by-parts steps applied to the tail.
const EM_TAIL_ORDER: usize = 6;
/// Length of the interval integrated by Gauss panels before the
/// integration-by-parts tail.
const EM_INTEGRAL_SPAN: f64 = 1000.0;
const EM_TAIL_DERIVATIVES: usize = 6;

/// `Σ_{k≥n} f(k) e^{ikx}`: direct terms up to `K = n + 2000`, then the tail
/// `Σ_{k≥K} g_0(k) z^k = Σ_{j<q} g_j(K+j) z^{K+j}/(1-z)^{j+1} + R` with
/// backward differences `g_{j+1}(k) = g_j(k) - g_j(k-1)` and
/// `|R| ≤ |g_{q-1}(K+q-1)| / |1-z|^q` for completely monotone `f`.
fn exponential_sum(f: &DecayingFunction, n: i64, x: f64) -> Result<(Complex64, f64)> {
    let z = Complex64::from_polar(1.0, x);
    let big_k = n + EM_DIRECT_TERMS as i64;
    let mut s = Complex64::new(0.0, 0.0);
    for k in n..big_k {
        s += f.value(0, k as f64) * Complex64::from_polar(1.0, k as f64 * x);
    }
    if !f.completely_monotone {
        return Err(Error::ConvergenceFailure {
            reason: format!("no tail bound for {} without complete monotonicity", f.name),
            estimate: s.norm(),
            error: f64::INFINITY,
        });
    }
    let q = EM_TAIL_ORDER;
    // g_j(K + j) from the values f(K - 1 .. K + q - 1)
    let vals: Vec<f64> = (0..=2 * q).map(|i| f.value(0, (big_k - q as i64 + i as i64) as f64)).collect();
    let mut diffs = vals.clone();
    let one_minus_z = Complex64::new(1.0, 0.0) - z;
    let mut last = 0.0;
    for j in 0..q {
        // diffs[i] now holds g_j at K - q + i
        let idx = q + j;
        let g = diffs[idx];
        s += g * Complex64::from_polar(1.0, (big_k + j as i64) as f64 * x) / one_minus_z.powi(j as i32 + 1);
        last = g;
        for i in (1..diffs.len()).rev() {
            diffs[i] -= diffs[i - 1];
        }
    }
    let remainder = last.abs() / one_minus_z.norm().powi(q as i32);
    Ok((s, remainder))
}

/// `∫_n^∞ f(u) e^{iux} du`: 20-point Gauss on panels of width 1/2 over
/// `[n, n + 1000]`, then `∫_U^∞ = -e^{iUx} Σ_{j<J} (-1)^j f^{(j)}(U)/(ix)^{j+1}`
/// with remainder at most `|f^{(J-1)}(U)| / |x|^J`.
fn oscillatory_integral(f: &DecayingFunction, n: f64, x: f64) -> (Complex64, f64) {
    let u_end = n + EM_INTEGRAL_SPAN;
    let panels = (2.0 * EM_INTEGRAL_SPAN) as usize;
    let re = gl20().integrate_composite(|u| f.value(0, u) * (u * x).cos(), n, u_end, panels);
    let im = gl20().integrate_composite(|u| f.value(0, u) * (u * x).sin(), n, u_end, panels);
    let ix = Complex64::new(0.0, x);
    let mut tail = Complex64::new(0.0, 0.0);
    let mut pow = ix;
    for j in 0..EM_TAIL_DERIVATIVES {
        let sgn = if j % 2 == 0 { 1.0 } else { -1.0 };
        tail += sgn * f.value(j, u_end) / pow;
        pow *= ix;
    }
    let tail = -Complex64::from_polar(1.0, u_end * x) * tail;
    let rem = f.value(EM_TAIL_DERIVATIVES - 1, u_end).abs() / x.abs().powi(EM_TAIL_DERIVATIVES as i32);
    (Complex64::new(re, im) + tail, rem)
}

/// Both sides of `Σ_{k≥n} f(k)e^{ikx} = ∫_n^∞ f(u)e^{iux}du + ½f(n)e^{inx}
/// + e^{inx} Σ_{p<r} ((-i)^{p+1}/p!) h^{(p)}(x) f^{(p)}(n) + (θ/π^r) V_n^∞ f^{(r)}`
/// and the resulting `θ`.
pub fn euler_maclaurin_sum(f: &DecayingFunction, n: i64, r: usize, x: f64) -> Result<EulerMaclaurin> {
    if x == 0.0 {
        return invalid("x = 0 is the classical limit case");
    }
    if !(x.abs() <= PI) {
        return invalid(format!("x = {x} outside 0 < |x| ≤ π"));
    }
    if r > H_MAX_ORDER + 1 {
        return invalid(format!("order {r} above {}", H_MAX_ORDER + 1));
    }
    let nf = n as f64;
    let far = nf + EM_INTEGRAL_SPAN;
    for nu in 0..=r {
        let (a, b) = (f.value(nu, nf).abs(), f.value(nu, far).abs());
        if !(b <= 1e-3 * a.max(1e-300)) && b > 1e-300 {
            return Err(Error::ConvergenceFailure {
                reason: format!("f^({nu}) of {} does not decay", f.name),
                estimate: b,
                error: a,
            });
        }
    }
    let (lhs, e1) = exponential_sum(f, n, x)?;
    let (integral, e2) = oscillatory_integral(f, nf, x);
    let zn = Complex64::from_polar(1.0, nf * x);
    let mut corr = 0.5 * f.value(0, nf) * zn;
    let mut fact = 1.0;
    let mi = Complex64::new(0.0, -1.0);
    for p in 0..r {
        if p > 0 {
            fact *= p as f64;
        }
        corr += zn * mi.powi(p as i32 + 1) / fact * h_function(x, p)? * f.value(p, nf);
    }
    let rhs_main = integral + corr;
    let variation = f.total_variation(nf, r);
    if !(variation > 0.0) {
        return invalid(format!("V_n^∞ f^({r}) vanishes for {}", f.name));
    }
    let error = e1 + e2;
    if error > 1e-10 * variation {
        return Err(Error::ConvergenceFailure {
            reason: format!("tails of {} not resolved at this scale", f.name),
            estimate: lhs.norm(),
            error,
        });
    }
    let scale = PI.powi(r as i32) / variation;
    let theta = (lhs - rhs_main) * scale;
    let bound_holds = theta.norm() <= THETA_BOUND + error * scale + 1e-12;
    Ok(EulerMaclaurin { lhs, integral, rhs_main, variation, theta, error, bound_holds })
}

/// A convex body in the plane containing the origin in its interior.
#[derive(Debug, Clone, PartialEq)]
pub enum ConvexBody2D {
    /// Vertices in counterclockwise order.
    Polygon(Vec<[f64; 2]>),
    Disc(f64),
    /// Semi-axes along the coordinate axes.
    Ellipse(f64, f64),
}

impl ConvexBody2D {
    /// Accepts either orientation; stores counterclockwise.
    pub fn polygon(mut vertices: Vec<[f64; 2]>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return invalid("a polygon needs at least 3 vertices");
        }
        let cross = |v: &[[f64; 2]], i: usize| {
            let (a, b, c) = (v[i], v[(i + 1) % n], v[(i + 2) % n]);
            (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
        };
        let signs: Vec<f64> = (0..n).map(|i| cross(&vertices, i)).collect();
        if signs.iter().all(|s| *s < 0.0) {
            vertices.reverse();
        } else if !signs.iter().all(|s| *s > 0.0) {
            return invalid("vertices do not form a strictly convex polygon");
        }
        for i in 0..n {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            if (b[0] - a[0]) * (-a[1]) - (b[1] - a[1]) * (-a[0]) <= 0.0 {
                return invalid("origin is not interior");
            }
        }
        Ok(Self::Polygon(vertices))
    }

    pub fn disc(radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return invalid(format!("radius {radius} must be positive"));
        }
        Ok(Self::Disc(radius))
    }

    pub fn ellipse(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) {
            return invalid(format!("semi-axes ({a}, {b}) must be positive"));
        }
        Ok(Self::Ellipse(a, b))
    }

    pub fn area(&self) -> f64 {
        match self {
            Self::Polygon(v) => {
                let n = v.len();
                0.5 * (0..n).map(|i| v[i][0] * v[(i + 1) % n][1] - v[(i + 1) % n][0] * v[i][1]).sum::<f64>()
            }
            Self::Disc(r) => PI * r * r,
            Self::Ellipse(a, b) => PI * a * b,
        }
    }

    /// `h(φ) = max_{x∈K} (x, (cos φ, sin φ))`.
    pub fn support(&self, phi: f64) -> f64 {
        let (c, s) = (phi.cos(), phi.sin());
        match self {
            Self::Polygon(v) => v.iter().map(|p| p[0] * c + p[1] * s).fold(f64::NEG_INFINITY, f64::max),
            Self::Disc(r) => *r,
            Self::Ellipse(a, b) => (a * a * c * c + b * b * s * s).sqrt(),
        }
    }

    /// `d(φ) = h(φ) + h(φ + π)`.
    pub fn width(&self, phi: f64) -> f64 {
        self.support(phi) + self.support(phi + PI)
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        match self {
            Self::Polygon(v) => v.iter().all(|p| {
                v.iter().any(|q| (p[0] + q[0]).abs() <= 1e-12 && (p[1] + q[1]).abs() <= 1e-12)
            }),
            _ => true,
        }
    }
}

pub const INDICATOR_MAX_FREQUENCY: f64 = 1e3;
const SMALL_FREQUENCY: f64 = 1e-6;

/// `(e^w - 1)/w`.
fn expm1_ratio(w: Complex64) -> Complex64 {
    if w.norm() < 1e-3 {
        let mut s = Complex64::new(1.0, 0.0);
        let mut t = Complex64::new(1.0, 0.0);
        for k in 2..8 {
            t *= w / k as f64;
            s += t;
        }
        s
    } else {
        (w.exp() - 1.0) / w
    }
}

/// `∫_K e^{i(u,x)} dx`. Polygons by the divergence theorem,
/// `(-i/|u|²) Σ_edges (u_1 Δy - u_2 Δx) e^{i(u,a)} (e^{i(u,b-a)} - 1)/(i(u,b-a))`;
/// the disc as `2πR J_1(R|u|)/|u|`; the ellipse by pulling back to the unit
/// disc. Below `|u| = 10⁻⁶` the area is returned.
pub fn indicator_ft(body: &ConvexBody2D, u: [f64; 2]) -> Result<Complex64> {
    let norm = u[0].hypot(u[1]);
    if !(norm <= INDICATOR_MAX_FREQUENCY) {
        return invalid(format!("|u| = {norm} above {INDICATOR_MAX_FREQUENCY}"));
    }
    if norm < SMALL_FREQUENCY {
        return Ok(Complex64::new(body.area(), 0.0));
    }
    let disc = |r: f64, w: f64| 2.0 * PI * r * bessel_j(1.0, r * w) / w;
    Ok(match body {
        ConvexBody2D::Polygon(v) => {
            let n = v.len();
            let mut s = Complex64::new(0.0, 0.0);
            for i in 0..n {
                let (a, b) = (v[i], v[(i + 1) % n]);
                let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
                let flux = u[0] * dy - u[1] * dx;
                let phase = Complex64::from_polar(1.0, u[0] * a[0] + u[1] * a[1]);
                s += flux * phase * expm1_ratio(Complex64::new(0.0, u[0] * dx + u[1] * dy));
            }
            Complex64::new(0.0, -1.0) * s / (norm * norm)
        }
        ConvexBody2D::Disc(r) => Complex64::new(disc(*r, norm), 0.0),
        ConvexBody2D::Ellipse(a, b) => {
            let w = (a * u[0]).hypot(b * u[1]);
            Complex64::new(a * b * disc(1.0, w), 0.0)
        }
    })
}

pub const ZERO_SCAN_SAMPLES: usize = 64;

/// `r_p(φ)`: the zero of `t ↦ ∫_K e^{it(x, e_φ)} dx` inside
/// `(2pπ/d(φ), 2(p+1)π/d(φ))`, located by a 64-sample sign scan and bisection.
/// A bracket without exactly one sign change is reported with the scan.
pub fn zero_curve(body: &ConvexBody2D, p: usize, phi: f64) -> Result<f64> {
    if p == 0 {
        return invalid("zero index p starts at 1");
    }
    if !body.is_centrally_symmetric() {
        return invalid("zero curves need a centrally symmetric body");
    }
    let d = body.width(phi);
    let (lo, hi) = (2.0 * p as f64 * PI / d, 2.0 * (p + 1) as f64 * PI / d);
    let (c, s) = (phi.cos(), phi.sin());
    let g = |t: f64| indicator_ft(body, [t * c, t * s]).map(|v| v.re);
    let ts: Vec<f64> = (0..=ZERO_SCAN_SAMPLES)
        .map(|i| lo + (hi - lo) * i as f64 / ZERO_SCAN_SAMPLES as f64)
        .collect();
    let gs = ts.iter().map(|&t| g(t)).collect::<Result<Vec<f64>>>()?;
    let changes: Vec<usize> = (0..ZERO_SCAN_SAMPLES).filter(|&i| (gs[i] < 0.0) != (gs[i + 1] < 0.0)).collect();
    if changes.len() != 1 {
        let trace: Vec<String> = ts.iter().zip(&gs).map(|(t, v)| format!("{t:.6}:{v:.3e}")).collect();
        return Err(Error::NotFound(format!(
            "{} sign changes in [{lo}, {hi}] at φ = {phi}; scan {}",
            changes.len(),
            trace.join(" ")
        )));
    }
    let i = changes[0];
    let root = bisect(|t| g(t).unwrap_or(f64::NAN), ts[i], ts[i + 1], gs[i], 1e-15 * hi);
    if !(root > lo && root < hi) {
        return Err(Error::Internal(format!("zero {root} left the bracket ({lo}, {hi})")));
    }
    Ok(root)
}

/// `r_p` over a grid of directions, one ray per task.
pub fn zero_curve_grid(body: &ConvexBody2D, p: usize, phis: &[f64]) -> Vec<Result<f64>> {
    use rayon::prelude::*;
    phis.par_iter().map(|&phi| zero_curve(body, p, phi)).collect()
}
