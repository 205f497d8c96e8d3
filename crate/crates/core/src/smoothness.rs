//! Moduli of smoothness on uniform grids, the integral-averaged modulus,
//! two-sided approximation ratios, a K-functional realization and the sharp
//! lower constant of the Bernstein means.
//!
//! Steps `δ` range over the grid steps `2πj/M`, so shifts are exact index
//! rotations and no interpolation enters any modulus.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{invalid, Result};
use crate::numeric::quadrature::GaussLegendre;
use crate::numeric::binomial;
use crate::trig::{
    compute_coefficients, grid_norm_slice, vallee_poussin, GridNorm, SampledFunction, SummabilityMethod,
    TrigCoefficients,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusSpec {
    pub r: usize,
    pub norm: GridNorm,
    pub h: f64,
}

impl ModulusSpec {
    pub fn new(r: usize, norm: GridNorm, h: f64) -> Result<Self> {
        if r == 0 {
            return invalid("modulus order must be at least 1");
        }
        if !(h > 0.0 && h <= PI) {
            return invalid(format!("step bound {h} outside (0, π]"));
        }
        Ok(Self { r, norm, h })
    }

    pub fn sup(r: usize, h: f64) -> Result<Self> {
        Self::new(r, GridNorm::sup(), h)
    }
}

/// Number of grid steps `2πj/M` not exceeding `h`.
pub fn steps_within(h: f64, m: usize) -> usize {
    let step = 2.0 * PI / m as f64;
    ((h / step) * (1.0 + 1e-12)).floor() as usize
}

fn difference_weights(r: usize) -> Vec<f64> {
    (0..=r)
        .map(|nu| if nu % 2 == 0 { binomial(r, nu) } else { -binomial(r, nu) })
        .collect()
}

/// Adds `c · v(· + o)` (cyclic) into `acc`.
fn add_rotated(acc: &mut [f64], v: &[f64], o: usize, c: f64) {
    let m = v.len();
    let (head, tail) = acc.split_at_mut(m - o);
    head.iter_mut().zip(&v[o..]).for_each(|(a, b)| *a += c * b);
    tail.iter_mut().zip(&v[..o]).for_each(|(a, b)| *a += c * b);
}

/// `‖Σ_ν (-1)^ν C(r,ν) f(· + νδ_j)‖` at `δ_j = 2πj/M`, with `f` split into
/// real and imaginary parts (the latter empty for real data).
fn difference_norm(re: &[f64], im: &[f64], w: &[f64], j: usize, p: f64) -> f64 {
    let m = re.len();
    let mut ar = vec![0.0; m];
    let mut ai = vec![0.0; im.len()];
    for (nu, c) in w.iter().enumerate() {
        let o = (nu * j) % m;
        add_rotated(&mut ar, re, o, *c);
        if !im.is_empty() {
            add_rotated(&mut ai, im, o, *c);
        }
    }
    if im.is_empty() {
        grid_norm_slice(ar.iter().map(|x| x.abs()), m, p)
    } else {
        grid_norm_slice(ar.iter().zip(&ai).map(|(x, y)| x.hypot(*y)), m, p)
    }
}

/// `‖Δ_{δ_j}^r f‖` for `j = 1..=jmax`.
pub fn modulus_profile(f: &SampledFunction, r: usize, norm: GridNorm, jmax: usize) -> Vec<f64> {
    let w = difference_weights(r);
    let re: Vec<f64> = f.values().iter().map(|v| v.re).collect();
    let im: Vec<f64> = if f.values().iter().all(|v| v.im == 0.0) {
        Vec::new()
    } else {
        f.values().iter().map(|v| v.im).collect()
    };
    (1..=jmax)
        .into_par_iter()
        .map(|j| difference_norm(&re, &im, &w, j, norm.p()))
        .collect()
}

/// `ω_r(f; h) = sup_{δ ≤ h} ‖Δ_δ^r f‖` over grid steps.
pub fn modulus(f: &SampledFunction, spec: &ModulusSpec) -> Result<f64> {
    let j = steps_within(spec.h, f.len());
    if j == 0 {
        return invalid(format!("h = {} is below one grid step", spec.h));
    }
    Ok(modulus_profile(f, spec.r, spec.norm, j).into_iter().fold(0.0, f64::max))
}

/// `‖(1/H) ∫_0^H Δ_δ^r f dδ‖` with the trapezoid rule on the grid steps and
/// `H = J·2π/M` the largest grid step not exceeding `h`.
///
/// The averaged difference is a cyclic convolution of `f` with a kernel
/// collecting the trapezoid weights of all shifts `νj`; it is applied by FFT.
/// Since the weights are a probability vector on `{Δ_{δ_j}}`, the result never
/// exceeds `ω_r(f; h)`.
pub fn linearized_modulus(f: &SampledFunction, spec: &ModulusSpec) -> Result<f64> {
    let m = f.len();
    let jmax = steps_within(spec.h, m);
    if jmax == 0 {
        return invalid(format!("h = {} is below one grid step", spec.h));
    }
    let w = difference_weights(spec.r);
    let mut kernel = vec![Complex64::new(0.0, 0.0); m];
    for j in 0..=jmax {
        let tw = if j == 0 || j == jmax { 0.5 } else { 1.0 } / jmax as f64;
        for (nu, c) in w.iter().enumerate() {
            kernel[(nu * j) % m] += c * tw;
        }
    }
    // g(x_i) = Σ_s κ_s f(x_{i+s}): correlate f with κ
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(m);
    let inv = planner.plan_fft_inverse(m);
    let mut fv = f.values().to_vec();
    fwd.process(&mut fv);
    fwd.process(&mut kernel);
    let mut g: Vec<Complex64> = fv.iter().zip(&kernel).map(|(a, b)| a * b.conj()).collect();
    inv.process(&mut g);
    let scale = 1.0 / m as f64;
    Ok(grid_norm_slice(g.iter().map(|v| (v * scale).norm()), m, spec.norm.p()))
}

/// Approximation error against the modulus for a realization method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoSided {
    pub approx_error: f64,
    pub modulus_value: f64,
    pub ratio: f64,
}

/// `‖f - Λ_n f‖` next to `ω_r(f; h)`, both in `norm`.
pub fn two_sided(
    f: &SampledFunction,
    method: &SummabilityMethod,
    n: usize,
    r: usize,
    h: f64,
    norm: GridNorm,
) -> Result<TwoSided> {
    let m = f.len();
    let c = compute_coefficients(f, m / 2 - 1)?;
    let diff = c.map_multiplier(|k| 1.0 - method.lambda(n, k)).synthesize(m)?;
    let approx_error = grid_norm_slice(diff.values().iter().map(|v| v.norm()), m, norm.p());
    let modulus_value = modulus(f, &ModulusSpec::new(r, norm, h)?)?;
    let ratio = if modulus_value > 0.0 { approx_error / modulus_value } else { 0.0 };
    Ok(TwoSided { approx_error, modulus_value, ratio })
}

/// `‖f - V_n f‖_∞` (de la Vallée Poussin) against `ω_r(f; 1/n)_∞`.
pub fn jackson_two_sided(f: &SampledFunction, r: usize, n: usize) -> Result<TwoSided> {
    if n < r {
        return invalid(format!("n = {n} must be at least r = {r}"));
    }
    two_sided(f, &vallee_poussin(), n, r, 1.0 / n as f64, GridNorm::sup())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KFunctionalSpec {
    pub t: f64,
    pub r: u32,
}

impl KFunctionalSpec {
    pub fn new(t: f64, r: u32) -> Result<Self> {
        if !(t > 0.0 && t <= 1.0) {
            return invalid(format!("t = {t} outside (0, 1]"));
        }
        if r == 0 {
            return invalid("K-functional order must be at least 1");
        }
        Ok(Self { t, r })
    }
}

/// `K(f, t) ≈ min_g ‖f - g‖_∞ + t^r ‖g^{(r)}‖_∞` over `g = 0`, `g = f` and the
/// de la Vallée Poussin means `V_{2^j} f` with `2^j ≤ 4/t`; derivatives are
/// spectral on the grid.
pub fn k_functional(f: &SampledFunction, spec: &KFunctionalSpec) -> Result<f64> {
    let KFunctionalSpec { t, r } = *spec;
    let m = f.len();
    let c = compute_coefficients(f, m / 2 - 1)?;
    let sup = |co: &TrigCoefficients| -> Result<f64> { Ok(co.synthesize(m)?.sup_norm()) };
    let tr = t.powi(r as i32);
    let mut best = f.sup_norm().min(tr * sup(&c.derivative(r))?);
    let v = vallee_poussin();
    let mut deg = 1usize;
    while deg as f64 <= 4.0 / t && 2 * deg <= m / 2 {
        let g = c.map_multiplier(|k| v.lambda(deg, k));
        let err = sup(&c.map_multiplier(|k| 1.0 - v.lambda(deg, k)))?;
        best = best.min(err + tr * sup(&g.derivative(r))?);
        deg *= 2;
    }
    Ok(best)
}

/// `Si(π) = ∫_0^π sin t / t dt` by 40-point Gauss on four panels.
pub fn sine_integral_pi() -> f64 {
    let gl = GaussLegendre::new(40);
    gl.integrate_composite(|t| if t == 0.0 { 1.0 } else { t.sin() / t }, 0.0, PI, 4)
}

/// `A = (2 + (4/π) Si(π))^{-1}`.
pub fn bernstein_mean_sharp_constant() -> f64 {
    1.0 / (2.0 + 4.0 / PI * sine_integral_pi())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BernsteinLowerBound {
    /// `A ω(f; π/n)`.
    pub lower: f64,
    /// `‖f - ½(S_n + S_n(· + π/n))‖_∞`.
    pub deviation: f64,
    pub slack: f64,
}

/// Both sides of `A ω(f; π/n) ≤ ‖f - ½(S_n f + S_n f(· + π/n))‖_∞`.
/// The shifted mean is the multiplier `(1 + e^{ikπ/n})/2` on `|k| ≤ n`.
pub fn bernstein_lower_bound(f: &SampledFunction, n: usize) -> Result<BernsteinLowerBound> {
    if n == 0 {
        return invalid("n must be positive");
    }
    let m = f.len();
    if 2 * n + 1 > m {
        return invalid(format!("n = {n} too large for a grid of {m}"));
    }
    let c = compute_coefficients(f, m / 2 - 1)?;
    let shift = PI / n as f64;
    let mut diff = c.clone();
    for k in -(n as i64)..=n as i64 {
        let mean = (Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, k as f64 * shift)) * 0.5;
        diff.set(k, c.get(k) * (Complex64::new(1.0, 0.0) - mean));
    }
    let deviation = diff.synthesize(m)?.sup_norm();
    let omega = modulus(f, &ModulusSpec::sup(1, shift)?)?;
    let lower = bernstein_mean_sharp_constant() * omega;
    Ok(BernsteinLowerBound { lower, deviation, slack: deviation - lower })
}

/// Outcome of the `ω_r ≤ h^r ⟹ ω̃_r ≤ h^r/(r+1)` check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AveragedBound {
    /// Factor that makes `ω_r(s f; δ) ≤ δ^r` for every grid `δ ≤ h`.
    pub scale: f64,
    pub averaged: f64,
    pub bound: f64,
    pub holds: bool,
}

/// Rescales `f` so that `ω_r(f; δ) ≤ δ^r` on every grid step up to `h`
/// (tight at some step), then compares `ω̃_r(f; h)` with `h^r/(r+1)`, allowing
/// relative slack `rel_tol` for the trapezoid rule.
pub fn averaged_bound_check(f: &SampledFunction, r: usize, h: f64, rel_tol: f64) -> Result<AveragedBound> {
    let m = f.len();
    let jmax = steps_within(h, m);
    if jmax == 0 {
        return invalid(format!("h = {h} is below one grid step"));
    }
    let prof = modulus_profile(f, r, GridNorm::sup(), jmax);
    let step = 2.0 * PI / m as f64;
    let mut run = 0.0f64;
    let mut worst = 0.0f64;
    for (i, p) in prof.iter().enumerate() {
        run = run.max(*p);
        worst = worst.max(run / (step * (i + 1) as f64).powi(r as i32));
    }
    let scale = if worst > 0.0 { 1.0 / worst } else { 1.0 };
    let scaled = SampledFunction::new(f.values().iter().map(|v| v * scale).collect())?;
    let averaged = linearized_modulus(&scaled, &ModulusSpec::sup(r, h)?)?;
    let bound = h.powi(r as i32) / (r as f64 + 1.0);
    Ok(AveragedBound { scale, averaged, bound, holds: averaged <= bound * (1.0 + rel_tol) })
}
